//! Multisegments, their canonical data `lambda(m)`, `eta(m)`, `omega(m)`,
//! and integral standard modules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinat::{Composition, IntTuple};
use crate::error::{Error, Result};
use crate::symgroup::{act, longest_in_left_coset, Permutation};

/// The integer segment `[lo, hi]` of length `hi - lo >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub lo: i64,
    pub hi: i64,
}

impl Segment {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if hi - lo < 1 {
            return Err(Error::InvalidMultisegment(format!("segment [{lo},{hi}] has length < 1")));
        }
        Ok(Self { lo, hi })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        (self.hi - self.lo) as usize
    }

    /// Twice the exponent of the attached character: `lo + hi + 1`.
    pub fn exponent2(&self) -> i64 {
        self.lo + self.hi + 1
    }
}

impl Ord for Segment {
    /// Canonical order: `lo` descending, then `hi` descending.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other.lo.cmp(&self.lo).then(other.hi.cmp(&self.hi))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// A non-empty multiset of segments, stored in canonical order so that
/// equality of multisegments is equality of sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "MultisegmentRepr", into = "MultisegmentRepr")]
pub struct Multisegment {
    segments: Vec<Segment>,
}

#[derive(Serialize, Deserialize)]
struct MultisegmentRepr {
    segments: Vec<[i64; 2]>,
}

impl TryFrom<MultisegmentRepr> for Multisegment {
    type Error = Error;

    fn try_from(r: MultisegmentRepr) -> Result<Self> {
        let segs = r.segments.into_iter().map(|[lo, hi]| Segment::new(lo, hi)).collect::<Result<Vec<_>>>()?;
        Multisegment::new(segs)
    }
}

impl From<Multisegment> for MultisegmentRepr {
    fn from(m: Multisegment) -> Self {
        Self { segments: m.segments.iter().map(|s| [s.lo, s.hi]).collect() }
    }
}

impl Multisegment {
    pub fn new(mut segments: Vec<Segment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidMultisegment("no segments".into()));
        }
        segments.sort();
        Ok(Self { segments })
    }

    /// The orbit of the representative `(lambda, eta)`.
    pub fn from_pair(lambda: &IntTuple, eta: &IntTuple) -> Result<Self> {
        crate::combinat::check_len(lambda.k(), eta.k())?;
        let segs = lambda
            .entries()
            .iter()
            .zip(eta.entries())
            .map(|(&lo, &hi)| Segment::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(segs)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn k(&self) -> usize {
        self.segments.len()
    }

    pub fn n(&self) -> usize {
        self.segments.iter().map(Segment::len).sum()
    }

    /// The representative `(lambda, eta)` in storage order.
    pub fn representative(&self) -> (IntTuple, IntTuple) {
        let lambda = self.segments.iter().map(|s| s.lo).collect();
        let eta = self.segments.iter().map(|s| s.hi).collect();
        (IntTuple(lambda), IntTuple(eta))
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.segments.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl FromStr for Multisegment {
    type Err = Error;

    /// `[lo,hi]` segments joined by `+`.
    fn from_str(s: &str) -> Result<Self> {
        let mut segs = Vec::new();
        for tok in s.split('+') {
            let t = tok.trim();
            let inner = t
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("segment {t:?} is not of the form [lo,hi]")))?;
            let mut it = inner.split(',');
            let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                return Err(Error::Parse(format!("segment {t:?} needs exactly two endpoints")));
            };
            let lo = a.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad endpoint {a:?}")))?;
            let hi = b.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad endpoint {b:?}")))?;
            segs.push(Segment::new(lo, hi)?);
        }
        Multisegment::new(segs)
    }
}

/// `lambda(m)`, `eta(m)` (both weakly decreasing) and `omega(m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonical {
    pub lambda: IntTuple,
    pub eta: IntTuple,
    pub omega: Permutation,
}

/// Sorted pairs `(a[i], b[i])`, for comparing orbits of the diagonal action.
fn pair_multiset(a: &IntTuple, b: &IntTuple) -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = a.entries().iter().copied().zip(b.entries().iter().copied()).collect();
    v.sort_unstable();
    v
}

/// Canonical form of `m`: `omega(m)` is the longest `w` for which
/// `(lambda(m), w * eta(m))` is a representative of `m`. Found by a scan of
/// `S_k`.
pub fn canonicalize(m: &Multisegment) -> Canonical {
    let (lambda, eta) = m.representative();
    let mut lam = lambda.0.clone();
    lam.sort_unstable_by(|a, b| b.cmp(a));
    let mut et = eta.0.clone();
    et.sort_unstable_by(|a, b| b.cmp(a));
    let (lambda_m, eta_m) = (IntTuple(lam), IntTuple(et));
    let target = pair_multiset(&lambda, &eta);

    let k = m.k();
    let max_len = k * (k - 1) / 2;
    let mut best: Option<(usize, Permutation)> = None;
    for w in Permutation::all(k) {
        let len = w.length();
        if best.as_ref().is_some_and(|(l, _)| *l >= len) {
            continue;
        }
        let arranged = act(&w, &eta_m).expect("same k");
        if pair_multiset(&lambda_m, &arranged) == target {
            let done = len == max_len;
            best = Some((len, w));
            if done {
                break;
            }
        }
    }
    let (_, omega) = best.expect("the sorted pairing always represents m");
    Canonical { lambda: lambda_m, eta: eta_m, omega }
}

/// The permutations `(omega1, omega2)` with `omega1 * lambda` and
/// `omega2^{-1} * eta` weakly decreasing and `l(omega1 * omega2)` maximal,
/// ties broken by maximal `l(omega1)`.
///
/// For each admissible `omega1` the admissible products form a left coset of
/// the stabiliser of the sorted `eta`, whose longest element is read off
/// directly.
pub fn omega12(lambda: &IntTuple, eta: &IntTuple) -> Result<(Permutation, Permutation)> {
    crate::combinat::check_len(lambda.k(), eta.k())?;
    if lambda.entries().iter().zip(eta.entries()).any(|(l, e)| e - l < 1) {
        return Err(Error::InvalidMultisegment(format!(
            "({lambda}, {eta}) is not a representative: eta - lambda must have positive parts"
        )));
    }
    let k = lambda.k();
    let omega2_base = crate::symgroup::longest_with_sorted_image(eta);
    let eta_sorted = act(&omega2_base.inverse(), eta)?;

    let mut best: Option<((usize, usize), Permutation, Permutation)> = None;
    for omega1 in Permutation::all(k) {
        if !act(&omega1, lambda)?.is_weakly_decreasing() {
            continue;
        }
        let product = longest_in_left_coset(&omega1.mul(&omega2_base), &eta_sorted);
        let score = (product.length(), omega1.length());
        if best.as_ref().is_none_or(|(s, _, _)| score > *s) {
            let omega2 = omega1.inverse().mul(&product);
            best = Some((score, omega1, omega2));
        }
    }
    let (_, omega1, omega2) = best.expect("some permutation sorts lambda");
    Ok((omega1, omega2))
}

/// The integral standard module attached to `(lambda, eta)` with `lambda`
/// weakly decreasing and `eta - lambda` a composition with possible zero
/// parts. Zero parts are trivial `GL_0` factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardModule {
    lambda: IntTuple,
    eta: IntTuple,
    alpha: Composition,
    exponents2: Vec<i64>,
}

impl StandardModule {
    pub fn lambda(&self) -> &IntTuple {
        &self.lambda
    }

    pub fn eta(&self) -> &IntTuple {
        &self.eta
    }

    pub fn alpha(&self) -> &Composition {
        &self.alpha
    }

    /// `lambda_i + eta_i + 1`, twice the real exponent of factor `i`.
    pub fn exponents2(&self) -> &[i64] {
        &self.exponents2
    }

    pub fn k(&self) -> usize {
        self.lambda.k()
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    /// Drops the factors with `alpha_i = 0`.
    pub fn normalize_drop_zeros(&self) -> StandardModule {
        let keep: Vec<usize> = (0..self.k()).filter(|&i| self.alpha.parts()[i] > 0).collect();
        let pick = |t: &IntTuple| IntTuple(keep.iter().map(|&i| t.0[i]).collect());
        let lambda = pick(&self.lambda);
        let eta = pick(&self.eta);
        build(lambda, eta)
    }

    /// Zero factors dropped and the remaining factors sorted by
    /// `(lambda desc, eta desc)`. Products of characters commute in the
    /// Grothendieck group, so this identifies modules with the same class.
    pub fn grothendieck_normal_form(&self) -> StandardModule {
        let d = self.normalize_drop_zeros();
        let mut pairs: Vec<(i64, i64)> = d.lambda.0.iter().copied().zip(d.eta.0.iter().copied()).collect();
        pairs.sort_unstable_by(|a, b| b.cmp(a));
        build(
            IntTuple(pairs.iter().map(|p| p.0).collect()),
            IntTuple(pairs.iter().map(|p| p.1).collect()),
        )
    }

    /// The module induced from `self` and `other` side by side; the combined
    /// `lambda` must stay weakly decreasing.
    pub fn concat(&self, other: &StandardModule) -> Result<StandardModule> {
        let mut lambda = self.lambda.0.clone();
        lambda.extend_from_slice(&other.lambda.0);
        let mut eta = self.eta.0.clone();
        eta.extend_from_slice(&other.eta.0);
        standard_module(&IntTuple(lambda), &IntTuple(eta))
    }
}

fn build(lambda: IntTuple, eta: IntTuple) -> StandardModule {
    let alpha = Composition::new(
        lambda.0.iter().zip(&eta.0).map(|(l, e)| (e - l) as usize).collect(),
    );
    let exponents2 = lambda.0.iter().zip(&eta.0).map(|(l, e)| l + e + 1).collect();
    StandardModule { lambda, eta, alpha, exponents2 }
}

pub fn standard_module(lambda: &IntTuple, eta_arranged: &IntTuple) -> Result<StandardModule> {
    crate::combinat::check_len(lambda.k(), eta_arranged.k())?;
    if !lambda.is_weakly_decreasing() {
        return Err(Error::InvalidStandardModule(format!("lambda {lambda} is not weakly decreasing")));
    }
    if lambda.0.iter().zip(&eta_arranged.0).any(|(l, e)| e < l) {
        return Err(Error::InvalidStandardModule(format!("{eta_arranged} - {lambda} has a negative part")));
    }
    Ok(build(lambda.clone(), eta_arranged.clone()))
}

/// Every multisegment of total length `n` whose segments lie in
/// `[window_lo, window_hi]`, each once, in canonical order.
pub fn enumerate_multisegments(n: usize, window_lo: i64, window_hi: i64) -> Result<MultisegmentStream> {
    if window_lo >= window_hi {
        return Err(Error::EmptyWindow { lo: window_lo, hi: window_hi });
    }
    if n == 0 {
        return Err(Error::InvalidMultisegment("total length must be at least 1".into()));
    }
    let mut kinds = Vec::new();
    for lo in window_lo..window_hi {
        for hi in lo + 1..=window_hi {
            kinds.push(Segment { lo, hi });
        }
    }
    kinds.sort();
    Ok(MultisegmentStream { kinds, n, stack: Vec::new(), started: false })
}

/// Depth-first stream over non-decreasing index sequences into the sorted
/// list of admissible segments.
pub struct MultisegmentStream {
    kinds: Vec<Segment>,
    n: usize,
    // (kind index, running total after taking it)
    stack: Vec<(usize, usize)>,
    started: bool,
}

impl MultisegmentStream {
    fn total(&self) -> usize {
        self.stack.last().map_or(0, |&(_, t)| t)
    }

    /// Extends the stack greedily from `from` until the total hits `n` or no
    /// kind fits; returns whether the total is exactly `n`.
    fn descend(&mut self, from: usize) -> bool {
        let mut start = from;
        loop {
            let total = self.total();
            if total == self.n {
                return true;
            }
            let Some(i) = (start..self.kinds.len()).find(|&i| total + self.kinds[i].len() <= self.n) else {
                return false;
            };
            self.stack.push((i, total + self.kinds[i].len()));
            start = i;
        }
    }

    /// Moves to the next candidate after the current stack top.
    fn advance(&mut self) -> bool {
        while let Some((i, _)) = self.stack.pop() {
            let total = self.total();
            if let Some(j) = (i + 1..self.kinds.len()).find(|&j| total + self.kinds[j].len() <= self.n) {
                self.stack.push((j, total + self.kinds[j].len()));
                if self.descend(j) {
                    return true;
                }
                // dead end below j: keep unwinding from j
                continue;
            }
        }
        false
    }

    fn current(&self) -> Multisegment {
        let segs = self.stack.iter().map(|&(i, _)| self.kinds[i]).collect();
        Multisegment::new(segs).expect("non-empty")
    }
}

impl Iterator for MultisegmentStream {
    type Item = Multisegment;

    fn next(&mut self) -> Option<Multisegment> {
        let found = if !self.started {
            self.started = true;
            self.descend(0) || self.advance()
        } else {
            self.advance()
        };
        found.then(|| self.current())
    }
}
