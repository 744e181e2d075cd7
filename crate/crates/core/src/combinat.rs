//! Partitions, compositions, integer tuples and the 0-1 matrix counter.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An integer partition, parts weakly decreasing and positive.
///
/// The derived `Ord` is lexicographic on the parts, which refines dominance
/// order: if `a` dominates `b` then `a >= b`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self { parts })
    }

    /// Sorts and drops zeros; any multiset of non-negative integers is a
    /// partition after that.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// `(1, ..., 1)` with `r` ones.
    pub fn minimal(r: usize) -> Self {
        Self { parts: vec![1; r] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part, `0` for the empty partition.
    pub fn first(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Zero-padded to `len` entries as a lattice point.
    pub fn padded(&self, len: usize) -> IntTuple {
        assert!(len >= self.len(), "padding {self} to length {len}");
        let mut v: Vec<i64> = self.parts.iter().map(|&p| p as i64).collect();
        v.resize(len, 0);
        IntTuple(v)
    }

    pub fn transpose(&self) -> Partition {
        transpose(self)
    }

    /// All partitions of `n`, lexicographically decreasing (so `(n)` first).
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                go(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_paren_list(s)?
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| Error::Parse(format!("negative part in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Parses `(a,b,c)`; also accepts square brackets and bare comma lists.
pub(crate) fn parse_paren_list(s: &str) -> Result<Vec<i64>> {
    let t = s.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix('[').and_then(|r| r.strip_suffix(']')))
        .unwrap_or(t)
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {tok:?} in {s:?}")))
        })
        .collect()
}

/// A composition of `n` into `k` parts. Zero parts are allowed; use
/// [`Composition::is_strict`] to test membership of the positive-parts set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// True when every part is positive.
    pub fn is_strict(&self) -> bool {
        self.parts.iter().all(|&p| p > 0)
    }

    pub fn drop_zeros(&self) -> Composition {
        Self::new(self.parts.iter().copied().filter(|&p| p > 0).collect())
    }

    /// The sorted representative, as a partition.
    pub fn to_partition(&self) -> Partition {
        Partition::from_unsorted(self.parts.clone())
    }

    /// All compositions of `n` into exactly `k` parts, lexicographic.
    pub fn all(n: usize, k: usize, allow_zero: bool) -> Vec<Composition> {
        fn go(rem: usize, slots: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Composition>) {
            if slots == 0 {
                if rem == 0 {
                    out.push(Composition::new(cur.clone()));
                }
                return;
            }
            for p in min..=rem {
                cur.push(p);
                go(rem - p, slots - 1, min, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, k, usize::from(!allow_zero), &mut Vec::new(), &mut out);
        out
    }
}

/// Parses `(a,b,c)` with non-negative entries.
pub fn parse_composition(s: &str) -> Result<Composition> {
    let parts = parse_paren_list(s)?
        .into_iter()
        .map(|v| usize::try_from(v).map_err(|_| Error::Parse(format!("negative part in {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Composition::new(parts))
}

impl From<&Partition> for Composition {
    fn from(p: &Partition) -> Self {
        Self::new(p.parts.clone())
    }
}

/// A point of the integer lattice `Z^k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntTuple(pub Vec<i64>);

impl IntTuple {
    pub fn new(entries: Vec<i64>) -> Self {
        Self(entries)
    }

    pub fn zeros(k: usize) -> Self {
        Self(vec![0; k])
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn add(&self, other: &IntTuple) -> Result<IntTuple> {
        check_len(self.k(), other.k())?;
        Ok(IntTuple(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &IntTuple) -> Result<IntTuple> {
        check_len(self.k(), other.k())?;
        Ok(IntTuple(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl fmt::Display for IntTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for IntTuple {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

pub(crate) fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}

/// Conjugate partition: the column lengths of the Young diagram.
pub fn transpose(mu: &Partition) -> Partition {
    let parts = (1..=mu.first())
        .map(|j| mu.parts.iter().take_while(|&&p| p >= j).count())
        .collect();
    Partition { parts }
}

/// Weakly decreasing rearrangement of `x`.
pub fn project_p(x: &IntTuple) -> IntTuple {
    let mut v = x.0.clone();
    v.sort_unstable_by(|a, b| b.cmp(a));
    IntTuple(v)
}

/// `x` sorted with trailing zeros stripped, if that is a partition.
pub fn as_partition(x: &IntTuple) -> Option<Partition> {
    if x.0.iter().any(|&v| v < 0) {
        return None;
    }
    Some(Partition::from_unsorted(x.0.iter().map(|&v| v as usize).collect()))
}

/// Dominance order, zero-padding the shorter partition.
pub fn dominance_leq(a: &Partition, b: &Partition) -> bool {
    if a.n() != b.n() {
        return false;
    }
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0usize, 0usize);
    for i in 0..len {
        sa += a.parts.get(i).copied().unwrap_or(0);
        sb += b.parts.get(i).copied().unwrap_or(0);
        if sa > sb {
            return false;
        }
    }
    true
}

/// Number of 0-1 matrices with row sums `alpha` and column sums `beta`.
///
/// Columns are filled one at a time; the state is the multiset of residual
/// row demands (kept sorted, zeros dropped) plus the index of the next column.
/// Each column picks how many rows to decrement from every group of equal
/// residuals, weighted by binomial coefficients.
pub fn count_01_matrices(alpha: &[usize], beta: &[usize]) -> BigUint {
    if alpha.iter().sum::<usize>() != beta.iter().sum::<usize>() {
        return BigUint::zero();
    }
    let mut rows: Vec<usize> = alpha.iter().copied().filter(|&a| a > 0).collect();
    rows.sort_unstable_by(|a, b| b.cmp(a));
    let mut cols: Vec<usize> = beta.iter().copied().filter(|&b| b > 0).collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut memo = HashMap::new();
    count_from(&rows, &cols, 0, &mut memo)
}

type Memo = HashMap<(Vec<usize>, usize), BigUint>;

fn count_from(rows: &[usize], cols: &[usize], j: usize, memo: &mut Memo) -> BigUint {
    if j == cols.len() {
        return if rows.is_empty() { BigUint::one() } else { BigUint::zero() };
    }
    let remaining = cols.len() - j;
    if rows.first().is_some_and(|&r| r > remaining) || cols[j] > rows.len() {
        return BigUint::zero();
    }
    let key = (rows.to_vec(), j);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }

    // (value, multiplicity) groups, values decreasing
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for &r in rows {
        match groups.last_mut() {
            Some((v, m)) if *v == r => *m += 1,
            _ => groups.push((r, 1)),
        }
    }
    let mut total = BigUint::zero();
    let mut take = vec![0usize; groups.len()];
    distribute(&groups, cols[j], 0, &mut take, &mut |take| {
        let mut weight = BigUint::one();
        let mut next = Vec::with_capacity(rows.len());
        for (&(v, m), &t) in groups.iter().zip(take.iter()) {
            weight *= binomial(m, t);
            next.extend(std::iter::repeat_n(v, m - t));
            if v > 1 {
                next.extend(std::iter::repeat_n(v - 1, t));
            }
        }
        next.sort_unstable_by(|a, b| b.cmp(a));
        let sub = count_from(&next, cols, j + 1, memo);
        if !sub.is_zero() {
            total += weight * sub;
        }
    });
    memo.insert(key, total.clone());
    total
}

fn distribute(
    groups: &[(usize, usize)],
    remaining: usize,
    g: usize,
    take: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]),
) {
    if g == groups.len() {
        if remaining == 0 {
            f(take);
        }
        return;
    }
    let room: usize = groups[g + 1..].iter().map(|&(_, m)| m).sum();
    let lo = remaining.saturating_sub(room);
    for t in lo..=groups[g].1.min(remaining) {
        take[g] = t;
        distribute(groups, remaining - t, g + 1, take, f);
    }
    take[g] = 0;
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}
