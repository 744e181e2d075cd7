//! Local character expansion vectors `{c_mu}` and degenerate Whittaker
//! dimension vectors `{d_alpha}`.
//!
//! Two independent routes produce the `c`-vector of an irreducible `Z(m)`:
//! expanding `Z(m)` on standard modules ([`decompose`]) and summing their
//! one-term expansions, or the closed formula over `S_k` in [`c_via_kl`].
//! The normalisation is fixed so that a standard module with composition
//! `alpha` has the single coefficient `1` at `p(alpha)^t`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::combinat::{as_partition, count_01_matrices, transpose, IntTuple, Partition};
use crate::error::{Error, Result};
use crate::klpoly::KlEngine;
use crate::multiseg::{canonicalize, omega12, standard_module, Multisegment, StandardModule};
use crate::symgroup::{act, Permutation};

/// Integer coefficients indexed by partitions of `n`; absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefficientVector {
    n: usize,
    entries: BTreeMap<Partition, BigInt>,
}

impl CoefficientVector {
    pub fn new(n: usize) -> Self {
        Self { n, entries: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `value` at `key`, dropping the entry if it cancels.
    pub fn add(&mut self, key: Partition, value: &BigInt) -> Result<()> {
        if key.n() != self.n {
            return Err(Error::InvalidPartition(format!("{key} is not a partition of {}", self.n)));
        }
        if value.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry(key.clone()).or_default();
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn from_entries<I, V>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, V)>,
        V: Into<BigInt>,
    {
        let mut out = Self::new(n);
        for (k, v) in entries {
            out.add(k, &v.into())?;
        }
        Ok(out)
    }

    pub fn get(&self, key: &Partition) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Non-zero entries, largest partition first. Lexicographic order
    /// refines dominance, so this is dominance-descending.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.entries.iter().rev()
    }

    fn scaled_add(&mut self, other: &CoefficientVector, factor: &BigInt) {
        for (k, v) in &other.entries {
            self.add(k.clone(), &(v * factor)).expect("same n");
        }
    }
}

impl fmt::Display for CoefficientVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (k, v)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{k}:{v}")?;
        }
        write!(f, "}}")
    }
}

/// `[Z(m)]` written on standard modules.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StandardDecomposition {
    pub terms: Vec<(BigInt, StandardModule)>,
}

/// `c`-vector of a standard module: `1` at `p(alpha)^t`.
pub fn c_of_standard(zeta: &StandardModule) -> CoefficientVector {
    let beta = transpose(&zeta.alpha().to_partition());
    let n = zeta.n();
    CoefficientVector::from_entries(n, [(beta, 1)]).expect("partition of n")
}

/// `[Z(m)] = sum_sigma sign(sigma * omega(m)) P_{w0 sigma, w0 omega(m)}(1) [zeta(lambda(m), sigma * eta(m))]`
/// over the `sigma` keeping `sigma * eta(m) - lambda(m)` non-negative.
///
/// Terms are grouped by the Grothendieck normal form of the module and zero
/// totals are dropped.
pub fn decompose(engine: &KlEngine, m: &Multisegment) -> StandardDecomposition {
    let canon = canonicalize(m);
    let k = m.k();
    let w0 = Permutation::longest(k);
    let top = w0.mul(&canon.omega);
    let mut acc: BTreeMap<StandardModule, BigInt> = BTreeMap::new();
    for sigma in Permutation::all(k) {
        let arranged = act(&sigma, &canon.eta).expect("same k");
        let Ok(zeta) = standard_module(&canon.lambda, &arranged) else {
            continue;
        };
        let p = engine.kl_at_one(&w0.mul(&sigma), &top).expect("same k");
        if p.is_zero() {
            continue;
        }
        let coeff = p * sigma.mul(&canon.omega).sign();
        *acc.entry(zeta.grothendieck_normal_form()).or_default() += coeff;
    }
    let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(z, c)| (c, z)).collect();
    StandardDecomposition { terms }
}

pub fn c_via_decomposition(engine: &KlEngine, m: &Multisegment) -> CoefficientVector {
    c_of_decomposition(m.n(), &decompose(engine, m))
}

pub fn c_of_decomposition(n: usize, dec: &StandardDecomposition) -> CoefficientVector {
    let mut out = CoefficientVector::new(n);
    for (coeff, zeta) in &dec.terms {
        out.scaled_add(&c_of_standard(zeta), coeff);
    }
    out
}

/// The closed formula over `tau in S_k`, on the stored representative.
pub fn c_via_kl(engine: &KlEngine, m: &Multisegment) -> CoefficientVector {
    let (lambda, eta) = m.representative();
    c_via_kl_representative(engine, &lambda, &eta).expect("stored representative is valid")
}

/// `c_mu = sum_{tau : p(tau *_{-lambda} alpha) = mu^t} sign(tau) P_{w0 w1 tau w2, w0 w1 w2}(1)`
/// for an arbitrary representative `(lambda, eta)`.
///
/// `tau *_{-lambda} alpha` simplifies to `tau * eta - lambda`; `tau` whose
/// shifted tuple has a negative entry contributes nowhere.
pub fn c_via_kl_representative(engine: &KlEngine, lambda: &IntTuple, eta: &IntTuple) -> Result<CoefficientVector> {
    let (omega1, omega2) = omega12(lambda, eta)?;
    let k = lambda.k();
    let n = eta.sub(lambda)?.entries().iter().sum::<i64>() as usize;
    let w0 = Permutation::longest(k);
    let left = w0.mul(&omega1);
    let top = left.mul(&omega2);
    let mut out = CoefficientVector::new(n);
    for tau in Permutation::all(k) {
        let shifted = act(&tau, eta)?.sub(lambda)?;
        let Some(nu) = as_partition(&shifted) else {
            continue;
        };
        let p = engine.kl_at_one(&left.mul(&tau).mul(&omega2), &top)?;
        if p.is_zero() {
            continue;
        }
        out.add(transpose(&nu), &(p * tau.sign()))?;
    }
    Ok(out)
}

fn s_count(alpha: &Partition, beta: &Partition) -> BigInt {
    BigInt::from(count_01_matrices(alpha.parts(), beta.parts()))
}

/// `d_alpha = sum_beta s(alpha, beta^t) c_beta` for every partition `alpha`.
pub fn d_via_theorem_main(c: &CoefficientVector) -> CoefficientVector {
    let mut out = CoefficientVector::new(c.n());
    for alpha in Partition::all(c.n()) {
        let mut total = BigInt::zero();
        for (beta, cb) in c.iter() {
            total += s_count(&alpha, &transpose(beta)) * cb;
        }
        out.add(alpha, &total).expect("partition of n");
    }
    out
}

/// `d_alpha` of a standard module: `s(alpha, p(alpha_zeta))`.
pub fn d_of_standard(zeta: &StandardModule, alpha: &Partition) -> BigUint {
    let beta = zeta.alpha().to_partition();
    count_01_matrices(alpha.parts(), beta.parts())
}

pub fn d_via_decomposition(engine: &KlEngine, m: &Multisegment) -> CoefficientVector {
    d_of_decomposition(m.n(), &decompose(engine, m))
}

pub fn d_of_decomposition(n: usize, dec: &StandardDecomposition) -> CoefficientVector {
    let mut out = CoefficientVector::new(n);
    for alpha in Partition::all(n) {
        let mut total = BigInt::zero();
        for (coeff, zeta) in &dec.terms {
            total += BigInt::from(d_of_standard(zeta, &alpha)) * coeff;
        }
        out.add(alpha, &total).expect("partition of n");
    }
    out
}

/// Inverts [`d_via_theorem_main`] by back-substitution. The system is
/// unitriangular along dominance: `d_alpha = c_alpha + sum_{beta > alpha} s(alpha, beta^t) c_beta`.
pub fn c_from_d(d: &CoefficientVector) -> Result<CoefficientVector> {
    let n = d.n();
    let mut c = CoefficientVector::new(n);
    // lexicographically decreasing, so every beta dominating alpha comes first
    for alpha in Partition::all(n) {
        let pivot = s_count(&alpha, &transpose(&alpha));
        if !pivot.is_one() {
            return Err(Error::NoSolution(format!("pivot s({alpha}, {alpha}^t) = {pivot}")));
        }
        let mut rhs = d.get(&alpha);
        for (beta, cb) in c.iter() {
            rhs -= s_count(&alpha, &transpose(beta)) * cb;
        }
        c.add(alpha, &rhs)?;
    }
    if d_via_theorem_main(&c) != *d {
        return Err(Error::NoSolution("back-substitution does not reproduce d".into()));
    }
    Ok(c)
}

/// Multiplicativity under parabolic induction:
/// `c_mu(pi_1 x .. x pi_r) = sum prod_i c_{beta^i}(pi_i)` over key tuples with
/// `p(beta^1 + .. + beta^r) = mu`, partitions zero-padded to length `n`.
pub fn product_c(factors: &[CoefficientVector]) -> CoefficientVector {
    let n: usize = factors.iter().map(CoefficientVector::n).sum();
    let mut partial: BTreeMap<Vec<i64>, BigInt> = BTreeMap::from([(vec![0; n], BigInt::one())]);
    for f in factors {
        let mut next: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (acc, coeff) in &partial {
            for (beta, cb) in f.iter() {
                let padded = beta.padded(n);
                let sum: Vec<i64> = acc.iter().zip(padded.entries()).map(|(a, b)| a + b).collect();
                *next.entry(sum).or_default() += coeff * cb;
            }
        }
        partial = next;
    }
    let mut out = CoefficientVector::new(n);
    for (sum, coeff) in partial {
        let mu = as_partition(&IntTuple(sum)).expect("sums of partitions are non-negative");
        out.add(mu, &coeff).expect("partition of n");
    }
    out
}
