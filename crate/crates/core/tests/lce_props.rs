use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rayon::prelude::*;

use lce_core::combinat::{transpose, IntTuple, Partition};
use lce_core::klpoly::KlEngine;
use lce_core::lce::{
    c_from_d, c_of_decomposition, c_of_standard, c_via_decomposition, c_via_kl, c_via_kl_representative, d_of_standard,
    d_via_decomposition, d_via_theorem_main, decompose, product_c, CoefficientVector,
};
use lce_core::multiseg::{enumerate_multisegments, standard_module, Multisegment, Segment};
use lce_core::symgroup::{act, Permutation};
use lce_oracle::oracle_product_c;

fn sweep(max_n: usize, lo: i64, hi: i64) -> Vec<Multisegment> {
    (1..=max_n).flat_map(|n| enumerate_multisegments(n, lo, hi).unwrap()).collect()
}

fn linked(a: &Segment, b: &Segment) -> bool {
    let touching = a.lo.max(b.lo) <= a.hi.min(b.hi);
    let nested = (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi);
    touching && !nested
}

fn ones(n: usize) -> Partition {
    Partition::new(vec![1; n]).unwrap()
}

#[test]
fn both_routes_agree_beyond_the_acceptance_window() {
    let engine = KlEngine::new();
    let mut cases = sweep(6, 0, 3);
    cases.extend(sweep(4, -2, 2));
    cases.par_iter().for_each(|m| {
        let c = c_via_kl(&engine, m);
        assert_eq!(c, c_via_decomposition(&engine, m), "{m}");
        assert_eq!(d_via_theorem_main(&c), d_via_decomposition(&engine, m), "{m}");
    });
}

#[test]
fn representative_does_not_matter() {
    let engine = KlEngine::new();
    for m in sweep(5, 0, 3) {
        let expected = c_via_kl(&engine, &m);
        let (lambda, eta) = m.representative();
        let mut seen = HashSet::new();
        for p in Permutation::all(m.k()) {
            let rep = (act(&p, &lambda).unwrap(), act(&p, &eta).unwrap());
            if seen.insert(rep.clone()) {
                assert_eq!(c_via_kl_representative(&engine, &rep.0, &rep.1).unwrap(), expected, "{m}");
            }
        }
    }
}

#[test]
fn translation_does_not_matter() {
    let engine = KlEngine::new();
    for m in sweep(4, 0, 3) {
        let shifted: Vec<Segment> = m.segments().iter().map(|s| Segment::new(s.lo - 7, s.hi - 7).unwrap()).collect();
        let shifted = Multisegment::new(shifted).unwrap();
        assert_eq!(c_via_kl(&engine, &m), c_via_kl(&engine, &shifted), "{m}");
    }
}

#[test]
fn one_dimensional_parameters_are_normalized() {
    let engine = KlEngine::new();
    for n in 1..=7 {
        for a in -2..=2 {
            let m = Multisegment::new(vec![Segment::new(a, a + n as i64).unwrap()]).unwrap();
            let expected = CoefficientVector::from_entries(n, [(ones(n), 1)]).unwrap();
            assert_eq!(c_via_kl(&engine, &m), expected);
            assert_eq!(d_via_theorem_main(&expected), expected);
        }
    }
}

#[test]
fn unlinked_parameters_are_products_of_characters() {
    let engine = KlEngine::new();
    for m in sweep(6, 0, 4) {
        let segs = m.segments();
        let unlinked = segs.iter().enumerate().all(|(i, a)| segs[i + 1..].iter().all(|b| !linked(a, b)));
        if !unlinked {
            continue;
        }
        let factors: Vec<CoefficientVector> = segs
            .iter()
            .map(|s| CoefficientVector::from_entries(s.len(), [(ones(s.len()), 1)]).unwrap())
            .collect();
        assert_eq!(c_via_kl(&engine, &m), product_c(&factors), "{m}");
    }
}

#[test]
fn whittaker_dimensions_of_irreducibles() {
    let engine = KlEngine::new();
    sweep(5, 0, 4).par_iter().for_each(|m| {
        let c = c_via_kl(&engine, m);
        assert!(c.iter().all(|(mu, _)| mu.first() <= m.k()), "{m}: {c}");
        let d = d_via_theorem_main(&c);
        assert!(d.iter().all(|(_, v)| *v >= BigInt::zero()), "{m}: {d}");
        // at most one Whittaker functional
        assert!(d.get(&Partition::new(vec![m.n()]).unwrap()) <= BigInt::one(), "{m}: {d}");
        assert!(!c.is_zero());
    });
}

#[test]
fn steinberg_is_generic() {
    let engine = KlEngine::new();
    for n in 1..=6 {
        let segs = (0..n as i64).map(|i| Segment::new(i, i + 1).unwrap()).collect();
        let m = Multisegment::new(segs).unwrap();
        let d = d_via_theorem_main(&c_via_kl(&engine, &m));
        assert_eq!(d.get(&Partition::new(vec![n]).unwrap()), BigInt::one(), "n = {n}");
    }
}

#[test]
fn decomposition_terms_are_distinct_and_nonzero() {
    let engine = KlEngine::new();
    for m in sweep(5, 0, 3) {
        let dec = decompose(&engine, &m);
        let modules: HashSet<_> = dec.terms.iter().map(|(_, z)| z.clone()).collect();
        assert_eq!(modules.len(), dec.terms.len());
        for (c, z) in &dec.terms {
            assert!(!c.is_zero());
            assert_eq!(z.n(), m.n());
            assert!(z.alpha().parts().iter().all(|&a| a > 0));
        }
        assert_eq!(c_of_decomposition(m.n(), &dec), c_via_decomposition(&engine, &m));
    }
}

#[test]
fn standard_module_d_vectors() {
    for alpha in [vec![2usize, 1], vec![1, 3], vec![2, 2, 1], vec![1, 1, 1, 1]] {
        let k = alpha.len();
        let lambda = IntTuple(vec![0; k]);
        let eta = IntTuple(alpha.iter().map(|&a| a as i64).collect());
        let z = standard_module(&lambda, &eta).unwrap();
        let d = d_via_theorem_main(&c_of_standard(&z));
        for a in Partition::all(z.n()) {
            assert_eq!(d.get(&a), BigInt::from(d_of_standard(&z, &a)), "{alpha:?} {a}");
        }
    }
}

fn to_oracle(c: &CoefficientVector) -> (usize, BTreeMap<Vec<usize>, i64>) {
    (c.n(), c.iter().map(|(k, v)| (k.parts().to_vec(), i64::try_from(v).unwrap())).collect())
}

fn arb_vector(max_n: usize) -> impl Strategy<Value = CoefficientVector> {
    (1..=max_n).prop_flat_map(|n| {
        let parts = Partition::all(n);
        prop::collection::vec(-20i64..=20, parts.len()).prop_map(move |vals| {
            CoefficientVector::from_entries(n, parts.iter().cloned().zip(vals)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn c_from_d_inverts(c in arb_vector(8)) {
        prop_assert_eq!(c_from_d(&d_via_theorem_main(&c)).unwrap(), c);
    }

    #[test]
    fn product_matches_oracle(a in arb_vector(3), b in arb_vector(3), c in arb_vector(2)) {
        let fast = product_c(&[a.clone(), b.clone(), c.clone()]);
        let slow = oracle_product_c(&[to_oracle(&a), to_oracle(&b), to_oracle(&c)]);
        prop_assert_eq!(to_oracle(&fast).1, slow);
        prop_assert_eq!(product_c(&[b.clone(), a.clone()]), product_c(&[a, b]));
    }
}

#[test]
fn product_of_nothing_is_the_unit() {
    let unit = product_c(&[]);
    assert_eq!(unit.n(), 0);
    assert_eq!(unit.get(&Partition::empty()), BigInt::one());
}

#[test]
fn transposed_keys_of_standard_modules() {
    let z = standard_module(&IntTuple(vec![3, 0]), &IntTuple(vec![5, 1])).unwrap();
    let c = c_of_standard(&z);
    assert_eq!(c.len(), 1);
    assert_eq!(c.get(&transpose(&Partition::new(vec![2, 1]).unwrap())), BigInt::one());
}
