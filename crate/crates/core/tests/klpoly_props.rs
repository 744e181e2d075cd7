use std::io::BufReader;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lce_core::klpoly::{KLPolynomial, KlEngine};
use lce_core::symgroup::{bruhat_leq, Permutation};
use lce_oracle::RPolyOracle;

fn as_i64(p: &KLPolynomial) -> Vec<i64> {
    p.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn agrees_with_r_polynomial_route_up_to_s4() {
    let engine = KlEngine::new();
    for k in 1..=4 {
        let mut oracle = RPolyOracle::new(k);
        for x in Permutation::all(k) {
            for w in Permutation::all(k) {
                assert_eq!(as_i64(&engine.kl(&x, &w).unwrap()), oracle.kl(&x.one_line(), &w.one_line()), "{x} {w}");
            }
        }
    }
}

#[test]
fn agrees_with_r_polynomial_route_on_random_s5_and_s6_pairs() {
    let engine = KlEngine::new();
    let mut rng = StdRng::seed_from_u64(17);
    for (k, pairs) in [(5, 300), (6, 25)] {
        let all: Vec<Permutation> = Permutation::all(k).collect();
        let mut oracle = RPolyOracle::new(k);
        for _ in 0..pairs {
            let x = &all[rng.gen_range(0..all.len())];
            let w = &all[rng.gen_range(0..all.len())];
            assert_eq!(as_i64(&engine.kl(x, w).unwrap()), oracle.kl(&x.one_line(), &w.one_line()), "{x} {w}");
        }
    }
}

#[test]
fn structural_properties_through_s5() {
    let engine = KlEngine::new();
    for k in 1..=5 {
        let w0 = Permutation::longest(k);
        let all: Vec<Permutation> = Permutation::all(k).collect();
        for x in &all {
            assert_eq!(*engine.kl(x, &w0).unwrap(), KLPolynomial::one());
            assert_eq!(*engine.kl(x, x).unwrap(), KLPolynomial::one());
            for w in &all {
                let p = engine.kl(x, w).unwrap();
                if !bruhat_leq(x, w).unwrap() {
                    assert!(p.is_zero());
                    continue;
                }
                assert_eq!(p.coeff(0), BigInt::from(1));
                assert!(p.coeffs().iter().all(|c| *c >= BigInt::from(0)));
                if x != w {
                    assert!(2 * p.degree().unwrap() < w.length() - x.length(), "{x} {w} {p}");
                }
            }
        }
    }
}

#[test]
fn inverse_symmetry() {
    // P_{x,w} = P_{x^{-1},w^{-1}}
    let engine = KlEngine::new();
    for x in Permutation::all(5) {
        for w in Permutation::all(5).step_by(7) {
            assert_eq!(engine.kl(&x, &w).unwrap(), engine.kl(&x.inverse(), &w.inverse()).unwrap());
        }
    }
}

#[test]
fn shared_engine_is_usable_from_many_threads() {
    let engine = Arc::new(KlEngine::new());
    let reference = KlEngine::new();
    let all: Vec<Permutation> = Permutation::all(5).collect();
    std::thread::scope(|scope| {
        for t in 0..4 {
            let engine = Arc::clone(&engine);
            let all = &all;
            scope.spawn(move || {
                for x in all.iter().skip(t).step_by(4) {
                    for w in all.iter().step_by(11) {
                        engine.kl(x, w).unwrap();
                    }
                }
            });
        }
    });
    for x in all.iter().step_by(3) {
        for w in all.iter().step_by(11) {
            assert_eq!(engine.kl(x, w).unwrap(), reference.kl(x, w).unwrap());
        }
    }
}

#[test]
fn cache_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kl.cache");
    let engine = KlEngine::new();
    assert_eq!(engine.load_cache_file(&path).unwrap(), 0);
    let e = Permutation::identity(5);
    let w: Permutation = "45312".parse().unwrap();
    let p = engine.kl(&e, &w).unwrap();
    engine.save_cache_file(&path).unwrap();

    let fresh = KlEngine::new();
    let loaded = fresh.load_cache_file(&path).unwrap();
    assert_eq!(loaded, engine.cached_pairs());
    assert_eq!(fresh.kl(&e, &w).unwrap(), p);

    let mut a = Vec::new();
    let mut b = Vec::new();
    engine.save_cache(&mut a).unwrap();
    fresh.save_cache(&mut b).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corrupt_cache_is_rejected() {
    let engine = KlEngine::new();
    let bad = "klcache/1\n3\t123\t321\tx\n";
    assert!(engine.load_cache(BufReader::new(bad.as_bytes())).is_err());
    assert!(engine.load_cache(BufReader::new("nope\n".as_bytes())).is_err());
}
