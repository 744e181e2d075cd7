use proptest::prelude::*;

use lce_core::combinat::IntTuple;
use lce_core::symgroup::{act, bruhat_leq, longest_sorter, longest_with_sorted_image, shifted_act, Permutation};
use lce_oracle::{all_perms, inversions, oracle_bruhat, reduced_word};

fn perm(one_line: &[usize]) -> Permutation {
    Permutation::from_one_line(one_line).unwrap()
}

#[test]
fn enumeration_is_lexicographic_and_complete() {
    for k in 0..=6 {
        let ours: Vec<Vec<usize>> = Permutation::all(k).map(|p| p.one_line()).collect();
        let mut theirs = all_perms(k);
        theirs.sort();
        assert_eq!(ours, theirs, "k = {k}");
    }
}

#[test]
fn length_and_sign_against_oracle() {
    for k in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(k).collect();
        for a in &all {
            assert_eq!(a.length(), inversions(&a.one_line()));
            assert_eq!(a.length(), reduced_word(&a.one_line()).len());
            assert_eq!(a.inverse().length(), a.length());
            for b in &all {
                let ab = a.compose(b).unwrap();
                assert!(ab.length() <= a.length() + b.length());
                assert_eq!(ab.sign(), a.sign() * b.sign());
            }
        }
    }
}

#[test]
fn bruhat_against_subword_oracle() {
    for k in 1..=5 {
        let all: Vec<Permutation> = Permutation::all(k).collect();
        for x in &all {
            for w in &all {
                assert_eq!(
                    bruhat_leq(x, w).unwrap(),
                    oracle_bruhat(&x.one_line(), &w.one_line()),
                    "{x} <= {w}"
                );
            }
        }
    }
}

#[test]
fn mismatched_sizes_are_errors() {
    assert!(bruhat_leq(&Permutation::identity(2), &Permutation::identity(3)).is_err());
    assert!(Permutation::identity(2).compose(&Permutation::identity(3)).is_err());
    assert!(act(&Permutation::identity(2), &IntTuple(vec![1, 2, 3])).is_err());
}

#[test]
fn longest_sorters_by_brute_force() {
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for k in 1..=6 {
        tuples = tuples
            .iter()
            .flat_map(|t| (0..3).map(move |v| t.iter().copied().chain([v]).collect()))
            .collect();
        let all: Vec<Permutation> = Permutation::all(k).collect();
        for t in tuples.iter().filter(|t| t.len() == k) {
            let x = IntTuple(t.clone());
            let w = longest_sorter(&x);
            assert!(act(&w, &x).unwrap().is_weakly_decreasing());
            let best = all.iter().filter(|v| act(v, &x).unwrap().is_weakly_decreasing()).map(|v| v.length()).max();
            assert_eq!(Some(w.length()), best, "{x}");

            let u = longest_with_sorted_image(&x);
            assert!(act(&u.inverse(), &x).unwrap().is_weakly_decreasing());
            assert_eq!(u.length(), w.length());
        }
    }
}

#[test]
fn parse_and_display_round_trip() {
    for k in 1..=5 {
        for p in Permutation::all(k) {
            let back: Permutation = p.to_string().parse().unwrap();
            assert_eq!(back, p);
        }
    }
    let big = perm(&[10, 1, 2, 3, 4, 5, 6, 7, 8, 9]);
    assert_eq!(big.to_string(), "[10,1,2,3,4,5,6,7,8,9]");
    assert_eq!(big.to_string().parse::<Permutation>().unwrap(), big);
}

fn arb_perm(k: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=k).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn arb_case() -> impl Strategy<Value = (Permutation, Permutation, Vec<i64>, Vec<i64>)> {
    (1usize..=8).prop_flat_map(|k| {
        (
            arb_perm(k),
            arb_perm(k),
            prop::collection::vec(-5i64..5, k),
            prop::collection::vec(-5i64..5, k),
        )
    })
}

proptest! {
    #[test]
    fn act_is_a_left_action((v, w, x, x0) in arb_case()) {
        let x = IntTuple(x);
        let x0 = IntTuple(x0);
        let vw = v.compose(&w).unwrap();
        prop_assert_eq!(act(&vw, &x).unwrap(), act(&v, &act(&w, &x).unwrap()).unwrap());
        prop_assert_eq!(
            shifted_act(&vw, &x, &x0).unwrap(),
            shifted_act(&v, &shifted_act(&w, &x, &x0).unwrap(), &x0).unwrap()
        );
        // result[w(j)] = x[j]
        let image = act(&w, &x).unwrap();
        for j in 0..x.k() {
            prop_assert_eq!(image.entries()[w.apply(j + 1) - 1], x.entries()[j]);
        }
    }
}
