use gensig_core::classes::{flip, flip_neighbors, flippable_moves};
use gensig_core::cross::{crossing_number, crossing_profile};
use gensig_core::enumerate::{enumerate_all, random_signotope};
use gensig_core::format::{parse, to_signs_text, to_triples_text};
use gensig_core::{validate, Permutation, Signotope};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn subsets(n: u8, k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        if mask.count_ones() as usize == k {
            out.push((1..=n).filter(|x| mask >> (x - 1) & 1 == 1).collect());
        }
    }
    out
}

#[test]
fn restrictions_stay_valid() {
    for n in [5u8, 6] {
        let subs: Vec<Vec<u8>> = (3..n as usize).flat_map(|k| subsets(n, k)).collect();
        for s in enumerate_all(n as usize, false, 1).unwrap() {
            for sub in &subs {
                let r = s.restrict(sub).unwrap();
                assert!(r.first_violation().is_none());
            }
        }
    }
}

#[test]
fn relabeling_and_negation_keep_validity_and_crossings() {
    let perms = [
        Permutation::new(vec![2, 3, 4, 5, 1]).unwrap(),
        Permutation::new(vec![5, 4, 3, 2, 1]).unwrap(),
        Permutation::transposition(5, 2, 4).unwrap(),
    ];
    for s in enumerate_all(5, false, 1).unwrap() {
        let c = crossing_number(&s);
        assert_eq!(crossing_number(&s.negate()), c);
        for p in &perms {
            let t = s.relabel(p).unwrap();
            assert!(t.first_violation().is_none());
            assert_eq!(crossing_number(&t), c);
            assert_eq!(t.relabel(&p.inverse()).unwrap(), s);
        }
    }
}

#[test]
fn flips_keep_every_quad_type_at_five() {
    for s in enumerate_all(5, false, 1).unwrap() {
        let before = crossing_profile(&s);
        for m in flippable_moves(&s) {
            let t = flip(&s, m).unwrap();
            assert_eq!(crossing_profile(&t), before);
            assert_eq!(flip(&t, m).unwrap(), s);
        }
        assert_eq!(flip_neighbors(&s).len(), flippable_moves(&s).len());
    }
}

#[test]
fn text_forms_round_trip_over_every_six_element_signotope() {
    for s in enumerate_all(6, false, 1).unwrap().iter().step_by(97) {
        assert_eq!(parse(&to_triples_text(s)).unwrap(), *s);
        assert_eq!(parse(&to_signs_text(s)).unwrap(), *s);
        let json = serde_json::to_string(s).unwrap();
        assert_eq!(serde_json::from_str::<Signotope>(&json).unwrap(), *s);
    }
}

#[test]
fn negated_stream_is_the_reversed_stream() {
    let all = enumerate_all(5, false, 1).unwrap();
    let neg: Vec<Signotope> = all.iter().rev().map(|s| s.negate()).collect();
    assert_eq!(neg, all);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_signotopes_are_valid_and_restrict_cleanly(n in 4usize..=12, seed in any::<u64>()) {
        let s = random_signotope(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert!(validate(n, &s.signs()).is_ok());
        let keep: Vec<u8> = (1..=n as u8).filter(|x| x % 2 == 1 || *x == 2).collect();
        prop_assert!(s.restrict(&keep).unwrap().first_violation().is_none());
    }

    #[test]
    fn flips_of_random_signotopes_keep_crossings(n in 4usize..=9, seed in any::<u64>()) {
        let s = random_signotope(n, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        let c = crossing_number(&s);
        for t in flip_neighbors(&s) {
            prop_assert_eq!(crossing_number(&t), c);
        }
    }
}
