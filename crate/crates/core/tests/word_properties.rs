use proptest::prelude::*;
use wordmaps_core::group::{parse_builtin, GroupOptions};
use wordmaps_core::word::{parse_word_with_arity, word_map_table, Word};

const D: usize = 3;

fn raw_word() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((1..=D, -3i64..=3), 0..16)
}

fn word() -> impl Strategy<Value = Word> {
    raw_word().prop_map(|raw| Word::reduce(D, raw).unwrap())
}

proptest! {
    #[test]
    fn reduction_is_idempotent(raw in raw_word()) {
        let w = Word::reduce(D, raw).unwrap();
        let again = Word::reduce(D, w.syllables().iter().copied()).unwrap();
        prop_assert_eq!(&again, &w);
        for pair in w.syllables().windows(2) {
            prop_assert_ne!(pair[0].0, pair[1].0);
        }
        prop_assert!(w.syllables().iter().all(|&(_, e)| e != 0));
    }

    #[test]
    fn concat_is_associative(a in word(), b in word(), c in word()) {
        prop_assert_eq!(a.concat(&b).concat(&c), a.concat(&b.concat(&c)));
    }

    #[test]
    fn inverse_cancels(a in word()) {
        prop_assert!(a.concat(&a.invert()).is_identity());
        prop_assert!(a.invert().concat(&a).is_identity());
    }

    #[test]
    fn display_parses_back(a in word()) {
        prop_assert_eq!(parse_word_with_arity(&a.to_string(), D).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in word(), b in word(), seed in 0usize..24usize.pow(3)) {
        let g = parse_builtin("symmetric:4", &GroupOptions::default()).unwrap();
        let args = [seed % 24, (seed / 24) % 24, seed / 576];
        let ab = a.concat(&b).evaluate(&g, &args);
        prop_assert_eq!(ab, g.mul(a.evaluate(&g, &args), b.evaluate(&g, &args)));
        prop_assert_eq!(a.invert().evaluate(&g, &args), g.inv(a.evaluate(&g, &args)));
    }

    #[test]
    fn tables_agree_with_pointwise_evaluation(a in word()) {
        let g = parse_builtin("quaternion:8", &GroupOptions::default()).unwrap();
        let t = word_map_table(&a, &g, D, 1 << 20).unwrap();
        for i in (0..t.len()).step_by(7) {
            let args = [i % 8, (i / 8) % 8, i / 64];
            prop_assert_eq!(t.get(&args), a.evaluate(&g, &args));
        }
    }

    #[test]
    fn power_matches_repeated_product(a in word(), k in -6i64..=6) {
        let base = if k < 0 { a.invert() } else { a.clone() };
        let naive = (0..k.unsigned_abs()).fold(Word::identity(D), |acc, _| acc.concat(&base));
        prop_assert_eq!(a.power(k), naive);
    }
}
