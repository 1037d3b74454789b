use num_bigint::BigUint;
use wordmaps_core::group::{
    builtin_library, nilpotency_class, parse_builtin, FiniteGroup, GroupOptions,
};
use wordmaps_core::omega::{
    abelian_omega, distinct_power_maps, log2_biguint, log2_lower_binomial, omega_exact,
    omega_lower, omega_upper_nilpotent, ClosureOptions, OmegaError,
};

fn library() -> Vec<FiniteGroup> {
    let opts = GroupOptions::default();
    builtin_library()
        .iter()
        .map(|s| s.build(&opts).unwrap().with_label(s.to_string()))
        .collect()
}

fn capped() -> ClosureOptions {
    ClosureOptions {
        closure_cap: 20_000,
        table_cap: 100_000,
        ..ClosureOptions::default()
    }
}

#[test]
fn sandwich_on_library() {
    for g in library() {
        let mut previous = 0u64;
        for d in 0..=2 {
            let exact = match omega_exact(&g, d, &capped()) {
                Ok(x) => x,
                Err(OmegaError::ClosureCapExceeded { partial, .. }) => {
                    assert!(partial >= previous);
                    break;
                }
                Err(OmegaError::TableCapExceeded { .. }) => break,
                Err(e) => panic!("{e}"),
            };
            let big = BigUint::from(exact);
            assert!(omega_lower(&g, d) <= big, "{:?} d={d}", g.label());
            let bits = log2_lower_binomial(&g, d);
            assert!(log2_biguint(&big) + 1e-9 >= bits.to_string().parse::<f64>().unwrap());
            if let Ok(upper) = omega_upper_nilpotent(&g, d) {
                assert!(big <= upper.hall, "{:?} d={d}", g.label());
                assert!(upper.hall <= upper.formal);
            }
            let n = g.order() as f64;
            assert!(log2_biguint(&big) <= n.powi(d as i32) * n.log2() + 1e-9);
            assert!(exact >= previous, "monotone in d");
            previous = exact;
        }
    }
}

#[test]
fn abelian_groups_are_exact() {
    for g in library().into_iter().filter(|g| g.is_abelian()) {
        for d in 0..=2 {
            if let Ok(exact) = omega_exact(&g, d, &capped()) {
                assert_eq!(BigUint::from(exact), abelian_omega(&g, d).unwrap());
            }
        }
    }
}

#[test]
fn arity_one_counts_power_maps() {
    for g in library() {
        let exact = omega_exact(&g, 1, &ClosureOptions::default()).unwrap();
        assert_eq!(exact as usize, distinct_power_maps(&g), "{:?}", g.label());
    }
}

#[test]
fn arity_zero_is_one() {
    for g in library() {
        assert_eq!(omega_exact(&g, 0, &ClosureOptions::default()), Ok(1));
    }
}

#[test]
fn q8_exact_value_is_stable() {
    let g = parse_builtin("quaternion:8", &GroupOptions::default()).unwrap();
    let one = omega_exact(&g, 2, &ClosureOptions::default()).unwrap();
    let four = omega_exact(
        &g,
        2,
        &ClosureOptions {
            workers: 4,
            ..ClosureOptions::default()
        },
    )
    .unwrap();
    assert_eq!(one, four);
    assert_eq!(nilpotency_class(&g).class, Some(2));
    assert!((32..=64).contains(&one));
}
