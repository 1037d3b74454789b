//! Counting word maps: exact closure counts, the lower and upper bounds, and
//! growth profiles over a range of arities.

mod closure;
mod report;

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{nilpotency_class, FiniteGroup};
use crate::nilpotent::{formal_commutator_polynomial, hall_basis, NilpotentError};
use crate::word::admissible_count;

pub use closure::{omega_exact, ClosureOptions, DEFAULT_CLOSURE_CAP};
pub use report::{
    growth_profile, log2_biguint, omega_report, ArityCheck, GrowthProfile, OmegaReport, Verdict,
};

/// Cap on the Hall basis built for the nilpotent upper bound.
pub const UPPER_BOUND_BASIS_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error("table of {order}^{d} entries exceeds cap {cap}")]
    TableCapExceeded { order: usize, d: usize, cap: usize },
    #[error("closure passed cap {cap}; at least {partial} distinct word maps")]
    ClosureCapExceeded { partial: u64, cap: u64 },
    #[error("group of order {0} is too large for closure tables")]
    GroupTooLarge(usize),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not nilpotent")]
    NotNilpotent,
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

/// `exp(G)^d`, the number of word maps of an abelian group.
pub fn abelian_omega(g: &FiniteGroup, d: usize) -> Result<BigUint, OmegaError> {
    if !g.is_abelian() {
        return Err(OmegaError::NotAbelian);
    }
    Ok(BigUint::from(g.exponent()).pow(d as u32))
}

/// `prod_{r=1}^{d} exp_r(G)^{C(d, r)}`, the number of admissible functions.
pub fn omega_lower(g: &FiniteGroup, d: usize) -> BigUint {
    admissible_count(g, d)
}

/// `sum_{r=1}^{m} C(d, r)` with `m = min(c, d)` for nilpotent `G` of class
/// `c` and `m = d` otherwise (where the sum is `2^d - 1`).
pub fn log2_lower_binomial(g: &FiniteGroup, d: usize) -> BigUint {
    let m = match nilpotency_class(g).class {
        Some(c) => c.min(d),
        None => d,
    };
    (1..=m).map(|r| binomial(d, r)).sum()
}

/// Upper bounds for a nilpotent group of class `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBounds {
    pub class: usize,
    /// `N_{d,c}`, the Hall basis size.
    pub basis_size: usize,
    /// `exp(G)^{N_{d,c}}`.
    pub hall: BigUint,
    /// `P_c(d)`, the number of formal commutators of weight at most `c`.
    pub formal_count: BigUint,
    /// `exp(G)^{P_c(d)}`.
    pub formal: BigUint,
}

pub fn omega_upper_nilpotent(g: &FiniteGroup, d: usize) -> Result<UpperBounds, OmegaError> {
    let class = nilpotency_class(g).class.ok_or(OmegaError::NotNilpotent)?;
    let basis_size = hall_basis(d, class, UPPER_BOUND_BASIS_CAP)?.len();
    let exp = BigUint::from(g.exponent());
    let formal_count = formal_commutator_polynomial(d, class);
    let formal_exp: u32 = formal_count
        .clone()
        .try_into()
        .map_err(|_| NilpotentError::ExponentTooLarge(formal_count.to_string()))?;
    Ok(UpperBounds {
        class,
        basis_size,
        hall: exp.pow(basis_size as u32),
        formal: exp.pow(formal_exp),
        formal_count,
    })
}

/// Number of distinct power maps `x -> x^k`, `k = 0..exp(G)`.
pub fn distinct_power_maps(g: &FiniteGroup) -> usize {
    let n = g.order();
    let maps: HashSet<Vec<usize>> = (0..g.exponent() as i64)
        .map(|k| (0..n).map(|x| g.pow(x, k)).collect())
        .collect();
    maps.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn group(spec: &str) -> FiniteGroup {
        parse_builtin(spec, &GroupOptions::default()).unwrap()
    }

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn abelian_oracle() {
        assert_eq!(abelian_omega(&group("cyclic:2"), 3).unwrap(), big(8));
        assert_eq!(abelian_omega(&group("cyclic:6"), 1).unwrap(), big(6));
        assert_eq!(abelian_omega(&group("cyclic:1"), 9).unwrap(), big(1));
        assert_eq!(
            abelian_omega(&group("symmetric:3"), 1),
            Err(OmegaError::NotAbelian)
        );
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(omega_lower(&group("cyclic:2"), 3), big(8));
        assert_eq!(omega_lower(&group("symmetric:3"), 2), big(108));
        assert_eq!(omega_lower(&group("quaternion:8"), 2), big(32));
        assert_eq!(omega_lower(&group("symmetric:3"), 0), big(1));
    }

    #[test]
    fn binomial_log_bounds() {
        assert_eq!(log2_lower_binomial(&group("cyclic:2"), 5), big(5));
        assert_eq!(log2_lower_binomial(&group("symmetric:3"), 3), big(7));
        assert_eq!(log2_lower_binomial(&group("quaternion:8"), 4), big(10));
        assert_eq!(log2_lower_binomial(&group("quaternion:8"), 1), big(1));
        assert_eq!(log2_lower_binomial(&group("cyclic:1"), 4), big(0));
    }

    #[test]
    fn upper_bounds() {
        let u = omega_upper_nilpotent(&group("cyclic:2"), 3).unwrap();
        assert_eq!((u.basis_size, u.hall.clone()), (3, big(8)));
        let u = omega_upper_nilpotent(&group("quaternion:8"), 2).unwrap();
        assert_eq!((u.basis_size, u.hall.clone()), (3, big(64)));
        assert_eq!(u.formal_count, big(6));
        assert_eq!(u.formal, big(4096));
        let ut = group("unitriangular:3:3");
        assert_eq!(ut.exponent(), 3);
        assert_eq!(omega_upper_nilpotent(&ut, 2).unwrap().hall, big(27));
        assert_eq!(
            omega_upper_nilpotent(&group("symmetric:3"), 2),
            Err(OmegaError::NotNilpotent)
        );
        let t = omega_upper_nilpotent(&group("cyclic:1"), 3).unwrap();
        assert_eq!((t.class, t.hall), (0, big(1)));
    }

    #[test]
    fn power_maps() {
        assert_eq!(distinct_power_maps(&group("symmetric:3")), 6);
        assert_eq!(distinct_power_maps(&group("quaternion:8")), 4);
    }
}
