use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{
    log2_lower_binomial, omega_exact, omega_lower, omega_upper_nilpotent, ClosureOptions,
    OmegaError,
};
use crate::group::{nilpotency_class, ExpProfile, FiniteGroup};

/// Big integers travel as decimal strings.
mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }

    pub mod opt {
        use num_bigint::BigUint;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => s.serialize_some(&v.to_string()),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|t| t.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

fn round6(x: f64) -> f64 {
    (x * 1e6).round() / 1e6
}

/// Binary logarithm of a positive big integer, accurate to f64 precision.
pub fn log2_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        let v: u64 = x.try_into().expect("at most 53 bits");
        return (v as f64).log2();
    }
    let shift = bits - 53;
    let top: u64 = (x >> shift).try_into().expect("53 bits");
    (top as f64).log2() + shift as f64
}

/// Exact count (when computed) and every bound for one arity `d`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OmegaReport {
    pub group: String,
    pub d: usize,
    #[serde(with = "decimal::opt")]
    pub exact: Option<BigUint>,
    /// Bit length of `exact`.
    pub exact_bits: Option<u64>,
    /// `log2(exact)` to 6 decimal places.
    pub omega_log2: Option<f64>,
    #[serde(with = "decimal")]
    pub lower: BigUint,
    #[serde(with = "decimal")]
    pub log2_lower_binomial: BigUint,
    /// `exp(G)^{N_{d,c}}`, nilpotent groups only.
    #[serde(with = "decimal::opt")]
    pub upper: Option<BigUint>,
    /// `exp(G)^{P_c(d)}`, nilpotent groups only.
    #[serde(with = "decimal::opt")]
    pub upper_formal: Option<BigUint>,
    /// `|G|^d * log2 |G|` to 6 decimal places.
    pub trivial_upper_log2: f64,
    pub cap_hit: bool,
    /// Distinct word maps found before a closure cap stopped the search.
    pub closure_partial: Option<u64>,
}

/// Builds the report for `(G, d)`; cap errors become absent fields.
pub fn omega_report(g: &FiniteGroup, d: usize, options: &ClosureOptions) -> OmegaReport {
    let n = g.order();
    let (exact, cap_hit, closure_partial) = match omega_exact(g, d, options) {
        Ok(count) => (Some(BigUint::from(count)), false, None),
        Err(OmegaError::ClosureCapExceeded { partial, .. }) => (None, true, Some(partial)),
        Err(_) => (None, true, None),
    };
    let (upper, upper_formal) = match omega_upper_nilpotent(g, d) {
        Ok(u) => (Some(u.hall), Some(u.formal)),
        Err(_) => (None, None),
    };
    OmegaReport {
        group: g.label().unwrap_or("G").to_string(),
        d,
        exact_bits: exact.as_ref().map(|x| x.bits()),
        omega_log2: exact.as_ref().map(|x| round6(log2_biguint(x))),
        exact,
        lower: omega_lower(g, d),
        log2_lower_binomial: log2_lower_binomial(g, d),
        upper,
        upper_formal,
        trivial_upper_log2: round6((n as f64).powi(d as i32) * (n as f64).log2()),
        cap_hit,
        closure_partial,
    }
}

/// Inequalities checked for one arity. `None` means not decidable from what
/// was computed (e.g. the closure hit its cap).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityCheck {
    pub d: usize,
    pub lower_le_exact: Option<bool>,
    pub exact_le_upper: Option<bool>,
    /// `omega_d >= sum_r C(d, r)`.
    pub binomial_bound: Option<bool>,
    /// `Omega_d <= |G|^(|G|^d)`.
    pub trivial_bound: Option<bool>,
}

impl ArityCheck {
    fn from_report(r: &OmegaReport) -> Self {
        let two_pow = |bits: &BigUint| -> Option<BigUint> {
            u64::try_from(bits).ok().map(|b| BigUint::from(1u32) << b)
        };
        let binomial_threshold = two_pow(&r.log2_lower_binomial);
        match &r.exact {
            Some(exact) => ArityCheck {
                d: r.d,
                lower_le_exact: Some(&r.lower <= exact),
                exact_le_upper: r.upper.as_ref().map(|u| exact <= u),
                binomial_bound: Some(binomial_threshold.is_some_and(|t| exact >= &t)),
                trivial_bound: Some(log2_biguint(exact) <= r.trivial_upper_log2 + 1e-6),
            },
            None => {
                let partial = r.closure_partial.map(BigUint::from);
                let certify = |threshold: Option<&BigUint>| match (&partial, threshold) {
                    (Some(p), Some(t)) if p >= t => Some(true),
                    _ => None,
                };
                ArityCheck {
                    d: r.d,
                    lower_le_exact: certify(Some(&r.lower)),
                    exact_le_upper: None,
                    binomial_bound: certify(binomial_threshold.as_ref()),
                    trivial_bound: None,
                }
            }
        }
    }

    fn failed(&self) -> bool {
        [
            self.lower_le_exact,
            self.exact_le_upper,
            self.binomial_bound,
            self.trivial_bound,
        ]
        .contains(&Some(false))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    /// No computed inequality failed.
    pub consistent: bool,
    pub statement: String,
    pub checks: Vec<ArityCheck>,
}

/// Reports for `d = 0..=d_max` with the dichotomy checked at each arity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthProfile {
    pub group: String,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub exp_profile: Vec<u64>,
    pub reports: Vec<OmegaReport>,
    pub verdict: Verdict,
}

pub fn growth_profile(g: &FiniteGroup, d_max: usize, options: &ClosureOptions) -> GrowthProfile {
    let nil = nilpotency_class(g);
    let reports: Vec<OmegaReport> = (0..=d_max).map(|d| omega_report(g, d, options)).collect();
    let checks: Vec<ArityCheck> = reports.iter().map(ArityCheck::from_report).collect();
    let failures: Vec<usize> = checks.iter().filter(|c| c.failed()).map(|c| c.d).collect();
    let undecided = checks
        .iter()
        .filter(|c| c.binomial_bound.is_none() || c.lower_le_exact.is_none())
        .count();
    let claim = match nil.class {
        Some(c) => format!(
            "nilpotent of class {c}: sum_(r<={c}) C(d,r) <= omega_d <= N_(d,{c}) log2 exp(G)"
        ),
        None => "not nilpotent: omega_d >= 2^d - 1".to_string(),
    };
    let status = if !failures.is_empty() {
        format!("inconsistent at d = {failures:?}")
    } else if undecided > 0 {
        format!("consistent at tested d ({undecided} arities only partially decided)")
    } else {
        "consistent at tested d".to_string()
    };
    let exp_len = d_max.max(1) + 1;
    GrowthProfile {
        group: g.label().unwrap_or("G").to_string(),
        nilpotent: nil.nilpotent,
        class: nil.class,
        exp_profile: ExpProfile::compute(g, exp_len).values,
        reports,
        verdict: Verdict {
            consistent: failures.is_empty(),
            statement: format!("{claim}; {status}"),
            checks,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn group(spec: &str) -> FiniteGroup {
        parse_builtin(spec, &GroupOptions::default()).unwrap()
    }

    #[test]
    fn log2_of_big_integers() {
        assert_eq!(log2_biguint(&BigUint::from(1024u32)), 10.0);
        let x = BigUint::from(3u32).pow(200);
        assert!((log2_biguint(&x) - 200.0 * 3f64.log2()).abs() < 1e-9);
    }

    #[test]
    fn z2_profile_is_linear() {
        let p = growth_profile(&group("cyclic:2"), 4, &ClosureOptions::default());
        assert!(p.verdict.consistent);
        for r in &p.reports {
            assert_eq!(r.exact, Some(BigUint::from(1u64 << r.d)));
            assert_eq!(r.omega_log2, Some(r.d as f64));
        }
        assert!(p.verdict.statement.contains("consistent at tested d"));
    }

    #[test]
    fn q8_sandwich() {
        let r = omega_report(&group("quaternion:8"), 2, &ClosureOptions::default());
        let exact = r.exact.clone().unwrap();
        assert!(BigUint::from(32u32) <= exact && exact <= BigUint::from(64u32));
        assert_eq!(r.lower, BigUint::from(32u32));
        assert_eq!(r.upper, Some(BigUint::from(64u32)));
    }

    #[test]
    fn s3_non_nilpotent_branch() {
        let p = growth_profile(&group("symmetric:3"), 2, &ClosureOptions::default());
        assert!(!p.nilpotent);
        assert!(p.verdict.consistent);
        assert!(p.verdict.statement.starts_with("not nilpotent"));
        let r2 = &p.reports[2];
        assert!(r2.exact.as_ref().unwrap() >= &BigUint::from(108u32));
        assert_eq!(r2.upper, None);
    }

    #[test]
    fn capped_arity_is_partially_decided() {
        let opts = ClosureOptions {
            closure_cap: 500,
            ..ClosureOptions::default()
        };
        let r = omega_report(&group("symmetric:3"), 3, &opts);
        assert!(r.cap_hit);
        assert_eq!(r.exact, None);
        let check = ArityCheck::from_report(&r);
        // 501 >= 2^7
        assert_eq!(check.binomial_bound, Some(true));
        assert_eq!(check.exact_le_upper, None);
    }

    #[test]
    fn q8_profile_has_upper_bounds() {
        let p = growth_profile(&group("quaternion:8"), 2, &ClosureOptions::default());
        assert_eq!(p.class, Some(2));
        assert_eq!(p.reports[2].upper, Some(BigUint::from(64u32)));
        assert!(p
            .verdict
            .checks
            .iter()
            .all(|c| c.exact_le_upper == Some(true)));
    }
}
