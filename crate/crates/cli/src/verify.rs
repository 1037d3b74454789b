//! The property suite behind `wordmaps verify`. Every check is deterministic
//! given its parameters and seed.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use wordmaps_core::group::{
    builtin_library, nilpotency_class, parse_builtin, ExpProfile, FiniteGroup, GroupOptions,
    UnitriangularMatrices,
};
use wordmaps_core::nilpotent::{
    count_formal_commutators, evaluate_normal_form_in, formal_commutator_polynomial, hall_basis,
    normal_form_to_word, witt_count, Collector, NormalForm,
};
use wordmaps_core::omega::{
    abelian_omega, log2_biguint, omega_exact, omega_lower, omega_upper_nilpotent, ClosureOptions,
    OmegaError,
};
use wordmaps_core::word::Word;

use crate::commands::admissible_report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, result: Result<String, String>) -> Self {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
}

/// Parameters of the suite; the defaults are the acceptance sizes.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub seed: u64,
    pub workers: usize,
    pub closure_cap: u64,
    pub random_words: usize,
    pub tuples_per_word: usize,
    pub round_trips: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            workers: 4,
            closure_cap: 1_000_000,
            random_words: 200,
            tuples_per_word: 50,
            round_trips: 100,
        }
    }
}

fn builtin(spec: &str) -> Result<FiniteGroup, String> {
    parse_builtin(spec, &GroupOptions::default()).map_err(|e| e.to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn closure(cap: u64, workers: usize) -> ClosureOptions {
    ClosureOptions {
        closure_cap: cap,
        workers,
        ..ClosureOptions::default()
    }
}

pub fn abelian_exactness(workers: usize) -> Check {
    let run = || -> Result<String, String> {
        let mut n = 0;
        for spec in ["cyclic:2", "cyclic:3", "cyclic:6", "cyclic:2xcyclic:4"] {
            let g = builtin(spec)?;
            for d in 0..=3 {
                let exact =
                    omega_exact(&g, d, &closure(1_000_000, workers)).map_err(|e| e.to_string())?;
                let oracle = BigUint::from(g.exponent()).pow(d as u32);
                ensure(BigUint::from(exact) == oracle, || {
                    format!("{spec} d={d}: {exact} != {oracle}")
                })?;
                ensure(abelian_omega(&g, d).ok() == Some(oracle.clone()), || {
                    format!("{spec} d={d}: abelian_omega")
                })?;
                n += 1;
            }
        }
        Ok(format!("{n} (group, d) pairs equal exp(G)^d"))
    };
    Check::new("abelian_exactness", run())
}

pub fn admissible_distinctness(expected: &[(&str, usize, u64)]) -> Check {
    let run = || -> Result<String, String> {
        let mut parts = Vec::new();
        for &(spec, d, count) in expected {
            let g = builtin(spec)?;
            let r = admissible_report(&g, d, 10_000_000, 10_000_000).map_err(|e| e.to_string())?;
            let lower = omega_lower(&g, d);
            ensure(
                r.count == lower.to_string() && lower == BigUint::from(count),
                || {
                    format!(
                        "{spec} d={d}: {} admissible functions, expected {count}",
                        r.count
                    )
                },
            )?;
            ensure(r.all_distinct == Some(true), || {
                format!("{spec} d={d}: tables not pairwise distinct")
            })?;
            ensure(
                r.witness_scope.as_deref() == Some("all") && r.witness_failures == 0,
                || format!("{spec} d={d}: {} witness failures", r.witness_failures),
            )?;
            parts.push(format!(
                "{spec} d={d}: {count} distinct, {} witnessed pairs",
                r.pairs_checked
            ));
        }
        Ok(parts.join("; "))
    };
    Check::new("admissible_distinctness", run())
}

pub fn sandwich(closure_cap: u64, workers: usize) -> Check {
    let run = || -> Result<String, String> {
        let opts = closure(closure_cap, workers);
        let s3 = builtin("symmetric:3")?;
        let lower = omega_lower(&s3, 2);
        ensure(lower == BigUint::from(108u32), || {
            format!("omega_lower(S3, 2) = {lower}")
        })?;
        let exact = omega_exact(&s3, 2, &opts).map_err(|e| e.to_string())?;
        ensure(lower <= BigUint::from(exact), || {
            format!("S3: {lower} > {exact}")
        })?;

        let q8 = builtin("quaternion:8")?;
        let lower_q = omega_lower(&q8, 2);
        let upper_q = omega_upper_nilpotent(&q8, 2)
            .map_err(|e| e.to_string())?
            .hall;
        let exact_q = BigUint::from(omega_exact(&q8, 2, &opts).map_err(|e| e.to_string())?);
        ensure(
            lower_q == BigUint::from(32u32) && upper_q == BigUint::from(64u32),
            || format!("Q8 bounds {lower_q}, {upper_q}"),
        )?;
        ensure(lower_q <= exact_q && exact_q <= upper_q, || {
            format!("Q8: {lower_q} <= {exact_q} <= {upper_q} fails")
        })?;
        Ok(format!(
            "108 <= Omega_2(S3) = {exact}; 32 <= Omega_2(Q8) = {exact_q} <= 64"
        ))
    };
    Check::new("sandwich", run())
}

pub fn non_nilpotent_growth(partial_cap: u64, workers: usize) -> Check {
    let run = || -> Result<String, String> {
        let s3 = builtin("symmetric:3")?;
        let mut parts = Vec::new();
        for d in 1..=2usize {
            let exact =
                omega_exact(&s3, d, &closure(1_000_000, workers)).map_err(|e| e.to_string())?;
            let bits = log2_biguint(&BigUint::from(exact));
            let need = ((1u64 << d) - 1) as f64;
            ensure(bits >= need, || format!("d={d}: log2 {exact} < {need}"))?;
            parts.push(format!("d={d}: log2 {exact} = {bits:.6} >= {need}"));
        }
        let (count, how) = match omega_exact(&s3, 3, &closure(partial_cap, workers)) {
            Ok(x) => (x, "exact"),
            Err(OmegaError::ClosureCapExceeded { partial, .. }) => (partial, "partial"),
            Err(e) => return Err(e.to_string()),
        };
        ensure(count > 1 << 7, || {
            format!("d=3: {how} count {count} <= 2^7")
        })?;
        parts.push(format!("d=3: {how} count {count} > 2^7"));
        Ok(parts.join("; "))
    };
    Check::new("non_nilpotent_growth", run())
}

/// `k`-th differences of `d -> P_c(d)` over `d = start..`.
fn differences(c: usize, start: usize, len: usize, k: usize) -> Vec<BigInt> {
    let mut row: Vec<BigInt> = (start..start + len)
        .map(|d| BigInt::from(formal_commutator_polynomial(d, c)))
        .collect();
    for _ in 0..k {
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    row
}

pub fn formal_commutator_degree() -> Check {
    let run = || -> Result<String, String> {
        for d in 0..=4 {
            for c in 0..=5 {
                let count =
                    count_formal_commutators(d, c, 10_000_000).map_err(|e| e.to_string())?;
                ensure(BigUint::from(count.enumerated) == count.closed_form, || {
                    format!("d={d} c={c}")
                })?;
            }
        }
        for c in 1..=5 {
            let top = differences(c, 0, c + 4, c);
            ensure(
                top.iter().all(|x| *x == top[0]) && top[0] > BigInt::from(0),
                || format!("c={c}: c-th difference not a positive constant: {top:?}"),
            )?;
            let next = differences(c, 0, c + 4, c + 1);
            ensure(next.iter().all(|x| *x == BigInt::from(0)), || {
                format!("c={c}: (c+1)-th difference {next:?}")
            })?;
        }
        Ok("enumeration equals closed form for d <= 4, c <= 5; degree exactly c for c <= 5".into())
    };
    Check::new("formal_commutator_degree", run())
}

pub fn hall_basis_sizes() -> Check {
    let run = || -> Result<String, String> {
        for d in 1..=3 {
            for c in 1..=4 {
                let basis = hall_basis(d, c, 10_000_000).map_err(|e| e.to_string())?;
                for (w, &n) in basis.weight_counts().iter().enumerate() {
                    let witt = witt_count(d, w + 1);
                    ensure(BigUint::from(n) == witt, || {
                        format!("d={d} w={}: {n} != {witt}", w + 1)
                    })?;
                }
                let p = formal_commutator_polynomial(d, c);
                ensure(BigUint::from(basis.len()) <= p, || {
                    format!("N_({d},{c}) = {} > {p}", basis.len())
                })?;
            }
        }
        let n22 = hall_basis(2, 2, 100).map_err(|e| e.to_string())?.len();
        let n23 = hall_basis(2, 3, 100).map_err(|e| e.to_string())?.len();
        ensure((n22, n23) == (3, 5), || {
            format!("N_(2,2) = {n22}, N_(2,3) = {n23}")
        })?;
        Ok("weight counts equal Witt numbers and N <= P for d <= 3, c <= 4".into())
    };
    Check::new("hall_basis_sizes", run())
}

/// Tuples per (word, prime) on which the expanded normal-form word is also
/// evaluated syllable by syllable.
pub const LITERAL_TUPLES: usize = 5;

fn random_word(rng: &mut ChaCha8Rng, d: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let raw: Vec<(usize, i64)> = (0..len)
        .map(|_| {
            let e = rng.gen_range(1..=5i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
            (rng.gen_range(1..=d), e)
        })
        .collect();
    Word::reduce(d, raw).expect("variables in range")
}

fn random_matrix(rng: &mut ChaCha8Rng, ut: &UnitriangularMatrices) -> Vec<u32> {
    let entries: Vec<u32> = (0..ut.free_entries())
        .map(|_| rng.gen_range(0..ut.prime() as u32))
        .collect();
    ut.from_entries(&entries)
}

pub fn normal_form_soundness(options: &SuiteOptions) -> Check {
    let run = || -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let mut collectors: BTreeMap<(usize, usize), Collector> = BTreeMap::new();
        let mut collector = |d: usize, c: usize| -> Result<Collector, String> {
            if let Some(col) = collectors.get(&(d, c)) {
                return Ok(col.clone());
            }
            let col = Collector::new(d, c).map_err(|e| e.to_string())?;
            collectors.insert((d, c), col.clone());
            Ok(col)
        };
        let mut evaluations = 0u64;
        for i in 0..options.random_words {
            let d = rng.gen_range(1..=3);
            let c = rng.gen_range(1..=3);
            let w = random_word(&mut rng, d, 30);
            let col = collector(d, c)?;
            let nf = col.normal_form(&w).map_err(|e| e.to_string())?;
            let nw = normal_form_to_word(&nf).map_err(|e| e.to_string())?;
            for p in [2u64, 3, 5] {
                let ut = UnitriangularMatrices::new(c + 1, p).map_err(|e| e.to_string())?;
                for t in 0..options.tuples_per_word {
                    let args: Vec<Vec<u32>> =
                        (0..d).map(|_| random_matrix(&mut rng, &ut)).collect();
                    let value = w.evaluate_in(&ut, &args);
                    let structural =
                        evaluate_normal_form_in(&nf, &ut, &args).map_err(|e| e.to_string())?;
                    let literal_ok = t >= LITERAL_TUPLES || nw.evaluate_in(&ut, &args) == value;
                    ensure(value == structural && literal_ok, || {
                        format!("word #{i} `{w}` (d={d}, c={c}) differs from its normal form in UT({}, {p})", c + 1)
                    })?;
                    evaluations += 1;
                }
            }
        }
        for i in 0..options.round_trips {
            let d = rng.gen_range(1..=3);
            let c = rng.gen_range(1..=3);
            let col = collector(d, c)?;
            let exps: Vec<BigInt> = (0..col.basis().len())
                .map(|_| BigInt::from(rng.gen_range(-20i64..=20)))
                .collect();
            let nf = NormalForm::new(col.basis().clone(), exps).map_err(|e| e.to_string())?;
            let w = normal_form_to_word(&nf).map_err(|e| e.to_string())?;
            let again = col.normal_form(&w).map_err(|e| e.to_string())?;
            ensure(again == nf, || {
                format!("round trip #{i} (d={d}, c={c}) changed the exponents")
            })?;
            let twice = col
                .normal_form(&normal_form_to_word(&again).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(twice == again, || {
                format!("round trip #{i} is not idempotent")
            })?;
        }
        Ok(format!(
            "{} words agree with their normal forms on {evaluations} matrix tuples ({} with the expanded word); {} round trips",
            options.random_words,
            options.random_words * 3 * LITERAL_TUPLES.min(options.tuples_per_word),
            options.round_trips
        ))
    };
    Check::new("normal_form_soundness", run())
}

pub fn exp_profile_laws() -> Check {
    let run = || -> Result<String, String> {
        let specs = builtin_library();
        for spec in &specs {
            let g = spec
                .build(&GroupOptions::default())
                .map_err(|e| e.to_string())?;
            let nil = nilpotency_class(&g);
            let r_max = nil.class.unwrap_or(4) + 2;
            let p = ExpProfile::compute(&g, r_max);
            ensure(p.get(1) == g.exponent(), || {
                format!("{spec}: exp_1 = {} != exp(G) = {}", p.get(1), g.exponent())
            })?;
            for r in 1..r_max {
                ensure(p.get(r) % p.get(r + 1) == 0, || {
                    format!("{spec}: exp_{} does not divide exp_{r}", r + 1)
                })?;
            }
            if let Some(c) = nil.class.filter(|&c| c > 0) {
                ensure(p.get(c) >= 2 && p.get(c + 1) == 1, || {
                    format!("{spec}: class {c} but profile {:?}", p.values)
                })?;
            }
        }
        Ok(format!("{} builtin groups", specs.len()))
    };
    Check::new("exp_profile_laws", run())
}

pub fn worker_determinism(workers: usize) -> Check {
    let run = || -> Result<String, String> {
        let cases = [
            ("symmetric:3", 2, 1_000_000),
            ("quaternion:8", 2, 1_000_000),
            ("dihedral:4", 2, 1_000_000),
            ("symmetric:3", 3, 20_000),
        ];
        let mut parts = Vec::new();
        for (spec, d, cap) in cases {
            let g = builtin(spec)?;
            let one = omega_exact(&g, d, &closure(cap, 1));
            let many = omega_exact(&g, d, &closure(cap, workers.max(2)));
            ensure(one == many, || format!("{spec} d={d}: {one:?} vs {many:?}"))?;
            parts.push(match one {
                Ok(x) => format!("{spec} d={d}: {x}"),
                Err(e) => format!("{spec} d={d}: {e}"),
            });
        }
        Ok(parts.join("; "))
    };
    Check::new("worker_determinism", run())
}

pub fn run_suite(options: &SuiteOptions) -> VerifyReport {
    let checks = vec![
        abelian_exactness(options.workers),
        admissible_distinctness(&[("symmetric:3", 2, 108), ("quaternion:8", 2, 32)]),
        sandwich(options.closure_cap, options.workers),
        non_nilpotent_growth(100_000.min(options.closure_cap), options.workers),
        formal_commutator_degree(),
        hall_basis_sizes(),
        normal_form_soundness(options),
        exp_profile_laws(),
        worker_determinism(options.workers),
    ];
    VerifyReport {
        seed: options.seed,
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}
