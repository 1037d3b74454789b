//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use wordmaps_cli::verify::{self, Check, SuiteOptions};
use wordmaps_core::group::{parse_builtin, GroupOptions};
use wordmaps_core::omega::{omega_exact, omega_lower, omega_upper_nilpotent, ClosureOptions};

/// Exact closure counts pinned from the first run of the closure.
const OMEGA_2_S3: u64 = 972;
const OMEGA_2_Q8: u64 = 32;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn pinned_constants() -> Check {
    let sandwich = verify::sandwich(1_000_000, 1);
    if !sandwich.passed {
        return sandwich;
    }
    let opts = ClosureOptions::default();
    let group = |s: &str| parse_builtin(s, &GroupOptions::default()).unwrap();
    let s3 = omega_exact(&group("symmetric:3"), 2, &opts);
    let q8 = group("quaternion:8");
    let q8_exact = omega_exact(&q8, 2, &opts);
    let ok = s3 == Ok(OMEGA_2_S3)
        && q8_exact == Ok(OMEGA_2_Q8)
        && omega_lower(&q8, 2) == BigUint::from(32u32)
        && omega_upper_nilpotent(&q8, 2).map(|u| u.hall) == Ok(BigUint::from(64u32));
    Check {
        name: sandwich.name,
        passed: ok,
        detail: format!(
            "{}; pinned Omega_2(S3) = {s3:?}, Omega_2(Q8) = {q8_exact:?}",
            sandwich.detail
        ),
    }
}

fn binary_determinism() -> Check {
    let verify_run = || {
        Command::new(env!("CARGO_BIN_EXE_wordmaps"))
            .args(["verify", "--seed", "7", "--workers", "4"])
            .output()
            .expect("spawn wordmaps")
    };
    let a = verify_run();
    let b = verify_run();
    let workers = verify::worker_determinism(4);
    let same =
        a.status.success() && b.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    Check {
        name: "determinism".into(),
        passed: same && workers.passed,
        detail: format!(
            "two `verify --seed 7` runs: {} bytes each, identical = {}; {}",
            a.stdout.len(),
            a.stdout == b.stdout,
            workers.detail
        ),
    }
}

fn criteria() -> Vec<Criterion> {
    vec![
        Criterion {
            id: 1,
            name: "abelian exactness",
            budget: Duration::from_secs(60),
            run: || verify::abelian_exactness(1),
        },
        Criterion {
            id: 2,
            name: "admissible word maps pairwise distinct",
            budget: Duration::from_secs(300),
            run: || {
                verify::admissible_distinctness(&[("symmetric:3", 2, 108), ("quaternion:8", 2, 32)])
            },
        },
        Criterion {
            id: 3,
            name: "lower bound and sandwich",
            budget: Duration::from_secs(300),
            run: pinned_constants,
        },
        Criterion {
            id: 4,
            name: "non-nilpotent growth at small d",
            budget: Duration::from_secs(300),
            run: || verify::non_nilpotent_growth(100_000, 1),
        },
        Criterion {
            id: 5,
            name: "formal commutator count",
            budget: Duration::from_secs(10),
            run: verify::formal_commutator_degree,
        },
        Criterion {
            id: 6,
            name: "Hall basis sizes",
            budget: Duration::from_secs(60),
            run: verify::hall_basis_sizes,
        },
        Criterion {
            id: 7,
            name: "normal form soundness",
            budget: Duration::from_secs(300),
            run: || verify::normal_form_soundness(&SuiteOptions::default()),
        },
        Criterion {
            id: 8,
            name: "exp profile laws",
            budget: Duration::from_secs(60),
            run: verify::exp_profile_laws,
        },
        Criterion {
            id: 9,
            name: "determinism",
            budget: Duration::from_secs(600),
            run: binary_determinism,
        },
    ]
}

fn main() -> ExitCode {
    let mut failures = 0;
    for c in criteria() {
        let start = Instant::now();
        let check = (c.run)();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= c.budget;
        let passed = check.passed && in_budget;
        if !passed {
            failures += 1;
        }
        println!(
            "{} {}. {} ({:.2}s, budget {}s): {}{}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            check.detail,
            if in_budget { "" } else { " [over budget]" }
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
