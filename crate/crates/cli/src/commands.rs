use std::collections::HashSet;
use std::str::FromStr;

use num_traits::ToPrimitive;

use serde::{Deserialize, Serialize};
use wordmaps_core::group::{lower_central_series, nilpotency_class, ExpProfile, FiniteGroup};
use wordmaps_core::nilpotent::{
    enumerate_formal_commutators, formal_commutator_polynomial, hall_basis, normal_form_to_word,
    Collector, NilpotentError,
};
use wordmaps_core::omega::{
    growth_profile, log2_lower_binomial, omega_exact, omega_lower, omega_upper_nilpotent,
    ClosureOptions, GrowthProfile, OmegaError,
};
use wordmaps_core::word::{
    admissible_count, build_admissible_word, distinctness_witness, enumerate_admissible,
    parse_word, parse_word_with_arity, word_map_table, WordError,
};

use crate::error::CliError;
use crate::output::{cell, joined, to_csv, to_json};
use crate::{CommandConfig, Format, Mode};

/// Rendered command output plus any invariant failure found while producing it.
pub struct Output {
    pub text: String,
    pub violation: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            violation: None,
        }
    }
}

fn label(g: &FiniteGroup) -> String {
    g.label().unwrap_or("G").to_string()
}

fn require<T: Copy>(value: Option<T>, flag: &str, command: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{command} needs --{flag}")))
}

fn no_text(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Text {
        return Err(CliError::Usage(format!(
            "{command} supports --format json|csv"
        )));
    }
    Ok(())
}

fn closure_options(config: &CommandConfig) -> ClosureOptions {
    ClosureOptions {
        table_cap: config.table_cap,
        closure_cap: config.closure_cap,
        workers: config.workers,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub group: String,
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub nilpotent: bool,
    pub class: Option<usize>,
    /// Orders of `gamma_1, gamma_2, ...` until the series stabilises.
    pub lower_central_series: Vec<usize>,
    pub exp_profile: Vec<u64>,
}

pub fn classify(g: &FiniteGroup, config: &CommandConfig) -> Result<Output, CliError> {
    no_text(config.format, "classify")?;
    let nil = nilpotency_class(g);
    let r_max = config.d_max.unwrap_or(6).max(1);
    let report = ClassifyReport {
        group: label(g),
        order: g.order(),
        abelian: g.is_abelian(),
        exponent: g.exponent(),
        nilpotent: nil.nilpotent,
        class: nil.class,
        lower_central_series: lower_central_series(g).iter().map(|s| s.order()).collect(),
        exp_profile: ExpProfile::compute(g, r_max).values,
    };
    Ok(Output::ok(match config.format {
        Format::Csv => to_csv(
            &[
                "group",
                "order",
                "abelian",
                "exponent",
                "nilpotent",
                "class",
                "lower_central_series",
                "exp_profile",
            ],
            &[vec![
                report.group.clone(),
                report.order.to_string(),
                report.abelian.to_string(),
                report.exponent.to_string(),
                report.nilpotent.to_string(),
                cell(report.class),
                joined(&report.lower_central_series),
                joined(&report.exp_profile),
            ]],
        )?,
        _ => to_json(&report)?,
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub group: String,
    pub d: usize,
    pub exact: Option<String>,
    pub omega_log2: Option<f64>,
    pub cap_hit: bool,
    pub closure_partial: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerReport {
    pub group: String,
    pub d: usize,
    pub exp_profile: Vec<u64>,
    pub lower: String,
    pub log2_lower_binomial: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperReport {
    pub group: String,
    pub d: usize,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub basis_size: Option<usize>,
    pub upper: Option<String>,
    pub formal_count: Option<String>,
    pub upper_formal: Option<String>,
}

pub fn omega(g: &FiniteGroup, config: &CommandConfig) -> Result<Output, CliError> {
    no_text(config.format, "omega")?;
    let csv = config.format == Format::Csv;
    let text = match config.mode {
        Mode::Exact => {
            let d = require(config.d, "d", "omega")?;
            let (exact, closure_partial) = match omega_exact(g, d, &closure_options(config)) {
                Ok(x) => (Some(x), None),
                Err(OmegaError::ClosureCapExceeded { partial, .. }) => (None, Some(partial)),
                Err(OmegaError::TableCapExceeded { .. }) => (None, None),
                Err(e) => return Err(e.into()),
            };
            let r = ExactReport {
                group: label(g),
                d,
                exact: exact.map(|x| x.to_string()),
                omega_log2: exact.map(|x| ((x as f64).log2() * 1e6).round() / 1e6),
                cap_hit: exact.is_none(),
                closure_partial,
            };
            if csv {
                to_csv(
                    &[
                        "group",
                        "d",
                        "exact",
                        "omega_log2",
                        "cap_hit",
                        "closure_partial",
                    ],
                    &[vec![
                        r.group.clone(),
                        d.to_string(),
                        cell(r.exact.clone()),
                        cell(r.omega_log2),
                        r.cap_hit.to_string(),
                        cell(r.closure_partial),
                    ]],
                )?
            } else {
                to_json(&r)?
            }
        }
        Mode::Lower => {
            let d = require(config.d, "d", "omega")?;
            let r = LowerReport {
                group: label(g),
                d,
                exp_profile: ExpProfile::compute(g, d.max(1)).values,
                lower: omega_lower(g, d).to_string(),
                log2_lower_binomial: log2_lower_binomial(g, d).to_string(),
            };
            if csv {
                to_csv(
                    &["group", "d", "exp_profile", "lower", "log2_lower_binomial"],
                    &[vec![
                        r.group.clone(),
                        d.to_string(),
                        joined(&r.exp_profile),
                        r.lower.clone(),
                        r.log2_lower_binomial.clone(),
                    ]],
                )?
            } else {
                to_json(&r)?
            }
        }
        Mode::Upper => {
            let d = require(config.d, "d", "omega")?;
            let nil = nilpotency_class(g);
            let bounds = match omega_upper_nilpotent(g, d) {
                Ok(b) => Some(b),
                Err(OmegaError::NotNilpotent) => None,
                Err(e) => return Err(e.into()),
            };
            let r = UpperReport {
                group: label(g),
                d,
                nilpotent: nil.nilpotent,
                class: nil.class,
                basis_size: bounds.as_ref().map(|b| b.basis_size),
                upper: bounds.as_ref().map(|b| b.hall.to_string()),
                formal_count: bounds.as_ref().map(|b| b.formal_count.to_string()),
                upper_formal: bounds.as_ref().map(|b| b.formal.to_string()),
            };
            if csv {
                to_csv(
                    &[
                        "group",
                        "d",
                        "nilpotent",
                        "class",
                        "basis_size",
                        "upper",
                        "formal_count",
                        "upper_formal",
                    ],
                    &[vec![
                        r.group.clone(),
                        d.to_string(),
                        r.nilpotent.to_string(),
                        cell(r.class),
                        cell(r.basis_size),
                        cell(r.upper.clone()),
                        cell(r.formal_count.clone()),
                        cell(r.upper_formal.clone()),
                    ]],
                )?
            } else {
                to_json(&r)?
            }
        }
        Mode::Profile => {
            let d_max = config
                .d_max
                .or(config.d)
                .ok_or_else(|| CliError::Usage("omega --mode profile needs --d-max".into()))?;
            let p = growth_profile(g, d_max, &closure_options(config));
            if csv {
                profile_csv(&p)?
            } else {
                to_json(&p)?
            }
        }
    };
    Ok(Output::ok(text))
}

fn profile_csv(p: &GrowthProfile) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = p
        .reports
        .iter()
        .map(|r| {
            vec![
                r.group.clone(),
                r.d.to_string(),
                cell(r.exact.as_ref()),
                cell(r.omega_log2),
                r.cap_hit.to_string(),
                cell(r.closure_partial),
                r.lower.to_string(),
                r.log2_lower_binomial.to_string(),
                cell(r.upper.as_ref()),
                cell(r.upper_formal.as_ref()),
                r.trivial_upper_log2.to_string(),
            ]
        })
        .collect();
    to_csv(
        &[
            "group",
            "d",
            "exact",
            "omega_log2",
            "cap_hit",
            "closure_partial",
            "lower",
            "log2_lower_binomial",
            "upper",
            "upper_formal",
            "trivial_upper_log2",
        ],
        &rows,
    )
}

/// Above this many admissible functions only consecutive pairs get witnesses.
pub const ALL_PAIRS_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleReport {
    pub group: String,
    pub d: usize,
    pub exp_profile: Vec<u64>,
    pub count: String,
    pub cap_hit: bool,
    pub enumerated: Option<u64>,
    pub distinct_tables: Option<u64>,
    pub all_distinct: Option<bool>,
    /// `all` or `consecutive`.
    pub witness_scope: Option<String>,
    pub pairs_checked: u64,
    pub witness_failures: u64,
}

/// Enumerates every admissible function, tabulates its word map and checks
/// that the tables are pairwise distinct, with a verified witness per pair.
pub fn admissible_report(
    g: &FiniteGroup,
    d: usize,
    enumeration_cap: u64,
    table_cap: usize,
) -> Result<AdmissibleReport, CliError> {
    let count = admissible_count(g, d);
    let mut report = AdmissibleReport {
        group: label(g),
        d,
        exp_profile: ExpProfile::compute(g, d.max(1)).values,
        count: count.to_string(),
        cap_hit: false,
        enumerated: None,
        distinct_tables: None,
        all_distinct: None,
        witness_scope: None,
        pairs_checked: 0,
        witness_failures: 0,
    };
    let functions: Vec<_> = match enumerate_admissible(g, d, enumeration_cap) {
        Ok(it) => it.collect(),
        Err(WordError::EnumerationCapExceeded { .. }) => {
            report.cap_hit = true;
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let mut tables = Vec::with_capacity(functions.len());
    for f in &functions {
        match word_map_table(&build_admissible_word(f), g, d, table_cap) {
            Ok(t) => tables.push(t),
            Err(WordError::TableCapExceeded { .. }) => {
                report.cap_hit = true;
                report.enumerated = Some(functions.len() as u64);
                return Ok(report);
            }
            Err(e) => return Err(e.into()),
        }
    }
    let distinct: HashSet<&[u32]> = tables.iter().map(|t| t.values()).collect();
    report.enumerated = Some(functions.len() as u64);
    report.distinct_tables = Some(distinct.len() as u64);
    report.all_distinct = Some(distinct.len() == functions.len());

    let n = functions.len();
    let pairs: Vec<(usize, usize)> = if n <= ALL_PAIRS_LIMIT {
        report.witness_scope = Some("all".into());
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect()
    } else {
        report.witness_scope = Some("consecutive".into());
        (1..n).map(|i| (i - 1, i)).collect()
    };
    for (i, j) in pairs {
        report.pairs_checked += 1;
        let separated = match distinctness_witness(&functions[i], &functions[j], g) {
            Ok(args) => tables[i].get(&args) != tables[j].get(&args),
            Err(_) => false,
        };
        if !separated {
            report.witness_failures += 1;
        }
    }
    Ok(report)
}

pub fn admissible(g: &FiniteGroup, config: &CommandConfig) -> Result<Output, CliError> {
    no_text(config.format, "admissible")?;
    let d = require(config.d, "d", "admissible")?;
    let r = admissible_report(g, d, config.closure_cap, config.table_cap)?;
    let violation = if r.all_distinct == Some(false) || r.witness_failures > 0 {
        Some(format!(
            "{} distinct tables for {} admissible functions, {} witness failures",
            cell(r.distinct_tables),
            cell(r.enumerated),
            r.witness_failures
        ))
    } else {
        None
    };
    let text = if config.format == Format::Csv {
        to_csv(
            &[
                "group",
                "d",
                "exp_profile",
                "count",
                "cap_hit",
                "enumerated",
                "distinct_tables",
                "all_distinct",
                "witness_scope",
                "pairs_checked",
                "witness_failures",
            ],
            &[vec![
                r.group.clone(),
                d.to_string(),
                joined(&r.exp_profile),
                r.count.clone(),
                r.cap_hit.to_string(),
                cell(r.enumerated),
                cell(r.distinct_tables),
                cell(r.all_distinct),
                cell(r.witness_scope.clone()),
                r.pairs_checked.to_string(),
                r.witness_failures.to_string(),
            ]],
        )?
    } else {
        to_json(&r)?
    };
    Ok(Output { text, violation })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub index: usize,
    pub weight: usize,
    pub tree: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HallBasisReport {
    pub d: usize,
    pub class: usize,
    pub size: usize,
    pub weight_counts: Vec<usize>,
    pub entries: Vec<BasisEntry>,
}

pub fn hall_basis_command(config: &CommandConfig) -> Result<Output, CliError> {
    let d = require(config.d, "d", "hall-basis")?;
    let c = require(config.class, "class", "hall-basis")?;
    let basis = hall_basis(d, c, config.closure_cap)?;
    if config.format == Format::Text {
        return Ok(Output::ok(basis.dump()));
    }
    let entries: Vec<BasisEntry> = basis
        .entries()
        .iter()
        .enumerate()
        .map(|(j, e)| BasisEntry {
            index: j + 1,
            weight: e.weight,
            tree: e.tree.to_string(),
        })
        .collect();
    Ok(Output::ok(if config.format == Format::Csv {
        let rows: Vec<Vec<String>> = entries
            .iter()
            .map(|e| vec![e.index.to_string(), e.weight.to_string(), e.tree.clone()])
            .collect();
        to_csv(&["index", "weight", "tree"], &rows)?
    } else {
        to_json(&HallBasisReport {
            d,
            class: c,
            size: basis.len(),
            weight_counts: basis.weight_counts(),
            entries,
        })?
    }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorCountRow {
    pub d: usize,
    pub c: usize,
    pub closed_form: String,
    pub enumerated: Option<u64>,
    pub hall_size: Option<usize>,
    pub cap_hit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorCountReport {
    pub rows: Vec<CommutatorCountRow>,
}

pub fn count_commutators(config: &CommandConfig) -> Result<Output, CliError> {
    no_text(config.format, "count-commutators")?;
    let d_max = require(config.d, "d", "count-commutators")?;
    let c_max = require(config.class, "class", "count-commutators")?;
    let cap = config.closure_cap;
    let mut rows = Vec::new();
    let mut violation = None;
    for d in 1..=d_max {
        for c in 1..=c_max {
            let closed_form = formal_commutator_polynomial(d, c);
            let enumerated = match enumerate_formal_commutators(d, c, cap) {
                Ok(all) => Some(all.len() as u64),
                Err(NilpotentError::EnumerationCapExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let hall_size = match hall_basis(d, c, cap) {
                Ok(b) => Some(b.len()),
                Err(NilpotentError::EnumerationCapExceeded { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            if let Some(e) = enumerated {
                if num_bigint::BigUint::from(e) != closed_form {
                    violation = Some(format!(
                        "d={d} c={c}: enumerated {e}, closed form {closed_form}"
                    ));
                }
            }
            rows.push(CommutatorCountRow {
                d,
                c,
                closed_form: closed_form.to_string(),
                cap_hit: enumerated.is_none() || hall_size.is_none(),
                enumerated,
                hall_size,
            });
        }
    }
    let text = if config.format == Format::Csv {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    r.d.to_string(),
                    r.c.to_string(),
                    r.closed_form.clone(),
                    cell(r.enumerated),
                    cell(r.hall_size),
                    r.cap_hit.to_string(),
                ]
            })
            .collect();
        to_csv(
            &[
                "d",
                "c",
                "closed_form",
                "enumerated",
                "hall_size",
                "cap_hit",
            ],
            &table,
        )?
    } else {
        to_json(&CommutatorCountReport { rows })?
    };
    Ok(Output { text, violation })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalFormReport {
    pub word: String,
    pub d: usize,
    pub class: usize,
    pub basis: Vec<String>,
    pub exponents: Vec<serde_json::Number>,
    /// Absent when the expanded word would exceed [`MAX_EXPANDED_SYLLABLES`].
    pub normal_form_word: Option<String>,
}

/// Longest normal-form word `normal-form` writes out and re-collects.
pub const MAX_EXPANDED_SYLLABLES: usize = 100_000;

pub fn normal_form_command(config: &CommandConfig) -> Result<Output, CliError> {
    no_text(config.format, "normal-form")?;
    let text = config
        .word
        .as_deref()
        .ok_or_else(|| CliError::Usage("normal-form needs --word".into()))?;
    let c = require(config.class, "class", "normal-form")?;
    let w = match config.d {
        Some(d) => parse_word_with_arity(text, d)?,
        None => parse_word(text)?,
    };
    let d = w.d();
    let collector = Collector::new(d, c)?;
    let nf = collector.normal_form(&w)?;
    let expanded_len = nf
        .basis()
        .entries()
        .iter()
        .zip(nf.exponents())
        .map(|(e, k)| {
            k.magnitude().to_f64().unwrap_or(f64::INFINITY)
                * e.tree.to_word(d).syllables().len() as f64
        })
        .sum::<f64>();
    let back = if expanded_len <= MAX_EXPANDED_SYLLABLES as f64 {
        let back = normal_form_to_word(&nf)?;
        if collector.normal_form(&back)? != nf {
            return Err(CliError::Invariant(
                "normal form word does not collect back to itself".into(),
            ));
        }
        Some(back)
    } else {
        None
    };
    let exponents = nf
        .exponents()
        .iter()
        .map(|e| {
            serde_json::Number::from_str(&e.to_string())
                .map_err(|e| CliError::Invariant(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let report = NormalFormReport {
        word: w.to_string(),
        d,
        class: c,
        basis: nf
            .basis()
            .entries()
            .iter()
            .map(|e| e.tree.to_string())
            .collect(),
        exponents,
        normal_form_word: back.map(|b| b.to_string()),
    };
    Ok(Output::ok(if config.format == Format::Csv {
        let rows: Vec<Vec<String>> = nf
            .basis()
            .entries()
            .iter()
            .zip(nf.exponents())
            .enumerate()
            .map(|(j, (e, k))| {
                vec![
                    (j + 1).to_string(),
                    e.weight.to_string(),
                    e.tree.to_string(),
                    k.to_string(),
                ]
            })
            .collect();
        to_csv(&["index", "weight", "tree", "exponent"], &rows)?
    } else {
        to_json(&report)?
    }))
}
