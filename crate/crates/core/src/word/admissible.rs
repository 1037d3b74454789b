//! Admissible functions `f` on the nonempty subsets of `{1, ..., d}` and the
//! associated products of nested commutators `w_f`.

use num_bigint::BigUint;
use num_traits::One;

use super::{Word, WordError};
use crate::group::{ExpProfile, FiniteGroup};

/// Default cap on the number of functions `enumerate_admissible` may yield.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1_000_000;

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Nonempty subsets of `{1, ..., d}` as sorted index lists, ordered by size
/// and then lexicographically.
pub fn subsets(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity((1usize << d).saturating_sub(1));
    for r in 1..=d {
        let mut comb: Vec<usize> = (1..=r).collect();
        loop {
            out.push(comb.clone());
            // next combination in lexicographic order
            let Some(i) = (0..r).rev().find(|&i| comb[i] < d - r + i + 1) else {
                break;
            };
            comb[i] += 1;
            for j in i + 1..r {
                comb[j] = comb[j - 1] + 1;
            }
        }
    }
    out
}

/// Position of a sorted subset in the order produced by [`subsets`].
pub fn subset_rank(d: usize, subset: &[usize]) -> usize {
    let r = subset.len();
    let offset: usize = (1..r).map(|s| binomial(d, s)).sum();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in subset.iter().enumerate() {
        for j in prev + 1..c {
            rank += binomial(d - j, r - i - 1);
        }
        prev = c;
    }
    offset + rank
}

/// A function from the nonempty subsets of `{1, ..., d}` to the non-negative
/// integers, stored in [`subsets`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleFunction {
    d: usize,
    values: Vec<u64>,
}

impl AdmissibleFunction {
    pub fn zero(d: usize) -> Self {
        AdmissibleFunction {
            d,
            values: vec![0; (1usize << d) - 1],
        }
    }

    pub fn from_fn(d: usize, mut f: impl FnMut(&[usize]) -> u64) -> Self {
        AdmissibleFunction {
            d,
            values: subsets(d).iter().map(|s| f(s)).collect(),
        }
    }

    /// Values in [`subsets`] order.
    pub fn from_values(d: usize, values: Vec<u64>) -> Self {
        assert_eq!(
            values.len(),
            (1usize << d) - 1,
            "one value per nonempty subset"
        );
        AdmissibleFunction { d, values }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `f(M)` for a sorted subset `M`.
    pub fn get(&self, subset: &[usize]) -> u64 {
        self.values[subset_rank(self.d, subset)]
    }

    pub fn set(&mut self, subset: &[usize], value: u64) {
        let i = subset_rank(self.d, subset);
        self.values[i] = value;
    }
}

/// Strict bound `f(M) < exp_|M|(G)` for every nonempty subset.
pub fn is_admissible(f: &AdmissibleFunction, g: &FiniteGroup) -> bool {
    let profile = ExpProfile::compute(g, f.d);
    subsets(f.d)
        .iter()
        .zip(&f.values)
        .all(|(s, &v)| v < profile.get(s.len()))
}

/// `w_f`: product over `r = 1..d`, then over `i_1 < ... < i_r` in
/// lexicographic order, of `[X_{i_1}, ..., X_{i_r}]^{f({i_1, ..., i_r})}`.
pub fn build_admissible_word(f: &AdmissibleFunction) -> Word {
    let mut w = Word::identity(f.d);
    for (subset, &k) in subsets(f.d).iter().zip(&f.values) {
        if k == 0 {
            continue;
        }
        let k = i64::try_from(k).expect("admissible exponent fits in i64");
        w = w.concat(&Word::nested_commutator(subset).power(k));
    }
    w
}

/// Number of `G`-admissible functions in arity `d`:
/// `prod_{r=1}^{d} exp_r(G)^{C(d, r)}`.
pub fn admissible_count(g: &FiniteGroup, d: usize) -> BigUint {
    let profile = ExpProfile::compute(g, d);
    (1..=d).fold(BigUint::one(), |acc, r| {
        acc * BigUint::from(profile.get(r)).pow(binomial(d, r) as u32)
    })
}

/// Odometer over all admissible functions, first subset fastest.
pub struct AdmissibleIter {
    d: usize,
    bounds: Vec<u64>,
    current: Option<Vec<u64>>,
}

impl Iterator for AdmissibleIter {
    type Item = AdmissibleFunction;

    fn next(&mut self) -> Option<AdmissibleFunction> {
        let current = self.current.as_mut()?;
        let item = AdmissibleFunction {
            d: self.d,
            values: current.clone(),
        };
        let mut carried_out = true;
        for (v, &b) in current.iter_mut().zip(&self.bounds) {
            *v += 1;
            if *v < b {
                carried_out = false;
                break;
            }
            *v = 0;
        }
        if carried_out {
            self.current = None;
        }
        Some(item)
    }
}

/// Streams every `G`-admissible function of arity `d` exactly once.
pub fn enumerate_admissible(
    g: &FiniteGroup,
    d: usize,
    cap: u64,
) -> Result<AdmissibleIter, WordError> {
    let count = admissible_count(g, d);
    if count > BigUint::from(cap) {
        return Err(WordError::EnumerationCapExceeded {
            count: count.to_string(),
            cap,
        });
    }
    let profile = ExpProfile::compute(g, d);
    let bounds: Vec<u64> = subsets(d).iter().map(|s| profile.get(s.len())).collect();
    Ok(AdmissibleIter {
        d,
        current: Some(vec![0; bounds.len()]),
        bounds,
    })
}

/// An argument tuple on which `w_f` and `w_g` take different values.
///
/// Follows the proof of distinctness: take the smallest `r` on which `f` and
/// `g` disagree, the lexicographically first such `r`-subset `{i_1 < ... < i_r}`,
/// elements with `[g_{i_1}, ..., g_{i_r}]^{f - g} != 1`, and the identity in
/// all other coordinates. The result is checked by evaluation.
pub fn distinctness_witness(
    f: &AdmissibleFunction,
    h: &AdmissibleFunction,
    g: &FiniteGroup,
) -> Result<Vec<usize>, WordError> {
    if f.d != h.d {
        return Err(WordError::ArityMismatch {
            word_d: h.d,
            d: f.d,
        });
    }
    if !is_admissible(f, g) || !is_admissible(h, g) {
        return Err(WordError::NotAdmissible);
    }
    let all = subsets(f.d);
    let pos = f
        .values
        .iter()
        .zip(&h.values)
        .position(|(a, b)| a != b)
        .ok_or(WordError::NotDistinct)?;
    let subset = &all[pos];
    let r = subset.len();
    let a = f.values[pos] as i64 - h.values[pos] as i64;

    // Value-set recursion, remembering one argument tuple per value.
    let n = g.order();
    let mut level: Vec<Option<Vec<usize>>> = (0..n).map(|x| Some(vec![x])).collect();
    for _ in 1..r {
        let mut next: Vec<Option<Vec<usize>>> = vec![None; n];
        for (s, tuple) in level.iter().enumerate() {
            let Some(tuple) = tuple else { continue };
            for x in 0..n {
                let v = g.commutator(s, x);
                if next[v].is_none() {
                    let mut t = tuple.clone();
                    t.push(x);
                    next[v] = Some(t);
                }
            }
        }
        level = next;
    }
    let chosen = level
        .iter()
        .enumerate()
        .find_map(|(s, t)| t.as_ref().filter(|_| g.pow(s, a) != 0))
        .ok_or_else(|| {
            WordError::InvariantViolation(format!("no {r}-fold commutator value s with s^{a} != 1"))
        })?;

    let mut args = vec![0usize; f.d];
    for (&i, &x) in subset.iter().zip(chosen) {
        args[i - 1] = x;
    }
    let wf = build_admissible_word(f);
    let wh = build_admissible_word(h);
    if wf.evaluate(g, &args) == wh.evaluate(g, &args) {
        return Err(WordError::InvariantViolation(format!(
            "constructed tuple {args:?} does not separate w_f and w_g"
        )));
    }
    Ok(args)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn group(spec: &str) -> FiniteGroup {
        parse_builtin(spec, &GroupOptions::default()).unwrap()
    }

    #[test]
    fn subset_order_and_rank() {
        let s = subsets(3);
        assert_eq!(
            s,
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
        for d in 0..7 {
            for (i, sub) in subsets(d).iter().enumerate() {
                assert_eq!(subset_rank(d, sub), i);
            }
        }
        assert!(subsets(0).is_empty());
    }

    #[test]
    fn admissibility() {
        let z2 = group("cyclic:2");
        assert!(is_admissible(
            &AdmissibleFunction::from_values(1, vec![1]),
            &z2
        ));
        assert!(!is_admissible(
            &AdmissibleFunction::from_values(1, vec![2]),
            &z2
        ));
        let s3 = group("symmetric:3");
        let f = AdmissibleFunction::from_values(2, vec![5, 0, 2]);
        assert!(is_admissible(&f, &s3));
        assert_eq!(f.get(&[1, 2]), 2);
        let f = AdmissibleFunction::from_values(2, vec![5, 0, 3]);
        assert!(!is_admissible(&f, &s3));
    }

    #[test]
    fn admissible_words() {
        let f = AdmissibleFunction::from_values(1, vec![4]);
        assert_eq!(build_admissible_word(&f).syllables(), &[(1, 4)]);
        let f = AdmissibleFunction::from_values(2, vec![2, 3, 1]);
        let expected = crate::word::parse_word("x1^2 x2^3 [x1, x2]").unwrap();
        assert_eq!(build_admissible_word(&f), expected);
        assert!(build_admissible_word(&AdmissibleFunction::zero(2)).is_identity());
    }

    #[test]
    fn enumeration_counts() {
        let z2 = group("cyclic:2");
        let all: Vec<_> = enumerate_admissible(&z2, 1, DEFAULT_ENUMERATION_CAP)
            .unwrap()
            .collect();
        assert_eq!(all.len(), 2);
        let s3 = group("symmetric:3");
        assert_eq!(
            enumerate_admissible(&s3, 2, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count(),
            108
        );
        let q8 = group("quaternion:8");
        assert_eq!(admissible_count(&q8, 2), BigUint::from(32u32));
        assert_eq!(
            enumerate_admissible(&q8, 2, DEFAULT_ENUMERATION_CAP)
                .unwrap()
                .count(),
            32
        );
        assert!(matches!(
            enumerate_admissible(&s3, 3, 1000),
            Err(WordError::EnumerationCapExceeded { .. })
        ));
        // d = 0: the single empty function
        assert_eq!(enumerate_admissible(&s3, 0, 10).unwrap().count(), 1);
    }

    #[test]
    fn witnesses() {
        let z2 = group("cyclic:2");
        let f = AdmissibleFunction::from_values(1, vec![0]);
        let h = AdmissibleFunction::from_values(1, vec![1]);
        assert_eq!(distinctness_witness(&f, &h, &z2).unwrap(), vec![1]);
        assert_eq!(
            distinctness_witness(&f, &f, &z2),
            Err(WordError::NotDistinct)
        );

        let s3 = group("symmetric:3");
        let f = AdmissibleFunction::from_values(2, vec![3, 1, 1]);
        let h = AdmissibleFunction::from_values(2, vec![3, 1, 0]);
        let w = distinctness_witness(&f, &h, &s3).unwrap();
        assert_ne!(s3.commutator(w[0], w[1]), 0);

        let q8 = group("quaternion:8");
        let f = AdmissibleFunction::from_values(2, vec![1, 2, 1]);
        let h = AdmissibleFunction::from_values(2, vec![3, 2, 1]);
        let w = distinctness_witness(&f, &h, &q8).unwrap();
        assert_eq!(q8.element_order(w[0]), 4);
        assert_eq!(w[1], 0);

        let bad = AdmissibleFunction::from_values(2, vec![4, 0, 0]);
        assert_eq!(
            distinctness_witness(&f, &bad, &q8),
            Err(WordError::NotAdmissible)
        );
    }
}
