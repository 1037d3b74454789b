//! Reduced words in the free group `F(X_1, ..., X_d)` and the word maps they
//! induce on finite groups.

mod admissible;
mod parse;

use std::fmt;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupOps};

pub use admissible::{
    admissible_count, build_admissible_word, distinctness_witness, enumerate_admissible,
    is_admissible, subset_rank, subsets, AdmissibleFunction, AdmissibleIter,
    DEFAULT_ENUMERATION_CAP,
};
pub use parse::{parse_word, parse_word_with_arity};

/// Default cap on the number of entries of a word-map table.
pub const DEFAULT_TABLE_CAP: usize = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("variable x{variable} out of range 1..={d}")]
    VariableOutOfRange { variable: usize, d: usize },
    #[error("exponent overflow while reducing")]
    ExponentOverflow,
    #[error("word has {word_d} variables but arity {d} was requested")]
    ArityMismatch { word_d: usize, d: usize },
    #[error("table of |G|^d = {order}^{d} entries exceeds cap {cap}")]
    TableCapExceeded { order: usize, d: usize, cap: usize },
    #[error("{count} admissible functions exceed enumeration cap {cap}")]
    EnumerationCapExceeded { count: String, cap: u64 },
    #[error("functions are equal; no distinctness witness exists")]
    NotDistinct,
    #[error("function is not admissible for this group")]
    NotAdmissible,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// A freely reduced word: a sequence of `(variable, exponent)` syllables with
/// variables in `1..=d`, nonzero exponents, and no two adjacent syllables on
/// the same variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    d: usize,
    syllables: Vec<(usize, i64)>,
}

impl Word {
    pub fn identity(d: usize) -> Word {
        Word {
            d,
            syllables: Vec::new(),
        }
    }

    /// The generator `X_v` in `F(X_1, ..., X_d)`.
    pub fn generator(d: usize, v: usize) -> Result<Word, WordError> {
        Word::reduce(d, [(v, 1)])
    }

    /// Freely reduces `raw`. Zero exponents are allowed and dropped.
    pub fn reduce(
        d: usize,
        raw: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Word, WordError> {
        let mut stack: Vec<(usize, i64)> = Vec::new();
        for (v, e) in raw {
            if v == 0 || v > d {
                return Err(WordError::VariableOutOfRange { variable: v, d });
            }
            if e == 0 {
                continue;
            }
            match stack.last_mut() {
                Some((top, te)) if *top == v => {
                    *te = te.checked_add(e).ok_or(WordError::ExponentOverflow)?;
                    if *te == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((v, e)),
            }
        }
        Ok(Word {
            d,
            syllables: stack,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Largest variable index actually used.
    pub fn max_variable(&self) -> usize {
        self.syllables.iter().map(|&(v, _)| v).max().unwrap_or(0)
    }

    /// Same word viewed in `F(X_1, ..., X_d)` for a larger `d`.
    pub fn with_arity(&self, d: usize) -> Result<Word, WordError> {
        if d < self.max_variable() {
            return Err(WordError::ArityMismatch {
                word_d: self.max_variable(),
                d,
            });
        }
        Ok(Word {
            d,
            syllables: self.syllables.clone(),
        })
    }

    /// Reduced `self * other`, in the larger of the two ambient ranks.
    pub fn concat(&self, other: &Word) -> Word {
        let d = self.d.max(other.d);
        let mut syllables = self.syllables.clone();
        for &(v, e) in &other.syllables {
            match syllables.last_mut() {
                Some((top, te)) if *top == v => {
                    *te = te.checked_add(e).expect("exponent overflow in concat");
                    if *te == 0 {
                        syllables.pop();
                    }
                }
                _ => syllables.push((v, e)),
            }
        }
        Word { d, syllables }
    }

    pub fn invert(&self) -> Word {
        Word {
            d: self.d,
            syllables: self.syllables.iter().rev().map(|&(v, e)| (v, -e)).collect(),
        }
    }

    /// `self^k` for any integer `k`.
    ///
    /// Writes the word as `u c u^-1` with `c` cyclically reduced, so only `c`
    /// is repeated; a one-syllable `c` has its exponent scaled instead.
    ///
    /// # Panics
    /// If a scaled exponent overflows `i64`.
    pub fn power(&self, k: i64) -> Word {
        let s = &self.syllables;
        if k == 0 || s.is_empty() {
            return Word::identity(self.d);
        }
        let (mut lo, mut hi) = (0, s.len());
        while hi - lo >= 2 && s[lo].0 == s[hi - 1].0 && s[lo].1 == -s[hi - 1].1 {
            lo += 1;
            hi -= 1;
        }
        let mut prefix = s[..lo].to_vec();
        let mut core = s[lo..hi].to_vec();
        if core.len() >= 2 && core[0].0 == core[core.len() - 1].0 {
            // x^a m x^b = x^a (m x^(a+b)) x^-a
            let (x, a) = core[0];
            let b = core.pop().expect("core has two syllables").1;
            core.remove(0);
            core.push((x, a + b));
            prefix.push((x, a));
        }
        let mut out = prefix.clone();
        if core.len() == 1 {
            let (v, e) = core[0];
            out.push((
                v,
                e.checked_mul(k).expect("exponent overflow in Word::power"),
            ));
        } else {
            let unit: Vec<(usize, i64)> = if k < 0 {
                core.iter().rev().map(|&(v, e)| (v, -e)).collect()
            } else {
                core
            };
            for _ in 0..k.unsigned_abs() {
                out.extend_from_slice(&unit);
            }
        }
        out.extend(prefix.iter().rev().map(|&(v, e)| (v, -e)));
        Word::reduce(self.d, out).expect("variables already in range")
    }

    /// `[u, v] = u^-1 v^-1 u v`, reduced.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.invert().concat(&v.invert()).concat(u).concat(v)
    }

    /// Left-nested commutator `[X_{i_1}, ..., X_{i_r}]`, in rank
    /// `max(i_1, ..., i_r)`.
    ///
    /// # Panics
    /// If `indices` is empty or contains 0.
    pub fn nested_commutator(indices: &[usize]) -> Word {
        assert!(!indices.is_empty(), "nested commutator of an empty list");
        let d = *indices.iter().max().unwrap();
        let mut acc = Word::generator(d, indices[0]).expect("variable index must be >= 1");
        for &i in &indices[1..] {
            acc = Word::commutator(
                &acc,
                &Word::generator(d, i).expect("variable index must be >= 1"),
            );
        }
        acc
    }

    /// Substitutes `args[v - 1]` for `X_v` in any group model.
    pub fn evaluate_in<G: GroupOps>(&self, group: &G, args: &[G::Elem]) -> G::Elem {
        assert!(
            args.len() >= self.max_variable(),
            "need at least {} arguments",
            self.max_variable()
        );
        self.syllables
            .iter()
            .fold(group.identity(), |acc, &(v, e)| {
                group.mul(&acc, &group.pow(&args[v - 1], e))
            })
    }

    /// Value of the word map `w_G` at `args` (element indices).
    pub fn evaluate(&self, group: &FiniteGroup, args: &[usize]) -> usize {
        self.evaluate_in(group, args)
    }
}

impl fmt::Display for Word {
    /// Parseable text form, e.g. `x1^2 x2^-1 x1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (i, &(v, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if e == 1 {
                write!(f, "x{v}")?;
            } else {
                write!(f, "x{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Mixed-radix index of `args`, `args[0]` least significant.
pub fn encode_args(order: usize, args: &[usize]) -> usize {
    args.iter().rev().fold(0, |acc, &g| acc * order + g)
}

pub fn decode_args(order: usize, d: usize, mut index: usize) -> Vec<usize> {
    let mut args = Vec::with_capacity(d);
    for _ in 0..d {
        args.push(index % order);
        index /= order;
    }
    args
}

/// `|G|^d` if it is within `cap`.
pub fn table_len(order: usize, d: usize, cap: usize) -> Result<usize, WordError> {
    let err = WordError::TableCapExceeded { order, d, cap };
    let len = order.checked_pow(d as u32).ok_or(err.clone())?;
    if len > cap {
        return Err(err);
    }
    Ok(len)
}

/// The function `G^d -> G` induced by a word, with argument tuples in
/// mixed-radix order (`g_1` least significant).
#[derive(Clone, Debug)]
pub struct WordMapTable<'g> {
    group: &'g FiniteGroup,
    d: usize,
    values: Vec<u32>,
}

impl PartialEq for WordMapTable<'_> {
    fn eq(&self, other: &Self) -> bool {
        (std::ptr::eq(self.group, other.group) || self.group == other.group)
            && self.d == other.d
            && self.values == other.values
    }
}

impl Eq for WordMapTable<'_> {}

impl<'g> WordMapTable<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, args: &[usize]) -> usize {
        self.values[encode_args(self.group.order(), args)] as usize
    }

    /// First argument tuple (in table order) where the two maps differ.
    pub fn first_difference(&self, other: &WordMapTable<'_>) -> Option<Vec<usize>> {
        let n = self.group.order();
        self.values
            .iter()
            .zip(&other.values)
            .position(|(a, b)| a != b)
            .map(|idx| decode_args(n, self.d, idx))
    }
}

/// Materializes `w_G` on all of `G^d`.
pub fn word_map_table<'g>(
    w: &Word,
    group: &'g FiniteGroup,
    d: usize,
    table_cap: usize,
) -> Result<WordMapTable<'g>, WordError> {
    if w.max_variable() > d {
        return Err(WordError::ArityMismatch {
            word_d: w.max_variable(),
            d,
        });
    }
    let n = group.order();
    let len = table_len(n, d, table_cap)?;
    let mut values = vec![0u32; len];
    let mut powers = vec![0u32; n];
    for &(v, e) in w.syllables() {
        for (g, p) in powers.iter_mut().enumerate() {
            *p = group.pow(g, e) as u32;
        }
        let stride = n.pow(v as u32 - 1);
        for block in values.chunks_mut(stride * n) {
            for (g, run) in block.chunks_mut(stride).enumerate() {
                for x in run.iter_mut() {
                    *x = group.mul(*x as usize, powers[g] as usize) as u32;
                }
            }
        }
    }
    Ok(WordMapTable { group, d, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn w(d: usize, raw: &[(usize, i64)]) -> Word {
        Word::reduce(d, raw.iter().copied()).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert!(w(1, &[(1, 1), (1, -1)]).is_identity());
        assert_eq!(w(1, &[(1, 2), (1, 3)]).syllables(), &[(1, 5)]);
        assert!(w(2, &[(1, 1), (2, 1), (2, -1), (1, -1)]).is_identity());
        assert_eq!(
            w(2, &[(1, 0), (2, 3), (1, 0), (2, -1)]).syllables(),
            &[(2, 2)]
        );
        assert_eq!(
            Word::reduce(2, [(3, 1)]),
            Err(WordError::VariableOutOfRange { variable: 3, d: 2 })
        );
        assert_eq!(
            Word::reduce(1, [(1, i64::MAX), (1, 1)]),
            Err(WordError::ExponentOverflow)
        );
    }

    #[test]
    fn concat_and_invert() {
        let x1 = Word::generator(2, 1).unwrap();
        let x2 = Word::generator(2, 2).unwrap();
        assert!(x1.concat(&x1.invert()).is_identity());
        let x1x2 = x1.concat(&x2);
        assert_eq!(x1x2.invert().syllables(), &[(2, -1), (1, -1)]);
        assert_eq!(x1x2.concat(&x2.invert()), x1);
    }

    #[test]
    fn commutator_words() {
        let x1 = Word::generator(2, 1).unwrap();
        let x2 = Word::generator(2, 2).unwrap();
        assert!(Word::commutator(&x1, &x1).is_identity());
        assert_eq!(
            Word::commutator(&x1, &x2).syllables(),
            &[(1, -1), (2, -1), (1, 1), (2, 1)]
        );
        assert!(Word::commutator(&Word::identity(2), &x2).is_identity());
        assert_eq!(Word::nested_commutator(&[1]).syllables(), &[(1, 1)]);
        assert_eq!(Word::nested_commutator(&[1, 2]), Word::commutator(&x1, &x2));
        let c3 = Word::nested_commutator(&[1, 2, 3]);
        assert_eq!(c3.syllables().len(), 10);
        assert_eq!(
            c3.to_string(),
            "x2^-1 x1^-1 x2 x1 x3^-1 x1^-1 x2^-1 x1 x2 x3"
        );
    }

    #[test]
    fn evaluation() {
        let s3 = parse_builtin("symmetric:3", &GroupOptions::default()).unwrap();
        assert_eq!(Word::identity(2).evaluate(&s3, &[1, 2]), 0);
        let a = 2; // (1 2 3)
        let sq = w(1, &[(1, 2)]).evaluate(&s3, &[a]);
        assert_eq!(sq, s3.inv(a));
        for g in 0..6 {
            for h in 0..6 {
                assert_eq!(
                    Word::nested_commutator(&[1, 2]).evaluate(&s3, &[g, h]),
                    s3.nested_commutator(&[g, h])
                );
            }
        }
    }

    #[test]
    fn tables_for_z2() {
        let z2 = parse_builtin("cyclic:2", &GroupOptions::default()).unwrap();
        let t = word_map_table(&Word::identity(1), &z2, 1, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t.values(), &[0, 0]);
        let t = word_map_table(&Word::generator(1, 1).unwrap(), &z2, 1, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t.values(), &[0, 1]);
        let sum = w(2, &[(1, 1), (2, 1)]);
        let t = word_map_table(&sum, &z2, 2, DEFAULT_TABLE_CAP).unwrap();
        assert_eq!(t.values(), &[0, 1, 1, 0]);
        assert_eq!(t.get(&[1, 0]), 1);
        assert_eq!(
            word_map_table(&sum, &z2, 30, 1000),
            Err(WordError::TableCapExceeded {
                order: 2,
                d: 30,
                cap: 1000
            })
        );
        assert!(matches!(
            word_map_table(&sum, &z2, 1, 1000),
            Err(WordError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn table_matches_pointwise_evaluation() {
        let s3 = parse_builtin("symmetric:3", &GroupOptions::default()).unwrap();
        let word = parse_word("x2^2 [x1, x3]^-1 x1 x3^5").unwrap();
        let t = word_map_table(&word, &s3, 3, DEFAULT_TABLE_CAP).unwrap();
        for idx in 0..t.len() {
            let args = decode_args(6, 3, idx);
            assert_eq!(encode_args(6, &args), idx);
            assert_eq!(t.values()[idx] as usize, word.evaluate(&s3, &args));
        }
    }
}
