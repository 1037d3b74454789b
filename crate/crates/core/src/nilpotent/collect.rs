//! Collection to the left in the free nilpotent group `F_c(X_1, ..., X_d)`.
//!
//! Elements are exponent vectors over the Hall basis `b_1 < ... < b_N`,
//! standing for `b_1^{k_1} ... b_N^{k_N}`. For every pair `i < m` the
//! collector stores the images of `b_m` under conjugation by `b_i` and by
//! `b_i^{-1}`:
//!
//! * weight of `b_m` plus weight of `b_i` above `c`: `b_m` is fixed;
//! * `[b_m, b_i]` basic: `b_m^{b_i} = b_m [b_m, b_i]`;
//! * otherwise `b_m = [u, v]` with `v > b_i`, and `b_m^{b_i} = [u^{b_i}, v^{b_i}]`.
//!
//! Relations for conjugator `b_i` only multiply elements supported on
//! `b_{i+1}, ..., b_N`, so filling the tables with `i` descending never needs
//! a relation that is not yet known.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{hall_basis, HallBasis, NilpotentError};
use crate::group::GroupOps;
use crate::word::Word;

/// Collection is supported up to this class unless raised explicitly.
pub const DEFAULT_CLASS_LIMIT: usize = 4;

/// Cap on `N_{d,c}` for a collector.
pub const DEFAULT_BASIS_CAP: u64 = 2_000;

/// Conjugations by `b_i^k` with `|k|` above this use automorphism powering.
const DIRECT_CONJUGATION_LIMIT: u64 = 8;

type Sparse = Vec<(usize, BigInt)>;

fn to_sparse(dense: &[BigInt]) -> Sparse {
    dense
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(j, e)| (j, e.clone()))
        .collect()
}

/// Exponent vector of an element of a free nilpotent group over its Hall basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    basis: Arc<HallBasis>,
    exponents: Vec<BigInt>,
}

impl NormalForm {
    pub fn new(basis: Arc<HallBasis>, exponents: Vec<BigInt>) -> Result<Self, NilpotentError> {
        if exponents.len() != basis.len() {
            return Err(NilpotentError::InvalidParameter(format!(
                "{} exponents for a basis of size {}",
                exponents.len(),
                basis.len()
            )));
        }
        Ok(NormalForm { basis, exponents })
    }

    pub fn basis(&self) -> &HallBasis {
        &self.basis
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.exponents
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(Zero::is_zero)
    }

    /// Exponents as machine integers, if they all fit.
    pub fn exponents_i64(&self) -> Option<Vec<i64>> {
        self.exponents.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// `prod_j (X_{alpha_j})^{k_j}` as a reduced word in `F(X_1, ..., X_d)`.
pub fn normal_form_to_word(nf: &NormalForm) -> Result<Word, NilpotentError> {
    let d = nf.basis.d();
    let mut w = Word::identity(d);
    for (entry, k) in nf.basis.entries().iter().zip(&nf.exponents) {
        if k.is_zero() {
            continue;
        }
        let k = k
            .to_i64()
            .ok_or_else(|| NilpotentError::ExponentTooLarge(k.to_string()))?;
        w = w.concat(&entry.tree.to_word(d).power(k));
    }
    Ok(w)
}

/// Value of `prod_j (X_{alpha_j})^{k_j}` at `args`, computing each basic
/// commutator once from its two parts and then powering. Agrees with
/// evaluating [`normal_form_to_word`] but does not expand the powers.
pub fn evaluate_normal_form_in<G: GroupOps>(
    nf: &NormalForm,
    group: &G,
    args: &[G::Elem],
) -> Result<G::Elem, NilpotentError> {
    let entries = nf.basis.entries();
    let mut values: Vec<G::Elem> = Vec::with_capacity(entries.len());
    for (j, entry) in entries.iter().enumerate() {
        let v = match entry.parts {
            None => args[j].clone(),
            Some((a, b)) => group.commutator(&values[a], &values[b]),
        };
        values.push(v);
    }
    let mut acc = group.identity();
    for (v, k) in values.iter().zip(&nf.exponents) {
        if k.is_zero() {
            continue;
        }
        let k = k
            .to_i64()
            .ok_or_else(|| NilpotentError::ExponentTooLarge(k.to_string()))?;
        acc = group.mul(&acc, &group.pow(v, k));
    }
    Ok(acc)
}

/// Precomputed conjugation relations for one `(d, c)`; immutable after
/// construction and safe to share between threads.
#[derive(Debug, Clone)]
pub struct Collector {
    basis: Arc<HallBasis>,
    /// `conj[i][m - i - 1]` is `b_m^{b_i}`.
    conj: Vec<Vec<Sparse>>,
    /// `conj_inv[i][m - i - 1]` is `b_m^{b_i^{-1}}`.
    conj_inv: Vec<Vec<Sparse>>,
}

impl Collector {
    /// Collector for class `c` with the default class limit.
    pub fn new(d: usize, c: usize) -> Result<Self, NilpotentError> {
        Collector::with_limits(d, c, DEFAULT_CLASS_LIMIT, DEFAULT_BASIS_CAP)
    }

    pub fn with_limits(
        d: usize,
        c: usize,
        class_limit: usize,
        basis_cap: u64,
    ) -> Result<Self, NilpotentError> {
        if c > class_limit {
            return Err(NilpotentError::ClassOutOfSupportedRange {
                class: c,
                limit: class_limit,
            });
        }
        let basis = Arc::new(hall_basis(d, c, basis_cap)?);
        let n = basis.len();
        let mut collector = Collector {
            basis,
            conj: vec![Vec::new(); n],
            conj_inv: vec![Vec::new(); n],
        };
        for i in (0..n).rev() {
            collector.fill_relations(i)?;
        }
        Ok(collector)
    }

    pub fn basis(&self) -> &Arc<HallBasis> {
        &self.basis
    }

    fn fill_relations(&mut self, i: usize) -> Result<(), NilpotentError> {
        let n = self.basis.len();
        let c = self.basis.class();
        let wi = self.basis.weight(i);
        let mut forward: Vec<Sparse> = Vec::with_capacity(n - i - 1);
        for m in i + 1..n {
            let entry = &self.basis.entries()[m];
            let image = if entry.weight + wi > c {
                vec![(m, BigInt::one())]
            } else if let Some(t) = self.basis.pair(m, i) {
                vec![(m, BigInt::one()), (t, BigInt::one())]
            } else {
                let (u, v) = entry.parts.ok_or_else(|| {
                    NilpotentError::InvariantViolation(format!(
                        "generator b_{m} has no basic commutator with b_{i}"
                    ))
                })?;
                debug_assert!(v > i && u > v);
                let x = &forward[u - i - 1];
                let y = &forward[v - i - 1];
                self.commutator(x, y)
            };
            forward.push(image);
        }
        self.conj[i] = forward;

        // b_m^{b_i} = b_m t_m with t_m supported above m, so
        // b_m^{b_i^{-1}} = b_m (t_m^{-1})^{b_i^{-1}}, filled with m descending.
        let mut backward: Vec<Option<Sparse>> = vec![None; n - i - 1];
        for m in (i + 1..n).rev() {
            let image = &self.conj[i][m - i - 1];
            let (head, tail) = image
                .split_first()
                .expect("conjugate of a generator is nontrivial");
            if head.0 != m || !head.1.is_one() || tail.iter().any(|(j, _)| *j <= m) {
                return Err(NilpotentError::InvariantViolation(format!(
                    "b_{m}^(b_{i}) is not b_{m} times higher terms"
                )));
            }
            let t_inv = self.inverse(tail);
            let mut acc = self.identity();
            acc[m] = BigInt::one();
            for (q, e) in &t_inv {
                let img = backward[q - i - 1]
                    .as_ref()
                    .expect("filled for larger indices");
                self.mul_power(&mut acc, img, e);
            }
            backward[m - i - 1] = Some(to_sparse(&acc));
        }
        self.conj_inv[i] = backward.into_iter().map(Option::unwrap).collect();
        Ok(())
    }

    fn identity(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.basis.len()]
    }

    /// `v <- v * b_i^k`.
    fn mul_gen(&self, v: &mut [BigInt], i: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        let tail: Sparse = to_sparse(&v[i + 1..])
            .into_iter()
            .map(|(j, e)| (j + i + 1, e))
            .collect();
        v[i] += k;
        if tail.is_empty() {
            return;
        }
        for x in v[i + 1..].iter_mut() {
            x.set_zero();
        }
        // v = P b_i^k (T)^{b_i^k}, and the conjugated tail lives above i.
        let conjugated = self.conjugate_by_power(i, k, &tail);
        for (j, e) in conjugated {
            v[j] = e;
        }
    }

    /// `v <- v * y`.
    fn mul(&self, v: &mut [BigInt], y: &[(usize, BigInt)]) {
        for (j, e) in y {
            self.mul_gen(v, *j, e);
        }
    }

    /// `v <- v * y^e`.
    fn mul_power(&self, v: &mut [BigInt], y: &[(usize, BigInt)], e: &BigInt) {
        if e.is_zero() || y.is_empty() {
            return;
        }
        if y.len() == 1 {
            let (j, k) = &y[0];
            self.mul_gen(v, *j, &(k * e));
            return;
        }
        let p = self.power(y, e);
        self.mul(v, &p);
    }

    fn power(&self, y: &[(usize, BigInt)], e: &BigInt) -> Sparse {
        let mut base: Sparse = if e.is_negative() {
            self.inverse(y)
        } else {
            y.to_vec()
        };
        let mut k = e.abs();
        let mut acc = self.identity();
        let two = BigInt::from(2);
        while !k.is_zero() {
            if (&k % &two).is_one() {
                self.mul(&mut acc, &base);
            }
            k /= &two;
            if !k.is_zero() {
                let mut sq = self.identity();
                self.mul(&mut sq, &base);
                self.mul(&mut sq, &base);
                base = to_sparse(&sq);
            }
        }
        to_sparse(&acc)
    }

    fn inverse(&self, y: &[(usize, BigInt)]) -> Sparse {
        let mut acc = self.identity();
        for (j, e) in y.iter().rev() {
            self.mul_gen(&mut acc, *j, &-e);
        }
        to_sparse(&acc)
    }

    fn commutator(&self, x: &[(usize, BigInt)], y: &[(usize, BigInt)]) -> Sparse {
        let mut acc = self.identity();
        self.mul(&mut acc, &self.inverse(x));
        self.mul(&mut acc, &self.inverse(y));
        self.mul(&mut acc, x);
        self.mul(&mut acc, y);
        to_sparse(&acc)
    }

    /// Image of `x` (supported above `i`) under conjugation by `b_i` or `b_i^{-1}`.
    fn conjugate_once(&self, i: usize, inverse: bool, x: &[(usize, BigInt)]) -> Sparse {
        let table = if inverse {
            &self.conj_inv[i]
        } else {
            &self.conj[i]
        };
        let mut acc = self.identity();
        for (m, e) in x {
            self.mul_power(&mut acc, &table[m - i - 1], e);
        }
        to_sparse(&acc)
    }

    /// `x^{b_i^k}` for `x` supported above `i`.
    fn conjugate_by_power(&self, i: usize, k: &BigInt, x: &[(usize, BigInt)]) -> Sparse {
        let inverse = k.is_negative();
        let steps = k.abs();
        if let Some(s) = steps.to_u64().filter(|&s| s <= DIRECT_CONJUGATION_LIMIT) {
            let mut cur = x.to_vec();
            for _ in 0..s {
                cur = self.conjugate_once(i, inverse, &cur);
            }
            return cur;
        }
        // Square-and-multiply on the automorphism, stored as generator images.
        let n = self.basis.len();
        let table = if inverse {
            &self.conj_inv[i]
        } else {
            &self.conj[i]
        };
        let apply = |aut: &[Sparse], y: &[(usize, BigInt)]| -> Sparse {
            let mut acc = self.identity();
            for (m, e) in y {
                self.mul_power(&mut acc, &aut[m - i - 1], e);
            }
            to_sparse(&acc)
        };
        let mut result: Vec<Sparse> = (i + 1..n).map(|m| vec![(m, BigInt::one())]).collect();
        let mut base: Vec<Sparse> = table.clone();
        let mut s = steps;
        let two = BigInt::from(2);
        while !s.is_zero() {
            if (&s % &two).is_one() {
                result = result.iter().map(|img| apply(&base, img)).collect();
            }
            s /= &two;
            if !s.is_zero() {
                base = base.iter().map(|img| apply(&base, img)).collect();
            }
        }
        apply(&result, x)
    }

    /// Normal form of a word of rank at most `d`.
    pub fn normal_form(&self, w: &Word) -> Result<NormalForm, NilpotentError> {
        let d = self.basis.d();
        if w.max_variable() > d {
            return Err(NilpotentError::ArityMismatch {
                word_d: w.max_variable(),
                d,
            });
        }
        let mut v = self.identity();
        if self.basis.is_empty() {
            return NormalForm::new(self.basis.clone(), v);
        }
        for &(var, e) in w.syllables() {
            // generators X_1..X_d are the first d basis entries
            self.mul_gen(&mut v, var - 1, &BigInt::from(e));
        }
        NormalForm::new(self.basis.clone(), v)
    }

    /// Product of two normal forms over this collector's basis.
    pub fn multiply(&self, a: &NormalForm, b: &NormalForm) -> Result<NormalForm, NilpotentError> {
        let mut v = a.exponents.clone();
        self.mul(&mut v, &to_sparse(&b.exponents));
        NormalForm::new(self.basis.clone(), v)
    }
}

/// Normal form of `w` in the free nilpotent group of class `c` on `d` generators.
pub fn normal_form(w: &Word, d: usize, c: usize) -> Result<NormalForm, NilpotentError> {
    Collector::new(d, c)?.normal_form(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn generator_powers() {
        let w = parse_word("x1^7").unwrap();
        for c in 1..=4 {
            let nf = normal_form(&w, 2, c).unwrap();
            assert_eq!(nf.exponents()[0], BigInt::from(7));
            assert!(nf.exponents()[1..].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn class_one_kills_commutators() {
        let nf = normal_form(&parse_word("[x1, x2]").unwrap(), 2, 1).unwrap();
        assert!(nf.is_identity());
        let nf = normal_form(&parse_word("x2^3 x1 x2^-1").unwrap(), 2, 1).unwrap();
        assert_eq!(nf.exponents(), ints(&[1, 2]).as_slice());
    }

    #[test]
    fn swap_produces_commutator() {
        let nf = normal_form(&parse_word("x2 x1").unwrap(), 2, 2).unwrap();
        assert_eq!(nf.exponents(), ints(&[1, 1, 1]).as_slice());
        // x2^a x1^b = x1^b x2^a [x2, x1]^{ab} in class 2
        let nf = normal_form(&parse_word("x2^3 x1^-2").unwrap(), 2, 2).unwrap();
        assert_eq!(nf.exponents(), ints(&[-2, 3, -6]).as_slice());
    }

    #[test]
    fn basic_commutators_are_unit_vectors() {
        let collector = Collector::new(3, 4).unwrap();
        let basis = collector.basis().clone();
        for (j, entry) in basis.entries().iter().enumerate() {
            let nf = collector.normal_form(&entry.tree.to_word(3)).unwrap();
            let mut want = vec![BigInt::zero(); basis.len()];
            want[j] = BigInt::one();
            assert_eq!(nf.exponents(), want.as_slice(), "entry {}", entry.tree);
        }
    }

    #[test]
    fn large_exponents_use_powering() {
        let collector = Collector::new(2, 3).unwrap();
        let big = collector
            .normal_form(&parse_word("x2^50 x1^40").unwrap())
            .unwrap();
        let mut slow = collector.identity();
        for _ in 0..50 {
            collector.mul_gen(&mut slow, 1, &BigInt::one());
        }
        for _ in 0..40 {
            collector.mul_gen(&mut slow, 0, &BigInt::one());
        }
        assert_eq!(big.exponents(), slow.as_slice());
    }

    #[test]
    fn round_trip_through_words() {
        let collector = Collector::new(2, 3).unwrap();
        let nf = NormalForm::new(collector.basis().clone(), ints(&[2, -1, 3, 0, -2])).unwrap();
        let w = normal_form_to_word(&nf).unwrap();
        assert_eq!(collector.normal_form(&w).unwrap(), nf);
        let zero = NormalForm::new(collector.basis().clone(), ints(&[0; 5])).unwrap();
        assert!(normal_form_to_word(&zero).unwrap().is_identity());
    }

    #[test]
    fn limits() {
        assert!(matches!(
            Collector::new(2, 5),
            Err(NilpotentError::ClassOutOfSupportedRange { class: 5, limit: 4 })
        ));
        assert!(Collector::with_limits(2, 5, 5, DEFAULT_BASIS_CAP).is_ok());
        let c = Collector::new(2, 2).unwrap();
        assert!(matches!(
            c.normal_form(&parse_word("x3").unwrap()),
            Err(NilpotentError::ArityMismatch { .. })
        ));
        let empty = Collector::new(0, 3).unwrap();
        assert!(empty
            .normal_form(&Word::identity(0))
            .unwrap()
            .exponents()
            .is_empty());
    }

    #[test]
    fn structural_evaluation_matches_word() {
        use crate::group::{parse_builtin, GroupOptions};
        let g = parse_builtin("unitriangular:4:2", &GroupOptions::default()).unwrap();
        let col = Collector::new(3, 3).unwrap();
        let w = crate::word::parse_word("x1^3 x2^-2 x3 [x1, x3]^2 x2 x1^-1 x3^2").unwrap();
        let nf = col.normal_form(&w).unwrap();
        let nw = normal_form_to_word(&nf).unwrap();
        for seed in 0..40usize {
            let args = [seed % 64, (seed * 7 + 3) % 64, (seed * 13 + 5) % 64];
            let direct = evaluate_normal_form_in(&nf, &g, &args).unwrap();
            assert_eq!(direct, nw.evaluate(&g, &args));
            assert_eq!(direct, w.evaluate(&g, &args));
        }
    }
}
