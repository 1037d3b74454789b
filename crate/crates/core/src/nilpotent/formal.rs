use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::NilpotentError;
use crate::word::Word;

/// A formal commutator: a binary tree with leaves in `{1, ..., d}`. Its
/// weight is the number of leaves.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FormalCommutator {
    Leaf(usize),
    Pair {
        left: Arc<FormalCommutator>,
        right: Arc<FormalCommutator>,
        weight: usize,
    },
}

impl FormalCommutator {
    pub fn leaf(i: usize) -> Self {
        FormalCommutator::Leaf(i)
    }

    pub fn pair(left: FormalCommutator, right: FormalCommutator) -> Self {
        FormalCommutator::pair_shared(Arc::new(left), Arc::new(right))
    }

    pub fn pair_shared(left: Arc<FormalCommutator>, right: Arc<FormalCommutator>) -> Self {
        let weight = left.weight() + right.weight();
        FormalCommutator::Pair {
            left,
            right,
            weight,
        }
    }

    pub fn weight(&self) -> usize {
        match self {
            FormalCommutator::Leaf(_) => 1,
            FormalCommutator::Pair { weight, .. } => *weight,
        }
    }

    pub fn max_leaf(&self) -> usize {
        match self {
            FormalCommutator::Leaf(i) => *i,
            FormalCommutator::Pair { left, right, .. } => left.max_leaf().max(right.max_leaf()),
        }
    }

    /// `X_alpha`, expanding `X_[a, b] = X_a^-1 X_b^-1 X_a X_b`, in rank `d`.
    pub fn to_word(&self, d: usize) -> Word {
        match self {
            FormalCommutator::Leaf(i) => {
                Word::generator(d, *i).expect("leaf index within the ambient rank")
            }
            FormalCommutator::Pair { left, right, .. } => {
                Word::commutator(&left.to_word(d), &right.to_word(d))
            }
        }
    }
}

impl fmt::Display for FormalCommutator {
    /// Bracket notation: `2`, `[2,1]`, `[[2,1],1]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormalCommutator::Leaf(i) => write!(f, "{i}"),
            FormalCommutator::Pair { left, right, .. } => write!(f, "[{left},{right}]"),
        }
    }
}

impl fmt::Debug for FormalCommutator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `X_alpha` as a reduced word in `F(X_1, ..., X_d)` with `d` the largest leaf.
pub fn commutator_as_word(alpha: &FormalCommutator) -> Word {
    alpha.to_word(alpha.max_leaf())
}

pub(crate) fn catalan(n: usize) -> BigUint {
    // C(2n, n) / (n + 1)
    let mut c = BigUint::one();
    for i in 0..n {
        c = c * BigUint::from(2 * (2 * i + 1)) / BigUint::from(i + 2);
    }
    c
}

/// `sum_{w=1}^{c} Cat(w-1) d^w`: full binary trees with `w` leaves, each leaf
/// labelled from `{1, ..., d}`.
pub fn formal_commutator_polynomial(d: usize, c: usize) -> BigUint {
    (1..=c).fold(BigUint::zero(), |acc, w| {
        acc + catalan(w - 1) * BigUint::from(d).pow(w as u32)
    })
}

/// All formal commutators of weight at most `c` on leaves `1..=d`, ordered by
/// weight, then by the weight of the left subtree, then left and right
/// subtrees in their own order.
pub fn enumerate_formal_commutators(
    d: usize,
    c: usize,
    cap: u64,
) -> Result<Vec<FormalCommutator>, NilpotentError> {
    let expected = formal_commutator_polynomial(d, c);
    if expected > BigUint::from(cap) {
        return Err(NilpotentError::EnumerationCapExceeded {
            count: expected.to_string(),
            cap,
        });
    }
    let mut by_weight: Vec<Vec<Arc<FormalCommutator>>> = vec![Vec::new(); c + 1];
    if c >= 1 {
        by_weight[1] = (1..=d)
            .map(|i| Arc::new(FormalCommutator::Leaf(i)))
            .collect();
    }
    for w in 2..=c {
        let mut level = Vec::new();
        for a in 1..w {
            for l in &by_weight[a] {
                for r in &by_weight[w - a] {
                    level.push(Arc::new(FormalCommutator::pair_shared(
                        l.clone(),
                        r.clone(),
                    )));
                }
            }
        }
        by_weight[w] = level;
    }
    Ok(by_weight
        .into_iter()
        .flatten()
        .map(|t| Arc::try_unwrap(t).unwrap_or_else(|t| (*t).clone()))
        .collect())
}

/// Enumerated count of formal commutators together with the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorCount {
    pub enumerated: u64,
    pub closed_form: BigUint,
}

/// Counts formal commutators of weight at most `c` by enumeration and checks
/// the count against [`formal_commutator_polynomial`].
pub fn count_formal_commutators(
    d: usize,
    c: usize,
    cap: u64,
) -> Result<CommutatorCount, NilpotentError> {
    let enumerated = enumerate_formal_commutators(d, c, cap)?.len() as u64;
    let closed_form = formal_commutator_polynomial(d, c);
    if closed_form.to_u64() != Some(enumerated) {
        return Err(NilpotentError::InvariantViolation(format!(
            "enumerated {enumerated} formal commutators but closed form gives {closed_form}"
        )));
    }
    Ok(CommutatorCount {
        enumerated,
        closed_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CAP: u64 = 10_000_000;

    #[test]
    fn small_enumerations() {
        let all = enumerate_formal_commutators(2, 1, CAP).unwrap();
        assert_eq!(
            all,
            vec![FormalCommutator::leaf(1), FormalCommutator::leaf(2)]
        );
        let all = enumerate_formal_commutators(2, 2, CAP).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[2].to_string(), "[1,1]");
        assert_eq!(all[5].to_string(), "[2,2]");
        assert_eq!(enumerate_formal_commutators(2, 3, CAP).unwrap().len(), 22);
        assert!(enumerate_formal_commutators(0, 3, CAP).unwrap().is_empty());
    }

    #[test]
    fn counts() {
        for d in 0..5 {
            assert_eq!(
                count_formal_commutators(d, 1, CAP).unwrap().enumerated,
                d as u64
            );
        }
        assert_eq!(count_formal_commutators(2, 2, CAP).unwrap().enumerated, 6);
        assert_eq!(count_formal_commutators(3, 3, CAP).unwrap().enumerated, 66);
        assert!(matches!(
            count_formal_commutators(4, 5, 100),
            Err(NilpotentError::EnumerationCapExceeded { .. })
        ));
    }

    #[test]
    fn catalan_numbers() {
        let got: Vec<BigUint> = (0..8).map(catalan).collect();
        let want: Vec<BigUint> = [1u32, 1, 2, 5, 14, 42, 132, 429]
            .iter()
            .map(|&x| BigUint::from(x))
            .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn words_of_commutators() {
        let a = FormalCommutator::leaf(1);
        assert_eq!(commutator_as_word(&a).to_string(), "x1");
        let b = FormalCommutator::pair(FormalCommutator::leaf(2), FormalCommutator::leaf(1));
        assert_eq!(commutator_as_word(&b).to_string(), "x2^-1 x1^-1 x2 x1");
        let c = FormalCommutator::pair(b.clone(), FormalCommutator::leaf(1));
        assert_eq!(c.weight(), 3);
        // the trailing x1 x1 merges, leaving 9 syllables
        assert_eq!(
            commutator_as_word(&c).to_string(),
            "x1^-1 x2^-1 x1 x2 x1^-1 x2^-1 x1^-1 x2 x1^2"
        );
    }
}
