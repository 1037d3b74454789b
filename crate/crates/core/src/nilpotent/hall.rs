use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

use super::{FormalCommutator, NilpotentError};

/// Möbius function by trial division.
pub(crate) fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Necklace number `(1/w) sum_{e | w} mu(e) d^{w/e}`: the number of basic
/// commutators of weight `w` on `d` generators.
pub fn witt_count(d: usize, w: usize) -> BigUint {
    assert!(w >= 1, "weight must be positive");
    let mut sum = BigInt::zero();
    for e in (1..=w).filter(|e| w % e == 0) {
        let mu = mobius(e as u64);
        if mu != 0 {
            sum += BigInt::from(mu) * BigInt::from(d).pow((w / e) as u32);
        }
    }
    (sum / BigInt::from(w))
        .to_biguint()
        .expect("necklace counts are non-negative")
}

/// One entry of a Hall basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCommutator {
    pub tree: FormalCommutator,
    pub weight: usize,
    /// Basis indices `(alpha, beta)` with this entry equal to `[alpha, beta]`;
    /// `None` for the generators.
    pub parts: Option<(usize, usize)>,
}

/// The basic commutators of weight at most `c` on `d` generators, in order.
///
/// Weight 1 is `X_1 < ... < X_d`. A pair `[alpha, beta]` of basic commutators
/// is basic when `beta < alpha` and, if `alpha = [alpha_1, alpha_2]`, also
/// `alpha_2 <= beta`. Entries are sorted by weight; within one weight they
/// follow the index pair `(alpha, beta)` lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallBasis {
    d: usize,
    c: usize,
    entries: Vec<BasicCommutator>,
    pair_index: HashMap<(usize, usize), usize>,
}

impl HallBasis {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn class(&self) -> usize {
        self.c
    }

    pub fn entries(&self) -> &[BasicCommutator] {
        &self.entries
    }

    /// `N_{d,c}`.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self, j: usize) -> usize {
        self.entries[j].weight
    }

    /// Index of `[alpha, beta]` if that pair is itself in the basis.
    pub fn pair(&self, alpha: usize, beta: usize) -> Option<usize> {
        self.pair_index.get(&(alpha, beta)).copied()
    }

    /// Number of entries of each weight `1..=c`.
    pub fn weight_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.c];
        for e in &self.entries {
            counts[e.weight - 1] += 1;
        }
        counts
    }

    /// One line per entry: `index weight tree`, 1-based index.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (j, e) in self.entries.iter().enumerate() {
            writeln!(out, "{} {} {}", j + 1, e.weight, e.tree).unwrap();
        }
        out
    }
}

/// Builds the Hall basis of the free nilpotent group of class `c` and rank `d`.
pub fn hall_basis(d: usize, c: usize, cap: u64) -> Result<HallBasis, NilpotentError> {
    let total: BigUint = (1..=c).map(|w| witt_count(d, w)).sum();
    if total.to_u64().is_none_or(|t| t > cap) {
        return Err(NilpotentError::EnumerationCapExceeded {
            count: total.to_string(),
            cap,
        });
    }
    let mut entries: Vec<BasicCommutator> = Vec::new();
    let mut pair_index = HashMap::new();
    if c >= 1 {
        for i in 1..=d {
            entries.push(BasicCommutator {
                tree: FormalCommutator::leaf(i),
                weight: 1,
                parts: None,
            });
        }
    }
    for w in 2..=c {
        let before = entries.len();
        let mut level = Vec::new();
        for a in 0..before {
            let alpha = &entries[a];
            if alpha.weight >= w {
                continue;
            }
            let min_beta = alpha.parts.map_or(0, |(_, right)| right);
            for b in min_beta..a {
                let beta = &entries[b];
                if alpha.weight + beta.weight != w {
                    continue;
                }
                level.push(BasicCommutator {
                    tree: FormalCommutator::pair(alpha.tree.clone(), beta.tree.clone()),
                    weight: w,
                    parts: Some((a, b)),
                });
            }
        }
        for e in level {
            pair_index.insert(e.parts.unwrap(), entries.len());
            entries.push(e);
        }
    }
    Ok(HallBasis {
        d,
        c,
        entries,
        pair_index,
    })
}
