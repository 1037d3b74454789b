//! Concrete finite groups stored as full multiplication tables.
//!
//! Every [`FiniteGroup`] keeps its identity at index 0. Constructors that take
//! foreign data (a raw Cayley table, permutation generators) relabel elements
//! so that this holds, and then fill the inverse and element-order caches.

mod builtin;
mod matrix;
mod perm;
mod series;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use builtin::{builtin_library, parse_builtin, BuiltinSpec};
pub use matrix::UnitriangularMatrices;
pub use perm::{parse_cycles, Permutation};
pub use series::{
    commutator_value_sets, exp_r, lower_central_series, nilpotency_class, ExpProfile, Nilpotency,
    Subgroup,
};

/// Default hard cap on group order for all constructors.
pub const DEFAULT_ORDER_CAP: usize = 2000;

/// Above this order associativity is checked on random triples unless forced.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("no two-sided identity element in table")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("multiplication is not associative on ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order exceeds cap {cap} (reached {reached})")]
    OrderLimitExceeded { cap: usize, reached: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("cannot parse permutation {0:?}")]
    PermutationSyntax(String),
    #[error("generators act on different point sets ({0} vs {1} points)")]
    DegreeMismatch(usize, usize),
    #[error("unknown builtin group spec {0:?}")]
    UnknownBuiltin(String),
}

/// Limits and switches shared by the group constructors.
#[derive(Debug, Clone, Copy)]
pub struct GroupOptions {
    pub order_cap: usize,
    /// Check all n^3 triples for associativity regardless of n.
    pub exhaustive_associativity: bool,
    /// Seed for sampled associativity checks.
    pub seed: u64,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            order_cap: DEFAULT_ORDER_CAP,
            exhaustive_associativity: false,
            seed: 0,
        }
    }
}

/// Minimal group interface used for word evaluation.
///
/// [`FiniteGroup`] implements it over element indices; other models (such as
/// [`UnitriangularMatrices`]) implement it without a multiplication table.
pub trait GroupOps {
    type Elem: Clone + Eq;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, exponent: i64) -> Self::Elem {
        let base = if exponent < 0 { self.inv(a) } else { a.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = self.identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inv(&ba), &ab)
    }
}

/// A finite group given by its full multiplication table. Index 0 is the identity.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    element_order: Vec<u32>,
    label: Option<String>,
    element_names: Option<Vec<String>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("label", &self.label)
            .field("order", &self.n)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates a square Cayley table and builds the group from it.
    ///
    /// The identity is moved to index 0 by swapping it with whatever element
    /// was there; all other indices keep their position. Errors name the
    /// offending element or triple in the caller's original labelling.
    pub fn from_multiplication_table(
        table: &[Vec<usize>],
        options: &GroupOptions,
    ) -> Result<FiniteGroup, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::MalformedTable("empty table".into()));
        }
        if n > options.order_cap {
            return Err(GroupError::OrderLimitExceeded {
                cap: options.order_cap,
                reached: n,
            });
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::MalformedTable(format!(
                    "row {i} has length {} but table has {n} rows",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::MalformedTable(format!(
                    "entry {bad} in row {i} is out of range 0..{n}"
                )));
            }
        }
        let m = |a: usize, b: usize| table[a][b];

        let e = (0..n)
            .find(|&e| (0..n).all(|g| m(e, g) == g && m(g, e) == g))
            .ok_or(GroupError::NoIdentity)?;
        for g in 0..n {
            if !(0..n).any(|h| m(g, h) == e && m(h, g) == e) {
                return Err(GroupError::NoInverse { element: g });
            }
        }

        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT || options.exhaustive_associativity {
            for a in 0..n {
                for b in 0..n {
                    let ab = m(a, b);
                    for c in 0..n {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
            for _ in 0..10 * n * n {
                let (a, b, c) = (
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                );
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        // swap e <-> 0
        let relabel = |x: usize| {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut mult = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mult[relabel(a) * n + relabel(b)] = relabel(m(a, b)) as u32;
            }
        }
        Ok(FiniteGroup::from_raw(n, mult, None, None))
    }

    /// Builds a group from a flat table already known to satisfy the axioms
    /// with identity at 0.
    pub(crate) fn from_raw(
        n: usize,
        mult: Vec<u32>,
        label: Option<String>,
        element_names: Option<Vec<String>>,
    ) -> FiniteGroup {
        debug_assert_eq!(mult.len(), n * n);
        let mut inv = vec![0u32; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mult[g * n + h] == 0)
                .expect("every element of a group has an inverse") as u32;
        }
        let mut element_order = vec![1u32; n];
        for g in 1..n {
            let mut x = g;
            let mut k = 1;
            while x != 0 {
                x = mult[x * n + g] as usize;
                k += 1;
            }
            element_order[g] = k;
        }
        FiniteGroup {
            n,
            mult,
            inv,
            element_order,
            label,
            element_names,
        }
    }

    /// Tabulates a group from an explicit element list (identity first) and a
    /// composition function.
    pub(crate) fn tabulate<T: Clone + Eq + Hash>(
        elements: &[T],
        compose: impl Fn(&T, &T) -> T,
        label: Option<String>,
        element_names: Option<Vec<String>>,
    ) -> FiniteGroup {
        let n = elements.len();
        let index: HashMap<&T, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x, i as u32))
            .collect();
        let mut mult = vec![0u32; n * n];
        for (a, x) in elements.iter().enumerate() {
            for (b, y) in elements.iter().enumerate() {
                mult[a * n + b] = index[&compose(x, y)];
            }
        }
        FiniteGroup::from_raw(n, mult, label, element_names)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    /// Display name of an element, falling back to its index.
    pub fn element_name(&self, g: usize) -> String {
        match &self.element_names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    #[inline]
    pub fn element_order(&self, g: usize) -> u64 {
        self.element_order[g] as u64
    }

    pub fn row(&self, a: usize) -> &[u32] {
        &self.mult[a * self.n..(a + 1) * self.n]
    }

    /// `g^k` for any integer `k`, reduced modulo the order of `g`.
    pub fn pow(&self, g: usize, k: i64) -> usize {
        let ord = self.element_order[g] as i64;
        let mut e = k.rem_euclid(ord);
        let mut x = 0;
        while e > 0 {
            x = self.mul(x, g);
            e -= 1;
        }
        x
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    /// Left-nested commutator `[g_1, ..., g_r] = [[g_1, ..., g_{r-1}], g_r]`.
    ///
    /// # Panics
    /// If `gs` is empty.
    pub fn nested_commutator(&self, gs: &[usize]) -> usize {
        let (&first, rest) = gs
            .split_first()
            .expect("nested commutator of an empty list");
        rest.iter().fold(first, |acc, &g| self.commutator(acc, g))
    }

    /// Exponent: lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        self.element_order
            .iter()
            .fold(1u64, |acc, &o| acc.lcm(&(o as u64)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Internal direct product `self x other`, element `(a, b)` at `a + |self|*b`.
    pub fn direct_product(
        &self,
        other: &FiniteGroup,
        options: &GroupOptions,
    ) -> Result<FiniteGroup, GroupError> {
        let (n1, n2) = (self.n, other.n);
        let n = n1.saturating_mul(n2);
        if n > options.order_cap {
            return Err(GroupError::OrderLimitExceeded {
                cap: options.order_cap,
                reached: n,
            });
        }
        let mut mult = vec![0u32; n * n];
        for x in 0..n {
            let (a1, b1) = (x % n1, x / n1);
            for y in 0..n {
                let (a2, b2) = (y % n1, y / n1);
                mult[x * n + y] = (self.mul(a1, a2) + n1 * other.mul(b1, b2)) as u32;
            }
        }
        let names = match (&self.element_names, &other.element_names) {
            (None, None) => None,
            _ => Some(
                (0..n)
                    .map(|x| {
                        format!(
                            "({},{})",
                            self.element_name(x % n1),
                            other.element_name(x / n1)
                        )
                    })
                    .collect(),
            ),
        };
        let label = format!(
            "{} x {}",
            self.label.as_deref().unwrap_or("?"),
            other.label.as_deref().unwrap_or("?")
        );
        Ok(FiniteGroup::from_raw(n, mult, Some(label), names))
    }
}

impl GroupOps for FiniteGroup {
    type Elem = usize;

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::mul(self, *a, *b)
    }

    fn inv(&self, a: &usize) -> usize {
        FiniteGroup::inv(self, *a)
    }

    fn pow(&self, a: &usize, exponent: i64) -> usize {
        FiniteGroup::pow(self, *a, exponent)
    }

    fn commutator(&self, a: &usize, b: &usize) -> usize {
        FiniteGroup::commutator(self, *a, *b)
    }
}

/// Breadth-first closure of `{identity}` under right multiplication by the
/// generators. Returns elements in discovery order, identity first.
pub(crate) fn bfs_closure<T: Clone + Eq + Hash>(
    identity: T,
    generators: &[T],
    compose: impl Fn(&T, &T) -> T,
    cap: usize,
) -> Result<Vec<T>, GroupError> {
    let mut seen: HashMap<T, ()> = HashMap::new();
    let mut elements = vec![identity.clone()];
    seen.insert(identity, ());
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in generators {
            let y = compose(&x, g);
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), ());
                elements.push(y);
                if elements.len() > cap {
                    return Err(GroupError::OrderLimitExceeded {
                        cap,
                        reached: elements.len(),
                    });
                }
            }
        }
    }
    Ok(elements)
}
