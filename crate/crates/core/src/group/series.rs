//! Lower central series, nilpotency class and the nested-commutator
//! exponents `exp_r`.

use num_integer::Integer;
use serde::Serialize;

use super::FiniteGroup;

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup<'g> {
    parent: &'g FiniteGroup,
    members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    pub fn whole(parent: &'g FiniteGroup) -> Self {
        Subgroup {
            parent,
            members: (0..parent.order()).collect(),
        }
    }

    pub fn trivial(parent: &'g FiniteGroup) -> Self {
        Subgroup {
            parent,
            members: vec![0],
        }
    }

    /// Subgroup generated by `generators`, by breadth-first closure under
    /// right multiplication.
    pub fn generated(parent: &'g FiniteGroup, generators: &[usize]) -> Self {
        let n = parent.order();
        let gens: Vec<usize> = {
            let mut g: Vec<usize> = generators.iter().copied().filter(|&x| x != 0).collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &g in &gens {
                let y = parent.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
        queue.sort_unstable();
        Subgroup {
            parent,
            members: queue,
        }
    }

    pub fn parent(&self) -> &'g FiniteGroup {
        self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// `gamma_1 = G`, `gamma_{i+1} = <[x, y] : x in gamma_i, y in G>`, listed up
/// to the first term that equals its predecessor (which is not repeated).
pub fn lower_central_series(g: &FiniteGroup) -> Vec<Subgroup<'_>> {
    let n = g.order();
    let mut series = vec![Subgroup::whole(g)];
    loop {
        let current = series.last().unwrap();
        let mut is_value = vec![false; n];
        for &x in current.members() {
            for y in 0..n {
                is_value[g.commutator(x, y)] = true;
            }
        }
        let gens: Vec<usize> = (0..n).filter(|&z| is_value[z]).collect();
        let next = Subgroup::generated(g, &gens);
        if next.members() == current.members() {
            return series;
        }
        series.push(next);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Nilpotency {
    pub nilpotent: bool,
    /// Number of strictly descending steps to the trivial subgroup.
    pub class: Option<usize>,
}

pub fn nilpotency_class(g: &FiniteGroup) -> Nilpotency {
    let series = lower_central_series(g);
    let last = series.last().unwrap();
    if last.is_trivial() {
        Nilpotency {
            nilpotent: true,
            class: Some(series.len() - 1),
        }
    } else {
        Nilpotency {
            nilpotent: false,
            class: None,
        }
    }
}

/// Value sets `S_1 = G`, `S_{r+1} = { [s, g] : s in S_r, g in G }` for
/// `r = 1..=r_max`, as membership masks.
pub fn commutator_value_sets(g: &FiniteGroup, r_max: usize) -> Vec<Vec<bool>> {
    let n = g.order();
    let mut sets: Vec<Vec<bool>> = Vec::with_capacity(r_max);
    if r_max == 0 {
        return sets;
    }
    sets.push(vec![true; n]);
    while sets.len() < r_max {
        let prev = sets.last().unwrap();
        let mut next = vec![false; n];
        for s in (0..n).filter(|&s| prev[s]) {
            for x in 0..n {
                next[g.commutator(s, x)] = true;
            }
        }
        if &next == prev {
            // Stable from here on.
            while sets.len() < r_max {
                sets.push(next.clone());
            }
            break;
        }
        sets.push(next);
    }
    sets
}

fn lcm_of_orders(g: &FiniteGroup, mask: &[bool]) -> u64 {
    (0..g.order())
        .filter(|&x| mask[x])
        .fold(1u64, |acc, x| acc.lcm(&g.element_order(x)))
}

/// `exp_r(G)`: lcm of the orders of all nested commutators `[g_1, ..., g_r]`.
///
/// # Panics
/// If `r == 0`.
pub fn exp_r(g: &FiniteGroup, r: usize) -> u64 {
    assert!(r >= 1, "exp_r is defined for r >= 1");
    let sets = commutator_value_sets(g, r);
    lcm_of_orders(g, &sets[r - 1])
}

/// The sequence `exp_1(G), ..., exp_{r_max}(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpProfile {
    pub values: Vec<u64>,
}

impl ExpProfile {
    pub fn compute(g: &FiniteGroup, r_max: usize) -> Self {
        let values = commutator_value_sets(g, r_max)
            .iter()
            .map(|mask| lcm_of_orders(g, mask))
            .collect();
        ExpProfile { values }
    }

    /// `exp_r` for `1 <= r <= r_max`.
    pub fn get(&self, r: usize) -> u64 {
        self.values[r - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn build(spec: &str) -> FiniteGroup {
        parse_builtin(spec, &GroupOptions::default()).unwrap()
    }

    #[test]
    fn nested_commutator_basics() {
        let s3 = build("symmetric:3");
        for g in 0..6 {
            assert_eq!(s3.nested_commutator(&[g]), g);
        }
        // (1 2) is index 1, (1 2 3) index 2
        let c = s3.nested_commutator(&[1, 2]);
        assert_eq!(s3.element_order(c), 3);
        let z6 = build("cyclic:6");
        assert_eq!(z6.nested_commutator(&[2, 5]), 0);
    }

    #[test]
    fn exp_r_examples() {
        let z6 = build("cyclic:6");
        assert_eq!(exp_r(&z6, 2), 1);
        let s3 = build("symmetric:3");
        assert_eq!(exp_r(&s3, 1), 6);
        assert_eq!(exp_r(&s3, 2), 3);
        assert_eq!(ExpProfile::compute(&s3, 5).values, vec![6, 3, 3, 3, 3]);
        let q8 = build("quaternion:8");
        assert_eq!(exp_r(&q8, 2), 2);
        assert_eq!(exp_r(&q8, 3), 1);
    }

    #[test]
    fn s3_value_set_is_a3() {
        let s3 = build("symmetric:3");
        let sets = commutator_value_sets(&s3, 2);
        let values: Vec<usize> = (0..6).filter(|&x| sets[1][x]).collect();
        assert_eq!(values.len(), 3);
        assert!(values.iter().all(|&x| s3.element_order(x) != 2));
    }

    #[test]
    fn lower_central_series_examples() {
        let t = build("cyclic:1");
        let series = lower_central_series(&t);
        assert_eq!(series.len(), 1);
        assert!(series[0].is_trivial());
        assert_eq!(nilpotency_class(&t).class, Some(0));

        let s3 = build("symmetric:3");
        let orders: Vec<usize> = lower_central_series(&s3)
            .iter()
            .map(Subgroup::order)
            .collect();
        assert_eq!(orders, vec![6, 3]);
        assert_eq!(
            nilpotency_class(&s3),
            Nilpotency {
                nilpotent: false,
                class: None
            }
        );

        let q8 = build("quaternion:8");
        let series = lower_central_series(&q8);
        let members: Vec<Vec<usize>> = series.iter().map(|s| s.members().to_vec()).collect();
        assert_eq!(members, vec![(0..8).collect(), vec![0, 1], vec![0]]);
        assert_eq!(nilpotency_class(&q8).class, Some(2));

        assert_eq!(nilpotency_class(&build("cyclic:2")).class, Some(1));
    }

    #[test]
    fn generated_subgroups() {
        let s3 = build("symmetric:3");
        assert_eq!(Subgroup::generated(&s3, &[]).order(), 1);
        assert_eq!(Subgroup::generated(&s3, &[2]).order(), 3);
        assert_eq!(Subgroup::generated(&s3, &[1, 2]).order(), 6);
        let sub = Subgroup::generated(&s3, &[2]);
        for &a in sub.members() {
            assert!(sub.contains(s3.inv(a)));
            for &b in sub.members() {
                assert!(sub.contains(s3.mul(a, b)));
            }
        }
    }
}
