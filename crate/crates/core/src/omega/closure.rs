//! Exact `Omega_d(G)` as the size of the subgroup of `G^(G^d)` generated by
//! the coordinate projections.
//!
//! A word map is a pointwise product of projections and their inverses, so
//! the set of word maps is exactly that subgroup. Tables are stored
//! back-to-back in one arena and deduplicated through a content-hashed index.

use std::hash::{BuildHasher, BuildHasherDefault, DefaultHasher};
use std::thread;

use hashbrown::HashTable;

use super::OmegaError;
use crate::group::FiniteGroup;
use crate::word::{table_len, DEFAULT_TABLE_CAP};

/// Default cap on the number of distinct tables in a closure.
pub const DEFAULT_CLOSURE_CAP: u64 = 1_000_000;

/// Frontier tables expanded per batch; bounds the memory held by candidates.
const BATCH: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureOptions {
    /// Cap on `|G|^d`.
    pub table_cap: usize,
    /// Cap on the number of distinct word maps.
    pub closure_cap: u64,
    /// Threads used to expand the frontier. The result does not depend on it.
    pub workers: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            table_cap: DEFAULT_TABLE_CAP,
            closure_cap: DEFAULT_CLOSURE_CAP,
            workers: 1,
        }
    }
}

type Hasher = BuildHasherDefault<DefaultHasher>;

struct TableSet {
    len: usize,
    arena: Vec<u16>,
    index: HashTable<u32>,
    hasher: Hasher,
}

impl TableSet {
    fn new(len: usize) -> Self {
        TableSet {
            len,
            arena: Vec::new(),
            index: HashTable::new(),
            hasher: Hasher::default(),
        }
    }

    fn count(&self) -> usize {
        self.index.len()
    }

    fn get(&self, id: usize) -> &[u16] {
        &self.arena[id * self.len..(id + 1) * self.len]
    }

    fn hash(&self, t: &[u16]) -> u64 {
        self.hasher.hash_one(t)
    }

    fn contains(&self, hash: u64, t: &[u16]) -> bool {
        self.index
            .find(hash, |&id| self.get(id as usize) == t)
            .is_some()
    }

    /// Inserts `t` unless present; returns whether it was new.
    fn insert(&mut self, hash: u64, t: &[u16]) -> bool {
        if self.contains(hash, t) {
            return false;
        }
        let id = self.count() as u32;
        self.arena.extend_from_slice(t);
        let (arena, len, hasher) = (&self.arena, self.len, &self.hasher);
        self.index.insert_unique(hash, id, |&other| {
            let o = other as usize;
            hasher.hash_one(&arena[o * len..(o + 1) * len])
        });
        true
    }
}

/// Projection `(g_1, ..., g_d) -> g_v` and its pointwise inverse.
fn projection_tables(g: &FiniteGroup, d: usize, len: usize) -> Vec<Vec<u16>> {
    let n = g.order();
    let mut gens = Vec::with_capacity(2 * d);
    for v in 0..d {
        let stride = n.pow(v as u32);
        let proj: Vec<u16> = (0..len).map(|idx| ((idx / stride) % n) as u16).collect();
        let inv: Vec<u16> = proj.iter().map(|&x| g.inv(x as usize) as u16).collect();
        gens.push(proj);
        gens.push(inv);
    }
    gens
}

fn expand(
    g: &FiniteGroup,
    set: &TableSet,
    ids: std::ops::Range<usize>,
    gens: &[Vec<u16>],
) -> Vec<(u64, Vec<u16>)> {
    let mut out = Vec::new();
    let mut buf = vec![0u16; set.len];
    for id in ids {
        let t = set.get(id);
        for s in gens {
            for ((b, &x), &y) in buf.iter_mut().zip(t).zip(s) {
                *b = g.mul(x as usize, y as usize) as u16;
            }
            let h = set.hash(&buf);
            if !set.contains(h, &buf) {
                out.push((h, buf.clone()));
            }
        }
    }
    out
}

/// Exact number of word maps `G^d -> G`.
///
/// Breadth-first closure from the constant-identity table under pointwise
/// right multiplication by the projections and their inverses. New tables
/// are inserted in frontier order, so the discovered set (and, when the cap
/// is hit, the partial count) is the same for every worker count.
pub fn omega_exact(g: &FiniteGroup, d: usize, options: &ClosureOptions) -> Result<u64, OmegaError> {
    let n = g.order();
    if n > u16::MAX as usize + 1 {
        return Err(OmegaError::GroupTooLarge(n));
    }
    let len = table_len(n, d, options.table_cap).map_err(|_| OmegaError::TableCapExceeded {
        order: n,
        d,
        cap: options.table_cap,
    })?;
    let gens = projection_tables(g, d, len);
    let mut set = TableSet::new(len);
    let identity = vec![0u16; len];
    let h = set.hash(&identity);
    set.insert(h, &identity);
    let workers = options.workers.max(1);

    let mut head = 0;
    while head < set.count() {
        let end = set.count().min(head + BATCH);
        let candidates: Vec<(u64, Vec<u16>)> = if workers == 1 || end - head < 2 * workers {
            expand(g, &set, head..end, &gens)
        } else {
            let chunk = (end - head).div_ceil(workers);
            let set_ref = &set;
            let gens_ref = &gens;
            thread::scope(|scope| {
                let handles: Vec<_> = (head..end)
                    .step_by(chunk)
                    .map(|lo| {
                        let hi = (lo + chunk).min(end);
                        scope.spawn(move || expand(g, set_ref, lo..hi, gens_ref))
                    })
                    .collect();
                handles
                    .into_iter()
                    .flat_map(|h| h.join().expect("closure worker panicked"))
                    .collect()
            })
        };
        head = end;
        for (h, t) in candidates {
            if set.insert(h, &t) && set.count() as u64 > options.closure_cap {
                return Err(OmegaError::ClosureCapExceeded {
                    partial: set.count() as u64,
                    cap: options.closure_cap,
                });
            }
        }
    }
    Ok(set.count() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{parse_builtin, GroupOptions};

    fn group(spec: &str) -> FiniteGroup {
        parse_builtin(spec, &GroupOptions::default()).unwrap()
    }

    #[test]
    fn small_closures() {
        let opts = ClosureOptions::default();
        let z2 = group("cyclic:2");
        assert_eq!(omega_exact(&z2, 0, &opts).unwrap(), 1);
        assert_eq!(omega_exact(&z2, 2, &opts).unwrap(), 4);
        assert_eq!(omega_exact(&z2, 3, &opts).unwrap(), 8);
        assert_eq!(omega_exact(&group("cyclic:6"), 1, &opts).unwrap(), 6);
        assert_eq!(omega_exact(&group("symmetric:3"), 1, &opts).unwrap(), 6);
        assert_eq!(omega_exact(&group("cyclic:1"), 4, &opts).unwrap(), 1);
    }

    #[test]
    fn caps() {
        let s3 = group("symmetric:3");
        let capped = ClosureOptions {
            closure_cap: 100,
            ..ClosureOptions::default()
        };
        assert_eq!(
            omega_exact(&s3, 2, &capped),
            Err(OmegaError::ClosureCapExceeded {
                partial: 101,
                cap: 100
            })
        );
        let tiny = ClosureOptions {
            table_cap: 10,
            ..ClosureOptions::default()
        };
        assert!(matches!(
            omega_exact(&s3, 2, &tiny),
            Err(OmegaError::TableCapExceeded { .. })
        ));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let s3 = group("symmetric:3");
        let one = ClosureOptions::default();
        let four = ClosureOptions { workers: 4, ..one };
        assert_eq!(omega_exact(&s3, 2, &one), omega_exact(&s3, 2, &four));
        let capped1 = ClosureOptions {
            closure_cap: 5000,
            ..one
        };
        let capped4 = ClosureOptions {
            workers: 4,
            ..capped1
        };
        assert_eq!(omega_exact(&s3, 3, &capped1), omega_exact(&s3, 3, &capped4));
    }
}
