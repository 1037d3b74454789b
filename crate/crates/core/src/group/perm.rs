use std::fmt;

use super::{bfs_closure, FiniteGroup, GroupError, GroupOptions};

/// A permutation of `{1, ..., m}` stored 0-based as an image vector.
///
/// Permutations act on the right: `a * b` means "apply `a`, then `b`".
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// From 0-based images. Fails unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(GroupError::PermutationSyntax(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Pads with fixed points up to `degree`.
    pub fn extended(&self, degree: usize) -> Self {
        let mut images = self.images.clone();
        images.extend(images.len() as u32..degree as u32);
        Permutation { images }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    /// Tabulates the group generated by `generators`.
    ///
    /// Elements are indexed in breadth-first discovery order starting from the
    /// identity, with generators tried in the given order. All generators must
    /// have the same degree.
    pub fn tabulate_generated(
        generators: &[Permutation],
        options: &GroupOptions,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = generators.first().map_or(0, |g| g.degree());
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch(degree, g.degree()));
        }
        let elements = bfs_closure(
            Permutation::identity(degree),
            generators,
            Permutation::then,
            options.order_cap,
        )?;
        let names = elements.iter().map(|p| p.to_string()).collect();
        Ok(FiniteGroup::tabulate(
            &elements,
            Permutation::then,
            None,
            Some(names),
        ))
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation on 1-based points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
                first = false;
                x = self.images[x] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
///
/// Points are 1-based; commas may separate points. The degree of the result
/// is the largest point mentioned.
pub fn parse_cycles(text: &str) -> Result<Permutation, GroupError> {
    let err = || GroupError::PermutationSyntax(text.to_string());
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_start = rest.strip_prefix('(').ok_or_else(err)?;
        let close = body_start.find(')').ok_or_else(err)?;
        let body = &body_start[..close];
        let cycle = body
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().ok().filter(|&p| p >= 1).ok_or_else(err))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
        rest = body_start[close + 1..].trim_start();
    }
    let degree = cycles.iter().flatten().copied().max().unwrap_or(0);
    let mut images: Vec<u32> = (0..degree as u32).collect();
    let mut touched = vec![false; degree];
    for cycle in &cycles {
        for (k, &p) in cycle.iter().enumerate() {
            if touched[p - 1] {
                return Err(err());
            }
            touched[p - 1] = true;
            images[p - 1] = (cycle[(k + 1) % cycle.len()] - 1) as u32;
        }
    }
    Ok(Permutation { images })
}

impl FiniteGroup {
    /// Group generated by permutations given in cycle notation. Generators of
    /// smaller degree are padded with fixed points.
    pub fn from_permutation_generators(
        generators: &[Permutation],
        options: &GroupOptions,
    ) -> Result<FiniteGroup, GroupError> {
        let degree = generators.iter().map(|g| g.degree()).max().unwrap_or(0);
        let padded: Vec<Permutation> = generators.iter().map(|g| g.extended(degree)).collect();
        Permutation::tabulate_generated(&padded, options)
    }
}
