use super::builtin::is_prime;
use super::{GroupError, GroupOps};

/// Upper unitriangular matrices over `Z/p`, multiplied directly instead of
/// through a table. Used where the tabulated group would be too large
/// (e.g. `k = 4, p = 5` has order 15625).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnitriangularMatrices {
    size: usize,
    p: u64,
}

impl UnitriangularMatrices {
    pub fn new(size: usize, p: u64) -> Result<Self, GroupError> {
        if size < 2 {
            return Err(GroupError::InvalidParameter(format!(
                "unitriangular size {size} < 2"
            )));
        }
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        Ok(UnitriangularMatrices { size, p })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Number of free (strictly upper) entries.
    pub fn free_entries(&self) -> usize {
        self.size * (self.size - 1) / 2
    }

    /// Builds a row-major matrix from its strictly-upper entries read row by row.
    pub fn from_entries(&self, entries: &[u32]) -> Vec<u32> {
        assert_eq!(entries.len(), self.free_entries());
        let k = self.size;
        let mut m = vec![0u32; k * k];
        let mut it = entries.iter();
        for i in 0..k {
            m[i * k + i] = 1;
            for j in i + 1..k {
                m[i * k + j] = (*it.next().unwrap() as u64 % self.p) as u32;
            }
        }
        m
    }
}

impl GroupOps for UnitriangularMatrices {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        self.from_entries(&vec![0; self.free_entries()])
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let k = self.size;
        let mut out = vec![0u32; k * k];
        for i in 0..k {
            for j in i..k {
                let s: u64 = (i..=j)
                    .map(|t| a[i * k + t] as u64 * b[t * k + j] as u64)
                    .sum();
                out[i * k + j] = (s % self.p) as u32;
            }
        }
        out
    }

    fn inv(&self, a: &Vec<u32>) -> Vec<u32> {
        // Back substitution for x with a x = 1, column by column.
        let k = self.size;
        let p = self.p;
        let mut x = self.identity();
        for j in 0..k {
            for i in (0..j).rev() {
                let s: u64 = (i + 1..=j)
                    .map(|t| a[i * k + t] as u64 * x[t * k + j] as u64)
                    .sum::<u64>()
                    % p;
                x[i * k + j] = ((p - s) % p) as u32;
            }
        }
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_identity() {
        let g = UnitriangularMatrices::new(4, 5).unwrap();
        let a = g.from_entries(&[1, 2, 3, 4, 0, 2]);
        let b = g.inv(&a);
        assert_eq!(g.mul(&a, &b), g.identity());
        assert_eq!(g.mul(&b, &a), g.identity());
        assert_eq!(g.pow(&a, 5), g.identity());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(
            UnitriangularMatrices::new(3, 9),
            Err(GroupError::NotPrime(9))
        );
    }
}
