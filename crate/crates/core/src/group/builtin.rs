//! Named families of small groups.

use std::fmt;
use std::str::FromStr;

use super::perm::Permutation;
use super::{FiniteGroup, GroupError, GroupOptions};

fn check_cap(order: u128, options: &GroupOptions) -> Result<usize, GroupError> {
    if order > options.order_cap as u128 {
        return Err(GroupError::OrderLimitExceeded {
            cap: options.order_cap,
            reached: order.min(usize::MAX as u128) as usize,
        });
    }
    Ok(order as usize)
}

/// Cyclic group of order `n`, element `k` standing for `a^k`.
pub fn cyclic(n: usize, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "cyclic group of order 0".into(),
        ));
    }
    check_cap(n as u128, options)?;
    let mut mult = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            mult[a * n + b] = ((a + b) % n) as u32;
        }
    }
    Ok(FiniteGroup::from_raw(n, mult, Some(format!("C{n}")), None))
}

/// Dihedral group of order `2n`: symmetries of a regular `n`-gon.
///
/// Element `r^a s^b` sits at index `a + n*b`.
pub fn dihedral(n: usize, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidParameter(
            "dihedral group of a 0-gon".into(),
        ));
    }
    let order = check_cap(2 * n as u128, options)?;
    let mut mult = vec![0u32; order * order];
    for x in 0..order {
        let (a1, b1) = (x % n, x / n);
        for y in 0..order {
            let (a2, b2) = (y % n, y / n);
            let a = if b1 == 0 { a1 + a2 } else { a1 + n - a2 } % n;
            mult[x * order + y] = (a + n * (b1 ^ b2)) as u32;
        }
    }
    let names = (0..order)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "1".to_string(),
            (a, 0) => format!("r^{a}"),
            (0, _) => "s".to_string(),
            (a, _) => format!("r^{a}s"),
        })
        .collect();
    Ok(FiniteGroup::from_raw(
        order,
        mult,
        Some(format!("D{n}")),
        Some(names),
    ))
}

/// Symmetric group on `n` points, generated by `(1 2)` and `(1 2 ... n)`.
pub fn symmetric(n: usize, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > 6 {
        return Err(GroupError::InvalidParameter(format!(
            "symmetric:{n} (supported degrees are 1..=6)"
        )));
    }
    let mut generators = Vec::new();
    if n >= 2 {
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        generators.push(Permutation::from_images(swap)?);
    }
    if n >= 3 {
        let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
        generators.push(Permutation::from_images(cycle)?);
    }
    let g = Permutation::tabulate_generated(&generators, options)?;
    Ok(g.with_label(format!("S{n}")))
}

/// Quaternion group of order 8: `1, -1, i, -i, j, -j, k, -k` in that order.
pub fn quaternion(options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    check_cap(8, options)?;
    // unit index 0..4 = 1, i, j, k; products as (sign flip, unit)
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let elements: Vec<(bool, usize)> = (0..8).map(|x| (x % 2 == 1, x / 2)).collect();
    let compose = |a: &(bool, usize), b: &(bool, usize)| {
        let (flip, unit) = UNIT[a.1][b.1];
        (a.0 ^ b.0 ^ flip, unit)
    };
    let names = elements
        .iter()
        .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, ["1", "i", "j", "k"][u]))
        .collect();
    Ok(FiniteGroup::tabulate(
        &elements,
        compose,
        Some("Q8".into()),
        Some(names),
    ))
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| p % q != 0)
}

/// Upper unitriangular `k x k` matrices over the field with `p` elements.
///
/// Elements are indexed by their strictly-upper entries read row by row, the
/// first entry least significant, so the identity matrix is index 0.
pub fn unitriangular(k: usize, p: u64, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    if k < 2 {
        return Err(GroupError::InvalidParameter(format!(
            "unitriangular size {k} < 2"
        )));
    }
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let slots = k * (k - 1) / 2;
    let order = (p as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    let n = check_cap(order, options)?;
    let model = super::UnitriangularMatrices::new(k, p)?;
    let elements: Vec<Vec<u32>> = (0..n)
        .map(|mut idx| {
            let mut entries = Vec::with_capacity(slots);
            for _ in 0..slots {
                entries.push((idx as u64 % p) as u32);
                idx /= p as usize;
            }
            model.from_entries(&entries)
        })
        .collect();
    Ok(FiniteGroup::tabulate(
        &elements,
        |a, b| super::GroupOps::mul(&model, a, b),
        Some(format!("UT({k},{p})")),
        None,
    ))
}

/// A parsed builtin group description such as `cyclic:2xcyclic:4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuiltinSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion,
    Unitriangular(usize, u64),
    Product(Vec<BuiltinSpec>),
}

impl FromStr for BuiltinSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        let s = s.trim();
        let s = s.strip_prefix("builtin:").unwrap_or(s);
        let factors: Vec<&str> = s.split('x').map(str::trim).collect();
        if factors.len() > 1 {
            return factors
                .iter()
                .map(|f| f.parse())
                .collect::<Result<Vec<_>, _>>()
                .map(BuiltinSpec::Product);
        }
        let unknown = || GroupError::UnknownBuiltin(s.to_string());
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<u64, GroupError> {
            parts
                .get(i)
                .and_then(|t| t.parse().ok())
                .ok_or_else(unknown)
        };
        let spec = match parts[0] {
            "cyclic" if parts.len() == 2 => BuiltinSpec::Cyclic(num(1)? as usize),
            "dihedral" if parts.len() == 2 => BuiltinSpec::Dihedral(num(1)? as usize),
            "symmetric" if parts.len() == 2 => BuiltinSpec::Symmetric(num(1)? as usize),
            "quaternion" if parts.len() == 2 && num(1)? == 8 => BuiltinSpec::Quaternion,
            "unitriangular" if parts.len() == 3 => {
                BuiltinSpec::Unitriangular(num(1)? as usize, num(2)?)
            }
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}

impl fmt::Display for BuiltinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            BuiltinSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            BuiltinSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            BuiltinSpec::Quaternion => write!(f, "quaternion:8"),
            BuiltinSpec::Unitriangular(k, p) => write!(f, "unitriangular:{k}:{p}"),
            BuiltinSpec::Product(fs) => {
                for (i, x) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

impl BuiltinSpec {
    pub fn build(&self, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
        match self {
            BuiltinSpec::Cyclic(n) => cyclic(*n, options),
            BuiltinSpec::Dihedral(n) => dihedral(*n, options),
            BuiltinSpec::Symmetric(n) => symmetric(*n, options),
            BuiltinSpec::Quaternion => quaternion(options),
            BuiltinSpec::Unitriangular(k, p) => unitriangular(*k, *p, options),
            BuiltinSpec::Product(fs) => {
                let mut it = fs.iter();
                let first = it
                    .next()
                    .ok_or_else(|| GroupError::UnknownBuiltin(String::new()))?;
                let mut acc = first.build(options)?;
                for f in it {
                    acc = acc.direct_product(&f.build(options)?, options)?;
                }
                Ok(acc)
            }
        }
    }
}

/// Parses and builds a builtin spec; the `builtin:` prefix is optional.
pub fn parse_builtin(spec: &str, options: &GroupOptions) -> Result<FiniteGroup, GroupError> {
    let parsed: BuiltinSpec = spec.parse()?;
    let g = parsed.build(options)?;
    Ok(g.with_label(parsed.to_string()))
}

/// The groups exercised by library-wide property checks.
pub fn builtin_library() -> Vec<BuiltinSpec> {
    use BuiltinSpec::*;
    vec![
        Cyclic(1),
        Cyclic(2),
        Cyclic(3),
        Cyclic(4),
        Cyclic(6),
        Product(vec![Cyclic(2), Cyclic(4)]),
        Product(vec![Cyclic(2), Cyclic(2), Cyclic(2)]),
        Dihedral(3),
        Dihedral(4),
        Dihedral(5),
        Dihedral(8),
        Symmetric(3),
        Symmetric(4),
        Quaternion,
        Product(vec![Quaternion, Cyclic(3)]),
        Product(vec![Symmetric(3), Cyclic(2)]),
        Unitriangular(2, 3),
        Unitriangular(3, 2),
        Unitriangular(3, 3),
        Unitriangular(4, 2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::nilpotency_class;

    fn opts() -> GroupOptions {
        GroupOptions::default()
    }

    fn assert_group_axioms(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, 0), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn builtin_families_satisfy_axioms() {
        for spec in [
            "cyclic:6",
            "dihedral:4",
            "dihedral:1",
            "dihedral:2",
            "symmetric:3",
            "quaternion:8",
            "unitriangular:3:3",
            "cyclic:2xcyclic:4",
        ] {
            let g = parse_builtin(spec, &opts()).unwrap();
            assert_group_axioms(&g);
        }
    }

    #[test]
    fn orders_and_exponents() {
        let cases = [
            ("cyclic:6", 6, 6),
            ("dihedral:4", 8, 4),
            ("dihedral:2", 4, 2),
            ("symmetric:3", 6, 6),
            ("symmetric:4", 24, 12),
            ("quaternion:8", 8, 4),
            ("unitriangular:3:3", 27, 3),
            ("unitriangular:3:2", 8, 4),
            ("cyclic:2xcyclic:4", 8, 4),
            ("symmetric:6", 720, 60),
        ];
        for (spec, order, exp) in cases {
            let g = parse_builtin(spec, &opts()).unwrap();
            assert_eq!((g.order(), g.exponent()), (order, exp), "{spec}");
        }
    }

    #[test]
    fn unitriangular_small_cases() {
        let g = unitriangular(2, 3, &opts()).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian());
        let g = unitriangular(3, 2, &opts()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(nilpotency_class(&g).class, Some(2));
        let g = unitriangular(4, 2, &opts()).unwrap();
        assert_eq!(g.order(), 64);
        assert_eq!(nilpotency_class(&g).class, Some(3));
    }

    #[test]
    fn unitriangular_rejects_bad_parameters() {
        assert_eq!(unitriangular(3, 4, &opts()), Err(GroupError::NotPrime(4)));
        assert!(matches!(
            unitriangular(4, 5, &opts()),
            Err(GroupError::OrderLimitExceeded { .. })
        ));
        assert!(matches!(
            unitriangular(1, 2, &opts()),
            Err(GroupError::InvalidParameter(_))
        ));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(
            "builtin:cyclic:2xcyclic:4".parse::<BuiltinSpec>().unwrap(),
            BuiltinSpec::Product(vec![BuiltinSpec::Cyclic(2), BuiltinSpec::Cyclic(4)])
        );
        assert_eq!(
            "unitriangular:3:2".parse::<BuiltinSpec>().unwrap(),
            BuiltinSpec::Unitriangular(3, 2)
        );
        assert!("quaternion:16".parse::<BuiltinSpec>().is_err());
        assert!("klein".parse::<BuiltinSpec>().is_err());
        assert!(parse_builtin("symmetric:7", &opts()).is_err());
        for spec in builtin_library() {
            assert_eq!(spec.to_string().parse::<BuiltinSpec>().unwrap(), spec);
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion(&opts()).unwrap();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(i, j), k);
        assert_eq!(q.mul(j, i), k + 1);
        assert_eq!(q.element_name(k + 1), "-k");
    }
}
