use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A point of `(ℝ/ℤ)^n` with rational coordinates, each stored in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<BigRational>,
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl TorusPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        Self {
            coords: coords.iter().map(frac).collect(),
        }
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(coords: &[(i64, i64)]) -> Self {
        Self::new(
            coords
                .iter()
                .map(|&(p, q)| BigRational::new(p.into(), q.into()))
                .collect(),
        )
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            coords: vec![BigRational::zero(); dim],
        }
    }

    /// Every coordinate equal to `value` (mod 1).
    pub fn constant(dim: usize, value: BigRational) -> Self {
        Self::new(vec![value; dim])
    }

    /// `direction * scalar`, reduced mod 1.
    pub fn along(direction: &[BigInt], scalar: &BigRational) -> Self {
        Self::new(
            direction
                .iter()
                .map(|x| BigRational::from_integer(x.clone()) * scalar)
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let k = BigRational::from_integer(k.clone());
        Self::new(self.coords.iter().map(|a| a * &k).collect())
    }

    /// Order in the torus: the lcm of the coordinate denominators.
    pub fn order(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Image of the point under the integer weight matrix `m` (rows = output
    /// coordinates, columns = parameters of `self`).
    pub fn image_under(&self, m: &IntMatrix) -> Result<Self> {
        let rat = m.to_rational();
        Ok(Self::new(rat.mul_vec(&self.coords)?))
    }

    /// Whether `form · self ≡ 0 (mod 1)`.
    pub fn satisfies_relation(&self, form: &[i64]) -> bool {
        if form.len() != self.dim() {
            return false;
        }
        let s: BigRational = form
            .iter()
            .zip(&self.coords)
            .map(|(&a, c)| BigRational::from_integer(a.into()) * c)
            .sum();
        s.is_integer()
    }

    /// Coordinates in `(-1/2, 1/2]`.
    pub fn centered(&self) -> Vec<BigRational> {
        let half = BigRational::new(1.into(), 2.into());
        self.coords
            .iter()
            .map(|c| if *c > half { c - BigRational::one() } else { c.clone() })
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(ToString::to_string).collect()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// A closed subgroup of `(ℝ/ℤ)^rank`: the group generated by finitely many
/// torsion points together with the one-parameter subgroups `s ↦ s·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusSubgroup {
    pub rank: usize,
    pub torsion_generators: Vec<TorusPoint>,
    /// Primitive integer vectors.
    pub subtorus_directions: Vec<Vec<BigInt>>,
    /// Elementary divisors of the congruence system that produced the group.
    pub elementary_divisors: Vec<BigInt>,
}

impl TorusSubgroup {
    pub fn trivial(rank: usize) -> Self {
        Self {
            rank,
            torsion_generators: Vec::new(),
            subtorus_directions: Vec::new(),
            elementary_divisors: Vec::new(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.subtorus_directions.is_empty()
    }

    /// All elements of the finite group generated by the torsion generators,
    /// sorted. The subtorus part is not included.
    pub fn torsion_elements(&self) -> Vec<TorusPoint> {
        let mut seen: HashSet<TorusPoint> = HashSet::new();
        let zero = TorusPoint::zero(self.rank);
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(p) = frontier.pop() {
            for g in &self.torsion_generators {
                let q = p.add(g);
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        let sorted: BTreeSet<TorusPoint> = seen.into_iter().collect();
        sorted.into_iter().collect()
    }
}

/// Generators of `{ s ∈ (ℝ/ℤ)^r : M·s ∈ ℤ^m }` for an `m × r` integer matrix.
///
/// With `U·M·V = D`, the substitution `s = V·s'` turns the system into
/// `d_i·s'_i ∈ ℤ`; each `d_i > 1` contributes the generator `V·e_i / d_i`
/// and each free coordinate the direction `V·e_i`.
pub fn solve_torus_congruence(m: &IntMatrix) -> TorusSubgroup {
    let r = m.cols();
    let snf = smith_normal_form(m);
    let diag = snf.diagonal();
    let mut torsion_generators = Vec::new();
    let mut subtorus_directions = Vec::new();
    for i in 0..r {
        let column = snf.v.column(i);
        match diag.get(i).filter(|d| !d.is_zero()) {
            Some(d) if d.is_one() => {}
            Some(d) => torsion_generators.push(TorusPoint::along(
                &column,
                &BigRational::new(BigInt::one(), d.clone()),
            )),
            None => subtorus_directions.push(column),
        }
    }
    TorusSubgroup {
        rank: r,
        torsion_generators,
        subtorus_directions,
        elementary_divisors: snf.elementary_divisors(),
    }
}

/// A particular solution of `M·s ≡ c (mod ℤ^m)`, if any exists.
///
/// Solvable iff `(U·c)_i ∈ ℤ` for every row `i` beyond the rank of `M`.
pub fn solve_affine_congruence(m: &IntMatrix, c: &[BigRational]) -> Result<Option<TorusPoint>> {
    if c.len() != m.rows() {
        return Err(Error::Dimension {
            expected: m.rows(),
            got: c.len(),
        });
    }
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let uc = snf.u.to_rational().mul_vec(c)?;
    if uc[rank..].iter().any(|x| !x.is_integer()) {
        return Ok(None);
    }
    let diag = snf.diagonal();
    let s: Vec<BigRational> = (0..m.cols())
        .map(|i| {
            if i < rank {
                &uc[i] / BigRational::from_integer(diag[i].clone())
            } else {
                BigRational::zero()
            }
        })
        .collect();
    let t = snf.v.to_rational().mul_vec(&s)?;
    Ok(Some(TorusPoint::new(t)))
}

/// Whether the subgroup `s` lies inside a subgroup `K` given by membership
/// tests. `K` must be closed under addition; then containment holds iff every
/// generator of `s` lies in `K`.
pub fn subgroup_contained_in(
    s: &TorusSubgroup,
    contains_point: impl Fn(&TorusPoint) -> bool,
    contains_direction: impl Fn(&[BigInt]) -> bool,
) -> bool {
    s.torsion_generators.iter().all(contains_point)
        && s.subtorus_directions.iter().all(|v| contains_direction(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn points_are_canonical_mod_one() {
        let a = TorusPoint::new(vec![q(-1, 3), q(7, 2)]);
        assert_eq!(a, TorusPoint::from_fractions(&[(2, 3), (1, 2)]));
        assert_eq!(a.order(), BigInt::from(6));
        assert_eq!(a.centered(), vec![q(-1, 3), q(1, 2)]);
        assert_eq!(a.to_string(), "(2/3, 1/2)");
    }

    #[test]
    fn congruence_two_s() {
        let s = solve_torus_congruence(&IntMatrix::from_rows(&[[2]]));
        assert_eq!(s.torsion_generators, vec![TorusPoint::from_fractions(&[(1, 2)])]);
        assert!(s.subtorus_directions.is_empty());
    }

    #[test]
    fn empty_constraint_is_full_torus() {
        let s = solve_torus_congruence(&IntMatrix::zeros(1, 2));
        assert!(s.torsion_generators.is_empty());
        let dirs: BTreeSet<Vec<BigInt>> = s.subtorus_directions.iter().cloned().collect();
        let expected: BTreeSet<Vec<BigInt>> = [vec![1, 0], vec![0, 1]]
            .iter()
            .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(dirs, expected);
    }

    #[test]
    fn diagonal_line() {
        // s1 - s2 ∈ ℤ: the diagonal circle, nothing else.
        let m = IntMatrix::from_rows(&[[1, -1]]);
        let s = solve_torus_congruence(&m);
        assert!(s.torsion_generators.is_empty());
        assert_eq!(s.subtorus_directions.len(), 1);
        let v = &s.subtorus_directions[0];
        assert_eq!(v[0].clone() - v[1].clone(), BigInt::zero());
        // every point with denominator ≤ 12 on the diagonal is a solution and
        // nothing off the diagonal is
        for n in 1..=12i64 {
            for a in 0..n {
                for b in 0..n {
                    let p = TorusPoint::from_fractions(&[(a, n), (b, n)]);
                    let in_m = p.image_under(&m).unwrap().is_zero();
                    assert_eq!(in_m, p.coords()[0] == p.coords()[1]);
                }
            }
        }
    }

    #[test]
    fn affine_congruence() {
        let m = IntMatrix::from_rows(&[[2], [0]]);
        let sol = solve_affine_congruence(&m, &[q(1, 2), q(0, 1)]).unwrap().unwrap();
        assert_eq!(sol.image_under(&m).unwrap(), TorusPoint::from_fractions(&[(1, 2), (0, 1)]));
        assert!(solve_affine_congruence(&m, &[q(0, 1), q(1, 2)]).unwrap().is_none());
        // 2s ≡ 1/2 and 2s ≡ 0 is inconsistent, 2s ≡ 1/2 and 4s ≡ 0 is not
        let m = IntMatrix::from_rows(&[[2], [4]]);
        let sol = solve_affine_congruence(&m, &[q(1, 2), q(0, 1)]).unwrap().unwrap();
        assert_eq!(sol.image_under(&m).unwrap(), TorusPoint::from_fractions(&[(1, 2), (0, 1)]));
        let m = IntMatrix::from_rows(&[[2], [2]]);
        assert!(solve_affine_congruence(&m, &[q(1, 2), q(0, 1)]).unwrap().is_none());
    }

    #[test]
    fn containment_checks_generators() {
        let trivial = TorusSubgroup::trivial(1);
        assert!(subgroup_contained_in(&trivial, |p| p.is_zero(), |_| false));
        let halves = solve_torus_congruence(&IntMatrix::from_rows(&[[2]]));
        assert!(!subgroup_contained_in(&halves, |p| p.is_zero(), |_| false));
        assert!(subgroup_contained_in(&halves, |p| p.order() <= BigInt::from(2), |_| false));
    }

    #[test]
    fn torsion_elements_enumerates_the_group() {
        let s = solve_torus_congruence(&IntMatrix::from_rows(&[[2, 0], [0, 3]]));
        assert_eq!(s.torsion_elements().len(), 6);
    }
}
