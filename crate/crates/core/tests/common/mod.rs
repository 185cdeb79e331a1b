//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the solver or the Weyl group code of the library: groups are rebuilt from
//! scratch and torus points are handled as integer numerators over a fixed
//! denominator `N`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use biquotient::linalg::{IntMatrix, TorusSubgroup};
use biquotient::weyl::GroupKind;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    a.lcm(&b)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign_vectors(n: usize) -> Vec<Vec<i64>> {
    (0..1u32 << n)
        .map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
        .collect()
}

/// A group of torus symmetries `x ↦ (s_i x_{σ(i)})_i` with a center test.
pub struct GroupOracle {
    pub kind: GroupKind,
    pub dim: usize,
    pub elements: Vec<(Vec<usize>, Vec<i64>)>,
}

impl GroupOracle {
    pub fn new(kind: GroupKind) -> Self {
        let (dim, elements) = match kind {
            GroupKind::Su4 => (4, permutations(4).into_iter().map(|p| (p, vec![1; 4])).collect()),
            GroupKind::So7 => {
                let mut v = Vec::new();
                for p in permutations(3) {
                    for s in sign_vectors(3) {
                        v.push((p.clone(), s));
                    }
                }
                (3, v)
            }
            GroupKind::Spin7 => {
                // Even sign changes keep us in SO(8); the element must map
                // the Spin(7) torus, cut out by x1 - x2 + x3 - x4 = 0, to
                // itself.
                let l = [1i64, -1, 1, -1];
                let mut v = Vec::new();
                for p in permutations(4) {
                    for s in sign_vectors(4) {
                        if s.iter().product::<i64>() != 1 {
                            continue;
                        }
                        let mut form = [0i64; 4];
                        for i in 0..4 {
                            form[p[i]] += l[i] * s[i];
                        }
                        let neg = l.map(|x| -x);
                        if form == l || form == neg {
                            v.push((p.clone(), s));
                        }
                    }
                }
                (4, v)
            }
        };
        Self { kind, dim, elements }
    }

    pub fn act(&self, e: &(Vec<usize>, Vec<i64>), x: &[i64], n: i64) -> Vec<i64> {
        (0..self.dim)
            .map(|i| (e.1[i] * x[e.0[i]]).rem_euclid(n))
            .collect()
    }

    fn invariant(&self, x: &[i64], n: i64) -> Vec<i64> {
        let mut v: Vec<i64> = match self.kind {
            GroupKind::Su4 => x.iter().map(|a| a.rem_euclid(n)).collect(),
            _ => x
                .iter()
                .map(|a| {
                    let r = a.rem_euclid(n);
                    r.min(n - r)
                })
                .collect(),
        };
        v.sort_unstable();
        v
    }

    pub fn conjugate(&self, a: &[i64], b: &[i64], n: i64) -> bool {
        if self.invariant(a, n) != self.invariant(b, n) {
            return false;
        }
        let b: Vec<i64> = b.iter().map(|x| x.rem_euclid(n)).collect();
        self.elements.iter().any(|e| self.act(e, a, n) == b)
    }

    pub fn central(&self, a: &[i64], n: i64) -> bool {
        let a: Vec<i64> = a.iter().map(|x| x.rem_euclid(n)).collect();
        match self.kind {
            GroupKind::So7 => a.iter().all(|&x| x == 0),
            GroupKind::Spin7 => {
                a.iter().all(|&x| x == 0) || (n % 2 == 0 && a.iter().all(|&x| x == n / 2))
            }
            GroupKind::Su4 => a.iter().all(|&x| x == a[0]) && (4 * a[0]) % n == 0,
        }
    }
}

pub fn image(rows: &[Vec<i64>], t: &[i64], n: i64) -> Vec<i64> {
    rows.iter()
        .map(|r| r.iter().zip(t).map(|(a, b)| a * b).sum::<i64>().rem_euclid(n))
        .collect()
}

/// Points of `((1/n)ℤ/ℤ)^r`, as numerators, in lexicographic order.
pub fn grid(r: usize, n: i64) -> impl Iterator<Item = Vec<i64>> {
    let total = (n as u64).pow(r as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; r];
        for x in v.iter_mut().rev() {
            *x = (k % n as u64) as i64;
            k /= n as u64;
        }
        v
    })
}

/// First point of the grid where `f₁(t)` and `f₂(t)` are conjugate but not
/// equal and central, if any.
pub fn brute_force_violation(
    g: &GroupOracle,
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    r: usize,
    n: i64,
) -> Option<Vec<i64>> {
    grid(r, n).find(|t| {
        let (x, y) = (image(a, t, n), image(b, t, n));
        g.conjugate(&x, &y, n) && !(x == y && g.central(&x, n))
    })
}

pub fn i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_i64().unwrap()).collect())
        .collect()
}

pub fn rows_to_matrix(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

/// Every grid point of denominator `n` with `M t ∈ ℤ^m`.
pub fn congruence_points(m: &[Vec<i64>], r: usize, n: i64) -> BTreeSet<Vec<i64>> {
    grid(r, n).filter(|t| image(m, t, n).iter().all(Zero::is_zero)).collect()
}

/// The points of denominator `n` in a solver-produced subgroup, generated
/// from its torsion elements and subtorus directions.
pub fn subgroup_points(s: &TorusSubgroup, n: i64) -> BTreeSet<Vec<i64>> {
    let r = s.rank;
    let nb = BigInt::from(n);
    let mut base = BTreeSet::new();
    for p in s.torsion_elements() {
        let v: Vec<i64> = p
            .coords()
            .iter()
            .map(|c| {
                let x = c * num_rational::BigRational::from_integer(nb.clone());
                assert!(x.is_integer(), "torsion element {p} not on the grid of {n}");
                x.to_integer().to_i64().unwrap()
            })
            .collect();
        base.insert(v);
    }
    let dirs: Vec<Vec<i64>> = s
        .subtorus_directions
        .iter()
        .map(|v| v.iter().map(|x| x.to_i64().unwrap()).collect())
        .collect();
    let mut out = base;
    for d in &dirs {
        let mut next = BTreeSet::new();
        for p in &out {
            for c in 0..n {
                next.insert((0..r).map(|i| (p[i] + c * d[i]).rem_euclid(n)).collect::<Vec<_>>());
            }
        }
        out = next;
    }
    out
}

/// Nonzero diagonal entries of a Smith form, as `i64`.
pub fn nonzero(divisors: &[BigInt]) -> Vec<i64> {
    divisors
        .iter()
        .filter(|d| !d.is_zero())
        .map(|d| d.abs().to_i64().unwrap())
        .collect()
}

/// gcd of all `k × k` minors, computed by cofactor expansion.
pub fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i64 {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut g = 0i64;
    for rs in combinations(rows, k) {
        for cs in combinations(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g.abs()
}

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}
