//! Homomorphisms `SU(2) → G` and `SU(2)² → G` up to equivalence, and the
//! weight matrices of their restrictions to maximal tori.
//!
//! A representation is a multiset of irreducibles `φ_i` (dimension `i+1`)
//! or `φ_ij = φ_i ⊗ φ_j` (dimension `(i+1)(j+1)`). The maximal torus of
//! `SU(2)` acts on `φ_i` with weights `i, i−2, …, −i`.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::spin::{SO8_TO_SO7, SPIN_TO_SO8};
use crate::weyl::GroupKind;

/// An irreducible representation of `SU(2)` or `SU(2)²`.
pub trait Irrep: Copy + Ord + fmt::Debug {
    /// Number of torus parameters of the source group.
    const PARAMS: usize;
    fn dim(&self) -> u32;
    fn is_symplectic(&self) -> bool;
    /// Torus weights, with multiplicity.
    fn weights(&self) -> Vec<Vec<i64>>;
    fn notation(&self) -> String;
    /// Ordering used when printing a sum of irreducibles.
    fn print_key(&self) -> (u32, Reverse<u32>);
}

/// `φ_i`, the irreducible representation of dimension `i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Su2Irrep(pub u32);

/// `φ_ij = φ_i ⊗ φ_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Su2xSu2Irrep(pub u32, pub u32);

fn string_weights(i: u32) -> Vec<i64> {
    let i = i64::from(i);
    (0..=i).map(|k| i - 2 * k).collect()
}

impl Irrep for Su2Irrep {
    const PARAMS: usize = 1;
    fn dim(&self) -> u32 {
        self.0 + 1
    }
    fn is_symplectic(&self) -> bool {
        self.0 % 2 == 1
    }
    fn weights(&self) -> Vec<Vec<i64>> {
        string_weights(self.0).into_iter().map(|a| vec![a]).collect()
    }
    fn notation(&self) -> String {
        format!("phi{}", self.0)
    }
    fn print_key(&self) -> (u32, Reverse<u32>) {
        (self.0, Reverse(self.0))
    }
}

impl Su2xSu2Irrep {
    pub fn swapped(self) -> Self {
        Self(self.1, self.0)
    }
}

impl Irrep for Su2xSu2Irrep {
    const PARAMS: usize = 2;
    fn dim(&self) -> u32 {
        (self.0 + 1) * (self.1 + 1)
    }
    fn is_symplectic(&self) -> bool {
        (self.0 + self.1) % 2 == 1
    }
    fn weights(&self) -> Vec<Vec<i64>> {
        let b = string_weights(self.1);
        string_weights(self.0)
            .into_iter()
            .flat_map(|a| b.iter().map(move |&b| vec![a, b]))
            .collect()
    }
    fn notation(&self) -> String {
        format!("phi{}{}", self.0, self.1)
    }
    fn print_key(&self) -> (u32, Reverse<u32>) {
        (self.0 + self.1, Reverse(self.0))
    }
}

/// Whether a representation is asked to land in `SO(n)` or `SU(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Complex,
    Orthogonal,
}

/// A finite sum of irreducibles with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepMultiset<I: Irrep> {
    terms: BTreeMap<I, u32>,
}

pub type Su2Rep = RepMultiset<Su2Irrep>;
pub type Su2xSu2Rep = RepMultiset<Su2xSu2Irrep>;

impl<I: Irrep> RepMultiset<I> {
    pub fn new(terms: impl IntoIterator<Item = (I, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (irrep, m) in terms {
            if m > 0 {
                *map.entry(irrep).or_insert(0) += m;
            }
        }
        Self { terms: map }
    }

    pub fn terms(&self) -> impl Iterator<Item = (I, u32)> + '_ {
        self.terms.iter().map(|(i, m)| (*i, *m))
    }

    pub fn multiplicity(&self, irrep: I) -> u32 {
        self.terms.get(&irrep).copied().unwrap_or(0)
    }

    pub fn dim(&self) -> u32 {
        self.terms.iter().map(|(i, m)| i.dim() * m).sum()
    }

    /// Every symplectic constituent occurs with even multiplicity.
    pub fn is_orthogonal(&self) -> bool {
        self.terms.iter().all(|(i, m)| !i.is_symplectic() || m % 2 == 0)
    }

    /// Every orthogonal constituent occurs with even multiplicity.
    pub fn is_symplectic(&self) -> bool {
        self.terms.iter().all(|(i, m)| i.is_symplectic() || m % 2 == 0)
    }

    pub fn admits(&self, flavor: Flavor) -> bool {
        flavor == Flavor::Complex || self.is_orthogonal()
    }

    /// All torus weights with multiplicity.
    pub fn weights(&self) -> Vec<Vec<i64>> {
        self.terms
            .iter()
            .flat_map(|(i, m)| (0..*m).flat_map(move |_| i.weights()))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights().iter().all(|w| w.iter().all(|&x| x == 0))
    }
}

impl<I: Irrep> fmt::Display for RepMultiset<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(I, u32)> = self.terms().collect();
        terms.sort_by_key(|(i, _)| i.print_key());
        let parts: Vec<String> = terms
            .iter()
            .map(|(i, m)| {
                if *m == 1 {
                    i.notation()
                } else {
                    format!("{m}{}", i.notation())
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl<I: Irrep> Serialize for RepMultiset<I> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Su2xSu2Rep {
    /// The representation with the two `SU(2)` factors interchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.terms().map(|(i, m)| (i.swapped(), m)))
    }

    /// Canonical representative up to swapping the factors: the one whose
    /// constituents, read as `(j, i)` and sorted descending, come first.
    pub fn canonical(&self) -> Self {
        let key = |r: &Self| {
            let mut v: Vec<(u32, u32, u32)> = r.terms().map(|(x, m)| (x.1, x.0, m)).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        let s = self.swapped();
        if key(&s) > key(self) {
            s
        } else {
            self.clone()
        }
    }

    /// Finite kernel iff both factors act nontrivially.
    pub fn has_finite_kernel(&self) -> bool {
        self.terms().any(|(x, _)| x.0 > 0) && self.terms().any(|(x, _)| x.1 > 0)
    }
}

/// Partitions of `n` into parts from `parts` (largest first), as
/// multiplicity vectors aligned with `parts`.
fn partitions_into(n: u32, parts: &[u32]) -> Vec<Vec<u32>> {
    fn go(n: u32, parts: &[u32], acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let Some((&p, rest)) = parts.split_first() else {
            if n == 0 {
                out.push(acc.clone());
            }
            return;
        };
        for m in (0..=n / p).rev() {
            acc.push(m);
            go(n - m * p, rest, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(n, parts, &mut Vec::new(), &mut out);
    out
}

fn enumerate<I: Irrep>(irreps: &[I], n: u32, flavor: Flavor) -> Vec<RepMultiset<I>> {
    let dims: Vec<u32> = irreps.iter().map(Irrep::dim).collect();
    partitions_into(n, &dims)
        .into_iter()
        .map(|mult| RepMultiset::new(irreps.iter().copied().zip(mult)))
        .filter(|r| r.admits(flavor))
        .collect()
}

/// Multiplicity vector `(m₀, m₁, …)`, used to order `SU(2)` representations.
fn su2_order_key(r: &Su2Rep, n: u32) -> Vec<Reverse<u32>> {
    (0..n).map(|i| Reverse(r.multiplicity(Su2Irrep(i)))).collect()
}

/// All `n`-dimensional representations of `SU(2)` of the given flavor,
/// ordered by decreasing multiplicity of `φ₀`, then of `φ₁`, and so on.
pub fn enumerate_su2(n: u32, flavor: Flavor) -> Vec<Su2Rep> {
    let irreps: Vec<Su2Irrep> = (0..n).rev().map(Su2Irrep).collect();
    let mut out = enumerate(&irreps, n, flavor);
    out.sort_by_key(|r| su2_order_key(r, n));
    out
}

pub fn enumerate_su2_orthogonal(n: u32) -> Vec<Su2Rep> {
    enumerate_su2(n, Flavor::Orthogonal)
}

pub fn enumerate_su2_complex(n: u32) -> Vec<Su2Rep> {
    enumerate_su2(n, Flavor::Complex)
}

/// All `n`-dimensional representations of `SU(2)²` of the given flavor, up
/// to swapping the factors (canonical representatives), sorted.
pub fn enumerate_su2xsu2(n: u32, flavor: Flavor, finite_kernel_only: bool) -> Vec<Su2xSu2Rep> {
    let mut irreps = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if (i + 1) * (j + 1) <= n {
                irreps.push(Su2xSu2Irrep(i, j));
            }
        }
    }
    irreps.sort_by_key(|x| Reverse(x.dim()));
    let mut out: Vec<Su2xSu2Rep> = enumerate(&irreps, n, flavor)
        .into_iter()
        .filter(|r| !finite_kernel_only || r.has_finite_kernel())
        .map(|r| r.canonical())
        .collect();
    out.sort_by_key(|r| {
        let mut v: Vec<(u32, Reverse<u32>, Reverse<u32>)> =
            r.terms().map(|(x, m)| (x.0 + x.1, Reverse(x.0), Reverse(m))).collect();
        v.sort();
        (Reverse(r.multiplicity(Su2xSu2Irrep(0, 0))), v)
    });
    out.dedup();
    out
}

pub fn enumerate_su2xsu2_orthogonal(n: u32, finite_kernel_only: bool) -> Vec<Su2xSu2Rep> {
    enumerate_su2xsu2(n, Flavor::Orthogonal, finite_kernel_only)
}

/// Integer weight matrix of a homomorphism restricted to the torus: row `i`
/// gives angle coordinate `i` of the target torus as a combination of the
/// source torus parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusMap {
    pub group: GroupKind,
    pub weights: IntMatrix,
}

impl TorusMap {
    pub fn new(group: GroupKind, weights: IntMatrix) -> Result<Self> {
        let m = group.model();
        if weights.rows() != m.angle_count {
            return Err(Error::Dimension {
                expected: m.angle_count,
                got: weights.rows(),
            });
        }
        if !m.weights_satisfy_relation(&weights) {
            return Err(Error::RelationViolated {
                group: group.display_name().into(),
                point: format!("weight matrix\n{weights}"),
            });
        }
        Ok(Self { group, weights })
    }

    pub fn from_rows<R: AsRef<[i64]>>(group: GroupKind, rows: &[R]) -> Result<Self> {
        Self::new(group, IntMatrix::from_rows(rows))
    }

    pub fn trivial(group: GroupKind, params: usize) -> Self {
        Self {
            group,
            weights: IntMatrix::zeros(group.model().angle_count, params),
        }
    }

    pub fn params(&self) -> usize {
        self.weights.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.weights.is_zero()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        self.weights.to_i64_rows().expect("small weights")
    }

    /// Precompose with a linear map of source tori: `weights · sub`.
    pub fn substitute(&self, sub: &IntMatrix) -> Result<Self> {
        Ok(Self {
            group: self.group,
            weights: self.weights.checked_mul(sub)?,
        })
    }

    /// Restriction of a two-parameter map to one of the three `SU(2)`
    /// subgroups.
    pub fn restrict(&self, which: Restriction) -> Result<Self> {
        if self.params() != 2 {
            return Err(Error::Dimension {
                expected: 2,
                got: self.params(),
            });
        }
        self.substitute(&IntMatrix::from_rows(&[which.embedding()]).transpose())
    }

    /// Projection of a `Spin(7)` map to `SO(7)` weights.
    pub fn to_so7(&self) -> Result<Self> {
        match self.group {
            GroupKind::So7 => Ok(self.clone()),
            GroupKind::Spin7 => Ok(Self {
                group: GroupKind::So7,
                weights: IntMatrix::from_rows(&SO8_TO_SO7).checked_mul(&self.weights)?,
            }),
            GroupKind::Su4 => Err(Error::GroupMismatch("SU(4)".into(), "SO(7)".into())),
        }
    }
}

impl fmt::Display for TorusMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = ["t", "u"];
        let coords: Vec<String> = self
            .rows_i64()
            .iter()
            .map(|row| linear_form(row, &vars))
            .collect();
        let head = match self.group {
            GroupKind::Su4 => "diag",
            _ => "R",
        };
        write!(f, "{head}({})", coords.join(", "))
    }
}

/// `2t-u`-style rendering of an integer linear form.
pub fn linear_form(row: &[i64], vars: &[&str]) -> String {
    let mut s = String::new();
    for (&c, v) in row.iter().zip(vars) {
        if c == 0 {
            continue;
        }
        if c < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if c.abs() != 1 {
            s.push_str(&c.abs().to_string());
        }
        s.push_str(v);
    }
    if s.is_empty() {
        "0".into()
    } else {
        s
    }
}

/// Which `SU(2)` inside `SU(2)²` a map is restricted to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Restriction {
    /// First factor (`φ = 0`).
    Left,
    /// Second factor (`θ = 0`).
    Right,
    /// Diagonal (`θ = φ`).
    Diagonal,
}

impl Restriction {
    pub const ALL: [Restriction; 3] = [Restriction::Left, Restriction::Right, Restriction::Diagonal];

    fn embedding(self) -> [i64; 2] {
        match self {
            Restriction::Left => [1, 0],
            Restriction::Right => [0, 1],
            Restriction::Diagonal => [1, 1],
        }
    }
}

fn sort_rows_desc(rows: &mut [Vec<i64>]) {
    rows.sort_unstable_by(|a, b| b.cmp(a));
}

fn lex_positive(w: &[i64]) -> bool {
    w.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

fn matrix_from_rows(rows: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i][j]))
}

/// Torus weights of a representation landing in `group`.
///
/// * `SO(7)`: the lexicographically positive half of the nonzero weights,
///   sorted descending and padded with zero rows to three rotation slots.
/// * `Spin(7)`: the lift of the `SO(7)` weights.
/// * `SU(4)`: all four exponents sorted descending.
pub fn torus_weights<I: Irrep>(rep: &RepMultiset<I>, group: GroupKind) -> Result<TorusMap> {
    let params = I::PARAMS;
    match group {
        GroupKind::Su4 => {
            if rep.dim() != 4 {
                return Err(Error::Dimension {
                    expected: 4,
                    got: rep.dim() as usize,
                });
            }
            let mut rows = rep.weights();
            sort_rows_desc(&mut rows);
            TorusMap::new(group, matrix_from_rows(&rows, params))
        }
        GroupKind::So7 | GroupKind::Spin7 => {
            if rep.dim() != 7 {
                return Err(Error::Dimension {
                    expected: 7,
                    got: rep.dim() as usize,
                });
            }
            if !rep.is_orthogonal() {
                return Err(Error::Parity(format!("{rep} is not orthogonal")));
            }
            let mut rows: Vec<Vec<i64>> = rep.weights().into_iter().filter(|w| lex_positive(w)).collect();
            sort_rows_desc(&mut rows);
            rows.resize(3, vec![0; params]);
            let so7 = TorusMap::new(GroupKind::So7, matrix_from_rows(&rows, params))?;
            if group == GroupKind::Spin7 {
                spin7_lift(&so7)
            } else {
                Ok(so7)
            }
        }
    }
}

/// The lift of an `SO(7)` torus map through `Spin(7) → SO(7)`: with
/// `(α, β, γ)` half the `SO(7)` angles, `θ = (α+β−γ, α−β−γ, α−β+γ, α+β+γ)`.
pub fn spin7_lift(so7: &TorusMap) -> Result<TorusMap> {
    if so7.group != GroupKind::So7 {
        return Err(Error::GroupMismatch(
            so7.group.display_name().into(),
            "SO(7)".into(),
        ));
    }
    let doubled = IntMatrix::from_rows(&SPIN_TO_SO8).checked_mul(&so7.weights)?;
    let two = BigInt::from(2);
    for j in 0..doubled.cols() {
        for i in 0..doubled.rows() {
            if !doubled.get(i, j).is_multiple_of(&two) {
                return Err(Error::NonIntegralLift(j.to_string()));
            }
        }
    }
    TorusMap::new(GroupKind::Spin7, doubled.map(|x| x / &two))
}

/// Named homomorphisms `SU(2) → SO(7)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Label {
    pub const ALL: [Label; 6] = [Label::A, Label::B, Label::C, Label::D, Label::E, Label::F];

    pub fn rep(self) -> Su2Rep {
        let t = |pairs: &[(u32, u32)]| Su2Rep::new(pairs.iter().map(|&(i, m)| (Su2Irrep(i), m)));
        match self {
            Label::A => t(&[(0, 4), (2, 1)]),
            Label::B => t(&[(0, 3), (1, 2)]),
            Label::C => t(&[(0, 2), (4, 1)]),
            Label::D => t(&[(0, 1), (2, 2)]),
            Label::E => t(&[(1, 2), (2, 1)]),
            Label::F => t(&[(6, 1)]),
        }
    }

    pub fn of_rep(rep: &Su2Rep) -> Option<Label> {
        Label::ALL.into_iter().find(|l| l.rep() == *rep)
    }

    pub fn letter(self) -> char {
        match self {
            Label::A => 'A',
            Label::B => 'B',
            Label::C => 'C',
            Label::D => 'D',
            Label::E => 'E',
            Label::F => 'F',
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Label::ALL
            .into_iter()
            .find(|l| s.len() == 1 && s.starts_with(l.letter()))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("unknown label `{s}`"),
            })
    }
}

/// Canonical `SO(7)` Weyl-invariant of a one-parameter map: absolute values
/// of the rotation weights, sorted descending.
fn so7_invariant(map: &TorusMap) -> Result<Vec<BigInt>> {
    let so7 = map.to_so7()?;
    let mut v: Vec<BigInt> = (0..3).map(|i| so7.weights.get(i, 0).abs()).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    Ok(v)
}

/// Identifies a one-parameter torus map with an `SU(2)` representation up to
/// Weyl equivalence. `None` for maps that are not the torus of any
/// representation.
pub fn identify_su2(map: &TorusMap) -> Result<Option<Su2Rep>> {
    if map.params() != 1 {
        return Err(Error::Dimension {
            expected: 1,
            got: map.params(),
        });
    }
    match map.group {
        GroupKind::Su4 => {
            let mut exps: Vec<BigInt> = (0..4).map(|i| map.weights.get(i, 0).clone()).collect();
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for rep in enumerate_su2_complex(4) {
                let t = torus_weights(&rep, GroupKind::Su4)?;
                if t.weights.column(0) == exps {
                    return Ok(Some(rep));
                }
            }
            Ok(None)
        }
        GroupKind::So7 | GroupKind::Spin7 => {
            let inv = so7_invariant(map)?;
            for rep in enumerate_su2_orthogonal(7) {
                if so7_invariant(&torus_weights(&rep, GroupKind::So7)?)? == inv {
                    return Ok(Some(rep));
                }
            }
            Ok(None)
        }
    }
}

/// The letter `A`–`F`, `trivial`, or the representation itself.
pub fn su2_name(rep: &Su2Rep) -> String {
    if rep.is_trivial() {
        return "trivial".into();
    }
    match Label::of_rep(rep) {
        Some(l) => l.to_string(),
        None => rep.to_string(),
    }
}

/// Restriction of a two-parameter map, identified as an `SU(2)` map.
pub fn restrict_su2xsu2(map: &TorusMap, which: Restriction) -> Result<(TorusMap, Option<Su2Rep>)> {
    let r = map.restrict(which)?;
    let id = identify_su2(&r)?;
    Ok((r, id))
}

/// Weight matrix of `proj_k ∘ ρ` for a one-parameter map `ρ`: the weights of
/// `ρ` in column `k` (0 or 1), zero in the other.
pub fn projection_map(map: &TorusMap, factor: usize) -> Result<TorusMap> {
    let mut e = [0i64; 2];
    e[factor] = 1;
    map.substitute(&IntMatrix::from_rows(&[e]))
}

pub fn is_zero_column(m: &IntMatrix, j: usize) -> bool {
    (0..m.rows()).all(|i| m.get(i, j).is_zero())
}
