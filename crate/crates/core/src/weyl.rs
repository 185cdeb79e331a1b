//! Torus coordinates, centers and Weyl groups of `SU(4)`, `SO(7)` and
//! `Spin(7)`.
//!
//! * `SU(4)`: four exponents `(x₁, …, x₄)` with `Σ xᵢ ≡ 0`; the Weyl group is
//!   `S₄` acting by permutation.
//! * `SO(7)`: three rotation angles; the Weyl group is every signed
//!   permutation of them.
//! * `Spin(7)`: the four `SO(8)` angles `θ` of `R(θ₁, …, θ₄)` restricted to
//!   `θ₁ − θ₂ + θ₃ − θ₄ ≡ 0`. Conjugacy in `Spin(7)` is conjugacy under the
//!   elements of `W_SO(8)` (permutations with an even number of sign
//!   changes) that preserve this sublattice.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, TorusPoint};
use crate::Check;

/// `x ↦ (s₁·x_{σ(1)}, …, s_m·x_{σ(m)})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let m = perm.len();
        if signs.len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: signs.len(),
            });
        }
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        if distinct.len() != m || perm.iter().any(|&p| p >= m) {
            return Err(Error::Shape(format!("{perm:?} is not a permutation")));
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Shape(format!("signs {signs:?} must be ±1")));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            perm: (0..m).collect(),
            signs: vec![1; m],
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.degree())
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s < 0).count()
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        let perm = self.perm.iter().map(|&i| other.perm[i]).collect();
        let signs = (0..self.degree())
            .map(|i| self.signs[i] * other.signs[self.perm[i]])
            .collect();
        Self { perm, signs }
    }

    pub fn inverse(&self) -> Self {
        let m = self.degree();
        let mut perm = vec![0; m];
        for (i, &p) in self.perm.iter().enumerate() {
            perm[p] = i;
        }
        let signs = perm.iter().map(|&i| self.signs[i]).collect();
        Self { perm, signs }
    }

    pub fn apply_vec<T: Clone + std::ops::Neg<Output = T>>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.degree());
        (0..self.degree())
            .map(|i| {
                let v = x[self.perm[i]].clone();
                if self.signs[i] < 0 {
                    -v
                } else {
                    v
                }
            })
            .collect()
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        TorusPoint::new(self.apply_vec(p.coords()))
    }

    /// `W·A`: row `i` of the result is `sᵢ` times row `σ(i)` of `a`.
    pub fn apply_rows(&self, a: &IntMatrix) -> IntMatrix {
        assert_eq!(a.rows(), self.degree());
        IntMatrix::from_fn(a.rows(), a.cols(), |i, j| {
            let v = a.get(self.perm[i], j).clone();
            if self.signs[i] < 0 {
                -v
            } else {
                v
            }
        })
    }

    pub fn matrix(&self) -> IntMatrix {
        self.apply_rows(&IntMatrix::identity(self.degree()))
    }

    /// The form `ℓ ∘ w`, i.e. the coefficients of `x ↦ ℓ·(w·x)`.
    pub fn pull_back(&self, form: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.degree()];
        for i in 0..self.degree() {
            out[self.perm[i]] += form[i] * i64::from(self.signs[i]);
        }
        out
    }

    /// Whether `w` maps the sublattice `ℓ·x ≡ 0` onto itself.
    pub fn preserves_relation(&self, form: &[i64]) -> bool {
        let pulled = self.pull_back(form);
        let negated: Vec<i64> = form.iter().map(|x| -x).collect();
        pulled == form || pulled == negated
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.degree())
            .map(|i| {
                let sign = if self.signs[i] < 0 { "-" } else { "" };
                format!("{sign}x{}", self.perm[i] + 1)
            })
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..m {
        for rest in permutations(m - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

fn sign_patterns(m: usize) -> Vec<Vec<i8>> {
    (0..1usize << m)
        .map(|bits| {
            (0..m)
                .map(|i| if bits >> (m - 1 - i) & 1 == 1 { -1 } else { 1 })
                .collect()
        })
        .collect()
}

/// All `2^m · m!` signed permutations: permutations in lexicographic order,
/// and within each the sign patterns with `+1` before `−1`, last position
/// varying fastest.
pub fn hyperoctahedral(m: usize) -> Vec<SignedPermutation> {
    let signs = sign_patterns(m);
    permutations(m)
        .into_iter()
        .flat_map(|p| {
            signs.iter().map(move |s| SignedPermutation {
                perm: p.clone(),
                signs: s.clone(),
            })
        })
        .collect()
}

/// `W_SO(8)`: signed permutations of four angles with an even number of
/// sign changes (192 elements).
pub fn so8_weyl() -> Vec<SignedPermutation> {
    hyperoctahedral(4)
        .into_iter()
        .filter(|w| w.negative_count() % 2 == 0)
        .collect()
}

/// Number of distinct sublattices `ℓ∘w⁻¹ ≡ 0` for `w ∈ W_SO(8)`.
pub fn orbit_of_relation(form: &[i64]) -> usize {
    let images: HashSet<Vec<i64>> = so8_weyl()
        .iter()
        .map(|w| {
            let img = w.inverse().pull_back(form);
            let neg: Vec<i64> = img.iter().map(|x| -x).collect();
            img.max(neg)
        })
        .collect();
    images.len()
}

/// Closure of `gens` under composition.
pub fn generated_subgroup(gens: &[SignedPermutation]) -> Vec<SignedPermutation> {
    let Some(first) = gens.first() else {
        return Vec::new();
    };
    let id = SignedPermutation::identity(first.degree());
    let mut seen: BTreeSet<SignedPermutation> = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Su4,
    So7,
    Spin7,
}

impl GroupKind {
    pub const ALL: [GroupKind; 3] = [GroupKind::Su4, GroupKind::So7, GroupKind::Spin7];

    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Su4 => "su4",
            GroupKind::So7 => "so7",
            GroupKind::Spin7 => "spin7",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GroupKind::Su4 => "SU(4)",
            GroupKind::So7 => "SO(7)",
            GroupKind::Spin7 => "Spin(7)",
        }
    }

    pub fn model(self) -> &'static GroupModel {
        static MODELS: [OnceLock<GroupModel>; 3] = [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        let idx = self as usize;
        MODELS[idx].get_or_init(|| build_group_model(self))
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.display_name())
    }
}

impl FromStr for GroupKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su4" => Ok(GroupKind::Su4),
            "so7" => Ok(GroupKind::So7),
            "spin7" => Ok(GroupKind::Spin7),
            _ => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

/// Torus coordinates, Weyl group and center of one of the target groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupModel {
    pub kind: GroupKind,
    pub angle_count: usize,
    pub weyl: Vec<SignedPermutation>,
    pub center: Vec<TorusPoint>,
    /// Integer form every torus point satisfies mod 1, if any.
    pub relation: Option<Vec<i64>>,
}

pub fn build_group_model(kind: GroupKind) -> GroupModel {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match kind {
        GroupKind::Su4 => GroupModel {
            kind,
            angle_count: 4,
            weyl: permutations(4)
                .into_iter()
                .map(|p| SignedPermutation {
                    perm: p,
                    signs: vec![1; 4],
                })
                .collect(),
            center: (0..4).map(|k| TorusPoint::constant(4, q(k, 4))).collect(),
            relation: Some(vec![1, 1, 1, 1]),
        },
        GroupKind::So7 => GroupModel {
            kind,
            angle_count: 3,
            weyl: hyperoctahedral(3),
            center: vec![TorusPoint::zero(3)],
            relation: None,
        },
        GroupKind::Spin7 => {
            let relation = crate::spin::SPIN7_RELATION.to_vec();
            GroupModel {
                kind,
                angle_count: 4,
                weyl: so8_weyl()
                    .into_iter()
                    .filter(|w| w.preserves_relation(&relation))
                    .collect(),
                center: vec![TorusPoint::zero(4), TorusPoint::constant(4, q(1, 2))],
                relation: Some(relation),
            }
        }
    }
}

impl GroupModel {
    pub fn satisfies_relation(&self, p: &TorusPoint) -> bool {
        p.dim() == self.angle_count
            && self.relation.as_ref().is_none_or(|r| p.satisfies_relation(r))
    }

    /// Whether every column of the weight matrix satisfies the relation
    /// exactly (not just mod 1).
    pub fn weights_satisfy_relation(&self, a: &IntMatrix) -> bool {
        if a.rows() != self.angle_count {
            return false;
        }
        let Some(r) = &self.relation else {
            return true;
        };
        (0..a.cols()).all(|j| {
            let s: BigInt = (0..a.rows()).map(|i| a.get(i, j) * BigInt::from(r[i])).sum();
            s == BigInt::from(0)
        })
    }

    pub fn is_central(&self, p: &TorusPoint) -> bool {
        self.center.contains(p)
    }

    fn check_point(&self, p: &TorusPoint) -> Result<()> {
        if p.dim() != self.angle_count {
            return Err(Error::Dimension {
                expected: self.angle_count,
                got: p.dim(),
            });
        }
        if !self.satisfies_relation(p) {
            return Err(Error::RelationViolated {
                group: self.kind.display_name().into(),
                point: p.to_string(),
            });
        }
        Ok(())
    }

    /// The first Weyl element (in model order) with `w·a = b`, if any.
    pub fn torus_conjugate(&self, a: &TorusPoint, b: &TorusPoint) -> Result<Option<SignedPermutation>> {
        self.check_point(a)?;
        self.check_point(b)?;
        Ok(self.weyl.iter().find(|w| w.apply(a) == *b).cloned())
    }
}

pub fn torus_conjugate(
    model: &GroupModel,
    a: &TorusPoint,
    b: &TorusPoint,
) -> Result<Option<SignedPermutation>> {
    model.torus_conjugate(a, b)
}

/// The three elements of `W_SO(8)` realising the generators of the `Spin(7)`
/// Weyl group: swap `θ₂, θ₃` negating both; swap `θ₁, θ₃`; and
/// `(θ₁ θ₂)(θ₃ θ₄)`.
pub fn spin7_weyl_generators() -> [SignedPermutation; 3] {
    [
        SignedPermutation {
            perm: vec![0, 2, 1, 3],
            signs: vec![1, -1, -1, 1],
        },
        SignedPermutation {
            perm: vec![2, 1, 0, 3],
            signs: vec![1; 4],
        },
        SignedPermutation {
            perm: vec![1, 0, 3, 2],
            signs: vec![1; 4],
        },
    ]
}

fn is_closed(weyl: &[SignedPermutation]) -> bool {
    let set: HashSet<&SignedPermutation> = weyl.iter().collect();
    weyl.iter()
        .all(|a| set.contains(&a.inverse()) && weyl.iter().all(|b| set.contains(&a.compose(b))))
}

/// Group-theoretic checks on the three models.
pub fn verify_weyl() -> Vec<Check> {
    let mut out = Vec::new();
    let so8 = so8_weyl();
    out.push(Check::new("|W_SO(8)| = 192", so8.len() == 192, so8.len().to_string()));
    for (kind, expected) in [(GroupKind::Spin7, 48), (GroupKind::So7, 48), (GroupKind::Su4, 24)] {
        let n = kind.model().weyl.len();
        out.push(Check::new(
            format!("|W| = {expected} for {kind}"),
            n == expected,
            n.to_string(),
        ));
    }
    let orbit = orbit_of_relation(&crate::spin::SPIN7_RELATION);
    out.push(Check::new(
        "orbit of the Spin(7) torus under W_SO(8) has 4 elements",
        orbit == 4 && orbit * GroupKind::Spin7.model().weyl.len() == so8.len(),
        orbit.to_string(),
    ));
    let generated: BTreeSet<SignedPermutation> = generated_subgroup(&spin7_weyl_generators())
        .into_iter()
        .collect();
    let stabilizer: BTreeSet<SignedPermutation> =
        GroupKind::Spin7.model().weyl.iter().cloned().collect();
    out.push(Check::new(
        "named generators generate the full stabilizer",
        generated == stabilizer,
        generated.len().to_string(),
    ));
    for kind in GroupKind::ALL {
        let m = kind.model();
        out.push(Check::new(
            format!("{kind} Weyl group is closed"),
            is_closed(&m.weyl),
            String::new(),
        ));
        let centre_ok = m
            .weyl
            .iter()
            .all(|w| m.center.iter().all(|c| m.is_central(&w.apply(c))));
        let relation_ok = m
            .relation
            .as_ref()
            .is_none_or(|r| m.weyl.iter().all(|w| w.preserves_relation(r)));
        out.push(Check::new(
            format!("{kind} Weyl group preserves center and torus relation"),
            centre_ok && relation_ok,
            String::new(),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sp(perm: &[usize], signs: &[i8]) -> SignedPermutation {
        SignedPermutation::new(perm.to_vec(), signs.to_vec()).unwrap()
    }

    #[test]
    fn all_checks_pass() {
        for c in verify_weyl() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_of_relation(&[1, -1, 1, -1]), 4);
        assert_eq!(orbit_of_relation(&[0, 0, 0, 0]), 1);
        // θ₁ ≡ 0 can be moved to any single coordinate
        assert_eq!(orbit_of_relation(&[1, 0, 0, 0]), 4);
    }

    #[test]
    fn action_and_composition() {
        let w = sp(&[1, 0, 2], &[-1, 1, 1]);
        assert_eq!(w.apply_vec(&[1i64, 2, 3]), vec![-2, 1, 3]);
        let v = sp(&[2, 1, 0], &[1, -1, 1]);
        let x = [5i64, 7, 11];
        assert_eq!(w.compose(&v).apply_vec(&x), w.apply_vec(&v.apply_vec(&x)));
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.matrix().mul_vec(&x.map(BigInt::from)).unwrap(), w.apply_vec(&x.map(BigInt::from)));
    }

    #[test]
    fn conjugacy_examples() {
        let so7 = GroupKind::So7.model();
        let a = TorusPoint::from_fractions(&[(1, 2), (0, 1), (0, 1)]);
        let b = TorusPoint::from_fractions(&[(0, 1), (1, 2), (0, 1)]);
        let w = so7.torus_conjugate(&a, &b).unwrap().unwrap();
        assert_eq!(w.perm(), &[1, 0, 2]);
        for kind in GroupKind::ALL {
            let m = kind.model();
            let z = TorusPoint::zero(m.angle_count);
            assert!(m.torus_conjugate(&z, &z).unwrap().unwrap().is_identity());
        }
    }

    #[test]
    fn spin7_conjugacy_at_one_third() {
        let spin = GroupKind::Spin7.model();
        let a = TorusPoint::from_fractions(&[(0, 1), (1, 3), (1, 3), (0, 1)]);
        let b = TorusPoint::from_fractions(&[(-1, 3), (0, 1), (0, 1), (-1, 3)]);
        let w = spin.torus_conjugate(&a, &b).unwrap().unwrap();
        assert_eq!(w, sp(&[1, 0, 3, 2], &[-1, -1, -1, -1]));
        assert_eq!(w.to_string(), "(-x2, -x1, -x4, -x3)");
    }

    #[test]
    fn relation_violation_is_an_error() {
        let spin = GroupKind::Spin7.model();
        let bad = TorusPoint::from_fractions(&[(1, 3), (0, 1), (0, 1), (0, 1)]);
        let z = TorusPoint::zero(4);
        assert!(matches!(
            spin.torus_conjugate(&bad, &z),
            Err(Error::RelationViolated { .. })
        ));
    }

    #[test]
    fn parse_group_names() {
        assert_eq!("SPIN7".parse::<GroupKind>().unwrap(), GroupKind::Spin7);
        assert!(matches!("g2".parse::<GroupKind>(), Err(Error::UnknownGroup(_))));
    }

    fn point(m: usize) -> impl Strategy<Value = TorusPoint> {
        proptest::collection::vec((0i64..12, 1i64..13), m)
            .prop_map(|v| TorusPoint::from_fractions(&v))
    }

    proptest! {
        #[test]
        fn conjugacy_is_symmetric(a in point(3), b in point(3)) {
            let so7 = GroupKind::So7.model();
            let ab = so7.torus_conjugate(&a, &b).unwrap();
            let ba = so7.torus_conjugate(&b, &a).unwrap();
            prop_assert_eq!(ab.is_some(), ba.is_some());
            if let Some(w) = ab {
                prop_assert_eq!(w.inverse().apply(&b), a);
            }
        }

        #[test]
        fn weyl_orbit_of_self(a in point(3), i in 0usize..48) {
            let so7 = GroupKind::So7.model();
            let w = &so7.weyl[i];
            let b = w.apply(&a);
            prop_assert!(so7.torus_conjugate(&a, &b).unwrap().is_some());
        }

        #[test]
        fn composition_is_associative(i in 0usize..48, j in 0usize..48, k in 0usize..48) {
            let w = &GroupKind::Spin7.model().weyl;
            prop_assert_eq!(w[i].compose(&w[j]).compose(&w[k]), w[i].compose(&w[j].compose(&w[k])));
        }
    }
}
