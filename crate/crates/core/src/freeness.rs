//! Deciding effective freeness of `u ∗ g = f₁(u) g f₂(u)⁻¹`.
//!
//! The action is effectively free iff whenever `f₁(t)` and `f₂(t)` are
//! conjugate for `t` in the maximal torus of `U`, they are equal and central.
//! With `A`, `B` the weight matrices of `f₁`, `f₂`, conjugacy is
//! `W·A·t ≡ B·t` for some Weyl element `W`, so the set of bad parameters for
//! a fixed `W` is the closed subgroup
//!
//! ```text
//! S_W = { t : (W·A − B)·t ∈ ℤ^m }
//! ```
//!
//! and the action is free iff every `S_W` lies in
//! `K = { t : A·t = B·t ∈ Z(G) }`. Since `K` is a subgroup, it suffices to
//! check generators of `S_W`. A subtorus direction `v` lies in `K` only if
//! `A·v = B·v = 0`: `s ↦ A·sv` is a connected path inside a finite center.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::display_string;
use crate::error::{Error, Result};
use crate::linalg::{
    solve_affine_congruence, solve_torus_congruence, subgroup_contained_in, IntMatrix, TorusPoint,
    TorusSubgroup,
};
use crate::reps::{identify_su2, su2_name, Restriction, TorusMap};
use crate::weyl::{GroupKind, GroupModel, SignedPermutation};

/// A pair of torus maps into the same group with the same source torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ActionSpec {
    pub group: GroupKind,
    pub left: TorusMap,
    pub right: TorusMap,
}

impl ActionSpec {
    pub fn new(left: TorusMap, right: TorusMap) -> Result<Self> {
        if left.group != right.group {
            return Err(Error::GroupMismatch(
                left.group.display_name().into(),
                right.group.display_name().into(),
            ));
        }
        if left.params() != right.params() {
            return Err(Error::ParamMismatch {
                left: left.params(),
                right: right.params(),
            });
        }
        Ok(Self {
            group: left.group,
            left,
            right,
        })
    }

    pub fn params(&self) -> usize {
        self.left.params()
    }

    pub fn model(&self) -> &'static GroupModel {
        self.group.model()
    }

    pub fn swapped(&self) -> Self {
        Self {
            group: self.group,
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// `(f₁(t), f₂(t))`.
    pub fn images(&self, t: &TorusPoint) -> Result<(TorusPoint, TorusPoint)> {
        Ok((
            t.image_under(&self.left.weights)?,
            t.image_under(&self.right.weights)?,
        ))
    }

    /// Whether `t` acts trivially on `G` in the sense of the criterion:
    /// `f₁(t) = f₂(t)` and central.
    pub fn in_kernel(&self, t: &TorusPoint) -> Result<bool> {
        let (a, b) = self.images(t)?;
        Ok(a == b && self.model().is_central(&a))
    }

    fn direction_in_kernel(&self, v: &[BigInt]) -> bool {
        let annihilates = |m: &IntMatrix| m.mul_vec(v).is_ok_and(|x| x.iter().all(Zero::is_zero));
        annihilates(&self.left.weights) && annihilates(&self.right.weights)
    }
}

/// A parameter `t` whose images are conjugate but not equal and central.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub point: TorusPoint,
    #[serde(serialize_with = "display_string")]
    pub order: BigInt,
    #[serde(serialize_with = "display_string")]
    pub weyl: SignedPermutation,
    pub left_image: TorusPoint,
    pub right_image: TorusPoint,
}

impl Witness {
    /// Re-checks the witness by direct evaluation, without any congruence
    /// solving: `w·f₁(t) = f₂(t)` and not `f₁(t) = f₂(t) ∈ Z(G)`.
    pub fn verify(&self, spec: &ActionSpec) -> bool {
        let Ok((a, b)) = spec.images(&self.point) else {
            return false;
        };
        a == self.left_image
            && b == self.right_image
            && self.weyl.degree() == a.dim()
            && spec.model().weyl.contains(&self.weyl)
            && self.weyl.apply(&a) == b
            && !(a == b && spec.model().is_central(&a))
            && self.point.order() == self.order
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum FreenessVerdict {
    Free,
    NotFree(Witness),
}

impl FreenessVerdict {
    pub fn is_free(&self) -> bool {
        matches!(self, FreenessVerdict::Free)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            FreenessVerdict::Free => None,
            FreenessVerdict::NotFree(w) => Some(w),
        }
    }
}

/// `S_W` for every Weyl element, in model order.
pub fn conjugacy_subgroups(spec: &ActionSpec) -> Vec<(SignedPermutation, TorusSubgroup)> {
    spec.model()
        .weyl
        .iter()
        .map(|w| {
            let m = w
                .apply_rows(&spec.left.weights)
                .checked_sub(&spec.right.weights)
                .expect("same shape");
            (w.clone(), solve_torus_congruence(&m))
        })
        .collect()
}

/// Some element of `S_W` outside `K`, if `S_W ⊄ K`.
fn failing_element(spec: &ActionSpec, s: &TorusSubgroup) -> Result<Option<TorusPoint>> {
    let point_ok = |p: &TorusPoint| spec.in_kernel(p).unwrap_or(false);
    if subgroup_contained_in(s, point_ok, |v| spec.direction_in_kernel(v)) {
        return Ok(None);
    }
    for g in &s.torsion_generators {
        if !spec.in_kernel(g)? {
            return Ok(Some(g.clone()));
        }
    }
    for v in &s.subtorus_directions {
        if spec.direction_in_kernel(v) {
            continue;
        }
        // K meets the circle through v in a finite cyclic group, so some
        // v/n with n ≥ 2 lies outside it.
        let mut n = 2i64;
        loop {
            let p = TorusPoint::along(v, &BigRational::new(BigInt::one(), n.into()));
            if !spec.in_kernel(&p)? {
                return Ok(Some(p));
            }
            n += 1;
        }
    }
    unreachable!("containment failed but every generator lies in K")
}

/// Decides effective freeness. A `NotFree` verdict carries the violating
/// parameter of least order (lexicographically least among those), with the
/// first Weyl element in model order that conjugates its images.
pub fn is_effectively_free(spec: &ActionSpec) -> Result<FreenessVerdict> {
    let mut bound: Option<TorusPoint> = None;
    for (_, s) in conjugacy_subgroups(spec) {
        if let Some(p) = failing_element(spec, &s)? {
            if bound.as_ref().is_none_or(|b| p.order() < b.order()) {
                bound = Some(p);
            }
        }
    }
    let Some(bound) = bound else {
        return Ok(FreenessVerdict::Free);
    };
    let point = minimal_violation(spec, &bound)?;
    let witness = make_witness(spec, point)?.expect("search returns violations only");
    Ok(FreenessVerdict::NotFree(witness))
}

/// Builds a witness at `t` if `t` is a violation.
pub fn make_witness(spec: &ActionSpec, point: TorusPoint) -> Result<Option<Witness>> {
    let (a, b) = spec.images(&point)?;
    let model = spec.model();
    if a == b && model.is_central(&a) {
        return Ok(None);
    }
    let Some(weyl) = model.torus_conjugate(&a, &b)? else {
        return Ok(None);
    };
    Ok(Some(Witness {
        order: point.order(),
        point,
        weyl,
        left_image: a,
        right_image: b,
    }))
}

/// Least violation by `(order, coordinates)`; `known` is a violation, so the
/// search over points of order `n = 1, 2, …` stops by `n = order(known)`.
fn minimal_violation(spec: &ActionSpec, known: &TorusPoint) -> Result<TorusPoint> {
    let r = spec.params();
    let limit = known.order().to_u64().unwrap_or(u64::MAX);
    let a = spec.left.rows_i64();
    let b = spec.right.rows_i64();
    let model = spec.model();
    for n in 1..=limit {
        let n_i = i64::try_from(n).expect("order fits in i64");
        let centre = centre_in_units(model, n_i);
        let mut c = vec![0i64; r];
        loop {
            let primitive = c.iter().fold(n_i, |g, &x| g.gcd(&x)) == 1;
            if primitive && violates_mod(&a, &b, &c, n_i, model, &centre) {
                let coords = c.iter().map(|&x| BigRational::new(x.into(), n_i.into())).collect();
                return Ok(TorusPoint::new(coords));
            }
            if !advance(&mut c, n_i) {
                break;
            }
        }
    }
    Ok(known.clone())
}

fn advance(c: &mut [i64], n: i64) -> bool {
    for x in c.iter_mut().rev() {
        *x += 1;
        if *x < n {
            return true;
        }
        *x = 0;
    }
    false
}

/// Center points with every coordinate a multiple of `1/n`, in units of
/// `1/n`.
fn centre_in_units(model: &GroupModel, n: i64) -> Vec<Vec<i64>> {
    let nq = BigRational::from_integer(n.into());
    model
        .center
        .iter()
        .filter_map(|p| {
            p.coords()
                .iter()
                .map(|c| {
                    let x = c * &nq;
                    x.is_integer().then(|| x.to_integer().to_i64().expect("small"))
                })
                .collect()
        })
        .collect()
}

fn violates_mod(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    c: &[i64],
    n: i64,
    model: &GroupModel,
    centre: &[Vec<i64>],
) -> bool {
    let image = |m: &[Vec<i64>]| -> Vec<i64> {
        m.iter()
            .map(|row| row.iter().zip(c).map(|(x, y)| x * y).sum::<i64>().rem_euclid(n))
            .collect()
    };
    let (ia, ib) = (image(a), image(b));
    if ia == ib && centre.contains(&ia) {
        return false;
    }
    model.weyl.iter().any(|w| {
        w.apply_vec(&ia)
            .iter()
            .zip(&ib)
            .all(|(x, y)| (x - y).rem_euclid(n) == 0)
    })
}

/// One of the three restrictions of a two-parameter action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictedPair {
    pub restriction: Restriction,
    pub left: String,
    pub right: String,
    pub verdict: FreenessVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneReport {
    pub restrictions: Vec<RestrictedPair>,
    /// Some restriction is not effectively free, so neither is the action.
    pub pruned: bool,
}

fn describe(map: &TorusMap) -> String {
    match identify_su2(map) {
        Ok(Some(rep)) => su2_name(&rep),
        _ => map.to_string(),
    }
}

/// Restricts a two-parameter action to the first factor, the second factor
/// and the diagonal, and decides each restricted `SU(2)` action. An action
/// all of whose restrictions are free may still fail to be free.
pub fn restriction_prune(spec: &ActionSpec) -> Result<PruneReport> {
    let mut restrictions = Vec::new();
    for which in Restriction::ALL {
        let s = ActionSpec::new(spec.left.restrict(which)?, spec.right.restrict(which)?)?;
        restrictions.push(RestrictedPair {
            restriction: which,
            left: describe(&s.left),
            right: describe(&s.right),
            verdict: is_effectively_free(&s)?,
        });
    }
    let pruned = restrictions.iter().any(|r| !r.verdict.is_free());
    Ok(PruneReport {
        restrictions,
        pruned,
    })
}

/// Whether the deck transformation `−I` of `Spin(7) → SO(7)` is hit on
/// one side while the other side is the identity, and the verdict for the
/// projected `SO(7)` action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentAnalysis {
    pub deck_in_image: bool,
    /// A parameter mapping to `(−I, I)` or `(I, −I)`.
    pub deck_point: Option<TorusPoint>,
    pub so7_verdict: FreenessVerdict,
}

pub fn descent_analysis(spec: &ActionSpec) -> Result<DescentAnalysis> {
    if spec.group != GroupKind::Spin7 {
        return Err(Error::GroupMismatch(
            spec.group.display_name().into(),
            "Spin(7)".into(),
        ));
    }
    let stacked = spec.left.weights.vstack(&spec.right.weights)?;
    let half = BigRational::new(1.into(), 2.into());
    let zero = BigRational::zero();
    let mut deck_point = None;
    for (l, r) in [(&half, &zero), (&zero, &half)] {
        let target: Vec<BigRational> = std::iter::repeat_n(l.clone(), 4)
            .chain(std::iter::repeat_n(r.clone(), 4))
            .collect();
        if let Some(p) = solve_affine_congruence(&stacked, &target)? {
            deck_point = Some(p);
            break;
        }
    }
    let so7 = ActionSpec::new(spec.left.to_so7()?, spec.right.to_so7()?)?;
    Ok(DescentAnalysis {
        deck_in_image: deck_point.is_some(),
        deck_point,
        so7_verdict: is_effectively_free(&so7)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::{projection_map, torus_weights, Label};

    fn spin(l: Label) -> TorusMap {
        torus_weights(&l.rep(), GroupKind::Spin7).unwrap()
    }

    fn spec(a: TorusMap, b: TorusMap) -> ActionSpec {
        ActionSpec::new(a, b).unwrap()
    }

    #[test]
    fn d_e_is_free() {
        assert!(is_effectively_free(&spec(spin(Label::D), spin(Label::E))).unwrap().is_free());
    }

    #[test]
    fn c_d_has_order_three_witness() {
        let s = spec(spin(Label::C), spin(Label::D));
        let v = is_effectively_free(&s).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.point, TorusPoint::from_fractions(&[(1, 3)]));
        assert_eq!(w.order, BigInt::from(3));
        assert_eq!(w.weyl.to_string(), "(-x2, -x1, -x4, -x3)");
        assert!(w.verify(&s));
    }

    #[test]
    fn param_mismatch() {
        let two = TorusMap::trivial(GroupKind::Spin7, 2);
        assert!(matches!(
            ActionSpec::new(spin(Label::A), two),
            Err(Error::ParamMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn conjugation_action_is_not_free() {
        for l in Label::ALL {
            assert!(!is_effectively_free(&spec(spin(l), spin(l))).unwrap().is_free());
        }
    }

    #[test]
    fn homogeneous_actions_are_free() {
        for l in Label::ALL {
            let s = spec(spin(l), TorusMap::trivial(GroupKind::Spin7, 1));
            assert!(is_effectively_free(&s).unwrap().is_free());
        }
    }

    #[test]
    fn verdict_is_symmetric() {
        for a in Label::ALL {
            for b in Label::ALL {
                let s = spec(spin(a), spin(b));
                let v1 = is_effectively_free(&s).unwrap();
                let v2 = is_effectively_free(&s.swapped()).unwrap();
                assert_eq!(v1.is_free(), v2.is_free());
                if let (Some(w1), Some(w2)) = (v1.witness(), v2.witness()) {
                    assert_eq!(w1.point, w2.point);
                    assert_eq!(w2.weyl.apply(&w2.left_image), w2.right_image);
                    assert_eq!(w1.weyl.inverse().apply(&w1.right_image), w1.left_image);
                }
            }
        }
    }

    #[test]
    fn descent_trivial_right() {
        let s = spec(spin(Label::A), TorusMap::trivial(GroupKind::Spin7, 1));
        let d = descent_analysis(&s).unwrap();
        // A(1/2) = R(1/2, 1/2, 1/2, 1/2) = −I
        assert!(d.deck_in_image);
        assert_eq!(d.deck_point, Some(TorusPoint::from_fractions(&[(1, 2)])));
        let s = spec(spin(Label::B), TorusMap::trivial(GroupKind::Spin7, 1));
        assert!(!descent_analysis(&s).unwrap().deck_in_image);
    }

    fn su2x2(pairs: &[((u32, u32), u32)]) -> crate::reps::Su2xSu2Rep {
        crate::reps::Su2xSu2Rep::new(
            pairs.iter().map(|&((i, j), m)| (crate::reps::Su2xSu2Irrep(i, j), m)),
        )
    }

    #[test]
    fn two_parameter_witness_order_five() {
        let a = torus_weights(&su2x2(&[((0, 0), 3), ((1, 1), 1)]), GroupKind::Spin7).unwrap();
        let b = torus_weights(&su2x2(&[((0, 0), 1), ((2, 0), 1), ((0, 2), 1)]), GroupKind::Spin7)
            .unwrap();
        let s = spec(a, b);
        let w = is_effectively_free(&s).unwrap().witness().cloned().unwrap();
        assert_eq!(w.point, TorusPoint::from_fractions(&[(1, 5), (2, 5)]));
        assert!(w.verify(&s));
    }

    #[test]
    fn su4_witness_is_fifth_root() {
        let a = TorusMap::from_rows(GroupKind::Su4, &[[1, 0], [-1, 0], [0, 1], [0, -1]]).unwrap();
        let b = TorusMap::from_rows(GroupKind::Su4, &[[1, 1], [-1, -1], [1, -1], [-1, 1]]).unwrap();
        let s = spec(a, b);
        let w = is_effectively_free(&s).unwrap().witness().cloned().unwrap();
        assert_eq!(w.order, BigInt::from(5));
        assert!(w.verify(&s));
        let c = w.point.coords();
        assert!(c[0] == (&c[1] * BigRational::from_integer(3.into())).fract()
            || c[1] == (&c[0] * BigRational::from_integer(3.into())).fract());
    }

    #[test]
    fn prune_reports_three_restrictions() {
        let t = TorusMap::trivial(GroupKind::Spin7, 2);
        let r = restriction_prune(&spec(t.clone(), t)).unwrap();
        assert_eq!(r.restrictions.len(), 3);
        assert!(r.restrictions.iter().all(|p| p.left == "trivial" && p.right == "trivial"));
        assert!(!r.pruned);
        let a = torus_weights(&su2x2(&[((0, 0), 3), ((1, 1), 1)]), GroupKind::Spin7).unwrap();
        let b = projection_map(&spin(Label::B), 1).unwrap();
        let r = restriction_prune(&spec(a.clone(), b)).unwrap();
        let diag = &r.restrictions[2];
        assert_eq!(diag.left, "A");
        assert!(r.pruned);
        assert!(!is_effectively_free(&spec(a, projection_map(&spin(Label::B), 1).unwrap()))
            .unwrap()
            .is_free());
    }
}
