//! Enumeration of every candidate pair `(f₁, f₂)` and its freeness verdict.
//!
//! Pairs are taken up to interchanging `f₁` and `f₂` (inverting the action)
//! and, for `SU(2)²`, interchanging the two factors. A pair is
//! *homogeneous* when one map is trivial, *rank-1 equivalent* when both maps
//! factor through the same projection `SU(2)² → SU(2)`, and *inhomogeneous*
//! otherwise. Only inhomogeneous free pairs are counted.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::display_string;
use crate::error::{Error, Result};
use crate::freeness::{
    descent_analysis, is_effectively_free, restriction_prune, ActionSpec, DescentAnalysis,
    FreenessVerdict, PruneReport,
};
use crate::notation::MapDescriptor;
use crate::reps::{
    enumerate_su2_complex, enumerate_su2_orthogonal, enumerate_su2xsu2, Flavor, TorusMap,
};
use crate::weyl::GroupKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Su2,
    Su2xSu2,
}

impl Source {
    pub fn params(self) -> usize {
        match self {
            Source::Su2 => 1,
            Source::Su2xSu2 => 2,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Su2 => "su2",
            Source::Su2xSu2 => "su2xsu2",
        })
    }
}

impl std::str::FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su2" => Ok(Source::Su2),
            "su2xsu2" => Ok(Source::Su2xSu2),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown source `{s}`"),
            }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Inhomogeneous,
    Homogeneous,
    Rank1Equivalent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub left: MapDescriptor,
    pub right: MapDescriptor,
    #[serde(serialize_with = "display_string")]
    pub left_weights: TorusMap,
    #[serde(serialize_with = "display_string")]
    pub right_weights: TorusMap,
    pub category: Category,
    #[serde(flatten)]
    pub verdict: FreenessVerdict,
    /// The witness, if any, re-checked by direct evaluation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruned_by: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prune: Option<PruneReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub descent: Option<DescentAnalysis>,
}

impl PairRecord {
    pub fn is_free(&self) -> bool {
        self.verdict.is_free()
    }

    pub fn spec(&self) -> ActionSpec {
        ActionSpec::new(self.left_weights.clone(), self.right_weights.clone())
            .expect("built from a valid spec")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub free_inhomogeneous: usize,
    pub homogeneous: usize,
    pub rank1_equivalent: usize,
    pub not_free: usize,
    pub pruned: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deck_points: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub group: GroupKind,
    pub source: Source,
    pub pairs: Vec<PairRecord>,
    pub counts: Counts,
}

impl ClassificationReport {
    /// Free inhomogeneous pairs, in report order.
    pub fn free_inhomogeneous(&self) -> impl Iterator<Item = &PairRecord> {
        self.pairs
            .iter()
            .filter(|p| p.category == Category::Inhomogeneous && p.is_free())
    }

    pub fn find(&self, left: &MapDescriptor, right: &MapDescriptor) -> Option<&PairRecord> {
        let key = pair_key(left, right, self.source);
        self.pairs
            .iter()
            .find(|p| pair_key(&p.left, &p.right, self.source) == key)
    }
}

/// Nontrivial homomorphisms `SU(2) → G`.
pub fn su2_candidates(group: GroupKind) -> Vec<MapDescriptor> {
    let reps = match group {
        GroupKind::Su4 => enumerate_su2_complex(4),
        GroupKind::So7 | GroupKind::Spin7 => enumerate_su2_orthogonal(7),
    };
    reps.into_iter()
        .filter(|r| !r.is_trivial())
        .map(MapDescriptor::Su2)
        .collect()
}

/// Homomorphisms `SU(2)² → G`: finite-kernel representations in both factor
/// orders, every nontrivial `SU(2)` map composed with either projection,
/// and the trivial map.
pub fn su2xsu2_candidates(group: GroupKind) -> Vec<MapDescriptor> {
    let (n, flavor) = match group {
        GroupKind::Su4 => (4, Flavor::Complex),
        GroupKind::So7 | GroupKind::Spin7 => (7, Flavor::Orthogonal),
    };
    let mut out = Vec::new();
    for r in enumerate_su2xsu2(n, flavor, true) {
        let s = r.swapped();
        out.push(MapDescriptor::Su2xSu2(r.clone()));
        if s != r {
            out.push(MapDescriptor::Su2xSu2(s));
        }
    }
    for factor in 0..2 {
        for d in su2_candidates(group) {
            if let MapDescriptor::Su2(rep) = d {
                out.push(MapDescriptor::Projection { factor, rep });
            }
        }
    }
    out.push(MapDescriptor::Trivial);
    out
}

/// Least representative of a pair under the equivalence moves.
pub fn pair_key(
    left: &MapDescriptor,
    right: &MapDescriptor,
    source: Source,
) -> (MapDescriptor, MapDescriptor) {
    let mut variants = vec![
        (left.clone(), right.clone()),
        (right.clone(), left.clone()),
    ];
    if source == Source::Su2xSu2 {
        let (l, r) = (left.factor_swapped(), right.factor_swapped());
        variants.push((r.clone(), l.clone()));
        variants.push((l, r));
    }
    variants.into_iter().min().expect("nonempty")
}

pub fn categorize(left: &MapDescriptor, right: &MapDescriptor) -> Category {
    if left.is_trivial() || right.is_trivial() {
        return Category::Homogeneous;
    }
    match (left, right) {
        (
            MapDescriptor::Projection { factor: a, .. },
            MapDescriptor::Projection { factor: b, .. },
        ) if a == b => Category::Rank1Equivalent,
        _ => Category::Inhomogeneous,
    }
}

fn evaluate(
    group: GroupKind,
    source: Source,
    left: MapDescriptor,
    right: MapDescriptor,
) -> Result<PairRecord> {
    let params = source.params();
    let spec = ActionSpec::new(left.torus_map(group, params)?, right.torus_map(group, params)?)?;
    let verdict = is_effectively_free(&spec)?;
    let witness_verified = verdict.witness().map(|w| w.verify(&spec));
    let category = categorize(&left, &right);
    let prune = match source {
        Source::Su2xSu2 => Some(restriction_prune(&spec)?),
        Source::Su2 => None,
    };
    let pruned_by = prune.as_ref().and_then(|p| {
        p.restrictions
            .iter()
            .find(|r| !r.verdict.is_free())
            .map(|r| {
                let which = format!("{:?}", r.restriction).to_lowercase();
                format!("{which} restriction ({}, {})", r.left, r.right)
            })
    });
    let descent = if group == GroupKind::Spin7 && category == Category::Inhomogeneous && verdict.is_free() {
        Some(descent_analysis(&spec)?)
    } else {
        None
    };
    Ok(PairRecord {
        left,
        right,
        left_weights: spec.left,
        right_weights: spec.right,
        category,
        verdict,
        witness_verified,
        pruned_by,
        prune,
        descent,
    })
}

/// Tests every pair of candidates up to equivalence. The report lists pairs
/// in order of their least representative, so it does not depend on the
/// order of `candidates`.
pub fn classify_candidates(
    group: GroupKind,
    source: Source,
    candidates: &[MapDescriptor],
    include_diagonal: bool,
) -> Result<ClassificationReport> {
    let mut keys = BTreeMap::new();
    for a in candidates {
        for b in candidates {
            if a == b && !include_diagonal {
                continue;
            }
            keys.entry(pair_key(a, b, source)).or_insert(());
        }
    }
    let mut pairs = Vec::with_capacity(keys.len());
    for ((l, r), ()) in keys {
        pairs.push(evaluate(group, source, l, r)?);
    }
    let mut counts = Counts::default();
    for p in &pairs {
        match p.category {
            Category::Homogeneous => counts.homogeneous += 1,
            Category::Rank1Equivalent => counts.rank1_equivalent += 1,
            Category::Inhomogeneous if p.is_free() => counts.free_inhomogeneous += 1,
            Category::Inhomogeneous => {}
        }
        if !p.is_free() {
            counts.not_free += 1;
        }
        if p.pruned_by.is_some() {
            counts.pruned += 1;
        }
    }
    if group == GroupKind::Spin7 {
        counts.deck_points = Some(
            pairs
                .iter()
                .filter(|p| p.descent.as_ref().is_some_and(|d| d.deck_in_image))
                .count(),
        );
    }
    Ok(ClassificationReport {
        group,
        source,
        pairs,
        counts,
    })
}

/// All unordered pairs of distinct nontrivial `SU(2)` maps, plus each map
/// against the trivial one.
pub fn classify_su2(group: GroupKind) -> Result<ClassificationReport> {
    let mut candidates = su2_candidates(group);
    candidates.push(MapDescriptor::Trivial);
    let mut report = classify_candidates(group, Source::Su2, &candidates, false)?;
    report.pairs.retain(|p| !(p.left.is_trivial() && p.right.is_trivial()));
    Ok(report)
}

/// All pairs of `SU(2)² → G` candidates, including `f₁ = f₂`.
pub fn classify_su2xsu2(group: GroupKind) -> Result<ClassificationReport> {
    classify_candidates(group, Source::Su2xSu2, &su2xsu2_candidates(group), true)
}

/// One known free action, as weight matrices with the first source
/// parameter in column 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownRow {
    pub index: usize,
    pub description: &'static str,
    pub left: Vec<[i64; 2]>,
    pub right: Vec<[i64; 2]>,
}

/// Free inhomogeneous actions of `SU(2)²` on `SO(7)` (equivalently on
/// `Spin(7)`, after projecting) and on `SU(4)`. `SO(7)` rows are rotation
/// weights `R(θ₁, θ₂, θ₃)`; `SU(4)` rows are the exponents of the diagonal.
pub fn known_rows(group: GroupKind) -> Vec<KnownRow> {
    type Row = (&'static str, Vec<[i64; 2]>, Vec<[i64; 2]>);
    let a1 = vec![[2, 0], [0, 0], [0, 0]];
    let rows: Vec<Row> = match group {
        GroupKind::So7 | GroupKind::Spin7 => vec![
            ("A in the first factor, 2phi10+phi02", a1.clone(), vec![[0, 2], [1, 0], [1, 0]]),
            ("A in the first factor, B in the second", a1.clone(), vec![[0, 1], [0, 1], [0, 0]]),
            ("A in the first factor, D in the second", a1.clone(), vec![[0, 2], [0, 2], [0, 0]]),
            ("A in the first factor, E in the second", a1.clone(), vec![[0, 2], [0, 1], [0, 1]]),
            ("A in the first factor, phi11+phi20", a1.clone(), vec![[1, 1], [1, -1], [2, 0]]),
            ("A in the first factor, phi11+phi02", a1.clone(), vec![[1, 1], [1, -1], [0, 2]]),
            ("A in the first factor, F in the second", a1, vec![[0, 6], [0, 4], [0, 2]]),
            (
                "phi20+2phi01, D in the first factor",
                vec![[2, 0], [0, 1], [0, 1]],
                vec![[2, 0], [2, 0], [0, 0]],
            ),
            (
                "phi00+phi20+phi02, E in the first factor",
                vec![[2, 0], [0, 2], [0, 0]],
                vec![[2, 0], [1, 0], [1, 0]],
            ),
            (
                "C in the first factor, E in the second",
                vec![[4, 0], [2, 0], [0, 0]],
                vec![[0, 2], [0, 1], [0, 1]],
            ),
        ],
        GroupKind::Su4 => {
            let aa = vec![[1, 0], [-1, 0], [1, 0], [-1, 0]];
            vec![
                (
                    "2phi1 in the first factor, 2phi0+phi1 in the second",
                    aa.clone(),
                    vec![[0, 1], [0, -1], [0, 0], [0, 0]],
                ),
                (
                    "2phi1 in the first factor, phi0+phi2 in the second",
                    aa,
                    vec![[0, 2], [0, 0], [0, -2], [0, 0]],
                ),
            ]
        }
    };
    rows.into_iter()
        .enumerate()
        .map(|(i, (description, left, right))| KnownRow {
            index: i + 1,
            description,
            left,
            right,
        })
        .collect()
}

type Canon = (Vec<[i64; 2]>, Vec<[i64; 2]>);

/// Normal form of one weight matrix under the Weyl group of `G`: rows made
/// lexicographically nonnegative (orthogonal case) and sorted.
fn canonical_side(group: GroupKind, rows: &[[i64; 2]]) -> Vec<[i64; 2]> {
    let mut v: Vec<[i64; 2]> = rows
        .iter()
        .map(|&r| {
            let negative = r.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
            if group != GroupKind::Su4 && negative {
                [-r[0], -r[1]]
            } else {
                r
            }
        })
        .collect();
    v.sort_unstable();
    v
}

fn canonical_pair(group: GroupKind, left: &[[i64; 2]], right: &[[i64; 2]]) -> Canon {
    let swap = |rows: &[[i64; 2]]| rows.iter().map(|r| [r[1], r[0]]).collect::<Vec<_>>();
    let c = |l: &[[i64; 2]], r: &[[i64; 2]]| (canonical_side(group, l), canonical_side(group, r));
    let (sl, sr) = (swap(left), swap(right));
    [c(left, right), c(right, left), c(&sl, &sr), c(&sr, &sl)]
        .into_iter()
        .min()
        .expect("nonempty")
}

fn as_pairs(map: &TorusMap) -> Vec<[i64; 2]> {
    map.rows_i64().iter().map(|r| [r[0], r[1]]).collect()
}

/// Which known row a free pair of the report matches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowMatch {
    pub row: usize,
    pub left: MapDescriptor,
    pub right: MapDescriptor,
}

/// Matches each free inhomogeneous pair of an `SU(2)²` report against
/// [`known_rows`]. Every row must be matched exactly once and every free
/// pair must match a row. `Spin(7)` reports are compared after projecting to
/// `SO(7)`.
pub fn verify_known_classification(report: &ClassificationReport) -> Result<Vec<RowMatch>> {
    if report.source != Source::Su2xSu2 {
        return Err(Error::Mismatch("expected an SU(2)xSU(2) report".into()));
    }
    let group = report.group;
    let rows = known_rows(group);
    let row_keys: Vec<Canon> = rows
        .iter()
        .map(|r| canonical_pair(group, &r.left, &r.right))
        .collect();
    let mut hits = vec![Vec::new(); rows.len()];
    let mut extra = Vec::new();
    for p in report.free_inhomogeneous() {
        let (l, r) = match group {
            GroupKind::Su4 => (p.left_weights.clone(), p.right_weights.clone()),
            _ => (p.left_weights.to_so7()?, p.right_weights.to_so7()?),
        };
        let key = canonical_pair(group, &as_pairs(&l), &as_pairs(&r));
        match row_keys.iter().position(|k| *k == key) {
            Some(i) => hits[i].push(RowMatch {
                row: rows[i].index,
                left: p.left.clone(),
                right: p.right.clone(),
            }),
            None => extra.push(format!("({}, {})", p.left, p.right)),
        }
    }
    let mut problems = Vec::new();
    for (row, h) in rows.iter().zip(&hits) {
        match h.len() {
            1 => {}
            0 => problems.push(format!("row {} unmatched: {}", row.index, row.description)),
            n => problems.push(format!("row {} matched {n} times: {}", row.index, row.description)),
        }
    }
    for e in extra {
        problems.push(format!("free pair {e} matches no row"));
    }
    if !problems.is_empty() {
        return Err(Error::Mismatch(problems.join("\n")));
    }
    Ok(hits.into_iter().flatten().collect())
}
