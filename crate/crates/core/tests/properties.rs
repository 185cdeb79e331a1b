mod common;

use biquotient::classify::{classify_candidates, su2_candidates, Source};
use biquotient::freeness::{is_effectively_free, restriction_prune, ActionSpec};
use biquotient::linalg::solve_torus_congruence;
use biquotient::reps::TorusMap;
use biquotient::weyl::GroupKind;
use common::*;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use proptest::prelude::*;
use proptest::sample::subsequence;

const ORACLE_CAP: i64 = 60_000;

fn group() -> impl Strategy<Value = GroupKind> {
    prop_oneof![Just(GroupKind::So7), Just(GroupKind::Spin7), Just(GroupKind::Su4)]
}

/// Weight rows for `group` with entries in `[-3, 3]`; the last row is fixed
/// by the group's linear relation where there is one.
fn rows(group: GroupKind, params: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, params), 3).prop_map(move |mut r| {
        let last: Vec<i64> = (0..params)
            .map(|j| match group {
                GroupKind::Spin7 => r[0][j] - r[1][j] + r[2][j],
                GroupKind::Su4 => -(r[0][j] + r[1][j] + r[2][j]),
                GroupKind::So7 => 0,
            })
            .collect();
        if group != GroupKind::So7 {
            r.push(last);
        }
        r
    })
}

fn spec() -> impl Strategy<Value = ActionSpec> {
    (group(), 1usize..=2).prop_flat_map(|(g, p)| {
        (rows(g, p), rows(g, p)).prop_map(move |(a, b)| {
            ActionSpec::new(TorusMap::from_rows(g, &a).unwrap(), TorusMap::from_rows(g, &b).unwrap()).unwrap()
        })
    })
}

/// Grid size that contains every torsion element of every conjugacy
/// subgroup, or `None` when the grid would be too large.
fn grid_size(spec: &ActionSpec) -> Option<i64> {
    let mut n = 12i64;
    for (_, s) in biquotient::freeness::conjugacy_subgroups(spec) {
        for e in nonzero(&s.elementary_divisors) {
            n = lcm(n, e);
        }
    }
    (n.checked_pow(spec.params() as u32)? <= ORACLE_CAP).then_some(n)
}

fn on_grid(p: &biquotient::linalg::TorusPoint, n: i64) -> Vec<i64> {
    p.coords()
        .iter()
        .map(|c| (c * BigRational::from_integer(n.into())).to_integer().to_i64().unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn verdict_is_symmetric(spec in spec()) {
        let a = is_effectively_free(&spec).unwrap().is_free();
        let b = is_effectively_free(&spec.swapped()).unwrap().is_free();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn witnesses_are_sound(spec in spec()) {
        if let Some(w) = is_effectively_free(&spec).unwrap().witness() {
            prop_assert!(w.verify(&spec));
            let n = w.order.to_i64().unwrap();
            let t = on_grid(&w.point, n);
            let g = GroupOracle::new(spec.group);
            let (x, y) = (image(&spec.left.rows_i64(), &t, n), image(&spec.right.rows_i64(), &t, n));
            prop_assert!(g.conjugate(&x, &y, n));
            prop_assert!(!(x == y && g.central(&x, n)));
        }
    }

    #[test]
    fn agrees_with_brute_force(spec in spec()) {
        let n = grid_size(&spec);
        prop_assume!(n.is_some());
        let n = n.unwrap();
        let verdict = is_effectively_free(&spec).unwrap();
        let g = GroupOracle::new(spec.group);
        let found = brute_force_violation(&g, &spec.left.rows_i64(), &spec.right.rows_i64(), spec.params(), n);
        prop_assert_eq!(found.is_none(), verdict.is_free(), "oracle point {:?}", found);
        if let Some(w) = verdict.witness() {
            // The library reports the least violation by order, then lexicographically.
            let order = w.order.to_i64().unwrap();
            let first = brute_force_violation(&g, &spec.left.rows_i64(), &spec.right.rows_i64(), spec.params(), order);
            prop_assert_eq!(first, Some(on_grid(&w.point, order)));
        }
    }

    #[test]
    fn pruned_actions_are_not_free(spec in spec()) {
        prop_assume!(spec.params() == 2);
        let prune = restriction_prune(&spec).unwrap();
        if prune.pruned {
            prop_assert!(!is_effectively_free(&spec).unwrap().is_free());
        }
    }

    #[test]
    fn equal_nonzero_maps_are_not_free(spec in spec()) {
        prop_assume!(!spec.left.weights.is_zero());
        let same = ActionSpec::new(spec.left.clone(), spec.left.clone()).unwrap();
        prop_assert!(!is_effectively_free(&same).unwrap().is_free());
    }

    #[test]
    fn trivial_right_map_is_free(spec in spec()) {
        let zero = TorusMap::from_rows(spec.group, &vec![vec![0i64; spec.params()]; spec.left.weights.rows()]).unwrap();
        let s = ActionSpec::new(spec.left.clone(), zero).unwrap();
        prop_assert!(is_effectively_free(&s).unwrap().is_free());
    }

    #[test]
    fn congruence_solutions_match_enumeration(
        m in (1usize..=2).prop_flat_map(|r| prop::collection::vec(prop::collection::vec(-4i64..=4, r), 1..=4))
    ) {
        let r = m[0].len();
        let s = solve_torus_congruence(&rows_to_matrix(&m, r));
        let mut n = 6i64;
        for e in nonzero(&s.elementary_divisors) {
            n = lcm(n, e);
        }
        prop_assert_eq!(congruence_points(&m, r, n), subgroup_points(&s, n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn counts_ignore_candidate_order(
        order in Just(su2_candidates(GroupKind::Spin7)).prop_shuffle(),
        repeat in subsequence((0..su2_candidates(GroupKind::Spin7).len()).collect::<Vec<_>>(), 0..=2),
    ) {
        let base = classify_candidates(GroupKind::Spin7, Source::Su2, &su2_candidates(GroupKind::Spin7), false).unwrap();
        let shuffled = classify_candidates(GroupKind::Spin7, Source::Su2, &order, false).unwrap();
        prop_assert_eq!(&base.pairs, &shuffled.pairs);
        prop_assert_eq!(&base.counts, &shuffled.counts);
        // Repeating candidates adds nothing.
        let mut doubled = order.clone();
        doubled.extend(repeat.iter().map(|&i| order[i].clone()));
        let again = classify_candidates(GroupKind::Spin7, Source::Su2, &doubled, false).unwrap();
        prop_assert_eq!(&base.counts, &again.counts);
    }
}
