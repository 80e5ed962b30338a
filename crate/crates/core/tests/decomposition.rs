//! Invariant-interval decompositions and primary values over the corpus.

mod common;

use common::*;
use icm_core::decompose::{
    classify, common_fixed_point, decompose, orientation, primary_critical_values,
    verify_decomposition, Case, Orientation,
};
use icm_core::entropy::lap;
use icm_core::setvalued::{strongly_commute, verify_strong_consequences};
use icm_core::{rat, Interval, PLMap};
use proptest::prelude::*;

fn both_orders() -> Vec<(String, PLMap, PLMap)> {
    strong_corpus()
        .into_iter()
        .flat_map(|(name, f, g)| {
            [
                (name.clone(), f.clone(), g.clone()),
                (format!("{name} swapped"), g, f),
            ]
        })
        .collect()
}

#[test]
fn every_strong_pair_decomposes_and_verifies() {
    for (name, f, g) in both_orders() {
        let d = decompose(&f, &g).unwrap_or_else(|e| panic!("{name}: {e}"));
        let report = verify_decomposition(&f, &g, &d);
        assert!(report.all_passed(), "{name}:\n{report}");
    }
}

#[test]
fn case_a_blocks_are_invariant_and_tame() {
    for (name, f, g) in both_orders() {
        let d = decompose(&f, &g).unwrap();
        if d.case != Case::A {
            continue;
        }
        for j in d.intervals() {
            assert!(j.contains_interval(&f.image(&j)), "{name}: f moves {j}");
            assert!(j.contains_interval(&g.image(&j)), "{name}: g moves {j}");
            let fc = classify(&f, &j, &j).unwrap();
            let gc = classify(&g, &j, &j).unwrap();
            let wild = |c: icm_core::decompose::IntervalClass| !c.is_open() && !c.is_monotone();
            assert!(!(wild(fc) && wild(gc)), "{name}: both wild on {j}");
        }
    }
}

#[test]
fn strong_consequences_hold_on_corpus() {
    for (name, f, g) in both_orders() {
        let report = verify_strong_consequences(&f, &g).unwrap();
        assert!(report.all_passed(), "{name}:\n{report}");
    }
}

#[test]
fn swap_pair_and_nine_consequences() {
    for (f, g) in [split_pair(), swap_pair()] {
        assert!(verify_strong_consequences(&f, &g).unwrap().all_passed());
    }
}

/// Pairs where odd gaps are well behaved: every primary value has an exacting
/// point and the exacting points increase.
fn has_increasing_exacting_points(f: &PLMap) -> bool {
    let pv = primary_critical_values(f).unwrap();
    pv.exacting.iter().all(Option::is_some) && pv.defined_exacting().windows(2).all(|w| w[0] < w[1])
}

fn odd_gap_setting() -> Vec<(String, PLMap, PLMap)> {
    both_orders()
        .into_iter()
        .filter(|(_, f, g)| has_increasing_exacting_points(f) && has_increasing_exacting_points(g))
        .collect()
}

#[test]
fn odd_gap_setting_is_populated() {
    let names: Vec<String> = odd_gap_setting().into_iter().map(|(n, _, _)| n).collect();
    assert!(names.len() >= 30, "{names:?}");
    assert!(names.iter().filter(|n| n.starts_with("conjugated")).count() >= 10);
    assert!(has_increasing_exacting_points(&primary_sample()));
    assert!(!has_increasing_exacting_points(&split_pair().0));
}

#[test]
fn odd_gaps_are_invariant_under_the_partner() {
    for (name, f, g) in odd_gap_setting() {
        let pv = primary_critical_values(&f).unwrap();
        for (a, b) in pv.odd_gaps() {
            let gap = Interval::new(a, b).unwrap();
            assert_eq!(
                g.preimage_interval(&gap),
                vec![gap.clone()],
                "{name}: gap {gap}"
            );
        }
    }
}

#[test]
fn odd_gap_dichotomy() {
    for (name, f, g) in odd_gap_setting() {
        let pv = primary_critical_values(&f).unwrap();
        for (a, b) in pv.odd_gaps() {
            let k = Interval::new(a, b).unwrap();
            let fj = f.preimage_interval(&k);
            let gj = g.preimage_interval(&k);
            assert_eq!(gj.len(), 1, "{name}: g-preimage of {k} disconnected");
            let (fc, gc) = (
                classify(&f, &fj[0], &k).unwrap(),
                classify(&g, &gj[0], &k).unwrap(),
            );
            let open_pair = fj.len() == 1 && fc.is_open() && !fc.is_monotone() && gc.is_open();
            assert!(open_pair || gc.is_monotone(), "{name}: {k}: {fc:?} {gc:?}");
        }
    }
}

fn preserving_maps() -> Vec<PLMap> {
    let (f9, g9) = split_pair();
    let (_, g10) = swap_pair();
    vec![primary_sample(), f9, g9, g10, tent(3), tent(5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn proper_subintervals_of_odd_gaps_split(which in 0usize..6, gap in 0usize..8, a in 1i64..99, b in 1i64..99) {
        let f = &preserving_maps()[which];
        prop_assume!(has_increasing_exacting_points(f));
        let pv = primary_critical_values(f).unwrap();
        let gaps = pv.odd_gaps();
        prop_assume!(!gaps.is_empty());
        let (lo, hi) = &gaps[gap % gaps.len()];
        let width = hi - lo;
        let (s, t) = (a.min(b), a.max(b));
        let p = lo + &width * rat(s, 100);
        let q = lo + &width * rat(t, 100);
        let comps = f.preimage_interval(&Interval::new(p, q).unwrap());
        prop_assert!(comps.len() >= 2);
    }
}

#[test]
fn full_two_fold_partners_are_open_with_odd_laps() {
    let mut rng = rng(55);
    let mut pairs = vec![
        (tent(2), tent(3)),
        (tent(2), tent(5)),
        (tent(2), tent(7)),
        (tent(2), tent(9)),
    ];
    for m in [3, 5, 7] {
        for _ in 0..3 {
            pairs.push(conjugated_tents(&mut rng, 2, m));
        }
    }
    for (f, g) in pairs {
        assert!(strongly_commute(&f, &g));
        assert!(g.is_open(&Interval::unit(), &Interval::unit()).unwrap());
        assert_eq!(lap(&g) % 2, 1);
    }
}

#[test]
fn common_fixed_points_are_fixed() {
    for (name, f, g) in both_orders() {
        let x = common_fixed_point(&f, &g).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(f.eval(&x).unwrap(), x, "{name}");
        assert_eq!(g.eval(&x).unwrap(), x, "{name}");
    }
}

#[test]
fn split_pair_common_fixed_point_is_least_on_grid() {
    let (f, g) = split_pair();
    let grid_least = (0..=360)
        .map(|i| rat(i, 360))
        .find(|x| &f.eval(x).unwrap() == x && &g.eval(x).unwrap() == x)
        .unwrap();
    assert_eq!(common_fixed_point(&f, &g).unwrap(), grid_least);
    assert_eq!(grid_least, rat(1, 3));
}

#[test]
fn sample_orientations() {
    assert_eq!(
        orientation(&split_pair().0).unwrap(),
        Orientation::Preserving
    );
    assert_eq!(orientation(&swap_pair().0).unwrap(), Orientation::Reversing);
    assert_eq!(
        orientation(&swap_pair().1).unwrap(),
        Orientation::Preserving
    );
    assert_eq!(
        orientation(&double_swap_pair().1).unwrap(),
        Orientation::Reversing
    );
}

#[test]
fn swap_pair_is_case_b_with_swapped_outer_blocks() {
    let (f, g) = swap_pair();
    let d = decompose(&f, &g).unwrap();
    assert_eq!(d.case, Case::B);
    assert!(!d.roles_swapped);
    assert_eq!(d.points, vec![rat(0, 1), rat(1, 2), rat(3, 4), rat(1, 1)]);
    let blocks = d.intervals();
    assert_eq!(f.image(&blocks[0]), blocks[2]);
    assert_eq!(f.image(&blocks[2]), blocks[0]);
    for j in &blocks {
        assert!(j.contains_interval(&g.image(j)));
    }
    let d = decompose(&g, &f).unwrap();
    assert_eq!(d.case, Case::B);
    assert!(d.roles_swapped);
}

#[test]
fn double_swap_pair_is_case_c() {
    let (f, g) = double_swap_pair();
    let d = decompose(&f, &g).unwrap();
    assert_eq!(d.case, Case::C);
    assert!(verify_decomposition(&f, &g, &d).all_passed());
    for b in &d.blocks {
        assert!(b.f2_class.is_some() && b.g2_class.is_some());
    }
}

#[test]
fn non_strong_pairs_are_rejected() {
    let (f, g) = lopsided_pair();
    assert!(decompose(&f, &g).is_err());
    assert!(decompose(&tent(4), &tent(6)).is_err());
}
