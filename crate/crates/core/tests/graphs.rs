//! Set-valued graphs, hats and endpoints on worked examples and the corpus.

mod common;

use common::*;
use icm_core::oracle::sample_pullback;
use icm_core::setvalued::{
    commute, endpoints, forward_graph, graphs_equal, hats, profile, pullback_graph,
    strongly_commute, verify_strong_consequences, Point, Segment, SegmentSet,
};
use icm_core::{rat, PLMap, Rational};

fn pt(x: Rational, y: Rational) -> Point {
    Point::new(x, y)
}

fn locations(list: Vec<icm_core::setvalued::GraphFeature>) -> Vec<Point> {
    list.into_iter().map(|f| f.location).collect()
}

fn graph_of(f: &PLMap, transpose: bool) -> SegmentSet {
    let pts: Vec<(Rational, Rational)> = f.points();
    let segs = pts
        .windows(2)
        .map(|w| {
            let (a, b) = if transpose {
                (
                    pt(w[0].1.clone(), w[0].0.clone()),
                    pt(w[1].1.clone(), w[1].0.clone()),
                )
            } else {
                (
                    pt(w[0].0.clone(), w[0].1.clone()),
                    pt(w[1].0.clone(), w[1].1.clone()),
                )
            };
            Segment::new(a, b)
        })
        .collect();
    SegmentSet::new(segs)
}

#[test]
fn forward_graph_against_identity() {
    let (f, _) = split_pair();
    assert_eq!(forward_graph(&f, &PLMap::identity()), graph_of(&f, false));
    assert_eq!(forward_graph(&PLMap::identity(), &f), graph_of(&f, true));
    let diagonal = graph_of(&PLMap::identity(), false);
    assert_eq!(
        pullback_graph(&PLMap::identity(), &PLMap::identity()),
        diagonal
    );
}

#[test]
fn tent_graph_equality() {
    let (t3, t4, t6) = (tent(3), tent(4), tent(6));
    assert!(graphs_equal(
        &forward_graph(&t3, &t4),
        &pullback_graph(&t3, &t4)
    ));
    assert!(!graphs_equal(
        &forward_graph(&t4, &t6),
        &pullback_graph(&t4, &t6)
    ));
    let a = pullback_graph(&t4, &t6);
    assert!(graphs_equal(&a, &a));
}

#[test]
fn commutation_examples() {
    assert!(commute(&tent(2), &tent(3)));
    let skew = map(&[(0, 1, 0, 1), (1, 2, 1, 1), (1, 1, 1, 2)]);
    assert!(!commute(&tent(2), &skew));
    assert_eq!(tent(2).compose(&skew).eval(&rat(1, 1)).unwrap(), rat(1, 1));
    assert_eq!(skew.compose(&tent(2)).eval(&rat(1, 1)).unwrap(), rat(0, 1));
    let (f, _) = split_pair();
    assert!(commute(&f, &f));
    assert!(strongly_commute(&tent(3), &tent(4)));
    assert!(!strongly_commute(&tent(2), &tent(2)));
    let (f, g) = split_pair();
    assert!(strongly_commute(&f, &g));
}

#[test]
fn tent_hats_and_endpoints() {
    let (t3, t4) = (tent(3), tent(4));
    assert_eq!(
        locations(hats(&t3, &t4)),
        vec![pt(rat(2, 3), rat(0, 1)), pt(rat(2, 3), rat(1, 1))]
    );
    assert_eq!(
        locations(endpoints(&t3, &t4)),
        vec![pt(rat(0, 1), rat(0, 1)), pt(rat(0, 1), rat(1, 1))]
    );
    let p = profile(&t3, &t4).unwrap();
    assert_eq!(p.hat_counts, vec![0, 2]);
    assert_eq!(p.endpoint_counts, vec![2, 0, 0]);
    assert!(hats(&PLMap::identity(), &tent(2)).is_empty());
    assert_eq!(
        locations(endpoints(&PLMap::identity(), &PLMap::identity())),
        vec![pt(rat(0, 1), rat(0, 1)), pt(rat(1, 1), rat(1, 1))]
    );
    assert!(verify_strong_consequences(&t3, &t4).unwrap().all_passed());
}

#[test]
fn lopsided_pair_profile() {
    let (f, g) = lopsided_pair();
    let p = profile(&f, &g).unwrap();
    assert_eq!((p.total_hats, p.total_endpoints), (2, 4));
    assert!(!strongly_commute(&f, &g));
    assert!(verify_strong_consequences(&f, &g).is_err());
}

#[test]
fn swapped_roles_count_the_partner_critical_points() {
    for (name, f, g) in strong_corpus() {
        assert_eq!(hats(&g, &f).len(), g.critical_points().len(), "{name}");
        assert_eq!(endpoints(&g, &f).len(), 2, "{name}");
    }
}

#[test]
fn grid_zeros_lie_on_pullback_graph() {
    let (t3, t4) = (tent(3), tent(4));
    let pb = pullback_graph(&t3, &t4);
    let sample = sample_pullback(&t3, &t4, 1000);
    assert!(!sample.points.is_empty());
    for (x, y) in &sample.points {
        assert!(pb.contains_point(&pt(x.clone(), y.clone())), "({x}, {y})");
    }
    let (f, g) = lopsided_pair();
    let pb = pullback_graph(&f, &g);
    for (x, y) in &sample_pullback(&f, &g, 360).points {
        assert!(pb.contains_point(&pt(x.clone(), y.clone())));
    }
}

/// Second coordinates of graph points over `x`, within `radius` of `y`.
fn nearby_heights(
    f: &PLMap,
    g: &PLMap,
    x: &Rational,
    y: &Rational,
    radius: &Rational,
) -> Vec<Rational> {
    g.preimage_point(&f.eval(x).unwrap())
        .into_iter()
        .filter(|t| (t - y) < *radius && (y - t) < *radius)
        .collect()
}

#[test]
fn hats_are_strict_local_extrema_of_height() {
    let (delta, radius) = (rat(1, 1_000_000_000), rat(1, 10_000));
    for (name, f, g) in strong_corpus() {
        for h in hats(&f, &g) {
            let (x, y) = (&h.location.x, &h.location.y);
            let left = nearby_heights(&f, &g, &(x - &delta), y, &radius);
            let right = nearby_heights(&f, &g, &(x + &delta), y, &radius);
            assert!(
                !left.is_empty() && !right.is_empty(),
                "{name}: hat {}",
                h.location
            );
            let all: Vec<&Rational> = left.iter().chain(&right).collect();
            let above = all.iter().all(|t| *t > y);
            let below = all.iter().all(|t| *t < y);
            assert!(
                above || below,
                "{name}: hat {} is not an extremum",
                h.location
            );
        }
    }
}

#[test]
fn csv_serialization() {
    let csv = forward_graph(&tent(3), &tent(4)).to_csv();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x1,y1,x2,y2"));
    assert_eq!(lines.count(), 6);
    assert_eq!(SegmentSet::new(vec![]).to_csv(), "x1,y1,x2,y2\n");
}
