//! Exact arrangements of closed segments in the unit square.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::rational::{format_rational, int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {})",
            format_rational(&self.x),
            format_rational(&self.y)
        )
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [format_rational(&self.x), format_rational(&self.y)].serialize(s)
    }
}

/// Closed segment with `a <= b` lexicographically. `a == b` is an isolated
/// point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(p: Point, q: Point) -> Self {
        if p <= q {
            Segment { a: p, b: q }
        } else {
            Segment { a: q, b: p }
        }
    }

    pub fn point(p: Point) -> Self {
        Segment { a: p.clone(), b: p }
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        if self.is_degenerate() {
            return &self.a == p;
        }
        let cross = (&self.b.x - &self.a.x) * (&p.y - &self.a.y)
            - (&self.b.y - &self.a.y) * (&p.x - &self.a.x);
        cross == int(0) && &self.a <= p && p <= &self.b
    }

    /// Supporting line, or `None` for an isolated point.
    pub(crate) fn line(&self) -> Option<LineKey> {
        if self.is_degenerate() {
            return None;
        }
        if self.a.x == self.b.x {
            return Some(LineKey::Vertical {
                x: self.a.x.clone(),
            });
        }
        let m = (&self.b.y - &self.a.y) / (&self.b.x - &self.a.x);
        let c = &self.a.y - &m * &self.a.x;
        Some(LineKey::Slope { m, c })
    }
}

/// A line in the plane: `y = m x + c`, or `x = const`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum LineKey {
    Slope { m: Rational, c: Rational },
    Vertical { x: Rational },
}

impl LineKey {
    /// Coordinate used to parametrize points of the line.
    fn param(&self, p: &Point) -> Rational {
        match self {
            LineKey::Slope { .. } => p.x.clone(),
            LineKey::Vertical { .. } => p.y.clone(),
        }
    }

    fn point_at(&self, t: &Rational) -> Point {
        match self {
            LineKey::Slope { m, c } => Point::new(t.clone(), m * t + c),
            LineKey::Vertical { x } => Point::new(x.clone(), t.clone()),
        }
    }

    fn intersect(&self, other: &LineKey) -> Option<Point> {
        match (self, other) {
            (LineKey::Slope { m: m1, c: c1 }, LineKey::Slope { m: m2, c: c2 }) => {
                if m1 == m2 {
                    return None;
                }
                let x = (c2 - c1) / (m1 - m2);
                let y = m1 * &x + c1;
                Some(Point::new(x, y))
            }
            (LineKey::Slope { m, c }, LineKey::Vertical { x })
            | (LineKey::Vertical { x }, LineKey::Slope { m, c }) => {
                Some(Point::new(x.clone(), m * x + c))
            }
            (LineKey::Vertical { .. }, LineKey::Vertical { .. }) => None,
        }
    }
}

/// Sorted, disjoint, non-touching parameter intervals on one line.
type Intervals = Vec<(Rational, Rational)>;

fn merge_intervals(mut v: Intervals) -> Intervals {
    v.sort();
    let mut out: Intervals = Vec::with_capacity(v.len());
    for (lo, hi) in v {
        if let Some(last) = out.last_mut() {
            if lo <= last.1 {
                if hi > last.1 {
                    last.1 = hi;
                }
                continue;
            }
        }
        out.push((lo, hi));
    }
    out
}

fn intervals_contain(iv: &Intervals, t: &Rational) -> bool {
    let idx = iv.partition_point(|(lo, _)| lo <= t);
    idx > 0 && &iv[idx - 1].1 >= t
}

/// Per-line view of a segment set used by the membership predicates.
#[derive(Debug)]
pub(crate) struct LineIndex {
    lines: BTreeMap<LineKey, Intervals>,
    points: Vec<Point>,
}

impl LineIndex {
    fn build<'a>(segments: impl IntoIterator<Item = &'a Segment>) -> Self {
        let mut raw: BTreeMap<LineKey, Intervals> = BTreeMap::new();
        let mut points = Vec::new();
        for s in segments {
            match s.line() {
                Some(key) => {
                    let lo = key.param(&s.a);
                    let hi = key.param(&s.b);
                    raw.entry(key).or_default().push((lo, hi));
                }
                None => points.push(s.a.clone()),
            }
        }
        let lines = raw
            .into_iter()
            .map(|(k, v)| (k, merge_intervals(v)))
            .collect();
        points.sort();
        points.dedup();
        LineIndex { lines, points }
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        if self.points.binary_search(p).is_ok() {
            return true;
        }
        self.lines.iter().any(|(key, iv)| {
            let on_line = match key {
                LineKey::Slope { m, c } => p.y == m * &p.x + c,
                LineKey::Vertical { x } => &p.x == x,
            };
            on_line && intervals_contain(iv, &key.param(p))
        })
    }

    /// Does the union of collinear pieces cover `s`? Valid because any other
    /// line meets `s` in at most one point.
    pub fn covers_by_lines(&self, s: &Segment) -> bool {
        match s.line() {
            None => self.contains_point(&s.a),
            Some(key) => {
                let lo = key.param(&s.a);
                let hi = key.param(&s.b);
                self.lines.get(&key).is_some_and(|iv| {
                    let idx = iv.partition_point(|(a, _)| a <= &lo);
                    idx > 0 && iv[idx - 1].1 >= hi
                })
            }
        }
    }

    /// Coverage decided by splitting `s` at every crossing with a supporting
    /// line of the set and at collinear endpoints, then testing each split
    /// point and each open sub-piece midpoint for membership.
    pub fn covers_by_splitting(&self, s: &Segment) -> bool {
        let Some(key) = s.line() else {
            return self.contains_point(&s.a);
        };
        let lo = key.param(&s.a);
        let hi = key.param(&s.b);
        let own = self.lines.get(&key);

        // (parameter on s, whether the split point is already known to lie in the set)
        let mut splits: Vec<(Rational, bool)> = vec![(lo.clone(), false), (hi.clone(), false)];
        if let Some(iv) = own {
            for (a, b) in iv {
                for t in [a, b] {
                    if &lo <= t && t <= &hi {
                        splits.push((t.clone(), true));
                    }
                }
            }
        }
        for (other, iv) in &self.lines {
            if other == &key {
                continue;
            }
            if let Some(p) = key.intersect(other) {
                let t = key.param(&p);
                if lo <= t && t <= hi {
                    splits.push((t, intervals_contain(iv, &other.param(&p))));
                }
            }
        }
        for p in &self.points {
            if s.contains_point(p) {
                splits.push((key.param(p), true));
            }
        }
        splits.sort();
        let mut merged: Vec<(Rational, bool)> = Vec::with_capacity(splits.len());
        for (t, inside) in splits {
            match merged.last_mut() {
                Some(last) if last.0 == t => last.1 |= inside,
                _ => merged.push((t, inside)),
            }
        }

        let on_own = |t: &Rational| own.is_some_and(|iv| intervals_contain(iv, t));
        let two = int(2);
        for (i, (t, inside)) in merged.iter().enumerate() {
            if !inside && !on_own(t) {
                return false;
            }
            if let Some((next, _)) = merged.get(i + 1) {
                let mid = (t + next) / &two;
                if !on_own(&mid) {
                    return false;
                }
            }
        }
        true
    }

    fn rebuild(self) -> Vec<Segment> {
        let mut segs: Vec<Segment> = Vec::new();
        for (key, iv) in &self.lines {
            for (lo, hi) in iv {
                segs.push(Segment::new(key.point_at(lo), key.point_at(hi)));
            }
        }
        let covered: Vec<bool> = self
            .points
            .iter()
            .map(|p| segs.iter().any(|s| s.contains_point(p)))
            .collect();
        for (p, c) in self.points.into_iter().zip(covered) {
            if !c {
                segs.push(Segment::point(p));
            }
        }
        segs.sort();
        segs
    }
}

/// Closed subset of the unit square given as a finite union of segments,
/// kept in a canonical form: collinear overlapping or touching pieces are
/// merged, isolated points covered by a segment are dropped and the list is
/// sorted. Two sets are equal as point sets iff their canonical forms are
/// equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SegmentSet {
    segments: Vec<Segment>,
}

impl SegmentSet {
    pub fn new(segments: Vec<Segment>) -> Self {
        SegmentSet {
            segments: LineIndex::build(&segments).rebuild(),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub(crate) fn index(&self) -> LineIndex {
        LineIndex::build(&self.segments)
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        self.index().contains_point(p)
    }

    /// `self ⊆ other`, by the split-and-test procedure.
    pub fn is_subset(&self, other: &SegmentSet) -> bool {
        let idx = other.index();
        self.segments.iter().all(|s| idx.covers_by_splitting(s))
    }

    /// `self ⊆ other`, by collinear interval coverage only.
    pub fn is_subset_by_lines(&self, other: &SegmentSet) -> bool {
        let idx = other.index();
        self.segments.iter().all(|s| idx.covers_by_lines(s))
    }

    /// Swap coordinates of every point.
    pub fn transpose(&self) -> SegmentSet {
        SegmentSet::new(
            self.segments
                .iter()
                .map(|s| {
                    Segment::new(
                        Point::new(s.a.y.clone(), s.a.x.clone()),
                        Point::new(s.b.y.clone(), s.b.x.clone()),
                    )
                })
                .collect(),
        )
    }

    /// Every segment endpoint, sorted and deduplicated.
    pub fn vertices(&self) -> Vec<Point> {
        let mut v: Vec<Point> = self
            .segments
            .iter()
            .flat_map(|s| [s.a.clone(), s.b.clone()])
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// CSV with header `x1,y1,x2,y2` and exact rationals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x1,y1,x2,y2\n");
        for s in &self.segments {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                format_rational(&s.a.x),
                format_rational(&s.a.y),
                format_rational(&s.b.x),
                format_rational(&s.b.y)
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn p(a: (i64, i64), b: (i64, i64)) -> Point {
        Point::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    fn seg(a: Point, b: Point) -> Segment {
        Segment::new(a, b)
    }

    #[test]
    fn segments_are_ordered() {
        let s = seg(p((1, 1), (0, 1)), p((0, 1), (1, 1)));
        assert_eq!(s.a(), &p((0, 1), (1, 1)));
        assert!(s.contains_point(&p((1, 2), (1, 2))));
        assert!(!s.contains_point(&p((1, 2), (1, 3))));
    }

    #[test]
    fn canonical_form_merges_collinear_pieces() {
        let a = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((1, 2), (1, 2))),
            seg(p((1, 4), (1, 4)), p((1, 1), (1, 1))),
            Segment::point(p((1, 3), (1, 3))),
        ]);
        let b = SegmentSet::new(vec![seg(p((0, 1), (0, 1)), p((1, 1), (1, 1)))]);
        assert_eq!(a, b);
        assert_eq!(a.len(), 1);
    }

    #[test]
    fn touching_collinear_pieces_merge_but_gaps_do_not() {
        let touching = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((0, 1), (1, 2))),
            seg(p((0, 1), (1, 2)), p((0, 1), (1, 1))),
        ]);
        assert_eq!(touching.len(), 1);
        let gap = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((0, 1), (1, 3))),
            seg(p((0, 1), (1, 2)), p((0, 1), (1, 1))),
        ]);
        assert_eq!(gap.len(), 2);
    }

    #[test]
    fn isolated_points_survive_when_uncovered() {
        let s = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((1, 1), (1, 1))),
            Segment::point(p((1, 2), (0, 1))),
        ]);
        assert_eq!(s.len(), 2);
        assert!(s.contains_point(&p((1, 2), (0, 1))));
    }

    #[test]
    fn containment_routes_agree() {
        // an X and one of its arms
        let x = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((1, 1), (1, 1))),
            seg(p((0, 1), (1, 1)), p((1, 1), (0, 1))),
        ]);
        let arm = SegmentSet::new(vec![seg(p((0, 1), (0, 1)), p((1, 2), (1, 2)))]);
        let bent = SegmentSet::new(vec![seg(p((0, 1), (0, 1)), p((1, 2), (1, 1)))]);
        assert!(arm.is_subset(&x) && arm.is_subset_by_lines(&x));
        assert!(!x.is_subset(&arm) && !x.is_subset_by_lines(&arm));
        assert!(!bent.is_subset(&x) && !bent.is_subset_by_lines(&x));
        // a segment covered by two collinear pieces meeting at a crossing
        let split = SegmentSet::new(vec![
            seg(p((0, 1), (0, 1)), p((1, 2), (1, 2))),
            seg(p((1, 2), (1, 2)), p((1, 1), (1, 1))),
        ]);
        assert!(split.is_subset(&x));
    }

    #[test]
    fn vertical_lines() {
        let v = SegmentSet::new(vec![
            seg(p((1, 2), (0, 1)), p((1, 2), (1, 2))),
            seg(p((1, 2), (1, 4)), p((1, 2), (1, 1))),
        ]);
        assert_eq!(v.len(), 1);
        let part = SegmentSet::new(vec![seg(p((1, 2), (1, 3)), p((1, 2), (2, 3)))]);
        assert!(part.is_subset(&v));
        assert!(part.is_subset_by_lines(&v));
        assert!(!v.is_subset(&part));
    }

    #[test]
    fn csv_output() {
        let s = SegmentSet::new(vec![seg(p((0, 1), (0, 1)), p((1, 1), (1, 2)))]);
        assert_eq!(s.to_csv(), "x1,y1,x2,y2\n0,0,1,1/2\n");
        assert_eq!(SegmentSet::default().to_csv(), "x1,y1,x2,y2\n");
    }
}
