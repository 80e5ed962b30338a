use crate::plmap::PLMap;
use crate::rational::Rational;

use super::segment::{Point, Segment, SegmentSet};

/// Union of the breakpoint abscissae of both maps.
pub(crate) fn common_breakpoints(f: &PLMap, g: &PLMap) -> Vec<Rational> {
    let mut ts: Vec<Rational> = f.xs().iter().chain(g.xs()).cloned().collect();
    ts.sort();
    ts.dedup();
    ts
}

/// The polyline `t -> (g(t), f(t))` as consecutive pieces, one per interval
/// of [`common_breakpoints`]. Each piece keeps its parameter range.
pub(crate) fn forward_pieces(f: &PLMap, g: &PLMap) -> Vec<(Rational, Rational, Segment)> {
    let ts = common_breakpoints(f, g);
    let pts: Vec<Point> = ts.iter().map(|t| Point::new(g.at(t), f.at(t))).collect();
    ts.windows(2)
        .zip(pts.windows(2))
        .map(|(t, p)| {
            (
                t[0].clone(),
                t[1].clone(),
                Segment::new(p[0].clone(), p[1].clone()),
            )
        })
        .collect()
}

/// Graph of `f ∘ g⁻¹`, i.e. `{(g(t), f(t)) : t ∈ [0, 1]}`.
pub fn forward_graph(f: &PLMap, g: &PLMap) -> SegmentSet {
    SegmentSet::new(
        forward_pieces(f, g)
            .into_iter()
            .map(|(_, _, s)| s)
            .collect(),
    )
}

/// Graph of `g⁻¹ ∘ f`, i.e. the zero set of `g(y) - f(x)`.
///
/// On each cell formed by a linear piece of `f` in `x` and a linear piece of
/// `g` in `y`, both maps are strictly monotone, so the solutions form one
/// segment joining the points where the shared value range starts and ends.
pub fn pullback_graph(f: &PLMap, g: &PLMap) -> SegmentSet {
    let range = |m: &PLMap, k: usize| {
        let (a, b) = (&m.ys()[k], &m.ys()[k + 1]);
        if a < b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    };
    let inv = |m: &PLMap, k: usize, v: &Rational| {
        let (x0, x1, y0, y1) = (&m.xs()[k], &m.xs()[k + 1], &m.ys()[k], &m.ys()[k + 1]);
        x0 + (x1 - x0) * (v - y0) / (y1 - y0)
    };
    let f_ranges: Vec<_> = (0..f.num_pieces()).map(|i| range(f, i)).collect();
    let g_ranges: Vec<_> = (0..g.num_pieces()).map(|j| range(g, j)).collect();
    let mut segs = Vec::new();
    for (i, (flo, fhi)) in f_ranges.iter().enumerate() {
        for (j, (glo, ghi)) in g_ranges.iter().enumerate() {
            let lo = flo.max(glo);
            let hi = fhi.min(ghi);
            if lo > hi {
                continue;
            }
            let p = Point::new(inv(f, i, lo), inv(g, j, lo));
            if lo == hi {
                segs.push(Segment::point(p));
            } else {
                segs.push(Segment::new(p, Point::new(inv(f, i, hi), inv(g, j, hi))));
            }
        }
    }
    SegmentSet::new(segs)
}

/// Point-set equality, decided by splitting each segment of one set at the
/// supporting lines of the other and testing split points and midpoints.
pub fn graphs_equal(a: &SegmentSet, b: &SegmentSet) -> bool {
    a.is_subset(b) && b.is_subset(a)
}

/// `f ∘ g = g ∘ f`.
pub fn commute(f: &PLMap, g: &PLMap) -> bool {
    f.compose(g) == g.compose(f)
}

/// `f ∘ g⁻¹ = g⁻¹ ∘ f` as set-valued maps.
pub fn strongly_commute(f: &PLMap, g: &PLMap) -> bool {
    commute(f, g) && graphs_equal(&forward_graph(f, g), &pullback_graph(f, g))
}
