//! Piecewise-linear self-maps of the unit interval.
//!
//! A [`PLMap`] is stored as its breakpoint list in canonical form: the first
//! abscissa is 0, the last is 1, abscissae strictly increase, every piece has
//! nonzero slope and no two consecutive pieces are collinear. Canonical form
//! makes structural equality coincide with equality of functions.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rational::{format_rational, in_unit, int, one, zero, Rational};

/// Default cap on the number of breakpoints an iterate or composition may
/// produce before [`Error::Resource`] is raised.
pub const DEFAULT_BREAKPOINT_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PLMap {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extremum {
    Max,
    Min,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalPoint {
    pub x: Rational,
    pub kind: Extremum,
}

/// Interior turning points of a map, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CriticalSet {
    points: Vec<CriticalPoint>,
}

impl CriticalSet {
    pub fn points(&self) -> &[CriticalPoint] {
        &self.points
    }

    pub fn xs(&self) -> Vec<Rational> {
        self.points.iter().map(|c| c.x.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.points.binary_search_by(|c| c.x.cmp(x)).is_ok()
    }

    pub fn kind_of(&self, x: &Rational) -> Option<Extremum> {
        self.points
            .binary_search_by(|c| c.x.cmp(x))
            .ok()
            .map(|i| self.points[i].kind)
    }

    /// `0 = c_0 < c_1 < ... < c_n < c_{n+1} = 1`.
    pub fn with_ends(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(self.points.len() + 2);
        v.push(zero());
        v.extend(self.points.iter().map(|c| c.x.clone()));
        v.push(one());
        v
    }
}

/// Solution set of `f(x) = x`: isolated points plus intervals on which `f`
/// is the identity. Components are disjoint and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FixedSet {
    pub isolated: Vec<Rational>,
    pub segments: Vec<Interval>,
}

impl FixedSet {
    pub fn contains(&self, x: &Rational) -> bool {
        self.isolated.binary_search(x).is_ok() || self.segments.iter().any(|s| s.contains(x))
    }

    pub fn is_empty(&self) -> bool {
        self.isolated.is_empty() && self.segments.is_empty()
    }

    pub fn least(&self) -> Option<Rational> {
        let a = self.isolated.first();
        let b = self.segments.first().map(|s| s.lo());
        match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b).clone()),
            (Some(a), None) => Some(a.clone()),
            (None, Some(b)) => Some(b.clone()),
            (None, None) => None,
        }
    }

    /// All components as closed intervals (isolated points are degenerate).
    pub fn components(&self) -> Vec<Interval> {
        let mut out: Vec<Interval> = self
            .isolated
            .iter()
            .map(|x| Interval::new_unchecked(x.clone(), x.clone()))
            .chain(self.segments.iter().cloned())
            .collect();
        out.sort();
        out
    }

    fn from_components(mut comps: Vec<Interval>) -> Self {
        comps.sort();
        let mut merged: Vec<Interval> = Vec::new();
        for c in comps {
            if let Some(last) = merged.last_mut() {
                if c.lo() <= last.hi() {
                    if c.hi() > last.hi() {
                        *last = Interval::new_unchecked(last.lo().clone(), c.hi().clone());
                    }
                    continue;
                }
            }
            merged.push(c);
        }
        let mut out = FixedSet::default();
        for c in merged {
            if c.is_degenerate() {
                out.isolated.push(c.lo().clone());
            } else {
                out.segments.push(c);
            }
        }
        out
    }

    pub fn intersect(&self, other: &FixedSet) -> FixedSet {
        let a = self.components();
        let b = other.components();
        let mut comps = Vec::new();
        for p in &a {
            for q in &b {
                let lo = p.lo().max(q.lo());
                let hi = p.hi().min(q.hi());
                if lo <= hi {
                    comps.push(Interval::new_unchecked(lo.clone(), hi.clone()));
                }
            }
        }
        FixedSet::from_components(comps)
    }
}

/// A connected piece of a level set `{x : f(x) in range}` with
/// open/closed flags at each end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct LevelPiece {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

/// A range of values with independently open or closed ends.
#[derive(Clone, Debug)]
pub(crate) struct ValueRange {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl ValueRange {
    pub fn closed(lo: Rational, hi: Rational) -> Self {
        ValueRange {
            lo,
            lo_closed: true,
            hi,
            hi_closed: true,
        }
    }
}

impl PLMap {
    /// Validate and canonicalize a breakpoint list.
    pub fn new(points: Vec<(Rational, Rational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::domain("a map needs at least two breakpoints"));
        }
        if !points[0].0.is_zero() {
            return Err(Error::domain("first abscissa must be 0"));
        }
        if !points[points.len() - 1].0.is_one() {
            return Err(Error::domain("last abscissa must be 1"));
        }
        for (i, w) in points.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(Error::domain(format!(
                    "abscissae not strictly increasing at breakpoint {}",
                    i + 1
                )));
            }
            if w[0].1 == w[1].1 {
                return Err(Error::domain(format!(
                    "constant piece on [{}, {}]",
                    format_rational(&w[0].0),
                    format_rational(&w[1].0)
                )));
            }
        }
        for (x, y) in &points {
            if !in_unit(y) {
                return Err(Error::domain(format!(
                    "value {} at {} is outside [0, 1]",
                    format_rational(y),
                    format_rational(x)
                )));
            }
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self::canonical(xs, ys))
    }

    /// Merge collinear neighbours. Inputs must already satisfy every other
    /// invariant.
    fn canonical(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let mut cx: Vec<Rational> = Vec::with_capacity(xs.len());
        let mut cy: Vec<Rational> = Vec::with_capacity(ys.len());
        for (x, y) in xs.into_iter().zip(ys) {
            while cx.len() >= 2 {
                let n = cx.len();
                let (x0, y0, x1, y1) = (&cx[n - 2], &cy[n - 2], &cx[n - 1], &cy[n - 1]);
                if (y1 - y0) * (&x - x1) == (&y - y1) * (x1 - x0) {
                    cx.pop();
                    cy.pop();
                } else {
                    break;
                }
            }
            cx.push(x);
            cy.push(y);
        }
        PLMap { xs: cx, ys: cy }
    }

    pub fn identity() -> Self {
        PLMap {
            xs: vec![zero(), one()],
            ys: vec![zero(), one()],
        }
    }

    /// The symmetric `n`-tent map: linear on each `[i/n, (i+1)/n]`, sending
    /// `i/n` to 0 for even `i` and to 1 for odd `i`.
    pub fn tent(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!("tent map needs n >= 2, got {n}")));
        }
        let n = n as i64;
        let xs = (0..=n).map(|i| Rational::new(i.into(), n.into())).collect();
        let ys = (0..=n).map(|i| int(i % 2)).collect();
        Ok(PLMap { xs, ys })
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(self.ys.iter())
    }

    pub fn points(&self) -> Vec<(Rational, Rational)> {
        self.xs
            .iter()
            .cloned()
            .zip(self.ys.iter().cloned())
            .collect()
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    pub fn num_breakpoints(&self) -> usize {
        self.xs.len()
    }

    pub fn num_pieces(&self) -> usize {
        self.xs.len() - 1
    }

    /// Is the piece over `[xs[k], xs[k+1]]` increasing?
    pub(crate) fn piece_increasing(&self, k: usize) -> bool {
        self.ys[k + 1] > self.ys[k]
    }

    /// Index of the piece containing `x`, choosing the left piece at
    /// interior breakpoints.
    fn piece_index(&self, x: &Rational) -> usize {
        let idx = self.xs.partition_point(|b| b < x);
        idx.saturating_sub(1).min(self.xs.len() - 2)
    }

    /// Index of the piece that contains `(x, x + eps)` for small `eps`.
    fn piece_right_of(&self, x: &Rational) -> usize {
        let idx = self.xs.partition_point(|b| b <= x);
        idx.saturating_sub(1).min(self.xs.len() - 2)
    }

    fn eval_on_piece(&self, k: usize, x: &Rational) -> Rational {
        let (x0, x1, y0, y1) = (&self.xs[k], &self.xs[k + 1], &self.ys[k], &self.ys[k + 1]);
        if x == x0 {
            return y0.clone();
        }
        if x == x1 {
            return y1.clone();
        }
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    /// Inverse of the piece `k` at value `y` (caller checks range).
    fn invert_on_piece(&self, k: usize, y: &Rational) -> Rational {
        let (x0, x1, y0, y1) = (&self.xs[k], &self.xs[k + 1], &self.ys[k], &self.ys[k + 1]);
        if y == y0 {
            return x0.clone();
        }
        if y == y1 {
            return x1.clone();
        }
        x0 + (x1 - x0) * (y - y0) / (y1 - y0)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        if !in_unit(x) {
            return Err(Error::domain(format!(
                "evaluation point {} outside [0, 1]",
                format_rational(x)
            )));
        }
        Ok(self.eval_on_piece(self.piece_index(x), x))
    }

    /// Evaluation at a point already known to lie in `[0, 1]`.
    pub(crate) fn at(&self, x: &Rational) -> Rational {
        self.eval_on_piece(self.piece_index(x), x)
    }

    pub fn critical_points(&self) -> CriticalSet {
        let mut points = Vec::new();
        for i in 1..self.xs.len() - 1 {
            let up_before = self.ys[i] > self.ys[i - 1];
            let up_after = self.ys[i + 1] > self.ys[i];
            if up_before != up_after {
                points.push(CriticalPoint {
                    x: self.xs[i].clone(),
                    kind: if up_before {
                        Extremum::Max
                    } else {
                        Extremum::Min
                    },
                });
            }
        }
        CriticalSet { points }
    }

    pub fn is_onto(&self) -> bool {
        let min = self.ys.iter().min().unwrap();
        let max = self.ys.iter().max().unwrap();
        min.is_zero() && max.is_one()
    }

    /// No interior critical points.
    pub fn is_globally_monotone(&self) -> bool {
        self.critical_points().is_empty()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &PLMap) -> PLMap {
        self.compose_capped(inner, usize::MAX)
            .expect("uncapped composition cannot exceed its cap")
    }

    /// `self ∘ inner`, failing before allocation when the refined breakpoint
    /// list would exceed `cap`.
    pub fn compose_capped(&self, inner: &PLMap, cap: usize) -> Result<PLMap> {
        let outer_xs = &self.xs;
        let interior_between = |a: &Rational, b: &Rational| -> (usize, usize) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            let start = outer_xs.partition_point(|t| t <= lo);
            let end = outer_xs.partition_point(|t| t < hi);
            (start, end.max(start))
        };

        let mut count = inner.xs.len();
        for k in 0..inner.num_pieces() {
            let (s, e) = interior_between(&inner.ys[k], &inner.ys[k + 1]);
            count = count.saturating_add(e - s);
        }
        if count > cap {
            return Err(Error::Resource(format!(
                "composition needs {count} breakpoints, cap is {cap}"
            )));
        }

        let mut xs = Vec::with_capacity(count);
        let mut ys = Vec::with_capacity(count);
        for k in 0..inner.num_pieces() {
            let (x0, x1, y0, y1) = (
                &inner.xs[k],
                &inner.xs[k + 1],
                &inner.ys[k],
                &inner.ys[k + 1],
            );
            xs.push(x0.clone());
            ys.push(self.at(y0));
            let (s, e) = interior_between(y0, y1);
            let slope_inv = (x1 - x0) / (y1 - y0);
            let mut push = |b: &Rational, v: &Rational| {
                xs.push(x0 + (b - y0) * &slope_inv);
                ys.push(v.clone());
            };
            if y1 > y0 {
                for j in s..e {
                    push(&self.xs[j], &self.ys[j]);
                }
            } else {
                for j in (s..e).rev() {
                    push(&self.xs[j], &self.ys[j]);
                }
            }
        }
        xs.push(one());
        ys.push(self.at(inner.ys.last().unwrap()));
        Ok(PLMap::canonical(xs, ys))
    }

    /// `self` composed with itself `k` times, under the default cap.
    pub fn iterate(&self, k: u32) -> Result<PLMap> {
        self.iterate_capped(k, DEFAULT_BREAKPOINT_CAP)
    }

    pub fn iterate_capped(&self, k: u32, cap: usize) -> Result<PLMap> {
        if k == 0 {
            return Err(Error::domain("iterate needs k >= 1"));
        }
        if self.xs.len() > cap {
            return Err(Error::Resource(format!(
                "map has {} breakpoints, cap is {cap}",
                self.xs.len()
            )));
        }
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.compose_capped(self, cap)?;
        }
        Ok(acc)
    }

    /// Every `x` with `f(x) = y`, sorted.
    pub fn preimage_point(&self, y: &Rational) -> Vec<Rational> {
        let mut out: Vec<Rational> = Vec::new();
        for k in 0..self.num_pieces() {
            let (a, b) = (&self.ys[k], &self.ys[k + 1]);
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if lo <= y && y <= hi {
                let x = self.invert_on_piece(k, y);
                if out.last() != Some(&x) {
                    out.push(x);
                }
            }
        }
        out
    }

    /// Components of `{x : f(x) in range}` with open/closed flags.
    pub(crate) fn level_pieces(&self, range: &ValueRange) -> Vec<LevelPiece> {
        let mut pieces: Vec<LevelPiece> = Vec::new();
        for k in 0..self.num_pieces() {
            let inc = self.piece_increasing(k);
            let (ymin, ymax) = if inc {
                (&self.ys[k], &self.ys[k + 1])
            } else {
                (&self.ys[k + 1], &self.ys[k])
            };
            let (vlo, vlo_closed) = match range.lo.cmp(ymin) {
                Ordering::Greater => (range.lo.clone(), range.lo_closed),
                Ordering::Equal => (ymin.clone(), range.lo_closed),
                Ordering::Less => (ymin.clone(), true),
            };
            let (vhi, vhi_closed) = match range.hi.cmp(ymax) {
                Ordering::Less => (range.hi.clone(), range.hi_closed),
                Ordering::Equal => (ymax.clone(), range.hi_closed),
                Ordering::Greater => (ymax.clone(), true),
            };
            match vlo.cmp(&vhi) {
                Ordering::Greater => continue,
                Ordering::Equal if !(vlo_closed && vhi_closed) => continue,
                _ => {}
            }
            let xa = self.invert_on_piece(k, &vlo);
            let xb = self.invert_on_piece(k, &vhi);
            let piece = if inc {
                LevelPiece {
                    lo: xa,
                    lo_closed: vlo_closed,
                    hi: xb,
                    hi_closed: vhi_closed,
                }
            } else {
                LevelPiece {
                    lo: xb,
                    lo_closed: vhi_closed,
                    hi: xa,
                    hi_closed: vlo_closed,
                }
            };
            if let Some(last) = pieces.last_mut() {
                if last.hi == piece.lo && (last.hi_closed || piece.lo_closed) {
                    last.hi = piece.hi;
                    last.hi_closed = piece.hi_closed;
                    continue;
                }
            }
            pieces.push(piece);
        }
        pieces
    }

    /// Maximal connected components of `f^{-1}(J)`, sorted.
    pub fn preimage_interval(&self, j: &Interval) -> Vec<Interval> {
        self.level_pieces(&ValueRange::closed(j.lo().clone(), j.hi().clone()))
            .into_iter()
            .map(|p| Interval::new_unchecked(p.lo, p.hi))
            .collect()
    }

    /// `f(J)` as an exact interval.
    pub fn image(&self, j: &Interval) -> Interval {
        let a = self.at(j.lo());
        let b = self.at(j.hi());
        let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
        let start = self.xs.partition_point(|x| x <= j.lo());
        let end = self.xs.partition_point(|x| x < j.hi());
        for y in &self.ys[start..end.max(start)] {
            if y < &lo {
                lo = y.clone();
            }
            if y > &hi {
                hi = y.clone();
            }
        }
        Interval::new_unchecked(lo, hi)
    }

    /// Critical points of `f` lying strictly inside `J`.
    pub fn critical_points_in(&self, j: &Interval) -> Vec<CriticalPoint> {
        self.critical_points()
            .points
            .into_iter()
            .filter(|c| j.contains_interior(&c.x))
            .collect()
    }

    pub fn is_monotone(&self, j: &Interval) -> bool {
        self.critical_points_in(j).is_empty()
    }

    /// Is `f|J : J -> K` an open map? Requires `f(J) ⊆ K`.
    pub fn is_open(&self, j: &Interval, k: &Interval) -> Result<bool> {
        let img = self.image(j);
        if !k.contains_interval(&img) {
            return Err(Error::domain(format!(
                "image {img} of {j} is not contained in {k}"
            )));
        }
        if j.is_degenerate() {
            return Ok(k.is_degenerate());
        }
        for c in self.critical_points_in(j) {
            let v = self.at(&c.x);
            let ok = match c.kind {
                Extremum::Max => &v == k.hi(),
                Extremum::Min => &v == k.lo(),
            };
            if !ok {
                return Ok(false);
            }
        }
        let first = self.piece_right_of(j.lo());
        let left_ok = if self.piece_increasing(first) {
            &self.at(j.lo()) == k.lo()
        } else {
            &self.at(j.lo()) == k.hi()
        };
        let last = self.piece_index(j.hi());
        let right_ok = if self.piece_increasing(last) {
            &self.at(j.hi()) == k.hi()
        } else {
            &self.at(j.hi()) == k.lo()
        };
        Ok(left_ok && right_ok)
    }

    /// Exact solution set of `f(x) = x`, one linear solve per piece.
    pub fn fixed_points(&self) -> FixedSet {
        let mut comps = Vec::new();
        for k in 0..self.num_pieces() {
            let (x0, x1, y0, y1) = (&self.xs[k], &self.xs[k + 1], &self.ys[k], &self.ys[k + 1]);
            let slope = (y1 - y0) / (x1 - x0);
            if slope.is_one() {
                if x0 == y0 {
                    comps.push(Interval::new_unchecked(x0.clone(), x1.clone()));
                }
                continue;
            }
            // y0 + s (x - x0) = x
            let x = (y0 - &slope * x0) / (one() - &slope);
            if x0 <= &x && &x <= x1 {
                comps.push(Interval::new_unchecked(x.clone(), x));
            }
        }
        FixedSet::from_components(comps)
    }

    /// Inverse of a PL homeomorphism of `[0, 1]`.
    pub fn inverse_homeomorphism(&self) -> Result<PLMap> {
        if !self.is_globally_monotone() {
            return Err(Error::domain("map is not monotone, so not a homeomorphism"));
        }
        let ends = (&self.ys[0], self.ys.last().unwrap());
        let increasing = match ends {
            (a, b) if a.is_zero() && b.is_one() => true,
            (a, b) if a.is_one() && b.is_zero() => false,
            _ => return Err(Error::domain("monotone map is not onto [0, 1]")),
        };
        let mut pts: Vec<(Rational, Rational)> = self
            .ys
            .iter()
            .cloned()
            .zip(self.xs.iter().cloned())
            .collect();
        if !increasing {
            pts.reverse();
        }
        let (xs, ys) = pts.into_iter().unzip();
        Ok(PLMap { xs, ys })
    }

    /// `h^{-1} ∘ f ∘ h` for a PL homeomorphism `h`.
    pub fn conjugate(&self, h: &PLMap) -> Result<PLMap> {
        let h_inv = h.inverse_homeomorphism()?;
        Ok(h_inv.compose(&self.compose(h)))
    }

    /// Number of maximal monotone pieces.
    pub fn lap_count(&self) -> usize {
        self.critical_points().len() + 1
    }

    /// Midpoint of every piece; handy for sampling away from breakpoints.
    pub fn piece_midpoints(&self) -> Vec<Rational> {
        let two = int(2);
        self.xs.windows(2).map(|w| (&w[0] + &w[1]) / &two).collect()
    }
}

impl fmt::Display for PLMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .breakpoints()
            .map(|(x, y)| format!("({}, {})", format_rational(x), format_rational(y)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}
