//! Primary critical values, exacting points and orientation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plmap::{LevelPiece, PLMap, ValueRange};
use crate::rational::{int, one, serialize_opt_vec, serialize_vec, zero, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Preserving,
    Reversing,
    Degenerate,
}

/// Primary critical values `v_i` in increasing order with their exacting
/// points `t_i` (same indexing; `None` where no exacting point exists).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimaryValues {
    #[serde(serialize_with = "serialize_vec")]
    pub values: Vec<Rational>,
    #[serde(serialize_with = "serialize_opt_vec")]
    pub exacting: Vec<Option<Rational>>,
    /// `v = 0` is not a critical value and was added by convention, so the
    /// first value carries index 0; otherwise indexing starts at 1.
    pub zero_is_conventional: bool,
    /// `v = 1` is not a critical value and was added by convention.
    pub one_is_conventional: bool,
    pub orientation: Orientation,
}

impl PrimaryValues {
    /// Index of `values[0]` in the conventional numbering.
    pub fn first_index(&self) -> usize {
        if self.zero_is_conventional {
            0
        } else {
            1
        }
    }

    /// Primary values strictly inside `(0, 1)`.
    pub fn interior(&self) -> Vec<Rational> {
        self.values
            .iter()
            .filter(|v| !v.is_integer())
            .cloned()
            .collect()
    }

    /// Gaps `[v_i, v_{i+1}]` with odd `i` in the conventional numbering.
    pub fn odd_gaps(&self) -> Vec<(Rational, Rational)> {
        let start = self.first_index();
        self.values
            .windows(2)
            .enumerate()
            .filter(|(k, _)| (k + start) % 2 == 1)
            .map(|(_, w)| (w[0].clone(), w[1].clone()))
            .collect()
    }

    /// Defined exacting points in index order.
    pub fn defined_exacting(&self) -> Vec<Rational> {
        self.exacting.iter().flatten().cloned().collect()
    }
}

fn range(lo: &Rational, lo_closed: bool, hi: &Rational, hi_closed: bool) -> ValueRange {
    ValueRange {
        lo: lo.clone(),
        lo_closed,
        hi: hi.clone(),
        hi_closed,
    }
}

/// Boundary point between two complementary connected level sets.
fn cut_point(a: &[LevelPiece], b: &[LevelPiece]) -> Option<Rational> {
    let (a, b) = (a.first()?, b.first()?);
    if a.hi == b.lo {
        Some(a.hi.clone())
    } else if b.hi == a.lo {
        Some(a.lo.clone())
    } else {
        None
    }
}

/// Is `v` primary, and if so, where is its exacting point?
fn classify_value(f: &PLMap, v: &Rational) -> Option<Option<Rational>> {
    let (z, o) = (zero(), one());
    let below_open = f.level_pieces(&range(&z, true, v, false));
    let above_closed = f.level_pieces(&range(v, true, &o, true));
    if below_open.len() <= 1 && above_closed.len() <= 1 {
        return Some(cut_point(&below_open, &above_closed));
    }
    let below_closed = f.level_pieces(&range(&z, true, v, true));
    let above_open = f.level_pieces(&range(v, false, &o, true));
    if below_closed.len() <= 1 && above_open.len() <= 1 {
        return Some(cut_point(&below_closed, &above_open));
    }
    None
}

/// For `v ∈ {0, 1}`: the endpoint of `[0, 1]` mapped to `v`, if there is
/// exactly one.
fn boundary_exacting(f: &PLMap, v: &Rational) -> Option<Rational> {
    let ends: Vec<Rational> = [zero(), one()]
        .into_iter()
        .filter(|x| &f.at(x) == v)
        .collect();
    (ends.len() == 1).then(|| ends[0].clone())
}

pub fn primary_critical_values(f: &PLMap) -> Result<PrimaryValues> {
    if !f.is_onto() {
        return Err(Error::precondition("map is not onto"));
    }
    let mut crit_values: Vec<Rational> = f
        .critical_points()
        .points()
        .iter()
        .map(|c| f.at(&c.x))
        .collect();
    crit_values.sort();
    crit_values.dedup();

    let zero_is_conventional = crit_values.first() != Some(&zero());
    let one_is_conventional = crit_values.last() != Some(&one());
    let mut values = Vec::new();
    let mut exacting = Vec::new();
    if zero_is_conventional {
        values.push(zero());
        exacting.push(boundary_exacting(f, &zero()));
    }
    for v in crit_values {
        if v.is_integer() {
            exacting.push(boundary_exacting(f, &v));
            values.push(v);
        } else if let Some(t) = classify_value(f, &v) {
            exacting.push(t);
            values.push(v);
        }
    }
    if one_is_conventional {
        values.push(one());
        exacting.push(boundary_exacting(f, &one()));
    }
    let ts: Vec<Rational> = exacting.iter().flatten().cloned().collect();
    let orientation = orientation_from(f, &ts);
    Ok(PrimaryValues {
        values,
        exacting,
        zero_is_conventional,
        one_is_conventional,
        orientation,
    })
}

fn orientation_from(f: &PLMap, ts: &[Rational]) -> Orientation {
    if ts.len() >= 2 {
        if ts.windows(2).all(|w| w[0] < w[1]) {
            return Orientation::Preserving;
        }
        if ts.windows(2).all(|w| w[0] > w[1]) {
            return Orientation::Reversing;
        }
    }
    cut_value_orientation(f)
}

/// A value attained exactly once away from the breakpoint values cuts
/// `[0, 1]` into a part below and a part above it; the sign of
/// `f(1) - f(0)` then says which side each part lies on.
fn cut_value_orientation(f: &PLMap) -> Orientation {
    let mut ys: Vec<Rational> = f.ys().to_vec();
    ys.sort();
    ys.dedup();
    let two = int(2);
    for w in ys.windows(2) {
        let v = (&w[0] + &w[1]) / &two;
        if f.preimage_point(&v).len() == 1 {
            let (a, b) = (f.at(&zero()), f.at(&one()));
            return if b > a {
                Orientation::Preserving
            } else {
                Orientation::Reversing
            };
        }
    }
    Orientation::Degenerate
}

pub fn orientation(f: &PLMap) -> Result<Orientation> {
    Ok(primary_critical_values(f)?.orientation)
}
