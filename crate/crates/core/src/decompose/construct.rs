//! Invariant-interval decompositions of strongly commuting pairs.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::plmap::PLMap;
use crate::rational::{one, serialize_vec, zero, Rational};
use crate::report::Report;
use crate::setvalued::strongly_commute;

use super::primary::{orientation, Orientation};
use super::split::split_common_fixed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    A,
    B,
    C,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalClass {
    Monotone,
    OpenNonMonotone,
    NonOpenNonMonotone,
}

impl IntervalClass {
    pub fn is_open(self) -> bool {
        self == IntervalClass::OpenNonMonotone
    }

    pub fn is_monotone(self) -> bool {
        self == IntervalClass::Monotone
    }
}

/// Class of `m|J : J -> K`. A monotone restriction is reported as monotone
/// whether or not it is onto `K`.
pub fn classify(m: &PLMap, j: &Interval, k: &Interval) -> Result<IntervalClass> {
    if m.is_monotone(j) {
        return Ok(IntervalClass::Monotone);
    }
    Ok(if m.is_open(j, k)? {
        IntervalClass::OpenNonMonotone
    } else {
        IntervalClass::NonOpenNonMonotone
    })
}

/// One block `[p_i, p_{i+1}]` of a decomposition with the images of both
/// maps and their classes. Blocks invariant under a map are classified
/// relative to the block itself; blocks moved by a map are classified
/// relative to their image. Second iterates are classified only where the
/// case involves them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub interval: Interval,
    pub f_image: Interval,
    pub g_image: Interval,
    pub f_class: IntervalClass,
    pub g_class: IntervalClass,
    pub f2_class: Option<IntervalClass>,
    pub g2_class: Option<IntervalClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(serialize_with = "serialize_vec")]
    pub points: Vec<Rational>,
    pub case: Case,
    /// Case b only: `g` is the map that reverses the block order and `f`
    /// leaves every block invariant.
    pub roles_swapped: bool,
    pub blocks: Vec<Block>,
}

impl Decomposition {
    pub fn intervals(&self) -> Vec<Interval> {
        blocks_of(&self.points)
    }
}

fn blocks_of(points: &[Rational]) -> Vec<Interval> {
    points
        .windows(2)
        .map(|w| Interval::new_unchecked(w[0].clone(), w[1].clone()))
        .collect()
}

/// Split `[0, 1]` until on every block at least one of `f`, `g` is open
/// onto the block. Both maps must leave every produced block invariant.
fn invariant_partition(f: &PLMap, g: &PLMap) -> Result<Vec<Rational>> {
    let bound = f.critical_points().len() + g.critical_points().len() + 1;
    let mut points = vec![zero(), one()];
    let mut splits = 0;
    'outer: loop {
        for (i, j) in blocks_of(&points).into_iter().enumerate() {
            let open = |m: &PLMap| {
                m.is_open(&j, &j).map_err(|e| {
                    Error::InternalInvariant(format!("block {j} lost invariance: {e}"))
                })
            };
            if open(f)? || open(g)? {
                continue;
            }
            if splits >= bound {
                return Err(Error::InternalInvariant(format!(
                    "splitting did not finish within {bound} steps"
                )));
            }
            let p = split_common_fixed(f, g, &j)?;
            points.insert(i + 1, p);
            splits += 1;
            continue 'outer;
        }
        return Ok(points);
    }
}

/// Add the endpoints of `m([p_i, p_{i+1}])` to the partition.
fn refine_by_images(points: &[Rational], m: &PLMap) -> Vec<Rational> {
    let mut out: Vec<Rational> = points.to_vec();
    for j in blocks_of(points) {
        let img = m.image(&j);
        out.push(img.lo().clone());
        out.push(img.hi().clone());
    }
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attempt {
    A,
    B { swapped: bool },
    C,
}

fn build(f: &PLMap, g: &PLMap, attempt: Attempt) -> Result<Decomposition> {
    let f2 = f.compose(f);
    let g2 = g.compose(g);
    let (points, case, roles_swapped) = match attempt {
        Attempt::A => (invariant_partition(f, g)?, Case::A, false),
        Attempt::B { swapped } => {
            let (r, r2, s) = if swapped { (g, &g2, f) } else { (f, &f2, g) };
            let p = invariant_partition(r2, s)?;
            (refine_by_images(&p, r), Case::B, swapped)
        }
        Attempt::C => {
            let p = invariant_partition(&f2, &g2)?;
            let p = refine_by_images(&p, f);
            (refine_by_images(&p, g), Case::C, false)
        }
    };
    let blocks = compute_blocks(f, g, &f2, &g2, &points, case, roles_swapped)?;
    Ok(Decomposition {
        points,
        case,
        roles_swapped,
        blocks,
    })
}

fn compute_blocks(
    f: &PLMap,
    g: &PLMap,
    f2: &PLMap,
    g2: &PLMap,
    points: &[Rational],
    case: Case,
    roles_swapped: bool,
) -> Result<Vec<Block>> {
    let mut out = Vec::new();
    for j in blocks_of(points) {
        let f_image = f.image(&j);
        let g_image = g.image(&j);
        // which maps move blocks around
        let (f_moves, g_moves) = match case {
            Case::A => (false, false),
            Case::B => (!roles_swapped, roles_swapped),
            Case::C => (true, true),
        };
        let f_target = if f_moves { f_image.clone() } else { j.clone() };
        let g_target = if g_moves { g_image.clone() } else { j.clone() };
        out.push(Block {
            f_class: classify(f, &j, &f_target)?,
            g_class: classify(g, &j, &g_target)?,
            f2_class: if f_moves {
                Some(classify(f2, &j, &j)?)
            } else {
                None
            },
            g2_class: if g_moves || case == Case::C {
                Some(classify(g2, &j, &j)?)
            } else {
                None
            },
            interval: j,
            f_image,
            g_image,
        });
    }
    Ok(out)
}

/// Invariant-interval decomposition of a strongly commuting pair of onto
/// maps. The case is chosen from the orientations of both maps; if the
/// chosen construction does not verify, the remaining constructions are
/// tried in the order a, b, b with roles swapped, c.
pub fn decompose(f: &PLMap, g: &PLMap) -> Result<Decomposition> {
    if !f.is_onto() || !g.is_onto() {
        return Err(Error::precondition("both maps must be onto"));
    }
    if !strongly_commute(f, g) {
        return Err(Error::precondition("maps do not strongly commute"));
    }
    let rf = orientation(f)? == Orientation::Reversing;
    let rg = orientation(g)? == Orientation::Reversing;
    let first = match (rf, rg) {
        (false, false) => Attempt::A,
        (true, false) => Attempt::B { swapped: false },
        (false, true) => Attempt::B { swapped: true },
        (true, true) => Attempt::C,
    };
    let mut order = vec![first];
    for a in [
        Attempt::A,
        Attempt::B { swapped: false },
        Attempt::B { swapped: true },
        Attempt::C,
    ] {
        if a != first {
            order.push(a);
        }
    }
    let mut first_problem = None;
    for attempt in order {
        let problem = match build(f, g, attempt) {
            Ok(d) => {
                let report = verify_decomposition(f, g, &d);
                if report.all_passed() {
                    return Ok(d);
                }
                let names: Vec<String> = report.failures().iter().map(|c| c.name.clone()).collect();
                format!("{attempt:?} failed checks {}", names.join(", "))
            }
            Err(e) => format!("{attempt:?}: {e}"),
        };
        first_problem.get_or_insert(problem);
    }
    Err(Error::InternalInvariant(format!(
        "no decomposition verified; {}",
        first_problem.unwrap_or_default()
    )))
}

/// Re-derives every property of `d` from the maps and reports each check.
pub fn verify_decomposition(f: &PLMap, g: &PLMap, d: &Decomposition) -> Report {
    let mut report = Report::new();
    let pts = &d.points;
    let partition_ok = pts.len() >= 2
        && pts[0] == zero()
        && pts[pts.len() - 1] == one()
        && pts.windows(2).all(|w| w[0] < w[1]);
    report.push("partition", partition_ok, format!("{} points", pts.len()));
    if !partition_ok {
        return report;
    }
    let blocks = blocks_of(pts);
    let l = blocks.len();
    let f2 = f.compose(f);
    let g2 = g.compose(g);

    let mut bad = Vec::new();
    for (i, j) in blocks.iter().enumerate() {
        let mirror = &blocks[l - 1 - i];
        let (fi, gi) = (f.image(j), g.image(j));
        match d.case {
            Case::A => {
                if !j.contains_interval(&fi) {
                    bad.push(format!("f({j}) = {fi} leaves the block"));
                }
                if !j.contains_interval(&gi) {
                    bad.push(format!("g({j}) = {gi} leaves the block"));
                }
            }
            Case::B => {
                let (ri, si, r, s) = if d.roles_swapped {
                    (&gi, &fi, "g", "f")
                } else {
                    (&fi, &gi, "f", "g")
                };
                if !j.contains_interval(si) {
                    bad.push(format!("{s}({j}) = {si} leaves the block"));
                }
                if ri != mirror {
                    bad.push(format!("{r}({j}) = {ri}, expected {mirror}"));
                }
            }
            Case::C => {
                if &fi != mirror {
                    bad.push(format!("f({j}) = {fi}, expected {mirror}"));
                }
                if &gi != mirror {
                    bad.push(format!("g({j}) = {gi}, expected {mirror}"));
                }
            }
        }
    }
    report.push("block-images", bad.is_empty(), bad.join("; "));
    if !bad.is_empty() {
        return report;
    }

    match compute_blocks(f, g, &f2, &g2, pts, d.case, d.roles_swapped) {
        Ok(fresh) => {
            report.push(
                "recorded-blocks",
                fresh == d.blocks,
                if fresh == d.blocks {
                    String::new()
                } else {
                    format!(
                        "recorded {} blocks differ from recomputed {}",
                        d.blocks.len(),
                        fresh.len()
                    )
                },
            );
        }
        Err(e) => report.push("recorded-blocks", false, e.to_string()),
    }

    let mut bad = Vec::new();
    let mut check = |ok: Result<bool>, what: String| match ok {
        Ok(true) => {}
        Ok(false) => bad.push(what),
        Err(e) => bad.push(format!("{what}: {e}")),
    };
    for (i, j) in blocks.iter().enumerate() {
        let mirror = &blocks[l - 1 - i];
        match d.case {
            Case::A => {
                for (p, q, pn, qn) in [(f, g, "f", "g"), (g, f, "g", "f")] {
                    check(
                        clause_a(p, q, j),
                        format!("on {j}: {qn} restriction forces a class on {pn} that fails"),
                    );
                }
            }
            Case::B => {
                let (r, r2, s, rn, sn) = if d.roles_swapped {
                    (g, &g2, f, "g", "f")
                } else {
                    (f, &f2, g, "f", "g")
                };
                check(
                    clause_bc(r, r2, s, j, mirror, j),
                    format!("on {j}: {sn} restriction forces a class on {rn} that fails"),
                );
            }
            Case::C => {
                for (p, p2, q2, pn, qn) in [(f, &f2, &g2, "f", "g"), (g, &g2, &f2, "g", "f")] {
                    check(
                        clause_bc(p, p2, q2, j, mirror, j),
                        format!("on {j}: {qn}² restriction forces a class on {pn} that fails"),
                    );
                }
            }
        }
    }
    report.push("clauses", bad.is_empty(), bad.join("; "));
    report
}

/// Both blocks invariant: `q` open non-monotone forces `p` open; `q`
/// non-open non-monotone forces `p` monotone.
fn clause_a(p: &PLMap, q: &PLMap, j: &Interval) -> Result<bool> {
    let qc = classify(q, j, j)?;
    Ok(match qc {
        IntervalClass::Monotone => true,
        IntervalClass::OpenNonMonotone => p.is_open(j, j)?,
        IntervalClass::NonOpenNonMonotone => p.is_monotone(j),
    })
}

/// `p` swaps `j` with `mirror`; `q` (or its square) is classified on `j`
/// relative to `target`. Open non-monotone forces `p²|j` and `p|j` open;
/// non-open non-monotone forces `p` monotone on `j` and on `mirror`.
fn clause_bc(
    p: &PLMap,
    p2: &PLMap,
    q: &PLMap,
    j: &Interval,
    mirror: &Interval,
    target: &Interval,
) -> Result<bool> {
    let qc = classify(q, j, target)?;
    Ok(match qc {
        IntervalClass::Monotone => true,
        IntervalClass::OpenNonMonotone => p2.is_open(j, j)? && p.is_open(j, mirror)?,
        IntervalClass::NonOpenNonMonotone => p.is_monotone(j) && p.is_monotone(mirror),
    })
}
