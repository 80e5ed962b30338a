//! Structural consequences of strong commutation, checked one by one.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::plmap::PLMap;
use crate::rational::{format_rational, int, one, zero, Rational};
use crate::report::Report;

use super::features::{endpoints, hats, profile};
use super::graph::{forward_pieces, strongly_commute};
use super::segment::{Point, Segment};

fn fmt_points<'a>(ps: impl IntoIterator<Item = &'a Point>) -> String {
    let v: Vec<String> = ps.into_iter().map(|p| p.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Verifies every consequence of `f ∘ g⁻¹ = g⁻¹ ∘ f` listed below and
/// returns a report naming each one:
///
/// * `counts`: two endpoints, `|C_f|` hats, hats are `(g(c), f(c))` for
///   `c ∈ C_f`, endpoints are `(g(0), f(0))` and `(g(1), f(1))`;
/// * `disjoint-critical`: `C_f ∩ C_g = ∅`;
/// * `connected-preimages`: `g⁻¹(f([c_i, c_{i+1}]))` is connected;
/// * `critical-propagation`: `f(C_g) ⊆ C_g` and `g(C_f) ⊆ C_f`;
/// * `self-crossings`: every self-intersection `(g(u), f(u)) = (g(v), f(v))`,
///   `u < v`, of the forward polyline has `g(u) ∈ C_f` and `f(u) ∈ C_g`;
/// * `hat-pattern`: the hat counts are the ones forced by the endpoint counts.
pub fn verify_strong_consequences(f: &PLMap, g: &PLMap) -> Result<Report> {
    if !f.is_onto() || !g.is_onto() {
        return Err(Error::precondition("both maps must be onto"));
    }
    if !strongly_commute(f, g) {
        return Err(Error::precondition("maps do not strongly commute"));
    }
    let cf = f.critical_points();
    let cg = g.critical_points();
    let mut report = Report::new();

    let prof = profile(f, g)?;
    let hat_locs: BTreeSet<Point> = hats(f, g).into_iter().map(|h| h.location).collect();
    let want_hats: BTreeSet<Point> = cf
        .xs()
        .iter()
        .map(|c| Point::new(g.at(c), f.at(c)))
        .collect();
    let end_locs: BTreeSet<Point> = endpoints(f, g).into_iter().map(|e| e.location).collect();
    let want_ends: BTreeSet<Point> = [zero(), one()]
        .iter()
        .map(|t| Point::new(g.at(t), f.at(t)))
        .collect();
    let counts_ok = prof.total_endpoints == 2
        && prof.total_hats == cf.len()
        && hat_locs == want_hats
        && end_locs == want_ends;
    report.push(
        "counts",
        counts_ok,
        format!(
            "{} endpoints {}, {} hats {} (|C_f| = {})",
            prof.total_endpoints,
            fmt_points(&end_locs),
            prof.total_hats,
            fmt_points(&hat_locs),
            cf.len()
        ),
    );

    let shared: Vec<String> = cf
        .xs()
        .iter()
        .filter(|c| cg.contains(c))
        .map(format_rational)
        .collect();
    report.push(
        "disjoint-critical",
        shared.is_empty(),
        if shared.is_empty() {
            String::new()
        } else {
            format!("shared critical points {}", shared.join(", "))
        },
    );

    let ends = cf.with_ends();
    let mut bad = Vec::new();
    for w in ends.windows(2) {
        let j = Interval::new_unchecked(w[0].clone(), w[1].clone());
        let comps = g.preimage_interval(&f.image(&j));
        if comps.len() != 1 {
            bad.push(format!("{j} gives {} components", comps.len()));
        }
    }
    report.push("connected-preimages", bad.is_empty(), bad.join("; "));

    let mut bad = Vec::new();
    for d in cg.xs() {
        let v = f.at(&d);
        if !cg.contains(&v) {
            bad.push(format!(
                "f({}) = {} not in C_g",
                format_rational(&d),
                format_rational(&v)
            ));
        }
    }
    for c in cf.xs() {
        let v = g.at(&c);
        if !cf.contains(&v) {
            bad.push(format!(
                "g({}) = {} not in C_f",
                format_rational(&c),
                format_rational(&v)
            ));
        }
    }
    report.push("critical-propagation", bad.is_empty(), bad.join("; "));

    let bad = self_crossing_violations(f, g);
    report.push("self-crossings", bad.is_empty(), bad.join("; "));

    report.push(
        "hat-pattern",
        prof.hat_pattern_ok(),
        format!(
            "h = {:?}, e = {:?}, forced {:?}",
            prof.hat_counts,
            prof.endpoint_counts,
            prof.forced_hat_pattern()
        ),
    );
    Ok(report)
}

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

enum Meet {
    None,
    Point(Point),
    Overlap,
}

fn meet(s: &Segment, t: &Segment) -> Meet {
    let (p, q, r, u) = (s.a(), s.b(), t.a(), t.b());
    let d1 = cross(p, q, r);
    let d2 = cross(p, q, u);
    let z = int(0);
    if d1 == z && d2 == z {
        let lo = s.a().max(t.a());
        let hi = s.b().min(t.b());
        return match lo.cmp(hi) {
            std::cmp::Ordering::Less => Meet::Overlap,
            std::cmp::Ordering::Equal => Meet::Point(lo.clone()),
            std::cmp::Ordering::Greater => Meet::None,
        };
    }
    let d3 = cross(r, u, p);
    let d4 = cross(r, u, q);
    let opposite = |a: &Rational, b: &Rational| (a <= &z && b >= &z) || (a >= &z && b <= &z);
    if !opposite(&d1, &d2) || !opposite(&d3, &d4) {
        return Meet::None;
    }
    // s(λ) = p + λ (q - p) with λ = d3 / (d3 - d4)
    let lambda = &d3 / (&d3 - &d4);
    Meet::Point(Point::new(
        &p.x + &lambda * (&q.x - &p.x),
        &p.y + &lambda * (&q.y - &p.y),
    ))
}

/// Parameter `t ∈ [t0, t1]` where the piece of `f` passes through value `y`.
fn param_of(f: &PLMap, t0: &Rational, t1: &Rational, y: &Rational) -> Rational {
    let (y0, y1) = (f.at(t0), f.at(t1));
    t0 + (t1 - t0) * (y - &y0) / (&y1 - &y0)
}

fn self_crossing_violations(f: &PLMap, g: &PLMap) -> Vec<String> {
    let cf = f.critical_points();
    let cg = g.critical_points();
    let pieces = forward_pieces(f, g);
    let mut bad = Vec::new();
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            let (t0, t1, s) = &pieces[i];
            let (u0, u1, t) = &pieces[j];
            match meet(s, t) {
                Meet::None => {}
                Meet::Overlap => bad.push(format!(
                    "pieces over [{}, {}] and [{}, {}] overlap",
                    format_rational(t0),
                    format_rational(t1),
                    format_rational(u0),
                    format_rational(u1)
                )),
                Meet::Point(p) => {
                    let u = param_of(f, t0, t1, &p.y);
                    let v = param_of(f, u0, u1, &p.y);
                    if u == v {
                        continue;
                    }
                    if !(cf.contains(&p.x) && cg.contains(&p.y)) {
                        bad.push(format!(
                            "coincidence {p} at t = {}, {}",
                            format_rational(&u),
                            format_rational(&v)
                        ));
                    }
                }
            }
        }
    }
    bad
}
