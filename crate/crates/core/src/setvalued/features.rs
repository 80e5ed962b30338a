//! Hats and endpoints of `Γ(g⁻¹ ∘ f)` and the counting profile built on
//! them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::plmap::PLMap;
use crate::rational::{one, zero, Rational};

use super::segment::Point;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeatureKind {
    Hat,
    EndHat,
    EndpointA,
    EndpointB,
}

impl FeatureKind {
    pub fn is_hat(self) -> bool {
        matches!(self, FeatureKind::Hat | FeatureKind::EndHat)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GraphFeature {
    pub location: Point,
    pub kind: FeatureKind,
}

/// Points `(c, y)` with `c ∈ C_f`, `g(y) = f(c)` and `y ∉ C_g`, sorted.
pub fn hats(f: &PLMap, g: &PLMap) -> Vec<GraphFeature> {
    let cg = g.critical_points();
    let end0 = Point::new(g.at(&zero()), f.at(&zero()));
    let end1 = Point::new(g.at(&one()), f.at(&one()));
    let mut out = Vec::new();
    for c in f.critical_points().xs() {
        for y in g.preimage_point(&f.at(&c)) {
            if cg.contains(&y) {
                continue;
            }
            let location = Point::new(c.clone(), y);
            let kind = if location == end0 && location == end1 {
                FeatureKind::EndHat
            } else {
                FeatureKind::Hat
            };
            out.push(GraphFeature { location, kind });
        }
    }
    out.sort();
    out
}

/// Type-(a) points `(x, y)` with `x ∈ {0, 1}`, `y ∉ C_g`, and type-(b)
/// points with `y ∈ {0, 1}`, `x ∈ (0, 1) ∖ C_f`; all on `g(y) = f(x)`.
/// Corners satisfy the type-(a) clause and are reported as such.
pub fn endpoints(f: &PLMap, g: &PLMap) -> Vec<GraphFeature> {
    let cf = f.critical_points();
    let cg = g.critical_points();
    let mut out = Vec::new();
    for x in [zero(), one()] {
        for y in g.preimage_point(&f.at(&x)) {
            if !cg.contains(&y) {
                out.push(GraphFeature {
                    location: Point::new(x.clone(), y),
                    kind: FeatureKind::EndpointA,
                });
            }
        }
    }
    for y in [zero(), one()] {
        for x in f.preimage_point(&g.at(&y)) {
            if x.is_integer() || cf.contains(&x) {
                continue;
            }
            out.push(GraphFeature {
                location: Point::new(x, y.clone()),
                kind: FeatureKind::EndpointB,
            });
        }
    }
    out.sort();
    out.dedup_by(|a, b| a.location == b.location);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequality {
    pub label: String,
    pub lhs: usize,
    pub holds: bool,
}

/// Hat counts `h_1..h_n` over the critical points of `f` and endpoint counts
/// `e_0..e_n` over the gaps between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub hat_counts: Vec<usize>,
    pub endpoint_counts: Vec<usize>,
    pub total_hats: usize,
    pub total_endpoints: usize,
    pub inequalities: Vec<Inequality>,
}

impl Profile {
    pub fn n(&self) -> usize {
        self.hat_counts.len()
    }

    pub fn inequalities_hold(&self) -> bool {
        self.inequalities.iter().all(|i| i.holds)
    }

    /// `Σe = 2` and `Σh = n`.
    pub fn identities_hold(&self) -> bool {
        self.total_endpoints == 2 && self.total_hats == self.n()
    }

    /// Hat counts forced by the endpoint counts when every inequality is an
    /// equality: `h_1 = 2 - e_0`, `h_{i+1} = 2 - e_i - h_i`, closing with
    /// `h_n + e_n = 2`. `None` if the chain goes negative or does not close.
    pub fn forced_hat_pattern(&self) -> Option<Vec<usize>> {
        let e = &self.endpoint_counts;
        let n = self.n();
        if n == 0 {
            return (e[0] == 2).then(Vec::new);
        }
        let mut h = Vec::with_capacity(n);
        let mut prev = 2i64 - e[0] as i64;
        if prev < 0 {
            return None;
        }
        h.push(prev as usize);
        for ei in &e[1..n] {
            let next = 2 - *ei as i64 - prev;
            if next < 0 {
                return None;
            }
            h.push(next as usize);
            prev = next;
        }
        (prev + e[n] as i64 == 2).then_some(h)
    }

    pub fn hat_pattern_ok(&self) -> bool {
        self.forced_hat_pattern().as_ref() == Some(&self.hat_counts)
    }
}

pub fn profile(f: &PLMap, g: &PLMap) -> Result<Profile> {
    if !f.is_onto() {
        return Err(Error::precondition("f is not onto"));
    }
    if !g.is_onto() {
        return Err(Error::precondition("g is not onto"));
    }
    let cs: Vec<Rational> = f.critical_points().xs();
    let n = cs.len();
    let hs = hats(f, g);
    let es = endpoints(f, g);
    let hat_counts: Vec<usize> = cs
        .iter()
        .map(|c| hs.iter().filter(|h| &h.location.x == c).count())
        .collect();
    let mut endpoint_counts = vec![0usize; n + 1];
    for e in &es {
        // endpoints never sit over a critical point of f
        let gap = cs.partition_point(|c| c < &e.location.x);
        endpoint_counts[gap] += 1;
    }
    let mut inequalities = Vec::new();
    if n == 0 {
        inequalities.push(Inequality {
            label: "e_0".into(),
            lhs: endpoint_counts[0],
            holds: endpoint_counts[0] >= 2,
        });
    } else {
        let mut ineq = |label: String, lhs: usize| {
            inequalities.push(Inequality {
                label,
                lhs,
                holds: lhs >= 2,
            })
        };
        ineq("e_0+h_1".into(), endpoint_counts[0] + hat_counts[0]);
        for i in 1..n {
            ineq(
                format!("h_{i}+e_{i}+h_{}", i + 1),
                hat_counts[i - 1] + endpoint_counts[i] + hat_counts[i],
            );
        }
        ineq(
            format!("h_{n}+e_{n}"),
            hat_counts[n - 1] + endpoint_counts[n],
        );
    }
    Ok(Profile {
        total_hats: hat_counts.iter().sum(),
        total_endpoints: endpoint_counts.iter().sum(),
        hat_counts,
        endpoint_counts,
        inequalities,
    })
}
