//! Brute-force cross-checks on rational grids.
//!
//! Everything here uses only evaluation and point preimages, never the
//! segment arrangement code, so agreement with the geometric procedures is
//! an independent confirmation.

use std::collections::{BTreeSet, HashMap};

use crate::plmap::PLMap;
use crate::rational::Rational;

/// Grid points `(i/N, j/N)` with `g(j/N) = f(i/N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSample {
    pub resolution: u32,
    pub points: BTreeSet<(Rational, Rational)>,
}

fn grid(n: u32) -> Vec<Rational> {
    (0..=n as i64)
        .map(|i| Rational::new(i.into(), (n as i64).into()))
        .collect()
}

pub fn sample_pullback(f: &PLMap, g: &PLMap, n: u32) -> GridSample {
    let n = n.max(1);
    let pts = grid(n);
    let mut by_value: HashMap<Rational, Vec<usize>> = HashMap::new();
    for (j, y) in pts.iter().enumerate() {
        by_value.entry(g.at(y)).or_default().push(j);
    }
    let mut points = BTreeSet::new();
    for x in &pts {
        if let Some(js) = by_value.get(&f.at(x)) {
            for &j in js {
                points.insert((x.clone(), pts[j].clone()));
            }
        }
    }
    GridSample {
        resolution: n,
        points,
    }
}

/// First grid value `x = i/N` where `f(g⁻¹(x)) ≠ g⁻¹(f(x))`, if any.
pub fn strong_commute_witness(f: &PLMap, g: &PLMap, n: u32) -> Option<Rational> {
    grid(n.max(1)).into_iter().find(|x| {
        let forward: BTreeSet<Rational> = g.preimage_point(x).iter().map(|t| f.at(t)).collect();
        let pullback: BTreeSet<Rational> = g.preimage_point(&f.at(x)).into_iter().collect();
        forward != pullback
    })
}

/// `f(g⁻¹(x)) = g⁻¹(f(x))` as finite sets for every `x = i/N`.
pub fn brute_force_strong_commute(f: &PLMap, g: &PLMap, n: u32) -> bool {
    strong_commute_witness(f, g, n).is_none()
}
