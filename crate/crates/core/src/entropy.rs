//! Topological entropy from lap-number growth and from Markov partitions.
//!
//! Lap counts and transition matrices are exact; floating point enters only
//! in the final logarithm and eigenvalue estimates.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::plmap::{PLMap, DEFAULT_BREAKPOINT_CAP};
use crate::rational::{serialize_vec, Rational};
use crate::setvalued::strongly_commute;

pub const DEFAULT_K_MAX: u32 = 12;
/// Largest orbit closure accepted as a Markov partition.
pub const DEFAULT_ORBIT_BOUND: usize = 2000;
pub const EIGEN_TOLERANCE: f64 = 1e-9;

/// Number of maximal monotone pieces.
pub fn lap(f: &PLMap) -> u64 {
    f.lap_count() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LapSequence {
    /// `(k, lap(f^k))` for `k = 1..=k_max`.
    pub laps: Vec<(u32, u64)>,
    /// `log(lap(f^k_max)) / k_max`.
    pub estimate: f64,
    /// `Some(n)` when `lap(f^k) = n^k` for every computed `k`, in which case
    /// the entropy is exactly `log n`.
    pub exact_log_of: Option<u64>,
}

pub fn entropy_lap(f: &PLMap, k_max: u32) -> Result<LapSequence> {
    entropy_lap_capped(f, k_max, DEFAULT_BREAKPOINT_CAP)
}

pub fn entropy_lap_capped(f: &PLMap, k_max: u32, cap: usize) -> Result<LapSequence> {
    if k_max == 0 {
        return Err(Error::domain("k_max must be at least 1"));
    }
    let mut laps = Vec::with_capacity(k_max as usize);
    let mut acc = f.clone();
    for k in 1..=k_max {
        laps.push((k, lap(&acc)));
        if k < k_max {
            acc = acc.compose_capped(f, cap)?;
        }
    }
    let last = laps[laps.len() - 1].1;
    let estimate = (last as f64).ln() / k_max as f64;
    let base = laps[0].1;
    let geometric = laps.iter().all(|&(k, l)| base.checked_pow(k) == Some(l));
    Ok(LapSequence {
        laps,
        estimate,
        exact_log_of: geometric.then_some(base),
    })
}

/// Partition by a finite forward-invariant set containing every breakpoint,
/// with the 0/1 transition matrix stored row by row as column ranges:
/// cell `i` covers exactly the cells `rows[i].0 .. rows[i].1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MarkovData {
    #[serde(serialize_with = "serialize_vec")]
    pub partition: Vec<Rational>,
    pub rows: Vec<(usize, usize)>,
    pub spectral_radius: f64,
    /// Lower and upper bounds on the spectral radius.
    pub bracket: (f64, f64),
}

impl MarkovData {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        let n = self.size();
        self.rows
            .iter()
            .map(|&(s, e)| (0..n).map(|j| u32::from(s <= j && j < e)).collect())
            .collect()
    }
}

pub fn markov_partition(f: &PLMap) -> Option<MarkovData> {
    markov_partition_bounded(f, DEFAULT_ORBIT_BOUND)
}

pub fn markov_partition_bounded(f: &PLMap, bound: usize) -> Option<MarkovData> {
    let mut seen: BTreeSet<Rational> = f.xs().iter().cloned().collect();
    let mut queue: VecDeque<Rational> = seen.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        let y = f.at(&x);
        if seen.insert(y.clone()) {
            if seen.len() > bound {
                return None;
            }
            queue.push_back(y);
        }
    }
    let partition: Vec<Rational> = seen.into_iter().collect();
    let idx = |v: &Rational| partition.binary_search(v).expect("orbit point");
    let rows: Vec<(usize, usize)> = partition
        .windows(2)
        .map(|w| {
            let (a, b) = (idx(&f.at(&w[0])), idx(&f.at(&w[1])));
            (a.min(b), a.max(b))
        })
        .collect();
    let (lo, hi) = spectral_bracket(&rows);
    Some(MarkovData {
        partition,
        rows,
        spectral_radius: (lo + hi) / 2.0,
        bracket: (lo, hi),
    })
}

/// Spectral radius of the range-row 0/1 matrix: the largest Perron value
/// over its irreducible diagonal blocks.
fn spectral_bracket(rows: &[(usize, usize)]) -> (f64, f64) {
    let n = rows.len();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (i, &(s, e)) in rows.iter().enumerate() {
        for j in s..e {
            graph.add_edge(nodes[i], nodes[j], ());
        }
    }
    let mut best = (0.0f64, 0.0f64);
    for comp in tarjan_scc(&graph) {
        let members: Vec<usize> = comp.iter().map(|v| v.index()).collect();
        let cyclic = members.len() > 1 || {
            let i = members[0];
            rows[i].0 <= i && i < rows[i].1
        };
        if !cyclic {
            continue;
        }
        let b = block_perron(rows, &members);
        if b.1 > best.1 {
            best = b;
        }
    }
    best
}

/// Collatz–Wielandt bracket for the Perron value of an irreducible block,
/// by power iteration on `A + I` (primitive, so the iteration converges).
fn block_perron(rows: &[(usize, usize)], members: &[usize]) -> (f64, f64) {
    let n = rows.len();
    let mut x = vec![0.0f64; n];
    for &i in members {
        x[i] = 1.0;
    }
    let mut prefix = vec![0.0f64; n + 1];
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for _ in 0..200_000 {
        for i in 0..n {
            prefix[i + 1] = prefix[i] + x[i];
        }
        let mut y = vec![0.0f64; n];
        lo = f64::INFINITY;
        hi = 0.0f64;
        for &i in members {
            let (s, e) = rows[i];
            y[i] = prefix[e] - prefix[s] + x[i];
            let q = y[i] / x[i];
            lo = lo.min(q);
            hi = hi.max(q);
        }
        let scale = members.iter().map(|&i| y[i]).fold(0.0, f64::max);
        for &i in members {
            x[i] = y[i] / scale;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    (lo - 1.0, hi - 1.0)
}

pub fn entropy_markov(m: &MarkovData) -> f64 {
    m.spectral_radius.max(1.0).ln()
}

/// Is `n` an eigenvalue of the transition matrix? Decided exactly by
/// fraction-free elimination on `M - nI`.
fn has_integer_eigenvalue(m: &MarkovData, n: i64) -> bool {
    let size = m.size();
    let mut a: Vec<Vec<BigInt>> = m
        .matrix()
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, v)| BigInt::from(v as i64 - if i == j { n } else { 0 }))
                .collect()
        })
        .collect();
    let mut prev = BigInt::from(1);
    for k in 0..size {
        let Some(p) = (k..size).find(|&r| !a[r][k].is_zero()) else {
            return true;
        };
        a.swap(k, p);
        for i in k + 1..size {
            for j in k + 1..size {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Lap,
    Markov,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Entropy {
    pub value: f64,
    /// `Some(n)` when the entropy is exactly `log n`.
    pub log_of: Option<u64>,
    pub method: Method,
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log_of {
            Some(n) => write!(f, "log {n} ({:.12})", self.value),
            None => write!(f, "{:.12}", self.value),
        }
    }
}

const EXACT_CHECK_MAX_SIZE: usize = 120;

fn markov_entropy(m: &MarkovData) -> Entropy {
    let rho = m.spectral_radius;
    let n = rho.round();
    let log_of = if n >= 1.0
        && (rho - n).abs() < 1e-6
        && m.size() <= EXACT_CHECK_MAX_SIZE
        && has_integer_eigenvalue(m, n as i64)
    {
        Some(n as u64)
    } else {
        None
    };
    Entropy {
        value: match log_of {
            Some(n) => (n as f64).ln(),
            None => entropy_markov(m),
        },
        log_of,
        method: Method::Markov,
    }
}

/// Entropy of `f`. With no method given, a Markov partition is used when
/// one exists within the orbit bound, and lap growth otherwise.
pub fn entropy(f: &PLMap, method: Option<Method>, k_max: u32) -> Result<Entropy> {
    entropy_capped(f, method, k_max, DEFAULT_BREAKPOINT_CAP)
}

pub fn entropy_capped(
    f: &PLMap,
    method: Option<Method>,
    k_max: u32,
    cap: usize,
) -> Result<Entropy> {
    if method != Some(Method::Lap) {
        if let Some(m) = markov_partition(f) {
            return Ok(markov_entropy(&m));
        }
        if method == Some(Method::Markov) {
            return Err(Error::NotFound(format!(
                "no Markov partition with at most {DEFAULT_ORBIT_BOUND} points"
            )));
        }
    }
    let seq = entropy_lap_capped(f, k_max, cap)?;
    Ok(Entropy {
        value: match seq.exact_log_of {
            Some(n) => (n as f64).ln(),
            None => seq.estimate,
        },
        log_of: seq.exact_log_of,
        method: Method::Lap,
    })
}

/// Entropy of the set-valued map `g ∘ f⁻¹` of a strongly commuting pair,
/// which equals the larger of the entropies of `f` and `g`.
pub fn entropy_setvalued(f: &PLMap, g: &PLMap) -> Result<Entropy> {
    entropy_setvalued_capped(f, g, None, DEFAULT_K_MAX, DEFAULT_BREAKPOINT_CAP)
}

pub fn entropy_setvalued_capped(
    f: &PLMap,
    g: &PLMap,
    method: Option<Method>,
    k_max: u32,
    cap: usize,
) -> Result<Entropy> {
    if !strongly_commute(f, g) {
        return Err(Error::precondition("maps do not strongly commute"));
    }
    let hf = entropy_capped(f, method, k_max, cap)?;
    let hg = entropy_capped(g, method, k_max, cap)?;
    Ok(if hg.value > hf.value { hg } else { hf })
}
