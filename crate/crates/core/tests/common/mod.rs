//! Shared fixtures for the integration tests: the worked examples, random
//! onto maps and conjugated tent pairs.

#![allow(dead_code)]

use icm_core::{rat, PLMap, Rational};
use num_integer::Integer;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn map(pts: &[(i64, i64, i64, i64)]) -> PLMap {
    PLMap::new(
        pts.iter()
            .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
            .collect(),
    )
    .unwrap()
}

pub fn tent(n: u32) -> PLMap {
    PLMap::tent(n).unwrap()
}

pub fn gcd(a: u32, b: u32) -> u32 {
    a.gcd(&b)
}

pub fn r(a: i64, b: i64) -> Rational {
    rat(a, b)
}

/// Non-commuting pair with one isolated pullback point.
pub fn lopsided_pair() -> (PLMap, PLMap) {
    (
        map(&[(0, 1, 0, 1), (1, 3, 2, 3), (2, 3, 0, 1), (1, 1, 1, 1)]),
        map(&[
            (0, 1, 2, 3),
            (1, 6, 1, 1),
            (1, 3, 2, 3),
            (2, 3, 1, 3),
            (5, 6, 0, 1),
            (1, 1, 1, 3),
        ]),
    )
}

pub fn primary_sample() -> PLMap {
    map(&[
        (0, 1, 0, 1),
        (1, 11, 3, 11),
        (2, 11, 1, 11),
        (3, 11, 5, 11),
        (4, 11, 4, 11),
        (5, 11, 6, 11),
        (6, 11, 5, 11),
        (7, 11, 10, 11),
        (8, 11, 8, 11),
        (9, 11, 9, 11),
        (10, 11, 7, 11),
        (1, 1, 1, 1),
    ])
}

/// Three invariant blocks.
pub fn split_pair() -> (PLMap, PLMap) {
    (
        map(&[
            (0, 1, 1, 3),
            (1, 6, 0, 1),
            (1, 3, 1, 3),
            (4, 9, 5, 9),
            (5, 9, 4, 9),
            (2, 3, 2, 3),
            (1, 1, 1, 1),
        ]),
        map(&[
            (0, 1, 0, 1),
            (1, 9, 1, 3),
            (2, 9, 0, 1),
            (1, 3, 1, 3),
            (2, 3, 2, 3),
            (5, 6, 1, 1),
            (11, 12, 5, 6),
            (1, 1, 1, 1),
        ]),
    )
}

fn swapping_f() -> PLMap {
    map(&[
        (0, 1, 3, 4),
        (1, 4, 1, 1),
        (1, 2, 3, 4),
        (3, 4, 1, 2),
        (7, 8, 0, 1),
        (1, 1, 1, 2),
    ])
}

/// `f` swaps the outer blocks, `g` keeps every block.
pub fn swap_pair() -> (PLMap, PLMap) {
    (
        swapping_f(),
        map(&[
            (0, 1, 0, 1),
            (1, 6, 1, 2),
            (1, 3, 0, 1),
            (1, 2, 1, 2),
            (7, 12, 2, 3),
            (2, 3, 7, 12),
            (3, 4, 3, 4),
            (5, 6, 1, 1),
            (11, 12, 3, 4),
            (1, 1, 1, 1),
        ]),
    )
}

/// Both maps swap the outer blocks.
pub fn double_swap_pair() -> (PLMap, PLMap) {
    (
        swapping_f(),
        map(&[
            (0, 1, 1, 1),
            (1, 6, 3, 4),
            (1, 3, 1, 1),
            (1, 2, 3, 4),
            (7, 12, 7, 12),
            (2, 3, 2, 3),
            (3, 4, 1, 2),
            (5, 6, 0, 1),
            (11, 12, 1, 2),
            (1, 1, 0, 1),
        ]),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random onto map with 2 to 7 pieces on a grid of denominator 60, values
/// on a grid of denominator 12.
pub fn random_onto(rng: &mut impl Rng) -> PLMap {
    loop {
        let pieces = rng.gen_range(2..=7usize);
        let mut interior: Vec<i64> = Vec::new();
        while interior.len() < pieces - 1 {
            let x = rng.gen_range(1..60);
            if !interior.contains(&x) {
                interior.push(x);
            }
        }
        interior.sort();
        let mut xs = vec![0];
        xs.extend(interior);
        xs.push(60);
        let mut ys: Vec<i64> = (0..=pieces).map(|_| rng.gen_range(0..=12)).collect();
        let i = rng.gen_range(0..=pieces);
        let mut j = rng.gen_range(0..=pieces);
        while j == i {
            j = rng.gen_range(0..=pieces);
        }
        ys[i] = 0;
        ys[j] = 12;
        if ys.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let pts = xs
            .iter()
            .zip(&ys)
            .map(|(&x, &y)| (rat(x, 60), rat(y, 12)))
            .collect();
        return PLMap::new(pts).unwrap();
    }
}

/// Random increasing PL homeomorphism with up to three interior breakpoints.
pub fn random_homeomorphism(rng: &mut impl Rng) -> PLMap {
    let k = rng.gen_range(1..=3usize);
    let mut xs: Vec<i64> = Vec::new();
    let mut ys: Vec<i64> = Vec::new();
    while xs.len() < k {
        let x = rng.gen_range(1..12);
        if !xs.contains(&x) {
            xs.push(x);
        }
    }
    while ys.len() < k {
        let y = rng.gen_range(1..12);
        if !ys.contains(&y) {
            ys.push(y);
        }
    }
    xs.sort();
    ys.sort();
    let mut pts = vec![(rat(0, 1), rat(0, 1))];
    pts.extend(xs.iter().zip(&ys).map(|(&x, &y)| (rat(x, 12), rat(y, 12))));
    pts.push((rat(1, 1), rat(1, 1)));
    PLMap::new(pts).unwrap()
}

/// `(h⁻¹ T_n h, h⁻¹ T_m h)` for a random homeomorphism `h`.
pub fn conjugated_tents(rng: &mut impl Rng, n: u32, m: u32) -> (PLMap, PLMap) {
    let h = random_homeomorphism(rng);
    (
        tent(n).conjugate(&h).unwrap(),
        tent(m).conjugate(&h).unwrap(),
    )
}

/// Random coprime `2 <= n, m <= 5`, conjugated.
pub fn random_strong_pair(rng: &mut impl Rng) -> (PLMap, PLMap) {
    loop {
        let (n, m) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        if gcd(n, m) == 1 {
            return conjugated_tents(rng, n, m);
        }
    }
}

/// Random commuting pair: conjugated tents, or a map with its square.
pub fn random_commuting_pair(rng: &mut impl Rng) -> (PLMap, PLMap) {
    if rng.gen_bool(0.6) {
        let (n, m) = (rng.gen_range(2..=5), rng.gen_range(2..=5));
        conjugated_tents(rng, n, m)
    } else {
        let f = random_onto(rng);
        let f2 = f.compose(&f);
        if rng.gen_bool(0.5) {
            (f, f2)
        } else {
            (f2, f)
        }
    }
}

/// Strongly commuting pairs of the corpus, labelled.
pub fn strong_corpus() -> Vec<(String, PLMap, PLMap)> {
    let mut out = Vec::new();
    for n in 2..=10 {
        for m in 2..=10 {
            if gcd(n, m) == 1 {
                out.push((format!("T{n},T{m}"), tent(n), tent(m)));
            }
        }
    }
    let (f, g) = split_pair();
    out.push(("split_pair".into(), f, g));
    let (f, g) = swap_pair();
    out.push(("swap_pair".into(), f, g));
    let (f, g) = double_swap_pair();
    out.push(("double_swap_pair".into(), f, g));
    let mut rng = rng(0x5eed);
    for k in 0..20 {
        let (f, g) = random_strong_pair(&mut rng);
        out.push((format!("conjugated#{k}"), f, g));
    }
    out
}

/// Commuting maps have forward graph inside pullback graph.
pub fn containment_holds(f: &PLMap, g: &PLMap) -> bool {
    use icm_core::setvalued::{commute, forward_graph, pullback_graph};
    if !commute(f, g) {
        return true;
    }
    let (fw, pb) = (forward_graph(f, g), pullback_graph(f, g));
    fw.is_subset(&pb) && fw.is_subset_by_lines(&pb)
}

/// `g⁻¹(f([c_i, c_{i+1}]))` is a single interval for every lap of `f`.
pub fn preimages_connected(f: &PLMap, g: &PLMap) -> bool {
    use icm_core::Interval;
    f.critical_points().with_ends().windows(2).all(|w| {
        let lap = Interval::new(w[0].clone(), w[1].clone()).unwrap();
        g.preimage_interval(&f.image(&lap)).len() == 1
    })
}

/// `f(C_g) ⊆ C_g` and `g(C_f) ⊆ C_f`.
pub fn critical_values_propagate(f: &PLMap, g: &PLMap) -> bool {
    let (cf, cg) = (f.critical_points(), g.critical_points());
    cg.xs().iter().all(|d| cg.contains(&f.eval(d).unwrap()))
        && cf.xs().iter().all(|c| cf.contains(&g.eval(c).unwrap()))
}

/// `lap(f ∘ g) <= lap(f) · lap(g)`.
pub fn laps_submultiplicative(f: &PLMap, g: &PLMap) -> bool {
    f.compose(g).lap_count() <= f.lap_count() * g.lap_count()
}
