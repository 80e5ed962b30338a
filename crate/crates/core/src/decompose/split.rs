use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::plmap::PLMap;
use crate::rational::{format_rational, Rational};
use crate::setvalued::strongly_commute;

/// A common fixed point `p` inside `J` such that `[J.lo, p]` and `[p, J.hi]`
/// are invariant under both maps. The least such `p` is returned when it
/// exists; when the valid points form a half-open range starting at `J.lo`
/// the right end of that range is used.
pub fn split_common_fixed(f: &PLMap, g: &PLMap, j: &Interval) -> Result<Rational> {
    if j.is_degenerate() {
        return Err(Error::domain("cannot split a degenerate interval"));
    }
    for (name, m) in [("f", f), ("g", g)] {
        if !j.contains_interval(&m.image(j)) {
            return Err(Error::precondition(format!(
                "{j} is not invariant under {name}"
            )));
        }
    }
    let (lo, hi) = (j.lo(), j.hi());
    let common = f.fixed_points().intersect(&g.fixed_points());
    for comp in common.components() {
        let s = comp.lo().max(lo).clone();
        let e = comp.hi().min(hi).clone();
        if s > e {
            continue;
        }
        let left = Interval::new_unchecked(lo.clone(), s.clone());
        let right = Interval::new_unchecked(e.clone(), hi.clone());
        let least = [&s, f.image(&left).hi(), g.image(&left).hi()]
            .into_iter()
            .max()
            .unwrap()
            .clone();
        let most = [&e, f.image(&right).lo(), g.image(&right).lo()]
            .into_iter()
            .min()
            .unwrap()
            .clone();
        if least > most {
            continue;
        }
        if &least > lo && &least < hi {
            return Ok(least);
        }
        if &least == lo && &most > lo {
            return Ok(if &most < hi { most } else { j.midpoint() });
        }
    }
    Err(Error::NotFound(format!(
        "no common fixed point splits [{}, {}] into invariant halves",
        format_rational(lo),
        format_rational(hi)
    )))
}

/// Least common fixed point of a strongly commuting pair of onto maps.
pub fn common_fixed_point(f: &PLMap, g: &PLMap) -> Result<Rational> {
    if !f.is_onto() || !g.is_onto() {
        return Err(Error::precondition("both maps must be onto"));
    }
    if !strongly_commute(f, g) {
        return Err(Error::precondition("maps do not strongly commute"));
    }
    f.fixed_points()
        .intersect(&g.fixed_points())
        .least()
        .ok_or_else(|| {
            Error::InternalInvariant("strongly commuting maps share no fixed point".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn map(pts: &[(i64, i64, i64, i64)]) -> PLMap {
        PLMap::new(
            pts.iter()
                .map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))
                .collect(),
        )
        .unwrap()
    }

    fn split_pair() -> (PLMap, PLMap) {
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

    #[test]
    fn split_pair_splits() {
        let (f, g) = split_pair();
        assert_eq!(
            split_common_fixed(&f, &g, &Interval::unit()).unwrap(),
            rat(1, 3)
        );
        let upper = Interval::new(rat(1, 3), rat(1, 1)).unwrap();
        assert_eq!(split_common_fixed(&f, &g, &upper).unwrap(), rat(2, 3));
    }

    #[test]
    fn open_tents_have_no_split() {
        let r = split_common_fixed(
            &PLMap::tent(3).unwrap(),
            &PLMap::tent(4).unwrap(),
            &Interval::unit(),
        );
        assert!(matches!(r, Err(Error::NotFound(_))));
    }

    #[test]
    fn split_needs_invariance() {
        let (f, g) = split_pair();
        let j = Interval::new(rat(0, 1), rat(1, 2)).unwrap();
        assert!(matches!(
            split_common_fixed(&f, &g, &j),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn common_fixed_points() {
        let t = |n| PLMap::tent(n).unwrap();
        assert_eq!(common_fixed_point(&t(2), &t(3)).unwrap(), rat(0, 1));
        assert_eq!(common_fixed_point(&t(3), &t(4)).unwrap(), rat(0, 1));
        let (f, g) = split_pair();
        assert_eq!(common_fixed_point(&f, &g).unwrap(), rat(1, 3));
        assert!(matches!(
            common_fixed_point(&t(2), &t(2)),
            Err(Error::Precondition(_))
        ));
    }
}
