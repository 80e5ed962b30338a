//! Standalone SVG rendering of a segment set in the unit square.

use std::fmt::Write as _;

use icm_core::setvalued::SegmentSet;
use icm_core::{to_f64, Rational};

const SIZE: f64 = 400.0;
const MARGIN: f64 = 20.0;

/// Decimal with 12 significant digits, trailing zeros dropped.
pub fn decimal(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return "0".into();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let places = (11 - magnitude).max(0) as usize;
    let s = format!("{v:.places$}");
    let s = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn sx(x: &Rational) -> String {
    decimal(MARGIN + SIZE * to_f64(x))
}

fn sy(y: &Rational) -> String {
    decimal(MARGIN + SIZE * (1.0 - to_f64(y)))
}

/// Render `set` with dashed gridlines at the abscissae `vertical` and the
/// ordinates `horizontal`.
pub fn render(set: &SegmentSet, vertical: &[Rational], horizontal: &[Rational]) -> String {
    let total = decimal(SIZE + 2.0 * MARGIN);
    let (lo, hi) = (decimal(MARGIN), decimal(MARGIN + SIZE));
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="{lo}" y="{lo}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        decimal(SIZE),
        decimal(SIZE)
    );
    let grid = r##"stroke="#999" stroke-dasharray="4 3""##;
    for x in vertical {
        let _ = writeln!(
            out,
            r#"<line x1="{0}" y1="{lo}" x2="{0}" y2="{hi}" {grid}/>"#,
            sx(x)
        );
    }
    for y in horizontal {
        let _ = writeln!(
            out,
            r#"<line x1="{lo}" y1="{0}" x2="{hi}" y2="{0}" {grid}/>"#,
            sy(y)
        );
    }
    for s in set.segments() {
        let (a, b) = (s.a(), s.b());
        if s.is_degenerate() {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="2" fill="blue"/>"#,
                sx(&a.x),
                sy(&a.y)
            );
        } else {
            let _ = writeln!(
                out,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="blue" stroke-width="1.5"/>"#,
                sx(&a.x),
                sy(&a.y),
                sx(&b.x),
                sy(&b.y)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
