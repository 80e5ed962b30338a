//! The `.pwl` text format: one `X Y` breakpoint per line, rationals written
//! `a/b` or as integers, `#` starting a comment line, blank lines ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::plmap::PLMap;
use crate::rational::{format_rational, parse_rational};

pub fn read_pwl(text: &str) -> Result<PLMap> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse {
            line: i + 1,
            message,
        };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(format!(
                "expected two fields, found {}",
                fields.len()
            )));
        }
        let x = parse_rational(fields[0]).map_err(parse_err)?;
        let y = parse_rational(fields[1]).map_err(parse_err)?;
        points.push((x, y));
    }
    if points.is_empty() {
        return Err(Error::Parse {
            line: 0,
            message: "no breakpoints".into(),
        });
    }
    PLMap::new(points)
}

pub fn write_pwl(f: &PLMap) -> String {
    let mut out = String::new();
    for (x, y) in f.breakpoints() {
        let _ = writeln!(out, "{} {}", format_rational(x), format_rational(y));
    }
    out
}
