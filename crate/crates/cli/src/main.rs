//! `icm`: command-line front end for exact piecewise-linear interval maps.

mod svg;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use icm_core::decompose::{
    common_fixed_point, decompose, primary_critical_values, verify_decomposition,
};
use icm_core::entropy::{entropy_capped, entropy_setvalued_capped, Method, DEFAULT_K_MAX};
use icm_core::oracle::{brute_force_strong_commute, strong_commute_witness};
use icm_core::pwl::{read_pwl, write_pwl};
use icm_core::setvalued::{
    commute, endpoints, forward_graph, hats, profile, pullback_graph, strongly_commute,
    verify_strong_consequences, GraphFeature,
};
use icm_core::{format_rational, parse_rational, Error, PLMap, Rational, DEFAULT_BREAKPOINT_CAP};

#[derive(Parser, Debug)]
#[command(name = "icm", version, about = "Exact piecewise-linear interval maps")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,

    /// Write output to PATH instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Entropy method; by default a Markov partition is tried first.
    #[arg(long, global = true, value_enum)]
    method: Option<MethodArg>,

    /// Iterate bound for lap-growth entropy.
    #[arg(long, global = true, value_name = "N")]
    iters: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Print the symmetric n-tent map.
    Tent { n: u32 },
    /// Evaluate a map at one or more rationals.
    Eval {
        map: PathBuf,
        #[arg(required = true)]
        xs: Vec<String>,
    },
    /// Print F ∘ G.
    Compose { f: PathBuf, g: PathBuf },
    /// Print the k-th iterate of a map.
    Iterate { map: PathBuf, k: u32 },
    /// Decide F ∘ G = G ∘ F.
    Commute { f: PathBuf, g: PathBuf },
    /// Decide F ∘ G⁻¹ = G⁻¹ ∘ F.
    StrongCommute { f: PathBuf, g: PathBuf },
    /// Emit the forward graph of F ∘ G⁻¹ or the pullback graph of G⁻¹ ∘ F.
    Graph {
        #[arg(value_enum)]
        kind: GraphKind,
        f: PathBuf,
        g: PathBuf,
    },
    /// List the hats of the pullback graph.
    Hats { f: PathBuf, g: PathBuf },
    /// List the endpoints of the pullback graph.
    Endpoints { f: PathBuf, g: PathBuf },
    /// Hat and endpoint counts with the counting inequalities.
    Profile { f: PathBuf, g: PathBuf },
    /// Check the structural consequences of strong commutation.
    Verify {
        f: PathBuf,
        g: PathBuf,
        /// Also cross-check against a brute-force grid comparison.
        #[arg(long)]
        oracle: bool,
        /// Grid resolution for the oracle.
        #[arg(long, default_value_t = 360)]
        grid: u32,
    },
    /// Invariant-interval decomposition of a strongly commuting pair (JSON).
    Decompose { f: PathBuf, g: PathBuf },
    /// Fixed-point set of a map.
    FixedPoints { map: PathBuf },
    /// A common fixed point of a strongly commuting pair.
    CommonFixedPoint { f: PathBuf, g: PathBuf },
    /// Topological entropy of a map, or of the set-valued map of a pair.
    Entropy { f: PathBuf, g: Option<PathBuf> },
    /// Primary critical values with their exacting points.
    PrimaryValues { map: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Lap,
    Markov,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GraphKind {
    Forward,
    Pullback,
}

/// Failure modes of a run, each with its own exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Io(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Lib(Error::Parse { .. } | Error::Domain(_)) => 2,
            Failure::Lib(Error::Precondition(_)) => 3,
            Failure::Lib(Error::Resource(_)) => 4,
            Failure::Lib(Error::NotFound(_)) => 5,
            Failure::Lib(Error::InternalInvariant(_)) => 70,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

type Run<T> = std::result::Result<T, Failure>;

/// What a verb produced: text for the output target and the exit code.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn boolean(b: bool) -> Self {
        Outcome {
            text: format!("{b}\n"),
            code: if b { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => match emit(cli.out.as_deref(), &out.text) {
            Ok(()) => ExitCode::from(out.code),
            Err(e) => report(&e),
        },
        Err(e) => report(&e),
    }
}

fn report(e: &Failure) -> ExitCode {
    eprintln!("icm: {}", e.message());
    ExitCode::from(e.code())
}

fn emit(path: Option<&Path>, text: &str) -> Run<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn load(path: &Path) -> Run<PLMap> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    read_pwl(&text).map_err(|e| match e {
        Error::Parse { line, message } => {
            Failure::Usage(format!("{}:{line}: {message}", path.display()))
        }
        other => Failure::Lib(other),
    })
}

fn load_pair(f: &Path, g: &Path) -> Run<(PLMap, PLMap)> {
    Ok((load(f)?, load(g)?))
}

fn breakpoint_cap() -> Run<usize> {
    match std::env::var("ICM_BREAKPOINT_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("ICM_BREAKPOINT_CAP: not a count: {v:?}"))),
        Err(_) => Ok(DEFAULT_BREAKPOINT_CAP),
    }
}

/// Resolve `--format` against the formats a verb supports; the first one
/// listed is the default.
fn format_for(cli: &Cli, verb: &str, allowed: &[Format]) -> Run<Format> {
    match cli.format {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => Err(Failure::Usage(format!(
            "{verb} does not support --format {}",
            f.to_possible_value()
                .map(|v| v.get_name().to_string())
                .unwrap_or_default()
        ))),
    }
}

/// Text output is the default for listing verbs; JSON on request.
fn wants_json(cli: &Cli, verb: &str) -> Run<bool> {
    match cli.format {
        None => Ok(false),
        Some(Format::Json) => Ok(true),
        Some(_) => format_for(cli, verb, &[Format::Json]).map(|_| true),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable value");
    s.push('\n');
    s
}

fn parse_arg(s: &str) -> Run<Rational> {
    parse_rational(s).map_err(|m| Failure::Usage(format!("{s:?}: {m}")))
}

fn features_text(list: &[GraphFeature]) -> String {
    let mut out = String::new();
    for feat in list {
        let kind = serde_json::to_value(feat.kind).expect("serializable kind");
        out.push_str(&format!(
            "{} {} {}\n",
            format_rational(&feat.location.x),
            format_rational(&feat.location.y),
            kind.as_str().unwrap_or_default()
        ));
    }
    out
}

fn run(cli: &Cli) -> Run<Outcome> {
    let cap = breakpoint_cap()?;
    match &cli.verb {
        Verb::Tent { n } => Ok(Outcome::ok(write_pwl(&PLMap::tent(*n)?))),
        Verb::Eval { map, xs } => {
            let f = load(map)?;
            let mut out = String::new();
            for s in xs {
                out.push_str(&format_rational(&f.eval(&parse_arg(s)?)?));
                out.push('\n');
            }
            Ok(Outcome::ok(out))
        }
        Verb::Compose { f, g } => {
            let (f, g) = load_pair(f, g)?;
            Ok(Outcome::ok(write_pwl(&f.compose_capped(&g, cap)?)))
        }
        Verb::Iterate { map, k } => {
            let f = load(map)?;
            Ok(Outcome::ok(write_pwl(&f.iterate_capped(*k, cap)?)))
        }
        Verb::Commute { f, g } => {
            let (f, g) = load_pair(f, g)?;
            Ok(Outcome::boolean(commute(&f, &g)))
        }
        Verb::StrongCommute { f, g } => {
            let (f, g) = load_pair(f, g)?;
            Ok(Outcome::boolean(strongly_commute(&f, &g)))
        }
        Verb::Graph { kind, f, g } => {
            let format = format_for(cli, "graph", &[Format::Csv, Format::Svg])?;
            let (f, g) = load_pair(f, g)?;
            let set = match kind {
                GraphKind::Forward => forward_graph(&f, &g),
                GraphKind::Pullback => pullback_graph(&f, &g),
            };
            Ok(Outcome::ok(match format {
                Format::Svg => {
                    svg::render(&set, &f.critical_points().xs(), &g.critical_points().xs())
                }
                _ => set.to_csv(),
            }))
        }
        Verb::Hats { f, g } => {
            let json = wants_json(cli, "hats")?;
            let (f, g) = load_pair(f, g)?;
            let list = hats(&f, &g);
            Ok(Outcome::ok(if json {
                to_json(&list)
            } else {
                features_text(&list)
            }))
        }
        Verb::Endpoints { f, g } => {
            let json = wants_json(cli, "endpoints")?;
            let (f, g) = load_pair(f, g)?;
            let list = endpoints(&f, &g);
            Ok(Outcome::ok(if json {
                to_json(&list)
            } else {
                features_text(&list)
            }))
        }
        Verb::Profile { f, g } => {
            let json = wants_json(cli, "profile")?;
            let (f, g) = load_pair(f, g)?;
            let p = profile(&f, &g)?;
            if json {
                return Ok(Outcome::ok(to_json(&p)));
            }
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let mut out = format!(
                "hats: {}\nendpoints: {}\ntotal hats: {}\ntotal endpoints: {}\n",
                list(&p.hat_counts),
                list(&p.endpoint_counts),
                p.total_hats,
                p.total_endpoints
            );
            for ineq in &p.inequalities {
                out.push_str(&format!(
                    "{} {}: {}\n",
                    if ineq.holds { "pass" } else { "FAIL" },
                    ineq.label,
                    ineq.lhs
                ));
            }
            Ok(Outcome::ok(out))
        }
        Verb::Verify { f, g, oracle, grid } => {
            let json = wants_json(cli, "verify")?;
            let (f, g) = load_pair(f, g)?;
            if *grid < 2 {
                return Err(Failure::Usage("--grid must be at least 2".into()));
            }
            let mut report = verify_strong_consequences(&f, &g)?;
            if *oracle {
                let detail = match strong_commute_witness(&f, &g, *grid) {
                    None => format!("no grid mismatch at resolution {grid}"),
                    Some(x) => format!("mismatch at x = {}", format_rational(&x)),
                };
                report.push("oracle", brute_force_strong_commute(&f, &g, *grid), detail);
            }
            let text = if json {
                to_json(&report)
            } else {
                report.to_string()
            };
            Ok(Outcome {
                text,
                code: if report.all_passed() { 0 } else { 1 },
            })
        }
        Verb::Decompose { f, g } => {
            format_for(cli, "decompose", &[Format::Json])?;
            let (f, g) = load_pair(f, g)?;
            let d = decompose(&f, &g)?;
            let report = verify_decomposition(&f, &g, &d);
            if !report.all_passed() {
                return Err(Failure::Lib(Error::InternalInvariant(format!(
                    "decomposition failed verification:\n{report}"
                ))));
            }
            Ok(Outcome::ok(to_json(&d)))
        }
        Verb::FixedPoints { map } => {
            let json = wants_json(cli, "fixed-points")?;
            let fixed = load(map)?.fixed_points();
            if json {
                let comps = fixed.components();
                return Ok(Outcome::ok(to_json(&comps)));
            }
            let mut out = String::new();
            for c in fixed.components() {
                if c.is_degenerate() {
                    out.push_str(&format!("{}\n", format_rational(c.lo())));
                } else {
                    out.push_str(&format!("{c}\n"));
                }
            }
            Ok(Outcome::ok(out))
        }
        Verb::CommonFixedPoint { f, g } => {
            let (f, g) = load_pair(f, g)?;
            let x = common_fixed_point(&f, &g)?;
            Ok(Outcome::ok(format!("{}\n", format_rational(&x))))
        }
        Verb::Entropy { f, g } => {
            let json = wants_json(cli, "entropy")?;
            let method = cli.method.map(|m| match m {
                MethodArg::Lap => Method::Lap,
                MethodArg::Markov => Method::Markov,
            });
            let k_max = cli.iters.unwrap_or(DEFAULT_K_MAX);
            if k_max == 0 {
                return Err(Failure::Usage("--iters must be positive".into()));
            }
            let f = load(f)?;
            let h = match g {
                None => entropy_capped(&f, method, k_max, cap)?,
                Some(g) => entropy_setvalued_capped(&f, &load(g)?, method, k_max, cap)?,
            };
            Ok(Outcome::ok(if json {
                to_json(&h)
            } else {
                format!("{h}\n")
            }))
        }
        Verb::PrimaryValues { map } => {
            let json = wants_json(cli, "primary-values")?;
            let pv = primary_critical_values(&load(map)?)?;
            if json {
                return Ok(Outcome::ok(to_json(&pv)));
            }
            let mut out = String::new();
            let start = pv.first_index();
            for (k, (v, t)) in pv.values.iter().zip(&pv.exacting).enumerate() {
                out.push_str(&format!(
                    "v_{} = {}  t = {}\n",
                    k + start,
                    format_rational(v),
                    t.as_ref()
                        .map(format_rational)
                        .unwrap_or_else(|| "-".into())
                ));
            }
            let orient = serde_json::to_value(pv.orientation).expect("serializable orientation");
            out.push_str(&format!(
                "orientation: {}\n",
                orient.as_str().unwrap_or_default()
            ));
            Ok(Outcome::ok(out))
        }
    }
}
