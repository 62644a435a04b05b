//! Command-line front end.
//!
//! Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success (for `fuzz`: no non-fragile disagreements) |
//! | 1 | `fuzz` found non-fragile disagreements or closure violations |
//! | 2 | usage, parse or I/O error |
//! | 3 | zero vector or duplicate triangle vertices |
//! | 4 | numeric failure (residual too large, internal contradiction) |

use std::f64::consts::PI;
use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::angle::{
    self, oriented_angle, oriented_sum_multiple, turning_angle, AngleError, FloatVec2,
};
use crate::exact::{self, classify_pairs, ExactError, RationalVec2};
use crate::figure::{self, LabelMode, RenderError, RenderOptions};
use crate::harness::{self, HarnessError, SampleMode, SampleSpec};
use crate::rational::{parse_rational, ParseRationalError};
use crate::triangle::{self, TriangleError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FUZZ_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "anglesum",
    version,
    about = "Turning-angle sums of planar vector triples, decided exactly"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Report angles as multiples of pi instead of radians.
    #[arg(long, global = true)]
    pub pi: bool,
    /// Tolerance in radians for float comparisons.
    #[arg(long, global = true, default_value_t = angle::DEFAULT_TOL)]
    pub tol: f64,
    /// Read vectors or points from this file instead of the arguments.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide exactly whether ta(a,b) + ta(b,c) + ta(c,a) = 2*pi.
    Classify(Inputs),
    /// Oriented and turning angles, their sum, and the winding multiple k.
    Sum(Inputs),
    /// Interior angles of the triangle with the given vertices.
    Triangle(Inputs),
    /// Run a seeded float-vs-exact differential campaign.
    Fuzz(FuzzArgs),
    /// Draw the vectors and their oriented-angle arcs as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct Inputs {
    /// Three pairs "x,y"; coordinates are p/q fractions or decimals.
    /// Read from --file or standard input when omitted.
    #[arg(num_args = 0..)]
    pub items: Vec<String>,
}

#[derive(Debug, Args)]
pub struct FuzzArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// uniform-rational, boundary-exact, near-collinear, extreme-magnitude or closed-triple.
    #[arg(long, default_value = "uniform-rational")]
    pub mode: String,
    #[arg(long, default_value_t = SampleSpec::DEFAULT_NUMERATOR_BOUND)]
    pub numerator_bound: u64,
    #[arg(long, default_value_t = SampleSpec::DEFAULT_DENOMINATOR_BOUND)]
    pub denominator_bound: u64,
    /// Report elapsed_ms as 0 so the output is reproducible byte for byte.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Labels {
    Auto,
    Always,
    Never,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[command(flatten)]
    pub inputs: Inputs,
    /// Canvas width and height in pixels.
    #[arg(long, default_value_t = 400)]
    pub size: u32,
    #[arg(long, value_enum, default_value_t = Labels::Auto)]
    pub labels: Labels,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Angle(#[from] AngleError),
    #[error("{0}")]
    Exact(#[from] ExactError),
    #[error("{0}")]
    Triangle(#[from] TriangleError),
    #[error("{0}")]
    Harness(#[from] HarnessError),
}

impl From<ParseRationalError> for CliError {
    fn from(e: ParseRationalError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<RenderError> for CliError {
    fn from(e: RenderError) -> Self {
        match e {
            RenderError::Angle(a) => CliError::Angle(a),
            RenderError::InvalidOptions(m) => CliError::Usage(m),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Angle(AngleError::ZeroVector) => EXIT_HYPOTHESIS,
            CliError::Angle(AngleError::NonFinite) => EXIT_USAGE,
            CliError::Angle(AngleError::ResidualTooLarge { .. }) => EXIT_NUMERIC,
            CliError::Exact(ExactError::ZeroVector) => EXIT_HYPOTHESIS,
            CliError::Exact(ExactError::InternalContradiction) => EXIT_NUMERIC,
            CliError::Triangle(TriangleError::NonFinite) => EXIT_USAGE,
            CliError::Triangle(_) => EXIT_HYPOTHESIS,
            CliError::Harness(HarnessError::InvalidSpec(_)) => EXIT_USAGE,
            CliError::Harness(HarnessError::Exact { source, .. }) => match source {
                ExactError::ZeroVector => EXIT_HYPOTHESIS,
                ExactError::InternalContradiction => EXIT_NUMERIC,
            },
        }
    }
}

/// One `x,y` token.
fn parse_pair(token: &str) -> Result<RationalVec2, CliError> {
    let (x, y) = token
        .split_once(',')
        .ok_or_else(|| CliError::Parse(format!("expected \"x,y\", got {token:?}")))?;
    Ok(RationalVec2::new(parse_rational(x)?, parse_rational(y)?))
}

fn json_coordinate(v: &Value) -> Result<String, CliError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(CliError::Parse(format!(
            "coordinate must be a string or number, got {other}"
        ))),
    }
}

/// Three pairs, either as whitespace-separated `x,y` tokens or as a JSON array
/// of three `[x, y]` pairs with string or number coordinates.
pub fn parse_triple(text: &str) -> Result<[RationalVec2; 3], CliError> {
    let trimmed = text.trim();
    let pairs: Vec<RationalVec2> = if trimmed.starts_with('[') {
        let value: Value = serde_json::from_str(trimmed)
            .map_err(|e| CliError::Parse(format!("invalid JSON: {e}")))?;
        let items = value
            .as_array()
            .ok_or_else(|| CliError::Parse("expected a JSON array of pairs".into()))?;
        items
            .iter()
            .map(|item| match item.as_array().map(Vec::as_slice) {
                Some([x, y]) => Ok(RationalVec2::new(
                    parse_rational(&json_coordinate(x)?)?,
                    parse_rational(&json_coordinate(y)?)?,
                )),
                _ => Err(CliError::Parse(format!(
                    "expected an [x, y] pair, got {item}"
                ))),
            })
            .collect::<Result<_, _>>()?
    } else {
        trimmed
            .split_whitespace()
            .map(parse_pair)
            .collect::<Result<_, _>>()?
    };
    <[RationalVec2; 3]>::try_from(pairs)
        .map_err(|p| CliError::Parse(format!("expected exactly 3 pairs, got {}", p.len())))
}

fn read_triple(
    items: &[String],
    file: &Option<PathBuf>,
    stdin: &mut dyn Read,
) -> Result<[RationalVec2; 3], CliError> {
    if !items.is_empty() {
        if file.is_some() {
            return Err(CliError::Usage(
                "give inputs either inline or with --file, not both".into(),
            ));
        }
        return parse_triple(&items.join(" "));
    }
    let text = match file {
        Some(path) => fs::read_to_string(path)?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s)?;
            s
        }
    };
    parse_triple(&text)
}

/// Round to 15 significant digits.
fn sig15(x: f64) -> f64 {
    format!("{x:.14e}").parse().unwrap_or(x)
}

struct Units {
    over_pi: bool,
}

impl Units {
    fn angle(&self, radians: f64) -> f64 {
        sig15(if self.over_pi { radians / PI } else { radians })
    }

    fn name(&self) -> &'static str {
        if self.over_pi {
            "pi"
        } else {
            "rad"
        }
    }

    fn text(&self, radians: f64) -> String {
        if self.over_pi {
            format!("{}pi", self.angle(radians))
        } else {
            format!("{}", self.angle(radians))
        }
    }
}

fn vector_strings(v: &[RationalVec2; 3]) -> Vec<[String; 2]> {
    v.iter().map(RationalVec2::to_strings).collect()
}

fn to_floats(v: &[RationalVec2; 3]) -> [FloatVec2; 3] {
    [v[0].to_float(), v[1].to_float(), v[2].to_float()]
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_classify(cli: &Cli, v: &[RationalVec2; 3]) -> Result<String, CliError> {
    let classes = classify_pairs(&v[0], &v[1], &v[2])?;
    let alternative = exact::alternative_of(&classes)?;
    let verdict = alternative != exact::TripleAlternative::Neither;
    Ok(if cli.json {
        pretty(&json!({
            "vectors": vector_strings(v),
            "classes": classes,
            "alternative": alternative,
            "turning_sum_is_two_pi": verdict,
        }))
    } else {
        format!(
            "classes: {} {} {}\nalternative: {alternative}\nturning sum equals 2pi: {verdict}\n",
            classes[0], classes[1], classes[2]
        )
    })
}

fn cmd_sum(cli: &Cli, v: &[RationalVec2; 3]) -> Result<String, CliError> {
    if v.iter().any(RationalVec2::is_zero) {
        return Err(ExactError::ZeroVector.into());
    }
    let units = Units { over_pi: cli.pi };
    let f = to_floats(v);
    let names = ["ab", "bc", "ca"];
    let mut pairs = Vec::new();
    let mut total = 0.0;
    for (k, (i, j)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
        let oriented = oriented_angle(&f[i], &f[j])?.0;
        let turning = turning_angle(&f[i], &f[j])?.0;
        total += turning;
        pairs.push((names[k], oriented, turning));
    }
    let multiple = oriented_sum_multiple(&f[0], &f[1], &f[2])?;
    Ok(if cli.json {
        let pair_values: Vec<Value> = pairs
            .iter()
            .map(|(name, o, t)| json!({"pair": name, "oriented": units.angle(*o), "turning": units.angle(*t)}))
            .collect();
        pretty(&json!({
            "vectors": vector_strings(v),
            "unit": units.name(),
            "pairs": pair_values,
            "turning_sum": units.angle(total),
            "multiple": multiple,
        }))
    } else {
        let mut out = String::new();
        for (name, o, t) in &pairs {
            out += &format!(
                "{name}: oriented {} turning {}\n",
                units.text(*o),
                units.text(*t)
            );
        }
        out += &format!(
            "turning sum: {}\nmultiple k: {multiple}\n",
            units.text(total)
        );
        out
    })
}

fn cmd_triangle(cli: &Cli, p: &[RationalVec2; 3]) -> Result<String, CliError> {
    triangle::side_vectors_exact(&p[0], &p[1], &p[2])?;
    let units = Units { over_pi: cli.pi };
    let f = to_floats(p);
    let angles = triangle::interior_angles(&f[0], &f[1], &f[2])?;
    let values = angles.as_array().map(|a| units.angle(a));
    let sum = units.angle(angles.sum().0);
    Ok(if cli.json {
        pretty(&json!({
            "points": vector_strings(p),
            "unit": units.name(),
            "angles": values,
            "sum": sum,
        }))
    } else {
        let [a0, a1, a2] = angles.as_array().map(|a| units.text(a));
        format!(
            "alpha0: {a0}\nalpha1: {a1}\nalpha2: {a2}\nsum: {}\n",
            units.text(angles.sum().0)
        )
    })
}

fn cmd_fuzz(
    cli: &Cli,
    args: &FuzzArgs,
    stderr: &mut dyn Write,
) -> Result<(String, bool), CliError> {
    let mode: SampleMode = args.mode.parse().map_err(CliError::Usage)?;
    let spec = SampleSpec {
        count: args.count,
        seed: args.seed,
        mode,
        numerator_bound: args.numerator_bound,
        denominator_bound: args.denominator_bound,
    };
    let mut report = harness::run_campaign(&spec, cli.tol)?;
    if args.no_timing {
        report = report.without_timing();
    }
    let _ = writeln!(
        stderr,
        "{mode}: total {} agreements {} fragile {} disagreements {}",
        report.total,
        report.agreements,
        report.fragile_excluded,
        report.disagreements.len()
    );
    let mut json = report.to_json();
    json.push('\n');
    Ok((json, report.passed()))
}

fn cmd_render(args: &RenderArgs, v: &[RationalVec2; 3]) -> Result<String, CliError> {
    let opts = RenderOptions {
        size: args.size,
        labels: match args.labels {
            Labels::Auto => LabelMode::Auto,
            Labels::Always => LabelMode::Always,
            Labels::Never => LabelMode::Never,
        },
        ..RenderOptions::default()
    };
    if v.iter().any(RationalVec2::is_zero) {
        return Err(AngleError::ZeroVector.into());
    }
    let f = to_floats(v);
    Ok(figure::render_triple_svg(&f[0], &f[1], &f[2], &opts)?)
}

fn execute(
    cli: &Cli,
    stdin: &mut dyn Read,
    stderr: &mut dyn Write,
) -> Result<(String, i32), CliError> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            cli.tol
        )));
    }
    let done = |s: String| Ok((s, EXIT_OK));
    match &cli.command {
        Command::Classify(i) => done(cmd_classify(
            cli,
            &read_triple(&i.items, &cli.file, stdin)?,
        )?),
        Command::Sum(i) => done(cmd_sum(cli, &read_triple(&i.items, &cli.file, stdin)?)?),
        Command::Triangle(i) => done(cmd_triangle(
            cli,
            &read_triple(&i.items, &cli.file, stdin)?,
        )?),
        Command::Render(r) => done(cmd_render(
            r,
            &read_triple(&r.inputs.items, &cli.file, stdin)?,
        )?),
        Command::Fuzz(f) => {
            let (out, passed) = cmd_fuzz(cli, f, stderr)?;
            Ok((out, if passed { EXIT_OK } else { EXIT_FUZZ_FAILED }))
        }
    }
}

/// Run the CLI on `args` (including the program name) and return the exit code.
/// Prefix a space to tokens like "-1,2" so clap reads them as values rather
/// than flags; coordinate parsing trims it again.
fn shield_negative(arg: std::ffi::OsString) -> std::ffi::OsString {
    match arg.to_str() {
        Some(s)
            if s.len() > 1
                && s.starts_with('-')
                && matches!(s.as_bytes()[1], b'0'..=b'9' | b'.') =>
        {
            format!(" {s}").into()
        }
        _ => arg,
    }
}

pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args.into_iter().map(|a| shield_negative(a.into()))) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, stdin, stderr) {
        Ok((output, code)) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &output),
                None => stdout.write_all(output.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: i/o error: {e}");
                return EXIT_USAGE;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut argv = vec!["anglesum"];
        argv.extend_from_slice(args);
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(argv, &mut stdin, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parses_tokens_and_json() {
        let t = parse_triple("1,0 0,1 -1/2,-0.5").unwrap();
        assert_eq!(t[2].to_strings(), ["-1/2".to_string(), "-1/2".to_string()]);
        let t = parse_triple(r#"[[0, 0], ["1/3", 2], [0.25, "-7"]]"#).unwrap();
        assert_eq!(t[1].to_strings(), ["1/3".to_string(), "2".to_string()]);
        assert_eq!(t[2].to_strings(), ["1/4".to_string(), "-7".to_string()]);
        for bad in [
            "1,0 0,1",
            "1,0 0,1 1",
            "1,0 0,1 a,b",
            "[[1,0],[0,1]]",
            "[[1,0,2],[0,1],[1,1]]",
            "[1,",
        ] {
            assert!(
                matches!(parse_triple(bad), Err(CliError::Parse(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn classify_text_and_codes() {
        let (code, out, _) = run_str(&["classify", "1,0", "0,1", "-1,-1"], "");
        assert_eq!(code, 0);
        assert!(out.contains("alternative: AlternativeI"));
        assert!(out.contains("turning sum equals 2pi: true"));
        let (code, out, _) = run_str(&["classify", "1,0", "0,1", "0,1"], "");
        assert_eq!(code, 0);
        assert!(out.contains("Neither"));
        let (code, _, err) = run_str(&["classify", "0,0", "1,0", "1,0"], "");
        assert_eq!(code, 3);
        assert!(err.contains("zero vector"));
        let (code, _, _) = run_str(&["classify", "1,x", "1,0", "1,0"], "");
        assert_eq!(code, 2);
    }

    #[test]
    fn reads_stdin_when_no_args() {
        let (code, out, _) = run_str(&["--json", "classify"], "1,0\n0,-1\n-1,1\n");
        assert_eq!(code, 0);
        assert!(out.contains("\"AlternativeII\""));
    }

    #[test]
    fn sum_in_multiples_of_pi() {
        let (code, out, _) = run_str(&["--json", "--pi", "sum", "1,0", "0,-1", "-1,1"], "");
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["turning_sum"], json!(2.0));
        assert_eq!(v["multiple"], json!(2));
        assert_eq!(v["pairs"][0]["oriented"], json!(1.5));
        assert_eq!(v["pairs"][1]["oriented"], json!(1.25));
    }

    #[test]
    fn triangle_codes() {
        let (code, out, _) = run_str(&["triangle", "0,0", "1,0", "2,0"], "");
        assert_eq!(code, 0);
        assert!(out.contains("alpha1: 3.14159265358979"));
        let (code, _, _) = run_str(&["triangle", "0,0", "1,1", "0,0"], "");
        assert_eq!(code, 3);
    }

    #[test]
    fn fuzz_codes() {
        let (code, _, _) = run_str(&["fuzz", "--count", "0"], "");
        assert_eq!(code, 2);
        let (code, _, _) = run_str(&["fuzz", "--mode", "sideways"], "");
        assert_eq!(code, 2);
        let (code, _, _) = run_str(&["--tol", "-1", "fuzz"], "");
        assert_eq!(code, 2);
        // a tolerance of 4 rad calls every Neither triple a full turn
        let (code, out, _) = run_str(&["--tol", "4", "fuzz", "--count", "50", "--no-timing"], "");
        assert_eq!(code, 1);
        assert!(out.contains("\"disagreements\""));
        let (code, _, _) = run_str(&["fuzz", "--count", "50"], "");
        assert_eq!(code, 0);
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&["frobnicate"], "").0, 2);
        assert_eq!(run_str(&[], "").0, 2);
        assert_eq!(
            run_str(&["render", "--size", "0", "1,0", "0,1", "1,1"], "").0,
            2
        );
        assert_eq!(run_str(&["--help"], "").0, 0);
    }
}
