//! The `lamcf` command-line tool.
//!
//! JSON results go to standard output, one-line human summaries to
//! standard error. Exit codes: 0 success, 1 a negative answer (not equal,
//! not a member), 2 an error or an undecided comparison, 64 bad usage.

pub mod input;
pub mod render;

use std::fs;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use lamcf::cf::{expand_rational, expand_surd, DEFAULT_MAX_TERMS};
use lamcf::hecke::surface_invariants;
use lamcf::invariants::{
    delta_for_level, invariant_of_stream, parse_half, polygon_areas, LaminationInvariant,
};
use lamcf::json::{
    axis_to_json, cf_to_json, decomposition_to_json, error_to_json, int_to_json,
    invariant_from_json, invariant_to_json, point_to_json, step_from_json, step_to_json,
    surd_to_json,
};
use lamcf::legendre::{LegendreBuilder, DEFAULT_SEARCH_BOUND};
use lamcf::{
    apply_gl2, enumerate_delta, invariant_equal, tail_equivalent, validate_delta, BigInt, Cf,
    CfKind, Error, InvariantDecision, Predicate, TailDecision,
};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::input::{parse_cf, parse_expandable, parse_matrix, Expandable};
use crate::render::{render_axes, RenderSpec};

/// Environment variable overriding the default term-search bound.
pub const SEARCH_BOUND_VAR: &str = "LAMCF_SEARCH_BOUND";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "lamcf",
    version,
    about = "Continued fractions, modular matrices and lamination invariants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Regular continued fractions.
    #[command(subcommand)]
    Cf(CfCommand),
    /// Integer 2×2 matrices of determinant ±1.
    #[command(subcommand)]
    Gl2(Gl2Command),
    /// Index, cusps, elliptic points and genus of X₀(N).
    Genus { level: u64 },
    /// The inductive slope construction.
    #[command(subcommand)]
    Legendre(LegendreCommand),
    /// Singularity data.
    #[command(subcommand)]
    Delta(DeltaCommand),
    /// The complete invariant (Θ, Δ).
    #[command(subcommand)]
    Invariant(InvariantCommand),
    /// SVG output.
    #[command(subcommand)]
    Render(RenderCommand),
}

#[derive(Subcommand, Debug)]
enum CfCommand {
    /// Expand `p/q`, an integer or a quadratic surd such as `(1 + sqrt(5))/2`.
    Expand {
        #[arg(allow_hyphen_values = true)]
        value: String,
        #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
        max_terms: usize,
    },
    /// Exact value, or the convergent at `--depth`.
    Eval {
        #[arg(allow_hyphen_values = true)]
        cf: String,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Canonical form.
    Canon {
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
    /// Whether two fractions share a tail.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Fraction of `(a·θ + b)/(c·θ + d)`.
    Apply {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(allow_hyphen_values = true)]
        cf: String,
    },
}

#[derive(Args, Debug)]
struct MatrixArg {
    /// `a,b,c,d` or a JSON object.
    #[arg(allow_hyphen_values = true)]
    matrix: String,
}

#[derive(Subcommand, Debug)]
enum Gl2Command {
    /// Elliptic, parabolic or hyperbolic, with the trace.
    Classify(MatrixArg),
    /// Fixed points on the boundary.
    Fix(MatrixArg),
    /// Axis endpoints and closed-geodesic length.
    Axis(MatrixArg),
    /// Membership in Γ₀(N).
    Member {
        #[command(flatten)]
        m: MatrixArg,
        #[arg(long)]
        level: u64,
    },
    /// Factor into continued-fraction generators.
    Decompose(MatrixArg),
}

#[derive(Subcommand, Debug)]
enum LegendreCommand {
    /// Emit one JSON line per step.
    Run {
        #[arg(long)]
        p0: u64,
        #[arg(long)]
        steps: usize,
        /// `hyperbolic`, `never` or `mod:M:R`.
        #[arg(long, default_value = "hyperbolic")]
        pred: String,
        #[arg(long, default_value_t = 1)]
        level: u64,
        /// Overrides the search bound from the environment.
        #[arg(long)]
        bound: Option<u64>,
    },
}

#[derive(Subcommand, Debug)]
enum DeltaCommand {
    /// Validate parts such as `1/2 1/2 1/2 1/2` or `2`.
    Check {
        #[arg(long, conflicts_with = "level", required_unless_present = "level")]
        genus: Option<u64>,
        /// Take the genus of X₀(N).
        #[arg(long)]
        level: Option<u64>,
        parts: Vec<String>,
    },
    /// One JSON line per valid Δ.
    Enumerate { genus: u64 },
}

#[derive(Subcommand, Debug)]
enum InvariantCommand {
    /// Prints Equal, NotEqual or Unknown; exits 0, 1 or 2.
    Compare { a: PathBuf, b: PathBuf },
    /// Build an invariant from an exact slope or from `legendre run` output.
    Pack {
        #[arg(long)]
        level: u64,
        /// Parts of Δ, comma separated.
        #[arg(long, value_delimiter = ',')]
        delta: Vec<String>,
        #[arg(
            long,
            conflicts_with = "steps",
            required_unless_present = "steps",
            allow_hyphen_values = true
        )]
        theta: Option<String>,
        /// JSON-lines file of steps, or `-` for standard input.
        #[arg(long)]
        steps: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum RenderCommand {
    /// Draw the axes of hyperbolic matrices as half-circles.
    Axes {
        /// Matrices as `a,b,c,d`; put them after `--` if one starts with `-`.
        #[arg(required = true)]
        matrices: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = -3.0, allow_hyphen_values = true)]
        x_min: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        x_max: f64,
        #[arg(long, default_value_t = 3.0)]
        height: f64,
        #[arg(long, default_value_t = 0.02)]
        stroke: f64,
        /// Also draw translates by (1 1; 0 1) up to this depth.
        #[arg(long)]
        orbit: Option<u32>,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome = std::result::Result<i32, Failure>;

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{v}");
    }

    fn say(&mut self, msg: impl AsRef<str>) {
        let _ = writeln!(self.err, "{}", msg.as_ref());
    }
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let mut io = Io { stdin, out, err };
    let outcome = dispatch(cli.command, &mut io);
    match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            io.say(format!("usage error: {msg}"));
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => {
            io.emit(&error_to_json(&e));
            io.say(format!("error: {e}"));
            EXIT_ERROR
        }
        Err(Failure::Io(msg)) => {
            io.emit(&json!({"error": "Io", "detail": msg}));
            io.say(format!("error: {msg}"));
            EXIT_ERROR
        }
    }
}

fn dispatch(command: Command, io: &mut Io) -> Outcome {
    match command {
        Command::Cf(c) => cf(c, io),
        Command::Gl2(c) => gl2(c, io),
        Command::Genus { level } => {
            let s = surface_invariants(level)?;
            io.emit(&serde_json::to_value(s).expect("plain record"));
            io.say(format!(
                "X0({level}): genus {}, index {}, {} cusps",
                s.genus, s.index, s.cusps
            ));
            Ok(EXIT_OK)
        }
        Command::Legendre(LegendreCommand::Run {
            p0,
            steps,
            pred,
            level,
            bound,
        }) => legendre(p0, steps, &pred, level, bound, io),
        Command::Delta(c) => delta(c, io),
        Command::Invariant(c) => invariant(c, io),
        Command::Render(RenderCommand::Axes {
            matrices,
            output,
            x_min,
            x_max,
            height,
            stroke,
            orbit,
        }) => {
            let mut spec = RenderSpec::new(x_min, x_max, height);
            spec.stroke_width = stroke;
            spec.orbit = orbit;
            spec.matrices = matrices
                .iter()
                .map(|m| parse_matrix(m))
                .collect::<lamcf::Result<_>>()?;
            let svg = render_axes(&spec)?;
            fs::write(&output, svg)
                .map_err(|e| Failure::Io(format!("{}: {e}", output.display())))?;
            io.emit(
                &json!({"output": output.display().to_string(), "geodesics": spec.matrices.len()}),
            );
            io.say(format!("wrote {}", output.display()));
            Ok(EXIT_OK)
        }
    }
}

fn ratio_json(num: &BigInt, den: &BigInt) -> Value {
    let approx = match (num.to_f64(), den.to_f64()) {
        (Some(n), Some(d)) => n / d,
        _ => f64::NAN,
    };
    json!({"num": int_to_json(num), "den": int_to_json(den), "approx": approx})
}

fn decision_code(d: TailDecision) -> i32 {
    match d {
        TailDecision::Equivalent => EXIT_OK,
        TailDecision::NotEquivalent => EXIT_NEGATIVE,
        TailDecision::Unknown => EXIT_ERROR,
    }
}

fn cf(command: CfCommand, io: &mut Io) -> Outcome {
    match command {
        CfCommand::Expand { value, max_terms } => {
            let cf = match parse_expandable(&value)? {
                Expandable::Rational(r) => expand_rational(&r)?,
                Expandable::Surd(s) => expand_surd(&s, max_terms)?,
            };
            io.emit(&cf_to_json(&cf));
            io.say(cf.to_string());
        }
        CfCommand::Eval { cf, depth } => {
            let cf = parse_cf(&cf)?;
            let v = match (cf.kind(), depth) {
                (CfKind::Periodic, None) => {
                    let s = cf.to_surd()?;
                    io.say(s.to_string());
                    json!({"surd": surd_to_json(&s), "approx": s.to_f64()})
                }
                (kind, depth) => {
                    let depth = depth.unwrap_or_else(|| cf.available().map_or(0, |n| n - 1));
                    let r = cf.convergent(depth)?;
                    io.say(format!("{r}"));
                    let mut v = ratio_json(r.numer(), r.denom());
                    if kind != CfKind::Finite || depth + 1 < cf.prefix().len() {
                        v["depth"] = json!(depth);
                    }
                    v
                }
            };
            io.emit(&v);
        }
        CfCommand::Canon { cf } => {
            let c = parse_cf(&cf)?.canonical();
            io.emit(&cf_to_json(&c));
            io.say(c.to_string());
        }
        CfCommand::Equiv { a, b } => {
            let d = tail_equivalent(&parse_cf(&a)?, &parse_cf(&b)?);
            io.emit(&json!({"decision": d.as_str()}));
            io.say(d.as_str());
            return Ok(decision_code(d));
        }
        CfCommand::Apply { matrix, cf } => {
            let image = apply_gl2(&parse_matrix(&matrix)?, &parse_cf(&cf)?)?;
            io.emit(&cf_to_json(&image));
            io.say(image.to_string());
        }
    }
    Ok(EXIT_OK)
}

fn gl2(command: Gl2Command, io: &mut Io) -> Outcome {
    match command {
        Gl2Command::Classify(MatrixArg { matrix }) => {
            let m = parse_matrix(&matrix)?;
            let class = m.classify()?;
            io.emit(&json!({"class": class.as_str(), "trace": int_to_json(&m.trace())}));
            io.say(format!("{m}: {}", class.as_str()));
        }
        Gl2Command::Fix(MatrixArg { matrix }) => {
            let m = parse_matrix(&matrix)?;
            let points = m.fixed_points()?;
            io.emit(&json!({"fixed_points": points.iter().map(point_to_json).collect::<Vec<_>>()}));
            io.say(
                points
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", "),
            );
        }
        Gl2Command::Axis(MatrixArg { matrix }) => {
            let axis = parse_matrix(&matrix)?.axis()?;
            io.emit(&axis_to_json(&axis));
            io.say(format!(
                "{} to {}, length {:.6}",
                axis.endpoints[0], axis.endpoints[1], axis.length
            ));
        }
        Gl2Command::Member { m, level } => {
            if level == 0 {
                return Err(Error::InvalidLevel("0".into()).into());
            }
            let member = parse_matrix(&m.matrix)?.in_hecke(level);
            io.emit(&json!({"member": member, "level": level}));
            io.say(if member { "member" } else { "not a member" });
            return Ok(if member { EXIT_OK } else { EXIT_NEGATIVE });
        }
        Gl2Command::Decompose(MatrixArg { matrix }) => {
            let d = parse_matrix(&matrix)?.decompose()?;
            io.emit(&decomposition_to_json(&d));
            let terms: Vec<String> = d.terms.iter().map(ToString::to_string).collect();
            io.say(format!("p0 = {}, terms [{}]", d.p0, terms.join(", ")));
        }
    }
    Ok(EXIT_OK)
}

fn search_bound(explicit: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(b) = explicit {
        return Ok(b);
    }
    match std::env::var(SEARCH_BOUND_VAR) {
        Ok(v) => v.trim().parse().ok().filter(|&b| b >= 1).ok_or_else(|| {
            Failure::Usage(format!(
                "{SEARCH_BOUND_VAR} must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_SEARCH_BOUND),
    }
}

fn legendre(
    p0: u64,
    steps: usize,
    pred: &str,
    level: u64,
    bound: Option<u64>,
    io: &mut Io,
) -> Outcome {
    let bound = search_bound(bound)?;
    if bound == 0 {
        return Err(Failure::Usage("--bound must be at least 1".into()));
    }
    let pred = Predicate::parse(pred)?;
    let builder = LegendreBuilder::new(BigInt::from(p0), pred, bound, level)?;
    let mut emitted = 0;
    for step in builder.take(steps) {
        let step = step?;
        io.emit(&step_to_json(&step));
        emitted += 1;
    }
    io.say(format!("{emitted} steps"));
    Ok(EXIT_OK)
}

fn parse_parts(parts: &[String]) -> lamcf::Result<Vec<u64>> {
    parts
        .iter()
        .filter(|p| !p.trim().is_empty())
        .map(|p| parse_half(p))
        .collect()
}

fn delta(command: DeltaCommand, io: &mut Io) -> Outcome {
    match command {
        DeltaCommand::Check {
            genus,
            level,
            parts,
        } => {
            let doubled = parse_parts(&parts)?;
            let d = match (genus, level) {
                (Some(g), _) => validate_delta(&doubled, g)?,
                (None, Some(n)) => delta_for_level(&doubled, n)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            let areas = polygon_areas(&d);
            io.emit(&json!({
                "genus": d.genus(),
                "delta": d.doubled_parts(),
                "areas": areas,
                "total_area": areas.iter().sum::<u64>(),
            }));
            io.say(format!("{d} is valid for genus {}", d.genus()));
        }
        DeltaCommand::Enumerate { genus } => {
            let mut count = 0u64;
            for d in enumerate_delta(genus)? {
                io.emit(&json!({"delta": d.doubled_parts()}));
                count += 1;
            }
            io.say(format!("{count} singularity data for genus {genus}"));
        }
    }
    Ok(EXIT_OK)
}

fn read_file(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    let text = read_file(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())).into())
}

fn invariant(command: InvariantCommand, io: &mut Io) -> Outcome {
    match command {
        InvariantCommand::Compare { a, b } => {
            let a = invariant_from_json::<BigInt>(&read_json(&a)?)?;
            let b = invariant_from_json::<BigInt>(&read_json(&b)?)?;
            let d = invariant_equal(&a, &b)?;
            io.emit(&json!({"decision": d.as_str()}));
            io.say(d.as_str());
            Ok(match d {
                InvariantDecision::Equal => EXIT_OK,
                InvariantDecision::NotEqual => EXIT_NEGATIVE,
                InvariantDecision::Unknown => EXIT_ERROR,
            })
        }
        InvariantCommand::Pack {
            level,
            delta,
            theta,
            steps,
        } => {
            let d = delta_for_level(&parse_parts(&delta)?, level)?;
            let inv = match (theta, steps) {
                (Some(t), _) => LaminationInvariant::new(parse_cf(&t)?, d, level)?,
                (None, Some(path)) => {
                    let text = if path.as_os_str() == "-" {
                        let mut s = String::new();
                        io.stdin
                            .read_to_string(&mut s)
                            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
                        s
                    } else {
                        read_file(&path)?
                    };
                    let parsed = text
                        .lines()
                        .filter(|l| !l.trim().is_empty())
                        .map(|l| {
                            let v: Value =
                                serde_json::from_str(l).map_err(|e| Error::Parse(e.to_string()))?;
                            step_from_json(&v)
                        })
                        .collect::<lamcf::Result<Vec<_>>>()?;
                    invariant_of_stream(&parsed, &d, level)?
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            io.emit(&invariant_to_json(&inv));
            let theta: &Cf = inv.theta();
            io.say(format!("({theta}, {}) on X0({level})", inv.delta()));
            Ok(EXIT_OK)
        }
    }
}
