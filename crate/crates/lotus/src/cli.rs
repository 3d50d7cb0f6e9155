//! Argument parsing and command dispatch.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use lotus_core::lotus2d::{is_admissible, Side};
use lotus_core::{
    build_enriques, build_kite, cf_eval, cf_expand, dual_from_voilure, enriques_from_kite, nd_sheath,
    represents_zero, sheath, simulate_blowups, symbols_to_cf, triangulated_polygon,
    vector_realization, CfSeq, Constellation, Flavor, LatticeVec,
};

use crate::json::{self, ZeroSeqReport};
use crate::{dot, svg, text};

#[derive(Parser, Debug)]
#[command(name = "lotus", version, about = "Constellations of infinitely near points, kites and lotuses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Svg,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a constellation file and list every violated rule
    Validate {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decorated Enriques diagram
    Enriques {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Weighted dual graph from the blow-up sequence
    Dual {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
    },
    /// Kite with its charts; `dot` emits the cordage as an Enriques diagram
    Kite {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
    },
    /// Compare the kite's cordage and voilure with the direct constructions
    CheckIsos {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Evaluate or expand a continued fraction
    Cf {
        /// Terms of a `+` continued fraction, comma separated
        #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["minus", "expand"])]
        plus: Option<String>,
        /// Terms of a `−` continued fraction, comma separated
        #[arg(long, allow_hyphen_values = true, conflicts_with = "expand")]
        minus: Option<String>,
        /// Positive rational `p/q` to expand
        #[arg(long)]
        expand: Option<String>,
        #[arg(long, value_enum, default_value = "plus")]
        flavor: FlavorArg,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sheath of a primitive vector of the first quadrant
    Sheath {
        #[arg(long)]
        vector: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Admissibility, realization and triangulated polygon of a sequence
    Zeroseq {
        #[arg(long, allow_hyphen_values = true)]
        sequence: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Sheath walk in any dimension
    Ndsheath {
        #[arg(long)]
        vector: String,
        #[arg(long, default_value_t = 64)]
        depth: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// What a command printed and how it ended.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn failure(stderr: String) -> Self {
        Outcome { stdout: String::new(), stderr, code: 1 }
    }

    fn usage(stderr: String) -> Self {
        Outcome { stdout: String::new(), stderr, code: 2 }
    }
}

enum Failure {
    Usage(String),
    Failed(String),
}

type Run = Result<Outcome, Failure>;

fn failed(e: impl ToString) -> Failure {
    Failure::Failed(e.to_string())
}

fn unsupported(verb: &str, format: Format) -> Failure {
    Failure::Usage(format!("{verb} cannot be written as {format:?}").to_lowercase())
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Constellation, Failure> {
    text::parse(&read(path)?).map_err(|e| failed(format!("{}: {e}", path.display())))
}

fn integers(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("not an integer: {t:?}"))))
        .collect()
}

fn vector2(s: &str) -> Result<LatticeVec, Failure> {
    match integers(s)?[..] {
        [a, b] => Ok(LatticeVec::new(a, b)),
        _ => Err(Failure::Usage(format!("expected two coordinates, got {s:?}"))),
    }
}

pub fn run(cli: Cli) -> Outcome {
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => Outcome::usage(format!("error: {msg}\n")),
        Err(Failure::Failed(msg)) => Outcome::failure(format!("error: {msg}\n")),
    }
}

fn dispatch(command: Command) -> Run {
    match command {
        Command::Validate { file, format } => validate(&file, format),
        Command::Enriques { file, format } => {
            let d = build_enriques(&load(&file)?).map_err(failed)?;
            match format {
                Format::Dot => Ok(Outcome::ok(dot::enriques_to_dot(&d))),
                Format::Json => Ok(Outcome::ok(json::enriques_to_json(&d))),
                Format::Text => {
                    let mut out = String::new();
                    for e in d.edges() {
                        let aligned = match e.aligned_with_incoming {
                            Some(true) => " aligned",
                            _ => "",
                        };
                        writeln!(out, "{} -> {} {}{aligned}", e.from, e.to, e.kind).unwrap();
                    }
                    Ok(Outcome::ok(out))
                }
                Format::Svg => Err(unsupported("enriques", format)),
            }
        }
        Command::Dual { file, format } => {
            let g = simulate_blowups(&load(&file)?).map_err(failed)?;
            match format {
                Format::Dot => Ok(Outcome::ok(dot::dual_to_dot(&g))),
                Format::Json => Ok(Outcome::ok(json::dual_to_json(&g))),
                Format::Text => {
                    let mut out = String::new();
                    for (a, w) in g.weights() {
                        writeln!(out, "E_{a} {w}").unwrap();
                    }
                    for (a, b) in g.edges() {
                        writeln!(out, "{a} -- {b}").unwrap();
                    }
                    Ok(Outcome::ok(out))
                }
                Format::Svg => Err(unsupported("dual", format)),
            }
        }
        Command::Kite { file, format } => {
            let c = load(&file)?;
            let k = build_kite(&c).map_err(failed)?;
            match format {
                Format::Svg => Ok(Outcome::ok(svg::kite_to_svg(&k))),
                Format::Json => Ok(Outcome::ok(json::kite_to_json(&k, &c))),
                Format::Dot => Ok(Outcome::ok(dot::enriques_to_dot(&enriques_from_kite(&k)))),
                Format::Text => {
                    let mut out = String::new();
                    for s in k.complete_sails() {
                        writeln!(out, "complete sail of {} ({} simple)", s.root(), s.simple_count()).unwrap();
                        for a in s.members() {
                            let es = k.elementary_sail(a).expect("member");
                            let t = s.vertex(a).expect("charted");
                            writeln!(out, "  T({a}) = {t}  I({a}) = {}", es.star).unwrap();
                        }
                    }
                    Ok(Outcome::ok(out))
                }
            }
        }
        Command::CheckIsos { files } => check_isos(&files),
        Command::Cf { plus, minus, expand, flavor, format } => cf(plus, minus, expand, flavor, format),
        Command::Sheath { vector, format } => sheath_cmd(&vector, format),
        Command::Zeroseq { sequence, format } => zeroseq(&sequence, format),
        Command::Ndsheath { vector, depth, format } => {
            let w = integers(&vector)?;
            let r = nd_sheath(&w, depth).map_err(failed)?;
            match format {
                Format::Json => Ok(Outcome::ok(json::nd_sheath_to_json(&r))),
                Format::Svg => svg::nd_sheath_to_svg(&w, depth).map(Outcome::ok).map_err(|_| {
                    Failure::Usage("svg output needs a three-dimensional vector".into())
                }),
                Format::Text => {
                    let arrs: Vec<String> = r.arrangements.iter().map(ToString::to_string).collect();
                    let mut out = format!("{}\n", arrs.join(" "));
                    for d in &r.dimension_drops {
                        writeln!(out, "face-descent after step {}: labels {:?}", d.step + 1, d.labels).unwrap();
                    }
                    writeln!(out, "terminal: {:?}", r.terminal).unwrap();
                    Ok(Outcome::ok(out))
                }
                Format::Dot => Err(unsupported("ndsheath", format)),
            }
        }
    }
}

fn validate(file: &Path, format: Format) -> Run {
    let c = text::parse_unchecked(&read(file)?).map_err(|e| failed(format!("{}: {e}", file.display())))?;
    let violations = c.validate();
    if !violations.is_empty() {
        let mut err = String::new();
        for v in &violations {
            writeln!(err, "{}: {v}", file.display()).unwrap();
        }
        return Ok(Outcome { stdout: String::new(), stderr: err, code: 1 });
    }
    match format {
        Format::Text => Ok(Outcome::ok(format!(
            "valid: {} astres ({} free, {} satellite), height {}\n",
            c.len(),
            c.free_count(),
            c.satellite_count(),
            c.max_height()
        ))),
        Format::Json => Ok(Outcome::ok(json::constellation_to_json(&c))),
        _ => Err(unsupported("validate", format)),
    }
}

fn check_isos(files: &[PathBuf]) -> Run {
    let mut out = String::new();
    let mut all = true;
    for file in files {
        let c = load(file)?;
        let k = build_kite(&c).map_err(failed)?;
        let cordage = enriques_from_kite(&k) == build_enriques(&c).map_err(failed)?;
        let voilure = dual_from_voilure(&k) == simulate_blowups(&c).map_err(failed)?;
        let verdict = |ok| if ok { "PASS" } else { "FAIL" };
        writeln!(out, "{}: cordage {} voilure {}", file.display(), verdict(cordage), verdict(voilure)).unwrap();
        all &= cordage && voilure;
    }
    out.push_str(if all { "PASS\n" } else { "FAIL\n" });
    Ok(Outcome { stdout: out, stderr: String::new(), code: if all { 0 } else { 1 } })
}

fn cf(plus: Option<String>, minus: Option<String>, expand: Option<String>, flavor: FlavorArg, format: Format) -> Run {
    let expand_mode = expand.is_some();
    let seq = match (plus, minus, expand) {
        (Some(t), None, None) => CfSeq::plus(integers(&t)?).map_err(failed)?,
        (None, Some(t), None) => CfSeq::minus(integers(&t)?).map_err(failed)?,
        (None, None, Some(x)) => {
            let x = json::parse_rational(&x).map_err(|e| Failure::Usage(e.to_string()))?;
            let flavor = match flavor {
                FlavorArg::Plus => Flavor::Plus,
                FlavorArg::Minus => Flavor::Minus,
            };
            cf_expand(x, flavor).map_err(failed)?
        }
        _ => return Err(Failure::Usage("give exactly one of --plus, --minus, --expand".into())),
    };
    let value = cf_eval(&seq).map_err(failed)?;
    match format {
        Format::Text if expand_mode => Ok(Outcome::ok(format!("{seq}\n"))),
        Format::Text => Ok(Outcome::ok(format!("{value}\n"))),
        Format::Json => Ok(Outcome::ok(json::cf_to_json(&seq, value))),
        _ => Err(unsupported("cf", format)),
    }
}

fn sheath_cmd(vector: &str, format: Format) -> Run {
    let s = sheath(vector2(vector)?).map_err(failed)?;
    match format {
        Format::Json => Ok(Outcome::ok(json::sheath_to_json(&s))),
        Format::Svg => Ok(Outcome::ok(svg::sheath_to_svg(&s))),
        Format::Text => {
            let seq = symbols_to_cf(&s.symbols).map_err(failed)?;
            let value = cf_eval(&seq).map_err(failed)?;
            let word: String = s.symbols.iter().map(|c| c.as_char()).collect();
            let line = |pts: &[LatticeVec]| pts.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            let size = s.endpoint.a.max(s.endpoint.b);
            let hull = |side| lotus_core::klein_hull(s.endpoint, side, size).map_err(failed);
            let agree = s.p1 == hull(Side::E1)? && s.p2 == hull(Side::E2)?;
            Ok(Outcome::ok(format!(
                "petals: {}\nsymbols: {word}\ncontinued fraction: {seq} = {value}\nP1: {}\nP2: {}\nKlein hulls agree: {agree}\n",
                s.petals.len(),
                line(&s.p1),
                line(&s.p2),
            )))
        }
        Format::Dot => Err(unsupported("sheath", format)),
    }
}

fn zeroseq(sequence: &str, format: Format) -> Run {
    let a = integers(sequence)?;
    let admissible = is_admissible(&a).map_err(failed)?;
    let zero = represents_zero(&a).map_err(failed)?;
    let vectors = if admissible { Some(vector_realization(&a).map_err(failed)?) } else { None };
    let triangulation = if zero { Some(triangulated_polygon(&a).map_err(failed)?) } else { None };
    let report = ZeroSeqReport { sequence: a, admissible, represents_zero: zero, vectors, triangulation };
    match format {
        Format::Json => Ok(Outcome::ok(json::zeroseq_to_json(&report))),
        Format::Svg => match (&report.vectors, &report.triangulation) {
            (Some(v), Some(t)) => Ok(Outcome::ok(svg::polygon_to_svg(v, t))),
            _ => Err(failed("sequence does not represent 0; no polygon to draw")),
        },
        Format::Text => {
            let mut out = format!("admissible: {admissible}\nrepresents zero: {zero}\n");
            if let Some(v) = &report.vectors {
                let vs: Vec<String> = v.iter().map(ToString::to_string).collect();
                writeln!(out, "vectors: {}", vs.join(" ")).unwrap();
            }
            if let Some(t) = &report.triangulation {
                let ts: Vec<String> = t.triangles.iter().map(|[l, m, r]| format!("(v{l},v{m},v{r})")).collect();
                writeln!(out, "triangles: {}", ts.join(" ")).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Format::Dot => Err(unsupported("zeroseq", format)),
    }
}
