//! The `lpa` command line: argument parsing, dispatch and reports.
//!
//! [`run_command`] does everything except touching the process, so tests
//! can drive it directly. Exit codes: 0 on success, 1 when the input is
//! well formed but rejected by the mathematics, 2 for usage and parse
//! errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{multiply, normalize_with_order, AlgebraElement};
use crate::chen::{act, solve_shift_equation, Obstruction, ShiftSolution};
use crate::error::Error;
use crate::graph::{EdgeId, FinPath, Graph, LinePointCertificate};
use crate::homology::{
    ext_dim, is_finitely_presented, resolution, uniserial_report, ExtDim, ExtRule,
    KernelGenerators,
};
use crate::lset::{l_analysis, l_set_enumerate, Cardinality};
use crate::omega::{OmegaPathSpec, PathKind};
use crate::textio::{
    format_chen, format_element, format_path, format_spec, parse_chen, parse_expr,
    parse_expr_raw, parse_graph, parse_path, parse_spec,
};

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;

/// Enumeration depth when neither `--max-len` nor the analysis fixes one.
const DEFAULT_MAX_LEN: usize = 6;

#[derive(Debug, Parser)]
#[command(name = "lpa", version, about = "Exact computation in Leavitt path algebras")]
struct Cli {
    /// Graph document in the `.lpa` format.
    #[arg(long, global = true, value_name = "FILE")]
    graph: Option<PathBuf>,
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Length bound for enumerations.
    #[arg(long, global = true, value_name = "N")]
    max_len: Option<usize>,
    /// Seed for the randomized reduction order of `normalize`.
    #[arg(long, global = true, value_name = "N")]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an expression.
    Normalize { expr: String },
    /// Product of two expressions.
    Mul { left: String, right: String },
    /// Action of an expression on a Chen module element.
    Act { expr: String, element: String },
    /// Dimension of Ext¹(V_[s], V_[t]).
    Ext { s: String, t: String },
    /// Projective presentation of V_[s].
    Resolve {
        s: String,
        /// Present through `α` ending at the base of the class.
        #[arg(long, value_name = "PATH")]
        alpha: Option<String>,
    },
    /// Solve (d - 1)X = t.
    SolveShift { d: String, t: String },
    /// The set L(d, t) of paths ending in the class of t.
    Lset { d: String, t: String },
    /// Line-point status of every vertex.
    LinePoints,
    /// Simple closed paths up to rotation.
    Cycles,
    /// Whether V_[s] is finitely presented.
    FpCheck { s: String },
    /// Existence of a uniserial module with composition factors V_[s].
    Uniserial {
        s: String,
        #[arg(long, default_value_t = 2)]
        length: usize,
    },
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Output {
        Output {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Output {
        Output {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Domain(e)
    }
}

/// Runs `lpa` on `argv`, where `argv[0]` is the program name.
pub fn run_command<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output::fail(2, text)
            } else {
                Output::ok(text)
            };
        }
    };
    let mut warnings = Vec::new();
    match run(&cli, &mut warnings) {
        Ok(stdout) => Output {
            code: 0,
            stdout,
            stderr: warnings.iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(Failure::Usage(msg)) => Output::fail(2, format!("error: {msg}\n")),
        Err(Failure::Domain(e @ Error::Parse { .. })) => {
            Output::fail(2, format!("parse error at {e}\n"))
        }
        Err(Failure::Domain(e)) => Output::fail(1, format!("error: {e}\n")),
    }
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: u32,
    command: &'a str,
    #[serde(flatten)]
    report: T,
}

fn render<T: Serialize>(cli: &Cli, command: &str, report: T, text: String) -> String {
    if cli.json {
        let envelope = Envelope {
            version: REPORT_VERSION,
            command,
            report,
        };
        let mut out = serde_json::to_string_pretty(&envelope).expect("reports serialize");
        out.push('\n');
        out
    } else {
        text
    }
}

fn load_graph(cli: &Cli) -> Result<Graph, Failure> {
    let path = cli
        .graph
        .as_ref()
        .ok_or_else(|| Failure::Usage("`--graph FILE` is required".into()))?;
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&src).map_err(|e| match e {
        Error::Parse {
            line,
            column,
            message,
        } => Failure::Usage(format!("{}:{line}:{column}: {message}", path.display())),
        other => Failure::Domain(other),
    })
}

/// An argument, or standard input when it is `-`.
fn input(arg: &str) -> Result<String, Failure> {
    if arg != "-" {
        return Ok(arg.to_string());
    }
    std::io::read_to_string(std::io::stdin())
        .map(|s| s.trim().to_string())
        .map_err(|e| Failure::Usage(format!("cannot read standard input: {e}")))
}

fn run(cli: &Cli, warnings: &mut Vec<String>) -> Result<String, Failure> {
    let g = load_graph(cli)?;
    let g = &g;
    match &cli.command {
        Command::Normalize { expr } => normalize_cmd(cli, g, &input(expr)?, warnings),
        Command::Mul { left, right } => {
            let a = expression(g, &input(left)?)?;
            let b = expression(g, &input(right)?)?;
            warnings.extend(a.1.iter().chain(&b.1).cloned());
            let product = multiply(g, &a.0, &b.0)?;
            Ok(element_report(cli, "mul", g, &product, warnings))
        }
        Command::Act { expr, element } => {
            let (a, parsed_warnings) = expression(g, &input(expr)?)?;
            warnings.extend(parsed_warnings);
            let t = parse_chen(g, &input(element)?)?;
            let result = act(g, &a, &t)?;
            let result_text = format_chen(g, &result);
            let text = format!("{result_text}\n");
            let report = ElementReport {
                result: result_text,
                terms: result.len(),
                warnings: warnings.clone(),
            };
            Ok(render(cli, "act", report, text))
        }
        Command::Ext { s, t } => ext_cmd(cli, g, &parse_spec(g, s)?, &parse_spec(g, t)?),
        Command::Resolve { s, alpha } => {
            let alpha = alpha.as_deref().map(|a| parse_path(g, a)).transpose()?;
            resolve_cmd(cli, g, &parse_spec(g, s)?, alpha.as_ref())
        }
        Command::SolveShift { d, t } => {
            solve_shift_cmd(cli, g, &parse_path(g, d)?, &input(t)?)
        }
        Command::Lset { d, t } => lset_cmd(cli, g, &parse_path(g, d)?, &parse_spec(g, t)?),
        Command::LinePoints => line_points_cmd(cli, g),
        Command::Cycles => cycles_cmd(cli, g),
        Command::FpCheck { s } => fp_check_cmd(cli, g, &parse_spec(g, s)?),
        Command::Uniserial { s, length } => {
            let report = uniserial_report(g, &parse_spec(g, s)?, *length)?;
            let text = format!(
                "{} (length {}, self-extension dimension {})\n",
                if report.exists { "exists" } else { "does not exist" },
                report.length,
                describe_dim(report.self_ext)
            );
            let json = UniserialJson {
                exists: report.exists,
                length: report.length,
                self_ext: report.self_ext,
            };
            Ok(render(cli, "uniserial", json, text))
        }
    }
}

fn expression(g: &Graph, src: &str) -> Result<(AlgebraElement, Vec<String>), Failure> {
    let parsed = parse_expr(g, src)?;
    Ok((parsed.element, parsed.warnings))
}

#[derive(Serialize)]
struct ElementReport {
    result: String,
    terms: usize,
    warnings: Vec<String>,
}

fn element_report(
    cli: &Cli,
    command: &str,
    g: &Graph,
    a: &AlgebraElement,
    warnings: &[String],
) -> String {
    let result = format_element(g, a);
    let text = format!("{result}\n");
    let report = ElementReport {
        result,
        terms: a.len(),
        warnings: warnings.to_vec(),
    };
    render(cli, command, report, text)
}

fn normalize_cmd(
    cli: &Cli,
    g: &Graph,
    src: &str,
    warnings: &mut Vec<String>,
) -> Result<String, Failure> {
    let (raw, parsed_warnings) = parse_expr_raw(g, src)?;
    warnings.extend(parsed_warnings);
    let element = match cli.seed {
        Some(seed) => {
            let mut rng = StdRng::seed_from_u64(seed);
            normalize_with_order(g, raw, |choices| rng.gen_range(0..choices.len()))
        }
        None => crate::algebra::normalize(g, raw),
    };
    Ok(element_report(cli, "normalize", g, &element, warnings))
}

fn describe_dim(d: ExtDim) -> String {
    match d {
        ExtDim::Zero => "0".into(),
        ExtDim::Finite(n) => n.to_string(),
        ExtDim::CountablyInfinite => "countably infinite".into(),
    }
}

fn edge_pair(g: &Graph, pair: Option<(EdgeId, EdgeId)>) -> Option<[String; 2]> {
    pair.map(|(e, f)| [g.edge_name(e).to_string(), g.edge_name(f).to_string()])
}

#[derive(Serialize)]
struct ExtJson {
    dim: ExtDim,
    rule: ExtRule,
    witnesses: Vec<String>,
    exit_witness: Option<[String; 2]>,
}

fn ext_cmd(cli: &Cli, g: &Graph, s: &OmegaPathSpec, t: &OmegaPathSpec) -> Result<String, Failure> {
    let report = ext_dim(g, s, t)?;
    let witnesses: Vec<String> = report.witnesses.iter().map(|w| format_spec(g, w)).collect();
    let exit_witness = edge_pair(g, report.exit_witness);
    let rule = serde_json::to_value(report.rule).expect("rule serializes");
    let mut text = format!(
        "dim Ext^1 = {} ({})\n",
        describe_dim(report.dim),
        rule.as_str().unwrap_or_default()
    );
    for w in &witnesses {
        let _ = writeln!(text, "  witness {w}");
    }
    if let Some([e, f]) = &exit_witness {
        let _ = writeln!(text, "  recurrent edge {e} exits through {f}");
    }
    let json = ExtJson {
        dim: report.dim,
        rule: report.rule,
        witnesses,
        exit_witness,
    };
    Ok(render(cli, "ext", json, text))
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum KernelJson {
    Trivial,
    Single { generator: String },
    Family {
        horizon: usize,
        infinite: bool,
        blocks: Vec<BlockJson>,
    },
}

#[derive(Serialize)]
struct BlockJson {
    index: usize,
    generators: Vec<[String; 2]>,
}

#[derive(Serialize)]
struct ResolveJson {
    module_type: PathKind,
    presentation_vertex: String,
    generator_path: String,
    kernel: KernelJson,
    finitely_presented: bool,
    projective: bool,
    projective_dimension: u8,
    branching_witness: Option<String>,
}

fn resolve_cmd(
    cli: &Cli,
    g: &Graph,
    s: &OmegaPathSpec,
    alpha: Option<&FinPath>,
) -> Result<String, Failure> {
    let r = resolution(g, s, alpha)?;
    let kernel = match &r.kernel {
        KernelGenerators::Trivial => KernelJson::Trivial,
        KernelGenerators::Single(x) => KernelJson::Single {
            generator: format_element(g, x),
        },
        KernelGenerators::Family {
            blocks,
            horizon,
            infinite,
        } => KernelJson::Family {
            horizon: *horizon,
            infinite: *infinite,
            blocks: blocks
                .iter()
                .map(|b| BlockJson {
                    index: b.index,
                    generators: b
                        .generators
                        .iter()
                        .map(|(e, x)| [g.edge_name(*e).to_string(), format_element(g, x)])
                        .collect(),
                })
                .collect(),
        },
    };
    let json = ResolveJson {
        module_type: r.module_type,
        presentation_vertex: g.vertex_name(r.presentation_vertex).to_string(),
        generator_path: format_spec(g, &r.generator_path),
        kernel,
        finitely_presented: r.finitely_presented,
        projective: r.projective,
        projective_dimension: r.projective_dimension,
        branching_witness: r.branching_witness.map(|v| g.vertex_name(v).to_string()),
    };
    let mut text = format!(
        "0 -> K -> L(E){} -> V[{}] -> 0\n",
        json.presentation_vertex, json.generator_path
    );
    match &json.kernel {
        KernelJson::Trivial => text.push_str("K = 0 (projective)\n"),
        KernelJson::Single { generator } => {
            let _ = writeln!(text, "K = L(E)({generator})");
        }
        KernelJson::Family {
            horizon,
            infinite,
            blocks,
        } => {
            let _ = writeln!(
                text,
                "K = sum of J_i, listed for i < {horizon}{}",
                if *infinite { ", infinitely many nonzero" } else { "" }
            );
            for b in blocks {
                for [f, x] in &b.generators {
                    let _ = writeln!(text, "  J_{} via {f}: {x}", b.index);
                }
            }
        }
    }
    let _ = writeln!(
        text,
        "finitely presented: {}; projective dimension {}",
        json.finitely_presented, json.projective_dimension
    );
    Ok(render(cli, "resolve", json, text))
}

#[derive(Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
enum ShiftJson {
    Solution { x: String },
    NoSolution { obstruction: ObstructionJson },
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ObstructionJson {
    DInfinity { coefficient: String },
    LayerSum { path: String, sum: String },
}

fn solve_shift_cmd(cli: &Cli, g: &Graph, d: &FinPath, t: &str) -> Result<String, Failure> {
    let t = parse_chen(g, t)?;
    let (json, text) = match solve_shift_equation(g, d, &t)? {
        ShiftSolution::Solution { x } => {
            let x = format_chen(g, &x);
            let text = format!("X = {x}\n");
            (ShiftJson::Solution { x }, text)
        }
        ShiftSolution::NoSolution { obstruction } => {
            let (o, text) = match obstruction {
                Obstruction::DInfinity { coefficient } => (
                    ObstructionJson::DInfinity {
                        coefficient: coefficient.to_string(),
                    },
                    format!("no solution: the d^inf coefficient is {coefficient}\n"),
                ),
                Obstruction::LayerSum { path, sum } => {
                    let path = format_spec(g, &path);
                    let text = format!("no solution: the layer sum at [{path}] is {sum}\n");
                    (
                        ObstructionJson::LayerSum {
                            path,
                            sum: sum.to_string(),
                        },
                        text,
                    )
                }
            };
            (ShiftJson::NoSolution { obstruction: o }, text)
        }
    };
    Ok(render(cli, "solve-shift", json, text))
}

#[derive(Serialize)]
struct LsetJson {
    cardinality: Cardinality,
    horizon: Option<usize>,
    max_len: Option<usize>,
    members: Vec<String>,
}

fn lset_cmd(cli: &Cli, g: &Graph, d: &FinPath, t: &OmegaPathSpec) -> Result<String, Failure> {
    let analysis = l_analysis(g, d, t)?;
    let (members, max_len) = if t.kind() == PathKind::Irrational {
        (Vec::new(), None)
    } else {
        let n = cli.max_len.or(analysis.horizon).unwrap_or(DEFAULT_MAX_LEN);
        let found = l_set_enumerate(g, d, t, n)?;
        (found.iter().map(|p| format_spec(g, p)).collect(), Some(n))
    };
    let mut text = match analysis.cardinality {
        Cardinality::Empty => "empty\n".to_string(),
        Cardinality::Finite(n) => format!("{n} element(s)\n"),
        Cardinality::CountablyInfinite => "countably infinite\n".to_string(),
    };
    if let Some(n) = max_len {
        let _ = writeln!(text, "members with prefix length <= {n}:");
    }
    for m in &members {
        let _ = writeln!(text, "  {m}");
    }
    let json = LsetJson {
        cardinality: analysis.cardinality,
        horizon: analysis.horizon,
        max_len,
        members,
    };
    Ok(render(cli, "lset", json, text))
}

#[derive(Serialize)]
struct VertexStatus {
    vertex: String,
    line_point: bool,
    cycle: Option<String>,
    branching: Option<String>,
}

#[derive(Serialize)]
struct LinePointsJson {
    vertices: Vec<VertexStatus>,
}

fn line_points_cmd(cli: &Cli, g: &Graph) -> Result<String, Failure> {
    let mut vertices = Vec::new();
    let mut text = String::new();
    for v in g.vertices() {
        let status = match g.is_line_point(v)? {
            LinePointCertificate::LinePoint => VertexStatus {
                vertex: g.vertex_name(v).to_string(),
                line_point: true,
                cycle: None,
                branching: None,
            },
            LinePointCertificate::NotLinePoint { cycle, branching } => VertexStatus {
                vertex: g.vertex_name(v).to_string(),
                line_point: false,
                cycle: cycle.map(|c| format_path(g, &c)),
                branching: branching.map(|b| g.vertex_name(b).to_string()),
            },
        };
        let mut line = format!(
            "{}: {}",
            status.vertex,
            if status.line_point { "line point" } else { "not a line point" }
        );
        if let Some(c) = &status.cycle {
            let _ = write!(line, "; reaches the cycle {c}");
        }
        if let Some(b) = &status.branching {
            let _ = write!(line, "; reaches the branching vertex {b}");
        }
        let _ = writeln!(text, "{line}");
        vertices.push(status);
    }
    Ok(render(cli, "line-points", LinePointsJson { vertices }, text))
}

#[derive(Serialize)]
struct CyclesJson {
    max_len: usize,
    cycles: Vec<String>,
}

fn cycles_cmd(cli: &Cli, g: &Graph) -> Result<String, Failure> {
    let max_len = cli.max_len.unwrap_or(g.vertex_count());
    let cycles: Vec<String> = g
        .simple_closed_paths(max_len)
        .into_iter()
        .filter(|c| c.canonical)
        .map(|c| format_path(g, &c.path))
        .collect();
    let mut text = String::new();
    for c in &cycles {
        let _ = writeln!(text, "{c}");
    }
    Ok(render(cli, "cycles", CyclesJson { max_len, cycles }, text))
}

#[derive(Serialize)]
struct FpJson {
    finitely_presented: bool,
    kernel_generator: Option<String>,
    branching_witness: Option<String>,
}

fn fp_check_cmd(cli: &Cli, g: &Graph, s: &OmegaPathSpec) -> Result<String, Failure> {
    let fp = is_finitely_presented(g, s)?;
    let json = FpJson {
        finitely_presented: fp.finitely_presented,
        kernel_generator: fp.kernel_generator.as_ref().map(|x| format_element(g, x)),
        branching_witness: fp.branching_witness.map(|v| g.vertex_name(v).to_string()),
    };
    let text = if json.finitely_presented {
        match &json.kernel_generator {
            Some(x) => format!("finitely presented; kernel generated by {x}\n"),
            None => "finitely presented; projective\n".to_string(),
        }
    } else {
        format!(
            "not finitely presented; branching at {}\n",
            json.branching_witness.as_deref().unwrap_or("?")
        )
    };
    Ok(render(cli, "fp-check", json, text))
}

#[derive(Serialize)]
struct UniserialJson {
    exists: bool,
    length: usize,
    self_ext: ExtDim,
}
