//! Command line front end: reads JSON problem files, runs the basepoint
//! and linear series computations, and writes deterministic JSON reports.

pub mod format;

use std::io::Read;

use basepoints::baselocus::{get_basepoints_with_limit, strict_transform, DEFAULT_MAX_DEPTH};
use basepoints::linseries::{
    adjoint_series_with_limit, complete_series_with_limit, kernel_basis, monomial_basis,
    set_basepoints,
};
use basepoints::nslattice::{
    adjoint_class, arithmetic_genus, class_of_series, degree_of_surface, intersect, sectional_genus,
};
use basepoints::{BasepointTree, BasisSpec, Error, LinearSeries, Node, Poly};
use clap::{Parser, Subcommand};
use serde::Serialize;

use format::{
    class_to_json, poly_to_string, series_to_json, to_json_text, tower_to_json, tree_from_json,
    tree_to_json, ClassJson, ExtensionJson, Problem, ProblemJson, TreeJson,
};

#[derive(Parser, Debug)]
#[command(
    name = "basepoints",
    version,
    about = "Basepoints and linear series of plane curves"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute the basepoint tree of a series.
    Basepoints {
        /// Problem file, inline JSON, or `-` for stdin.
        input: String,
        /// Maximum number of successive blowups.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Draw the tree on stderr.
        #[arg(long)]
        pretty: bool,
    },
    /// Impose a basepoint tree on a monomial basis.
    Series {
        /// Tree file as written by `basepoints`, inline JSON, or `-`.
        tree: String,
        /// `deg:d` or `bideg:a,b`.
        #[arg(long)]
        basis: BasisSpec,
        /// Maximum number of successive blowups.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
        /// Draw the tree on stderr.
        #[arg(long)]
        pretty: bool,
    },
    /// Degree, genera, h0 and adjoint class of the surface of a series.
    Invariants {
        input: String,
        #[arg(long)]
        basis: Option<BasisSpec>,
        /// Maximum number of successive blowups.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// All polynomials of the basis with the basepoints of the series.
    Complete {
        input: String,
        #[arg(long)]
        basis: Option<BasisSpec>,
        /// Maximum number of successive blowups.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// The adjoint series of a planar series.
    Adjoint {
        input: String,
        #[arg(long)]
        basis: Option<BasisSpec>,
        /// Maximum number of successive blowups.
        #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
        max_depth: usize,
    },
    /// Strict transform along the `sequence` given in the problem file.
    StrictTransform { input: String },
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::InvalidInput(_)
        | Error::InvalidExtension(_)
        | Error::DependentGenerators
        | Error::BasisMismatch
        | Error::FieldMismatch => EXIT_INPUT,
        Error::NonConstantGcd | Error::NoAdjoint(_) | Error::NotABasepoint => EXIT_PRECONDITION,
        Error::RecursionLimitExceeded(_)
        | Error::Invariant(_)
        | Error::DivisionByZero
        | Error::ConjugationUnavailable(_)
        | Error::NotDivisible(_) => EXIT_INTERNAL,
    }
}

enum Failure {
    Input(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Lib(e)
    }
}

struct Output {
    stdout: String,
    stderr: String,
}

/// Runs the tool on `args`, including the program name.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Outcome {
            code: EXIT_OK,
            stdout: out.stdout,
            stderr: out.stderr,
        },
        Err(Failure::Input(msg)) => Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Lib(e)) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn read_source(arg: &str) -> Result<String, Failure> {
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("reading {arg}: {e}")))
}

fn read_json<T: serde::de::DeserializeOwned>(arg: &str) -> Result<T, Failure> {
    let text = read_source(arg)?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn read_problem(arg: &str) -> Result<Problem, Failure> {
    Ok(Problem::from_json(&read_json::<ProblemJson>(arg)?)?)
}

fn dispatch(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Basepoints {
            input,
            max_depth,
            pretty,
        } => {
            let p = read_problem(&input)?;
            let tree = get_basepoints_with_limit(&p.series, &p.tower, max_depth)?;
            let stderr = if pretty {
                render_tree(&tree)
            } else {
                String::new()
            };
            Ok(Output {
                stdout: to_json_text(&tree_to_json(&tree, &p.variables)),
                stderr,
            })
        }
        Command::Series {
            tree,
            basis,
            max_depth,
            pretty,
        } => {
            let doc: TreeJson = read_json(&tree)?;
            let tree = tree_from_json(&doc)?;
            tree.check_depth(max_depth)?;
            let stderr = if pretty {
                render_tree(&tree)
            } else {
                String::new()
            };
            let report = series_report(&tree, basis, &doc.variables)?;
            Ok(Output {
                stdout: to_json_text(&report),
                stderr,
            })
        }
        Command::Invariants {
            input,
            basis,
            max_depth,
        } => {
            let p = read_problem(&input)?;
            let report =
                invariants_report(&p, basis.unwrap_or_else(|| p.basis_or_default()), max_depth)?;
            Ok(Output {
                stdout: to_json_text(&report),
                stderr: String::new(),
            })
        }
        Command::Complete {
            input,
            basis,
            max_depth,
        } => {
            let p = read_problem(&input)?;
            let spec = basis.unwrap_or_else(|| p.basis_or_default());
            let c = complete_series_with_limit(&p.linear_series()?, spec, max_depth)?;
            Ok(series_output(&c, &p.variables))
        }
        Command::Adjoint {
            input,
            basis,
            max_depth,
        } => {
            let p = read_problem(&input)?;
            let d = match basis.unwrap_or_else(|| p.basis_or_default()) {
                BasisSpec::Degree(d) => d,
                b @ BasisSpec::Bidegree(..) => {
                    return Err(Failure::Input(format!(
                        "adjoint needs a total degree basis, got {b}"
                    )))
                }
            };
            let a = adjoint_series_with_limit(&p.linear_series()?, d, max_depth)?;
            Ok(series_output(&a, &p.variables))
        }
        Command::StrictTransform { input } => {
            let p = read_problem(&input)?;
            let st = strict_transform(&p.series, &p.sequence)?;
            let doc = series_to_json(&st, &p.tower, &p.variables);
            Ok(Output {
                stdout: to_json_text(&doc),
                stderr: String::new(),
            })
        }
    }
}

fn series_output(s: &LinearSeries, vars: &[String; 2]) -> Output {
    Output {
        stdout: to_json_text(&series_to_json(s.gens(), s.tower(), vars)),
        stderr: String::new(),
    }
}

#[derive(Serialize)]
struct RowJson {
    node: usize,
    a: u32,
    b: u32,
}

#[derive(Serialize)]
struct SeriesReport {
    tower: Vec<ExtensionJson>,
    variables: [String; 2],
    basis: String,
    monomials: Vec<String>,
    rows: Vec<RowJson>,
    matrix: Vec<Vec<String>>,
    kernel: Vec<Vec<String>>,
    series: Vec<String>,
}

fn strings<T: ToString>(rows: &[Vec<T>]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| r.iter().map(T::to_string).collect())
        .collect()
}

fn series_report(
    tree: &BasepointTree,
    basis: BasisSpec,
    vars: &[String; 2],
) -> Result<SeriesReport, Failure> {
    let g = monomial_basis(basis);
    let m = set_basepoints(tree, &g);
    let kernel = kernel_basis(&m);
    let series: Vec<Poly> = kernel
        .iter()
        .map(|k| {
            k.iter()
                .zip(g.gens())
                .fold(Poly::zero(), |acc, (c, p)| &acc + &p.scale(c))
        })
        .collect();
    Ok(SeriesReport {
        tower: tower_to_json(&tree.tower),
        variables: vars.clone(),
        basis: basis.to_string(),
        monomials: g.gens().iter().map(|p| poly_to_string(p, vars)).collect(),
        rows: m
            .tags
            .iter()
            .map(|t| RowJson {
                node: t.node,
                a: t.a,
                b: t.b,
            })
            .collect(),
        matrix: strings(&m.rows),
        kernel: strings(&kernel),
        series: series.iter().map(|p| poly_to_string(p, vars)).collect(),
    })
}

#[derive(Serialize)]
struct InvariantsReport {
    tree: TreeJson,
    basis: String,
    h: ClassJson,
    k: ClassJson,
    degree: i64,
    h_dot_k: i64,
    sectional_genus: i64,
    h0: usize,
    arithmetic_genus: i64,
    adjoint_class: ClassJson,
    /// Pairing of exceptional classes under complex conjugation, if known.
    involution: Option<Vec<usize>>,
}

fn invariants_report(
    p: &Problem,
    basis: BasisSpec,
    max_depth: usize,
) -> Result<InvariantsReport, Failure> {
    let f = p.linear_series()?;
    let tree = get_basepoints_with_limit(f.gens(), f.tower(), max_depth)?;
    let ctx = class_of_series(&tree, basis);
    let h0 = complete_series_with_limit(&f, basis, max_depth)?.len();
    Ok(InvariantsReport {
        tree: tree_to_json(&tree, &p.variables),
        basis: basis.to_string(),
        h: class_to_json(&ctx.h),
        k: class_to_json(&ctx.k),
        degree: degree_of_surface(&ctx),
        h_dot_k: intersect(&ctx.h, &ctx.k)?,
        sectional_genus: sectional_genus(&ctx)?,
        h0,
        arithmetic_genus: arithmetic_genus(&ctx, h0 as i64)?,
        adjoint_class: class_to_json(&adjoint_class(&ctx)),
        involution: ctx.involution.clone(),
    })
}

fn describe_node(n: &Node) -> String {
    let seq: Vec<String> = n
        .sequence
        .iter()
        .map(|s| format!("({:?}, {})", s.point, s.chart.label()))
        .collect();
    format!("<({}), {:?}, {}>", seq.join(", "), n.point, n.mult)
}

/// The tree as indented arrows, one node per line.
pub fn render_tree(tree: &BasepointTree) -> String {
    fn go(n: &Node, depth: usize, out: &mut String) {
        out.push_str(&"    ".repeat(depth));
        out.push_str("-> ");
        out.push_str(&describe_node(n));
        out.push('\n');
        for c in n.children_t.iter().chain(&n.children_s) {
            go(c, depth + 1, out);
        }
    }
    let mut out = String::new();
    if tree.roots.is_empty() {
        out.push_str("-> (no basepoints)\n");
    }
    for r in &tree.roots {
        go(r, 0, &mut out);
    }
    out
}
