//! Command-line front end. [`run_command`] parses arguments, runs one
//! subcommand and returns the exit code together with the rendered report.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::{json, Map, Value};

use crate::constraints::{
    candidate_pairs, check_theorem_hypotheses, expression_labels, parental_determinants, theorem_constraint_set,
    NestedDetExpr,
};
use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::matrix::RationalMatrix;
use crate::model::{restricted_covariance, symbolic_covariance};
use crate::poly::{parse_rational, rational_string, Polynomial, DEFAULT_PRIME};
use crate::separation::{generic_rank, is_restricted_trek_separated, min_restricted_cut, SeparationCertificate};
use crate::verifier::{
    draw_sample, fit_parameters, graph_sha256, membership_check, vanishes_numerically_with, vanishes_symbolically,
    NumericCheck, SampleSpec, DEFAULT_TRIALS,
};

/// Largest graph for which `survey` enumerates every `(P, Q)`.
pub const SURVEY_VERTEX_LIMIT: usize = 5;

#[derive(Debug, Parser)]
#[command(
    name = "trekdet",
    version,
    about = "Trek separation and nested determinant constraints for mixed graphs"
)]
pub struct CommandRequest {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a graph and report its structural predicates.
    Validate { graph: PathBuf },
    /// Minimum trek separation certificate for `(A, B)`.
    Tsep {
        graph: PathBuf,
        #[command(flatten)]
        sets: PairSets,
    },
    /// Minimum restricted trek separation certificate, or `--check` a certificate.
    Rtsep {
        graph: PathBuf,
        #[command(flatten)]
        sets: OptionalPairSets,
        #[command(flatten)]
        restriction: Restriction,
        /// Certificate JSON to re-verify instead of computing one.
        #[arg(long)]
        check: Option<PathBuf>,
    },
    /// Generic rank of `Σ^{(P,Q)}_{A,B}`.
    Rank {
        graph: PathBuf,
        #[command(flatten)]
        sets: PairSets,
        #[command(flatten)]
        restriction: Restriction,
    },
    /// Symbolic (restricted) covariance matrix in canonical strings.
    Sigma {
        graph: PathBuf,
        #[command(flatten)]
        restriction: Restriction,
    },
    /// Candidate pairs with their nested determinants, and the model-defining constraint set.
    Constraints { graph: PathBuf },
    /// Expand a nested determinant JSON expression into a σ-polynomial.
    Expand {
        expr: PathBuf,
        /// Graph supplying vertex labels; otherwise labels come from the expression.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Check that a polynomial or expression vanishes on the model of a graph.
    Verify {
        graph: PathBuf,
        /// Polynomial in canonical string format.
        #[arg(long, conflicts_with = "expr", required_unless_present = "expr")]
        poly: Option<PathBuf>,
        /// Nested determinant JSON expression.
        #[arg(long)]
        expr: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Draw an exact model covariance matrix.
    Sample {
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Observed vertices, in output order.
        #[arg(long)]
        observed: Option<String>,
    },
    /// Decide model membership of a covariance matrix and fit parameters.
    Member {
        graph: PathBuf,
        /// JSON file with a `sigma` matrix of `p/q` strings, as written by `sample`.
        #[arg(long)]
        sigma: PathBuf,
    },
    /// Enumerate candidate pairs and rank-deficient restricted separations as JSON lines.
    Survey {
        graph: PathBuf,
        /// Largest `|A| = |B|` considered.
        #[arg(long, default_value_t = 2)]
        max_size: usize,
        /// Also emit pairs whose cut equals `|A|`.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        restriction: Restriction,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct PairSets {
    /// Comma-separated labels; `-` is the empty set.
    #[arg(long = "A")]
    pub a: String,
    #[arg(long = "B")]
    pub b: String,
}

#[derive(Debug, Args)]
pub struct OptionalPairSets {
    #[arg(long = "A", required_unless_present = "check")]
    pub a: Option<String>,
    #[arg(long = "B", required_unless_present = "check")]
    pub b: Option<String>,
}

#[derive(Debug, Args)]
pub struct Restriction {
    /// Left restriction set; all vertices when omitted.
    #[arg(long = "P")]
    pub p: Option<String>,
    /// Right restriction set; all vertices when omitted.
    #[arg(long = "Q")]
    pub q: Option<String>,
}

#[derive(Debug, Args)]
pub struct NumericArgs {
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Evaluate in a prime field; `default` picks 2^61 - 1.
    #[arg(long)]
    pub modulus: Option<String>,
    /// Observed vertices; σ indices refer to positions in this list.
    #[arg(long)]
    pub observed: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
}

/// Exit code and rendered streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line; `args[0]` is the program name.
pub fn run_command<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let req = match CommandRequest::try_parse_from(args) {
        Ok(r) => r,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => CommandOutcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => CommandOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&req) {
        Ok(text) => match &req.output {
            Some(path) => match fs::write(path, &text) {
                Ok(()) => CommandOutcome {
                    code: 0,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => failure(&Error::Io(e)),
            },
            None => CommandOutcome {
                code: 0,
                stdout: text,
                stderr: String::new(),
            },
        },
        Err(e) => failure(&e),
    }
}

fn failure(e: &Error) -> CommandOutcome {
    CommandOutcome {
        code: 1,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<MixedGraph> {
    MixedGraph::parse(&read(path)?)
}

/// Parses `a,b,c`; `-` is the empty set.
pub fn parse_vertex_set(g: &MixedGraph, text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text == "-" {
        return Ok(Vec::new());
    }
    let labels: Vec<&str> = text.split(',').map(str::trim).collect();
    if labels.iter().any(|l| l.is_empty()) {
        return Err(Error::InvalidArgument(format!("malformed vertex set `{text}`")));
    }
    g.vertex_set(&labels)
}

fn restriction_sets(g: &MixedGraph, r: &Restriction) -> Result<(Vec<usize>, Vec<usize>)> {
    let side = |s: &Option<String>| match s {
        Some(t) => parse_vertex_set(g, t),
        None => Ok(g.all_vertices()),
    };
    Ok((side(&r.p)?, side(&r.q)?))
}

fn names(g: &MixedGraph, set: &[usize]) -> Vec<String> {
    set.iter().map(|&v| g.label(v).to_string()).collect()
}

/// Common header of every report.
fn report(g: Option<&MixedGraph>, seed: u64, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("command".into(), json!(command));
    m.insert("graph_sha256".into(), json!(g.map(graph_sha256)));
    m.insert("seed".into(), json!(seed));
    m
}

fn render(m: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("report serializes");
    s.push('\n');
    s
}

fn matrix_json(m: &RationalMatrix) -> Value {
    json!(m
        .rows()
        .iter()
        .map(|r| r.iter().map(rational_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn execute(req: &CommandRequest) -> Result<String> {
    match &req.command {
        Command::Validate { graph } => validate(&load_graph(graph)?),
        Command::Tsep { graph, sets } => {
            let g = load_graph(graph)?;
            let (a, b) = (parse_vertex_set(&g, &sets.a)?, parse_vertex_set(&g, &sets.b)?);
            let all = g.all_vertices();
            separation_report(&g, "tsep", &a, &b, &all, &all)
        }
        Command::Rtsep {
            graph,
            sets,
            restriction,
            check,
        } => {
            let g = load_graph(graph)?;
            if let Some(path) = check {
                let value: Value = serde_json::from_str(&read(path)?)?;
                // A full `tsep`/`rtsep` report is accepted as well as a bare certificate.
                let value = value.get("certificate").cloned().unwrap_or(value);
                let cert = SeparationCertificate::from_json(&value, &g)?;
                let separated =
                    is_restricted_trek_separated(&g, &cert.a, &cert.b, &cert.s_l, &cert.s_r, &cert.p, &cert.q)?;
                let minimal = min_restricted_cut(&g, &cert.a, &cert.b, &cert.p, &cert.q)?.size == cert.size;
                let mut m = report(Some(&g), 0, "rtsep");
                m.insert("certificate".into(), cert.to_json(&g));
                m.insert("separates".into(), json!(separated));
                m.insert(
                    "size_matches".into(),
                    json!(cert.size == cert.s_l.len() + cert.s_r.len()),
                );
                m.insert("minimum".into(), json!(minimal));
                m.insert("valid".into(), json!(separated && cert.recheck(&g)? && minimal));
                return Ok(render(m));
            }
            let (a, b) = match (&sets.a, &sets.b) {
                (Some(a), Some(b)) => (parse_vertex_set(&g, a)?, parse_vertex_set(&g, b)?),
                _ => return Err(Error::InvalidArgument("--A and --B are required".into())),
            };
            let (p, q) = restriction_sets(&g, restriction)?;
            separation_report(&g, "rtsep", &a, &b, &p, &q)
        }
        Command::Rank {
            graph,
            sets,
            restriction,
        } => {
            let g = load_graph(graph)?;
            let (a, b) = (parse_vertex_set(&g, &sets.a)?, parse_vertex_set(&g, &sets.b)?);
            let (p, q) = restriction_sets(&g, restriction)?;
            let mut m = report(Some(&g), 0, "rank");
            m.insert("A".into(), json!(names(&g, &a)));
            m.insert("B".into(), json!(names(&g, &b)));
            m.insert("P".into(), json!(names(&g, &p)));
            m.insert("Q".into(), json!(names(&g, &q)));
            m.insert("rank".into(), json!(generic_rank(&g, &a, &b, &p, &q)?));
            Ok(render(m))
        }
        Command::Sigma { graph, restriction } => {
            let g = load_graph(graph)?;
            let restricted = restriction.p.is_some() || restriction.q.is_some();
            let s = if restricted {
                let (p, q) = restriction_sets(&g, restriction)?;
                restricted_covariance(&g, &p, &q)?
            } else {
                symbolic_covariance(&g)?
            };
            let mut m = report(Some(&g), 0, "sigma");
            m.insert("rows".into(), json!(names(&g, &s.rows)));
            m.insert("cols".into(), json!(names(&g, &s.cols)));
            m.insert(
                "entries".into(),
                json!(s
                    .entries
                    .iter()
                    .map(|r| r.iter().map(|p| p.render(g.labels())).collect::<Vec<_>>())
                    .collect::<Vec<_>>()),
            );
            Ok(render(m))
        }
        Command::Constraints { graph } => constraints(&load_graph(graph)?),
        Command::Expand { expr, graph } => {
            let value: Value = serde_json::from_str(&read(expr)?)?;
            let g = graph.as_deref().map(load_graph).transpose()?;
            let labels = match &g {
                Some(g) => g.labels().to_vec(),
                None => expression_labels(&value),
            };
            let e = NestedDetExpr::from_json(&value, &labels)?;
            let f = e.expand()?;
            let mut m = report(g.as_ref(), 0, "expand");
            m.insert("labels".into(), json!(labels));
            m.insert("depth".into(), json!(e.depth()));
            m.insert("degree".into(), json!(f.degree()));
            m.insert("terms".into(), json!(f.len()));
            m.insert("polynomial".into(), json!(f.render(&labels)));
            Ok(render(m))
        }
        Command::Verify {
            graph,
            poly,
            expr,
            mode,
            numeric,
        } => {
            let g = load_graph(graph)?;
            let f = match (poly, expr) {
                (Some(p), _) => Polynomial::parse(read(p)?.trim(), g.labels())?,
                (None, Some(e)) => NestedDetExpr::from_json_str(&read(e)?, g.labels())?.expand()?,
                (None, None) => return Err(Error::InvalidArgument("--poly or --expr is required".into())),
            };
            let observed = numeric
                .observed
                .as_deref()
                .map(|o| parse_vertex_set_ordered(&g, o))
                .transpose()?;
            let verdict = match mode {
                Mode::Symbolic => {
                    if observed.is_some() {
                        return Err(Error::InvalidArgument("--observed needs --mode numeric".into()));
                    }
                    vanishes_symbolically(&g, &f, numeric.seed)?
                }
                Mode::Numeric => {
                    let modulus = match numeric.modulus.as_deref() {
                        None => None,
                        Some("default") => Some(DEFAULT_PRIME),
                        Some(t) => Some(
                            t.parse::<u64>()
                                .map_err(|_| Error::InvalidArgument(format!("modulus `{t}` is not an integer")))?,
                        ),
                    };
                    let opts = NumericCheck {
                        trials: numeric.trials,
                        seed: numeric.seed,
                        modulus,
                        observed: observed.clone(),
                    };
                    vanishes_numerically_with(&g, &f, &opts)?
                }
            };
            let sigma_labels: Vec<String> = match &observed {
                Some(o) => names(&g, o),
                None => g.labels().to_vec(),
            };
            let mut m = report(Some(&g), numeric.seed, "verify");
            m.insert("mode".into(), json!(format!("{mode:?}").to_lowercase()));
            m.insert("polynomial".into(), json!(f.render(&sigma_labels)));
            m.insert("verdict".into(), verdict.to_json(&sigma_labels));
            Ok(render(m))
        }
        Command::Sample { graph, seed, observed } => {
            let g = load_graph(graph)?;
            let observed = observed
                .as_deref()
                .map(|o| parse_vertex_set_ordered(&g, o))
                .transpose()?;
            let spec = SampleSpec {
                observed: observed.clone(),
                ..SampleSpec::new(*seed)
            };
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(*seed);
            let s = draw_sample(&spec, &g, &mut rng)?;
            let sigma = s.observed(observed.as_deref());
            let kept = observed.unwrap_or_else(|| g.all_vertices());
            let mut m = report(Some(&g), *seed, "sample");
            m.insert("labels".into(), json!(names(&g, &kept)));
            m.insert("sigma".into(), matrix_json(&sigma));
            m.insert("lambda".into(), matrix_json(&s.parameters.lambda));
            m.insert("omega".into(), matrix_json(&s.parameters.omega));
            Ok(render(m))
        }
        Command::Member { graph, sigma } => {
            let g = load_graph(graph)?;
            let value: Value = serde_json::from_str(&read(sigma)?)?;
            let s = read_sigma(&g, &value)?;
            let member = membership_check(&g, &s)?;
            let mut m = report(Some(&g), 0, "member");
            m.insert("member".into(), json!(member));
            let fit = match fit_parameters(&g, &s) {
                Ok(w) => w.to_json(&g),
                Err(Error::NoKernelVector) => json!({"error": Error::NoKernelVector.to_string()}),
                Err(e) => return Err(e),
            };
            m.insert("fit".into(), fit);
            Ok(render(m))
        }
        Command::Survey {
            graph,
            max_size,
            all,
            restriction,
            seed,
        } => survey(&load_graph(graph)?, *max_size, *all, restriction, *seed),
    }
}

/// Like [`parse_vertex_set`] but keeps the given order and rejects repeats.
fn parse_vertex_set_ordered(g: &MixedGraph, text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text == "-" {
        return Ok(Vec::new());
    }
    let set = text
        .split(',')
        .map(|l| g.vertex(l.trim()))
        .collect::<Result<Vec<usize>>>()?;
    if !set.iter().all_unique() {
        return Err(Error::InvalidArgument(format!("repeated vertex in `{text}`")));
    }
    Ok(set)
}

fn read_sigma(g: &MixedGraph, value: &Value) -> Result<RationalMatrix> {
    let bad = |msg: &str| Error::InvalidArgument(format!("covariance file: {msg}"));
    if let Some(labels) = value.get("labels") {
        let ls: Vec<String> = serde_json::from_value(labels.clone())?;
        if ls != g.labels() {
            return Err(bad("labels differ from the graph's vertex order"));
        }
    }
    let rows = value
        .get("sigma")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing `sigma` matrix"))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| bad("rows must be arrays"))?
                .iter()
                .map(|e| match e {
                    Value::String(s) => parse_rational(s),
                    Value::Number(n) => parse_rational(&n.to_string()),
                    _ => Err(bad("entries must be `p/q` strings or integers")),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(parsed)
}

fn validate(g: &MixedGraph) -> Result<String> {
    let mut m = report(Some(g), 0, "validate");
    m.insert("vertices".into(), json!(g.labels()));
    m.insert("directed_edges".into(), json!(g.num_directed()));
    m.insert("bidirected_edges".into(), json!(g.num_bidirected()));
    m.insert("acyclic".into(), json!(g.is_acyclic()));
    if let Err(Error::Cyclic { cycle }) = g.topological_order() {
        m.insert("cycle".into(), json!(cycle));
    }
    let ancestral = (0..g.len())
        .map(|v| g.is_ancestral_vertex(v))
        .collect::<Result<Vec<bool>>>()?;
    m.insert(
        "ancestral_vertices".into(),
        json!(names(g, &(0..g.len()).filter(|&v| ancestral[v]).collect::<Vec<_>>())),
    );
    let gi = if g.is_acyclic() && g.len() <= crate::graph::IDENTIFIABILITY_LIMIT {
        Some(g.is_globally_identifiable()?)
    } else {
        None
    };
    m.insert("globally_identifiable".into(), json!(gi));
    m.insert(
        "theorem_hypotheses".into(),
        match check_theorem_hypotheses(g) {
            Ok(()) => json!("ok"),
            Err(e) => json!(e.to_string()),
        },
    );
    Ok(render(m))
}

fn separation_report(g: &MixedGraph, cmd: &str, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<String> {
    let cert = min_restricted_cut(g, a, b, p, q)?;
    let mut m = report(Some(g), 0, cmd);
    m.insert("certificate".into(), cert.to_json(g));
    m.insert("rank".into(), json!(cert.size.min(a.len()).min(b.len())));
    Ok(render(m))
}

fn constraints(g: &MixedGraph) -> Result<String> {
    let mut pairs = Vec::new();
    for c in candidate_pairs(g)? {
        let dets = parental_determinants(g, c.i, &c.j, true)?;
        let mut seps = Vec::new();
        if g.is_acyclic() {
            for &j in &c.j {
                let pa = g.parents(c.i);
                let a: Vec<usize> = pa.iter().copied().chain([j]).collect();
                let b: Vec<usize> = pa.iter().copied().chain([c.i]).collect();
                let separated = is_restricted_trek_separated(g, &a, &b, &[], pa, &a, &g.all_vertices())?;
                seps.push(json!({"j": g.label(j), "separated_by_parents": separated}));
            }
        }
        pairs.push(json!({
            "i": g.label(c.i),
            "J": names(g, &c.j),
            "determinants": dets.iter().map(|d| d.to_json(g)).collect::<Vec<_>>(),
            "separations": seps,
        }));
    }
    let mut m = report(Some(g), 0, "constraints");
    m.insert("candidate_pairs".into(), json!(pairs));
    let theorem = match theorem_constraint_set(g) {
        Ok(set) => json!({"constraints": set.iter().map(|c| c.to_json(g)).collect::<Vec<_>>()}),
        Err(e @ Error::Hypothesis { .. }) | Err(e @ Error::Cyclic { .. }) => json!({"error": e.to_string()}),
        Err(e) => return Err(e),
    };
    m.insert("theorem".into(), theorem);
    Ok(render(m))
}

fn subsets(set: &[usize], k: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    set.iter().copied().combinations(k)
}

fn survey(g: &MixedGraph, max_size: usize, all: bool, restriction: &Restriction, seed: u64) -> Result<String> {
    g.require_acyclic()?;
    let fixed = restriction.p.is_some() || restriction.q.is_some();
    if !fixed && g.len() > SURVEY_VERTEX_LIMIT {
        return Err(Error::TooLarge {
            what: "survey over all (P, Q); pass --P/--Q",
            size: g.len(),
            limit: SURVEY_VERTEX_LIMIT,
        });
    }
    let mut out = String::new();
    let mut emit = |mut v: Map<String, Value>| {
        v.insert("graph_sha256".into(), json!(graph_sha256(g)));
        v.insert("seed".into(), json!(seed));
        v.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        out.push_str(&Value::Object(v).to_string());
        out.push('\n');
    };
    for c in candidate_pairs(g)? {
        let dets = parental_determinants(g, c.i, &c.j, true)?;
        let mut vanish = true;
        for d in &dets {
            vanish &= vanishes_symbolically(g, &d.expanded, seed)?.vanishes();
        }
        let mut m = Map::new();
        m.insert("kind".into(), json!("candidate"));
        m.insert("i".into(), json!(g.label(c.i)));
        m.insert("J".into(), json!(names(g, &c.j)));
        m.insert("determinants".into(), json!(dets.len()));
        m.insert("all_vanish".into(), json!(vanish));
        emit(m);
    }
    let restrictions: Vec<(Vec<usize>, Vec<usize>)> = if fixed {
        vec![restriction_sets(g, restriction)?]
    } else {
        let v = g.all_vertices();
        let nonempty: Vec<Vec<usize>> = (1..=v.len()).flat_map(|k| subsets(&v, k)).collect();
        nonempty
            .iter()
            .cartesian_product(&nonempty)
            .map(|(p, q)| (p.clone(), q.clone()))
            .collect()
    };
    for (p, q) in &restrictions {
        for k in 1..=max_size.min(p.len()).min(q.len()) {
            for a in subsets(p, k) {
                for b in subsets(q, k) {
                    let cert = min_restricted_cut(g, &a, &b, p, q)?;
                    if cert.size >= k && !all {
                        continue;
                    }
                    let mut m = Map::new();
                    m.insert("kind".into(), json!("separation"));
                    m.insert("certificate".into(), cert.to_json(g));
                    emit(m);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    fn write(dir: &Path, name: &str, text: &str) -> String {
        let p = dir.join(name);
        fs::write(&p, text).unwrap();
        p.to_string_lossy().into_owned()
    }

    fn run(args: &[&str]) -> CommandOutcome {
        run_command(std::iter::once("trekdet").chain(args.iter().copied()))
    }

    fn json_of(o: &CommandOutcome) -> Value {
        assert_eq!(o.code, 0, "{}", o.stderr);
        serde_json::from_str(&o.stdout).unwrap()
    }

    #[test]
    fn rtsep_verma_example() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "verma.g", gallery::VERMA);
        let o = run(&["rtsep", &g, "--A", "2,4", "--B", "2,3", "--P", "2,4", "--Q", "2,3,4"]);
        let j = json_of(&o);
        assert_eq!(j["certificate"]["size"], 1);
        assert_eq!(j["certificate"]["SL"], json!([]));
        assert_eq!(j["certificate"]["SR"], json!(["2"]));
        assert_eq!(j["tool_version"], env!("CARGO_PKG_VERSION"));
        let cert = write(dir.path(), "cert.json", &j["certificate"].to_string());
        let c = json_of(&run(&["rtsep", &g, "--check", &cert]));
        assert_eq!(c["valid"], true);
        let whole = write(dir.path(), "report.json", &o.stdout);
        assert_eq!(json_of(&run(&["rtsep", &g, "--check", &whole]))["valid"], true);
        let mut forged = j["certificate"].clone();
        forged["SR"] = json!([]);
        forged["size"] = json!(0);
        let forged = write(dir.path(), "forged.json", &forged.to_string());
        assert_eq!(json_of(&run(&["rtsep", &g, "--check", &forged]))["valid"], false);
    }

    #[test]
    fn verify_f_verma() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "verma.g", gallery::VERMA);
        let f = write(dir.path(), "f.txt", gallery::F_VERMA);
        let j = json_of(&run(&["verify", &g, "--poly", &f, "--mode", "symbolic"]));
        assert_eq!(j["verdict"]["status"], "vanishes_identically");
        let j = json_of(&run(&["verify", &g, "--poly", &f, "--mode", "numeric", "--seed", "3"]));
        assert_eq!(j["verdict"]["status"], "vanishes_probably");
        assert_eq!(j["seed"], 3);
    }

    #[test]
    fn sigma_of_edgeless_graph() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "empty3.g", "vertices: 1 2 3\n");
        let j = json_of(&run(&["sigma", &g]));
        assert_eq!(
            j["entries"],
            json!([["w11", "0", "0"], ["0", "w22", "0"], ["0", "0", "w33"]])
        );
    }

    #[test]
    fn exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "cyclic.g", gallery::CYCLIC);
        assert_eq!(run(&["frobnicate"]).code, 2);
        assert_eq!(run(&["tsep", &g]).code, 2);
        let o = run(&["tsep", &g, "--A", "1", "--B", "4"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("cycle"), "{}", o.stderr);
        assert_eq!(run(&["validate", "/nonexistent/graph"]).code, 1);
        assert_eq!(run(&["--help"]).code, 0);
    }

    #[test]
    fn sample_then_member() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "verma.g", gallery::VERMA);
        let a = run(&["sample", &g, "--seed", "5"]);
        let b = run(&["sample", &g, "--seed", "5"]);
        assert_eq!(a, b);
        let s = write(dir.path(), "s.json", &a.stdout);
        let j = json_of(&run(&["member", &g, "--sigma", &s]));
        assert_eq!(j["member"], true);
        assert_eq!(j["fit"]["reproduces"], true);
        let sample = json_of(&a);
        assert_eq!(j["fit"]["lambda"]["1,2"], sample["lambda"][0][1]);
    }

    #[test]
    fn expand_without_graph() {
        let dir = tempfile::tempdir().unwrap();
        let e = write(dir.path(), "e.json", gallery::VERMA_NESTED_SWAP);
        let j = json_of(&run(&["expand", &e]));
        assert_eq!(j["polynomial"], gallery::F_VERMA);
        assert_eq!(j["depth"], 1);
    }

    #[test]
    fn constraints_and_survey() {
        let dir = tempfile::tempdir().unwrap();
        let g = write(dir.path(), "verma.g", gallery::VERMA);
        let j = json_of(&run(&["constraints", &g]));
        let th = &j["theorem"]["constraints"];
        assert_eq!(th.as_array().unwrap().len(), 1);
        assert_eq!(th[0]["expanded"], gallery::F_VERMA);
        let pair = j["candidate_pairs"]
            .as_array()
            .unwrap()
            .iter()
            .find(|p| p["i"] == "4")
            .unwrap();
        assert!(pair["separations"]
            .as_array()
            .unwrap()
            .iter()
            .all(|s| s["separated_by_parents"] == true));
        let o = run(&["survey", &g, "--P", "2,4", "--Q", "2,3,4"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let lines: Vec<Value> = o.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert!(lines
            .iter()
            .any(|l| l["kind"] == "candidate" && l["all_vanish"] == true));
        assert!(lines.iter().any(|l| l["kind"] == "separation"
            && l["certificate"]["A"] == json!(["2", "4"])
            && l["certificate"]["B"] == json!(["2", "3"])));
    }
}
