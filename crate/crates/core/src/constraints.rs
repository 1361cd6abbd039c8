//! Parentally nested determinants, candidate pairs and nested determinant
//! expressions over the entries `σ_ij` of a covariance matrix.

use itertools::Itertools;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;
use crate::matrix::{determinant, SymbolicMatrix};
use crate::poly::{parse_rational, rational_string, Polynomial};

/// The minor `|Σ_{rows, cols}|`. Rows and columns keep the order given;
/// canonical minors use sorted multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorRef {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorRef {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        if rows.len() != cols.len() {
            return Err(Error::NonSquare {
                rows: rows.len(),
                cols: cols.len(),
            });
        }
        Ok(MinorRef { rows, cols })
    }

    /// Minor on sorted row and column multisets.
    pub fn canonical(mut rows: Vec<usize>, mut cols: Vec<usize>) -> Result<Self> {
        rows.sort_unstable();
        cols.sort_unstable();
        MinorRef::new(rows, cols)
    }

    pub fn expand(&self) -> Result<Polynomial> {
        sigma_minor(&self.rows, &self.cols)
    }

    /// `|Σ_{12,34}|`-style rendering; labels are separated by commas when
    /// some label is longer than one character.
    pub fn render(&self, labels: &[String]) -> String {
        let sep = if labels.iter().any(|l| l.len() > 1) { "," } else { "" };
        let join = |s: &[usize]| s.iter().map(|&v| labels[v].as_str()).join(sep);
        format!("|Σ_{{{};{}}}|", join(&self.rows), join(&self.cols))
    }
}

/// Determinant of the σ-matrix with the given row and column sequences.
pub fn sigma_minor(rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
    let m: Vec<Vec<Polynomial>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| Polynomial::sigma(r, c)).collect())
        .collect();
    determinant(&m)
}

/// A determinant whose entries may themselves be determinants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestedDetExpr {
    Minor(MinorRef),
    Det(Vec<Vec<NestedDetExpr>>),
    Scalar(BigRational),
}

impl NestedDetExpr {
    pub fn minor(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        Ok(NestedDetExpr::Minor(MinorRef::new(rows, cols)?))
    }

    /// Nesting depth; a plain minor or scalar has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            NestedDetExpr::Det(m) => 1 + m.iter().flatten().map(|e| e.depth()).max().unwrap_or(0),
            _ => 0,
        }
    }

    pub fn expand(&self) -> Result<Polynomial> {
        match self {
            NestedDetExpr::Minor(m) => m.expand(),
            NestedDetExpr::Scalar(q) => Ok(Polynomial::constant(q.clone())),
            NestedDetExpr::Det(rows) => {
                let n = rows.len();
                if let Some(r) = rows.iter().find(|r| r.len() != n) {
                    return Err(Error::NonSquare { rows: n, cols: r.len() });
                }
                let entries = rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.expand()).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                determinant(&entries)
            }
        }
    }

    pub fn to_json(&self, labels: &[String]) -> Value {
        let names = |s: &[usize]| s.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>();
        match self {
            NestedDetExpr::Minor(m) => json!({"minor": {"rows": names(&m.rows), "cols": names(&m.cols)}}),
            NestedDetExpr::Scalar(q) => json!({"scalar": rational_string(q)}),
            NestedDetExpr::Det(rows) => json!({
                "det": rows
                    .iter()
                    .map(|r| r.iter().map(|e| e.to_json(labels)).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            }),
        }
    }

    /// Reads the JSON form; vertex labels may be strings or integers.
    pub fn from_json(value: &Value, labels: &[String]) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("nested determinant: {msg}"));
        let obj = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if obj.len() != 1 {
            return Err(bad("expected exactly one of `det`, `minor`, `scalar`"));
        }
        if let Some(m) = obj.get("minor") {
            let side = |key: &str| -> Result<Vec<usize>> {
                let list = m
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad(&format!("minor needs a `{key}` array")))?;
                list.iter()
                    .map(|v| {
                        let l = label_of(v).ok_or_else(|| bad("vertex labels must be strings or integers"))?;
                        labels.iter().position(|x| *x == l).ok_or(Error::UnknownVertex(l))
                    })
                    .collect()
            };
            return NestedDetExpr::minor(side("rows")?, side("cols")?);
        }
        if let Some(s) = obj.get("scalar") {
            let q = match s {
                Value::String(t) => parse_rational(t)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(bad("scalar must be a string `p/q` or an integer")),
            };
            return Ok(NestedDetExpr::Scalar(q));
        }
        if let Some(d) = obj.get("det") {
            let rows = d.as_array().ok_or_else(|| bad("det needs an array of rows"))?;
            let parsed = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("det rows must be arrays"))?
                        .iter()
                        .map(|e| NestedDetExpr::from_json(e, labels))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let n = parsed.len();
            if let Some(r) = parsed.iter().find(|r| r.len() != n) {
                return Err(Error::NonSquare { rows: n, cols: r.len() });
            }
            return Ok(NestedDetExpr::Det(parsed));
        }
        Err(bad("expected one of `det`, `minor`, `scalar`"))
    }

    pub fn from_json_str(text: &str, labels: &[String]) -> Result<Self> {
        NestedDetExpr::from_json(&serde_json::from_str(text)?, labels)
    }
}

fn label_of(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) if n.is_u64() => Some(n.to_string()),
        _ => None,
    }
}

/// All vertex labels mentioned in a JSON expression, numeric labels first in
/// numeric order, then the rest lexicographically.
pub fn expression_labels(value: &Value) -> Vec<String> {
    fn walk(v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(o) => {
                if let Some(m) = o.get("minor") {
                    for key in ["rows", "cols"] {
                        if let Some(list) = m.get(key).and_then(Value::as_array) {
                            out.extend(list.iter().filter_map(label_of));
                        }
                    }
                }
                if let Some(d) = o.get("det") {
                    walk(d, out);
                }
            }
            Value::Array(a) => a.iter().for_each(|e| walk(e, out)),
            _ => {}
        }
    }
    let mut out = Vec::new();
    walk(value, &mut out);
    out.sort_by(|a, b| match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => std::cmp::Ordering::Less,
        (Err(_), Ok(_)) => std::cmp::Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    });
    out.dedup();
    out
}

/// Where a constraint came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstraintSource {
    /// Maximal minor of `F_{i,J}` on the listed rows of `F`.
    Parental {
        i: usize,
        j: Vec<usize>,
        rows: Vec<usize>,
    },
    Explicit,
}

/// A nested determinant together with its expansion; `expanded` always
/// equals `expr.expand()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintRecord {
    pub source: ConstraintSource,
    pub expr: NestedDetExpr,
    pub expanded: Polynomial,
}

impl ConstraintRecord {
    pub fn explicit(expr: NestedDetExpr) -> Result<Self> {
        let expanded = expr.expand()?;
        Ok(ConstraintRecord {
            source: ConstraintSource::Explicit,
            expr,
            expanded,
        })
    }

    pub fn to_json(&self, g: &MixedGraph) -> Value {
        let names = |s: &[usize]| s.iter().map(|&v| g.label(v).to_string()).collect::<Vec<_>>();
        let source = match &self.source {
            ConstraintSource::Parental { i, j, rows } => json!({
                "kind": "parental",
                "i": g.label(*i),
                "J": names(j),
                "rows": names(rows),
            }),
            ConstraintSource::Explicit => json!({"kind": "explicit"}),
        };
        json!({
            "source": source,
            "expr": self.expr.to_json(g.labels()),
            "expanded": self.expanded.render(g.labels()),
        })
    }
}

fn check_vertex(g: &MixedGraph, v: usize) -> Result<()> {
    if v < g.len() {
        Ok(())
    } else {
        Err(Error::UnknownVertex(format!("#{v}")))
    }
}

/// The minor `|Σ_{pa(r)⊎{r}, pa(r)⊎{c}}|` with `r` and `c` in matching
/// last positions.
pub fn parental_entry(g: &MixedGraph, r: usize, c: usize) -> MinorRef {
    let mut rows = g.parents(r).to_vec();
    let mut cols = rows.clone();
    rows.push(r);
    cols.push(c);
    MinorRef { rows, cols }
}

/// Row and column index multisets of `F_{i,J}`, both sorted.
pub fn parental_indices(g: &MixedGraph, i: usize, j: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    check_vertex(g, i)?;
    for &v in j {
        check_vertex(g, v)?;
    }
    let mut rows: Vec<usize> = g.parents(i).iter().chain(j).copied().collect();
    rows.sort_unstable();
    let mut cols: Vec<usize> = g.parents(i).iter().copied().chain([i]).collect();
    cols.sort_unstable();
    Ok((rows, cols))
}

/// `F_{i,J}` with entries expanded to σ-polynomials. Rows are indexed by
/// the multiset `pa(i) ⊎ J` and columns by `pa(i) ∪ {i}`.
pub fn parental_matrix(g: &MixedGraph, i: usize, j: &[usize]) -> Result<SymbolicMatrix> {
    let (rows, cols) = parental_indices(g, i, j)?;
    let entries = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| parental_entry(g, r, c).expand()).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    SymbolicMatrix::new(rows, cols, entries)
}

/// `F_{i,J}` as a nested expression of leaf minors.
pub fn parental_expr(g: &MixedGraph, i: usize, j: &[usize]) -> Result<NestedDetExpr> {
    let (rows, cols) = parental_indices(g, i, j)?;
    Ok(NestedDetExpr::Det(
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| NestedDetExpr::Minor(parental_entry(g, r, c)))
                    .collect()
            })
            .collect(),
    ))
}

/// The single parentally nested determinant of `(i, {j})`.
pub fn f_ij(g: &MixedGraph, i: usize, j: usize) -> Result<Polynomial> {
    parental_matrix(g, i, &[j])?.determinant()
}

/// All maximal minors of `F_{i,J}`, row subsets in lexicographic order.
/// Identically zero minors are kept when `keep_zero` is set.
pub fn parental_determinants(g: &MixedGraph, i: usize, j: &[usize], keep_zero: bool) -> Result<Vec<ConstraintRecord>> {
    let f = parental_matrix(g, i, j)?;
    let k = f.ncols();
    let mut out = Vec::new();
    for pick in (0..f.nrows()).combinations(k) {
        let entries: Vec<Vec<Polynomial>> = pick.iter().map(|&r| f.entries[r].clone()).collect();
        let expanded = determinant(&entries)?;
        if expanded.is_zero() && !keep_zero {
            continue;
        }
        let expr = NestedDetExpr::Det(
            pick.iter()
                .map(|&r| {
                    f.cols
                        .iter()
                        .map(|&c| NestedDetExpr::Minor(parental_entry(g, f.rows[r], c)))
                        .collect()
                })
                .collect(),
        );
        out.push(ConstraintRecord {
            source: ConstraintSource::Parental {
                i,
                j: {
                    let mut s = j.to_vec();
                    s.sort_unstable();
                    s
                },
                rows: pick.iter().map(|&r| f.rows[r]).collect(),
            },
            expr,
            expanded,
        });
    }
    Ok(out)
}

/// A vertex `i` with the set `J` of vertices whose parentally nested
/// determinants vanish on the model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePair {
    pub i: usize,
    pub j: Vec<usize>,
}

/// Pairs `(i, J)` with `pa(i) ∩ sib(i) = ∅`, all parents of `i` ancestral
/// and `J` the ancestral vertices outside `pa(i) ∪ sib(i) ∪ {i}`; pairs
/// with empty `J` are omitted.
pub fn candidate_pairs(g: &MixedGraph) -> Result<Vec<CandidatePair>> {
    let ancestral = (0..g.len())
        .map(|v| g.is_ancestral_vertex(v))
        .collect::<Result<Vec<bool>>>()?;
    let mut out = Vec::new();
    for i in 0..g.len() {
        let (pa, sib) = (g.parents(i), g.siblings(i));
        if pa.iter().any(|p| sib.contains(p)) || !pa.iter().all(|&p| ancestral[p]) {
            continue;
        }
        let j: Vec<usize> = (0..g.len())
            .filter(|&v| v != i && ancestral[v] && !pa.contains(&v) && !sib.contains(&v))
            .collect();
        if !j.is_empty() {
            out.push(CandidatePair { i, j });
        }
    }
    Ok(out)
}

/// Checks that `g` is globally identifiable, declared in a topological
/// order, and that every vertex but the last is ancestral.
pub fn check_theorem_hypotheses(g: &MixedGraph) -> Result<()> {
    g.require_acyclic()?;
    if let Some((a, b)) = g.directed_edges().find(|&(a, b)| a > b) {
        return Err(Error::Hypothesis {
            vertex: g.label(b).to_string(),
            reason: format!(
                "vertices are not declared in topological order (edge {} -> {})",
                g.label(a),
                g.label(b)
            ),
        });
    }
    if let Some(set) = g.identifiability_violation()? {
        let names = set.iter().map(|&v| g.label(v)).join(",");
        return Err(Error::Hypothesis {
            vertex: g.label(set[0]).to_string(),
            reason: format!(
                "not globally identifiable: subgraph on {{{names}}} has connected bidirected part and a unique sink"
            ),
        });
    }
    for v in 0..g.len().saturating_sub(1) {
        if !g.is_ancestral_vertex(v)? {
            return Err(Error::Hypothesis {
                vertex: g.label(v).to_string(),
                reason: "vertex is not ancestral".into(),
            });
        }
    }
    Ok(())
}

/// The constraint set whose common zeros cut out the model inside the
/// positive definite cone: for every `i`, all nonzero maximal minors of
/// `F_{i, [i-1] \ (pa(i) ∪ sib(i))}`.
pub fn theorem_constraint_set(g: &MixedGraph) -> Result<Vec<ConstraintRecord>> {
    check_theorem_hypotheses(g)?;
    let mut out = Vec::new();
    for i in 0..g.len() {
        let j: Vec<usize> = (0..i)
            .filter(|v| !g.parents(i).contains(v) && !g.siblings(i).contains(v))
            .collect();
        if j.is_empty() {
            continue;
        }
        out.extend(parental_determinants(g, i, &j, false)?);
    }
    Ok(out)
}
