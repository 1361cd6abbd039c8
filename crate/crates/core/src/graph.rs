//! Mixed graphs `G = (V, D, B)` with directed and bidirected edges.
//!
//! Vertices are addressed by their position in the declared vertex order.
//! That order is the linear order used for every determinant built later
//! (row and column sorting, sign conventions), so it is never reshuffled.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest vertex count accepted by the exponential global-identifiability scan.
pub const IDENTIFIABILITY_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    directed: BTreeSet<(usize, usize)>,
    bidirected: BTreeSet<(usize, usize)>,
    parents: Vec<Vec<usize>>,
    children: Vec<Vec<usize>>,
    siblings: Vec<Vec<usize>>,
}

/// Parents, siblings and ancestors of one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relations {
    pub parents: Vec<usize>,
    pub siblings: Vec<usize>,
    /// Includes the vertex itself.
    pub ancestors: Vec<usize>,
}

impl MixedGraph {
    /// Builds a graph from labels and index-based edge lists.
    ///
    /// Bidirected pairs may be given in either orientation; duplicates collapse.
    pub fn from_edges<S: AsRef<str>>(
        labels: &[S],
        directed: &[(usize, usize)],
        bidirected: &[(usize, usize)],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("bad vertex label `{l}`")));
            }
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex label `{l}`")));
            }
        }
        let n = labels.len();
        let check = |v: usize| {
            if v < n {
                Ok(())
            } else {
                Err(Error::UnknownVertex(format!("#{v}")))
            }
        };
        let mut d = BTreeSet::new();
        for &(a, b) in directed {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(Error::SelfLoop(labels[a].clone()));
            }
            d.insert((a, b));
        }
        let mut bi = BTreeSet::new();
        for &(a, b) in bidirected {
            check(a)?;
            check(b)?;
            if a == b {
                return Err(Error::SelfLoop(labels[a].clone()));
            }
            bi.insert((a.min(b), a.max(b)));
        }
        let mut parents = vec![Vec::new(); n];
        let mut children = vec![Vec::new(); n];
        let mut siblings = vec![Vec::new(); n];
        for &(a, b) in &d {
            parents[b].push(a);
            children[a].push(b);
        }
        for &(a, b) in &bi {
            siblings[a].push(b);
            siblings[b].push(a);
        }
        for list in parents.iter_mut().chain(children.iter_mut()).chain(siblings.iter_mut()) {
            list.sort_unstable();
        }
        Ok(MixedGraph {
            labels,
            index,
            directed: d,
            bidirected: bi,
            parents,
            children,
            siblings,
        })
    }

    /// Parses the line-oriented graph format:
    ///
    /// ```text
    /// # Verma graph
    /// vertices: 1 2 3 4
    /// 1 -> 2
    /// 2 <-> 4
    /// ```
    pub fn parse(text: &str) -> Result<Self> {
        let mut labels: Option<Vec<String>> = None;
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut directed = Vec::new();
        let mut bidirected = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |message: String| Error::Parse { line: line_no, message };
            if let Some(rest) = line.strip_prefix("vertices:") {
                if labels.is_some() {
                    return Err(perr("second `vertices:` line".into()));
                }
                let mut ls = Vec::new();
                for tok in rest.split_whitespace() {
                    if !tok.chars().all(|c| c.is_ascii_alphanumeric()) {
                        return Err(perr(format!("vertex label `{tok}` is not alphanumeric")));
                    }
                    if index.insert(tok.to_string(), ls.len()).is_some() {
                        return Err(perr(format!("duplicate vertex label `{tok}`")));
                    }
                    ls.push(tok.to_string());
                }
                labels = Some(ls);
                continue;
            }
            if labels.is_none() {
                return Err(perr("edge before `vertices:` line".into()));
            }
            let (a, b, bi) = if let Some((a, b)) = line.split_once("<->") {
                (a, b, true)
            } else if let Some((a, b)) = line.split_once("->") {
                (a, b, false)
            } else {
                return Err(perr(format!("expected `a -> b` or `a <-> b`, got `{line}`")));
            };
            let lookup = |s: &str| -> Result<usize> {
                let s = s.trim();
                if s.is_empty() || s.contains(char::is_whitespace) {
                    return Err(perr(format!("malformed endpoint `{s}`")));
                }
                index
                    .get(s)
                    .copied()
                    .ok_or_else(|| perr(format!("unknown vertex `{s}`")))
            };
            let (a, b) = (lookup(a)?, lookup(b)?);
            if a == b {
                return Err(perr(format!(
                    "self-loop at vertex `{}`",
                    labels.as_ref().map(|l| l[a].as_str()).unwrap_or("?")
                )));
            }
            if bi {
                bidirected.push((a, b));
            } else {
                directed.push((a, b));
            }
        }
        let labels = labels.ok_or(Error::Parse {
            line: text.lines().count().max(1),
            message: "missing `vertices:` line".into(),
        })?;
        MixedGraph::from_edges(&labels, &directed, &bidirected)
    }

    /// Serializes to the text format; deterministic and parseable by [`MixedGraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::from("vertices:");
        for l in &self.labels {
            out.push(' ');
            out.push_str(l);
        }
        out.push('\n');
        for &(a, b) in &self.directed {
            out.push_str(&format!("{} -> {}\n", self.labels[a], self.labels[b]));
        }
        for &(a, b) in &self.bidirected {
            out.push_str(&format!("{} <-> {}\n", self.labels[a], self.labels[b]));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Resolves labels to a sorted, deduplicated index set.
    pub fn vertex_set<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = labels
            .iter()
            .map(|l| self.vertex(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn all_vertices(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.directed.iter().copied()
    }

    pub fn bidirected_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bidirected.iter().copied()
    }

    pub fn num_directed(&self) -> usize {
        self.directed.len()
    }

    pub fn num_bidirected(&self) -> usize {
        self.bidirected.len()
    }

    pub fn has_directed(&self, a: usize, b: usize) -> bool {
        self.directed.contains(&(a, b))
    }

    pub fn has_bidirected(&self, a: usize, b: usize) -> bool {
        self.bidirected.contains(&(a.min(b), a.max(b)))
    }

    pub fn parents(&self, v: usize) -> &[usize] {
        &self.parents[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn siblings(&self, v: usize) -> &[usize] {
        &self.siblings[v]
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.len() {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{v}")))
        }
    }

    /// Vertices with a directed path to `v`, `v` included.
    pub fn ancestors(&self, v: usize) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![v];
        seen[v] = true;
        while let Some(x) = stack.pop() {
            for &p in &self.parents[x] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        (0..self.len()).filter(|&i| seen[i]).collect()
    }

    pub fn relations(&self, v: usize) -> Result<Relations> {
        self.check_vertex(v)?;
        Ok(Relations {
            parents: self.parents[v].clone(),
            siblings: self.siblings[v].clone(),
            ancestors: self.ancestors(v),
        })
    }

    /// True when some directed path of length at least one leads from `from` to `to`.
    fn reaches_strictly(&self, from: usize, to: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack: Vec<usize> = self.children[from].clone();
        while let Some(x) = stack.pop() {
            if x == to {
                return true;
            }
            if !seen[x] {
                seen[x] = true;
                stack.extend_from_slice(&self.children[x]);
            }
        }
        false
    }

    pub fn on_directed_cycle(&self, v: usize) -> bool {
        self.reaches_strictly(v, v)
    }

    /// A vertex is ancestral when it lies on no directed cycle and none of its
    /// siblings is also one of its ancestors.
    pub fn is_ancestral_vertex(&self, v: usize) -> Result<bool> {
        self.check_vertex(v)?;
        if self.on_directed_cycle(v) {
            return Ok(false);
        }
        Ok(!self.siblings[v].iter().any(|&k| self.reaches_strictly(k, v)))
    }

    /// Kahn's algorithm with the smallest available vertex taken first, so
    /// an already-topological declaration order is returned unchanged.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let n = self.len();
        let mut indeg: Vec<usize> = self.parents.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &c in &self.children[v] {
                indeg[c] -= 1;
                if indeg[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        if order.len() == n {
            return Ok(order);
        }
        // Every leftover vertex keeps a leftover parent; walking parents must repeat.
        let left: Vec<bool> = (0..n).map(|v| indeg[v] > 0).collect();
        let start = (0..n).find(|&v| left[v]).expect("leftover vertex");
        let mut walk = vec![start];
        let mut pos = HashMap::from([(start, 0usize)]);
        let mut cur = start;
        let cycle_start = loop {
            let p = *self.parents[cur].iter().find(|&&p| left[p]).expect("leftover parent");
            if let Some(&i) = pos.get(&p) {
                break i;
            }
            pos.insert(p, walk.len());
            walk.push(p);
            cur = p;
        };
        let mut cycle: Vec<usize> = walk[cycle_start..].to_vec();
        cycle.reverse();
        let min_pos = cycle
            .iter()
            .enumerate()
            .min_by_key(|(_, &v)| v)
            .map(|(i, _)| i)
            .unwrap_or(0);
        cycle.rotate_left(min_pos);
        cycle.push(cycle[0]);
        Err(Error::Cyclic {
            cycle: cycle.iter().map(|&v| self.labels[v].clone()).collect(),
        })
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_ok()
    }

    pub(crate) fn require_acyclic(&self) -> Result<()> {
        self.topological_order().map(|_| ())
    }

    /// Decides global identifiability by scanning vertex subsets `V'` with
    /// `|V'| >= 2`. A violating subgraph on `V'` exists iff the induced
    /// bidirected part is connected and some `s` in `V'` is such that every
    /// other vertex of `V'` has a child inside `V'`.
    pub fn is_globally_identifiable(&self) -> Result<bool> {
        Ok(self.identifiability_violation()?.is_none())
    }

    /// The first violating vertex subset in bitmask order, if any.
    pub fn identifiability_violation(&self) -> Result<Option<Vec<usize>>> {
        self.require_acyclic()?;
        let n = self.len();
        if n > IDENTIFIABILITY_LIMIT {
            return Err(Error::TooLarge {
                what: "global identifiability scan",
                size: n,
                limit: IDENTIFIABILITY_LIMIT,
            });
        }
        let sib_mask: Vec<u32> = (0..n)
            .map(|v| self.siblings[v].iter().fold(0u32, |m, &s| m | (1 << s)))
            .collect();
        let child_mask: Vec<u32> = (0..n)
            .map(|v| self.children[v].iter().fold(0u32, |m, &s| m | (1 << s)))
            .collect();
        for set in 1u32..(1u32 << n) {
            if set.count_ones() < 2 {
                continue;
            }
            // Bidirected connectivity on the induced subgraph.
            let first = set.trailing_zeros() as usize;
            let mut reached = 1u32 << first;
            let mut frontier = reached;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let new = sib_mask[v] & set & !reached;
                reached |= new;
                frontier |= new;
            }
            if reached != set {
                continue;
            }
            let lacking = (0..n)
                .filter(|&v| set & (1 << v) != 0 && child_mask[v] & set == 0)
                .count();
            // Exactly one vertex without a child in V' is forced to be the sink;
            // with none, any vertex can be chosen as sink.
            if lacking <= 1 {
                return Ok(Some((0..n).filter(|&v| set & (1 << v) != 0).collect()));
            }
        }
        Ok(None)
    }

    /// Replaces every `i <-> j` by a fresh source `v_{i,j}` with edges to `i` and `j`.
    pub fn bidirected_subdivision(&self) -> SubdivisionMap {
        let n = self.len();
        let mut labels = self.labels.clone();
        let mut directed: Vec<(usize, usize)> = self.directed.iter().copied().collect();
        let mut new_vertex_of = BTreeMap::new();
        for (k, &(i, j)) in self.bidirected.iter().enumerate() {
            let mut label = format!("v{}_{}", self.labels[i], self.labels[j]);
            while self.index.contains_key(&label) || labels[n..].contains(&label) {
                label.push('_');
            }
            labels.push(label);
            let v = n + k;
            directed.push((v, i));
            directed.push((v, j));
            new_vertex_of.insert((i, j), v);
        }
        let subdivided =
            MixedGraph::from_edges(&labels, &directed, &[]).expect("subdivision of a valid graph is valid");
        SubdivisionMap {
            original: self.clone(),
            subdivided,
            new_vertex_of,
        }
    }
}

impl FromStr for MixedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MixedGraph::parse(s)
    }
}

impl fmt::Display for MixedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The canonical DAG of a mixed graph together with the bookkeeping needed
/// to move vertex sets between the two graphs.
#[derive(Debug, Clone)]
pub struct SubdivisionMap {
    pub original: MixedGraph,
    pub subdivided: MixedGraph,
    /// Keyed by the canonical pair `(i, j)`, `i < j`.
    pub new_vertex_of: BTreeMap<(usize, usize), usize>,
}

impl SubdivisionMap {
    /// `S̄ = S ∪ { v_{i,j} : i ∈ S or j ∈ S }`, sorted.
    pub fn extend_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.to_vec();
        for (&(i, j), &v) in &self.new_vertex_of {
            if set.contains(&i) || set.contains(&j) {
                out.push(v);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_subdivision_vertex(&self, v: usize) -> bool {
        v >= self.original.len()
    }

    /// Endpoints `(i, j)` of the bidirected edge a subdivision vertex replaced.
    pub fn endpoints(&self, v: usize) -> Option<(usize, usize)> {
        self.new_vertex_of.iter().find(|(_, &w)| w == v).map(|(&e, _)| e)
    }
}
