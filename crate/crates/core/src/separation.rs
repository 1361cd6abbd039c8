//! Restricted trek separation through vertex cuts in an auxiliary network.
//!
//! A `(P, Q)`-restricted trek from `a` to `b` is a directed path
//! `u → a′ → … → t′ → t → … → b → v`: primed nodes walk the left side
//! upwards inside `P`, unprimed nodes walk the right side downwards inside
//! `Q`, and the single crossing arc is the top. Cutting `x′` or `x` blocks
//! treks through `x` on the left or right side, so minimum vertex cuts are
//! minimum separating pairs `(S_L, S_R)`.

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::MixedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Source,
    /// `x′`: left-side copy of vertex `x` of the base graph.
    Left(usize),
    /// `x`: right-side node of vertex `x` of the base graph.
    Right(usize),
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// Built on the bidirected subdivision; each `i ↔ j` is a source vertex `v_{i,j}`.
    Subdivided,
    /// Built on the mixed graph itself; each `i ↔ j` gives arcs `i′ → j` and `j′ → i`.
    Direct,
}

/// Directed network with unit node capacities (source and sink unbounded).
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub base: Base,
    pub nodes: Vec<NodeKind>,
    pub arcs: Vec<(usize, usize)>,
    /// Vertices of the base graph at or above this index are subdivision vertices.
    pub original_len: usize,
    /// Labels of the base graph's vertices.
    pub labels: Vec<String>,
    index: BTreeMap<NodeKind, usize>,
}

const INF: u64 = u64::MAX / 4;

impl FlowNetwork {
    pub fn node(&self, kind: NodeKind) -> Option<usize> {
        self.index.get(&kind).copied()
    }

    pub fn source(&self) -> usize {
        self.index[&NodeKind::Source]
    }

    pub fn sink(&self) -> usize {
        self.index[&NodeKind::Sink]
    }

    /// Vertex of the original mixed graph behind a node, with `true` for the left side.
    /// Subdivision nodes map to `None`.
    pub fn provenance(&self, node: usize) -> Option<(usize, bool)> {
        match self.nodes[node] {
            NodeKind::Left(x) if x < self.original_len => Some((x, true)),
            NodeKind::Right(x) if x < self.original_len => Some((x, false)),
            _ => None,
        }
    }

    pub fn has_arc(&self, from: NodeKind, to: NodeKind) -> bool {
        match (self.node(from), self.node(to)) {
            (Some(a), Some(b)) => self.arcs.contains(&(a, b)),
            _ => false,
        }
    }

    fn removal_mask(&self, s_l: &[usize], s_r: &[usize]) -> Vec<bool> {
        let mut removed = vec![false; self.nodes.len()];
        for &x in s_l {
            if let Some(k) = self.node(NodeKind::Left(x)) {
                removed[k] = true;
            }
        }
        for &x in s_r {
            if let Some(k) = self.node(NodeKind::Right(x)) {
                removed[k] = true;
            }
        }
        removed
    }

    /// `true` when the source still reaches the sink after deleting `removed` nodes.
    pub fn connected_without(&self, removed: &[bool]) -> bool {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.arcs {
            adj[a].push(b);
        }
        let (s, t) = (self.source(), self.sink());
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            if x == t {
                return true;
            }
            for &y in &adj[x] {
                if !seen[y] && !removed[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        false
    }

    pub fn max_flow(&self) -> usize {
        let none = vec![false; self.nodes.len()];
        self.max_flow_with(&none, &none, usize::MAX)
    }

    /// Max flow after deleting `removed` nodes, with `unbounded` nodes given
    /// infinite capacity. Stops once the flow exceeds `limit`.
    pub fn max_flow_with(&self, removed: &[bool], unbounded: &[bool], limit: usize) -> usize {
        let n = self.nodes.len();
        let (s, t) = (self.source(), self.sink());
        let mut fg = Residual::new(2 * n);
        for k in 0..n {
            if removed[k] {
                continue;
            }
            let cap = if k == s || k == t || unbounded[k] { INF } else { 1 };
            fg.add(2 * k, 2 * k + 1, cap);
        }
        for &(a, b) in &self.arcs {
            if !removed[a] && !removed[b] {
                fg.add(2 * a + 1, 2 * b, INF);
            }
        }
        fg.max_flow(2 * s, 2 * t + 1, limit)
    }
}

/// Residual graph for breadth-first augmenting paths.
struct Residual {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl Residual {
    fn new(n: usize) -> Self {
        Residual {
            head: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add(&mut self, a: usize, b: usize, c: u64) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let mut flow: u64 = 0;
        loop {
            if flow > limit as u64 {
                return limit.saturating_add(1);
            }
            let mut prev: Vec<Option<usize>> = vec![None; self.head.len()];
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            while let Some(x) = queue.pop_front() {
                if x == t {
                    reached = true;
                    break;
                }
                for &e in &self.head[x] {
                    let y = self.to[e];
                    if self.cap[e] > 0 && y != s && prev[y].is_none() {
                        prev[y] = Some(e);
                        queue.push_back(y);
                    }
                }
            }
            if !reached {
                return flow as usize;
            }
            let mut bottleneck = INF;
            let mut y = t;
            while let Some(e) = prev[y] {
                bottleneck = bottleneck.min(self.cap[e]);
                y = self.to[e ^ 1];
            }
            // Capacities derived from INF stay above INF / 2; such a path is unbounded.
            if bottleneck >= INF / 2 {
                return limit.saturating_add(1);
            }
            let mut y = t;
            while let Some(e) = prev[y] {
                self.cap[e] -= bottleneck;
                self.cap[e ^ 1] += bottleneck;
                y = self.to[e ^ 1];
            }
            flow += bottleneck;
        }
    }
}

fn normalized(set: &[usize]) -> Vec<usize> {
    let mut s = set.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

fn check_inputs(g: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<()> {
    g.require_acyclic()?;
    for &v in a.iter().chain(b).chain(p).chain(q) {
        if v >= g.len() {
            return Err(Error::UnknownVertex(format!("#{v}")));
        }
    }
    if !a.iter().all(|x| p.contains(x)) {
        return Err(Error::NotSubset {
            what: "A",
            container: "P",
        });
    }
    if !b.iter().all(|x| q.contains(x)) {
        return Err(Error::NotSubset {
            what: "B",
            container: "Q",
        });
    }
    Ok(())
}

struct Builder {
    nodes: Vec<NodeKind>,
    index: BTreeMap<NodeKind, usize>,
    arcs: Vec<(usize, usize)>,
}

impl Builder {
    fn new(p: &[usize], q: &[usize]) -> Self {
        let mut nodes = vec![NodeKind::Source];
        nodes.extend(p.iter().map(|&x| NodeKind::Left(x)));
        nodes.extend(q.iter().map(|&x| NodeKind::Right(x)));
        nodes.push(NodeKind::Sink);
        let index = nodes.iter().enumerate().map(|(k, &n)| (n, k)).collect();
        Builder {
            nodes,
            index,
            arcs: Vec::new(),
        }
    }

    fn arc(&mut self, a: NodeKind, b: NodeKind) {
        if let (Some(&x), Some(&y)) = (self.index.get(&a), self.index.get(&b)) {
            self.arcs.push((x, y));
        }
    }

    fn finish(mut self, base: Base, original_len: usize, labels: Vec<String>) -> FlowNetwork {
        self.arcs.sort_unstable();
        self.arcs.dedup();
        FlowNetwork {
            base,
            nodes: self.nodes,
            arcs: self.arcs,
            original_len,
            labels,
            index: self.index,
        }
    }
}

/// Shared arc rules on a directed base graph with extended sets `p`, `q`.
fn directed_arcs(bld: &mut Builder, base: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) {
    for &x in a {
        bld.arc(NodeKind::Source, NodeKind::Left(x));
    }
    for (i, j) in base.directed_edges() {
        if q.contains(&i) && q.contains(&j) {
            bld.arc(NodeKind::Right(i), NodeKind::Right(j));
        }
        if p.contains(&i) && p.contains(&j) {
            bld.arc(NodeKind::Left(j), NodeKind::Left(i));
        }
    }
    for &x in p {
        if q.contains(&x) {
            bld.arc(NodeKind::Left(x), NodeKind::Right(x));
        }
    }
    for &x in b {
        bld.arc(NodeKind::Right(x), NodeKind::Sink);
    }
}

/// The network `G̃_{P,Q}` built on the bidirected subdivision with `P̄`, `Q̄`.
pub fn build_aux_graph(g: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<FlowNetwork> {
    let (a, b, p, q) = (normalized(a), normalized(b), normalized(p), normalized(q));
    check_inputs(g, &a, &b, &p, &q)?;
    let sub = g.bidirected_subdivision();
    let (pb, qb) = (sub.extend_set(&p), sub.extend_set(&q));
    let mut bld = Builder::new(&pb, &qb);
    directed_arcs(&mut bld, &sub.subdivided, &a, &b, &pb, &qb);
    Ok(bld.finish(Base::Subdivided, g.len(), sub.subdivided.labels().to_vec()))
}

/// The same network built on `G` itself, bidirected tops becoming crossing arcs.
pub fn build_direct_network(g: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<FlowNetwork> {
    let (a, b, p, q) = (normalized(a), normalized(b), normalized(p), normalized(q));
    check_inputs(g, &a, &b, &p, &q)?;
    let mut bld = Builder::new(&p, &q);
    directed_arcs(&mut bld, g, &a, &b, &p, &q);
    for (i, j) in g.bidirected_edges() {
        for (x, y) in [(i, j), (j, i)] {
            if p.contains(&x) && q.contains(&y) {
                bld.arc(NodeKind::Left(x), NodeKind::Right(y));
            }
        }
    }
    Ok(bld.finish(Base::Direct, g.len(), g.labels().to_vec()))
}

/// A separating pair for `(A, B)` relative to `(P, Q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationCertificate {
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub p: Vec<usize>,
    pub q: Vec<usize>,
    pub s_l: Vec<usize>,
    pub s_r: Vec<usize>,
    pub size: usize,
    pub verified: bool,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    #[serde(rename = "A")]
    a: Vec<&'a str>,
    #[serde(rename = "B")]
    b: Vec<&'a str>,
    #[serde(rename = "P")]
    p: Vec<&'a str>,
    #[serde(rename = "Q")]
    q: Vec<&'a str>,
    #[serde(rename = "SL")]
    s_l: Vec<&'a str>,
    #[serde(rename = "SR")]
    s_r: Vec<&'a str>,
    size: usize,
    verified: bool,
}

#[derive(Deserialize)]
struct CertificateIn {
    #[serde(rename = "A")]
    a: Vec<String>,
    #[serde(rename = "B")]
    b: Vec<String>,
    #[serde(rename = "P")]
    p: Vec<String>,
    #[serde(rename = "Q")]
    q: Vec<String>,
    #[serde(rename = "SL")]
    s_l: Vec<String>,
    #[serde(rename = "SR")]
    s_r: Vec<String>,
    size: usize,
    verified: bool,
}

impl SeparationCertificate {
    pub fn to_json(&self, g: &MixedGraph) -> serde_json::Value {
        let names = |s: &[usize]| -> Vec<&str> { s.iter().map(|&v| g.label(v)).collect() };
        let c = CertificateJson {
            a: names(&self.a),
            b: names(&self.b),
            p: names(&self.p),
            q: names(&self.q),
            s_l: names(&self.s_l),
            s_r: names(&self.s_r),
            size: self.size,
            verified: self.verified,
        };
        serde_json::to_value(c).expect("certificate serializes")
    }

    /// Reads the JSON form produced by [`SeparationCertificate::to_json`].
    pub fn from_json(value: &serde_json::Value, g: &MixedGraph) -> Result<Self> {
        let c: CertificateIn = serde_json::from_value(value.clone())?;
        Ok(SeparationCertificate {
            a: g.vertex_set(&c.a)?,
            b: g.vertex_set(&c.b)?,
            p: g.vertex_set(&c.p)?,
            q: g.vertex_set(&c.q)?,
            s_l: g.vertex_set(&c.s_l)?,
            s_r: g.vertex_set(&c.s_r)?,
            size: c.size,
            verified: c.verified,
        })
    }

    /// Re-runs the separation check on `g`.
    pub fn recheck(&self, g: &MixedGraph) -> Result<bool> {
        Ok(self.size == self.s_l.len() + self.s_r.len()
            && is_restricted_trek_separated(g, &self.a, &self.b, &self.s_l, &self.s_r, &self.p, &self.q)?)
    }
}

/// Whether every `(P, Q)`-restricted trek between `A` and `B` meets `S_L`
/// on its left side or `S_R` on its right side.
pub fn is_restricted_trek_separated(
    g: &MixedGraph,
    a: &[usize],
    b: &[usize],
    s_l: &[usize],
    s_r: &[usize],
    p: &[usize],
    q: &[usize],
) -> Result<bool> {
    let net = build_aux_graph(g, a, b, p, q)?;
    let removed = net.removal_mask(s_l, s_r);
    Ok(!net.connected_without(&removed))
}

/// Minimum separating pair; ties go to the lexicographically smallest
/// `S_L`, then the smallest `S_R`, both as increasing vertex sequences.
pub fn min_restricted_cut(
    g: &MixedGraph,
    a: &[usize],
    b: &[usize],
    p: &[usize],
    q: &[usize],
) -> Result<SeparationCertificate> {
    let aux = build_aux_graph(g, a, b, p, q)?;
    let size = aux.max_flow();
    let direct = build_direct_network(g, a, b, p, q)?;
    let direct_size = direct.max_flow();
    if direct_size != size {
        return Err(Error::Internal(format!(
            "cut size {size} on the subdivision but {direct_size} on the mixed graph"
        )));
    }
    let (s_l, s_r) = lexicographic_cut(&direct, size);
    let mut cert = SeparationCertificate {
        a: normalized(a),
        b: normalized(b),
        p: normalized(p),
        q: normalized(q),
        s_l,
        s_r,
        size,
        verified: false,
    };
    cert.verified = cert.recheck(g)?;
    if !cert.verified {
        return Err(Error::Internal("minimum cut failed re-verification".into()));
    }
    Ok(cert)
}

/// Greedy search for the lexicographically first cut of size `k`.
fn lexicographic_cut(net: &FlowNetwork, k: usize) -> (Vec<usize>, Vec<usize>) {
    let lefts: Vec<usize> = (0..net.nodes.len())
        .filter(|&x| matches!(net.nodes[x], NodeKind::Left(_)))
        .collect();
    let rights: Vec<usize> = (0..net.nodes.len())
        .filter(|&x| matches!(net.nodes[x], NodeKind::Right(_)))
        .collect();
    let n = net.nodes.len();
    // A cut containing exactly `forced` plus nodes from `cuttable` exists.
    let feasible = |forced: &[usize], cuttable: &[usize]| -> bool {
        if forced.len() > k {
            return false;
        }
        let mut removed = vec![false; n];
        for &x in forced {
            removed[x] = true;
        }
        let mut unbounded = vec![true; n];
        for &x in cuttable {
            unbounded[x] = false;
        }
        net.max_flow_with(&removed, &unbounded, k) <= k - forced.len()
    };
    let greedy = |fixed: &[usize], pool: &[usize], rest: &[usize]| -> Vec<usize> {
        let mut chosen: Vec<usize> = Vec::new();
        'outer: loop {
            let forced: Vec<usize> = fixed.iter().chain(&chosen).copied().collect();
            if feasible(&forced, rest) {
                return chosen;
            }
            let start = chosen
                .last()
                .map_or(0, |&c| pool.iter().position(|&x| x == c).unwrap() + 1);
            for (idx, &x) in pool.iter().enumerate().skip(start) {
                let mut f = forced.clone();
                f.push(x);
                let cuttable: Vec<usize> = pool[idx + 1..].iter().chain(rest).copied().collect();
                if feasible(&f, &cuttable) {
                    chosen.push(x);
                    continue 'outer;
                }
            }
            unreachable!("a minimum cut exists among the remaining nodes");
        }
    };
    let left_nodes = greedy(&[], &lefts, &rights);
    let right_nodes = greedy(&left_nodes, &rights, &[]);
    let vertex = |x: usize| match net.nodes[x] {
        NodeKind::Left(v) | NodeKind::Right(v) => v,
        _ => unreachable!(),
    };
    (
        left_nodes.into_iter().map(vertex).collect(),
        right_nodes.into_iter().map(vertex).collect(),
    )
}

/// Minimum cut size, which is the generic rank of `Σ^{(P,Q)}_{A,B}`.
pub fn generic_rank(g: &MixedGraph, a: &[usize], b: &[usize], p: &[usize], q: &[usize]) -> Result<usize> {
    let k = build_aux_graph(g, a, b, p, q)?.max_flow();
    Ok(k.min(normalized(a).len()).min(normalized(b).len()))
}
