//! Shared fixtures for integration tests: an exhaustive corpus of small
//! acyclic mixed graphs and subset helpers.
#![allow(dead_code)]

use itertools::Itertools;
use proptest::prelude::*;
use trekdet::MixedGraph;

/// Every acyclic mixed graph on `n` vertices with at most `max_edges`
/// edges whose directed edges point from lower to higher index. Every
/// acyclic mixed graph is isomorphic to one of these.
pub fn forward_graphs(n: usize, max_edges: usize) -> Vec<MixedGraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    let mut out = Vec::new();
    // Each pair is absent, directed, bidirected, or both.
    let states = 4usize.pow(pairs.len() as u32);
    for code in 0..states {
        let mut c = code;
        let mut directed = Vec::new();
        let mut bidirected = Vec::new();
        for &(i, j) in &pairs {
            let s = c % 4;
            c /= 4;
            if s & 1 != 0 {
                directed.push((i, j));
            }
            if s & 2 != 0 {
                bidirected.push((i, j));
            }
        }
        if directed.len() + bidirected.len() <= max_edges {
            out.push(MixedGraph::from_edges(&labels, &directed, &bidirected).unwrap());
        }
    }
    out
}

/// The acceptance corpus: all sizes `1..=4`, at most five edges.
pub fn corpus() -> Vec<MixedGraph> {
    (1..=4).flat_map(|n| forward_graphs(n, 5)).collect()
}

/// Nonempty subsets of `0..n` as sorted vectors, in bitmask order.
pub fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|m| (0..n).filter(|&v| m & (1 << v) != 0).collect())
        .collect()
}

/// Subsets of `set` of size `k`, in lexicographic order.
pub fn k_subsets(set: &[usize], k: usize) -> Vec<Vec<usize>> {
    set.iter().copied().combinations(k).collect()
}

/// Labels `1..=n`.
pub fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|k| k.to_string()).collect()
}

pub type EdgeList = Vec<(usize, usize)>;

/// Raw edge lists on `n` vertices: directed pairs may form cycles, self
/// loops are dropped.
pub fn raw_edges(n: usize, max_edges: usize) -> impl Strategy<Value = (EdgeList, EdgeList)> {
    let cap = if n < 2 { 0 } else { max_edges };
    // `j = i + 1 + k (mod n)` never equals `i`.
    let pair = (0..n, 0..n.max(2) - 1).prop_map(move |(i, k)| (i, (i + 1 + k) % n));
    (
        prop::collection::vec(pair.clone(), 0..=cap),
        prop::collection::vec(pair, 0..=cap),
    )
        .prop_map(|(mut d, b)| {
            d.sort_unstable();
            d.dedup();
            (d, b)
        })
}

/// Any mixed graph on `1..=max_n` vertices, possibly cyclic.
pub fn any_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = MixedGraph> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), raw_edges(n, max_edges)))
        .prop_map(|(n, (d, b))| MixedGraph::from_edges(&labels(n), &d, &b).unwrap())
}

/// Acyclic graph whose declaration order is topological.
pub fn forward_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = MixedGraph> {
    (1..=max_n)
        .prop_flat_map(move |n| (Just(n), raw_edges(n, max_edges)))
        .prop_map(|(n, (d, b))| {
            let d: Vec<(usize, usize)> = d.into_iter().map(|(i, j)| (i.min(j), i.max(j))).unique().collect();
            MixedGraph::from_edges(&labels(n), &d, &b).unwrap()
        })
}

/// Acyclic graph under a random relabelling, so declaration order is arbitrary.
pub fn acyclic_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = MixedGraph> {
    forward_graph(max_n, max_edges)
        .prop_flat_map(|g| {
            let n = g.len();
            (Just(g), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
        })
        .prop_map(|(g, perm)| {
            let d: Vec<(usize, usize)> = g.directed_edges().map(|(i, j)| (perm[i], perm[j])).collect();
            let b: Vec<(usize, usize)> = g.bidirected_edges().map(|(i, j)| (perm[i], perm[j])).collect();
            MixedGraph::from_edges(&labels(g.len()), &d, &b).unwrap()
        })
}

/// Sorted subset of `0..n` from a bitmask.
pub fn subset_of(n: usize, mask: u32) -> Vec<usize> {
    (0..n).filter(|&v| mask & (1 << v) != 0).collect()
}
