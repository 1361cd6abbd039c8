//! Structural invariants of mixed graphs checked against naive oracles.

mod common;

use common::{acyclic_graph, any_graph, forward_graph};
use itertools::Itertools;
use proptest::prelude::*;
use trekdet::MixedGraph;

/// Three-colour DFS cycle detection, independent of Kahn's algorithm.
fn has_cycle(g: &MixedGraph) -> bool {
    fn visit(g: &MixedGraph, v: usize, state: &mut [u8]) -> bool {
        state[v] = 1;
        for &c in g.children(v) {
            if state[c] == 1 || (state[c] == 0 && visit(g, c, state)) {
                return true;
            }
        }
        state[v] = 2;
        false
    }
    let mut state = vec![0u8; g.len()];
    (0..g.len()).any(|v| state[v] == 0 && visit(g, v, &mut state))
}

/// Some `V'` with at least two vertices, connected bidirected part and a
/// unique vertex without children inside `V'`.
fn naive_violation(g: &MixedGraph) -> bool {
    (0..g.len()).powerset().filter(|s| s.len() >= 2).any(|set| {
        let mut comp: Vec<usize> = set.clone();
        // Union-find by repeated relabelling.
        let mut changed = true;
        while changed {
            changed = false;
            for (a, &x) in set.iter().enumerate() {
                for (b, &y) in set.iter().enumerate() {
                    if g.has_bidirected(x, y) && comp[a] != comp[b] {
                        let m = comp[a].min(comp[b]);
                        comp[a] = m;
                        comp[b] = m;
                        changed = true;
                    }
                }
            }
        }
        let connected = comp.iter().all(|&c| c == comp[0]);
        let sinks = set
            .iter()
            .filter(|&&x| !set.iter().any(|&y| g.has_directed(x, y)))
            .count();
        connected && sinks == 1
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn topological_order_matches_dfs(g in any_graph(6, 9)) {
        let cyclic = has_cycle(&g);
        prop_assert_eq!(g.is_acyclic(), !cyclic);
        match g.topological_order() {
            Ok(order) => {
                prop_assert!(!cyclic);
                let mut pos = vec![usize::MAX; g.len()];
                for (k, &v) in order.iter().enumerate() {
                    pos[v] = k;
                }
                prop_assert!(pos.iter().all(|&p| p < g.len()));
                for (a, b) in g.directed_edges() {
                    prop_assert!(pos[a] < pos[b]);
                }
            }
            Err(_) => prop_assert!(cyclic),
        }
    }

    #[test]
    fn forward_order_is_returned_unchanged(g in forward_graph(6, 9)) {
        prop_assert_eq!(g.topological_order().unwrap(), g.all_vertices());
    }

    #[test]
    fn subdivision_is_a_dag_with_fresh_sources(g in acyclic_graph(6, 9)) {
        let map = g.bidirected_subdivision();
        let d = &map.subdivided;
        prop_assert!(d.is_acyclic());
        prop_assert_eq!(d.num_bidirected(), 0);
        prop_assert_eq!(d.len(), g.len() + g.num_bidirected());
        prop_assert_eq!(d.num_directed(), g.num_directed() + 2 * g.num_bidirected());
        for (i, j) in g.directed_edges() {
            prop_assert!(d.has_directed(i, j));
        }
        for (i, j) in g.bidirected_edges() {
            let v = map.new_vertex_of[&(i.min(j), i.max(j))];
            prop_assert!(map.is_subdivision_vertex(v));
            prop_assert!(d.parents(v).is_empty());
            prop_assert_eq!(d.children(v).to_vec(), vec![i.min(j), i.max(j)]);
            prop_assert_eq!(map.endpoints(v), Some((i.min(j), i.max(j))));
        }
        let set: Vec<usize> = (0..g.len()).filter(|v| v % 2 == 0).collect();
        let ext = map.extend_set(&set);
        for v in ext.iter().copied().filter(|&v| map.is_subdivision_vertex(v)) {
            let (i, j) = map.endpoints(v).unwrap();
            prop_assert!(set.contains(&i) || set.contains(&j));
        }
    }

    #[test]
    fn identifiability_matches_subset_oracle(g in acyclic_graph(5, 8)) {
        prop_assert_eq!(g.is_globally_identifiable().unwrap(), !naive_violation(&g));
    }

    #[test]
    fn relations_are_consistent(g in any_graph(6, 9)) {
        for v in 0..g.len() {
            let r = g.relations(v).unwrap();
            for u in 0..g.len() {
                prop_assert_eq!(r.parents.contains(&u), g.has_directed(u, v));
                prop_assert_eq!(r.siblings.contains(&u), g.has_bidirected(u, v));
                prop_assert_eq!(g.has_bidirected(u, v), g.has_bidirected(v, u));
            }
            prop_assert!(r.ancestors.contains(&v));
            for &a in &r.ancestors {
                for &p in g.parents(a) {
                    prop_assert!(r.ancestors.contains(&p));
                }
            }
            let ancestral = g.is_ancestral_vertex(v).unwrap();
            let expected = !g.on_directed_cycle(v)
                && !r.siblings.iter().any(|&s| s != v && r.ancestors.contains(&s));
            prop_assert_eq!(ancestral, expected);
        }
    }

    #[test]
    fn text_round_trip(g in any_graph(6, 9)) {
        let back = MixedGraph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), g.to_text());
        prop_assert_eq!(back.directed_edges().collect::<Vec<_>>(), g.directed_edges().collect::<Vec<_>>());
        prop_assert_eq!(back.bidirected_edges().collect::<Vec<_>>(), g.bidirected_edges().collect::<Vec<_>>());
    }
}
