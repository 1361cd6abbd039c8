//! Named example graphs, polynomials and nested determinant expressions.
//!
//! Graph texts use the format of [`MixedGraph::parse`]; polynomial texts use
//! the canonical string format over labels `1..n`; nested expressions use the
//! JSON format of [`NestedDetExpr`](crate::constraints::NestedDetExpr).

use crate::constraints::NestedDetExpr;
use crate::graph::MixedGraph;
use crate::poly::Polynomial;

/// Instrumental-variable graph with an added edge `1 -> 3`.
pub const IV_CHAIN: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n3 -> 4\n1 -> 3\n3 <-> 4\n";
/// The Verma graph.
pub const VERMA: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n3 -> 4\n1 -> 3\n2 <-> 4\n";
/// The van Ommen graph.
pub const VOM: &str = "vertices: 1 2 3 4\n2 -> 3\n3 -> 4\n1 <-> 3\n1 <-> 2\n2 <-> 4\n";
/// DAG with two conditional independences.
pub const CI_DAG: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n2 -> 4\n3 -> 4\n";
/// Ancestral graph on five vertices with the single generator `f_35`.
pub const ANCESTRAL_FIVE: &str = "vertices: 1 2 3 4 5\n1 -> 3\n2 -> 3\n2 -> 5\n4 -> 5\n\
1 <-> 4\n1 <-> 5\n1 <-> 2\n2 <-> 4\n3 <-> 4\n";
/// Ancestral graph on four vertices.
pub const ANCESTRAL_FOUR: &str = "vertices: 1 2 3 4\n1 -> 3\n2 -> 4\n1 <-> 4\n1 <-> 2\n2 <-> 3\n";
/// Ancestral graph on six vertices.
pub const ANCESTRAL_SIX: &str = "vertices: 1 2 3 4 5 6\n1 -> 3\n2 -> 3\n4 -> 6\n5 -> 6\n\
1 <-> 4\n2 <-> 5\n1 <-> 5\n4 <-> 5\n1 <-> 2\n2 <-> 4\n1 <-> 6\n2 <-> 6\n3 <-> 5\n3 <-> 4\n";
/// Bow `1 -> 2` with a fork to `3`, `4` confounded with `1`.
pub const BOW_FORK: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n2 -> 4\n1 <-> 3\n1 <-> 4\n";
/// Chain `1 -> 2 -> 3 -> 4` with `1` confounded with `3` and `4`.
pub const BOW_CHAIN: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n3 -> 4\n1 <-> 4\n1 <-> 3\n";
/// Cyclic graph: `2 -> 3 -> 4 -> 2`.
pub const CYCLIC: &str = "vertices: 1 2 3 4\n1 -> 2\n2 -> 3\n3 -> 4\n1 -> 3\n4 -> 2\n";
/// Two-factor model with latent factors `A`, `B`; observed vertices `1..5` come first so the observed
/// covariance is the leading principal submatrix.
pub const PENTAD: &str = "vertices: 1 2 3 4 5 A B\n\
A -> 1\nA -> 2\nA -> 3\nA -> 4\nA -> 5\nB -> 1\nB -> 2\nB -> 3\nB -> 4\nB -> 5\n";
pub const PENTAD_OBSERVED: [&str; 5] = ["1", "2", "3", "4", "5"];

pub const F_VERMA: &str = "s11*s13*s22*s34 - s11*s13*s23*s24 - s11*s14*s22*s33 + s11*s14*s23^2 \
- s12^2*s13*s34 + s12^2*s14*s33 + s12*s13^2*s24 - s12*s13*s14*s23";
pub const F_VOM: &str = "s13*s22*s34 - s13*s23*s24 - s14*s22*s33 + s14*s23^2";
pub const F_PENTAD: &str = "s12*s13*s24*s35*s45 - s12*s13*s25*s34*s45 - s12*s14*s23*s35*s45 \
+ s12*s14*s25*s34*s35 + s12*s15*s23*s34*s45 - s12*s15*s24*s34*s35 + s13*s14*s23*s25*s45 \
- s13*s14*s24*s25*s35 - s13*s15*s23*s24*s45 + s13*s15*s24*s25*s34 + s14*s15*s23*s24*s35 \
- s14*s15*s23*s25*s34";

/// Parental form of `f_Verma` with rows listed as `pa(4)` first, then `1`.
pub const VERMA_NESTED_DISPLAY: &str = r#"{"det":[
 [{"minor":{"rows":["1","2","3"],"cols":["1","2","3"]}},{"minor":{"rows":["1","2","3"],"cols":["1","2","4"]}}],
 [{"minor":{"rows":["1"],"cols":["3"]}},{"minor":{"rows":["1"],"cols":["4"]}}]]}"#;
pub const VERMA_NESTED_ALT1: &str = r#"{"det":[
 [{"minor":{"rows":["1","2","3"],"cols":["1","3","4"]}},{"minor":{"rows":["1","2","3"],"cols":["2","3","4"]}}],
 [{"minor":{"rows":["1"],"cols":["1"]}},{"minor":{"rows":["1"],"cols":["2"]}}]]}"#;
pub const VERMA_NESTED_ALT2: &str = r#"{"det":[
 [{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["1","3"]}}],
 [{"minor":{"rows":["3","4"],"cols":["1","2"]}},{"minor":{"rows":["3","4"],"cols":["1","3"]}}]]}"#;
/// Factorization-friendly form used with the swapping property.
pub const VERMA_NESTED_SWAP: &str = r#"{"det":[
 [{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["3","4"]}}],
 [{"minor":{"rows":["1","3"],"cols":["1","2"]}},{"minor":{"rows":["1","3"],"cols":["3","4"]}}]]}"#;
/// Parental form of `f_vOM` with rows listed as `pa(4)`-block first.
pub const VOM_NESTED_DISPLAY: &str = r#"{"det":[
 [{"minor":{"rows":["2","3"],"cols":["2","3"]}},{"minor":{"rows":["2","3"],"cols":["2","4"]}}],
 [{"minor":{"rows":["1"],"cols":["3"]}},{"minor":{"rows":["1"],"cols":["4"]}}]]}"#;
/// Doubly nested generator of the vanishing ideal of [`BOW_FORK`].
pub const BOW_FORK_NESTED: &str = r#"{"det":[
 [{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["1","4"]}}],
 [{"det":[[{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["1","3"]}}],
          [{"minor":{"rows":["2"],"cols":["2"]}},{"minor":{"rows":["2"],"cols":["3"]}}]]},
  {"det":[[{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["1","3"]}}],
          [{"minor":{"rows":["4"],"cols":["2"]}},{"minor":{"rows":["4"],"cols":["3"]}}]]}]]}"#;
/// Doubly nested generator of the vanishing ideal of [`BOW_CHAIN`].
pub const BOW_CHAIN_NESTED: &str = r#"{"det":[
 [{"minor":{"rows":["1","2"],"cols":["1","3"]}},{"minor":{"rows":["1","2"],"cols":["1","4"]}}],
 [{"det":[[{"minor":{"rows":["2"],"cols":["3"]}},{"minor":{"rows":["3"],"cols":["3"]}}],
          [{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","3"],"cols":["1","2"]}}]]},
  {"det":[[{"minor":{"rows":["2"],"cols":["4"]}},{"minor":{"rows":["3"],"cols":["4"]}}],
          [{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","3"],"cols":["1","2"]}}]]}]]}"#;
/// Doubly nested determinant vanishing on the model of [`CYCLIC`].
pub const CYCLIC_NESTED: &str = r#"{"det":[
 [{"minor":{"rows":["3","4"],"cols":["1","2"]}},{"minor":{"rows":["3","4"],"cols":["1","3"]}}],
 [{"det":[[{"minor":{"rows":["1","2"],"cols":["1","2"]}},{"minor":{"rows":["1","2"],"cols":["3","4"]}}],
          [{"minor":{"rows":["1","4"],"cols":["1","2"]}},{"minor":{"rows":["1","4"],"cols":["3","4"]}}]]},
  {"det":[[{"minor":{"rows":["1","2"],"cols":["1","3"]}},{"minor":{"rows":["1","2"],"cols":["3","4"]}}],
          [{"minor":{"rows":["1","4"],"cols":["1","3"]}},{"minor":{"rows":["1","4"],"cols":["3","4"]}}]]}]]}"#;
/// Nested form of the pentad; expands to `-f_pentad`.
pub const PENTAD_NESTED: &str = r#"{"det":[
 [{"minor":{"rows":["2","3"],"cols":["4","5"]}},{"minor":{"rows":["2","5"],"cols":["3","4"]}}],
 [{"minor":{"rows":["1","2","3"],"cols":["1","4","5"]}},{"minor":{"rows":["1","2","5"],"cols":["1","3","4"]}}]]}"#;

/// Parses a gallery graph; the constants above are known to be valid.
pub fn graph(text: &str) -> MixedGraph {
    MixedGraph::parse(text).expect("gallery graph parses")
}

/// Parses a gallery polynomial over labels `1..n`.
pub fn polynomial(text: &str, n: usize) -> Polynomial {
    let labels: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
    Polynomial::parse(text, &labels).expect("gallery polynomial parses")
}

/// Parses a gallery expression against the labels of `g`.
pub fn nested(text: &str, g: &MixedGraph) -> NestedDetExpr {
    NestedDetExpr::from_json_str(text, g.labels()).expect("gallery expression parses")
}

/// Every named graph, for iteration in tests and surveys.
pub fn named_graphs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("iv_chain", IV_CHAIN),
        ("verma", VERMA),
        ("vom", VOM),
        ("ci_dag", CI_DAG),
        ("ancestral_five", ANCESTRAL_FIVE),
        ("ancestral_four", ANCESTRAL_FOUR),
        ("ancestral_six", ANCESTRAL_SIX),
        ("bow_fork", BOW_FORK),
        ("bow_chain", BOW_CHAIN),
        ("cyclic", CYCLIC),
        ("pentad", PENTAD),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_graphs_parse() {
        for (name, text) in named_graphs() {
            let g = MixedGraph::parse(text).unwrap();
            assert_eq!(g.is_acyclic(), name != "cyclic", "{name}");
        }
    }

    #[test]
    fn polynomials_are_canonical() {
        for (text, n, deg) in [(F_VERMA, 4, 4), (F_VOM, 4, 3), (F_PENTAD, 5, 5)] {
            let labels: Vec<String> = (1..=n).map(|k: usize| k.to_string()).collect();
            let f = polynomial(text, n);
            assert_eq!(f.render(&labels), text);
            assert_eq!(f.degree(), Some(deg));
        }
        assert_eq!(polynomial(F_PENTAD, 5).len(), 12);
    }
}
