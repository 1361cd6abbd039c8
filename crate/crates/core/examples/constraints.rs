//! Candidate pairs, parentally nested determinants and the model-defining
//! constraint set of the van Ommen graph.

use trekdet::constraints::{candidate_pairs, parental_determinants, theorem_constraint_set};
use trekdet::gallery;

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VOM);
    let labels = g.labels();
    for c in candidate_pairs(&g)? {
        let j: Vec<&str> = c.j.iter().map(|&v| g.label(v)).collect();
        println!("candidate pair i = {}, J = {{{}}}", g.label(c.i), j.join(","));
        for d in parental_determinants(&g, c.i, &c.j, true)? {
            println!("  {}", serde_json::to_string(&d.to_json(&g))?);
        }
    }
    for c in theorem_constraint_set(&g)? {
        println!("defining constraint: {}", c.expanded.render(labels));
    }
    Ok(())
}
