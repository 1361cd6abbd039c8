//! Symbolic covariance and restricted covariance of a mixed graph, and the
//! trek-system expansion of one of its minors.

use trekdet::gallery;
use trekdet::model::{restricted_covariance, symbolic_covariance};
use trekdet::trek::{trek_polynomial, treks_between};

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VERMA);
    let labels = g.labels();
    let sigma = symbolic_covariance(&g)?;
    for r in 0..g.len() {
        for c in r..g.len() {
            println!("σ{}{} = {}", labels[r], labels[c], sigma.get(r, c).render(labels));
        }
    }
    let all = g.all_vertices();
    for t in treks_between(&g, 0, 3, &all, &all)? {
        println!("trek 1..4: {}", t.render(&g));
    }
    let p = g.vertex_set(&["2", "4"])?;
    let q = g.vertex_set(&["2", "3", "4"])?;
    let restricted = restricted_covariance(&g, &p, &q)?;
    let a = g.vertex_set(&["2", "4"])?;
    let b = g.vertex_set(&["2", "3"])?;
    let minor = restricted.submatrix(&a, &b)?.determinant()?;
    println!("restricted minor: {}", minor.render(labels));
    println!(
        "matches trek systems: {}",
        minor == trek_polynomial(&g, &a, &b, &p, &q)?
    );
    Ok(())
}
