//! Block factorization of covariance minors into restricted trek
//! polynomials, and the swapping property checked by brute force.

use trekdet::gallery;
use trekdet::verifier::{check_swapping, verify_factorization, verify_polynomial_factorization, FactorBlock};

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VERMA);
    let all = g.all_vertices();
    let v = |labels: &[&str]| g.vertex_set(labels);
    let p11 = FactorBlock::new(v(&["1"])?, v(&["1"])?, all.clone(), all.clone());
    let p13 = FactorBlock::new(v(&["1"])?, v(&["3"])?, all.clone(), all.clone());
    let inner = FactorBlock::new(v(&["2"])?, v(&["2"])?, v(&["2", "3", "4"])?, v(&["2", "3", "4"])?);
    println!(
        "|Σ_{{12;12}}| = P_11 P_22: {}",
        verify_factorization(&g, &[p11.clone(), inner])?
    );
    let last = FactorBlock::new(v(&["2", "3"])?, v(&["2", "4"])?, v(&["2", "3", "4"])?, v(&["2", "4"])?);
    let f = gallery::polynomial(gallery::F_VERMA, 4);
    println!(
        "f_Verma factors: {}",
        verify_polynomial_factorization(&g, &f, &[p11, p13, last])?
    );
    let swap = [(v(&["1"])?, v(&["1"])?), (v(&["2", "3"])?, v(&["2", "4"])?)];
    println!("swapping holds: {}", check_swapping(&g, &swap)?);
    Ok(())
}
