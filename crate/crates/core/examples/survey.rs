//! Lists every rank-deficient pair of two-element sets on a four-vertex DAG
//! together with the certificate explaining the deficiency.

use itertools::Itertools;
use trekdet::gallery;
use trekdet::separation::min_restricted_cut;

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::CI_DAG);
    let all = g.all_vertices();
    let names = |s: &[usize]| s.iter().map(|&v| g.label(v)).join(",");
    for a in all.iter().copied().combinations(2) {
        for b in all.iter().copied().combinations(2) {
            if a > b {
                continue;
            }
            let cert = min_restricted_cut(&g, &a, &b, &all, &all)?;
            if cert.size < 2 {
                println!(
                    "A={{{}}} B={{{}}}: rank {} via ({{{}}}, {{{}}})",
                    names(&a),
                    names(&b),
                    cert.size,
                    names(&cert.s_l),
                    names(&cert.s_r)
                );
            }
        }
    }
    Ok(())
}
