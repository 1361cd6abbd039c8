//! Minimum restricted trek separation on the Verma graph, with the
//! certificate re-verified and compared with the generic rank.

use trekdet::gallery;
use trekdet::separation::{generic_rank, min_restricted_cut};

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VERMA);
    let a = g.vertex_set(&["2", "4"])?;
    let b = g.vertex_set(&["2", "3"])?;
    let p = g.vertex_set(&["2", "4"])?;
    let q = g.vertex_set(&["2", "3", "4"])?;
    let cert = min_restricted_cut(&g, &a, &b, &p, &q)?;
    println!("{}", serde_json::to_string_pretty(&cert.to_json(&g))?);
    println!("recheck: {}", cert.recheck(&g)?);
    println!("generic rank: {}", generic_rank(&g, &a, &b, &p, &q)?);
    let all = g.all_vertices();
    let unrestricted = min_restricted_cut(&g, &a, &b, &all, &all)?;
    println!("unrestricted cut size: {}", unrestricted.size);
    Ok(())
}
