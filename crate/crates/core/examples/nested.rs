//! Parses nested determinant expressions from JSON and expands them into
//! canonical σ-polynomials.

use trekdet::constraints::{parental_expr, NestedDetExpr};
use trekdet::gallery;

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::BOW_FORK);
    let labels = g.labels();
    let e = gallery::nested(gallery::BOW_FORK_NESTED, &g);
    let f = e.expand()?;
    println!("depth {}, degree {:?}", e.depth(), f.degree());
    println!("{}", f.render(labels));
    let verma = gallery::graph(gallery::VERMA);
    let four = verma.vertex("4")?;
    let one = verma.vertex("1")?;
    let parental = parental_expr(&verma, four, &[one])?;
    println!("{}", serde_json::to_string(&parental.to_json(verma.labels()))?);
    let back = NestedDetExpr::from_json(&parental.to_json(verma.labels()), verma.labels())?;
    println!("round trip expands equal: {}", back.expand()? == parental.expand()?);
    Ok(())
}
