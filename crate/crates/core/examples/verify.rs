//! Symbolic and seeded numeric vanishing checks, including a polynomial
//! that does not vanish and the witness reported for it.

use trekdet::gallery;
use trekdet::verifier::{vanishes_numerically_with, vanishes_symbolically, NumericCheck};
use trekdet::Polynomial;

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VERMA);
    let labels = g.labels();
    let f = gallery::polynomial(gallery::F_VERMA, 4);
    let v = vanishes_symbolically(&g, &f, 0)?;
    println!("f_Verma symbolic: {}", serde_json::to_string(&v.to_json(labels))?);
    let mut opts = NumericCheck::new(8, 7);
    opts.modulus = Some(trekdet::poly::DEFAULT_PRIME);
    let v = vanishes_numerically_with(&g, &f, &opts)?;
    println!("f_Verma modular: {}", serde_json::to_string(&v.to_json(labels))?);
    let s13 = Polynomial::parse("s13", labels)?;
    let v = vanishes_symbolically(&g, &s13, 0)?;
    println!("s13: {}", serde_json::to_string(&v.to_json(labels))?);
    let cyclic = gallery::graph(gallery::CYCLIC);
    let h = gallery::nested(gallery::CYCLIC_NESTED, &cyclic).expand()?;
    let v = vanishes_numerically_with(&cyclic, &h, &NumericCheck::new(8, 1))?;
    println!("cyclic nested form: vanishes = {}", v.vanishes());
    Ok(())
}
