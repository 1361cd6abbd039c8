//! Draws an exact model covariance, decides membership and recovers the
//! parameters; a perturbed matrix leaves the model.

use num_rational::BigRational;
use trekdet::gallery;
use trekdet::verifier::{fit_parameters, membership_check, sample_covariance, SampleSpec};

fn main() -> trekdet::Result<()> {
    let g = gallery::graph(gallery::VERMA);
    let sigma = sample_covariance(&SampleSpec::new(42), &g)?;
    println!("member: {}", membership_check(&g, &sigma)?);
    let fit = fit_parameters(&g, &sigma)?;
    println!("{}", serde_json::to_string_pretty(&fit.to_json(&g))?);
    let mut off = sigma.clone();
    let bump = BigRational::new(1.into(), 7.into());
    off[(0, 3)] += &bump;
    off[(3, 0)] += &bump;
    println!("perturbed member: {}", membership_check(&g, &off)?);
    Ok(())
}
