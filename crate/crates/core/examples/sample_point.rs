//! Draw a certified generic point of a component and show its invariants.

use std::sync::Arc;

use quiver_lagrangian::components::{label_point, ComponentLabel};
use quiver_lagrangian::flags::{canonical_type, eps_all, k_type};
use quiver_lagrangian::quiver::{DimVector, Quiver};
use quiver_lagrangian::sampler::{Sampler, SamplerConfig};

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::one_vertex(2));
    let alpha = DimVector(vec![3]);
    let label = ComponentLabel::parse(&q, &alpha, "1,2")?;
    let x = Sampler::new(&SamplerConfig { seed: 42, ..SamplerConfig::default() }).component(&q, &label)?;
    println!("{}", x.fmt_maps());
    println!("mu = 0: {}", x.is_mu_zero());
    println!("canonical type: {:?}", canonical_type(&x));
    println!("eps: {:?}, K-type: {:?}", eps_all(&x), k_type(&x));
    println!("recovered label: {}", label_point(&x)?.short());
    Ok(())
}
