//! Compute the slice T at a sample and check that ω vanishes on it.

use std::sync::Arc;

use quiver_lagrangian::components::ComponentLabel;
use quiver_lagrangian::flags::canonical_flag;
use quiver_lagrangian::quiver::{DimVector, Quiver};
use quiver_lagrangian::sampler::{Sampler, SamplerConfig};
use quiver_lagrangian::verify::{check_dimension, check_isotropy, tangent_space};

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::jordan());
    let alpha = DimVector(vec![3]);
    let label = ComponentLabel::parse(&q, &alpha, "2,1")?;
    let x = Sampler::new(&SamplerConfig::default()).component(&q, &label)?;
    let flag = canonical_flag(&x).expect("samples are seminilpotent");
    let t = tangent_space(&x, &flag)?;
    println!("dim T = {} (ambient {})", t.len(), x.coordinate_count());
    println!("{:?}", check_isotropy(&x, &flag, &label.short(), None).to_json());
    println!("{:?}", check_dimension(&x, &flag, &label.short(), None).to_json());
    Ok(())
}
