//! Distinguished constructible functions on a quiver with several vertices.

use std::sync::Arc;

use quiver_lagrangian::algebra::{AlgebraConfig, Distinguisher};
use quiver_lagrangian::components::enumerate_components;
use quiver_lagrangian::quiver::{DimVector, Quiver};

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::linear(2));
    let alpha = DimVector(vec![1, 2]);
    let cfg = AlgebraConfig::default();
    let cat = enumerate_components(&q, &alpha, &cfg.enumeration)?;
    let mut d = Distinguisher::new(q.clone(), &cat, cfg);
    let (labels, funcs, m) = d.all(&alpha)?;
    for (l, f) in labels.iter().zip(&funcs) {
        println!("f_{} = {f}", l.short());
    }
    for row in m {
        println!("{}", row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    }
    Ok(())
}
