//! Enumerate the irreducible components of Λ(α) for a few quivers.

use std::sync::Arc;

use quiver_lagrangian::components::{enumerate_components, EnumerationConfig};
use quiver_lagrangian::quiver::{DimVector, Quiver};

fn main() -> quiver_lagrangian::Result<()> {
    let cfg = EnumerationConfig::default();
    for (name, q, alpha) in [
        ("jordan", Quiver::jordan(), vec![4]),
        ("two loops", Quiver::one_vertex(2), vec![3]),
        ("A2", Quiver::linear(2), vec![1, 2]),
    ] {
        let q = Arc::new(q);
        let cat = enumerate_components(&q, &DimVector(alpha), &cfg)?;
        println!("{name}: {} components", cat.components.len());
        for c in &cat.components {
            println!("  {:<24} dim {}  eps {:?}", c.label.short(), c.dim, c.eps);
        }
    }
    Ok(())
}
