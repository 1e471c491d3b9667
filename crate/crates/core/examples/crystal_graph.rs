//! Print the crystal graph on components of Λ(α) as DOT.

use std::sync::Arc;

use quiver_lagrangian::components::{enumerate_components, export_crystal_graph, EnumerationConfig};
use quiver_lagrangian::quiver::{DimVector, Quiver};

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::linear(2));
    let cat = enumerate_components(&q, &DimVector(vec![2, 2]), &EnumerationConfig::default())?;
    print!("{}", export_crystal_graph(&q, &cat));
    Ok(())
}
