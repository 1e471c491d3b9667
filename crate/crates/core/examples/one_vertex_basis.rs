//! Triangular basis of the one-vertex convolution algebra.

use std::sync::Arc;

use quiver_lagrangian::algebra::{one_vertex_basis, AlgebraConfig};
use quiver_lagrangian::quiver::Quiver;

fn main() -> quiver_lagrangian::Result<()> {
    let cfg = AlgebraConfig::default();
    for q in [Quiver::jordan(), Quiver::one_vertex(2)] {
        let q = Arc::new(q);
        for l in 2..=3 {
            let b = one_vertex_basis(&q, l, &cfg)?;
            println!("g={} α={l} unitriangular={}", b.loops, b.is_unitriangular());
            for e in &b.entries {
                println!("  1_{:?} = {}", e.w, e.expr);
            }
        }
    }
    Ok(())
}
