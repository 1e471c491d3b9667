//! Euler characteristics of flag fibers by point counting over F_p.

use std::sync::Arc;

use quiver_lagrangian::algebra::euler::{euler_characteristic, OracleConfig};
use quiver_lagrangian::algebra::expr::tilde_word;
use quiver_lagrangian::field::Rationals;
use quiver_lagrangian::quiver::{DimVector, Quiver};
use quiver_lagrangian::rep::QRep;

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::jordan());
    let zero = QRep::zero(q.clone(), DimVector(vec![3]), Rationals);
    let cfg = OracleConfig::default();
    for w in [vec![1, 2], vec![2, 1], vec![1, 1, 1]] {
        let r = euler_characteristic(&zero, &tilde_word(0, &w), &cfg)?;
        println!("x = 0, steps {w:?}: χ = {}, counts {:?}", r.chi, r.counts);
    }
    let j = QRep::from_int(q, DimVector(vec![2]), &[vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]])?;
    let r = euler_characteristic(&j, &tilde_word(0, &[1, 1]), &cfg)?;
    println!("regular nilpotent, steps [1, 1]: χ = {}", r.chi);
    Ok(())
}
