//! Run every check on every component and print the report as a table.

use std::sync::Arc;

use quiver_lagrangian::quiver::{DimVector, Quiver};
use quiver_lagrangian::verify::{run_suite, Outcome, SuiteConfig};

fn main() -> quiver_lagrangian::Result<()> {
    let q = Arc::new(Quiver::one_vertex(2));
    let report = run_suite(&q, &DimVector(vec![3]), &SuiteConfig::default())?;
    print!("{}", report.to_table());
    println!(
        "pass {} / fail {} / inconclusive {}",
        report.count(Outcome::Pass),
        report.count(Outcome::Fail),
        report.count(Outcome::Inconclusive)
    );
    Ok(())
}
