//! Kernel dimension of the extension map φ against (2g−1) l (α−l).

use quiver_lagrangian::sampler::SamplerConfig;
use quiver_lagrangian::verify::check_fiber_formula;

fn main() {
    let cfg = SamplerConfig::default();
    for (g, w) in [(2, vec![1, 1]), (2, vec![2, 1]), (2, vec![1, 2]), (3, vec![1, 2]), (2, vec![1, 1, 2])] {
        let r = check_fiber_formula(&w, g, &cfg);
        println!("g={g} w={w:?}: {} {:?}", r.outcome.as_str(), r.data);
    }
}
