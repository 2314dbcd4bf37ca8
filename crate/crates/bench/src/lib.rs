//! Benchmark fixtures.

use hyperembed::textio::parse_polynomial;
use hyperembed::{Polynomial, VarSet};

/// Parses `polys` over `vars`; panics on malformed fixtures.
pub fn fixture(vars: &[&str], polys: &[&str]) -> (VarSet, Vec<Polynomial>) {
    let ring = VarSet::new(vars.iter().copied()).expect("valid fixture variables");
    let gens = polys
        .iter()
        .map(|p| parse_polynomial(p, &ring).expect("valid fixture polynomial"))
        .collect();
    (ring, gens)
}
