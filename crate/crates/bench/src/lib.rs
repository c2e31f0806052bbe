//! Shared inputs for the criterion benches.

use mu_core::geometry::{Chart, ChartLabel};
use mu_core::MultiPoly;

/// The nine V12 chart equations.
pub const V12: [&str; 9] = [
    "5*a2 + 3*a7",
    "a3 + 9*a8",
    "2*a2*a5 - 2*a1*a6 + a4/5",
    "10*a1 - a11",
    "5*a2 - 9*a12",
    "6*a2*a9 - 6*a1*a10 - a3",
    "6*a5 + a10",
    "5*a6 + a11",
    "2*a6*a9 - 2*a5*a10 - a7/3 - a12/5",
];

pub fn v12_generators() -> Vec<MultiPoly> {
    let c = Chart::new(ChartLabel::P12);
    V12.iter().map(|s| c.ring().parse(s).unwrap()).collect()
}
