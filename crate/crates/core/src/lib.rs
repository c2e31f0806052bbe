//! Exact algebra for the torus-fixed curves of the Mukai-Umemura threefold.

pub mod bb;
pub mod deformation;
pub mod error;
pub mod geometry;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod skew_net;
pub mod sl2;

pub use error::{Error, Result};
pub use groebner::{GroebnerBasis, Ideal};
pub use poly::{Monomial, MonomialOrder, MultiPoly, PolyRing, WeightAssignment};
pub use rational::Rational;
