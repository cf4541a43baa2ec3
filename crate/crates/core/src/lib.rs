//! Exact equivariant localisation on toric Kähler manifolds and toric test configurations.

pub mod charge;
pub mod cli;
pub mod error;
pub mod exact;
pub mod invariants;
mod linalg;
pub mod localize;
pub mod polytope;
pub mod testconfig;

pub use charge::{CentralCharge, ChernPolynomial, StabilityVector, ThetaPolynomial};
pub use error::{Error, Result};
pub use exact::{GaussianRational, Rational};
pub use localize::{EquivariantIntegrand, LocalizedValue, Parameter};
pub use polytope::{DelzantPolytope, Facet, PolytopeSpec, VertexFrame};
pub use testconfig::{product_tc, trivial_tc, ToricTestConfiguration};
