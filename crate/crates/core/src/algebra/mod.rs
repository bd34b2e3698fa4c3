//! Exact arithmetic: Laurent polynomials, factored fractions, rational lattices
//! and variable layouts.

pub mod frac;
pub mod lattice;
pub mod poly;
pub mod ring;
pub mod series;

pub use frac::{Den, Frac};
pub use lattice::{Lattice, QVec, Q};
pub use poly::{Mono, Poly};
pub use ring::Ring;
pub use series::{ConeFrame, ConeSeries};

/// Elements of the coefficient field are fractions without lattice variables.
pub type Scalar = Frac;
