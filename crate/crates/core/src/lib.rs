//! Rational torsion of elliptic curves and its growth along the cyclotomic
//! Z_p-extensions of Q.

pub mod arith;
pub mod poly;
pub mod ec;
pub mod torsion;
pub mod tower;
pub mod classifier;
pub mod generator;
