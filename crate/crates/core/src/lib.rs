//! Exact computation with associative composition algebras.

pub mod budget;
pub mod clifford;
pub mod codec;
pub mod crank;
pub mod exactfields;
pub mod fixtures;
pub mod linalg;
pub mod matalg;
pub mod poincare;
pub mod quatalg;
pub mod rng;
pub mod weylinv;
pub mod zmod;
