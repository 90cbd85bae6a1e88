//! A finite-model workbench for constraint satisfaction over fixed templates:
//! exact homomorphism search, polymorphism and Siggers machinery, lifted
//! languages, algebra-indexed structures, conservative valued templates, and
//! the reduction pipeline that ties them together — all at desk scale, with
//! brute-force oracles as ground truth.

pub mod algebra;
pub mod audit;
pub mod betweenness;
pub mod clone;
pub mod conservative;
pub mod error;
pub mod gamma_prime;
pub mod gen;
pub mod io;
pub mod lift;
pub mod multisorted;
pub mod op;
pub mod pipeline;
pub mod rational;
pub mod rng;
pub mod siggers;
pub mod solver;
pub mod structure;
pub mod templates;
pub mod transport;
pub mod valued;

pub use error::{Error, Result};
