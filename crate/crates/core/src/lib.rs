//! Exact computations in `G_k = <g, h | (h^-1 g)^k>` (isomorphic to
//! `Z * Z_k` via `s = h g^-1`) and in the free group `F_2` (`k = inf`):
//! free-product normal forms, balls in the left Cayley graph, and weak
//! Sierpinski subsets.

pub mod analysis;
pub mod cayley;
pub mod cli;
pub mod engine;
pub mod error;
pub mod sierpinski;
pub mod words;

pub use engine::{GroupParam, NormalForm};
pub use error::{Error, Result};
pub use words::{Alphabet, Letter, Symbol, Word};
