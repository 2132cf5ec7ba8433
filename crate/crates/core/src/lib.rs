//! Exact computational toolkit for Gaussian graphical models whose graphs
//! are block graphs (1-clique sums of complete graphs).
//!
//! The central objects are three ideals attached to a graph `G` in the
//! covariance coordinates `s_ij`:
//!
//! * the vanishing ideal of the model — the kernel of the pullback that
//!   sends `s_ij` to the adjugate entry `f_ij` of the concentration matrix,
//! * the conditional-independence ideal — minors of covariance submatrices
//!   coming from graph separations,
//! * the shortest-path toric ideal — the kernel of the monomial map sending
//!   `s_ij` to `a_i a_j` times the product of `k_e` along the unique
//!   geodesic from `i` to `j`.
//!
//! For block graphs all three coincide and are generated in degree two;
//! everything here exists to compute, certify, or refute that — exactly,
//! over the rationals, with no floating point anywhere.

pub mod ci;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod linalg;
pub mod maps;
pub mod poly;
pub mod symlin;
pub mod toric;

pub use error::{Error, Result};
