//! Exact quantum invariants of planar diagrams.
//!
//! * [`laurent`] — Laurent polynomials in `q` with half-integer exponents.
//! * [`diagram`] — slice-word diagrams, parsing, arcs, writhe and rotation.
//! * [`moy_bracket`] — the `sl(N)` MOY graph polynomial and colored crossings.
//! * [`kauffman`] — Kauffman and Kauffman–Vogel polynomials at `a = q^{N-1}`.
//! * [`jaeger`] — balanced orientations and the generalized Jaeger sum.
//! * [`transforms`] — circuit and component reversal, 2-coloring, graph shadows.
//! * [`composition`] — labellings and the composition product.
//! * [`cli`] — the `moykv` command-line front end.

pub mod cli;
pub mod composition;
pub mod diagram;
pub mod error;
pub mod laurent;
pub mod jaeger;
pub mod kauffman;
pub mod moy_bracket;
pub mod transforms;

#[cfg(test)]
mod testutil;

pub use error::{MoyError, Result};
pub use laurent::HalfLaurent;
