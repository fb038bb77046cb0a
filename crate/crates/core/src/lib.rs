//! Spectra of k-uniform hypertrees via matching polynomials of their
//! connected induced subtrees.
//!
//! ```
//! use hypertree_spectra::{generate::comb, matching::matching_polynomial};
//!
//! let phi = matching_polynomial(&comb(3)).unwrap();
//! assert_eq!(phi.x_form(3), "x^9 - 4x^6 + 3x^3 - 1");
//! ```

pub mod eigen;
pub mod error;
pub mod generate;
pub mod hypergraph;
pub mod matching;
pub mod paperdata;
pub mod poly;
pub mod random;
pub mod roots;
pub mod spectra;
pub mod subtrees;

pub use error::{Error, Result};
pub use hypergraph::{InducedSubgraph, UniformHypergraph, Vertex, VertexSet};
pub use poly::{AlphaPolynomial, SparsePolynomial};
pub use spectra::{SpectrumConfig, SpectrumSet};
