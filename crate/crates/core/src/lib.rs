//! Exact-arithmetic toolkit for hyperbolic polynomials.

pub mod bezout;
pub mod certificates;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod hyperbolic;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod polymatrix;
pub mod rational;
pub mod roots;
pub mod sampling;

pub use error::{Error, Result};
pub use poly::{Homogeneity, Monomial, MvPoly, UvPoly};
pub use rational::Q;
pub use linalg::{ldl_psd_check, PsdCertificate, QMatrix};
pub use roots::{all_roots_real, isolate_roots, sturm_count, Bound, RootInterval, RootIsolation};
pub use hyperbolic::{HyperbolicContext, Membership, TestConfig};
pub use polymatrix::PolyMatrix;
pub use graph::Graph;
