//! Knot invariants computed from planar diagram (PD) codes.

pub mod alexander;
pub mod catalog;
pub mod cli;
pub mod conventions;
pub mod diagram;
pub mod error;
pub mod jones;
pub mod khovanov;
pub mod laurent;
pub mod slice;

pub use diagram::{Crossing, GaussCode, Kink, PlanarDiagram, ReidemeisterMove, TangleRegion};
pub use error::*;
pub use laurent::{BivariatePoly, LaurentPoly};
