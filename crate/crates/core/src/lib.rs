//! Exact computation with higher-dimensional partitions.
//!
//! A `d`-dimensional partition is a finitely supported array of naturals on
//! `Z^d_+` that decreases weakly along every axis. The crate provides:
//!
//! - the last passage bijection between N-matrices and partitions,
//!   with its corner-weight preservation ([`bijection`]);
//! - corner statistics and the corner-hook volume ([`stats`]);
//! - exhaustive enumeration of partitions and matrices ([`enumerate`]);
//! - product formulas as truncated power series ([`series`]);
//! - multi-alphabet Grothendieck-type polynomials ([`groth`], [`poly`]);
//! - geometric last passage percolation ([`lpp`]).

pub mod array;
pub mod bijection;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod groth;
pub mod index;
pub mod lpp;
pub mod poly;
pub mod series;
pub mod stats;

pub use array::{DdPartition, NdArray};
pub use bijection::{phi, phi_inverse, WeightMonomial};
pub use diagram::DiagramSet;
pub use error::{Error, Result};
pub use index::{BoxIndexer, IndexVec};
pub use lpp::GeomParams;
pub use poly::{Composition, MultiPoly};
pub use series::TruncSeries;
pub use stats::StatRecord;
