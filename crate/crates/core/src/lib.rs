//! Homology, cohomology ring, Steenrod squares and the Adem secondary
//! operation of finite simplicial complexes over GF(2).

pub mod adem;
pub mod at_model;
pub mod complex;
pub mod contraction;
pub mod coops;
pub mod error;
pub mod fixtures;
pub mod gf2;
pub mod io;
pub mod reductions;
pub mod report;
pub mod simplex;

pub use at_model::{ATModel, TauStrategy};
pub use complex::{FilteredComplex, OrderPolicy, VertexMap};
pub use contraction::{ChainContraction, Contraction, Identity, Violation};
pub use error::{Error, Result};
pub use gf2::{GF2Matrix, GF2Vector};
pub use simplex::{Chain, Simplex, Vertex};
