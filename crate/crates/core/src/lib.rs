//! Computational toolkit for crepant resolutions of affine Calabi-Yau threefolds
//! and the quivers with potential attached to them.
//!
//! The crate is organised bottom-up:
//!
//! * [`series`]: exact truncated power series (multivariate, and Laurent in one variable).
//! * [`algebra`]: quivers, paths, cyclic words, potentials and their cyclic derivatives.
//! * [`mckay`]: McKay quivers of diagonal abelian subgroups of `SL(3, C)`.
//! * [`representations`]: monomial representations, King stability, Cartan matrices,
//!   root systems and walls.
//! * [`crystal`]: molten-crystal enumeration of framed cyclic modules and NCDT series.
//! * [`toric`]: lattice polygons, unit triangulations, flops, dual webs and the
//!   topological vertex.
//! * [`geometry`]: exact verification of chart gluings, contractions and torus actions.
//! * [`compare`]: side-by-side NCDT / GW comparison sheets.

pub mod algebra;
pub mod compare;
pub mod crystal;
pub mod geometry;
pub mod mckay;
pub mod representations;
pub mod series;
mod error;
pub mod toric;

pub use error::{Error, Result};
