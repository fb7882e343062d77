//! Exact-arithmetic equivariant L-functions over finite fields.
//!
//! The library computes Euler products of coefficient systems on varieties
//! over F_q with values in the center of a semisimple Q-algebra, reconstructs
//! them as rational functions, extracts vanishing orders and special values
//! at rational points, and independently computes the cohomological side
//! (characteristic rational fractions, semisimplicity decompositions,
//! refined Euler characteristic classes) so the two can be compared.
//!
//! Everything is exact: arbitrary-precision rationals, number fields given
//! by their defining polynomials, and integer linear algebra. There is no
//! floating point anywhere.

pub mod cohom;
pub mod coeffalg;
pub mod error;
pub mod exactalg;
pub mod ffgeom;
pub mod lseries;
pub mod pipeline;
pub mod report;
pub mod scenario;
pub mod sheaves;

pub use error::{Error, Result};
