//! Finite fields F_{q^d}, varieties over F_q given by polynomial systems,
//! exhaustive point counting and closed points (Frobenius orbits).

mod cache;
mod field;
mod mpoly;
mod variety;

pub use cache::PointCountCache;
pub use field::{irreducible_poly_over, Embedding, FfElem, FiniteField};
pub use mpoly::{parse_poly, MultiPoly};
pub use variety::{count_points, closed_points_up_to, Ambient, Budget, ClosedPoint, Variety};
