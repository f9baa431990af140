//! Intervals, piecewise constant/affine functions and self-maps.

mod interval;
mod piecewise;
mod self_map;

pub use interval::{Interval, EQ_TOL};
pub use piecewise::{Piece, PieceKind, PiecewiseFunc, Side};
pub use self_map::SelfMap;
