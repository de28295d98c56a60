//! Determinant maximization over W_Y and C_Y, the pencil and rank-4
//! closed forms, Carathéodory reduction and an exact LP.

pub mod caratheodory;
pub mod cmax;
pub mod lp;
pub mod pencil;
pub mod rank4;
pub mod slice;
pub mod wmax;

pub use caratheodory::caratheodory_reduce;
pub use cmax::{kkt_gap, maximize_logdet_c, HullPoint};
pub use pencil::{pencil_maximize, PencilResult};
pub use rank4::{lagrange_quartic, rank4_lagrange, Rank4Candidate, Rank4Critical};
pub use slice::{build_slice, AffineSliceW};
pub use wmax::{
    maximize_logdet_w, maximize_logdet_w_from, WMaximum, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
