//! Exact construction and checking of nonderived n-ary structures built
//! from binary ones by block-shift matrices.

pub mod blockshift;
pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod io;
pub mod matrix;
pub mod scalar;
pub mod shiftdeform;
pub mod verify;

pub use blockshift::BlockShiftMatrix;
pub use error::{Error, Result};
pub use matrix::{Matrix, SuperMatrix};
pub use scalar::{ComplexRational, Domain, GrassmannElement, Parity, Scalar, TextScalar, Turn};
