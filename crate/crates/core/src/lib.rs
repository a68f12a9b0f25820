//! Finite-ring linear algebra and complemented categories of free modules.

pub mod catcore;
pub mod error;
pub mod matrix;
pub mod ring;
pub mod si;
pub mod vic;
pub mod wporder;

pub use error::{Error, Result};
pub use matrix::Mat;
pub use ring::{make_ring, Elem, FiniteRing};
