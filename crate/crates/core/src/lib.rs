//! Peak-point constructions for uniform algebras on compact planar sets.

// `!(x > 0.0)` is used on purpose so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary_sets;
pub mod chains;
pub mod conformal;
pub mod error;
pub mod geometry;
pub mod kissing_path;
pub mod moebius;
pub mod peaking;
pub mod products;
pub mod region;
pub mod svg;
pub mod teardrop;

pub use error::{Error, Result};
pub use geometry::{c, Complex};
