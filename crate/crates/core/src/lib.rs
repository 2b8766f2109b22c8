//! Finite-dimensional frame computations: dual-pair frames, operator-valued
//! frame pairs, group-generated frames, perturbation certificates and the
//! sequential ℓᵖ theory.
//!
//! Everything here is `no_std` + `alloc`; file formats and the command line
//! live in the `framekit` crate.
#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod analysis;
pub mod constructors;
pub mod error;
pub mod frame;
pub mod numerics;
pub mod ovf;
pub mod pframes;

pub use error::{Error, Result};
pub use numerics::{Field, Interval, Mat, Tolerance, C64};
