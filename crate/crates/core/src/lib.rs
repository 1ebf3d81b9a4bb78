//! Exact matrix models of Quot schemes of points on affine space and of
//! framed sheaves on the projective plane.
//!
//! Points are tuples of matrices over ℚ or 𝔽_p. Everything here is exact:
//! ranks, kernels and tangent dimensions are computed by Gaussian
//! elimination over the field, never in floating point.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command-line
//! driver and parallel enumeration live in the `quotlab` crate.

#![no_std]

extern crate alloc;

pub mod adhm;
pub mod enumerate;
pub mod error;
pub mod matrix;
pub mod potential;
pub mod rep;
pub mod sample;
pub mod scalar;
pub mod slope;
pub mod tangent;

pub use error::{Error, Result};
pub use matrix::{Matrix, Rref, Span, Vector};
pub use rep::{etale_point, gauge_act, punctual_point, FramedRep, GaugeElement};
pub use scalar::{Field, Scalar};
pub use tangent::{classify_point, TangentReport, Verdict};
