//! Elliptic integrals, Jacobi elliptic functions and the singular modulus
//! `k = sin(π/12)`, together with the constructions in which it appears:
//! Ramanujan's ellipse perimeter, the three-body choreography on the
//! lemniscate, pendulum renormalization and the Pólya return probability of
//! the cubic lattice.
//!
//! The numerical core is generic over the scalar type through [`Real`]
//! (implemented for `f32` and `f64`). The `*64` aliases below fix the scalar
//! to `f64`, which is what the verification harness and CLI use.

// negated comparisons reject NaN; reference constants keep all their digits
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod choreography;
pub mod cli;
pub mod elliptic;
pub mod error;
pub mod gamma;
pub mod jacobi;
pub mod quadrature;
pub mod ramanujan;
pub mod randomwalk;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Modulus64 = elliptic::Modulus<f64>;
pub type Amplitude64 = elliptic::Amplitude<f64>;
pub type JacobiTriple64 = jacobi::JacobiTriple<f64>;
pub type Vec2d = choreography::Vec2<f64>;
pub type BodyState64 = choreography::BodyState<f64>;
pub type EllipseSpec64 = ramanujan::EllipseSpec<f64>;
pub type PendulumSpec64 = ramanujan::PendulumSpec<f64>;
pub type SeriesSum64 = elliptic::SeriesSum<f64>;
