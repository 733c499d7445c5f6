//! Elastic curves in the hyperbolic upper half-plane.
//!
//! The crate is `no_std` (with `alloc`) and covers:
//! - `elliptic`: Jacobi elliptic functions and complete/incomplete integrals (AGM, Landen, Carlson)
//! - `hypgeo`: discrete curves in H², curvature, Möbius maps, turning number, simplicity
//! - `elastica`: classification of curvature profiles, Killing fields, explicit parametrization
//! - `closing`: closing conditions, closed-elastica records, figure-eights, Reilly quotients
//! - `flow`: semi-implicit L² elastic flow with energy-monotone step control
#![no_std]
// when std is linked (tests, dev-dependency feature unification) its inherent float
// methods shadow `num_traits::Float`
#![allow(unused_imports)]

extern crate alloc;

pub mod closing;
pub mod elastica;
pub mod elliptic;
pub mod error;
pub mod flow;
pub mod hypgeo;
pub mod quad;
pub mod roots;

pub use error::{Error, Result};
