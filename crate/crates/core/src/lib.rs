//! Outage and secrecy-outage analysis of network-coded cooperative
//! transmission over Rayleigh block-fading channels.
//!
//! Closed forms live in [`channel`], [`reliability`] and [`secrecy`];
//! [`montecarlo`] estimates the same quantities by simulation and
//! [`oracle`] enumerates erasure patterns exactly.

// `!(x > 0.0)` is the NaN-rejecting domain check used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// quadrature nodes and Lanczos coefficients are kept as published
#![allow(clippy::excessive_precision)]

pub mod channel;
pub mod error;
pub mod identities;
pub mod math;
pub mod montecarlo;
pub mod oracle;
pub mod quadrature;
pub mod reliability;
pub mod secrecy;
pub mod special;

pub use channel::{EffectiveSnr, LinkBudget, PathLoss};
pub use error::{Error, Result};
pub use montecarlo::{Coupling, Estimate, LegitIntersource, NoCsiEstimate, SamplingMode, Scheme, SimConfig};
pub use reliability::{GncParams, HighSnrForm, IntersourceMode};
pub use secrecy::{GncCsiMethod, GncNoCsiMethod, SecrecyRates, SopBreakdown};
