//! A numerical laboratory for renormalization in the real quadratic family.
//!
//! The crate revolves around four objects:
//!
//! - the quadratic family `x -> x² + c` on `c in [-2, 1/4]` ([`dyncore`]);
//! - the real principal nest of first-return intervals around the critical
//!   point, with central cascades and renormalization detection ([`nest`]);
//! - truncated even analytic germs `f(x) = v(x²)`, `f(0) = 1`, on which the
//!   renormalization operator acts, together with Newton solves for its
//!   fixed germs and the spectrum of its truncated linearization ([`germ`]);
//! - parameter-space geometry: renormalization windows, the window-to-
//!   interval map sigma, measure and distortion statistics ([`paramgeo`]),
//!   and hyperbolicity diagnostics along orbits of the operator ([`hyper`]).
//!
//! All arithmetic runs at a configurable decimal precision ([`real::Prec`]),
//! 50 digits by default. Expensive inner loops (jacobian columns, window
//! sweeps, nest batches) are data-parallel and fan out over rayon when the
//! `parallel` feature (default) is enabled.

pub mod config;
pub mod dyncore;
pub mod error;
pub mod interval;
pub mod matrix;
pub mod par;
pub mod poly;
pub mod real;

pub use config::Ctx;
pub use error::{Error, Result};
pub use real::{Prec, Real};
