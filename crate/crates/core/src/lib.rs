//! Exact plurigenus arithmetic for minimal threefolds of general type.
//!
//! - [`reid`]: basket points `1/r(a,-a,1)`, correction terms and the singular
//!   Riemann–Roch plurigenus formula.
//! - [`wps`]: hypersurfaces in weighted projective 4-space and their
//!   plurigenera by monomial counting.
//! - [`infer`]: recovering a basket from a plurigenus sequence.
//! - [`bounds`]: the `xi`/`alpha` inequality engine certifying birationality
//!   of pluricanonical maps, with replayable traces and the preset catalog.
//! - [`verify`] and [`report`]: the golden checkpoint harness.
//! - [`cli`]: the `plurilab` command line.
//!
//! Everything is computed with arbitrary-precision rationals; there is no
//! floating point on any computation path.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod infer;
mod lp;
pub mod rational;
pub mod reid;
pub mod report;
pub mod verify;
pub mod wps;

pub use error::{BoundsError, InferError, ParseError, ReidError, WpsError};
pub use infer::{infer_basket, solve_missing, InferenceProblem, InferenceResult, Missing};
pub use rational::Rational;
pub use reid::{correction, reid_plurigenus, Basket, BasketSingularity, PluriData};
pub use wps::WeightedHypersurface;
