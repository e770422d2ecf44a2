//! Prediction-interval regression with a hybrid uncertainty loss.
//!
//! A small two-headed network emits a `(lower, upper)` bound per sample. It is
//! trained on a loss that couples a Gaussian-likelihood style term (interval
//! width standing in for the noise variance) with a penalty for falling short
//! of a target coverage level. Several networks trained from different seeds
//! form an ensemble; the spread of their bounds widens the final interval.
//!
//! Module map:
//!
//! - [`autodiff`]: scalar reverse-mode tape used for every gradient.
//! - [`model`]: the two-output MLP, intervals, snapshot files.
//! - [`losses`]: hybrid loss and the LUBE, MBPEP and pinball comparisons.
//! - [`metrics`]: hard coverage / width evaluation.
//! - [`ensemble`]: member training and variance-widened aggregation.
//! - [`data`]: toy generators, CSV ingestion, standardization, splits.
//! - [`trainer`]: mini-batch training loop and lambda sweeps.
//! - [`experiment`]: benchmark and toy protocols built from the above.
//! - [`cli`]: the `ubpi` command-line front end.
//! - [`plot`]: SVG emission for interval plots.

pub mod autodiff;
pub mod cli;
pub mod data;
pub mod ensemble;
mod error;
pub mod experiment;
pub mod losses;
pub mod metrics;
pub mod model;
pub mod plot;
pub mod trainer;

pub use error::{Error, Result};
