//! IO, file formats, reports, and the command layer on top of
//! [`embedkit_core`].
//!
//! The core crate is `no_std` and pure; everything that touches files,
//! threads, or the terminal lives here.

pub mod format;
pub mod report;
pub mod run;

pub use embedkit_core as core;
