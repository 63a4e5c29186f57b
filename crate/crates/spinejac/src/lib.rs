//! File formats, reports and the command layer on top of [`spinejac_core`].

pub mod commands;
pub mod format;
pub mod parallel;
pub mod properties;
pub mod report;

pub use spinejac_core as core;
