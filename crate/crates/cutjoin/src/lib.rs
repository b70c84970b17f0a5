//! File formats, the on-disk level cache and the command-line front end for
//! [`cutjoin_core`].

pub mod cache;
pub mod cli;
pub mod commands;
pub mod report;

pub use cache::{Cache, CacheError, Manifest, CACHE_ENV, CACHE_VERSION};
