//! Command line and HTTP front ends for the `kolam` engine.

pub mod api;
pub mod cli;
pub mod service;
