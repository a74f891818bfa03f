//! Library surface of the batch tool, exposed so integration tests can
//! drive the config parser and runners directly.

pub mod config;
pub mod report;
pub mod run;
