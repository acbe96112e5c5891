//! Input formats, corpora, experiments and reports around `dgc-core`.

pub mod config;
pub mod corpus;
pub mod curve_file;
pub mod experiment;
pub mod instance;
pub mod regression;
pub mod report;
pub mod scan;
