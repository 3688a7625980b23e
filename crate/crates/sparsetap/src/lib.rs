//! Trains a small two-layer LSTM language model with exact manual
//! backpropagation, taps the activation and gradient vectors flowing between
//! layers at every timestep, and measures how concentrated those vectors are
//! using the norm-ratio sparsity score chi(v) = ||v||_2 / ||v||_1.
//!
//! The library is organized around the training pipeline:
//!
//! - [`corpus`]: tokenization, rare-word filtering, vocabulary building,
//!   POS association, and synthetic Zipf corpora for tests.
//! - [`model`]: the LSTM language model with explicit forward and backward
//!   passes, so every tap vector is available exactly per timestep.
//! - [`trainer`]: deterministic SGD loop with BPTT windows, gradient
//!   clipping, plateau learning-rate decay, and tap delivery to sinks.
//! - [`analysis`]: streaming per-word chi statistics, Pearson correlations
//!   of sparsity against word frequency, and POS-class comparisons.
//! - [`report`]: run manifests plus CSV tables and SVG figures.
//! - [`cli`]: the `prep` / `train` / `analyze` / `report` subcommands.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod model;
pub mod report;
pub mod taps;
pub mod trainer;
pub mod util;

use std::path::PathBuf;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("config error: {0}")]
    Config(String),
    #[error("corpus error: {0}")]
    Corpus(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("non-finite value encountered: {0}")]
    Numeric(String),
    #[error("analysis error: {0}")]
    Analysis(String),
    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
