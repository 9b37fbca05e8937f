use std::path::PathBuf;

use atam_core::{AtamError, TasError};
use block_sim::{RepError, SimError};
use iu_tables::TableError;
use supertile_engine::EngineError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Tas { path: PathBuf, source: TasError },
    #[error("{path}: {source}")]
    Rep { path: PathBuf, source: RepError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Atam(#[from] AtamError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Atam(AtamError::BudgetExceeded { .. })
            | CliError::Sim(SimError::BudgetExceeded { .. })
            | CliError::Table(TableError::TooLarge { .. })
            | CliError::Engine(EngineError::BudgetExceeded { .. })
            | CliError::Engine(EngineError::Table(TableError::TooLarge { .. })) => 3,
            _ => 2,
        }
    }
}
