use std::path::PathBuf;

use ramlab_core::arith::ArithError;
use ramlab_core::beckmann::BeckmannError;
use ramlab_core::perm::PermError;
use ramlab_core::rigidity::RigidityError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Rigidity(#[from] RigidityError),
    #[error(transparent)]
    Beckmann(#[from] BeckmannError),
}

impl CliError {
    /// 2 for bad input, 3 when a resource cap stopped the computation.
    pub fn exit_code(&self) -> i32 {
        let capped = matches!(
            self,
            CliError::Perm(PermError::CapExceeded { .. } | PermError::SearchExhausted(_))
                | CliError::Rigidity(RigidityError::Perm(
                    PermError::CapExceeded { .. } | PermError::SearchExhausted(_)
                ))
                | CliError::Beckmann(BeckmannError::Arith(ArithError::DegreeCap { .. }))
        );
        if capped {
            3
        } else {
            2
        }
    }
}
