//! Groups and covers from files, builtin names and the data directory.

use std::path::{Path, PathBuf};

use ramlab_core::beckmann::{Cover, BUILTIN_COVERS};
use ramlab_core::perm::builtin::{builtin, parse_generator_file};
use ramlab_core::perm::PermGroup;

use crate::config::as_path;
use crate::CliError;

/// Environment variable naming a directory that overrides the bundled data files.
pub const DATA_ENV: &str = "RAMLAB_DATA";

/// File name of the optional external M11 cover in the data directory.
pub const M11_COVER_FILE: &str = "m11_cover.txt";

pub fn data_dir() -> Option<PathBuf> {
    std::env::var_os(DATA_ENV).map(PathBuf::from)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_group(source: &str) -> Result<PermGroup, CliError> {
    match as_path(source) {
        Some(path) => Ok(parse_generator_file(&read(&path)?, None)?),
        None => Ok(builtin(source, data_dir().as_deref())?),
    }
}

pub fn load_cover(source: &str) -> Result<Cover, CliError> {
    if let Some(path) = as_path(source) {
        return Ok(Cover::parse(&read(&path)?)?);
    }
    if let Some(dir) = data_dir() {
        let path = dir.join(format!("{source}.txt"));
        if path.is_file() {
            return Ok(Cover::parse(&read(&path)?)?);
        }
    }
    Cover::builtin(source).ok_or_else(|| {
        CliError::Usage(format!("unknown cover {source:?}; builtin covers: {}", BUILTIN_COVERS.join(", ")))
    })
}

/// The external M11 cover, when present in the data directory.
pub fn m11_cover() -> Option<Result<Cover, CliError>> {
    let path = data_dir()?.join(M11_COVER_FILE);
    path.is_file().then(|| Ok(Cover::parse(&read(&path)?)?))
}
