use std::fs;
use std::path::Path;

use super::registry::Artifact;
use crate::error::{Error, Result};

/// Writes every artifact into `dir`, creating it if needed.
pub fn write_artifacts(dir: &Path, artifacts: &[Artifact]) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for a in artifacts {
        let path = dir.join(&a.file_name);
        fs::write(&path, &a.contents).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}
