use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize, Debug, Clone)]
pub struct FileDigest {
    pub path: String,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(bytes)),
        }
    }
}

/// Everything needed to rerun a command and check its output.
#[derive(Serialize, Debug)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub seed: u64,
    pub threads: usize,
    pub config: Option<serde_json::Value>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
    pub wall_clock_seconds: f64,
}
