//! File formats, reports and parallel execution for `aqci-core`.

pub mod dot;
pub mod json;
pub mod report;

use std::fs;
use std::io::Read;
use std::path::Path;

pub use json::LoadError;

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}
