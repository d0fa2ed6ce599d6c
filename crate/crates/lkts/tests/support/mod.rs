//! Test-only helpers shared by integration tests.
#![allow(dead_code)]

pub mod oracle;
pub mod sts9;

use std::path::PathBuf;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}
