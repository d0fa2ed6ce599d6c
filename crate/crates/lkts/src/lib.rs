//! File formats, certification of design files, and the `lkts` command line
//! on top of [`lkts_core`].

pub mod base_file;
pub mod certify;
pub mod cli;
pub mod design_file;
pub mod labels;

pub use base_file::{load_base, read_base, render_base, BaseFileError, Form};
pub use certify::{certify_file, certify_paths, Level, Report};
pub use design_file::{DesignFile, DesignFileError};
pub use labels::{Encoding, PointLabels};
