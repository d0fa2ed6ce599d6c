//! Certification of design files at STS, KTS or LKTS level.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use lkts_core::verify::{verify_kts, verify_sts, Check, LargeSetVerifier, Witness};
use lkts_core::{Certificate, ClassId};
use rayon::prelude::*;

use crate::design_file::DesignFile;
use crate::labels::{Encoding, PointLabels};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Sts,
    Kts,
    Lkts,
}

#[derive(Debug)]
pub struct FileReport {
    pub path: PathBuf,
    pub file: Option<DesignFile>,
    pub cert: Certificate,
}

impl FileReport {
    /// Certificate text with points in the file's own encoding.
    pub fn render(&self) -> String {
        match &self.file {
            Some(f) => self.cert.render(&|p| f.labels.label(p, f.encoding)),
            None => self.cert.to_string(),
        }
    }
}

#[derive(Debug)]
pub struct Report {
    pub files: Vec<FileReport>,
    pub overall: Certificate,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.overall.passed() && self.files.iter().all(|f| f.cert.passed())
    }
}

/// Class ids in range for `F_q^n` and not repeated.
fn check_class_ids(file: &DesignFile) -> Check {
    let (q, n) = (file.labels.q() as u64, file.labels.n());
    let lines = (q.pow(n) - 1) / (q - 1);
    let t = (q as u32 - 1) / 6;
    let mut seen = BTreeSet::new();
    for (id, _) in &file.classes {
        let ok = match *id {
            ClassId::Star => true,
            ClassId::Frame { line, a, b } => (line as u64) < lines && a < t && b < 3,
        };
        if !ok {
            return Check::fail("class-ids", Witness::Text(format!("class id {id} out of range")));
        }
        if !seen.insert(*id) {
            return Check::fail("class-ids", Witness::Text(format!("class id {id} repeated")));
        }
    }
    Check::pass("class-ids")
}

pub fn certify_file(path: &Path, text: &str, level: Level) -> FileReport {
    let file = match DesignFile::parse(text) {
        Ok(f) => f,
        Err(e) => {
            let mut cert = Certificate::new(path.display().to_string());
            cert.push(Check::fail("parse", Witness::Text(e.to_string())));
            return FileReport { path: path.into(), file: None, cert };
        }
    };
    let order = file.order();
    let mut cert = match level {
        Level::Sts => verify_sts(file.blocks(), order),
        Level::Kts | Level::Lkts => {
            let classes: Vec<&[_]> = file.classes.iter().map(|(_, c)| c.as_slice()).collect();
            let mut cert = verify_kts(&classes, order);
            cert.push(check_class_ids(&file));
            cert
        }
    };
    cert.subject = format!("{} (w = {})", path.display(), file.w_label());
    FileReport { path: path.into(), file: Some(file), cert }
}

/// Certifies every file; files are read and checked in parallel, the large
/// set check runs over them in `w` order.
pub fn certify_paths(paths: &[PathBuf], level: Level) -> Report {
    let mut files: Vec<FileReport> = paths
        .par_iter()
        .map(|path| match std::fs::read_to_string(path) {
            Ok(text) => certify_file(path, &text, level),
            Err(e) => {
                let mut cert = Certificate::new(path.display().to_string());
                cert.push(Check::fail("read", Witness::Text(e.to_string())));
                FileReport { path: path.clone(), file: None, cert }
            }
        })
        .collect();
    files.sort_by(|a, b| {
        let key = |r: &FileReport| r.file.as_ref().map(|f| f.w.clone());
        key(a).cmp(&key(b)).then_with(|| a.path.cmp(&b.path))
    });

    let level_name = match level {
        Level::Sts => "STS",
        Level::Kts => "KTS",
        Level::Lkts => "LKTS",
    };
    let mut overall = Certificate::new(format!("{} files at {level_name} level", files.len()));
    let none = files.is_empty().then(|| Witness::Text("no files matched".into()));
    overall.push(Check::from_option("files-found", none));
    let first_bad = files.iter().find(|f| !f.cert.passed()).map(|f| {
        let check = f.cert.first_failure().expect("failed certificate has a failing check");
        Witness::Design {
            label: f.path.display().to_string(),
            check: check.name.clone(),
            detail: check.witness.as_ref().map(|w| w.to_string()).unwrap_or_default(),
        }
    });
    overall.push(Check::from_option("files-pass", first_bad));

    if level == Level::Lkts {
        let parsed: Vec<&DesignFile> = files.iter().filter_map(|f| f.file.as_ref()).collect();
        let headers: BTreeSet<(u32, u32)> = parsed.iter().map(|f| (f.labels.q(), f.labels.n())).collect();
        overall.push(match headers.len() {
            0 | 1 => Check::pass("consistent-headers"),
            _ => Check::fail("consistent-headers", Witness::Text(format!("files disagree on (q, n): {headers:?}"))),
        });
        let mut ws = BTreeSet::new();
        let repeated = parsed
            .iter()
            .find(|f| !ws.insert(f.w.clone()))
            .map(|f| Witness::Text(format!("w = {} repeated", f.w_label())));
        overall.push(Check::from_option("distinct-w", repeated));
        if let (Some(first), 1) = (parsed.first(), headers.len()) {
            let mut verifier = LargeSetVerifier::new(first.order());
            for f in &files {
                if let Some(file) = &f.file {
                    verifier.absorb(&format!("w={}", file.w_label()), &f.cert, file.blocks());
                }
            }
            let set = verifier.finish();
            for check in set.checks.clone() {
                overall.push(check);
            }
            overall.counts = set.counts;
            overall.notes.extend(set.notes);
        }
    }
    if level != Level::Lkts {
        overall.counts.designs = files.len() as u64;
        overall.counts.blocks = files.iter().filter_map(|f| f.file.as_ref()).map(|f| f.blocks().count() as u64).sum();
    }
    Report { files, overall }
}

/// Labels for rendering the overall certificate.
pub fn report_labels(report: &Report) -> Option<(PointLabels, Encoding)> {
    report.files.iter().find_map(|f| f.file.as_ref().map(|f| (f.labels, f.encoding)))
}
