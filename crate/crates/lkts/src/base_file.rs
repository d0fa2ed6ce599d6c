//! Text format for a base large set of KTS(q+2).
//!
//! ```text
//! BASE-LKTS q=13 p=13 k=1 form=compact
//! 0,inf1,inf2; 1,4,5; 2,6,11; 3,7,10; 8,9,12
//! ...
//! ```
//!
//! `form=compact` lists the `(q+1)/2` classes of `D_0`, one per line, and
//! the other designs are its translates. `form=full` has `q` sections, each
//! a `design <i>` line followed by that design's class lines. Designs are
//! reindexed by their `{inf1, inf2, i}` block on load. `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;

use lkts_core::base::RawDesigns;
use lkts_core::{normalize_base, BaseError, BaseLargeSet, Field, FieldError, Point, PointSet, Triple};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BaseFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
    #[error("invalid base: {0}")]
    Base(#[from] BaseError),
    #[error("compact form needs a translation-invariant base")]
    NotCompact,
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Form {
    Compact,
    Full,
}

fn parse_err(line: usize, msg: impl Into<String>) -> BaseFileError {
    BaseFileError::Parse { line, msg: msg.into() }
}

struct Header {
    field: Field,
    form: Form,
}

fn parse_header(line: usize, text: &str) -> Result<Header, BaseFileError> {
    let mut words = text.split_whitespace();
    if words.next() != Some("BASE-LKTS") {
        return Err(parse_err(line, "expected header `BASE-LKTS q=.. p=.. k=.. form=..`"));
    }
    let (mut q, mut p, mut k, mut form) = (None, None, None, None);
    for word in words {
        let (key, value) = word.split_once('=').ok_or_else(|| parse_err(line, format!("bad header field `{word}`")))?;
        let num = || value.parse::<u32>().map_err(|_| parse_err(line, format!("bad value for {key}: `{value}`")));
        match key {
            "q" => q = Some(num()?),
            "p" => p = Some(num()?),
            "k" => k = Some(num()?),
            "form" => {
                form = Some(match value {
                    "compact" => Form::Compact,
                    "full" => Form::Full,
                    _ => return Err(parse_err(line, format!("unknown form `{value}`"))),
                })
            }
            _ => return Err(parse_err(line, format!("unknown header field `{key}`"))),
        }
    }
    let missing = |name: &str| parse_err(line, format!("header lacks {name}="));
    let (q, p, k) = (q.ok_or_else(|| missing("q"))?, p.ok_or_else(|| missing("p"))?, k.ok_or_else(|| missing("k"))?);
    let form = form.ok_or_else(|| missing("form"))?;
    if p.checked_pow(k) != Some(q) {
        return Err(parse_err(line, format!("q = {q} is not p^k = {p}^{k}")));
    }
    Ok(Header { field: Field::new(p, k)?, form })
}

fn parse_point(set: PointSet, line: usize, token: &str) -> Result<Point, BaseFileError> {
    match token {
        "inf1" => Ok(set.inf1()),
        "inf2" => Ok(set.inf2()),
        _ => match token.parse::<u32>() {
            Ok(i) if i < set.finite() => Ok(Point(i)),
            Ok(i) => Err(parse_err(line, format!("point {i} outside GF({})", set.finite()))),
            Err(_) => Err(parse_err(line, format!("bad point `{token}`"))),
        },
    }
}

fn parse_class(set: PointSet, line: usize, text: &str) -> Result<Vec<Triple>, BaseFileError> {
    let mut class = Vec::new();
    for block in text.split(';').map(str::trim).filter(|b| !b.is_empty()) {
        let pts = block.split(',').map(|t| parse_point(set, line, t.trim())).collect::<Result<Vec<_>, _>>()?;
        let &[a, b, c] = pts.as_slice() else {
            return Err(parse_err(line, format!("block `{block}` does not have 3 points")));
        };
        class.push(Triple::new(a, b, c).ok_or_else(|| parse_err(line, format!("block `{block}` repeats a point")))?);
    }
    if class.is_empty() {
        return Err(parse_err(line, "empty class"));
    }
    Ok(class)
}

/// Parses a base file; the result is not yet certified (see
/// [`BaseLargeSet::validate`]).
pub fn load_base(text: &str) -> Result<BaseLargeSet, BaseFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, htext) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let Header { field, form } = parse_header(hline, htext)?;
    let q = field.order();
    let set = PointSet::with_finite(q);
    let per_design = (q as usize).div_ceil(2);
    let mut last_line = hline;
    match form {
        Form::Compact => {
            let mut classes = Vec::new();
            for (line, text) in lines {
                last_line = line;
                if classes.len() == per_design {
                    return Err(parse_err(line, format!("more than {per_design} class lines")));
                }
                classes.push(parse_class(set, line, text)?);
            }
            if classes.len() != per_design {
                return Err(parse_err(
                    last_line,
                    format!("expected {per_design} class lines, found {}", classes.len()),
                ));
            }
            Ok(BaseLargeSet::from_compact(&field, classes)?)
        }
        Form::Full => {
            let mut designs: RawDesigns = Vec::new();
            let mut seen = vec![false; q as usize];
            for (line, text) in lines {
                last_line = line;
                if let Some(rest) = text.strip_prefix("design") {
                    let i: u32 =
                        rest.trim().parse().map_err(|_| parse_err(line, format!("bad design label `{text}`")))?;
                    if i >= q || std::mem::replace(&mut seen[i as usize], true) {
                        return Err(parse_err(line, format!("design label {i} out of range or repeated")));
                    }
                    if let Some(prev) = designs.last() {
                        if prev.len() != per_design {
                            return Err(parse_err(
                                line,
                                format!("previous design has {} classes, expected {per_design}", prev.len()),
                            ));
                        }
                    }
                    designs.push(Vec::new());
                } else {
                    let design =
                        designs.last_mut().ok_or_else(|| parse_err(line, "class line before any `design` line"))?;
                    design.push(parse_class(set, line, text)?);
                }
            }
            if designs.len() != q as usize {
                return Err(parse_err(last_line, format!("expected {q} designs, found {}", designs.len())));
            }
            if designs.last().map_or(0, Vec::len) != per_design {
                return Err(parse_err(last_line, format!("last design does not have {per_design} classes")));
            }
            Ok(normalize_base(&field, designs)?)
        }
    }
}

pub fn read_base(path: &Path) -> Result<BaseLargeSet, BaseFileError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| BaseFileError::Io { path: path.display().to_string(), source })?;
    load_base(&text)
}

fn render_class(out: &mut String, set: PointSet, class: &[Triple]) {
    let label = |p: Point| {
        if p == set.inf1() {
            "inf1".to_string()
        } else if p == set.inf2() {
            "inf2".to_string()
        } else {
            p.0.to_string()
        }
    };
    let blocks: Vec<String> = class.iter().map(|t| t.points().map(label).join(",")).collect();
    let _ = writeln!(out, "{}", blocks.join("; "));
}

pub fn render_base(base: &BaseLargeSet, form: Form) -> Result<String, BaseFileError> {
    let spec = base.spec();
    let set = base.point_set();
    let mut out = String::new();
    let form_name = match form {
        Form::Compact => "compact",
        Form::Full => "full",
    };
    let _ = writeln!(out, "BASE-LKTS q={} p={} k={} form={form_name}", spec.q, spec.p, spec.k);
    match form {
        Form::Compact => {
            if !base.is_translation_invariant() {
                return Err(BaseFileError::NotCompact);
            }
            for class in base.design(0) {
                render_class(&mut out, set, class);
            }
        }
        Form::Full => {
            for (i, design) in base.designs().iter().enumerate() {
                let _ = writeln!(out, "design {i}");
                for class in design {
                    render_class(&mut out, set, class);
                }
            }
        }
    }
    Ok(out)
}
