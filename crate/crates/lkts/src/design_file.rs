//! Text format for one design `B_w` of a constructed large set.
//!
//! ```text
//! LKTS-DESIGN order=171 q=13 n=2 w=0:0
//! star: 0:0,inf1,inf2; 1:0,4:0,5:0; ...
//! u1.a0.b0: ...
//! ```
//!
//! One line per parallel class, led by its class id. A header field
//! `encoding=appendix` switches point tokens to the two-character form.

use std::fmt::Write as _;

use lkts_core::{ClassId, Construction, Design, Triple};
use thiserror::Error;

use crate::labels::{join_coords, parse_coords, Encoding, PointLabels};

#[derive(Debug, Error)]
pub enum DesignFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("encoding `{0}` is not available for q = {1}, n = {2}")]
    Encoding(&'static str, u32, u32),
}

fn parse_err(line: usize, msg: impl Into<String>) -> DesignFileError {
    DesignFileError::Parse { line, msg: msg.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DesignFile {
    pub labels: PointLabels,
    pub w: Vec<u32>,
    pub encoding: Encoding,
    pub classes: Vec<(ClassId, Vec<Triple>)>,
}

impl DesignFile {
    /// Canonical file for `design`: classes in id order, blocks sorted.
    pub fn from_design(ctx: &Construction, design: &Design) -> Self {
        let q = ctx.field().order();
        let n = ctx.geometry().dim() as u32;
        let mut classes: Vec<_> = design.classes.iter().map(|c| (c.id, c.triples.clone())).collect();
        classes.sort_by_key(|(id, _)| *id);
        DesignFile {
            labels: PointLabels::new(q, n).expect("construction order fits in u32"),
            w: design.w.coords().iter().map(|c| c.index()).collect(),
            encoding: Encoding::Canonical,
            classes,
        }
    }

    pub fn with_encoding(mut self, encoding: Encoding) -> Result<Self, DesignFileError> {
        if !self.labels.supports(encoding) {
            return Err(DesignFileError::Encoding(encoding.name(), self.labels.q(), self.labels.n()));
        }
        self.encoding = encoding;
        Ok(self)
    }

    pub fn order(&self) -> u32 {
        self.labels.order()
    }

    pub fn w_label(&self) -> String {
        join_coords(&self.w)
    }

    /// Suggested file name, e.g. `B_0-0.txt`.
    pub fn file_name(&self) -> String {
        format!("B_{}.txt", self.w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("-"))
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Triple> {
        self.classes.iter().flat_map(|(_, c)| c)
    }

    pub fn class(&self, id: ClassId) -> Option<&[Triple]> {
        self.classes.iter().find(|(c, _)| *c == id).map(|(_, t)| t.as_slice())
    }

    pub fn render(&self) -> String {
        let l = &self.labels;
        let mut out = format!("LKTS-DESIGN order={} q={} n={} w={}", l.order(), l.q(), l.n(), self.w_label());
        if self.encoding != Encoding::Canonical {
            let _ = write!(out, " encoding={}", self.encoding.name());
        }
        out.push('\n');
        for (id, class) in &self.classes {
            let blocks: Vec<String> =
                class.iter().map(|t| t.points().map(|p| l.label(p, self.encoding)).join(",")).collect();
            let _ = writeln!(out, "{id}: {}", blocks.join("; "));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, DesignFileError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("LKTS-DESIGN") {
            return Err(parse_err(hline, "expected header `LKTS-DESIGN order=.. q=.. n=.. w=..`"));
        }
        let (mut order, mut q, mut n, mut w, mut encoding) = (None, None, None, None, Encoding::Canonical);
        for word in words {
            let (key, value) =
                word.split_once('=').ok_or_else(|| parse_err(hline, format!("bad header field `{word}`")))?;
            let num = || value.parse::<u32>().map_err(|_| parse_err(hline, format!("bad value for {key}: `{value}`")));
            match key {
                "order" => order = Some(num()?),
                "q" => q = Some(num()?),
                "n" => n = Some(num()?),
                "w" => w = Some(parse_coords(value).ok_or_else(|| parse_err(hline, format!("bad w `{value}`")))?),
                "encoding" => {
                    encoding = Encoding::from_name(value)
                        .ok_or_else(|| parse_err(hline, format!("unknown encoding `{value}`")))?
                }
                _ => return Err(parse_err(hline, format!("unknown header field `{key}`"))),
            }
        }
        let missing = |name: &str| parse_err(hline, format!("header lacks {name}="));
        let (q, n, w) =
            (q.ok_or_else(|| missing("q"))?, n.ok_or_else(|| missing("n"))?, w.ok_or_else(|| missing("w"))?);
        let labels = PointLabels::new(q, n).ok_or_else(|| parse_err(hline, "q^n too large"))?;
        if order.is_some_and(|o| o != labels.order()) {
            return Err(parse_err(hline, format!("order does not equal q^n + 2 = {}", labels.order())));
        }
        if labels.point(&w).is_none() {
            return Err(parse_err(hline, format!("w = {} is not a vector of F_{q}^{n}", join_coords(&w))));
        }
        if !labels.supports(encoding) {
            return Err(parse_err(hline, format!("encoding {} needs q = 13, n = 2", encoding.name())));
        }
        let mut classes = Vec::new();
        for (line, text) in lines {
            let (id, body) = text.split_once(':').ok_or_else(|| parse_err(line, "expected `<class id>: <blocks>`"))?;
            let id: ClassId =
                id.trim().parse().map_err(|_| parse_err(line, format!("bad class id `{}`", id.trim())))?;
            let mut class = Vec::new();
            for block in body.split(';').map(str::trim).filter(|b| !b.is_empty()) {
                let pts = block
                    .split(',')
                    .map(|tok| {
                        labels
                            .parse(tok.trim(), encoding)
                            .ok_or_else(|| parse_err(line, format!("bad point `{}`", tok.trim())))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let &[a, b, c] = pts.as_slice() else {
                    return Err(parse_err(line, format!("block `{block}` does not have 3 points")));
                };
                class.push(
                    Triple::new(a, b, c).ok_or_else(|| parse_err(line, format!("block `{block}` repeats a point")))?,
                );
            }
            classes.push((id, class));
        }
        Ok(DesignFile { labels, w, encoding, classes })
    }
}
