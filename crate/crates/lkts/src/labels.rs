//! Text labels for the points of `X = F_q^n ∪ {∞₁, ∞₂}`.
//!
//! Canonical labels join coordinate field indices with `:` (`3:9`), with
//! `inf1`/`inf2` for the infinities. The appendix encoding is two
//! characters per point (`39`, `AC`, `XX`, `YY`) and exists only for
//! `q = 13, n = 2`.

use lkts_core::Point;

const APPENDIX_DIGITS: &[u8; 13] = b"0123456789ABC";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Canonical,
    Appendix,
}

impl Encoding {
    pub fn name(self) -> &'static str {
        match self {
            Encoding::Canonical => "canonical",
            Encoding::Appendix => "appendix",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "canonical" => Some(Encoding::Canonical),
            "appendix" => Some(Encoding::Appendix),
            _ => None,
        }
    }
}

/// Maps point ids of an order-`q^n + 2` set to labels and back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointLabels {
    q: u32,
    n: u32,
    size: u32,
}

impl PointLabels {
    /// `None` if `q^n + 2` overflows.
    pub fn new(q: u32, n: u32) -> Option<Self> {
        let size = q.checked_pow(n)?;
        size.checked_add(2)?;
        Some(PointLabels { q, n, size })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.size + 2
    }

    pub fn supports(&self, enc: Encoding) -> bool {
        enc == Encoding::Canonical || (self.q == 13 && self.n == 2)
    }

    /// Coordinates of a finite point, first coordinate most significant.
    pub fn coords(&self, p: Point) -> Option<Vec<u32>> {
        if p.0 >= self.size {
            return None;
        }
        let mut out = vec![0; self.n as usize];
        let mut x = p.0;
        for slot in out.iter_mut().rev() {
            *slot = x % self.q;
            x /= self.q;
        }
        Some(out)
    }

    pub fn point(&self, coords: &[u32]) -> Option<Point> {
        if coords.len() != self.n as usize || coords.iter().any(|&c| c >= self.q) {
            return None;
        }
        Some(Point(coords.iter().fold(0, |acc, &c| acc * self.q + c)))
    }

    pub fn label(&self, p: Point, enc: Encoding) -> String {
        match enc {
            Encoding::Canonical => self.canonical(p),
            Encoding::Appendix => self.appendix(p),
        }
    }

    pub fn canonical(&self, p: Point) -> String {
        match p.0.checked_sub(self.size) {
            Some(0) => "inf1".into(),
            Some(1) => "inf2".into(),
            Some(_) => format!("?{}", p.0),
            None => join_coords(&self.coords(p).expect("finite")),
        }
    }

    /// Two-character token. Panics unless `q = 13, n = 2`.
    pub fn appendix(&self, p: Point) -> String {
        assert!(self.supports(Encoding::Appendix), "appendix encoding needs q = 13, n = 2");
        match p.0.checked_sub(self.size) {
            Some(0) => "XX".into(),
            Some(1) => "YY".into(),
            Some(_) => format!("?{}", p.0),
            None => self.coords(p).expect("finite").iter().map(|&c| APPENDIX_DIGITS[c as usize] as char).collect(),
        }
    }

    pub fn parse(&self, token: &str, enc: Encoding) -> Option<Point> {
        match enc {
            Encoding::Canonical => self.parse_canonical(token),
            Encoding::Appendix => self.parse_appendix(token),
        }
    }

    pub fn parse_canonical(&self, token: &str) -> Option<Point> {
        match token {
            "inf1" => Some(Point(self.size)),
            "inf2" => Some(Point(self.size + 1)),
            _ => self.point(&parse_coords(token)?),
        }
    }

    pub fn parse_appendix(&self, token: &str) -> Option<Point> {
        if !self.supports(Encoding::Appendix) {
            return None;
        }
        match token {
            "XX" => Some(Point(self.size)),
            "YY" => Some(Point(self.size + 1)),
            _ if token.len() == 2 => {
                let digit = |b: u8| APPENDIX_DIGITS.iter().position(|&d| d == b).map(|i| i as u32);
                let bytes = token.as_bytes();
                self.point(&[digit(bytes[0])?, digit(bytes[1])?])
            }
            _ => None,
        }
    }
}

pub fn join_coords(coords: &[u32]) -> String {
    coords.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(":")
}

/// `"3:9"` -> `[3, 9]`. Accepts a bare integer for `n = 1`.
pub fn parse_coords(s: &str) -> Option<Vec<u32>> {
    s.split(':').map(|part| part.trim().parse().ok()).collect()
}
