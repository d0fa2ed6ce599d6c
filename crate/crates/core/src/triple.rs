//! Points and triples shared by the base designs and the constructed designs.
//!
//! A point set of order `N` has `N - 2` finite points numbered `0..N-2`
//! followed by the two infinite points `∞₁ = N - 2` and `∞₂ = N - 1`.
//! Sorting by id therefore gives the canonical order: finite points first,
//! then `∞₁`, then `∞₂`.

use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub u32);

impl Point {
    #[inline]
    pub fn id(self) -> u32 {
        self.0
    }
}

/// Shape of an order-`N` point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointSet {
    finite: u32,
}

impl PointSet {
    /// Point set with `finite` finite points plus the two infinities.
    pub fn with_finite(finite: u32) -> Self {
        PointSet { finite }
    }

    #[inline]
    pub fn order(self) -> u32 {
        self.finite + 2
    }

    #[inline]
    pub fn finite(self) -> u32 {
        self.finite
    }

    #[inline]
    pub fn inf1(self) -> Point {
        Point(self.finite)
    }

    #[inline]
    pub fn inf2(self) -> Point {
        Point(self.finite + 1)
    }

    #[inline]
    pub fn is_finite(self, p: Point) -> bool {
        p.0 < self.finite
    }

    #[inline]
    pub fn contains(self, p: Point) -> bool {
        p.0 < self.finite + 2
    }
}

/// Three distinct points in ascending id order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple([Point; 3]);

impl Triple {
    /// Canonicalizes three points; `None` if any two coincide.
    pub fn new(a: Point, b: Point, c: Point) -> Option<Triple> {
        let mut pts = [a, b, c];
        pts.sort_unstable();
        (pts[0] != pts[1] && pts[1] != pts[2]).then_some(Triple(pts))
    }

    pub fn from_ids(a: u32, b: u32, c: u32) -> Option<Triple> {
        Triple::new(Point(a), Point(b), Point(c))
    }

    #[inline]
    pub fn points(&self) -> [Point; 3] {
        self.0
    }

    #[inline]
    pub fn ids(&self) -> [u32; 3] {
        [self.0[0].0, self.0[1].0, self.0[2].0]
    }

    pub fn contains(&self, p: Point) -> bool {
        self.0.contains(&p)
    }

    /// The three unordered pairs of the triple.
    pub fn pairs(&self) -> [(Point, Point); 3] {
        let [a, b, c] = self.0;
        [(a, b), (a, c), (b, c)]
    }

    /// Applies a point map and re-canonicalizes.
    pub fn map(&self, mut f: impl FnMut(Point) -> Point) -> Option<Triple> {
        let [a, b, c] = self.0;
        Triple::new(f(a), f(b), f(c))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.ids();
        write!(f, "{{{a},{b},{c}}}")
    }
}
