//! The input large set of KTS(q+2) on `Y = GF(q) ∪ {∞₁, ∞₂}`.
//!
//! Points of `Y` use the order-`q+2` layout of [`PointSet`]: field element
//! `i` is point `i`, `∞₁ = q`, `∞₂ = q + 1`. Design `D_i` is the one holding
//! `{∞₁, ∞₂, i}`, and that triple lies in its class `Q[i][0]`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Elem, Field, PrimePower};
use crate::triple::{Point, PointSet, Triple};
use crate::verify::{Certificate, Check, LargeSetVerifier, TripleRank, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseError {
    DesignCount {
        expected: usize,
        found: usize,
    },
    ClassCount {
        design: usize,
        expected: usize,
        found: usize,
    },
    PointOutOfRange {
        design: usize,
        class: usize,
        triple: Triple,
    },
    /// No design contains `{∞₁, ∞₂, i}`.
    MissingInfinityTriple(u32),
    /// Two designs contain `{∞₁, ∞₂, i}`.
    DuplicateInfinityTriple(u32),
    /// A design has no triple `{∞₁, ∞₂, i}`.
    DesignWithoutInfinityTriple(usize),
    /// `Q[i][0]` does not contain `{∞₁, ∞₂, i}`.
    NotNormalized(u32),
}

impl fmt::Display for BaseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseError::DesignCount { expected, found } => {
                write!(f, "expected {expected} designs, found {found}")
            }
            BaseError::ClassCount { design, expected, found } => {
                write!(f, "design {design}: expected {expected} classes, found {found}")
            }
            BaseError::PointOutOfRange { design, class, triple } => {
                write!(f, "design {design} class {class}: block {triple} has a point out of range")
            }
            BaseError::MissingInfinityTriple(i) => {
                write!(f, "no design contains {{inf1, inf2, {i}}}")
            }
            BaseError::DuplicateInfinityTriple(i) => {
                write!(f, "two designs contain {{inf1, inf2, {i}}}; not a large set")
            }
            BaseError::DesignWithoutInfinityTriple(d) => {
                write!(f, "design {d} has no block of the form {{inf1, inf2, i}}")
            }
            BaseError::NotNormalized(i) => {
                write!(f, "class Q[{i}][0] does not contain {{inf1, inf2, {i}}}")
            }
        }
    }
}

impl core::error::Error for BaseError {}

/// Designs as lists of classes as lists of blocks, in input order.
pub type RawDesigns = Vec<Vec<Vec<Triple>>>;

#[derive(Debug, Clone)]
pub struct BaseLargeSet {
    spec: PrimePower,
    classes: RawDesigns,
    compact: bool,
    translation_invariant: bool,
    /// Rank of a base triple -> (design, class), `u32::MAX` if absent.
    index: Vec<(u32, u32)>,
}

impl PartialEq for BaseLargeSet {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.classes == other.classes
    }
}

impl BaseLargeSet {
    /// Takes designs already indexed so that `{∞₁, ∞₂, i} ∈ Q[i][0]`.
    /// Blocks within each class are sorted; class order is kept.
    pub fn from_designs(field: &Field, mut designs: RawDesigns) -> Result<Self, BaseError> {
        let spec = field.spec();
        let q = spec.q as usize;
        let set = PointSet::with_finite(spec.q);
        if designs.len() != q {
            return Err(BaseError::DesignCount { expected: q, found: designs.len() });
        }
        for (d, design) in designs.iter_mut().enumerate() {
            let expected = q.div_ceil(2);
            if design.len() != expected {
                return Err(BaseError::ClassCount { design: d, expected, found: design.len() });
            }
            for (c, class) in design.iter_mut().enumerate() {
                if let Some(t) = class.iter().find(|t| !set.contains(t.points()[2])) {
                    return Err(BaseError::PointOutOfRange { design: d, class: c, triple: *t });
                }
                class.sort_unstable();
            }
            let inf = infinity_triple(set, d as u32);
            if !design[0].contains(&inf) {
                return Err(BaseError::NotNormalized(d as u32));
            }
        }
        let rank = TripleRank::new(set.order());
        let mut index = vec![(u32::MAX, u32::MAX); rank.total() as usize];
        for (d, design) in designs.iter().enumerate() {
            for (c, class) in design.iter().enumerate() {
                for t in class {
                    index[rank.rank(t) as usize] = (d as u32, c as u32);
                }
            }
        }
        let mut base = BaseLargeSet { spec, classes: designs, compact: false, translation_invariant: false, index };
        base.translation_invariant = base.check_translation_invariance(field);
        Ok(base)
    }

    /// Expands `Q[i][j] = Q[0][j] + i` from the classes of `D_0`.
    pub fn from_compact(field: &Field, classes0: Vec<Vec<Triple>>) -> Result<Self, BaseError> {
        let designs =
            field.elements().map(|i| classes0.iter().map(|class| translate_class(field, class, i)).collect()).collect();
        let mut base = Self::from_designs(field, designs)?;
        base.compact = true;
        Ok(base)
    }

    pub fn spec(&self) -> PrimePower {
        self.spec
    }

    pub fn q(&self) -> u32 {
        self.spec.q
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::with_finite(self.spec.q)
    }

    /// Whether the set was generated from `D_0` by translation.
    pub fn is_compact(&self) -> bool {
        self.compact
    }

    /// Whether `Q[i][j] = Q[0][j] + i` for all `i, j`.
    pub fn is_translation_invariant(&self) -> bool {
        self.translation_invariant
    }

    /// `Q[design][class]`, blocks sorted.
    pub fn class(&self, design: Elem, class: usize) -> &[Triple] {
        &self.classes[design.index() as usize][class]
    }

    pub fn design(&self, design: usize) -> &[Vec<Triple>] {
        &self.classes[design]
    }

    pub fn designs(&self) -> &RawDesigns {
        &self.classes
    }

    pub fn classes_per_design(&self) -> usize {
        (self.spec.q as usize).div_ceil(2)
    }

    /// The `(design, class)` holding a base triple.
    pub fn locate(&self, t: &Triple) -> Option<(u32, u32)> {
        let rank = TripleRank::new(self.point_set().order());
        if t.ids()[2] >= rank.points() {
            return None;
        }
        let (d, c) = self.index[rank.rank(t) as usize];
        (d != u32::MAX).then_some((d, c))
    }

    fn check_translation_invariance(&self, field: &Field) -> bool {
        field.elements().all(|i| {
            self.classes[i.index() as usize]
                .iter()
                .zip(&self.classes[0])
                .all(|(class, class0)| *class == translate_class(field, class0, i))
        })
    }

    /// Certifies the large-set invariants exhaustively.
    pub fn validate(&self) -> Certificate {
        let set = self.point_set();
        let mut verifier = LargeSetVerifier::new(set.order());
        for (d, design) in self.classes.iter().enumerate() {
            verifier.add_design(&format!("D{d}"), design);
        }
        let mut cert = verifier.finish();
        cert.subject = format!("base LKTS({}) over GF({})", set.order(), self.spec.q);
        let mut misplaced = None;
        for (d, design) in self.classes.iter().enumerate() {
            let inf = infinity_triple(set, d as u32);
            if design.first().is_none_or(|c| !c.contains(&inf)) {
                misplaced = Some(Witness::Block(inf));
                break;
            }
        }
        cert.push(match misplaced {
            None => Check::pass("infinity-triple-index"),
            Some(w) => Check::fail("infinity-triple-index", w),
        });
        cert.counts.classes = self.classes.iter().map(|d| d.len() as u64).sum();
        cert
    }
}

/// `{∞₁, ∞₂, i}`.
pub fn infinity_triple(set: PointSet, i: u32) -> Triple {
    Triple::new(Point(i), set.inf1(), set.inf2()).expect("distinct points")
}

/// `A + i` for each block `A`, fixing the infinities.
pub fn translate_class(field: &Field, class: &[Triple], shift: Elem) -> Vec<Triple> {
    let q = field.order();
    let mut out: Vec<Triple> = class
        .iter()
        .map(|t| {
            t.map(|p| if p.0 < q { Point(field.add(Elem(p.0), shift).index()) } else { p })
                .expect("translation is a bijection")
        })
        .collect();
    out.sort_unstable();
    out
}

/// Reindexes designs so that design `i` holds `{∞₁, ∞₂, i}` and rotates each
/// design's classes so that this triple's class comes first. The cyclic
/// order of the remaining classes is kept.
pub fn normalize_base(field: &Field, raw: RawDesigns) -> Result<BaseLargeSet, BaseError> {
    let q = field.order();
    let set = PointSet::with_finite(q);
    if raw.len() != q as usize {
        return Err(BaseError::DesignCount { expected: q as usize, found: raw.len() });
    }
    let mut slots: Vec<Option<Vec<Vec<Triple>>>> = vec![None; q as usize];
    for (d, mut design) in raw.into_iter().enumerate() {
        let found = design.iter().enumerate().find_map(|(c, class)| {
            class.iter().find_map(|t| {
                let [a, b, c3] = t.points();
                (b == set.inf1() && c3 == set.inf2() && a.0 < q).then_some((c, a.0))
            })
        });
        let (class, i) = found.ok_or(BaseError::DesignWithoutInfinityTriple(d))?;
        design.rotate_left(class);
        let slot = &mut slots[i as usize];
        if slot.is_some() {
            return Err(BaseError::DuplicateInfinityTriple(i));
        }
        *slot = Some(design);
    }
    let designs = slots
        .into_iter()
        .enumerate()
        .map(|(i, s)| s.ok_or(BaseError::MissingInfinityTriple(i as u32)))
        .collect::<Result<Vec<_>, _>>()?;
    BaseLargeSet::from_designs(field, designs)
}

/// Classes of `D_0` in the LKTS(15) of Denniston; `Q[i][j] = Q[0][j] + i`.
/// Points: `0..=12` field elements, `13 = ∞₁`, `14 = ∞₂`.
const DENNISTON15: [[[u32; 3]; 5]; 7] = [
    [[13, 14, 0], [1, 4, 5], [2, 6, 11], [3, 7, 10], [8, 9, 12]],
    [[13, 1, 6], [14, 2, 8], [0, 10, 12], [3, 5, 9], [4, 7, 11]],
    [[13, 2, 5], [14, 4, 9], [0, 3, 11], [1, 7, 12], [6, 8, 10]],
    [[13, 3, 12], [14, 5, 7], [0, 4, 6], [1, 8, 11], [2, 9, 10]],
    [[13, 4, 10], [14, 11, 12], [0, 5, 8], [1, 2, 3], [6, 7, 9]],
    [[13, 7, 8], [14, 3, 6], [0, 1, 9], [2, 4, 12], [5, 10, 11]],
    [[13, 9, 11], [14, 1, 10], [0, 2, 7], [3, 4, 8], [5, 6, 12]],
];

/// Classes `Q[0][0..7]` of the built-in LKTS(15).
pub fn denniston15_classes() -> Vec<Vec<Triple>> {
    DENNISTON15
        .iter()
        .map(|class| class.iter().map(|&[a, b, c]| Triple::from_ids(a, b, c).expect("distinct")).collect())
        .collect()
}

/// The built-in LKTS(15) on `GF(13) ∪ {∞₁, ∞₂}`, stored compactly.
pub fn builtin_denniston15() -> BaseLargeSet {
    let field = Field::new(13, 1).expect("GF(13)");
    BaseLargeSet::from_compact(&field, denniston15_classes()).expect("built-in data is normalized")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(a: u32, b: u32, c: u32) -> Triple {
        Triple::from_ids(a, b, c).unwrap()
    }

    #[test]
    fn denniston_classes_match_listing() {
        let base = builtin_denniston15();
        assert!(base.is_compact());
        assert!(base.is_translation_invariant());
        let q00 = base.class(Elem(0), 0);
        let mut want = vec![t(13, 14, 0), t(1, 4, 5), t(2, 6, 11), t(3, 7, 10), t(8, 9, 12)];
        want.sort();
        assert_eq!(q00, want.as_slice());
        assert!(base.class(Elem(0), 1).contains(&t(13, 1, 6)));
        let q10 = base.class(Elem(1), 0);
        assert!(q10.contains(&t(13, 14, 1)));
        assert!(q10.contains(&t(2, 5, 6)));
    }

    #[test]
    fn denniston_validates() {
        let cert = builtin_denniston15().validate();
        assert!(cert.passed(), "{cert}");
        assert_eq!(cert.counts.designs, 13);
        assert_eq!(cert.counts.classes, 13 * 7);
        assert_eq!(cert.counts.blocks, 13 * 35);
        assert_eq!(cert.counts.distinct_triples, 455);
    }

    #[test]
    fn normalize_is_identity_on_normalized() {
        let field = Field::new(13, 1).unwrap();
        let base = builtin_denniston15();
        let again = normalize_base(&field, base.designs().clone()).unwrap();
        assert_eq!(again, base);
    }

    #[test]
    fn normalize_restores_order() {
        let field = Field::new(13, 1).unwrap();
        let base = builtin_denniston15();
        let mut reversed = base.designs().clone();
        reversed.reverse();
        assert_eq!(normalize_base(&field, reversed).unwrap(), base);

        let mut shifted = base.designs().clone();
        shifted[0].rotate_right(2);
        let inf_class = shifted[0].iter().position(|c| c.contains(&t(0, 13, 14))).unwrap();
        assert_eq!(inf_class, 2);
        assert_eq!(normalize_base(&field, shifted).unwrap(), base);
    }

    #[test]
    fn normalize_rejects_non_large_sets() {
        let field = Field::new(13, 1).unwrap();
        let base = builtin_denniston15();
        let mut twice = base.designs().clone();
        twice[1] = twice[0].clone();
        assert_eq!(normalize_base(&field, twice), Err(BaseError::DuplicateInfinityTriple(0)));
        let mut short = base.designs().clone();
        short.pop();
        assert!(matches!(normalize_base(&field, short), Err(BaseError::DesignCount { .. })));
    }

    #[test]
    fn duplicate_triple_is_detected() {
        let field = Field::new(13, 1).unwrap();
        let mut designs = builtin_denniston15().designs().clone();
        // replace a block of D_1 by a block of D_0 (same class position)
        designs[1][3][0] = designs[0][3][0];
        let base = BaseLargeSet::from_designs(&field, designs).unwrap();
        let cert = base.validate();
        assert!(!cert.passed());
        assert!(!cert.check("designs-kts").unwrap().passed);
        assert!(!cert.check("designs-disjoint").unwrap().passed);
    }

    #[test]
    fn locate_in_base() {
        let base = builtin_denniston15();
        assert_eq!(base.locate(&t(13, 14, 5)), Some((5, 0)));
        // {2,5,6} = {1,4,5} + 1 lies in Q[1][0]
        assert_eq!(base.locate(&t(2, 5, 6)), Some((1, 0)));
        assert_eq!(base.locate(&t(13, 1, 6)), Some((0, 1)));
    }
}
