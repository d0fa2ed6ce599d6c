//! Certification of Steiner, Kirkman and large-set properties.
//!
//! Every check produces a [`Certificate`]: a list of named checks, each with
//! a concrete witness when it fails, plus the counts that were observed.
//! Checks are independent of how the designs were built, so they apply to
//! constructed designs and to designs read from files alike.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};

use crate::construct::{ClassId, Construction, Design};
use crate::geometry::{Geometry, PointVector};
use crate::triple::{Point, Triple};

/// Largest `C(N, 3)` for which [`LargeSetVerifier`] keeps the exact-cover
/// table resident. Above this it checks designs individually and flags the
/// certificate as partial.
pub const EXACT_COVER_LIMIT: u64 = 1 << 25;

/// `C(n, k)` for `k <= 3`.
pub fn binomial(n: u64, k: u32) -> u64 {
    match k {
        0 => 1,
        1 => n,
        2 => n * n.saturating_sub(1) / 2,
        3 => n * n.saturating_sub(1) * n.saturating_sub(2) / 6,
        _ => unimplemented!("only small binomials are needed"),
    }
}

/// Colexicographic ranking of the 3-subsets of `{0, ..., N-1}`:
/// `rank({a < b < c}) = C(c,3) + C(b,2) + a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TripleRank {
    points: u32,
}

impl TripleRank {
    pub fn new(points: u32) -> Self {
        TripleRank { points }
    }

    pub fn points(&self) -> u32 {
        self.points
    }

    /// `C(N, 3)`.
    pub fn total(&self) -> u64 {
        binomial(self.points as u64, 3)
    }

    /// Panics if a point is outside the ranked set.
    #[inline]
    pub fn rank(&self, t: &Triple) -> u64 {
        let [a, b, c] = t.ids();
        assert!(c < self.points, "triple {t} outside a {}-point set", self.points);
        binomial(c as u64, 3) + binomial(b as u64, 2) + a as u64
    }

    pub fn unrank(&self, mut r: u64) -> Option<Triple> {
        if r >= self.total() {
            return None;
        }
        let c = largest_below(r, 3, self.points);
        r -= binomial(c as u64, 3);
        let b = largest_below(r, 2, c);
        r -= binomial(b as u64, 2);
        Triple::from_ids(r as u32, b, c)
    }
}

/// Largest `x < upper` with `C(x, k) <= r`.
fn largest_below(r: u64, k: u32, upper: u32) -> u32 {
    let (mut lo, mut hi) = (k - 1, upper - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if binomial(mid as u64, k) <= r {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Concrete evidence attached to a failed check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A pair covered `count` times (0 or more than 1).
    Pair {
        pair: (Point, Point),
        count: u32,
    },
    /// A point covered `count` times by a class.
    Point {
        point: Point,
        count: u32,
        class: usize,
    },
    /// A block with a point outside the point set.
    Block(Triple),
    /// A triple found in two designs.
    Duplicate {
        triple: Triple,
        first: String,
        second: String,
    },
    /// A triple no design contains; `missing` counts all such triples.
    Missing {
        triple: Triple,
        missing: u64,
    },
    Count {
        expected: u64,
        found: u64,
    },
    /// A failing sub-check of a labeled design.
    Design {
        label: String,
        check: String,
        detail: String,
    },
    Text(String),
}

impl Witness {
    pub fn render(&self, label: &dyn Fn(Point) -> String) -> String {
        let tri = |t: &Triple| {
            let [a, b, c] = t.points();
            format!("{{{}, {}, {}}}", label(a), label(b), label(c))
        };
        match self {
            Witness::Pair { pair, count } => {
                format!("pair {{{}, {}}} covered {count} times", label(pair.0), label(pair.1))
            }
            Witness::Point { point, count, class } => {
                format!("point {} covered {count} times in class {class}", label(*point))
            }
            Witness::Block(t) => format!("block {} out of range", tri(t)),
            Witness::Duplicate { triple, first, second } => {
                format!("triple {} in designs {first} and {second}", tri(triple))
            }
            Witness::Missing { triple, missing } => {
                format!("{missing} triples uncovered, e.g. {}", tri(triple))
            }
            Witness::Count { expected, found } => format!("expected {expected}, found {found}"),
            Witness::Design { label, check, detail } => {
                format!("design {label} fails {check}: {detail}")
            }
            Witness::Text(s) => s.clone(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|p| p.0.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl Check {
    pub fn pass(name: &str) -> Self {
        Check { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: &str, witness: Witness) -> Self {
        Check { name: name.into(), passed: false, witness: Some(witness) }
    }

    /// Passes iff there is no witness.
    pub fn from_option(name: &str, witness: Option<Witness>) -> Self {
        match witness {
            None => Check::pass(name),
            Some(w) => Check::fail(name, w),
        }
    }

    pub fn count(name: &str, expected: u64, found: u64) -> Self {
        Check::from_option(name, (expected != found).then_some(Witness::Count { expected, found }))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Counts {
    pub points: u64,
    pub blocks: u64,
    pub classes: u64,
    pub designs: u64,
    pub distinct_triples: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub subject: String,
    pub checks: Vec<Check>,
    pub counts: Counts,
    /// Notes on checks that were skipped or weakened.
    pub notes: Vec<String>,
}

impl Certificate {
    pub fn new(subject: impl Into<String>) -> Self {
        Certificate { subject: subject.into(), checks: Vec::new(), counts: Counts::default(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Stable `key: value` lines.
    pub fn render(&self, label: &dyn Fn(Point) -> String) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "subject: {}", self.subject);
        let _ = writeln!(out, "result: {}", if self.passed() { "pass" } else { "fail" });
        let c = &self.counts;
        let _ = writeln!(out, "points: {}", c.points);
        let _ = writeln!(out, "designs: {}", c.designs);
        let _ = writeln!(out, "classes: {}", c.classes);
        let _ = writeln!(out, "blocks: {}", c.blocks);
        let _ = writeln!(out, "distinct-triples: {}", c.distinct_triples);
        for check in &self.checks {
            match &check.witness {
                None => {
                    let _ = writeln!(out, "check.{}: {}", check.name, if check.passed { "pass" } else { "fail" });
                }
                Some(w) => {
                    let status = if check.passed { "pass" } else { "fail" };
                    let _ = writeln!(out, "check.{}: {status} ({})", check.name, w.render(label));
                }
            }
        }
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        out
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&|p| p.0.to_string()))
    }
}

/// Every pair covered exactly once and `N(N-1)/6` blocks.
pub fn verify_sts<'a>(blocks: impl IntoIterator<Item = &'a Triple>, points: u32) -> Certificate {
    let n = points as usize;
    let mut cert = Certificate::new(format!("STS({points})"));
    let mut pair_count = vec![0u8; n * n];
    let mut out_of_range = None;
    let mut count = 0u64;
    let mut distinct = Vec::new();
    for t in blocks {
        count += 1;
        distinct.push(*t);
        if t.ids()[2] >= points {
            out_of_range.get_or_insert(Witness::Block(*t));
            continue;
        }
        for (a, b) in t.pairs() {
            let slot = &mut pair_count[a.0 as usize * n + b.0 as usize];
            *slot = slot.saturating_add(1);
        }
    }
    distinct.sort_unstable();
    distinct.dedup();
    cert.push(Check::from_option("points-in-range", out_of_range));
    let expected = binomial(points as u64, 2) / 3;
    cert.push(Check::count("block-count", expected, count));
    let mut bad_pair = None;
    'outer: for a in 0..n {
        for b in a + 1..n {
            let c = pair_count[a * n + b];
            if c != 1 {
                bad_pair = Some(Witness::Pair { pair: (Point(a as u32), Point(b as u32)), count: c as u32 });
                break 'outer;
            }
        }
    }
    cert.push(Check::from_option("pair-coverage", bad_pair));
    cert.counts = Counts {
        points: points as u64,
        blocks: count,
        classes: 0,
        designs: 1,
        distinct_triples: distinct.len() as u64,
    };
    cert
}

/// Each class partitions the point set and there are `(N-1)/2` classes.
pub fn verify_resolution<C: AsRef<[Triple]>>(classes: &[C], points: u32) -> Certificate {
    let mut cert = Certificate::new(format!("resolution of order {points}"));
    cert.push(Check::count("class-count", (points as u64).saturating_sub(1) / 2, classes.len() as u64));
    let mut bad = None;
    let mut out_of_range = None;
    let mut hits = vec![0u32; points as usize];
    let mut blocks = 0u64;
    for (ci, class) in classes.iter().enumerate() {
        hits.iter_mut().for_each(|h| *h = 0);
        for t in class.as_ref() {
            blocks += 1;
            for p in t.points() {
                match hits.get_mut(p.0 as usize) {
                    Some(h) => *h += 1,
                    None => {
                        out_of_range.get_or_insert(Witness::Block(*t));
                    }
                }
            }
        }
        if bad.is_none() {
            if let Some((p, &count)) = hits.iter().enumerate().find(|(_, &h)| h != 1) {
                bad = Some(Witness::Point { point: Point(p as u32), count, class: ci });
            }
        }
    }
    cert.push(Check::from_option("points-in-range", out_of_range));
    cert.push(Check::from_option("classes-partition", bad));
    cert.counts =
        Counts { points: points as u64, blocks, classes: classes.len() as u64, designs: 1, distinct_triples: 0 };
    cert
}

/// [`verify_sts`] on the union of the classes plus [`verify_resolution`].
pub fn verify_kts<C: AsRef<[Triple]>>(classes: &[C], points: u32) -> Certificate {
    let sts = verify_sts(classes.iter().flat_map(|c| c.as_ref().iter()), points);
    let res = verify_resolution(classes, points);
    let mut cert = Certificate::new(format!("KTS({points})"));
    cert.counts = sts.counts;
    cert.counts.classes = res.counts.classes;
    cert.push(Check::from_option(
        "points-in-range",
        sts.checks
            .iter()
            .chain(&res.checks)
            .find(|c| c.name == "points-in-range" && !c.passed)
            .and_then(|c| c.witness.clone()),
    ));
    for c in sts.checks.into_iter().chain(res.checks).filter(|c| c.name != "points-in-range") {
        cert.push(c);
    }
    cert
}

/// Streaming large-set check: feed designs one at a time, then [`finish`].
///
/// [`finish`]: LargeSetVerifier::finish
#[derive(Debug)]
pub struct LargeSetVerifier {
    points: u32,
    rank: TripleRank,
    /// Per rank: 0 = unseen, otherwise 1 + ordinal of the owning design.
    owner: Option<Vec<u32>>,
    labels: Vec<String>,
    designs: u64,
    blocks: u64,
    first_bad_design: Option<Witness>,
    duplicate: Option<Witness>,
    out_of_range: Option<Witness>,
    duplicates: u64,
}

impl LargeSetVerifier {
    pub fn new(points: u32) -> Self {
        let rank = TripleRank::new(points);
        let owner = (rank.total() <= EXACT_COVER_LIMIT).then(|| vec![0u32; rank.total() as usize]);
        LargeSetVerifier {
            points,
            rank,
            owner,
            labels: Vec::new(),
            designs: 0,
            blocks: 0,
            first_bad_design: None,
            duplicate: None,
            out_of_range: None,
            duplicates: 0,
        }
    }

    /// Checks one design and records its triples. Returns the design's own
    /// KTS certificate.
    pub fn add_design<C: AsRef<[Triple]>>(&mut self, label: &str, classes: &[C]) -> Certificate {
        let mut cert = verify_kts(classes, self.points);
        cert.subject = format!("KTS({}) design {label}", self.points);
        self.absorb(label, &cert, classes.iter().flat_map(|c| c.as_ref().iter()));
        cert
    }

    /// Like [`add_design`](Self::add_design) but takes an already computed
    /// certificate for the design.
    pub fn absorb<'a>(&mut self, label: &str, cert: &Certificate, blocks: impl Iterator<Item = &'a Triple>) {
        self.designs += 1;
        self.labels.push(label.into());
        let ordinal = self.labels.len() as u32;
        if self.first_bad_design.is_none() {
            if let Some(check) = cert.first_failure() {
                let detail = check.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
                self.first_bad_design =
                    Some(Witness::Design { label: label.into(), check: check.name.clone(), detail });
            }
        }
        for t in blocks {
            self.blocks += 1;
            if t.ids()[2] >= self.points {
                self.out_of_range.get_or_insert(Witness::Block(*t));
                continue;
            }
            let Some(owner) = self.owner.as_mut() else { continue };
            let slot = &mut owner[self.rank.rank(t) as usize];
            if *slot == 0 {
                *slot = ordinal;
            } else if *slot != ordinal {
                self.duplicates += 1;
                if self.duplicate.is_none() {
                    self.duplicate = Some(Witness::Duplicate {
                        triple: *t,
                        first: self.labels[*slot as usize - 1].clone(),
                        second: label.into(),
                    });
                }
            }
        }
    }

    pub fn finish(self) -> Certificate {
        let n = self.points;
        let mut cert = Certificate::new(format!("LKTS({n})"));
        cert.push(Check::count("design-count", n.saturating_sub(2) as u64, self.designs));
        cert.push(Check::from_option("designs-kts", self.first_bad_design));
        cert.push(Check::from_option("points-in-range", self.out_of_range));
        cert.push(Check::count("total-blocks", self.rank.total(), self.blocks));
        let mut distinct = 0;
        match &self.owner {
            Some(owner) => {
                cert.push(Check::from_option("designs-disjoint", self.duplicate));
                let mut missing = 0u64;
                let mut sample = None;
                for (r, &o) in owner.iter().enumerate() {
                    if o == 0 {
                        missing += 1;
                        sample.get_or_insert(r as u64);
                    } else {
                        distinct += 1;
                    }
                }
                let witness =
                    sample.map(|r| Witness::Missing { triple: self.rank.unrank(r).expect("rank in range"), missing });
                cert.push(Check::from_option("exact-cover", witness));
            }
            None => cert.notes.push(format!(
                "exact cover not checked: C({n},3) = {} exceeds the resident limit {EXACT_COVER_LIMIT}",
                self.rank.total()
            )),
        }
        cert.counts = Counts {
            points: n as u64,
            blocks: self.blocks,
            classes: 0,
            designs: self.designs,
            distinct_triples: distinct,
        };
        cert
    }
}

/// Runs [`LargeSetVerifier`] over `(label, classes)` pairs.
pub fn verify_large_set<L, C, I>(designs: I, points: u32) -> Certificate
where
    L: AsRef<str>,
    C: AsRef<[Triple]>,
    I: IntoIterator<Item = (L, Vec<C>)>,
{
    let mut verifier = LargeSetVerifier::new(points);
    for (label, classes) in designs {
        verifier.add_design(label.as_ref(), &classes);
    }
    verifier.finish()
}

/// Counts zero-sum triples `{x, y, -x-y}` of `W` with `x, y` independent, by
/// enumeration.
pub fn count_zero_sum_noncollinear(geom: &Geometry) -> u64 {
    let size = geom.size();
    let vecs: Vec<_> = (0..size).map(|id| geom.decode(Point(id)).expect("in range")).collect();
    let mut count = 0;
    for x in 0..size {
        for y in x + 1..size {
            let z = geom.encode(&geom.neg(&geom.add(&vecs[x as usize], &vecs[y as usize])));
            if z.0 > y && !geom.dependent(&vecs[x as usize], &vecs[y as usize]) {
                count += 1;
            }
        }
    }
    count
}

/// Counts the non-collinear 3-subsets of `W` by enumeration.
pub fn count_noncollinear(geom: &Geometry) -> u64 {
    let size = geom.size();
    let vecs: Vec<_> = (0..size).map(|id| geom.decode(Point(id)).expect("in range")).collect();
    let mut count = 0;
    for x in 0..size as usize {
        for y in x + 1..size as usize {
            let d1 = geom.sub(&vecs[y], &vecs[x]);
            for z in y + 1..size as usize {
                if !geom.dependent(&d1, &geom.sub(&vecs[z], &vecs[x])) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Largest `q^n` for which [`verify_counts`] enumerates.
pub const COUNT_BRUTE_FORCE_LIMIT: u32 = 400;

/// Checks the counting identities of the construction against enumeration.
pub fn verify_counts(geom: &Geometry) -> Certificate {
    let q = geom.field().order() as u64;
    let size = geom.size() as u64;
    let mut cert = Certificate::new(format!("counting identities for q = {q}, n = {}", geom.dim()));
    let zero_sum = (size - q) * (size - 1) / 6;
    let all = size * (size - q) * (size - 1) / 6;
    cert.push(Check::count("noncollinear-is-zero-sum-times-translations", all, zero_sum * size));
    let lines = (size - 1) / (q - 1);
    let half = (q - 1) / 2;
    cert.push(Check::count("classes-per-design", size.div_ceil(2), half * lines + 1));
    cert.push(Check::count("frame-classes", (size - 1) / 2, half * lines));
    cert.push(Check::count("triples-per-class", size.div_ceil(3), 1 + lines * (q - 1) / 3));
    let per_partial = if geom.dim() >= 2 { q * (q - 1) / 3 * ((size / q - 1) / (q - 1)) } else { 0 };
    cert.push(Check::count("frame-class-size", (size - q) / 3, per_partial));
    if geom.size() <= COUNT_BRUTE_FORCE_LIMIT {
        cert.push(Check::count("zero-sum-noncollinear", zero_sum, count_zero_sum_noncollinear(geom)));
        cert.push(Check::count("noncollinear", all, count_noncollinear(geom)));
    } else {
        cert.notes.push(format!("enumeration skipped: q^n = {size} > {COUNT_BRUTE_FORCE_LIMIT}"));
    }
    cert.counts.points = size + 2;
    cert
}

/// For each triple, [`Construction::locate_triple`] must name a class of a
/// design that contains it.
pub fn cross_check_locate(ctx: &Construction, triples: impl IntoIterator<Item = Triple>) -> Certificate {
    let mut cert = Certificate::new(format!("locate oracle for LKTS({})", ctx.order()));
    let mut checked = 0u64;
    let mut failure = None;
    for t in triples {
        checked += 1;
        let located = ctx.locate_triple(&t);
        let ok = match &located {
            Ok((w, id)) => ctx.build_class_by_id(w, *id).map(|c| c.contains(&t)).unwrap_or(false),
            Err(_) => false,
        };
        if !ok && failure.is_none() {
            let detail = match located {
                Ok((w, id)) => format!("triple {t} located in class {id} of design {w}, which lacks it"),
                Err(e) => format!("triple {t} could not be located: {e}"),
            };
            failure = Some(Witness::Text(detail));
        }
    }
    cert.push(Check::from_option("locate-membership", failure));
    cert.counts.points = ctx.order() as u64;
    cert.counts.distinct_triples = checked;
    cert
}

/// The converse direction: every block of each design locates back to that
/// design and class.
pub fn cross_check_locate_designs<'a>(
    ctx: &Construction,
    designs: impl IntoIterator<Item = &'a Design>,
) -> Certificate {
    let mut cert = Certificate::new(format!("locate inverse for LKTS({})", ctx.order()));
    let mut failure = None;
    let mut checked = 0u64;
    for design in designs {
        for class in &design.classes {
            for t in &class.triples {
                checked += 1;
                let located: Option<(PointVector, ClassId)> = ctx.locate_triple(t).ok();
                if located.as_ref() != Some(&(design.w.clone(), class.id)) && failure.is_none() {
                    failure = Some(Witness::Text(format!(
                        "block {t} of class {} in design {} located at {:?}",
                        class.id, design.w, located
                    )));
                }
            }
        }
    }
    cert.push(Check::from_option("locate-inverse", failure));
    cert.counts.points = ctx.order() as u64;
    cert.counts.distinct_triples = checked;
    cert
}

/// All 3-subsets of an `N`-point set, in colex order.
pub fn all_triples(points: u32) -> impl Iterator<Item = Triple> {
    let rank = TripleRank::new(points);
    (0..rank.total()).map(move |r| rank.unrank(r).expect("in range"))
}
