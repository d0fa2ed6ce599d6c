//! The KTS(qⁿ+2) designs `B_w` and the large set `{B_w : w ∈ W}`.
//!
//! For independent `u, v` let `T(u, v) = {u + v, ωu + ω²v, ω²u + ωv}`.
//! Fixing a line `K` through `u`, a plane `L ⊃ K` and `c ≠ 0`, the triples
//! `±T(u, v)` with `f_L(u, v) = g^m c` for `0 <= m < t` partition `L ∖ K`.
//! Taking the union over all planes through `K_i`, with `u = g^a u_i` and
//! `c = ω^b`, gives the frame class `F(i, a, b)` partitioning `W ∖ K_i`.
//! The `(qⁿ-1)/2` frame classes together hold every zero-sum non-collinear
//! triple of `W` exactly once.
//!
//! Design `B_w` has one class per frame class, `(w + F(i, a, b))` plus the
//! hole `w + K_i` filled with `Q[p_i(w)][a + bt + 1]` placed on the line,
//! and a final class built from the `Q[p_i(w)][0]` of every line.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::base::BaseLargeSet;
use crate::field::{Elem, Field};
use crate::frame;
use crate::geometry::{Geometry, GeometryError, PlaneBasis, PointVector};
use crate::triple::{Point, PointSet, Triple};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    /// The base large set is over a different field.
    OrderMismatch {
        field: u32,
        base: u32,
    },
    DependentVectors,
    ZeroScalar,
    ClassOutOfRange {
        line: usize,
        a: u32,
        b: u32,
    },
    /// A triple with a point outside `X`.
    MalformedTriple(Triple),
    /// A projected triple that no base design contains.
    NotInBase(Triple),
    Geometry(GeometryError),
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::OrderMismatch { field, base } => {
                write!(f, "base large set is over GF({base}) but the field is GF({field})")
            }
            ConstructionError::DependentVectors => write!(f, "vectors are linearly dependent"),
            ConstructionError::ZeroScalar => write!(f, "scalar must be nonzero"),
            ConstructionError::ClassOutOfRange { line, a, b } => {
                write!(f, "no frame class for line {line}, a = {a}, b = {b}")
            }
            ConstructionError::MalformedTriple(t) => write!(f, "triple {t} has a point outside X"),
            ConstructionError::NotInBase(t) => write!(f, "base large set has no block {t}"),
            ConstructionError::Geometry(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ConstructionError {}

impl From<GeometryError> for ConstructionError {
    fn from(e: GeometryError) -> Self {
        ConstructionError::Geometry(e)
    }
}

/// Label of a parallel class of `B_w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    Star,
    /// Line index (0-based), `0 <= a < t`, `b ∈ {0, 1, 2}`.
    Frame {
        line: usize,
        a: u32,
        b: u32,
    },
}

impl ClassId {
    /// Index `a + bt + 1` of the base class filling the hole; 0 for `Star`.
    pub fn base_class(&self, t: u32) -> usize {
        match *self {
            ClassId::Star => 0,
            ClassId::Frame { a, b, .. } => (a + b * t + 1) as usize,
        }
    }

    /// Inverse of [`base_class`](Self::base_class) on a given line.
    pub fn from_base_class(line: usize, j: usize, t: u32) -> ClassId {
        if j == 0 {
            return ClassId::Star;
        }
        let j = j as u32 - 1;
        ClassId::Frame { line, a: j % t, b: j / t }
    }

    fn key(&self) -> (u8, usize, u32, u32) {
        match *self {
            ClassId::Star => (0, 0, 0, 0),
            ClassId::Frame { line, a, b } => (1, line, b, a),
        }
    }
}

/// Star first, then by line and base class index.
impl Ord for ClassId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for ClassId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `star` or `u<line>.a<a>.b<b>` with a 1-based line number.
impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Star => f.write_str("star"),
            ClassId::Frame { line, a, b } => write!(f, "u{}.a{a}.b{b}", line + 1),
        }
    }
}

impl core::str::FromStr for ClassId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        if s == "star" {
            return Ok(ClassId::Star);
        }
        let rest = s.strip_prefix('u').ok_or(())?;
        let mut parts = rest.split('.');
        let line: usize = parts.next().ok_or(())?.parse().map_err(|_| ())?;
        let a = parts.next().and_then(|p| p.strip_prefix('a')).ok_or(())?.parse().map_err(|_| ())?;
        let b = parts.next().and_then(|p| p.strip_prefix('b')).ok_or(())?.parse().map_err(|_| ())?;
        if parts.next().is_some() || line == 0 {
            return Err(());
        }
        Ok(ClassId::Frame { line: line - 1, a, b })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelClass {
    pub id: ClassId,
    /// Sorted.
    pub triples: Vec<Triple>,
}

impl AsRef<[Triple]> for ParallelClass {
    fn as_ref(&self) -> &[Triple] {
        &self.triples
    }
}

impl ParallelClass {
    pub fn new(id: ClassId, mut triples: Vec<Triple>) -> Self {
        triples.sort_unstable();
        ParallelClass { id, triples }
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.binary_search(t).is_ok()
    }
}

/// A design `B_w`; classes are in [`ClassId`] order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    pub w: PointVector,
    pub classes: Vec<ParallelClass>,
}

impl Design {
    pub fn class(&self, id: ClassId) -> Option<&ParallelClass> {
        self.classes.binary_search_by(|c| c.id.cmp(&id)).ok().map(|i| &self.classes[i])
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Triple> {
        self.classes.iter().flat_map(|c| c.triples.iter())
    }

    pub fn block_count(&self) -> usize {
        self.classes.iter().map(|c| c.triples.len()).sum()
    }
}

type Decompose<'d> = &'d dyn Fn(usize, &PointVector) -> (PointVector, Elem);

/// Field, geometry, base large set and the precomputed frame.
#[derive(Debug, Clone)]
pub struct Construction {
    geom: Geometry,
    base: BaseLargeSet,
    /// Frame classes indexed by `line * 3t + a + bt`.
    frame: Vec<Vec<Triple>>,
}

impl Construction {
    pub fn new(geom: Geometry, base: BaseLargeSet) -> Result<Self, ConstructionError> {
        let (fq, bq) = (geom.field().order(), base.q());
        if fq != bq || geom.field().spec() != base.spec() {
            return Err(ConstructionError::OrderMismatch { field: fq, base: bq });
        }
        let frame = frame::frame(&geom).into_iter().map(|(_, class)| class).collect();
        Ok(Construction { geom, base, frame })
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geom
    }

    pub fn field(&self) -> &Field {
        self.geom.field()
    }

    pub fn base(&self) -> &BaseLargeSet {
        &self.base
    }

    pub fn point_set(&self) -> PointSet {
        self.geom.point_set()
    }

    /// `qⁿ + 2`.
    pub fn order(&self) -> u32 {
        self.geom.size() + 2
    }

    /// `(qⁿ - 1) / 2`.
    pub fn frame_class_count(&self) -> usize {
        self.geom.lines().len() * (self.field().order() as usize - 1) / 2
    }

    /// All class ids of a design, in order.
    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + '_ {
        let t = self.field().t();
        let half = (self.field().order() - 1) / 2;
        core::iter::once(ClassId::Star).chain(
            (0..self.geom.lines().len())
                .flat_map(move |line| (1..=half as usize).map(move |j| ClassId::from_base_class(line, j, t))),
        )
    }

    fn frame_slot(&self, line: usize, a: u32, b: u32) -> Result<usize, ConstructionError> {
        let t = self.field().t();
        if line >= self.geom.lines().len() || a >= t || b >= 3 {
            return Err(ConstructionError::ClassOutOfRange { line, a, b });
        }
        Ok(line * (3 * t as usize) + (a + b * t) as usize)
    }

    /// `T(u, v)` for independent `u, v`.
    pub fn triple_t(&self, u: &PointVector, v: &PointVector) -> Result<Triple, ConstructionError> {
        frame::triple_t(&self.geom, u, v)
    }

    /// `-T` for a triple of vectors.
    pub fn negate(&self, t: &Triple) -> Triple {
        frame::negate(&self.geom, t)
    }

    /// See [`frame::partial_class_plane`].
    pub fn partial_class_plane(
        &self,
        u: &PointVector,
        plane: &PlaneBasis,
        c: Elem,
    ) -> Result<Vec<Triple>, ConstructionError> {
        frame::partial_class_plane(&self.geom, u, plane, c)
    }

    /// See [`frame::partial_class`].
    pub fn partial_class(&self, line: usize, a: u32, b: u32) -> Result<Vec<Triple>, ConstructionError> {
        frame::partial_class(&self.geom, line, a, b)
    }

    /// The cached frame class `F(line, a, b)`.
    pub fn frame_class(&self, line: usize, a: u32, b: u32) -> Result<&[Triple], ConstructionError> {
        Ok(&self.frame[self.frame_slot(line, a, b)?])
    }

    /// All frame classes in [`ClassId`] order.
    pub fn frame(&self) -> impl Iterator<Item = (ClassId, &[Triple])> + '_ {
        self.class_ids().skip(1).map(move |id| match id {
            ClassId::Frame { line, a, b } => (id, self.frame_class(line, a, b).expect("valid id")),
            ClassId::Star => unreachable!(),
        })
    }

    /// `r + A u_i` for every block `A` of `Q[p][j]`, where `w = r + p u_i`
    /// is the decomposition chosen by `decomp`.
    fn hole<'s>(
        &'s self,
        w: &PointVector,
        line: usize,
        j: usize,
        decomp: Decompose<'_>,
    ) -> impl Iterator<Item = Triple> + 's {
        let (r, p) = decomp(line, w);
        let u = self.geom.lines().generator(line);
        self.base.class(p, j).iter().map(move |a| self.geom.ext_affine(a, &r, u))
    }

    fn pivot_decomposition(&self) -> impl Fn(usize, &PointVector) -> (PointVector, Elem) + '_ {
        move |line, x| self.geom.pivot_decompose(line, x)
    }

    /// The class `P_{w, u_line, a+bt+1}`.
    pub fn build_class(
        &self,
        w: &PointVector,
        line: usize,
        a: u32,
        b: u32,
    ) -> Result<ParallelClass, ConstructionError> {
        self.build_class_with(w, line, a, b, &self.pivot_decomposition())
    }

    fn build_class_with(
        &self,
        w: &PointVector,
        line: usize,
        a: u32,
        b: u32,
        decomp: Decompose<'_>,
    ) -> Result<ParallelClass, ConstructionError> {
        let frame = self.frame_class(line, a, b)?;
        let id = ClassId::Frame { line, a, b };
        let mut triples: Vec<Triple> = frame.iter().map(|t| self.geom.translate(t, w)).collect();
        triples.extend(self.hole(w, line, id.base_class(self.field().t()), decomp));
        let class = ParallelClass::new(id, triples);
        debug_assert!(self.is_parallel_class(&class.triples));
        Ok(class)
    }

    /// The class `P_{w,*}`: the blocks of `Q[p_i(w)][0]` placed on every line
    /// through `w`, with the common block `{w, ∞₁, ∞₂}` kept once.
    pub fn build_star_class(&self, w: &PointVector) -> ParallelClass {
        self.build_star_class_with(w, &self.pivot_decomposition())
    }

    fn build_star_class_with(&self, w: &PointVector, decomp: Decompose<'_>) -> ParallelClass {
        let set = self.point_set();
        let mut triples = Vec::with_capacity(self.order() as usize / 3);
        for line in 0..self.geom.lines().len() {
            for t in self.hole(w, line, 0, decomp) {
                let [_, b, c] = t.points();
                let is_inf = b == set.inf1() && c == set.inf2();
                if !is_inf || line == 0 {
                    triples.push(t);
                }
            }
        }
        let class = ParallelClass::new(ClassId::Star, triples);
        debug_assert!(self.is_parallel_class(&class.triples));
        class
    }

    pub fn build_class_by_id(&self, w: &PointVector, id: ClassId) -> Result<ParallelClass, ConstructionError> {
        self.build_class_by_id_with(w, id, &self.pivot_decomposition())
    }

    fn build_class_by_id_with(
        &self,
        w: &PointVector,
        id: ClassId,
        decomp: Decompose<'_>,
    ) -> Result<ParallelClass, ConstructionError> {
        match id {
            ClassId::Star => Ok(self.build_star_class_with(w, decomp)),
            ClassId::Frame { line, a, b } => self.build_class_with(w, line, a, b, decomp),
        }
    }

    /// `B_w` with a different coset transversal: the representative of the
    /// coset `r + K_line` (with `r` the pivot-zero representative) becomes
    /// `r + shift(line, r) u_line`.
    pub fn build_design_with_transversal(
        &self,
        w: &PointVector,
        shift: &dyn Fn(usize, &PointVector) -> Elem,
    ) -> Design {
        let f = self.field();
        let decomp = |line: usize, x: &PointVector| {
            let (r, p) = self.geom.pivot_decompose(line, x);
            let s = shift(line, &r);
            (self.geom.add_scaled(&r, s, self.geom.lines().generator(line)), f.sub(p, s))
        };
        let classes = self
            .class_ids()
            .map(|id| self.build_class_by_id_with(w, id, &decomp).expect("ids from class_ids are valid"))
            .collect();
        Design { w: w.clone(), classes }
    }

    /// `B_w`, built directly from its definition.
    pub fn build_design(&self, w: &PointVector) -> Design {
        let classes =
            self.class_ids().map(|id| self.build_class_by_id(w, id).expect("ids from class_ids are valid")).collect();
        Design { w: w.clone(), classes }
    }

    /// `D + w`, class ids preserved.
    pub fn translate_design(&self, design: &Design, w: &PointVector) -> Design {
        let classes = design
            .classes
            .iter()
            .map(|c| ParallelClass::new(c.id, c.triples.iter().map(|t| self.geom.translate(t, w)).collect()))
            .collect();
        Design { w: self.geom.add(&design.w, w), classes }
    }

    /// Designs `B_w` for every `w` in id order. With a translation-invariant
    /// base, `B_0` is built once and translated.
    pub fn large_set(&self) -> LargeSet<'_> {
        let origin = self.base.is_translation_invariant().then(|| self.build_design(&self.geom.zero()));
        LargeSet { ctx: self, next: 0, origin }
    }

    /// Same as [`large_set`](Self::large_set) but never uses translation.
    pub fn large_set_direct(&self) -> LargeSet<'_> {
        LargeSet { ctx: self, next: 0, origin: None }
    }

    fn is_parallel_class(&self, triples: &[Triple]) -> bool {
        let mut seen = alloc::vec![false; self.order() as usize];
        for t in triples {
            for p in t.points() {
                if core::mem::replace(&mut seen[p.0 as usize], true) {
                    return false;
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// The unique `(w, class)` with `t` in that class of `B_w`.
    pub fn locate_triple(&self, t: &Triple) -> Result<(PointVector, ClassId), ConstructionError> {
        let g = &self.geom;
        let set = self.point_set();
        if !set.contains(t.points()[2]) {
            return Err(ConstructionError::MalformedTriple(*t));
        }
        let [x, y, z] = t.points();
        let vec = |p: Point| g.decode(p).expect("finite point");
        if y == set.inf1() && z == set.inf2() {
            return Ok((vec(x), ClassId::Star));
        }
        if set.is_finite(z) {
            let (vx, vy, vz) = (vec(x), vec(y), vec(z));
            if g.collinear(&vx, &vy, &vz) {
                self.locate_on_line(&[vx, vy], Some(vz), None)
            } else {
                self.locate_noncollinear(&vx, &vy, &vz)
            }
        } else {
            let inf = if z == set.inf1() { 0 } else { 1 };
            self.locate_on_line(&[vec(x), vec(y)], None, Some(inf))
        }
    }

    /// Triples inside `{∞₁, ∞₂} ∪ (r + K_i)`: project onto the base, find the
    /// base design `d` holding the projection, and take `w = r + d u_i`.
    fn locate_on_line(
        &self,
        pair: &[PointVector; 2],
        third: Option<PointVector>,
        inf: Option<u32>,
    ) -> Result<(PointVector, ClassId), ConstructionError> {
        let g = &self.geom;
        let q = self.field().order();
        let dir = g.encode(&g.sub(&pair[1], &pair[0]));
        let (line, _) = g.direction_of(dir).expect("distinct points");
        let (r, a) = g.pivot_decompose(line, &pair[0]);
        let coeff = |v: &PointVector| g.pivot_decompose(line, v).1.index();
        let third = match (third, inf) {
            (Some(v), _) => coeff(&v),
            (None, Some(i)) => q + i,
            (None, None) => unreachable!(),
        };
        let projected = Triple::from_ids(a.index(), coeff(&pair[1]), third).expect("distinct");
        let (d, j) = self.base.locate(&projected).ok_or(ConstructionError::NotInBase(projected))?;
        let w = g.add_scaled(&r, Elem(d), g.lines().generator(line));
        Ok((w, ClassId::from_base_class(line, j as usize, self.field().t())))
    }

    /// Non-collinear finite triples: `w = (x + y + z) / 3`, and the frame
    /// class of the centred triple comes from
    /// `u₀ = (1 - ω²)(ωx' - y')/3`, `v₀ = (1 - ω²)(ωy' - x')/3`.
    fn locate_noncollinear(
        &self,
        x: &PointVector,
        y: &PointVector,
        z: &PointVector,
    ) -> Result<(PointVector, ClassId), ConstructionError> {
        let f = self.field();
        let g = &self.geom;
        let t = f.t();
        let third = f.inv(f.from_int(3)).expect("characteristic is not 3");
        let w = g.scale(third, &g.add(&g.add(x, y), z));
        let xc = g.sub(x, &w);
        let yc = g.sub(y, &w);
        let omega = f.omega();
        let omega2 = f.mul(omega, omega);
        let k = f.mul(f.sub(Elem::ONE, omega2), third);
        let mut u0 = g.scale(k, &g.sub(&g.scale(omega, &xc), &yc));
        let mut v0 = g.scale(k, &g.sub(&g.scale(omega, &yc), &xc));
        let plane = g.plane_spanned(&xc, &yc)?;
        let mut form = g.plane_form(&plane, &u0, &v0)?;
        let mut e = f.discrete_log(form).expect("u0, v0 are independent");
        if e % (2 * t) >= t {
            // T(u0, v0) = T(v0, u0) and f_L(v0, u0) = g^{3t} f_L(u0, v0)
            core::mem::swap(&mut u0, &mut v0);
            form = f.neg(form);
            e = f.discrete_log(form).expect("nonzero");
        }
        let b = e / (2 * t);
        let (line, scale) = g.direction_of(g.encode(&u0)).expect("u0 is nonzero");
        let d = f.discrete_log(scale).expect("nonzero");
        Ok((w, ClassId::Frame { line, a: d % t, b }))
    }
}

/// Iterator over the designs of the large set; see [`Construction::large_set`].
#[derive(Debug)]
pub struct LargeSet<'a> {
    ctx: &'a Construction,
    next: u32,
    origin: Option<Design>,
}

impl Iterator for LargeSet<'_> {
    type Item = Design;

    fn next(&mut self) -> Option<Design> {
        let g = &self.ctx.geom;
        if self.next >= g.size() {
            return None;
        }
        let w = g.decode(Point(self.next)).expect("in range");
        self.next += 1;
        Some(match &self.origin {
            Some(origin) => self.ctx.translate_design(origin, &w),
            None => self.ctx.build_design(&w),
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rest = (self.ctx.geom.size() - self.next) as usize;
        (rest, Some(rest))
    }
}

impl ExactSizeIterator for LargeSet<'_> {}
