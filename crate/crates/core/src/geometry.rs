//! The vector space `W = GF(q)^n` and the point set `X = W ∪ {∞₁, ∞₂}`.
//!
//! Vectors are numbered lexicographically (first coordinate most
//! significant): `(a_0, ..., a_{n-1})` has id `Σ a_j q^{n-1-j}` where `a_j`
//! is the field-element index. `∞₁` and `∞₂` follow as `q^n` and `q^n + 1`.
//!
//! Each 1-dimensional subspace `K_i` is represented by the generator whose
//! last nonzero coordinate is 1 (its *pivot*). Generators are ordered by
//! pivot position and then lexicographically, which for `n = 2` gives
//! `(1,0), (0,1), (1,1), ..., (q-1,1)`.
//!
//! Each 2-dimensional subspace is represented by its reduced row echelon
//! basis `(b₁, b₂)` with pivot columns `j₁ < j₂`. Coordinates in that basis
//! are read off at the pivot columns, and the alternating form of the plane
//! is `f_L(x, y) = x_{j₁} y_{j₂} - x_{j₂} y_{j₁}`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{Elem, Field, FieldError};
use crate::triple::{Point, PointSet, Triple};

/// Upper bound on `q^n`.
pub const MAX_POINTS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryError {
    ZeroVector,
    DependentVectors,
    NotInPlane,
    DimensionMismatch { expected: usize, found: usize },
    ZeroDimension,
    TooLarge(u64),
    NotAVector(u32),
    Field(FieldError),
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::ZeroVector => write!(f, "zero vector has no direction"),
            GeometryError::DependentVectors => write!(f, "vectors are linearly dependent"),
            GeometryError::NotInPlane => write!(f, "vector does not lie in the plane"),
            GeometryError::DimensionMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            GeometryError::ZeroDimension => write!(f, "dimension must be at least 1"),
            GeometryError::TooLarge(size) => {
                write!(f, "space of {size} points exceeds the supported maximum {MAX_POINTS}")
            }
            GeometryError::NotAVector(id) => write!(f, "point {id} is not a vector"),
            GeometryError::Field(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GeometryError {}

impl From<FieldError> for GeometryError {
    fn from(e: FieldError) -> Self {
        GeometryError::Field(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointVector(Vec<Elem>);

impl PointVector {
    pub fn new(coords: Vec<Elem>) -> Self {
        PointVector(coords)
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Position of the last nonzero coordinate.
    pub fn pivot(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }
}

impl fmt::Display for PointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.0.iter().enumerate() {
            if j > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A point of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtPoint {
    Vector(PointVector),
    Inf1,
    Inf2,
}

/// Normalized generators of the 1-dimensional subspaces.
#[derive(Debug, Clone)]
pub struct LineIndex {
    generators: Vec<PointVector>,
    pivots: Vec<usize>,
}

impl LineIndex {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, i: usize) -> &PointVector {
        &self.generators[i]
    }

    pub fn pivot(&self, i: usize) -> usize {
        self.pivots[i]
    }

    pub fn generators(&self) -> &[PointVector] {
        &self.generators
    }
}

/// Reduced row echelon basis of a 2-dimensional subspace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaneBasis {
    b1: PointVector,
    b2: PointVector,
    pivots: (usize, usize),
}

impl PlaneBasis {
    pub fn basis(&self) -> (&PointVector, &PointVector) {
        (&self.b1, &self.b2)
    }

    pub fn pivots(&self) -> (usize, usize) {
        self.pivots
    }
}

/// `GF(q)^n` together with its line and plane indexes.
#[derive(Debug, Clone)]
pub struct Geometry {
    field: Field,
    n: usize,
    size: u32,
    lines: LineIndex,
    /// For each nonzero vector id: (line index, scale) with v = scale · u_line.
    direction: Vec<(u32, Elem)>,
    planes: Vec<Vec<PlaneBasis>>,
}

impl Geometry {
    pub fn new(field: Field, n: usize) -> Result<Self, GeometryError> {
        if n == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        let q = field.order() as u64;
        let size = q.checked_pow(n as u32).unwrap_or(u64::MAX);
        if size > MAX_POINTS {
            return Err(GeometryError::TooLarge(size));
        }
        let mut geom = Geometry {
            field,
            n,
            size: size as u32,
            lines: LineIndex { generators: Vec::new(), pivots: Vec::new() },
            direction: Vec::new(),
            planes: Vec::new(),
        };
        geom.lines = geom.enumerate_lines();
        geom.direction = vec![(u32::MAX, Elem::ZERO); size as usize];
        for (i, u) in geom.lines.generators.iter().enumerate() {
            for c in geom.field.elements().skip(1) {
                let id = geom.encode(&geom.scale(c, u));
                geom.direction[id.0 as usize] = (i as u32, c);
            }
        }
        geom.planes = (0..geom.lines.len()).map(|i| geom.compute_planes_through(i)).collect();
        Ok(geom)
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// `q^n`.
    #[inline]
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn point_set(&self) -> PointSet {
        PointSet::with_finite(self.size)
    }

    pub fn lines(&self) -> &LineIndex {
        &self.lines
    }

    pub fn zero(&self) -> PointVector {
        PointVector(vec![Elem::ZERO; self.n])
    }

    pub fn vector(&self, coords: &[u32]) -> Result<PointVector, GeometryError> {
        if coords.len() != self.n {
            return Err(GeometryError::DimensionMismatch { expected: self.n, found: coords.len() });
        }
        let coords = coords.iter().map(|&c| self.field.elem(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(PointVector(coords))
    }

    pub fn encode(&self, v: &PointVector) -> Point {
        let q = self.field.order();
        Point(v.0.iter().fold(0u32, |acc, c| acc * q + c.index()))
    }

    pub fn decode(&self, p: Point) -> Result<PointVector, GeometryError> {
        if p.0 >= self.size {
            return Err(GeometryError::NotAVector(p.0));
        }
        Ok(self.decode_unchecked(p))
    }

    fn decode_unchecked(&self, p: Point) -> PointVector {
        let q = self.field.order();
        let mut coords = vec![Elem::ZERO; self.n];
        let mut x = p.0;
        for slot in coords.iter_mut().rev() {
            *slot = Elem(x % q);
            x /= q;
        }
        PointVector(coords)
    }

    pub fn ext_point(&self, p: Point) -> Option<ExtPoint> {
        let set = self.point_set();
        if p == set.inf1() {
            Some(ExtPoint::Inf1)
        } else if p == set.inf2() {
            Some(ExtPoint::Inf2)
        } else if p.0 < self.size {
            Some(ExtPoint::Vector(self.decode_unchecked(p)))
        } else {
            None
        }
    }

    pub fn ext_id(&self, p: &ExtPoint) -> Point {
        match p {
            ExtPoint::Vector(v) => self.encode(v),
            ExtPoint::Inf1 => self.point_set().inf1(),
            ExtPoint::Inf2 => self.point_set().inf2(),
        }
    }

    pub fn add(&self, a: &PointVector, b: &PointVector) -> PointVector {
        PointVector(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &PointVector, b: &PointVector) -> PointVector {
        PointVector(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &PointVector) -> PointVector {
        PointVector(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, c: Elem, a: &PointVector) -> PointVector {
        PointVector(a.0.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    /// `a + c·b`.
    pub fn add_scaled(&self, a: &PointVector, c: Elem, b: &PointVector) -> PointVector {
        PointVector(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, self.field.mul(c, y))).collect())
    }

    /// Translates the finite points of a triple by `w`.
    pub fn translate(&self, t: &Triple, w: &PointVector) -> Triple {
        t.map(|p| self.translate_point(p, w)).expect("translation is a bijection")
    }

    pub fn translate_point(&self, p: Point, w: &PointVector) -> Point {
        if p.0 >= self.size {
            return p;
        }
        let q = self.field.order();
        let mut x = p.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for c in w.0.iter().rev() {
            let digit = self.field.add(Elem(x % q), *c);
            out += digit.0 * place;
            x /= q;
            place = place.wrapping_mul(q);
        }
        Point(out)
    }

    /// Splits a nonzero `v` as `scale · generator` with the generator's last
    /// nonzero coordinate equal to 1.
    pub fn normalize_direction(&self, v: &PointVector) -> Result<(PointVector, Elem), GeometryError> {
        self.check_dim(v)?;
        let j = v.pivot().ok_or(GeometryError::ZeroVector)?;
        let scale = v.0[j];
        let inv = self.field.inv(scale)?;
        Ok((self.scale(inv, v), scale))
    }

    /// Line index and scale of a nonzero vector: `v = scale · u_line`.
    pub fn direction_of(&self, v: Point) -> Option<(usize, Elem)> {
        let (i, c) = *self.direction.get(v.0 as usize)?;
        (i != u32::MAX).then_some((i as usize, c))
    }

    fn enumerate_lines(&self) -> LineIndex {
        let q = self.field.order();
        let mut generators = Vec::new();
        let mut pivots = Vec::new();
        for j in 0..self.n {
            for prefix in 0..q.pow(j as u32) {
                let mut coords = vec![Elem::ZERO; self.n];
                let mut x = prefix;
                for slot in coords[..j].iter_mut().rev() {
                    *slot = Elem(x % q);
                    x /= q;
                }
                coords[j] = Elem::ONE;
                generators.push(PointVector(coords));
                pivots.push(j);
            }
        }
        LineIndex { generators, pivots }
    }

    /// Canonical basis of `span(x, y)`.
    pub fn plane_spanned(&self, x: &PointVector, y: &PointVector) -> Result<PlaneBasis, GeometryError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let f = &self.field;
        let (mut r0, mut r1) = (x.clone(), y.clone());
        let j1 =
            (0..self.n).find(|&j| !r0.0[j].is_zero() || !r1.0[j].is_zero()).ok_or(GeometryError::DependentVectors)?;
        if r0.0[j1].is_zero() {
            core::mem::swap(&mut r0, &mut r1);
        }
        r0 = self.scale(f.inv(r0.0[j1])?, &r0);
        r1 = self.add_scaled(&r1, f.neg(r1.0[j1]), &r0);
        let j2 = (0..self.n).find(|&j| !r1.0[j].is_zero()).ok_or(GeometryError::DependentVectors)?;
        r1 = self.scale(f.inv(r1.0[j2])?, &r1);
        r0 = self.add_scaled(&r0, f.neg(r0.0[j2]), &r1);
        Ok(PlaneBasis { b1: r0, b2: r1, pivots: (j1, j2) })
    }

    fn compute_planes_through(&self, line: usize) -> Vec<PlaneBasis> {
        let u = &self.lines.generators[line];
        let planes: BTreeSet<PlaneBasis> = self
            .lines
            .generators
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != line)
            .map(|(_, v)| self.plane_spanned(u, v).expect("distinct lines are independent"))
            .collect();
        planes.into_iter().collect()
    }

    /// The planes containing line `K_line`, in lexicographic basis order.
    pub fn planes_through(&self, line: usize) -> &[PlaneBasis] {
        &self.planes[line]
    }

    /// Coordinates of `x` in the canonical basis of `plane`.
    pub fn plane_coords(&self, plane: &PlaneBasis, x: &PointVector) -> Result<(Elem, Elem), GeometryError> {
        self.check_dim(x)?;
        let (j1, j2) = plane.pivots;
        let (c1, c2) = (x.0[j1], x.0[j2]);
        let rebuilt = self.add(&self.scale(c1, &plane.b1), &self.scale(c2, &plane.b2));
        if &rebuilt != x {
            return Err(GeometryError::NotInPlane);
        }
        Ok((c1, c2))
    }

    pub fn contains(&self, plane: &PlaneBasis, x: &PointVector) -> bool {
        self.plane_coords(plane, x).is_ok()
    }

    /// The alternating form `x₁y₂ - x₂y₁` of the plane, in its canonical basis.
    pub fn plane_form(&self, plane: &PlaneBasis, x: &PointVector, y: &PointVector) -> Result<Elem, GeometryError> {
        let (x1, x2) = self.plane_coords(plane, x)?;
        let (y1, y2) = self.plane_coords(plane, y)?;
        let f = &self.field;
        Ok(f.sub(f.mul(x1, y2), f.mul(x2, y1)))
    }

    /// `x = r + c·u_line`, where `c` is the pivot coordinate of `x` and `r`
    /// has a zero there. The map `x ↦ c` is the coset coefficient `p_i`.
    pub fn pivot_decompose(&self, line: usize, x: &PointVector) -> (PointVector, Elem) {
        let j = self.lines.pivots[line];
        let c = x.0[j];
        let r = self.add_scaled(x, self.field.neg(c), &self.lines.generators[line]);
        (r, c)
    }

    /// Image of a base point under `a ↦ r + a·u`, fixing `∞₁` and `∞₂`.
    /// Base points use the order-`q+2` layout.
    pub fn ext_affine_point(&self, base: Point, r: &PointVector, u: &PointVector) -> Point {
        let q = self.field.order();
        let set = self.point_set();
        match base.0.checked_sub(q) {
            Some(0) => set.inf1(),
            Some(1) => set.inf2(),
            Some(_) => panic!("base point {} out of range for q = {q}", base.0),
            None => self.encode(&self.add_scaled(r, Elem(base.0), u)),
        }
    }

    /// `r + A·u` for a base triple `A`.
    pub fn ext_affine(&self, base: &Triple, r: &PointVector, u: &PointVector) -> Triple {
        base.map(|p| self.ext_affine_point(p, r, u)).expect("u is nonzero, so the map is injective")
    }

    /// `A·u` for a base triple `A`.
    pub fn ext_scale(&self, base: &Triple, u: &PointVector) -> Result<Triple, GeometryError> {
        self.check_dim(u)?;
        if u.is_zero() {
            return Err(GeometryError::ZeroVector);
        }
        Ok(self.ext_affine(base, &self.zero(), u))
    }

    /// Whether `y - x` and `z - x` are linearly dependent.
    pub fn collinear(&self, x: &PointVector, y: &PointVector, z: &PointVector) -> bool {
        let d1 = self.sub(y, x);
        let d2 = self.sub(z, x);
        self.dependent(&d1, &d2)
    }

    pub fn dependent(&self, a: &PointVector, b: &PointVector) -> bool {
        let f = &self.field;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if f.mul(a.0[i], b.0[j]) != f.mul(a.0[j], b.0[i]) {
                    return false;
                }
            }
        }
        true
    }

    fn check_dim(&self, v: &PointVector) -> Result<(), GeometryError> {
        if v.0.len() != self.n {
            return Err(GeometryError::DimensionMismatch { expected: self.n, found: v.0.len() });
        }
        Ok(())
    }
}
