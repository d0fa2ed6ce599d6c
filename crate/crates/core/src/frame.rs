//! Zero-sum triples of `W` and their partition into frame classes.
//!
//! These depend only on the geometry, not on the base large set.

use alloc::vec::Vec;

use crate::construct::{ClassId, ConstructionError};
use crate::field::Elem;
use crate::geometry::{Geometry, GeometryError, PlaneBasis, PointVector};
use crate::triple::Triple;

/// `T(u, v) = {u + v, ωu + ω²v, ω²u + ωv}` for independent `u, v`.
pub fn triple_t(geom: &Geometry, u: &PointVector, v: &PointVector) -> Result<Triple, ConstructionError> {
    for x in [u, v] {
        if x.dim() != geom.dim() {
            return Err(GeometryError::DimensionMismatch { expected: geom.dim(), found: x.dim() }.into());
        }
    }
    if geom.dependent(u, v) {
        return Err(ConstructionError::DependentVectors);
    }
    Ok(triple_t_signed(geom, u, v, false))
}

/// `T(u, v)`, or `-T(u, v)` when `negate`.
pub(crate) fn triple_t_signed(geom: &Geometry, u: &PointVector, v: &PointVector, negate: bool) -> Triple {
    let f = geom.field();
    let w1 = f.omega();
    let w2 = f.mul(w1, w1);
    let sign = |x: PointVector| if negate { geom.neg(&x) } else { x };
    let p0 = sign(geom.add(u, v));
    let p1 = sign(geom.add(&geom.scale(w1, u), &geom.scale(w2, v)));
    let p2 = sign(geom.add(&geom.scale(w2, u), &geom.scale(w1, v)));
    Triple::new(geom.encode(&p0), geom.encode(&p1), geom.encode(&p2)).expect("independent u, v give distinct points")
}

/// Pointwise negation of a triple of vectors.
pub fn negate(geom: &Geometry, t: &Triple) -> Triple {
    t.map(|p| geom.encode(&geom.neg(&geom.decode(p).expect("finite point")))).expect("negation is a bijection")
}

/// The triples `±T(u, v)` with `v ∈ L` and `f_L(u, v) = g^m c`, `0 <= m < t`.
/// They partition `L ∖ span(u)`; there are `q(q-1)/3` of them.
pub fn partial_class_plane(
    geom: &Geometry,
    u: &PointVector,
    plane: &PlaneBasis,
    c: Elem,
) -> Result<Vec<Triple>, ConstructionError> {
    let f = geom.field();
    if c.is_zero() {
        return Err(ConstructionError::ZeroScalar);
    }
    let (u1, u2) = geom.plane_coords(plane, u)?;
    if u1.is_zero() && u2.is_zero() {
        return Err(GeometryError::ZeroVector.into());
    }
    // v0 with f_L(u, v0) = 1; {v : f_L(u, v) = s} = {s v0 + βu}
    let (b1, b2) = plane.basis();
    let v0 = if !u1.is_zero() {
        geom.scale(f.inv(u1).expect("nonzero"), b2)
    } else {
        geom.scale(f.neg(f.inv(u2).expect("nonzero")), b1)
    };
    debug_assert_eq!(geom.plane_form(plane, u, &v0), Ok(Elem::ONE));
    let mut out = Vec::with_capacity((2 * f.t() * f.order()) as usize);
    for m in 0..f.t() {
        let sv0 = geom.scale(f.mul(f.gen_pow(m as i64), c), &v0);
        for beta in f.elements() {
            let v = geom.add_scaled(&sv0, beta, u);
            out.push(triple_t_signed(geom, u, &v, false));
            out.push(triple_t_signed(geom, u, &v, true));
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Frame class `F(line, a, b)`: the union over planes through `K_line` of
/// the partial classes at `u = g^a u_line` and `c = ω^b`. Partitions
/// `W ∖ K_line`; empty when `n = 1`.
pub fn partial_class(geom: &Geometry, line: usize, a: u32, b: u32) -> Result<Vec<Triple>, ConstructionError> {
    let f = geom.field();
    if line >= geom.lines().len() || a >= f.t() || b >= 3 {
        return Err(ConstructionError::ClassOutOfRange { line, a, b });
    }
    let u = geom.scale(f.gen_pow(a as i64), geom.lines().generator(line));
    let c = f.pow(f.omega(), b as u64);
    let mut out = Vec::new();
    for plane in geom.planes_through(line) {
        out.extend(partial_class_plane(geom, &u, plane, c)?);
    }
    out.sort_unstable();
    Ok(out)
}

/// All `(qⁿ-1)/2` frame classes in [`ClassId`] order.
pub fn frame(geom: &Geometry) -> Vec<(ClassId, Vec<Triple>)> {
    let t = geom.field().t();
    let mut out = Vec::new();
    for line in 0..geom.lines().len() {
        for b in 0..3 {
            for a in 0..t {
                let class = partial_class(geom, line, a, b).expect("indices in range");
                out.push((ClassId::Frame { line, a, b }, class));
            }
        }
    }
    out
}
