//! Large sets of Kirkman triple systems of order qⁿ + 2.
//!
//! Given a large set of KTS(q+2) over `GF(q)`, q ≡ 1 (mod 6) a prime power,
//! this crate builds the `qⁿ` pairwise disjoint KTS(qⁿ+2) on
//! `GF(q)ⁿ ∪ {∞₁, ∞₂}` and certifies them independently.
//!
//! - [`field`]: `GF(p^k)` with primitive root and cube root of unity
//! - [`geometry`]: lines, planes and alternating forms of `GF(q)ⁿ`
//! - [`base`]: the input large set of KTS(q+2)
//! - [`frame`]: zero-sum triples `T(u, v)` and the frame classes
//! - [`construct`]: the designs `B_w` and the inverse map
//!   from a triple to the design holding it
//! - [`verify`]: STS/KTS/large-set certificates and counting identities
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod base;
pub mod construct;
pub mod field;
pub mod frame;
pub mod geometry;
pub mod triple;
pub mod verify;

pub use base::{builtin_denniston15, normalize_base, BaseError, BaseLargeSet};
pub use construct::{ClassId, Construction, ConstructionError, Design, ParallelClass};
pub use field::{Elem, Field, FieldError, PrimePower};
pub use geometry::{ExtPoint, Geometry, GeometryError, PlaneBasis, PointVector};
pub use triple::{Point, PointSet, Triple};
pub use verify::{Certificate, Check, TripleRank, Witness};
