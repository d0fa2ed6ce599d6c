//! Arithmetic in GF(q), q = p^k, restricted to the fields the construction
//! needs: characteristic at least 5 and q ≡ 1 (mod 6).
//!
//! Elements are addressed by their index: the coefficient vector
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` of the polynomial representative
//! has index `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. For prime fields the index
//! is the residue itself. Base-design files for prime-power orders label
//! their points with this index.
//!
//! For k > 1 the modulus is the smallest monic irreducible polynomial of
//! degree k when the coefficient tuples `(c_0, c_1, ..., c_{k-1})` are
//! compared lexicographically with `c_0` first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Upper bound on the field order; keeps the log/exp tables desk-sized.
pub const MAX_ORDER: u32 = 1 << 20;

/// Largest order for which an addition table is precomputed (k > 1 only).
const ADD_TABLE_LIMIT: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u32),
    NotPrimePower(u32),
    /// Characteristic 2 or 3; the construction needs 3 to be invertible.
    SmallCharacteristic(u32),
    NotOneModSix(u32),
    TooLarge(u64),
    ZeroExponent,
    DivisionByZero,
    LogOfZero,
    NotPrimitive(u32),
    IndexOutOfRange {
        index: u32,
        order: u32,
    },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
            FieldError::SmallCharacteristic(p) => {
                write!(f, "characteristic {p} is not supported (need p >= 5)")
            }
            FieldError::NotOneModSix(q) => write!(f, "order {q} is not congruent to 1 mod 6"),
            FieldError::TooLarge(q) => write!(f, "order {q} exceeds the supported maximum {MAX_ORDER}"),
            FieldError::ZeroExponent => write!(f, "exponent k must be positive"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::LogOfZero => write!(f, "discrete logarithm of zero"),
            FieldError::NotPrimitive(g) => write!(f, "element {g} is not a primitive root"),
            FieldError::IndexOutOfRange { index, order } => {
                write!(f, "element index {index} out of range for a field of order {order}")
            }
        }
    }
}

impl core::error::Error for FieldError {}

/// A field element, identified by its index in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `q = p^k` with `q = 6t + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    pub t: u32,
}

impl PrimePower {
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        if k == 0 {
            return Err(FieldError::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if p == 2 || p == 3 {
            return Err(FieldError::SmallCharacteristic(p));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge(q));
        }
        let q = q as u32;
        if q % 6 != 1 {
            return Err(FieldError::NotOneModSix(q));
        }
        Ok(PrimePower { p, k, q, t: (q - 1) / 6 })
    }

    /// Factors `q` as `p^k` and validates it.
    pub fn from_order(q: u32) -> Result<Self, FieldError> {
        let (p, k) = prime_power_decompose(q).ok_or(FieldError::NotPrimePower(q))?;
        Self::new(p, k)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `p` prime and `p^k = q`, if such exist.
pub fn prime_power_decompose(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u32;
    while p as u64 * p as u64 <= q as u64 && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn distinct_prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d as u64 * d as u64 <= n as u64 {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Polynomial helpers over GF(p); coefficient vectors are low-degree first.
mod poly {
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = r[r.len() - 1] as u64;
            let shift = r.len() - 1 - dm;
            for (i, &mc) in m.iter().enumerate() {
                let sub = lead * mc as u64 % p as u64;
                let slot = &mut r[shift + i];
                *slot = ((*slot as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Monic polynomial with the given lower coefficients.
    pub fn monic_from_digits(digits: &[u32]) -> Vec<u32> {
        let mut v = digits.to_vec();
        v.push(1);
        v
    }

    /// True iff the monic polynomial `m` of degree `k` has no monic factor of
    /// degree in `1..=k/2`.
    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for n in 0..count {
                let mut digits = vec![0u32; d];
                let mut x = n;
                for slot in digits.iter_mut() {
                    *slot = (x % p as u64) as u32;
                    x /= p as u64;
                }
                let f = monic_from_digits(&digits);
                if rem_monic(m, &f, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// GF(q) with a fixed primitive root `g` and cube root of unity `ω = g^{2t}`.
#[derive(Debug, Clone)]
pub struct Field {
    spec: PrimePower,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
    g: Elem,
    omega: Elem,
}

impl Field {
    /// Builds GF(p^k) with the smallest primitive root by index.
    pub fn new(p: u32, k: u32) -> Result<Self, FieldError> {
        Self::build(PrimePower::new(p, k)?, None)
    }

    pub fn for_order(q: u32) -> Result<Self, FieldError> {
        Self::build(PrimePower::from_order(q)?, None)
    }

    /// Builds GF(p^k) with a caller-chosen primitive root.
    pub fn with_generator(p: u32, k: u32, g: u32) -> Result<Self, FieldError> {
        Self::build(PrimePower::new(p, k)?, Some(g))
    }

    fn build(spec: PrimePower, generator: Option<u32>) -> Result<Self, FieldError> {
        let PrimePower { p, k, q, t } = spec;
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k as usize) };
        let digits = |mut x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            poly_trimmed(v)
        };
        let undigits = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly::mul(&digits(a), &digits(b), p);
            undigits(&poly::rem_monic(&prod, &modulus, p))
        };
        let slow_pow = |a: u32, mut e: u64| -> u32 {
            let mut base = a;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, base);
                }
                base = slow_mul(base, base);
                e >>= 1;
            }
            acc
        };
        let order = q - 1;
        let factors = distinct_prime_factors(order);
        let is_primitive = |c: u32| c != 0 && factors.iter().all(|&r| slow_pow(c, (order / r) as u64) != 1);
        let g = match generator {
            Some(c) => {
                if c >= q {
                    return Err(FieldError::IndexOutOfRange { index: c, order: q });
                }
                if !is_primitive(c) {
                    return Err(FieldError::NotPrimitive(c));
                }
                c
            }
            None => (1..q).find(|&c| is_primitive(c)).expect("the multiplicative group of a finite field is cyclic"),
        };

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for e in 0..order {
            exp.push(x);
            log[x as usize] = e;
            x = slow_mul(x, g);
        }

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0u32;
            let mut place = 1u32;
            for _ in 0..k {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place = place.wrapping_mul(p);
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let mut x = a;
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..k {
                    out += ((p - x % p) % p) * place;
                    x /= p;
                    place = place.wrapping_mul(p);
                }
                out
            })
            .collect();
        let add = (k > 1 && q <= ADD_TABLE_LIMIT).then(|| {
            let mut table = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    table.push(add_digits(a, b));
                }
            }
            table
        });

        let omega = exp[(2 * t) as usize];
        Ok(Field { spec, modulus, exp, log, neg, add, g: Elem(g), omega: Elem(omega) })
    }

    #[inline]
    pub fn spec(&self) -> PrimePower {
        self.spec
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.spec.q
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    /// `t = (q - 1) / 6`.
    #[inline]
    pub fn t(&self) -> u32 {
        self.spec.t
    }

    /// Monic modulus, low-degree coefficient first (length k + 1).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn generator(&self) -> Elem {
        self.g
    }

    #[inline]
    pub fn omega(&self) -> Elem {
        self.omega
    }

    pub fn elem(&self, index: u32) -> Result<Elem, FieldError> {
        if index < self.spec.q {
            Ok(Elem(index))
        } else {
            Err(FieldError::IndexOutOfRange { index, order: self.spec.q })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.spec.q).map(Elem)
    }

    /// The image of the integer `n` under `Z -> GF(q)`.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.spec.p as i64) as u32)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u32> {
        let p = self.spec.p;
        let mut v = x.0;
        (0..self.spec.k)
            .map(|_| {
                let c = v % p;
                v /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem, FieldError> {
        let p = self.spec.p;
        if coeffs.len() > self.spec.k as usize || coeffs.iter().any(|&c| c >= p) {
            return Err(FieldError::IndexOutOfRange { index: u32::MAX, order: self.spec.q });
        }
        Ok(Elem(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let (p, q) = (self.spec.p, self.spec.q);
        if self.spec.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= p { s - p } else { s });
        }
        if let Some(table) = &self.add {
            return Elem(table[(a.0 * q + b.0) as usize]);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.spec.k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Elem(out)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.spec.q - 1;
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.spec.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = (self.spec.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[(l * (e % n) % n) as usize])
    }

    /// `g^e` for any integer exponent.
    pub fn gen_pow(&self, e: i64) -> Elem {
        let n = (self.spec.q - 1) as i64;
        Elem(self.exp[e.rem_euclid(n) as usize])
    }

    /// The unique `d` in `[0, q - 1)` with `g^d = x`.
    pub fn discrete_log(&self, x: Elem) -> Result<u32, FieldError> {
        if x.0 == 0 {
            return Err(FieldError::LogOfZero);
        }
        Ok(self.log[x.0 as usize])
    }
}

fn poly_trimmed(mut v: Vec<u32>) -> Vec<u32> {
    poly::trim(&mut v);
    v
}

/// Lexicographically smallest monic irreducible of degree `k`, comparing the
/// coefficient tuple `(c_0, ..., c_{k-1})` with `c_0` most significant.
fn smallest_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut digits = vec![0u32; k];
    loop {
        let candidate = poly::monic_from_digits(&digits);
        // a zero constant term means x divides the candidate
        if digits[0] != 0 && poly::is_irreducible(&candidate, p) {
            return candidate;
        }
        // odometer with the last coefficient varying fastest
        let mut pos = k;
        loop {
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < p {
                break;
            }
            digits[pos] = 0;
            assert!(pos > 0, "an irreducible polynomial of every degree exists");
        }
    }
}
