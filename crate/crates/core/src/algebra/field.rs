//! Finite fields GF(p^m) with q <= 256.
//!
//! Elements are stored as integers in `0..q` whose base-p digits are the
//! coefficients of the polynomial representative, constant term first. Every
//! [`FieldSpec`] owns precomputed addition, negation, and log/antilog tables, so
//! all arithmetic is a table lookup.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// An element of some GF(q), stored as its canonical integer encoding.
///
/// The value only has meaning together with the [`FieldSpec`] it came from.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct GfElement(u8);

impl GfElement {
    pub const ZERO: GfElement = GfElement(0);
    pub const ONE: GfElement = GfElement(1);

    pub fn value(self) -> u32 {
        self.0 as u32
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for GfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Coefficients of the monic modulus, constant term first (length m + 1).
    modulus: Vec<u32>,
    add: Vec<u8>,
    neg: Vec<u8>,
    /// exp[i] = g^i for a primitive g, doubled in length so log sums need no reduction.
    exp: Vec<u8>,
    log: Vec<u8>,
}

/// A validated finite field description together with its arithmetic tables.
///
/// Cloning is cheap (reference counted) and the value is immutable, so it can be
/// shared freely between threads.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn builtin_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    match (p, m) {
        (2, 2) => Some(vec![1, 1, 1]),
        (2, 3) => Some(vec![1, 1, 0, 1]),
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        (3, 2) => Some(vec![1, 0, 1]),
        _ => None,
    }
}

/// Remainder of `num` modulo the monic polynomial `den` over GF(p). Both are
/// coefficient lists, constant term first.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    for d in 1..=m / 2 {
        // every monic polynomial of degree d
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                div.push((x % p as usize) as u32);
                x /= p as usize;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Product of two encoded elements by schoolbook multiplication and reduction.
fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    undigits(&poly_rem(&prod, modulus, p), p)
}

impl FieldSpec {
    /// Builds GF(p^m). When `modulus` is `None` and `m > 1` a built-in
    /// irreducible polynomial is used if one is known.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            let md = match modulus {
                Some(md) => md.to_vec(),
                None => builtin_modulus(p, m).ok_or(Error::MissingModulus { p, m })?,
            };
            if md.len() != m as usize + 1 || md[m as usize] != 1 || md.iter().any(|&c| c >= p) {
                return Err(Error::MalformedModulus { p, m });
            }
            if !is_irreducible(&md, p) {
                return Err(Error::ReducibleModulus { p });
            }
            md
        };

        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut neg = vec![0u8; qs];
        for a in 0..q {
            let da = digits(a, p, m);
            let na: Vec<u32> = da.iter().map(|&d| (p - d) % p).collect();
            neg[a as usize] = undigits(&na, p) as u8;
            for b in 0..q {
                let db = digits(b, p, m);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a as usize * qs + b as usize] = undigits(&s, p) as u8;
            }
        }

        // find a primitive element; the multiplicative group is cyclic of order q - 1
        let order = q - 1;
        let mut exp = Vec::new();
        for g in 1..q {
            let mut pows = vec![1u32];
            let mut x = g;
            while x != 1 {
                pows.push(x);
                x = slow_mul(x, g, p, m, &modulus);
            }
            if pows.len() as u32 == order {
                exp = pows;
                break;
            }
        }
        debug_assert_eq!(exp.len() as u32, order);
        let mut log = vec![0u8; qs];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u8;
        }
        let exp: Vec<u8> = exp.iter().chain(exp.iter()).map(|&v| v as u8).collect();

        Ok(FieldSpec(Arc::new(Tables {
            p,
            m,
            q,
            modulus,
            add,
            neg,
            exp,
            log,
        })))
    }

    /// Builds the field of order `q`, factoring `q` as a prime power.
    pub fn from_order(q: u32, modulus: Option<&[u32]>) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m, modulus)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    pub fn element(&self, value: u32) -> Result<GfElement> {
        if value < self.0.q {
            Ok(GfElement(value as u8))
        } else {
            Err(Error::InvalidElement { value, q: self.0.q })
        }
    }

    pub fn contains(&self, a: GfElement) -> bool {
        a.value() < self.0.q
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = GfElement> + '_ {
        (0..self.0.q).map(|v| GfElement(v as u8))
    }

    #[inline]
    pub fn add(&self, a: GfElement, b: GfElement) -> GfElement {
        GfElement(self.0.add[a.0 as usize * self.0.q as usize + b.0 as usize])
    }

    #[inline]
    pub fn neg(&self, a: GfElement) -> GfElement {
        GfElement(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: GfElement, b: GfElement) -> GfElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: GfElement, b: GfElement) -> GfElement {
        if a.0 == 0 || b.0 == 0 {
            return GfElement::ZERO;
        }
        let t = &self.0;
        GfElement(t.exp[t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize])
    }

    pub fn inv(&self, a: GfElement) -> Result<GfElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let t = &self.0;
        let order = (t.q - 1) as usize;
        Ok(GfElement(t.exp[(order - t.log[a.0 as usize] as usize) % order]))
    }

    /// Inner product of two equal-length vectors.
    pub fn dot(&self, a: &[GfElement], b: &[GfElement]) -> GfElement {
        a.iter()
            .zip(b)
            .fold(GfElement::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// Number of vectors in F_q^k.
    pub fn space_size(&self, k: usize) -> usize {
        (self.0.q as usize).pow(k as u32)
    }

    /// Canonical index of a vector: coordinates read as base-q digits with the
    /// first coordinate least significant. `e_1` has index 1, `e_2` index q.
    pub fn vector_index(&self, v: &[GfElement]) -> usize {
        let q = self.0.q as usize;
        v.iter().rev().fold(0, |acc, &x| acc * q + x.0 as usize)
    }

    /// Inverse of [`FieldSpec::vector_index`].
    pub fn index_vector(&self, mut index: usize, k: usize) -> Vec<GfElement> {
        let q = self.0.q as usize;
        (0..k)
            .map(|_| {
                let d = index % q;
                index /= q;
                GfElement(d as u8)
            })
            .collect()
    }

    /// Nonzero vectors of F_q^k in canonical index order.
    pub fn nonzero_vectors(&self, k: usize) -> impl Iterator<Item = Vec<GfElement>> + '_ {
        (1..self.space_size(k)).map(move |i| self.index_vector(i, k))
    }

    /// Digit string naming a vector, e.g. `10` for (1,0). Entries are single
    /// base-36 characters when q <= 36 and dot-separated decimals otherwise.
    pub fn vector_label(&self, v: &[GfElement]) -> String {
        if self.0.q <= 36 {
            v.iter()
                .map(|x| std::char::from_digit(x.value(), 36).unwrap())
                .collect()
        } else {
            v.iter().map(|x| x.value().to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

/// Factors `q` as `p^m` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}
