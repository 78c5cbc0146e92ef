//! Exact arithmetic in small finite fields and in quadratic towers `F_q ⊂ F_{q^2}`.
//!
//! Elements are stored as a single code `Σ c_i p^i` of their coordinates in the
//! power basis of the modulus, so every field operation is a table lookup. Codes
//! fit in a byte: the largest supported field has 256 elements.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order representable by [`FieldElem`].
pub const MAX_FIELD_ORDER: usize = 256;

/// Characteristic, degree and modulus of a finite field `F_{p^k}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub k: u32,
    /// Monic modulus, coefficients from degree 0 up to the leading 1.
    pub modulus: Vec<u32>,
}

/// An element of a [`Field`], identified by its coordinate code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElem(pub u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn code(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `b` over `Z/p`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

fn digits(mut v: usize, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((v % p as usize) as u32);
        v /= p as usize;
    }
    out
}

fn monic_with_tail(tail: &[u32]) -> Vec<u32> {
    let mut m = tail.to_vec();
    m.push(1);
    m
}

/// True when the monic polynomial `m` has no monic factor of degree `1..=deg/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let k = m.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d as u32);
        for v in 0..count {
            let f = monic_with_tail(&digits(v, p, d));
            if poly_rem(m, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Validates `p` and the modulus; without a modulus, picks the least monic
    /// irreducible polynomial of degree `k` (comparing coefficients from the top).
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidModulus("degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if order > MAX_FIELD_ORDER as u64 {
            return Err(Error::Unsupported(format!(
                "field of order {p}^{k} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "{m:?} is not monic of degree {k}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("{m:?} has unreduced coefficients")));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::InvalidModulus(format!("{m:?} is reducible mod {p}")));
                }
                m.to_vec()
            }
            None => (0..order as usize)
                .map(|v| monic_with_tail(&digits(v, p, k as usize)))
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists"),
        };
        Ok(FieldSpec { p, k, modulus })
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.k)
    }
}

/// Shorthand for [`FieldSpec::new`].
pub fn field_make(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    FieldSpec::new(p, k, modulus)
}

/// A finite field with precomputed operation tables.
#[derive(Clone, Debug)]
pub struct Field {
    spec: FieldSpec,
    order: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let p = spec.p;
        let k = spec.k as usize;
        let order = spec.order();
        let coeffs: Vec<Vec<u32>> = (0..order).map(|v| digits(v, p, k)).collect();
        let encode = |c: &[u32]| -> u8 {
            let mut v = 0usize;
            for &d in c.iter().take(k).rev() {
                v = v * p as usize + d as usize;
            }
            v as u8
        };
        let mut add = vec![0u8; order * order];
        let mut mul = vec![0u8; order * order];
        for a in 0..order {
            for b in 0..order {
                let s: Vec<u32> = (0..k).map(|i| (coeffs[a][i] + coeffs[b][i]) % p).collect();
                add[a * order + b] = encode(&s);
                let mut prod = vec![0u32; 2 * k];
                for i in 0..k {
                    for j in 0..k {
                        prod[i + j] = (prod[i + j] + coeffs[a][i] * coeffs[b][j]) % p;
                    }
                }
                let mut r = poly_rem(&prod, &spec.modulus, p);
                r.resize(k, 0);
                mul[a * order + b] = encode(&r);
            }
        }
        let neg: Vec<u8> = (0..order)
            .map(|a| (0..order).find(|&b| add[a * order + b] == 0).unwrap() as u8)
            .collect();
        let inv: Vec<u8> = (0..order)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..order).find(|&b| mul[a * order + b] == 1).unwrap() as u8
                }
            })
            .collect();
        let mut frob = vec![0u8; order];
        for (a, slot) in frob.iter_mut().enumerate() {
            let mut x = 1usize;
            for _ in 0..p {
                x = mul[x * order + a] as usize;
            }
            *slot = x as u8;
        }
        Field { spec, order, add, mul, neg, inv, frob }
    }

    /// Field of order `p^k` with the default modulus.
    pub fn with_order(p: u32, k: u32) -> Result<Self> {
        Ok(Field::new(FieldSpec::new(p, k, None)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn degree(&self) -> u32 {
        self.spec.k
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.add[a.code() * self.order + b.code()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.mul[a.code() * self.order + b.code()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.neg[a.code()])
    }

    #[inline]
    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (!a.is_zero()).then(|| FieldElem(self.inv[a.code()]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(p^m)`.
    pub fn frobenius(&self, x: FieldElem, m: u32) -> FieldElem {
        (0..m % self.spec.k).fold(x, |y, _| FieldElem(self.frob[y.code()]))
    }

    /// The image of the integer `n` in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.spec.p as i64) as u8)
    }

    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        digits(x.code(), self.spec.p, self.spec.k as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElem> {
        if c.len() != self.spec.k as usize || c.iter().any(|&d| d >= self.spec.p) {
            return Err(Error::OutOfRange(format!("coefficients {c:?}")));
        }
        let v = c.iter().rev().fold(0usize, |v, &d| v * self.spec.p as usize + d as usize);
        Ok(FieldElem(v as u8))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(|c| FieldElem(c as u8))
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElem> {
        (1..self.order).map(|c| FieldElem(c as u8))
    }

    /// Absolute trace to the prime field, as an integer in `0..p`.
    pub fn abs_trace(&self, x: FieldElem) -> u32 {
        let mut acc = FieldElem::ZERO;
        let mut y = x;
        for _ in 0..self.spec.k {
            acc = self.add(acc, y);
            y = FieldElem(self.frob[y.code()]);
        }
        debug_assert!(acc.code() < self.spec.p as usize);
        acc.0 as u32
    }

    /// Least-code root in this field of a polynomial given by its coefficients
    /// (themselves elements of this field).
    fn root_of(&self, poly: &[FieldElem]) -> Option<FieldElem> {
        self.elements().find(|&x| {
            poly.iter()
                .rev()
                .fold(FieldElem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
                .is_zero()
        })
    }

    /// Finds an embedding of `sub` into `self` by sending the generator of `sub`
    /// to the least root of its modulus; checked to be a ring homomorphism.
    pub fn embedding_of(&self, sub: &Field) -> Result<Vec<FieldElem>> {
        if sub.characteristic() != self.characteristic() || !self.degree().is_multiple_of(sub.degree()) {
            return Err(Error::Unsupported(format!(
                "F_{} does not embed in F_{}",
                sub.order(),
                self.order()
            )));
        }
        let modulus: Vec<FieldElem> =
            sub.spec.modulus.iter().map(|&c| self.from_int(c as i64)).collect();
        let root = self
            .root_of(&modulus)
            .ok_or_else(|| Error::Verification("modulus has no root in extension".into()))?;
        let map: Vec<FieldElem> = sub
            .elements()
            .map(|x| {
                sub.coeffs(x).iter().rev().fold(FieldElem::ZERO, |acc, &c| {
                    self.add(self.mul(acc, root), self.from_int(c as i64))
                })
            })
            .collect();
        for a in sub.elements() {
            for b in sub.elements() {
                let (ia, ib) = (map[a.code()], map[b.code()]);
                if map[sub.add(a, b).code()] != self.add(ia, ib)
                    || map[sub.mul(a, b).code()] != self.mul(ia, ib)
                {
                    return Err(Error::Verification("embedding is not a ring map".into()));
                }
            }
        }
        let mut seen = vec![false; self.order];
        for x in &map {
            if std::mem::replace(&mut seen[x.code()], true) {
                return Err(Error::Verification("embedding is not injective".into()));
            }
        }
        Ok(map)
    }
}

/// The quadratic tower `F = F_q ⊂ E = F_{q^2}` with a fixed embedding.
#[derive(Clone, Debug)]
pub struct Tower {
    base: Field,
    ext: Field,
    embedding: Vec<FieldElem>,
    restriction: Vec<Option<FieldElem>>,
}

impl Tower {
    /// `F_{p^k} ⊂ F_{p^{2k}}`, both with default moduli.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        Self::from_specs(FieldSpec::new(p, k, None)?, FieldSpec::new(p, 2 * k, None)?)
    }

    pub fn from_specs(base: FieldSpec, ext: FieldSpec) -> Result<Self> {
        if base.p != ext.p || ext.k != 2 * base.k {
            return Err(Error::Unsupported("tower must be quadratic".into()));
        }
        let base = Field::new(base);
        let ext = Field::new(ext);
        let embedding = ext.embedding_of(&base)?;
        let mut restriction = vec![None; ext.order()];
        for (i, e) in embedding.iter().enumerate() {
            restriction[e.code()] = Some(FieldElem(i as u8));
        }
        Ok(Tower { base, ext, embedding, restriction })
    }

    /// Tower over the field with `q` elements.
    pub fn for_q(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::Unsupported(format!("q = {q}")))?;
        Self::new(p, k)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ext(&self) -> &Field {
        &self.ext
    }

    pub fn q(&self) -> usize {
        self.base.order()
    }

    #[inline]
    pub fn embed(&self, x: FieldElem) -> FieldElem {
        self.embedding[x.code()]
    }

    #[inline]
    pub fn restrict(&self, x: FieldElem) -> Option<FieldElem> {
        self.restriction[x.code()]
    }

    #[inline]
    pub fn in_base(&self, x: FieldElem) -> bool {
        self.restriction[x.code()].is_some()
    }

    /// `x^q` on `E`.
    #[inline]
    pub fn frob_q(&self, x: FieldElem) -> FieldElem {
        self.ext.frobenius(x, self.base.degree())
    }

    /// `Tr_{E/F}(x) = x + x^q`, returned as an element of `F`.
    pub fn rel_trace(&self, x: FieldElem) -> FieldElem {
        let t = self.ext.add(x, self.frob_q(x));
        self.restrict(t).expect("relative trace lands in the base field")
    }

    /// `N_{E/F}(x) = x^(q+1)`, returned as an element of `F`.
    pub fn rel_norm(&self, x: FieldElem) -> FieldElem {
        let t = self.ext.mul(x, self.frob_q(x));
        self.restrict(t).expect("relative norm lands in the base field")
    }

    /// All `x ∈ E` with `Tr_{E/F}(x) = 0`.
    pub fn trace_zero(&self) -> Vec<FieldElem> {
        self.ext.elements().filter(|&x| self.rel_trace(x).is_zero()).collect()
    }

    /// The least nonzero trace-zero element of `E`.
    pub fn default_beta(&self) -> FieldElem {
        self.ext
            .units()
            .find(|&x| self.rel_trace(x).is_zero())
            .expect("the trace-zero line is nonzero")
    }
}

/// `(p, k)` with `q = p^k`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

/// Standalone Frobenius helper matching [`Field::frobenius`].
pub fn frobenius(field: &Field, x: FieldElem, m: u32) -> FieldElem {
    field.frobenius(x, m)
}

/// A nontrivial additive character `x ↦ exp(2πi·AbsTr(βx)/p)` of a field.
#[derive(Clone, Debug)]
pub struct AdditiveChar {
    beta: FieldElem,
    p: u32,
    exponents: Vec<u32>,
    roots: Vec<Complex64>,
}

fn roots_of_unity(p: u32) -> Vec<Complex64> {
    (0..p)
        .map(|m| {
            if m == 0 {
                Complex64::new(1.0, 0.0)
            } else if 2 * m == p {
                Complex64::new(-1.0, 0.0)
            } else {
                Complex64::from_polar(1.0, 2.0 * PI * m as f64 / p as f64)
            }
        })
        .collect()
}

impl AdditiveChar {
    fn build(field: &Field, beta: FieldElem) -> Self {
        let exponents = field.elements().map(|x| field.abs_trace(field.mul(beta, x))).collect();
        AdditiveChar { beta, p: field.characteristic(), exponents, roots: roots_of_unity(field.characteristic()) }
    }

    /// A character of `E` trivial on `F`; requires `β ≠ 0` with `Tr_{E/F}(β) = 0`.
    pub fn over_ext(tower: &Tower, beta: FieldElem) -> Result<Self> {
        if beta.is_zero() {
            return Err(Error::InvalidBeta("beta must be nonzero".into()));
        }
        if beta.code() >= tower.ext().order() || !tower.rel_trace(beta).is_zero() {
            return Err(Error::InvalidBeta(format!(
                "beta = {:?} does not have relative trace zero",
                tower.ext().coeffs(beta)
            )));
        }
        Ok(Self::build(tower.ext(), beta))
    }

    /// A nontrivial character of `F` (indexed by codes of `F`); requires `β ≠ 0`.
    pub fn over_base(tower: &Tower, beta: FieldElem) -> Result<Self> {
        if beta.is_zero() || beta.code() >= tower.base().order() {
            return Err(Error::InvalidBeta("beta must be a nonzero element of F".into()));
        }
        Ok(Self::build(tower.base(), beta))
    }

    pub fn beta(&self) -> FieldElem {
        self.beta
    }

    /// `AbsTr(βx)` in `0..p`; the character value is the corresponding root of unity.
    #[inline]
    pub fn exponent(&self, x: FieldElem) -> u32 {
        self.exponents[x.code()]
    }

    #[inline]
    pub fn eval(&self, x: FieldElem) -> Complex64 {
        self.roots[self.exponents[x.code()] as usize]
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// The root of unity `exp(2πi·m/p)`.
    pub fn root(&self, m: u32) -> Complex64 {
        self.roots[(m % self.p) as usize]
    }
}

/// Shorthand for [`AdditiveChar::over_ext`].
pub fn additive_char(tower: &Tower, beta: FieldElem) -> Result<AdditiveChar> {
    AdditiveChar::over_ext(tower, beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(field_make(2, 1, None).unwrap().modulus, vec![0, 1]);
        assert_eq!(field_make(2, 2, None).unwrap().modulus, vec![1, 1, 1]);
        assert_eq!(field_make(3, 2, None).unwrap().modulus, vec![1, 0, 1]);
        assert_eq!(field_make(2, 4, None).unwrap().modulus, vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(field_make(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(field_make(2, 2, Some(&[1, 0, 1])), Err(Error::InvalidModulus(_))));
        assert!(matches!(field_make(3, 2, Some(&[1, 0, 2])), Err(Error::InvalidModulus(_))));
        assert!(field_make(3, 2, Some(&[2, 1, 1])).is_ok());
    }

    #[test]
    fn f4_generator_squares_to_g_plus_one() {
        let f4 = Field::with_order(2, 2).unwrap();
        let g = f4.from_coeffs(&[0, 1]).unwrap();
        let g_plus_1 = f4.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f4.frobenius(g, 1), g_plus_1);
        assert_eq!(f4.mul(g, g), g_plus_1);
        assert_eq!(f4.frobenius(g, 2), g);
    }

    #[test]
    fn frobenius_fixes_prime_field_and_has_full_order() {
        for (p, k) in [(2, 2), (3, 2), (2, 4)] {
            let f = Field::with_order(p, k).unwrap();
            for x in f.elements() {
                assert_eq!(f.frobenius(x, k), x);
            }
            for n in 0..p as i64 {
                let x = f.from_int(n);
                for m in 0..4 {
                    assert_eq!(f.frobenius(x, m), x);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_ring_map() {
        for q in [2u32, 3, 4, 9] {
            let (p, k) = prime_power(q).unwrap();
            let f = Field::with_order(p, k).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
                    assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                }
            }
        }
    }

    #[test]
    fn relative_trace_examples() {
        let t = Tower::new(2, 1).unwrap();
        let g = t.ext().from_coeffs(&[0, 1]).unwrap();
        assert_eq!(t.rel_trace(g), FieldElem::ONE);
        for a in t.base().elements() {
            assert!(t.rel_trace(t.embed(a)).is_zero());
        }
        let t3 = Tower::new(3, 1).unwrap();
        for a in t3.base().elements() {
            assert_eq!(t3.rel_trace(t3.embed(a)), t3.base().add(a, a));
        }
    }

    #[test]
    fn relative_trace_linear_surjective_and_kernel_size() {
        for q in [2u32, 3, 4, 5, 7, 8, 9] {
            let t = Tower::for_q(q).unwrap();
            let (e, f) = (t.ext(), t.base());
            let mut hit = vec![false; f.order()];
            for x in e.elements() {
                hit[t.rel_trace(x).code()] = true;
                for c in f.elements() {
                    let cx = e.mul(t.embed(c), x);
                    assert_eq!(t.rel_trace(cx), f.mul(c, t.rel_trace(x)));
                }
                for y in e.elements() {
                    assert_eq!(t.rel_trace(e.add(x, y)), f.add(t.rel_trace(x), t.rel_trace(y)));
                }
            }
            assert!(hit.iter().all(|&h| h), "trace onto F at q={q}");
            assert_eq!(t.trace_zero().len(), q as usize);
        }
    }

    #[test]
    fn embedding_is_injective_ring_map_on_all_elements() {
        for q in [2u32, 3, 4, 8, 16] {
            let t = Tower::for_q(q).unwrap();
            let mut images: Vec<_> = t.base().elements().map(|x| t.embed(x)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), q as usize);
            for x in t.base().elements() {
                assert_eq!(t.restrict(t.embed(x)), Some(x));
                assert_eq!(t.frob_q(t.embed(x)), t.embed(x));
            }
        }
    }

    #[test]
    fn additive_character_properties() {
        for q in [2u32, 3, 4] {
            let t = Tower::for_q(q).unwrap();
            let psi = additive_char(&t, t.default_beta()).unwrap();
            assert_eq!(psi.eval(FieldElem::ZERO), Complex64::new(1.0, 0.0));
            for a in t.base().elements() {
                assert_eq!(psi.exponent(t.embed(a)), 0);
            }
            let sum: Complex64 = t.ext().elements().map(|x| psi.eval(x)).sum();
            assert!(sum.norm() < 1e-12);
            for x in t.ext().elements() {
                for y in t.ext().elements() {
                    let lhs = psi.eval(t.ext().add(x, y));
                    assert!((lhs - psi.eval(x) * psi.eval(y)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn additive_character_rejects_bad_beta() {
        let t = Tower::for_q(3).unwrap();
        assert!(additive_char(&t, FieldElem::ZERO).is_err());
        let one = FieldElem::ONE;
        assert!(additive_char(&t, one).is_err());
    }

    #[test]
    fn base_character_is_nontrivial() {
        let t = Tower::for_q(4).unwrap();
        let chi = AdditiveChar::over_base(&t, FieldElem::ONE).unwrap();
        let sum: Complex64 = t.base().elements().map(|x| chi.eval(x)).sum();
        assert!(sum.norm() < 1e-12);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }
}
