//! Construction of F_q (q = p^m) and its extensions F_{q^n}, element
//! arithmetic, Frobenius, and deterministic irreducible-polynomial
//! generation.
//!
//! Every construction here is canonical: monic polynomials of a given degree
//! are scanned in increasing order of the integer formed by reading their
//! coefficient encodings as base-q digits (constant term least significant),
//! and the first irreducible wins. Two runs, or two machines, always build
//! bit-identical fields.
//!
//! Elements of F_q are encoded as integers in `[0, q)`: the base-p digits of
//! the encoding are the F_p-coefficients of the element's polynomial
//! representative. The tower is fixed as F_p -> F_q -> F_{q^n}, so the
//! F_q-coordinates of an extension element are literally its coefficient
//! vector.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::fqpoly::{MonicPoly, Poly};
use crate::intfun;

/// Default cap on the base-field size q = p^m.
pub const DEFAULT_FIELD_CAP: u64 = 1 << 20;

/// Multiplication/inverse tables are built for non-prime q up to this size.
const TABLE_CAP: u64 = 512;

/// An element of F_q, stored as its canonical integer encoding in `[0, q)`.
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FqElem(pub(crate) u64);

impl FqElem {
    pub fn encoding(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    mul: Vec<u32>,
    inv: Vec<u32>,
}

/// A fully constructed base field F_q with q = p^m.
#[derive(Clone)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    q: u64,
    /// Monic irreducible of degree m over F_p (digit encodings, lowest
    /// first); the placeholder X when m = 1.
    modulus: Vec<u64>,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        // canonical construction: equal (p, m) implies identical fields
        self.p == other.p && self.m == other.m
    }
}
impl Eq for FieldSpec {}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Build F_q for q = p^m with the canonically-least irreducible modulus.
pub fn make_base_field(p: u64, m: u32) -> Result<FieldSpec> {
    make_base_field_capped(p, m, DEFAULT_FIELD_CAP)
}

/// Same as [`make_base_field`] with an explicit size cap.
pub fn make_base_field_capped(p: u64, m: u32, cap: u64) -> Result<FieldSpec> {
    if !intfun::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroInput);
    }
    let q128 = (p as u128).checked_pow(m).unwrap_or(u128::MAX);
    if q128 > cap as u128 {
        return Err(Error::FieldTooLarge { q: q128, cap });
    }
    let q = q128 as u64;
    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        // scan over F_p; the prime field bootstraps without a scan
        let fp = FieldSpec {
            p,
            m: 1,
            q: p,
            modulus: vec![0, 1],
            tables: None,
        };
        let found = irreducible_of_degree(&fp, m);
        found.coeffs().iter().map(|c| c.0).collect()
    };
    let mut spec = FieldSpec {
        p,
        m,
        q,
        modulus,
        tables: None,
    };
    if m > 1 && q <= TABLE_CAP {
        spec.tables = Some(Arc::new(spec.build_tables()));
    }
    Ok(spec)
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Digit encodings of the F_p modulus, lowest degree first.
    pub fn modulus_digits(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }
    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    pub fn elem(&self, encoding: u64) -> Result<FqElem> {
        if encoding < self.q {
            Ok(FqElem(encoding))
        } else {
            Err(Error::InvalidElement {
                value: encoding,
                q: self.q,
            })
        }
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.m as usize);
        let mut a = a;
        for _ in 0..self.m {
            out.push(a % self.p);
            a /= self.p;
        }
        out
    }

    fn undigits(&self, ds: &[u64]) -> u64 {
        let mut acc = 0u64;
        for &d in ds.iter().rev() {
            acc = acc * self.p + d;
        }
        acc
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        FqElem(self.undigits(&sum))
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.m == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let da = self.digits(a.0);
        let nd: Vec<u64> = da
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        FqElem(self.undigits(&nd))
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.m == 1 {
            // p <= 2^20, so the product fits in u64
            return FqElem(a.0 * b.0 % self.p);
        }
        if let Some(t) = &self.tables {
            return FqElem(t.mul[(a.0 * self.q + b.0) as usize] as u64);
        }
        self.mul_generic(a, b)
    }

    fn mul_generic(&self, a: FqElem, b: FqElem) -> FqElem {
        let (da, db) = (self.digits(a.0), self.digits(b.0));
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // reduce by the monic degree-m modulus
        for i in (m..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..m {
                let sub = c * self.modulus[j] % self.p;
                prod[i - m + j] = (prod[i - m + j] + self.p - sub) % self.p;
            }
        }
        FqElem(self.undigits(&prod[..m]))
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        if self.m == 1 {
            return Ok(FqElem(inv_mod_prime(a.0, self.p)));
        }
        if let Some(t) = &self.tables {
            return Ok(FqElem(t.inv[a.0 as usize] as u64));
        }
        // extended Euclid over F_p[Y] against the modulus
        self.inv_generic(a)
    }

    fn inv_generic(&self, a: FqElem) -> Result<FqElem> {
        let p = self.p;
        let mut r0: Vec<u64> = self.modulus.clone();
        let mut r1: Vec<u64> = self.digits(a.0);
        trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd, a unit since the modulus is irreducible and a != 0
        if r0.len() != 1 {
            return Err(Error::Internal(format!(
                "gcd with the field modulus is not a unit for encoding {}",
                a.0
            )));
        }
        let scale = inv_mod_prime(r0[0], p);
        let mut out: Vec<u64> = s0.iter().map(|&c| c * scale % p).collect();
        out.resize(self.m as usize, 0);
        Ok(FqElem(self.undigits(&out)))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: FqElem, e: &BigUint) -> FqElem {
        let mut acc = self.one();
        let mut base = a;
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
        }
        acc
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut mul = vec![0u32; q * q];
        for a in 0..q as u64 {
            for b in a..q as u64 {
                let v = self.mul_generic(FqElem(a), FqElem(b)).0 as u32;
                mul[(a * self.q + b) as usize] = v;
                mul[(b * self.q + a) as usize] = v;
            }
        }
        let mut inv = vec![0u32; q];
        for a in 1..q as u64 {
            for b in 1..q as u64 {
                if mul[(a * self.q + b) as usize] == 1 {
                    inv[a as usize] = b as u32;
                    break;
                }
            }
        }
        Tables { mul, inv }
    }
}

fn inv_mod_prime(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p)
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    (t.rem_euclid(p as i128)) as u64
}

// dense F_p[Y] helpers on digit vectors (lowest first, trimmed)
fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = inv_mod_prime(b[db], p);
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![0u64; rem.len() - db];
    while rem.len() > db {
        let c = rem.last().copied().unwrap() * lead_inv % p;
        let s = rem.len() - 1 - db;
        quot[s] = c;
        for j in 0..=db {
            let sub = c * b[j] % p;
            rem[s + j] = (rem[s + j] + p - sub) % p;
        }
        trim(&mut rem);
        if rem.len() <= db {
            break;
        }
    }
    (quot, rem)
}

/// An extension field F_{q^n} over a base F_q, with canonical modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: FieldSpec,
    n: u32,
    modulus: MonicPoly,
}

/// An element of an [`ExtField`]: its F_q-coordinate vector of length n
/// with respect to the power basis of the modulus.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExtElem {
    coeffs: Vec<FqElem>,
}

impl ExtElem {
    /// F_q-coordinates, lowest power first.
    pub fn coords(&self) -> &[FqElem] {
        &self.coeffs
    }
}

/// Build F_{q^n} over `spec` with the canonically-least irreducible modulus.
pub fn make_extension(spec: &FieldSpec, n: u32) -> Result<ExtField> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let modulus = irreducible_of_degree(spec, n);
    Ok(ExtField {
        base: spec.clone(),
        n,
        modulus,
    })
}

impl ExtField {
    pub fn base(&self) -> &FieldSpec {
        &self.base
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn modulus(&self) -> &MonicPoly {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElem {
        ExtElem {
            coeffs: vec![self.base.zero(); self.n as usize],
        }
    }

    pub fn one(&self) -> ExtElem {
        let mut e = self.zero();
        e.coeffs[0] = self.base.one();
        e
    }

    pub fn from_coeffs(&self, coeffs: Vec<FqElem>) -> Result<ExtElem> {
        if coeffs.len() != self.n as usize {
            return Err(Error::DegreeMismatch {
                expected: self.n as usize,
                found: coeffs.len(),
            });
        }
        Ok(ExtElem { coeffs })
    }

    /// Decode an element from its integer encoding (base-q digit vector).
    pub fn from_encoding(&self, code: u64) -> Result<ExtElem> {
        let q = self.base.q;
        let mut c = code;
        let mut coeffs = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            coeffs.push(FqElem(c % q));
            c /= q;
        }
        if c != 0 {
            return Err(Error::InvalidElement {
                value: code,
                q: self.base.q,
            });
        }
        Ok(ExtElem { coeffs })
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.coeffs.iter().all(|c| c.0 == 0)
    }

    pub fn is_one(&self, a: &ExtElem) -> bool {
        a.coeffs[0].0 == 1 && a.coeffs[1..].iter().all(|c| c.0 == 0)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.add(x, y))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.sub(x, y))
                .collect(),
        }
    }

    pub fn scale(&self, c: FqElem, a: &ExtElem) -> ExtElem {
        let f = &self.base;
        ExtElem {
            coeffs: a.coeffs.iter().map(|&x| f.mul(c, x)).collect(),
        }
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let f = &self.base;
        let n = self.n as usize;
        if n == 1 {
            return ExtElem {
                coeffs: vec![f.mul(a.coeffs[0], b.coeffs[0])],
            };
        }
        let mut buf = vec![f.zero(); 2 * n - 1];
        for i in 0..n {
            let x = a.coeffs[i];
            if x.0 == 0 {
                continue;
            }
            for j in 0..n {
                let y = b.coeffs[j];
                if y.0 != 0 {
                    buf[i + j] = f.add(buf[i + j], f.mul(x, y));
                }
            }
        }
        let modc = self.modulus.coeffs();
        for i in (n..buf.len()).rev() {
            let c = buf[i];
            if c.0 == 0 {
                continue;
            }
            buf[i] = f.zero();
            for j in 0..n {
                if modc[j].0 != 0 {
                    buf[i - n + j] = f.sub(buf[i - n + j], f.mul(c, modc[j]));
                }
            }
        }
        buf.truncate(n);
        ExtElem { coeffs: buf }
    }

    pub fn pow(&self, a: &ExtElem, e: u64) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &ExtElem, e: &BigUint) -> ExtElem {
        let mut acc = self.one();
        let mut base = a.clone();
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
        }
        acc
    }

    /// The Frobenius map alpha -> alpha^q over the base field.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.base.q)
    }
}

/// Irreducibility over F_q by the standard gcd test: F of degree d is
/// irreducible iff gcd(X^{q^i} - X, F) = 1 for every i <= d/2.
pub fn is_irreducible(spec: &FieldSpec, f: &MonicPoly) -> Result<bool> {
    let d = f.deg();
    if d == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if d == 1 {
        return Ok(true);
    }
    let x = Poly::x(spec);
    let fp = f.as_poly();
    let mut r = Poly::powmod(&x, spec.q(), fp, spec);
    for i in 1..=d / 2 {
        let g = r.sub(&x, spec).gcd(fp, spec);
        if !g.is_one() {
            return Ok(false);
        }
        if i < d / 2 {
            r = Poly::powmod(&r, spec.q(), fp, spec);
        }
    }
    Ok(true)
}

/// The canonically-least monic irreducible of degree `d` over F_q.
///
/// The scan is deterministic and repeated constructions are frequent, so
/// results are memoized process-wide; the cache never changes a value.
pub fn irreducible_of_degree(spec: &FieldSpec, d: u32) -> MonicPoly {
    assert!(d >= 1, "degree must be positive");
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type Cache = Mutex<HashMap<(u64, u32, u32), MonicPoly>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (spec.p, spec.m, d);
    if let Some(found) = cache.lock().unwrap().get(&key) {
        return found.clone();
    }
    let found = scan_for_irreducible(spec, d as usize);
    cache.lock().unwrap().insert(key, found.clone());
    found
}

fn scan_for_irreducible(spec: &FieldSpec, d: usize) -> MonicPoly {
    let mut digits = vec![0u64; d];
    loop {
        let mut coeffs: Vec<FqElem> = digits.iter().map(|&c| FqElem(c)).collect();
        coeffs.push(spec.one());
        let cand = MonicPoly::from_coeffs(coeffs).expect("leading coefficient is one");
        if is_irreducible(spec, &cand).expect("degree is positive") {
            return cand;
        }
        // odometer increment in base q; existence bounds the scan
        let mut i = 0;
        loop {
            assert!(i < d, "no irreducible of degree {d} found");
            digits[i] += 1;
            if digits[i] < spec.q() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Exact count of monic irreducibles of degree `n` over F_q, by the
/// Moebius/necklace formula (1/n) sum_{d | n} mu(d) q^{n/d}.
pub fn count_irreducibles(spec: &FieldSpec, n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let q = BigInt::from(spec.q());
    let mut acc = BigInt::zero();
    for d in intfun::divisors(n as u64)? {
        let mu = intfun::moebius(d)?;
        if mu != 0 {
            let term = q.pow((n as u64 / d) as u32);
            acc += BigInt::from(mu) * term;
        }
    }
    let n_big = BigInt::from(n);
    debug_assert!((&acc % &n_big).is_zero());
    let count = acc / n_big;
    debug_assert!(!count.is_negative());
    Ok(count.to_biguint().expect("count is nonnegative"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_base_field(6, 1), Err(Error::NotPrime(6))));
        assert!(matches!(
            make_base_field(2, 40),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(make_base_field(2, 0).is_err());
    }

    #[test]
    fn canonical_moduli() {
        // F_4: the unique irreducible quadratic over F_2
        let f4 = make_base_field(2, 2).unwrap();
        assert_eq!(f4.modulus_digits(), &[1, 1, 1]);
        // F_9: scan finds Y^2 + 1 first
        let f9 = make_base_field(3, 2).unwrap();
        assert_eq!(f9.modulus_digits(), &[1, 0, 1]);
        // F_8: Y^3 + Y + 1
        let f8 = make_base_field(2, 3).unwrap();
        assert_eq!(f8.modulus_digits(), &[1, 1, 0, 1]);
        // F_2: placeholder X
        let f2 = make_base_field(2, 1).unwrap();
        assert_eq!(f2.modulus_digits(), &[0, 1]);
    }

    #[test]
    fn determinism_across_constructions() {
        let a = make_base_field(3, 2).unwrap();
        let b = make_base_field(3, 2).unwrap();
        assert_eq!(a.modulus_digits(), b.modulus_digits());
        let ea = make_extension(&a, 3).unwrap();
        let eb = make_extension(&b, 3).unwrap();
        assert_eq!(ea.modulus().coeffs(), eb.modulus().coeffs());
    }

    #[test]
    fn f4_multiplication() {
        // x * x = x + 1 where x is the class of the modulus variable
        let f4 = make_base_field(2, 2).unwrap();
        let x = f4.elem(2).unwrap();
        assert_eq!(f4.mul(x, x), f4.elem(3).unwrap());
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f9 = make_base_field(3, 2).unwrap();
        // the nonzero elements form a commutative group of order 8
        for a in f9.elements() {
            for b in f9.elements() {
                assert_eq!(f9.mul(a, b), f9.mul(b, a));
                for c in f9.elements() {
                    assert_eq!(f9.mul(f9.mul(a, b), c), f9.mul(a, f9.mul(b, c)));
                    assert_eq!(f9.mul(a, f9.add(b, c)), f9.add(f9.mul(a, b), f9.mul(a, c)));
                }
            }
            if a.0 != 0 {
                let inv = f9.inv(a).unwrap();
                assert_eq!(f9.mul(a, inv), f9.one());
                // order of every nonzero element divides 8
                assert_eq!(f9.pow(a, 8), f9.one());
            }
        }
        assert!(f9.inv(f9.zero()).is_err());
    }

    #[test]
    fn inverse_everywhere() {
        for (p, m) in [(2u64, 1u32), (5, 1), (2, 4), (3, 2), (2, 3)] {
            let f = make_base_field(p, m).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    /// Brute-force irreducibility: trial division by every lower-degree monic.
    fn irreducible_by_trial_division(spec: &FieldSpec, f: &MonicPoly) -> bool {
        let d = f.deg();
        for dd in 1..=d / 2 {
            let mut digits = vec![0u64; dd];
            for _ in 0..spec.q().pow(dd as u32) {
                let mut coeffs: Vec<FqElem> = digits.iter().map(|&c| FqElem(c)).collect();
                coeffs.push(spec.one());
                let g = MonicPoly::from_coeffs(coeffs).unwrap();
                let (_, r) = f.as_poly().divrem(g.as_poly(), spec).unwrap();
                if r.is_zero() {
                    return false;
                }
                let mut i = 0;
                while i < dd {
                    digits[i] += 1;
                    if digits[i] < spec.q() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
            }
        }
        true
    }

    #[test]
    fn irreducible_test_matches_trial_division_on_sextics() {
        // the gcd test agrees with brute-force trial division on all 64
        // monic sextics, which identifies the 9 irreducible ones
        let f2 = make_base_field(2, 1).unwrap();
        let mut count = 0;
        for code in 0..64u64 {
            let mut coeffs: Vec<FqElem> = (0..6).map(|i| FqElem(code >> i & 1)).collect();
            coeffs.push(f2.one());
            let f = MonicPoly::from_coeffs(coeffs).unwrap();
            let fast = is_irreducible(&f2, &f).unwrap();
            assert_eq!(fast, irreducible_by_trial_division(&f2, &f), "{f}");
            count += u64::from(fast);
        }
        assert_eq!(count, 9);
        assert_eq!(count_irreducibles(&f2, 6).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn irreducibility_examples() {
        let f2 = make_base_field(2, 1).unwrap();
        let x2x1 = MonicPoly::parse("X^2+X+1", &f2).unwrap();
        assert!(is_irreducible(&f2, &x2x1).unwrap());
        let x21 = MonicPoly::parse("X^2+1", &f2).unwrap();
        assert!(!is_irreducible(&f2, &x21).unwrap());
        let one = MonicPoly::one(&f2);
        assert!(is_irreducible(&f2, &one).is_err());
    }

    #[test]
    fn canonical_irreducibles() {
        let f2 = make_base_field(2, 1).unwrap();
        assert_eq!(irreducible_of_degree(&f2, 1).to_string(), "X");
        assert_eq!(irreducible_of_degree(&f2, 2).to_string(), "X^2+X+1");
        assert_eq!(irreducible_of_degree(&f2, 4).to_string(), "X^4+X+1");
        // F_16 as a quadratic extension of F_4: first hit is X^2+X+2
        let f4 = make_base_field(2, 2).unwrap();
        let e = make_extension(&f4, 2).unwrap();
        assert_eq!(e.modulus().to_string(), "X^2+X+2");
    }

    #[test]
    fn count_irreducibles_small() {
        let f2 = make_base_field(2, 1).unwrap();
        assert_eq!(count_irreducibles(&f2, 1).unwrap(), BigUint::from(2u32));
        assert_eq!(count_irreducibles(&f2, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(count_irreducibles(&f2, 4).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn count_bound_lemma() {
        // count <= q^N / N for q in {2,3,4,5}, N <= 12
        for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let f = make_base_field(p, m).unwrap();
            for n in 1..=12u32 {
                let c = count_irreducibles(&f, n).unwrap();
                let bound = BigUint::from(f.q()).pow(n);
                assert!(c * BigUint::from(n) <= bound);
            }
        }
    }

    #[test]
    fn frobenius_orbit_in_f8() {
        let f2 = make_base_field(2, 1).unwrap();
        let f8 = make_extension(&f2, 3).unwrap();
        assert_eq!(f8.modulus().to_string(), "X^3+X+1");
        let x = f8.from_encoding(2).unwrap();
        let x2 = f8.frobenius(&x);
        let x4 = f8.frobenius(&x2);
        assert_ne!(x, x2);
        assert_ne!(x, x4);
        assert_ne!(x2, x4);
        // the orbit closes after n steps
        assert_eq!(f8.frobenius(&x4), x);
    }

    #[test]
    fn frobenius_fixes_prime_field_and_is_linear() {
        let f3 = make_base_field(3, 1).unwrap();
        let e = make_extension(&f3, 4).unwrap();
        assert_eq!(e.frobenius(&e.zero()), e.zero());
        assert_eq!(e.frobenius(&e.one()), e.one());
        // additivity and scalar compatibility on a deterministic sample
        for ca in 0..8u64 {
            let a = e.from_encoding((ca * 7 + 1) % 81).unwrap();
            let b = e.from_encoding((ca * 13 + 5) % 81).unwrap();
            assert_eq!(
                e.frobenius(&e.add(&a, &b)),
                e.add(&e.frobenius(&a), &e.frobenius(&b))
            );
            for s in f3.elements() {
                assert_eq!(e.frobenius(&e.scale(s, &a)), e.scale(s, &e.frobenius(&a)));
            }
            // n-fold application is the identity
            let mut it = a.clone();
            for _ in 0..e.n() {
                it = e.frobenius(&it);
            }
            assert_eq!(it, a);
        }
    }

    #[test]
    fn extension_of_degree_one() {
        let f2 = make_base_field(2, 1).unwrap();
        let e = make_extension(&f2, 1).unwrap();
        assert_eq!(e.modulus().to_string(), "X");
        let a = e.from_encoding(1).unwrap();
        assert_eq!(e.mul(&a, &a), a);
        assert_eq!(e.frobenius(&a), a);
    }

    #[test]
    fn pow_big_agrees_with_pow() {
        let f4 = make_base_field(2, 2).unwrap();
        let e = make_extension(&f4, 3).unwrap();
        let a = e.from_encoding(27).unwrap();
        for k in 0..40u64 {
            assert_eq!(e.pow(&a, k), e.pow_big(&a, &BigUint::from(k)));
        }
    }
}
