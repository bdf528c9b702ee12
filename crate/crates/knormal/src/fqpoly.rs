//! Dense polynomial arithmetic over F_q[X], deterministic factorization of
//! X^n - 1 by cyclotomic cosets, and the polynomial arithmetic functions:
//! the Moebius analogue, the totient analogue, and polynomial orders.
//!
//! Polynomials are coefficient vectors, lowest degree first. [`Poly`] is the
//! general workhorse (possibly zero, possibly non-monic: remainders,
//! derivatives); [`MonicPoly`] is the canonical currency of everything
//! user-facing.
//!
//! The canonical order on monic polynomials of equal degree compares the
//! integer formed by reading coefficient encodings as base-q digits,
//! constant term least significant. Factor lists, divisor lists and scan
//! orders all follow it, which makes every downstream report byte-stable.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::gf::{self, ExtElem, ExtField, FieldSpec, FqElem};
use crate::intfun;

/// A dense polynomial over F_q; empty coefficient vector means zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: vec![] }
    }

    pub fn one(f: &FieldSpec) -> Poly {
        Poly {
            coeffs: vec![f.one()],
        }
    }

    pub fn x(f: &FieldSpec) -> Poly {
        Poly {
            coeffs: vec![f.zero(), f.one()],
        }
    }

    pub fn constant(c: FqElem) -> Poly {
        if c.encoding() == 0 {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().map(|c| c.encoding()) == Some(0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].encoding() == 1
    }

    /// Degree, or None for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x.encoding() == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                if y.encoding() != 0 {
                    out[i + j] = f.add(out[i + j], f.mul(x, y));
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: FqElem, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> Result<(Poly, Poly)> {
        let db = divisor.deg().ok_or(Error::ZeroPolyDivision)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead_inv = f.inv(divisor.coeffs[db])?;
        let mut quot = vec![f.zero(); rem.len() - db];
        let mut top = rem.len();
        while top > db {
            let c = rem[top - 1];
            if c.encoding() != 0 {
                let c = f.mul(c, lead_inv);
                let s = top - 1 - db;
                quot[s] = c;
                for j in 0..=db {
                    rem[s + j] = f.sub(rem[s + j], f.mul(c, divisor.coeffs[j]));
                }
            }
            top -= 1;
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldSpec) -> Result<Poly> {
        Ok(self.divrem(divisor, f)?.1)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        match a.leading() {
            Some(l) if l.encoding() != 1 => {
                let inv = f.inv(l).expect("nonzero leading coefficient");
                a.scale(inv, f)
            }
            _ => a,
        }
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let scalar = FqElem((i as u64 + 1) % f.p());
                f.mul(scalar, c)
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn powmod(base: &Poly, exp: u64, modulus: &Poly, f: &FieldSpec) -> Poly {
        let mut acc = Poly::one(f).rem(modulus, f).expect("nonzero modulus");
        let mut b = base.rem(modulus, f).expect("nonzero modulus");
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, f).rem(modulus, f).expect("nonzero modulus");
            }
            b = b.mul(&b, f).rem(modulus, f).expect("nonzero modulus");
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: FqElem, f: &FieldSpec) -> FqElem {
        let mut acc = f.zero();
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }
}

/// A monic polynomial over F_q; the constant polynomial 1 has degree 0.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonicPoly {
    inner: Poly,
}

impl MonicPoly {
    pub fn new(p: Poly) -> Result<MonicPoly> {
        match p.leading() {
            Some(l) if l.encoding() == 1 => Ok(MonicPoly { inner: p }),
            _ => Err(Error::NotMonic),
        }
    }

    pub fn from_coeffs(coeffs: Vec<FqElem>) -> Result<MonicPoly> {
        MonicPoly::new(Poly::from_coeffs(coeffs))
    }

    pub fn one(f: &FieldSpec) -> MonicPoly {
        MonicPoly {
            inner: Poly::one(f),
        }
    }

    pub fn x(f: &FieldSpec) -> MonicPoly {
        MonicPoly { inner: Poly::x(f) }
    }

    /// X^n - 1 over the field.
    pub fn x_pow_minus_one(f: &FieldSpec, n: u32) -> MonicPoly {
        assert!(n >= 1);
        let mut coeffs = vec![f.zero(); n as usize + 1];
        coeffs[0] = f.neg(f.one());
        coeffs[n as usize] = f.one();
        MonicPoly {
            inner: Poly { coeffs },
        }
    }

    pub fn as_poly(&self) -> &Poly {
        &self.inner
    }

    pub fn coeffs(&self) -> &[FqElem] {
        self.inner.coeffs()
    }

    pub fn deg(&self) -> usize {
        self.inner.deg().expect("monic polynomials are nonzero")
    }

    pub fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    pub fn constant_term(&self) -> FqElem {
        self.inner.coeff(0)
    }

    pub fn mul(&self, other: &MonicPoly, f: &FieldSpec) -> MonicPoly {
        MonicPoly {
            inner: self.inner.mul(&other.inner, f),
        }
    }

    /// Exact division; errors if the divisor does not divide.
    pub fn divexact(&self, divisor: &MonicPoly, f: &FieldSpec) -> Result<MonicPoly> {
        let (q, r) = self.inner.divrem(&divisor.inner, f)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("{divisor} does not divide {self}")));
        }
        MonicPoly::new(q)
    }

    pub fn divides(&self, other: &MonicPoly, f: &FieldSpec) -> bool {
        other
            .inner
            .rem(&self.inner, f)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    /// Parse the polynomial grammar `term ("+" term)*` with terms
    /// `c`, `c*X`, `c*X^e`, `X`, `X^e`; coefficients are encodings in [0, q).
    pub fn parse(text: &str, f: &FieldSpec) -> Result<MonicPoly> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty input".into()));
        }
        let mut by_exp: BTreeMap<u32, u64> = BTreeMap::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(Error::Parse("empty term".into()));
            }
            let (coeff_text, exp_text) = match term.find('X') {
                None => (term, None),
                Some(ix) => {
                    let coeff = &term[..ix];
                    let rest = &term[ix + 1..];
                    let coeff = if coeff.is_empty() {
                        "1"
                    } else if let Some(stripped) = coeff.strip_suffix('*') {
                        if stripped.is_empty() {
                            return Err(Error::Parse(format!("malformed term `{term}`")));
                        }
                        stripped
                    } else {
                        return Err(Error::Parse(format!(
                            "expected `*` between coefficient and X in `{term}`"
                        )));
                    };
                    let exp = if rest.is_empty() {
                        "1"
                    } else if let Some(stripped) = rest.strip_prefix('^') {
                        if stripped.is_empty() {
                            return Err(Error::Parse(format!("missing exponent in `{term}`")));
                        }
                        stripped
                    } else {
                        return Err(Error::Parse(format!("unexpected `{rest}` after X")));
                    };
                    (coeff, Some(exp))
                }
            };
            let c: u64 = coeff_text
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{coeff_text}`")))?;
            if c >= f.q() {
                return Err(Error::Parse(format!(
                    "coefficient {c} out of range [0, {})",
                    f.q()
                )));
            }
            let e: u32 = match exp_text {
                None => 0,
                Some(t) => t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent `{t}`")))?,
            };
            if by_exp.insert(e, c).is_some() {
                return Err(Error::Parse(format!("duplicate exponent {e}")));
            }
        }
        let deg = *by_exp.keys().last().expect("nonempty") as usize;
        let mut coeffs = vec![f.zero(); deg + 1];
        for (e, c) in by_exp {
            coeffs[e as usize] = FqElem(c);
        }
        let p = Poly::from_coeffs(coeffs);
        match p.leading() {
            Some(l) if l.encoding() == 1 => Ok(MonicPoly { inner: p }),
            _ => Err(Error::NotMonic),
        }
    }
}

impl std::fmt::Display for MonicPoly {
    /// Emit in the input grammar: strictly decreasing exponents, nonzero
    /// coefficients only, e.g. `X^3+2*X+1`.
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (e, c) in self.inner.coeffs().iter().enumerate().rev() {
            let c = c.encoding();
            if c == 0 && !(first && e == 0) {
                continue;
            }
            if !first {
                write!(out, "+")?;
            }
            first = false;
            match (e, c) {
                (0, c) => write!(out, "{c}")?,
                (1, 1) => write!(out, "X")?,
                (1, c) => write!(out, "{c}*X")?,
                (e, 1) => write!(out, "X^{e}")?,
                (e, c) => write!(out, "{c}*X^{e}")?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonicPoly {
    /// Canonical order: by degree, then by the base-q code of the
    /// coefficient vector (most significant digit last).
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg().cmp(&other.deg()).then_with(|| {
            for i in (0..self.deg()).rev() {
                let ord = self.inner.coeff(i).cmp(&other.inner.coeff(i));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

/// Iterator over all monic polynomials of a fixed degree in canonical order.
pub fn monic_polys_of_degree(f: &FieldSpec, d: usize) -> impl Iterator<Item = MonicPoly> + use<'_> {
    let mut digits = vec![0u64; d];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let mut coeffs: Vec<FqElem> = digits.iter().map(|&c| FqElem(c)).collect();
        coeffs.push(f.one());
        let out = MonicPoly::from_coeffs(coeffs).expect("leading one");
        let mut i = 0;
        loop {
            if i == digits.len() {
                done = true;
                break;
            }
            digits[i] += 1;
            if digits[i] < f.q() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        Some(out)
    })
}

/// A multiset of irreducible monic factors with multiplicities, sorted
/// canonically; the empty list represents the polynomial 1.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Factorization {
    base: FieldSpec,
    factors: Vec<(MonicPoly, u32)>,
}

impl Factorization {
    fn from_sorted(base: FieldSpec, factors: Vec<(MonicPoly, u32)>) -> Factorization {
        debug_assert!(factors.windows(2).all(|w| w[0].0 < w[1].0));
        Factorization { base, factors }
    }

    pub fn one(base: &FieldSpec) -> Factorization {
        Factorization {
            base: base.clone(),
            factors: vec![],
        }
    }

    /// Assemble from canonically sorted distinct factors sharing one
    /// multiplicity, the shape X^n - 1 factorizations take.
    pub fn with_uniform_multiplicity(
        base: &FieldSpec,
        factors: Vec<MonicPoly>,
        multiplicity: u32,
    ) -> Factorization {
        Factorization::from_sorted(
            base.clone(),
            factors.into_iter().map(|f| (f, multiplicity)).collect(),
        )
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn factors(&self) -> &[(MonicPoly, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn distinct_factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Total degree with multiplicity.
    pub fn deg(&self) -> usize {
        self.factors
            .iter()
            .map(|(f, e)| f.deg() * *e as usize)
            .sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Recompose the product.
    pub fn product(&self) -> MonicPoly {
        let f = &self.base;
        let mut acc = MonicPoly::one(f);
        for (fac, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(fac, f);
            }
        }
        acc
    }

    /// Moebius analogue: 0 unless squarefree, otherwise (-1)^r.
    pub fn mobius(&self) -> i32 {
        if !self.is_squarefree() {
            return 0;
        }
        if self.factors.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Totient analogue: the number of invertible residues modulo the
    /// product, as the exact product over factors of q^{d(e-1)} (q^d - 1).
    pub fn totient(&self) -> BigUint {
        let q = BigUint::from(self.base.q());
        let mut acc = BigUint::one();
        for (f, e) in &self.factors {
            let d = f.deg() as u32;
            let qd = q.pow(d);
            acc *= qd.pow(*e - 1) * (qd - BigUint::one());
        }
        acc
    }

    /// Multiplicity of `factor` in this factorization (0 if absent).
    pub fn multiplicity(&self, factor: &MonicPoly) -> u32 {
        self.factors
            .iter()
            .find(|(f, _)| f == factor)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// The complementary factorization `self / divisor`; the divisor must
    /// use exponents bounded by this factorization's.
    pub fn complement(&self, divisor: &Factorization) -> Factorization {
        let factors = self
            .factors
            .iter()
            .filter_map(|(f, e)| {
                let c = divisor.multiplicity(f);
                debug_assert!(c <= *e);
                match e - c {
                    0 => None,
                    rest => Some((f.clone(), rest)),
                }
            })
            .collect();
        Factorization::from_sorted(self.base.clone(), factors)
    }

    /// Factor `poly` against this factorization's irreducibles. Returns its
    /// sub-factorization when `poly` divides the recomposed product.
    pub fn factor_within(&self, poly: &MonicPoly) -> Option<Factorization> {
        let f = &self.base;
        let mut rem = poly.clone();
        let mut out = Vec::new();
        for (fac, e) in &self.factors {
            let mut v = 0u32;
            while fac.divides(&rem, f) {
                rem = rem.divexact(fac, f).expect("divisibility just checked");
                v += 1;
            }
            if v > *e {
                return None;
            }
            if v > 0 {
                out.push((fac.clone(), v));
            }
        }
        if rem.is_one() {
            Some(Factorization::from_sorted(f.clone(), out))
        } else {
            None
        }
    }

    /// Number of monic divisors of the product with degree exactly `k`.
    pub fn count_divisors_of_degree(&self, k: usize) -> BigUint {
        // knapsack DP over (degree, multiplicity) pairs
        let mut ways = vec![BigUint::ZERO; k + 1];
        ways[0] = BigUint::one();
        for (f, e) in &self.factors {
            let d = f.deg();
            let mut next = vec![BigUint::ZERO; k + 1];
            for deg in 0..=k {
                if ways[deg] == BigUint::ZERO {
                    continue;
                }
                let mut add = 0usize;
                for _ in 0..=*e {
                    if deg + add > k {
                        break;
                    }
                    next[deg + add] += &ways[deg];
                    add += d;
                }
            }
            ways = next;
        }
        ways[k].clone()
    }

    /// Every monic divisor of degree exactly `k`, as sub-factorizations, by
    /// bounded-knapsack backtracking in a deterministic order.
    pub fn divisors_of_degree(&self, k: usize) -> Vec<Factorization> {
        let mut out = Vec::new();
        let suffix_max: Vec<usize> = {
            let mut acc = 0;
            let mut v: Vec<usize> = self
                .factors
                .iter()
                .rev()
                .map(|(f, e)| {
                    acc += f.deg() * *e as usize;
                    acc
                })
                .collect();
            v.reverse();
            v.push(0);
            v
        };
        let mut chosen: Vec<(MonicPoly, u32)> = Vec::new();
        self.divisors_rec(0, k, &suffix_max, &mut chosen, &mut out);
        out
    }

    fn divisors_rec(
        &self,
        idx: usize,
        remaining: usize,
        suffix_max: &[usize],
        chosen: &mut Vec<(MonicPoly, u32)>,
        out: &mut Vec<Factorization>,
    ) {
        if remaining > suffix_max[idx] {
            return;
        }
        if idx == self.factors.len() {
            debug_assert_eq!(remaining, 0);
            out.push(Factorization::from_sorted(
                self.base.clone(),
                chosen.clone(),
            ));
            return;
        }
        let (f, e) = &self.factors[idx];
        let d = f.deg();
        for c in 0..=*e {
            let used = d * c as usize;
            if used > remaining {
                break;
            }
            if c > 0 {
                chosen.push((f.clone(), c));
            }
            self.divisors_rec(idx + 1, remaining - used, suffix_max, chosen, out);
            if c > 0 {
                chosen.pop();
            }
        }
    }

    /// All 2^r products of distinct irreducible factors, including 1, in
    /// subset-mask order over the canonical factor list.
    pub fn squarefree_divisors(&self) -> Vec<Factorization> {
        let r = self.factors.len();
        assert!(r < 32, "too many distinct factors to enumerate subsets");
        (0..1u64 << r)
            .map(|mask| {
                let factors = self
                    .factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, (f, _))| (f.clone(), 1))
                    .collect();
                Factorization::from_sorted(self.base.clone(), factors)
            })
            .collect()
    }

    /// Order of the product: the least j > 0 such that it divides X^j - 1.
    ///
    /// Irreducible factors get their order by testing divisors of
    /// q^deg - 1 in increasing order; a repeated factor contributes the
    /// least power of the characteristic reaching its multiplicity. The
    /// result is verified against the definition before returning.
    pub fn order(&self) -> Result<u64> {
        let f = &self.base;
        let mut ord = 1u64;
        let mut max_mult = 1u32;
        for (fac, e) in &self.factors {
            if fac.constant_term().encoding() == 0 {
                return Err(Error::DivisibleByX);
            }
            let o = irreducible_order(f, fac)?;
            ord = intfun::lcm(ord, o).ok_or(Error::OrderOverflow { deg: fac.deg() })?;
            max_mult = max_mult.max(*e);
        }
        while max_mult > 1 {
            ord = ord
                .checked_mul(f.p())
                .ok_or(Error::OrderOverflow { deg: self.deg() })?;
            max_mult = max_mult.div_ceil(f.p() as u32);
        }
        // verify: the product divides X^ord - 1 and no proper divisor works
        let product = self.product();
        if !product.is_one() {
            if !divides_x_pow_minus_one(f, &product, ord) {
                return Err(Error::Internal(format!(
                    "computed order {ord} fails the divisibility check for {product}"
                )));
            }
            for d in intfun::divisors(ord)? {
                if d != ord && divides_x_pow_minus_one(f, &product, d) {
                    return Err(Error::Internal(format!(
                        "{product} already divides X^{d}-1 below the computed order {ord}"
                    )));
                }
            }
        }
        Ok(ord)
    }
}

/// Does `h` divide X^j - 1?
fn divides_x_pow_minus_one(f: &FieldSpec, h: &MonicPoly, j: u64) -> bool {
    if h.is_one() {
        return true;
    }
    let xj = Poly::powmod(&Poly::x(f), j, h.as_poly(), f);
    xj.sub(&Poly::one(f), f).is_zero()
}

/// Order of an irreducible polynomial: the multiplicative order of the
/// class of X modulo `fac`, found by testing divisors of q^deg - 1 in
/// increasing order.
fn irreducible_order(f: &FieldSpec, fac: &MonicPoly) -> Result<u64> {
    let d = fac.deg();
    if fac.constant_term().encoding() == 0 {
        return Err(Error::DivisibleByX);
    }
    let group = (f.q() as u128)
        .checked_pow(d as u32)
        .filter(|&v| v <= u64::MAX as u128)
        .ok_or(Error::OrderOverflow { deg: d })? as u64
        - 1;
    for dd in intfun::divisors(group)? {
        if divides_x_pow_minus_one(f, fac, dd) {
            return Ok(dd);
        }
    }
    Err(Error::Internal(format!(
        "no order found for {fac}; it cannot be irreducible"
    )))
}

/// Least `j <= cap` with `h | X^j - 1`, by an incremental remainder chain.
///
/// This is the bounded order scan used wherever a polynomial arrives
/// without a factorization; it is exact for every j it reports.
pub fn order_within(f: &FieldSpec, h: &MonicPoly, cap: u64) -> Option<u64> {
    if h.is_one() {
        return Some(1);
    }
    if h.constant_term().encoding() == 0 {
        return None;
    }
    let hp = h.as_poly();
    let one = Poly::one(f);
    // r = X^j mod h, advanced by one multiplication by X per step
    let mut r = Poly::x(f).rem(hp, f).expect("monic modulus");
    for j in 1..=cap {
        if r.sub(&one, f).is_zero() {
            return Some(j);
        }
        let mut shifted = vec![f.zero()];
        shifted.extend_from_slice(r.coeffs());
        r = Poly::from_coeffs(shifted)
            .rem(hp, f)
            .expect("monic modulus");
    }
    None
}

/// Moebius analogue for an unfactored monic polynomial: squarefreeness by
/// gcd with the derivative, then the factor count r by distinct-degree
/// gcd splitting (counting only, no factors are produced).
pub fn poly_mobius(f: &FieldSpec, p: &MonicPoly) -> i32 {
    if p.is_one() {
        return 1;
    }
    let d = p.deg();
    let deriv = p.as_poly().derivative(f);
    if deriv.is_zero() {
        return 0; // a p-th power
    }
    if !p.as_poly().gcd(&deriv, f).is_one() {
        return 0;
    }
    // distinct-degree: count irreducible factors of the squarefree p
    let mut rem = p.as_poly().clone();
    let x = Poly::x(f);
    let mut frob = x.clone();
    let mut r = 0usize;
    for i in 1..=d {
        if rem.is_one() {
            break;
        }
        if rem.deg().unwrap_or(0) < 2 * i {
            // whatever remains is irreducible
            r += 1;
            break;
        }
        frob = Poly::powmod(&frob, f.q(), &rem, f);
        let g = frob.sub(&x, f).gcd(&rem, f);
        if !g.is_one() {
            r += g.deg().expect("nontrivial gcd") / i;
            rem = rem.divrem(&g, f).expect("gcd divides").0;
            frob = frob.rem(&rem, f).expect("nonzero");
        }
    }
    if r.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Full factorization of X^n - 1 over F_q by cyclotomic cosets.
///
/// Writing n = p^a * m with gcd(m, p) = 1, X^n - 1 = (X^m - 1)^{p^a}; the
/// irreducible factors of X^m - 1 correspond to the q-cyclotomic cosets
/// modulo m, and each carries multiplicity p^a.
pub fn factor_xn_minus_1(spec: &FieldSpec, n: u32) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let (pa, m) = split_by_characteristic(spec.p(), n);
    let factors = factor_xm_minus_1_squarefree(spec, m)?;
    let fact =
        Factorization::from_sorted(spec.clone(), factors.into_iter().map(|f| (f, pa)).collect());
    debug_assert_eq!(fact.deg(), n as usize);
    Ok(fact)
}

/// n = p^a * m with gcd(m, p) = 1, returned as (p^a, m).
pub fn split_by_characteristic(p: u64, n: u32) -> (u32, u32) {
    let mut pa = 1u32;
    let mut m = n;
    while (m as u64).is_multiple_of(p) {
        m /= p as u32;
        pa *= p as u32;
    }
    (pa, m)
}

/// The distinct irreducible factors of X^m - 1 for gcd(m, p) = 1, sorted
/// canonically.
///
/// Sweeps revisit the same m constantly (every n with the same
/// characteristic-free part), so results are memoized process-wide.
pub fn factor_xm_minus_1_squarefree(spec: &FieldSpec, m: u32) -> Result<Vec<MonicPoly>> {
    use std::collections::HashMap;
    use std::sync::{Mutex, OnceLock};
    type Cache = Mutex<HashMap<(u64, u32, u32), Vec<MonicPoly>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (spec.p(), spec.m(), m);
    if let Some(found) = cache.lock().unwrap().get(&key) {
        return Ok(found.clone());
    }
    let found = factor_xm_squarefree_uncached(spec, m)?;
    cache.lock().unwrap().insert(key, found.clone());
    Ok(found)
}

fn factor_xm_squarefree_uncached(spec: &FieldSpec, m: u32) -> Result<Vec<MonicPoly>> {
    debug_assert!(!(m as u64).is_multiple_of(spec.p()) || m == 1);
    if m == 1 {
        // X - 1
        let poly = MonicPoly::from_coeffs(vec![spec.neg(spec.one()), spec.one()])?;
        return Ok(vec![poly]);
    }
    let cosets = cyclotomic_cosets(spec.q(), m);
    let s = intfun::mult_order(spec.q(), m as u64)? as u32;
    let ext = gf::make_extension(spec, s)?;
    let beta = primitive_mth_root(&ext, m as u64)?;
    let mut factors = Vec::with_capacity(cosets.len());
    for coset in &cosets {
        let gamma = ext.pow(&beta, coset[0]);
        let minpoly = minimal_polynomial(&ext, &gamma, coset.len())?;
        if !gf::is_irreducible(spec, &minpoly)? {
            return Err(Error::Internal(format!(
                "coset minimal polynomial {minpoly} is not irreducible"
            )));
        }
        factors.push(minpoly);
    }
    factors.sort();
    if factors.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Internal(
            "duplicate factors in the coset factorization".into(),
        ));
    }
    // recomposition check at the squarefree level
    let mut product = MonicPoly::one(spec);
    for f in &factors {
        product = product.mul(f, spec);
    }
    if product != MonicPoly::x_pow_minus_one(spec, m) {
        return Err(Error::Internal(format!(
            "coset factors of X^{m}-1 do not recompose"
        )));
    }
    Ok(factors)
}

/// Orbits of multiplication by q on Z/m, ordered by least representative.
pub fn cyclotomic_cosets(q: u64, m: u32) -> Vec<Vec<u64>> {
    let m = m as u64;
    let q = q % m;
    let mut seen = vec![false; m as usize];
    let mut cosets = Vec::new();
    for r in 0..m {
        if seen[r as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = r;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = x * q % m;
        }
        cosets.push(coset);
    }
    cosets
}

/// A primitive m-th root of unity in the extension: the first element
/// gamma in encoding order whose (q^s - 1)/m power has exact order m.
fn primitive_mth_root(ext: &ExtField, m: u64) -> Result<ExtElem> {
    let q = BigUint::from(ext.base().q());
    let group = q.pow(ext.n()) - BigUint::one();
    let (exp, rem) = num_integer::div_rem(group.clone(), BigUint::from(m));
    if rem != BigUint::ZERO {
        return Err(Error::Internal(format!(
            "{m} does not divide the multiplicative group order"
        )));
    }
    let prime_parts: Vec<u64> = intfun::factor_int(m)?
        .factors()
        .iter()
        .map(|&(p, _)| p)
        .collect();
    // the scan rarely needs more than a handful of candidates
    for code in 1..1_000_000u64 {
        let gamma = match ext.from_encoding(code) {
            Ok(g) => g,
            Err(_) => break,
        };
        let beta = ext.pow_big(&gamma, &exp);
        if ext.is_zero(&beta) || ext.is_one(&beta) && m > 1 {
            continue;
        }
        if !ext.is_one(&ext.pow(&beta, m)) {
            return Err(Error::Internal(
                "candidate root power escaped the order-m subgroup".into(),
            ));
        }
        if prime_parts
            .iter()
            .all(|&r| !ext.is_one(&ext.pow(&beta, m / r)))
        {
            return Ok(beta);
        }
    }
    Err(Error::Internal(format!(
        "no primitive {m}-th root found in the scanned range"
    )))
}

/// Minimal polynomial of `gamma` over the base field, given that its degree
/// is `c`: solve gamma^c = sum a_i gamma^i by Gaussian elimination on the
/// F_q-coordinates.
fn minimal_polynomial(ext: &ExtField, gamma: &ExtElem, c: usize) -> Result<MonicPoly> {
    let f = ext.base();
    let s = ext.n() as usize;
    let mut powers = Vec::with_capacity(c + 1);
    powers.push(ext.one());
    for _ in 0..c {
        let last = powers.last().expect("nonempty");
        powers.push(ext.mul(last, gamma));
    }
    // augmented system: columns gamma^0..gamma^{c-1}, rhs gamma^c
    let mut mat: Vec<Vec<FqElem>> = (0..s)
        .map(|row| (0..=c).map(|col| powers[col].coords()[row]).collect())
        .collect();
    let mut pivot_rows = Vec::with_capacity(c);
    let mut row = 0usize;
    for col in 0..c {
        let Some(piv) = (row..s).find(|&r| mat[r][col].encoding() != 0) else {
            return Err(Error::Internal(
                "power basis collapsed early; coset size is not the degree".into(),
            ));
        };
        mat.swap(row, piv);
        let inv = f.inv(mat[row][col])?;
        for x in mat[row].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for r in 0..s {
            if r != row && mat[r][col].encoding() != 0 {
                let factor = mat[r][col];
                let (head, tail) = mat.split_at_mut(row.max(r));
                let (src, dst) = if r < row {
                    (&tail[0], &mut head[r])
                } else {
                    (&head[row], &mut tail[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x = f.sub(*x, f.mul(factor, *y));
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // consistency: below the pivots the rhs must vanish
    if mat[row..].iter().any(|r| r[c].encoding() != 0) {
        return Err(Error::Internal(
            "inconsistent minimal-polynomial system".into(),
        ));
    }
    let mut coeffs: Vec<FqElem> = (0..c).map(|col| f.neg(mat[pivot_rows[col]][c])).collect();
    coeffs.push(f.one());
    MonicPoly::from_coeffs(coeffs)
}


#[cfg(test)]
mod prop_tests {
    use super::*;
    use crate::gf::make_base_field;
    use proptest::prelude::*;

    fn arb_poly(q: u64, max_deg: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(0..q, 0..=max_deg)
    }

    proptest! {
        #[test]
        fn divrem_reconstructs(a in arb_poly(3, 12), b in arb_poly(3, 6)) {
            let f = make_base_field(3, 1).unwrap();
            let pa = Poly::from_coeffs(a.into_iter().map(FqElem).collect());
            let pb = Poly::from_coeffs(b.into_iter().map(FqElem).collect());
            prop_assume!(!pb.is_zero());
            let (q, r) = pa.divrem(&pb, &f).unwrap();
            prop_assert_eq!(q.mul(&pb, &f).add(&r, &f), pa);
            if let (Some(dr), Some(db)) = (r.deg(), pb.deg()) {
                prop_assert!(dr < db);
            }
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(2, 10), b in arb_poly(2, 10)) {
            let f = make_base_field(2, 1).unwrap();
            let pa = Poly::from_coeffs(a.into_iter().map(FqElem).collect());
            let pb = Poly::from_coeffs(b.into_iter().map(FqElem).collect());
            prop_assume!(!pa.is_zero() && !pb.is_zero());
            let g = pa.gcd(&pb, &f);
            prop_assert!(pa.rem(&g, &f).unwrap().is_zero());
            prop_assert!(pb.rem(&g, &f).unwrap().is_zero());
            prop_assert_eq!(g.leading().map(|c| c.encoding()), Some(1));
        }

        #[test]
        fn display_parse_round_trip(a in arb_poly(5, 9)) {
            let f = make_base_field(5, 1).unwrap();
            let mut coeffs: Vec<FqElem> = a.into_iter().map(FqElem).collect();
            coeffs.push(f.one());
            let p = MonicPoly::from_coeffs(coeffs).unwrap();
            let back = MonicPoly::parse(&p.to_string(), &f).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
