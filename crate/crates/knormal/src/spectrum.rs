//! Exact k-normal counting: the divisor-sum formula on one side, an
//! exhaustive Frobenius-orbit rank oracle on the other.
//!
//! The two sides are algorithmically independent; their exact agreement is
//! the crate's central cross-check.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fqpoly::{factor_xn_minus_1, Factorization};
use crate::gf::{make_extension, ExtElem, ExtField, FieldSpec, FqElem};

/// Exact counts of k-normal elements of F_{q^n} for every k = 0..n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    q: u64,
    n: u32,
    counts: Vec<BigUint>,
}

impl Spectrum {
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn n(&self) -> u32 {
        self.n
    }

    /// counts[k] for k = 0..=n.
    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn count(&self, k: usize) -> &BigUint {
        &self.counts[k]
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Every element is k-normal for exactly one k, and only zero spans
    /// the trivial subspace.
    pub fn check_invariants(&self) -> Result<()> {
        if self.total() != BigUint::from(self.q).pow(self.n) {
            return Err(Error::Internal(format!(
                "spectrum for q={} n={} does not sum to q^n",
                self.q, self.n
            )));
        }
        if self.counts[self.n as usize] != BigUint::one() {
            return Err(Error::Internal(
                "exactly one element (zero) must be n-normal".into(),
            ));
        }
        Ok(())
    }
}

/// Count of k-normal elements from a prepared factorization of X^n - 1:
/// the sum of totients of (X^n - 1)/F over the degree-k divisors F.
pub fn count_k_normal_in(fact: &Factorization, n: u32, k: i64) -> BigUint {
    if k < 0 || k > n as i64 {
        return BigUint::ZERO;
    }
    let k = k as usize;
    // enumerate only when the divisor class is small; the generating
    // product gives the same value without materializing anything
    let enum_threshold = BigUint::from(1u32) << 16;
    if fact.count_divisors_of_degree(k) <= enum_threshold {
        fact.divisors_of_degree(k)
            .iter()
            .map(|d| fact.complement(d).totient())
            .sum()
    } else {
        spectrum_from_factorization(fact, n).counts[k].clone()
    }
}

/// The number of k-normal elements of F_{q^n} over F_q, by the divisor
/// formula; 0 outside the range 0 <= k <= n.
pub fn count_k_normal(spec: &FieldSpec, n: u32, k: i64) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if k < 0 || k > n as i64 {
        return Ok(BigUint::ZERO);
    }
    let fact = factor_xn_minus_1(spec, n)?;
    Ok(count_k_normal_in(&fact, n, k))
}

/// The degree-k divisors of X^n - 1 with their totient contributions,
/// materialized for reporting; refuses above `cap` divisors.
pub fn count_terms(
    spec: &FieldSpec,
    n: u32,
    k: i64,
    cap: u64,
) -> Result<Vec<(Factorization, BigUint)>> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if k < 0 || k > n as i64 {
        return Ok(vec![]);
    }
    let fact = factor_xn_minus_1(spec, n)?;
    let count = fact.count_divisors_of_degree(k as usize);
    if count > BigUint::from(cap) {
        return Err(Error::BudgetExceeded {
            what: "divisor term list",
            required: count.to_string(),
            cap: cap.to_string(),
        });
    }
    Ok(fact
        .divisors_of_degree(k as usize)
        .into_iter()
        .map(|d| {
            let phi = fact.complement(&d).totient();
            (d, phi)
        })
        .collect())
}

/// Spectrum over all k from one factorization, as the coefficient vector of
/// the product over factors f of (sum_c z^{c deg f} Phi(f^{e-c})).
fn spectrum_from_factorization(fact: &Factorization, n: u32) -> Spectrum {
    let q = fact.base().q();
    let qb = BigUint::from(q);
    let mut poly = vec![BigUint::one()];
    for (f, e) in fact.factors() {
        let d = f.deg();
        let qd = qb.pow(d as u32);
        // phi_pows[j] = Phi(f^j)
        let mut phi_pows = Vec::with_capacity(*e as usize + 1);
        phi_pows.push(BigUint::one());
        for j in 1..=*e {
            phi_pows.push(qd.pow(j - 1) * (&qd - BigUint::one()));
        }
        let e = *e as usize;
        let mut g = vec![BigUint::ZERO; d * e + 1];
        for (c, slot) in g.iter_mut().step_by(d.max(1)).enumerate().take(e + 1) {
            *slot = phi_pows[e - c].clone();
        }
        let mut next = vec![BigUint::ZERO; poly.len() + g.len() - 1];
        for (i, x) in poly.iter().enumerate() {
            if x == &BigUint::ZERO {
                continue;
            }
            for (j, y) in g.iter().enumerate() {
                if y != &BigUint::ZERO {
                    next[i + j] += x * y;
                }
            }
        }
        poly = next;
    }
    poly.resize(n as usize + 1, BigUint::ZERO);
    Spectrum { q, n, counts: poly }
}

/// The full spectrum from the divisor formula, sharing one factorization.
pub fn full_spectrum(spec: &FieldSpec, n: u32) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let fact = factor_xn_minus_1(spec, n)?;
    Ok(spectrum_from_factorization(&fact, n))
}

/// k-normality of a single element: n minus the F_q-rank of the matrix of
/// Frobenius iterates' coordinate rows.
pub fn oracle_k_value(ext: &ExtField, alpha: &ExtElem) -> u32 {
    let n = ext.n() as usize;
    let mut rows: Vec<Vec<FqElem>> = Vec::with_capacity(n);
    let mut current = alpha.clone();
    for i in 0..n {
        rows.push(current.coords().to_vec());
        if i + 1 < n {
            current = ext.frobenius(&current);
        }
    }
    ext.n() - rank(ext.base(), &mut rows)
}

/// Rank over F_q by Gaussian elimination with exact field inverses.
fn rank(f: &FieldSpec, rows: &mut [Vec<FqElem>]) -> u32 {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(piv) = (rank..nrows).find(|&r| rows[r][col].encoding() != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = f.inv(rows[rank][col]).expect("pivot is nonzero");
        for x in rows[rank].iter_mut() {
            *x = f.mul(inv, *x);
        }
        for r in 0..nrows {
            if r != rank && rows[r][col].encoding() != 0 {
                let factor = rows[r][col];
                let (head, tail) = rows.split_at_mut(rank.max(r));
                let (src, dst) = if r < rank {
                    (&tail[0], &mut head[r])
                } else {
                    (&head[rank], &mut tail[0])
                };
                for (x, y) in dst.iter_mut().zip(src.iter()) {
                    *x = f.sub(*x, f.mul(factor, *y));
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank as u32
}

/// Histogram of k-normality over every element of F_{q^n}, by exhaustive
/// enumeration in encoding order. Refuses when q^n exceeds `enum_cap`.
pub fn oracle_spectrum(spec: &FieldSpec, n: u32, enum_cap: u64) -> Result<Spectrum> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    let size = (spec.q() as u128).checked_pow(n);
    match size {
        Some(s) if s <= enum_cap as u128 => {}
        _ => {
            let required = BigUint::from(spec.q()).pow(n);
            return Err(Error::BudgetExceeded {
                what: "exhaustive element sweep",
                required: required.to_string(),
                cap: enum_cap.to_string(),
            });
        }
    }
    let size = size.expect("checked above") as u64;
    let ext = make_extension(spec, n)?;
    let mut counts = vec![0u64; n as usize + 1];
    for code in 0..size {
        let alpha = ext.from_encoding(code)?;
        counts[oracle_k_value(&ext, &alpha) as usize] += 1;
    }
    Ok(Spectrum {
        q: spec.q(),
        n,
        counts: counts.into_iter().map(BigUint::from).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_base_field;

    #[test]
    fn oracle_k_value_basics() {
        let f2 = make_base_field(2, 1).unwrap();
        let f8 = make_extension(&f2, 3).unwrap();
        // zero spans nothing, one spans a line
        assert_eq!(oracle_k_value(&f8, &f8.zero()), 3);
        assert_eq!(oracle_k_value(&f8, &f8.one()), 2);
        // with modulus X^3+X+1, the class x of X has x + x^2 + x^4 = 0,
        // so its orbit spans a plane: 1-normal
        let x = f8.from_encoding(2).unwrap();
        assert_eq!(oracle_k_value(&f8, &x), 1);
        // x + 1 is normal: (1,1,0), (1,0,1), (1,1,1) are independent
        let xp1 = f8.from_encoding(3).unwrap();
        assert_eq!(oracle_k_value(&f8, &xp1), 0);
    }

    #[test]
    fn oracle_spectrum_small() {
        // frozen from an independent brute-force implementation
        let f2 = make_base_field(2, 1).unwrap();
        let s = oracle_spectrum(&f2, 3, 1 << 20).unwrap();
        let expect: Vec<BigUint> = [3u32, 3, 1, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(s.counts(), &expect);
        s.check_invariants().unwrap();

        let s4 = oracle_spectrum(&f2, 4, 1 << 20).unwrap();
        assert_eq!(s4.count(4), &BigUint::one());
        assert_eq!(s4.total(), BigUint::from(16u32));

        let f3 = make_base_field(3, 1).unwrap();
        let s32 = oracle_spectrum(&f3, 2, 1 << 20).unwrap();
        assert_eq!(s32.total(), BigUint::from(9u32));
        assert_eq!(s32.count(2), &BigUint::one());
        let expect: Vec<BigUint> = [4u32, 4, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(s32.counts(), &expect);
    }

    #[test]
    fn oracle_budget_refusal() {
        let f2 = make_base_field(2, 1).unwrap();
        let err = oracle_spectrum(&f2, 40, 1 << 20).unwrap_err();
        match err {
            Error::BudgetExceeded { required, cap, .. } => {
                assert_eq!(required, (1u128 << 40).to_string());
                assert_eq!(cap, (1u64 << 20).to_string());
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn formula_counts_match_brute_force_vectors() {
        // frozen from an independent implementation of the rank sweep
        let cases: &[(u64, u32, u32, &[u64])] = &[
            (2, 1, 3, &[3, 3, 1, 1]),
            (2, 1, 5, &[15, 15, 0, 0, 1, 1]),
            (2, 1, 6, &[24, 12, 18, 3, 5, 1, 1]),
            (2, 1, 10, &[480, 240, 240, 0, 30, 15, 15, 0, 2, 1, 1]),
            (3, 1, 4, &[32, 32, 12, 4, 1]),
            (3, 1, 5, &[160, 80, 0, 0, 2, 1]),
            (2, 2, 4, &[192, 48, 12, 3, 1]),
            (5, 1, 3, &[96, 24, 4, 1]),
            (7, 1, 2, &[36, 12, 1]),
            (2, 3, 2, &[56, 7, 1]),
            (3, 2, 2, &[64, 16, 1]),
        ];
        for &(p, m, n, expect) in cases {
            let f = make_base_field(p, m).unwrap();
            let s = full_spectrum(&f, n).unwrap();
            let expect: Vec<BigUint> = expect.iter().map(|&x| BigUint::from(x)).collect();
            assert_eq!(s.counts(), &expect, "q={} n={n}", f.q());
            for (k, want) in expect.iter().enumerate() {
                assert_eq!(&count_k_normal(&f, n, k as i64).unwrap(), want);
            }
        }
    }

    #[test]
    fn count_outside_range_is_zero() {
        let f2 = make_base_field(2, 1).unwrap();
        assert_eq!(count_k_normal(&f2, 3, 5).unwrap(), BigUint::ZERO);
        assert_eq!(count_k_normal(&f2, 3, -1).unwrap(), BigUint::ZERO);
        assert_eq!(count_k_normal(&f2, 3, 3).unwrap(), BigUint::one());
    }

    #[test]
    fn spectrum_examples() {
        let f2 = make_base_field(2, 1).unwrap();
        let s1 = full_spectrum(&f2, 1).unwrap();
        let expect: Vec<BigUint> = [1u32, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(s1.counts(), &expect);
        let s2 = full_spectrum(&f2, 2).unwrap();
        let expect: Vec<BigUint> = [2u32, 1, 1].iter().map(|&x| x.into()).collect();
        assert_eq!(s2.counts(), &expect);
    }

    #[test]
    fn normal_count_is_totient_of_xn_minus_1() {
        // counts[0] = Phi_q(X^n - 1) for n <= 64
        for (p, m) in [(2u64, 1u32), (3, 1), (2, 2)] {
            let f = make_base_field(p, m).unwrap();
            for n in 1..=64u32 {
                let fact = factor_xn_minus_1(&f, n).unwrap();
                let s = spectrum_from_factorization(&fact, n);
                assert_eq!(s.count(0), &fact.totient(), "q={} n={n}", f.q());
            }
        }
    }

    #[test]
    fn deep_structure_frozen_checks() {
        // X^509 - 1 over F_2 = (X - 1) * (single irreducible of degree 508),
        // so the normal count is exactly 2^508 - 1.
        let f2 = make_base_field(2, 1).unwrap();
        let fact = factor_xn_minus_1(&f2, 509).unwrap();
        let mut degs: Vec<usize> = fact.factors().iter().map(|(f, _)| f.deg()).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 508]);
        let expect = (BigUint::one() << 508) - BigUint::one();
        assert_eq!(count_k_normal_in(&fact, 509, 0), expect);
    }

    #[test]
    fn term_budget_refusal_names_cap() {
        let f2 = make_base_field(2, 1).unwrap();
        let err = count_terms(&f2, 63, 30, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        let ok = count_terms(&f2, 3, 1, 100).unwrap();
        assert_eq!(ok.len(), 1);
        assert_eq!(ok[0].1, BigUint::from(3u32));
    }
}
