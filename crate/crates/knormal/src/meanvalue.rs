//! Density series of k-normal elements, their running averages, the exact
//! main-term/remainder decomposition of the divisor partial sums, and the
//! lower-bound inequalities — all in exact rational arithmetic.
//!
//! For a monic F of degree k with nonzero constant term, the partial sum
//!
//! ```text
//! S_F(t) = sum over n <= t with F | X^n - 1 of Phi_q((X^n-1)/F) / q^{n-k}
//! ```
//!
//! splits exactly as S_F(t) = t*M_F(t) + R_F(t), where the sums run over
//! squarefree G with ord(FG) <= t, M collects mu_q(G)/(ord(FG) q^{deg G}),
//! and R collects the floor defects (floor(t/a) - t/a) mu_q(G)/q^{deg G}.
//! Both are dominated termwise by the majorants M*(t), R*(t) taken over
//! ord(G) <= t. Every decomposition verifies its identity before returning.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fqpoly::{
    factor_xm_minus_1_squarefree, factor_xn_minus_1, monic_polys_of_degree, order_within,
    split_by_characteristic, Factorization, MonicPoly,
};
use crate::gf::FieldSpec;
use crate::spectrum::count_k_normal_in;
use crate::Budgets;

/// One row of a density table: exact count, density, and running average.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub n: u32,
    pub count: BigUint,
    pub density: BigRational,
    pub running_average: BigRational,
}

/// Exact densities of k-normal elements for n = 1..t.
#[derive(Clone, Debug, PartialEq)]
pub struct DensitySeries {
    pub q: u64,
    pub k: u32,
    pub rows: Vec<DensityRow>,
}

impl DensitySeries {
    /// Running average at t (the last row); series are never empty.
    pub fn final_average(&self) -> &BigRational {
        &self.rows.last().expect("nonempty series").running_average
    }

    pub fn average_at(&self, t: u64) -> Option<&BigRational> {
        self.rows
            .get(t.checked_sub(1)? as usize)
            .map(|r| &r.running_average)
    }
}

/// One term of a decomposition: a squarefree G with ord(FG) <= t.
#[derive(Clone, Debug, PartialEq)]
pub struct GTerm {
    pub g: MonicPoly,
    /// ord(F * G), the spacing of the n this term contributes to.
    pub joint_order: u64,
    pub mobius: i32,
    /// mu_q(G) / q^{deg G}.
    pub weight: BigRational,
}

/// The exact decomposition S = t*M + R with its majorants and term list.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompReport {
    pub f: MonicPoly,
    pub k: u32,
    pub t: u64,
    pub direct_sum: BigRational,
    pub main_term: BigRational,
    pub remainder: BigRational,
    pub main_majorant: BigRational,
    pub remainder_majorant: BigRational,
    pub terms: Vec<GTerm>,
}

/// One comparison row of the lower-bound inequality
/// lambda_{q,k}(p^t u) >= lambda_{q,0}(u) / q^k.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub u: u64,
    pub n: u64,
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub ok: bool,
}

/// Finite-t comparison of the running average against 1 - 1/sqrt(q) - 1/q.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub q: u64,
    pub t: u64,
    pub average: BigRational,
    /// Exact bound when q is a perfect square.
    pub bound_exact: Option<BigRational>,
    pub bound_approx: f64,
    /// The comparison is exact either way; this only marks finite-t
    /// evidence for an asymptotic statement, not a proof.
    pub ok: bool,
}

fn big_q_pow(q: u64, e: u64) -> BigInt {
    BigInt::from(BigUint::from(q).pow(e.try_into().expect("exponent fits u32")))
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// All monic polynomials of degree k with nonzero constant term, in
/// canonical order; the natural index set of the decomposition.
pub fn monic_coprime_to_x(spec: &FieldSpec, k: u32) -> Vec<MonicPoly> {
    if k == 0 {
        return vec![MonicPoly::one(spec)];
    }
    monic_polys_of_degree(spec, k as usize)
        .filter(|p| p.constant_term().encoding() != 0)
        .collect()
}

fn check_in_index_set(f: &MonicPoly, k: u32) -> Result<()> {
    if f.deg() != k as usize {
        return Err(Error::DegreeMismatch {
            expected: k as usize,
            found: f.deg(),
        });
    }
    if !f.is_one() && f.constant_term().encoding() == 0 {
        return Err(Error::DivisibleByX);
    }
    Ok(())
}

/// Exact densities and running averages of k-normal elements for n = 1..t.
///
/// Factorizations of X^m - 1 are shared across the n with a common
/// characteristic-free part m, so long series stay affordable.
pub fn density_series(
    spec: &FieldSpec,
    k: u32,
    t: u64,
    budgets: &Budgets,
) -> Result<DensitySeries> {
    if t == 0 {
        return Err(Error::ZeroInput);
    }
    let cap = budgets.density_t_cap(spec.q());
    if t > cap {
        return Err(Error::BudgetExceeded {
            what: "density series length",
            required: t.to_string(),
            cap: cap.to_string(),
        });
    }
    let mut rows = Vec::with_capacity(t as usize);
    let mut acc = BigRational::zero();
    for n in 1..=t as u32 {
        let (pa, m) = split_by_characteristic(spec.p(), n);
        let factors = factor_xm_minus_1_squarefree(spec, m)?;
        let fact = Factorization::with_uniform_multiplicity(spec, factors, pa);
        let count = count_k_normal_in(&fact, n, k as i64);
        let density = ratio(BigInt::from(count.clone()), big_q_pow(spec.q(), n as u64));
        acc += &density;
        let running_average = &acc / BigRational::from_integer(BigInt::from(n));
        rows.push(DensityRow {
            n,
            count,
            density,
            running_average,
        });
    }
    Ok(DensitySeries {
        q: spec.q(),
        k,
        rows,
    })
}

/// Entries of the dyadic ladder: A(2^j) for 2^j <= t, with successive
/// absolute differences.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderEntry {
    pub t: u64,
    pub average: BigRational,
    pub diff_from_previous: Option<BigRational>,
}

pub fn ladder(series: &DensitySeries) -> Vec<LadderEntry> {
    let mut out: Vec<LadderEntry> = Vec::new();
    let mut tp = 1u64;
    while tp as usize <= series.rows.len() {
        let average = series.rows[tp as usize - 1].running_average.clone();
        let diff_from_previous = out
            .last()
            .map(|prev: &LadderEntry| (&average - &prev.average).abs());
        out.push(LadderEntry {
            t: tp,
            average,
            diff_from_previous,
        });
        tp *= 2;
    }
    out
}

/// The direct-route partial sum S_F(t): over the n <= t that F divides
/// X^n - 1 (multiples of ord F, each re-checked by explicit division),
/// accumulate Phi_q((X^n - 1)/F) / q^{n-k}.
pub fn direct_series_sum(spec: &FieldSpec, f: &MonicPoly, k: u32, t: u64) -> Result<BigRational> {
    check_in_index_set(f, k)?;
    if t == 0 {
        return Err(Error::ZeroInput);
    }
    let mut sum = BigRational::zero();
    let Some(ord) = order_within(spec, f, t) else {
        return Ok(sum); // no n <= t is divisible by ord(F)
    };
    let mut n = ord;
    while n <= t {
        let fact = factor_xn_minus_1(spec, n as u32)?;
        // explicit division check on top of the order argument
        if !f.divides(&fact.product(), spec) {
            return Err(Error::Internal(format!(
                "{f} should divide X^{n}-1 by the order argument but does not"
            )));
        }
        let f_sub = fact
            .factor_within(f)
            .ok_or_else(|| Error::Internal(format!("{f} divides X^{n}-1 but fails to refactor")))?;
        let cofactor = fact.complement(&f_sub);
        sum += ratio(
            BigInt::from(cofactor.totient()),
            big_q_pow(spec.q(), n - k as u64),
        );
        n += ord;
    }
    Ok(sum)
}

/// Candidate squarefree G: the deduplicated union of squarefree divisors
/// of X^j - 1 over j <= t coprime to the characteristic. This is exactly
/// the set of squarefree G (not divisible by X) with ord(G) <= t.
fn squarefree_candidates(
    spec: &FieldSpec,
    t: u64,
    budgets: &Budgets,
) -> Result<BTreeMap<MonicPoly, Factorization>> {
    let mut out = BTreeMap::new();
    for j in 1..=t {
        if j % spec.p() == 0 {
            continue;
        }
        let fact = factor_xn_minus_1(spec, j as u32)?;
        debug_assert!(fact.is_squarefree());
        for d in fact.squarefree_divisors() {
            out.entry(d.product()).or_insert(d);
            if out.len() > budgets.g_cap {
                return Err(Error::BudgetExceeded {
                    what: "squarefree candidate set",
                    required: format!("more than {}", out.len() - 1),
                    cap: budgets.g_cap.to_string(),
                });
            }
        }
    }
    Ok(out)
}

/// Decompose S_F(t) = t*M + R exactly, with majorants and the term list.
pub fn decompose(
    spec: &FieldSpec,
    f: &MonicPoly,
    k: u32,
    t: u64,
    budgets: &Budgets,
) -> Result<DecompReport> {
    check_in_index_set(f, k)?;
    if t == 0 {
        return Err(Error::ZeroInput);
    }
    if t > budgets.decompose_t_cap {
        return Err(Error::BudgetExceeded {
            what: "decomposition horizon t",
            required: t.to_string(),
            cap: budgets.decompose_t_cap.to_string(),
        });
    }
    let q = spec.q();
    let mut main_term = BigRational::zero();
    let mut remainder = BigRational::zero();
    let mut main_majorant = BigRational::zero();
    let mut remainder_majorant = BigRational::zero();
    let mut terms = Vec::new();
    let t_rat = BigRational::from_integer(BigInt::from(t));
    for (g_poly, g_fact) in squarefree_candidates(spec, t, budgets)? {
        let deg_g = g_poly.deg() as u64;
        let ord_g = order_within(spec, &g_poly, t).ok_or_else(|| {
            Error::Internal(format!("candidate {g_poly} has no order within t={t}"))
        })?;
        // majorants range over every candidate (ord(G) <= t)
        main_majorant += ratio(BigInt::one(), BigInt::from(ord_g) * big_q_pow(q, deg_g));
        remainder_majorant += ratio(BigInt::one(), big_q_pow(q, deg_g));
        // the decomposition proper keeps only ord(FG) <= t
        let fg = f.mul(&g_poly, spec);
        let Some(joint_order) = order_within(spec, &fg, t) else {
            continue;
        };
        let mobius = g_fact.mobius();
        debug_assert!(mobius != 0, "candidates are squarefree");
        let weight = ratio(BigInt::from(mobius), big_q_pow(q, deg_g));
        main_term += ratio(
            BigInt::from(mobius),
            BigInt::from(joint_order) * big_q_pow(q, deg_g),
        );
        let quotient = &t_rat / BigRational::from_integer(BigInt::from(joint_order));
        remainder += (quotient.floor() - quotient) * &weight;
        terms.push(GTerm {
            g: g_poly,
            joint_order,
            mobius,
            weight,
        });
    }
    let direct_sum = direct_series_sum(spec, f, k, t)?;
    let recombined = &t_rat * &main_term + &remainder;
    if direct_sum != recombined {
        return Err(Error::Internal(format!(
            "decomposition identity failed for F={f}, t={t}: direct {direct_sum} vs {recombined}"
        )));
    }
    if main_term.abs() > main_majorant || remainder.abs() > remainder_majorant {
        return Err(Error::Internal(format!(
            "majorant ordering failed for F={f}, t={t}"
        )));
    }
    Ok(DecompReport {
        f: f.clone(),
        k,
        t,
        direct_sum,
        main_term,
        remainder,
        main_majorant,
        remainder_majorant,
        terms,
    })
}

/// For u = 1, 2, ... with p^t u <= cap, compare lambda_{q,k}(p^t u) against
/// lambda_{q,0}(u)/q^k, where t is the least power with p^t > k.
pub fn pointwise_bound_check(spec: &FieldSpec, k: u32, cap: u64) -> Result<Vec<BoundRow>> {
    if k == 0 {
        return Err(Error::ZeroInput);
    }
    let p = spec.p();
    let mut pt = p;
    while pt <= k as u64 {
        pt = pt
            .checked_mul(p)
            .ok_or(Error::OrderOverflow { deg: k as usize })?;
    }
    let mut rows = Vec::new();
    let mut u = 1u64;
    while pt * u <= cap {
        let n = pt * u;
        let fact_n = factor_xn_minus_1(spec, n as u32)?;
        let lhs = ratio(
            BigInt::from(count_k_normal_in(&fact_n, n as u32, k as i64)),
            big_q_pow(spec.q(), n),
        );
        let fact_u = factor_xn_minus_1(spec, u as u32)?;
        let rhs = ratio(
            BigInt::from(count_k_normal_in(&fact_u, u as u32, 0)),
            big_q_pow(spec.q(), u + k as u64),
        );
        rows.push(BoundRow {
            u,
            n,
            ok: lhs >= rhs,
            lhs,
            rhs,
        });
        u += 1;
    }
    Ok(rows)
}

/// Compare the finite running average A(t) of normal-element densities
/// against 1 - 1/sqrt(q) - 1/q (requires q >= 4).
///
/// For square q the bound is an exact rational; otherwise the comparison
/// A > 1 - 1/sqrt(q) - 1/q is decided exactly through its algebraic
/// equivalent (B < 0 or q B^2 < 1 for B = 1 - 1/q - A).
pub fn bound_check_q0(spec: &FieldSpec, t: u64, budgets: &Budgets) -> Result<BoundReport> {
    let q = spec.q();
    if q < 4 {
        return Err(Error::BoundNeedsQAtLeast4(q));
    }
    let series = density_series(spec, 0, t, budgets)?;
    let average = series.final_average().clone();
    let root = q.isqrt();
    let one = BigRational::one();
    let inv_q = ratio(BigInt::one(), BigInt::from(q));
    let (bound_exact, ok) = if root * root == q {
        let bound = &one - ratio(BigInt::one(), BigInt::from(root)) - &inv_q;
        let ok = average > bound;
        (Some(bound), ok)
    } else {
        let b = &one - &inv_q - &average;
        let ok = b.is_negative() || &b * &b * BigRational::from_integer(BigInt::from(q)) < one;
        (None, ok)
    };
    let bound_approx = 1.0 - (q as f64).sqrt().recip() - (q as f64).recip();
    Ok(BoundReport {
        q,
        t,
        average,
        bound_exact,
        bound_approx,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_base_field;

    fn f2() -> FieldSpec {
        make_base_field(2, 1).unwrap()
    }
    fn f3() -> FieldSpec {
        make_base_field(3, 1).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        ratio(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn index_set_enumeration() {
        let f = f2();
        let m0 = monic_coprime_to_x(&f, 0);
        assert_eq!(m0, vec![MonicPoly::one(&f)]);
        let m1: Vec<String> = monic_coprime_to_x(&f, 1)
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(m1, vec!["X+1"]);
        // size (q-1) q^{k-1} over F_3
        let f = f3();
        assert_eq!(monic_coprime_to_x(&f, 2).len(), 6);
    }

    #[test]
    fn density_series_examples() {
        let budgets = Budgets::default();
        let s = density_series(&f2(), 0, 3, &budgets).unwrap();
        let densities: Vec<BigRational> = s.rows.iter().map(|r| r.density.clone()).collect();
        assert_eq!(densities, vec![rat(1, 2), rat(1, 2), rat(3, 8)]);
        assert_eq!(s.final_average(), &rat(11, 24));

        let s = density_series(&f2(), 1, 2, &budgets).unwrap();
        assert_eq!(s.final_average(), &rat(3, 8));

        // the row n = k has exactly the zero element
        let s = density_series(&f2(), 4, 4, &budgets).unwrap();
        assert_eq!(s.rows[3].count, BigUint::one());
    }

    #[test]
    fn running_average_rederives_from_densities() {
        let budgets = Budgets::default();
        let s = density_series(&f3(), 1, 12, &budgets).unwrap();
        let mut acc = BigRational::zero();
        for row in &s.rows {
            acc += &row.density;
            assert_eq!(
                row.running_average,
                &acc / BigRational::from_integer(BigInt::from(row.n))
            );
        }
    }

    #[test]
    fn density_budget_refusal() {
        let budgets = Budgets {
            density_t_base: 100,
            ..Budgets::default()
        };
        let err = density_series(&f2(), 0, 101, &budgets).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
        assert!(density_series(&f2(), 0, 0, &budgets).is_err());
    }

    #[test]
    fn direct_sum_examples() {
        let f = f2();
        // F = 1, k = 0, t = 1: Phi(X+1)/2 = 1/2
        let s = direct_series_sum(&f, &MonicPoly::one(&f), 0, 1).unwrap();
        assert_eq!(s, rat(1, 2));
        // F = X+1, k = 1, t = 3: 1 + 1/2 + 3/4
        let xp1 = MonicPoly::parse("X+1", &f).unwrap();
        let s = direct_series_sum(&f, &xp1, 1, 3).unwrap();
        assert_eq!(s, rat(9, 4));
        // F = X^2+X+1 has order 3, so nothing contributes below t = 3
        let quad = MonicPoly::parse("X^2+X+1", &f).unwrap();
        assert_eq!(direct_series_sum(&f, &quad, 2, 2).unwrap(), rat(0, 1));
        // frozen larger values
        let expect = [
            (8u64, rat(341, 64)),
            (16, rat(170553, 16384)),
            (20, rat(3470739, 262144)),
        ];
        for (t, want) in expect {
            assert_eq!(direct_series_sum(&f, &xp1, 1, t).unwrap(), want);
        }
    }

    #[test]
    fn direct_sum_rejects_bad_f() {
        let f = f2();
        let x = MonicPoly::x(&f);
        assert!(matches!(
            direct_series_sum(&f, &x, 1, 4),
            Err(Error::DivisibleByX)
        ));
        let xp1 = MonicPoly::parse("X+1", &f).unwrap();
        assert!(matches!(
            direct_series_sum(&f, &xp1, 2, 4),
            Err(Error::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn decompose_examples() {
        let f = f2();
        let budgets = Budgets::default();
        let xp1 = MonicPoly::parse("X+1", &f).unwrap();
        // t = 2: M = 3/4, R = 0, S = 3/2
        let rep = decompose(&f, &xp1, 1, 2, &budgets).unwrap();
        assert_eq!(rep.main_term, rat(3, 4));
        assert_eq!(rep.remainder, rat(0, 1));
        assert_eq!(rep.direct_sum, rat(3, 2));
        // t = 3 brings in a fractional part: M = 2/3, R = 1/4
        let rep = decompose(&f, &xp1, 1, 3, &budgets).unwrap();
        assert_eq!(rep.main_term, rat(2, 3));
        assert_eq!(rep.remainder, rat(1, 4));
        assert_eq!(rep.direct_sum, rat(9, 4));
        // F = 1, k = 0, t = 1: candidates {1, X+1} both with order 1
        let rep = decompose(&f, &MonicPoly::one(&f), 0, 1, &budgets).unwrap();
        assert_eq!(rep.main_term, rat(1, 2));
        assert_eq!(rep.remainder, rat(0, 1));
        assert_eq!(rep.direct_sum, rat(1, 2));
        assert_eq!(rep.terms.len(), 2);
        // empty direct sum: ord(F) > t forces S = tM + R = 0
        let quad = MonicPoly::parse("X^2+X+1", &f).unwrap();
        let rep = decompose(&f, &quad, 2, 2, &budgets).unwrap();
        assert_eq!(rep.direct_sum, rat(0, 1));
        assert!(rep.terms.is_empty());
    }

    #[test]
    fn decompose_majorants_frozen() {
        // R*(t) and M*(t) are F-independent; frozen from an independent
        // computation over the coset class model
        let f = f2();
        let budgets = Budgets::default();
        let xp1 = MonicPoly::parse("X+1", &f).unwrap();
        let rep8 = decompose(&f, &xp1, 1, 8, &budgets).unwrap();
        assert_eq!(rep8.remainder_majorant, rat(303, 128));
        assert_eq!(rep8.main_majorant, rat(7619, 4480));
        let rep16 = decompose(&f, &xp1, 1, 16, &budgets).unwrap();
        assert_eq!(rep16.remainder_majorant, rat(87771, 32768));
        let rep32 = decompose(&f, &xp1, 1, 32, &budgets).unwrap();
        assert_eq!(
            rep32.remainder_majorant,
            ratio(BigInt::from(6808137471u64), BigInt::from(2147483648u64))
        );
        // sub-linearity evidence: R*(t)/t strictly decreasing on the triple
        let r_over_t = |rep: &DecompReport| {
            &rep.remainder_majorant / BigRational::from_integer(BigInt::from(rep.t))
        };
        assert!(r_over_t(&rep8) > r_over_t(&rep16));
        assert!(r_over_t(&rep16) > r_over_t(&rep32));
    }

    #[test]
    fn decompose_budget_refusals() {
        let f = f2();
        let budgets = Budgets {
            decompose_t_cap: 10,
            ..Budgets::default()
        };
        let xp1 = MonicPoly::parse("X+1", &f).unwrap();
        assert!(matches!(
            decompose(&f, &xp1, 1, 11, &budgets),
            Err(Error::BudgetExceeded { .. })
        ));
        let tiny = Budgets {
            g_cap: 2,
            ..Budgets::default()
        };
        assert!(matches!(
            decompose(&f, &xp1, 1, 8, &tiny),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn candidate_generator_matches_direct_sweep() {
        // every squarefree G (X not dividing G) with ord(G) <= t appears:
        // compare against a brute-force scan over all monic polynomials of
        // degree <= t
        for f in [f2(), f3()] {
            let budgets = Budgets::default();
            for t in 1..=6u64 {
                let generated: Vec<String> = squarefree_candidates(&f, t, &budgets)
                    .unwrap()
                    .keys()
                    .map(|p| p.to_string())
                    .collect();
                let mut brute = Vec::new();
                for d in 0..=t as usize {
                    for cand in monic_polys_of_degree(&f, d) {
                        if d > 0 && cand.constant_term().encoding() == 0 {
                            continue;
                        }
                        if crate::fqpoly::poly_mobius(&f, &cand) == 0 {
                            continue;
                        }
                        if order_within(&f, &cand, t).is_some() {
                            brute.push(cand.to_string());
                        }
                    }
                }
                let mut generated = generated;
                generated.sort();
                brute.sort();
                assert_eq!(generated, brute, "q={} t={t}", f.q());
            }
        }
    }

    #[test]
    fn pointwise_bound_rows_small() {
        // q=2, k=1: p^t = 2; equality holds at every u <= 4
        let rows = pointwise_bound_check(&f2(), 1, 8).unwrap();
        assert_eq!(rows.len(), 4);
        for row in &rows {
            assert!(row.ok);
            assert_eq!(row.lhs, row.rhs, "u={}", row.u);
        }
        // q=2, k=2: p^t = 4
        let rows = pointwise_bound_check(&f2(), 2, 8).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.ok));
        assert_eq!(rows[1].n, 8);
        // q=3, k=1: p^t = 3
        let rows = pointwise_bound_check(&f3(), 1, 9).unwrap();
        assert_eq!(rows.len(), 3);
        assert!(rows.iter().all(|r| r.ok));
        assert!(pointwise_bound_check(&f2(), 0, 8).is_err());
    }

    #[test]
    fn ladder_diffs() {
        let budgets = Budgets::default();
        let s = density_series(&f2(), 0, 8, &budgets).unwrap();
        let l = ladder(&s);
        assert_eq!(l.len(), 4); // t = 1, 2, 4, 8
        assert!(l[0].diff_from_previous.is_none());
        for pair in l.windows(2) {
            let expect = (&pair[1].average - &pair[0].average).abs();
            assert_eq!(pair[1].diff_from_previous.as_ref(), Some(&expect));
        }
    }

    #[test]
    fn bound_check_requires_q4() {
        let budgets = Budgets::default();
        assert!(matches!(
            bound_check_q0(&f2(), 50, &budgets),
            Err(Error::BoundNeedsQAtLeast4(2))
        ));
        let f4 = make_base_field(2, 2).unwrap();
        let rep = bound_check_q0(&f4, 20, &budgets).unwrap();
        assert_eq!(rep.bound_exact, Some(rat(1, 4)));
        assert!(rep.ok);
        // frozen: A(20) for q = 4
        assert_eq!(
            rep.average,
            ratio(
                BigInt::from(689238932439u64),
                BigInt::from(1099511627776u64)
            )
        );
        let f9 = make_base_field(3, 2).unwrap();
        let rep = bound_check_q0(&f9, 12, &budgets).unwrap();
        assert_eq!(rep.bound_exact, Some(rat(5, 9)));
        // q = 5 is not a perfect square: the algebraic comparison runs
        let f5 = make_base_field(5, 1).unwrap();
        let rep = bound_check_q0(&f5, 12, &budgets).unwrap();
        assert!(rep.bound_exact.is_none());
        let expected = 1.0 - 1.0 / 5f64.sqrt() - 0.2;
        assert!((rep.bound_approx - expected).abs() < 1e-12);
        // and agrees with the float comparison at this scale
        use num_traits::ToPrimitive;
        assert_eq!(rep.ok, rep.average.to_f64().unwrap() > expected);
    }
}
