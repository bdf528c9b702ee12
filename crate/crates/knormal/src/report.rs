//! Report structures and their table / CSV / JSON renderings.
//!
//! Exact rationals serialize as decimal strings `{"num": "...", "den":
//! "..."}` in JSON and as `num`/`den` column pairs in CSV; floats appear
//! only in clearly labeled approximation columns, rounded to 12
//! significant digits. Re-parsing a JSON report reproduces the exact
//! rationals bit for bit.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanvalue::{BoundReport, BoundRow, DecompReport, DensitySeries, LadderEntry};
use crate::spectrum::Spectrum;

/// An exact rational as a pair of decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for ExactRatio {
    fn from(r: &BigRational) -> Self {
        ExactRatio {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl ExactRatio {
    pub fn to_rational(&self) -> Result<BigRational> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator `{}`", self.num)))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator `{}`", self.den)))?;
        if den == BigInt::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

/// 12-significant-digit decimal approximation, for presentation only.
pub fn approx12(r: &BigRational) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.11e}"),
        None => "overflow".into(),
    }
}

fn csv_line(fields: &[String]) -> String {
    fields.join(",")
}

// ---------------------------------------------------------------------
// count
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountTermJson {
    pub divisor: String,
    pub degree: usize,
    pub phi_cofactor: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountReport {
    pub q: u64,
    pub n: u32,
    pub k: i64,
    pub count: String,
    pub terms: Vec<CountTermJson>,
}

impl CountReport {
    pub fn table(&self) -> String {
        let mut out = format!(
            "k-normal count  q={} n={} k={}\ncount = {}\n",
            self.q, self.n, self.k, self.count
        );
        if !self.terms.is_empty() {
            out.push_str("contributing divisors F (count = sum of Phi_q((X^n-1)/F)):\n");
            for t in &self.terms {
                out.push_str(&format!("  {:<24} -> {}\n", t.divisor, t.phi_cofactor));
            }
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("F,deg_F,phi_cofactor\n");
        for t in &self.terms {
            out.push_str(&csv_line(&[
                t.divisor.clone(),
                t.degree.to_string(),
                t.phi_cofactor.clone(),
            ]));
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------
// spectrum
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub q: u64,
    pub n: u32,
    pub counts: Vec<String>,
    /// Present when the brute-force oracle also ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

impl SpectrumReport {
    pub fn new(s: &Spectrum, verified: Option<bool>) -> SpectrumReport {
        SpectrumReport {
            q: s.q(),
            n: s.n(),
            counts: s.counts().iter().map(|c| c.to_string()).collect(),
            verified,
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!("k-normal spectrum  q={} n={}\n", self.q, self.n);
        out.push_str(&format!("{:>4}  {}\n", "k", "count"));
        for (k, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{k:>4}  {c}\n"));
        }
        match self.verified {
            Some(true) => out.push_str("oracle verification: match\n"),
            Some(false) => out.push_str("oracle verification: MISMATCH\n"),
            None => {}
        }
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("k,count\n");
        for (k, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{k},{c}\n"));
        }
        out
    }
}

// ---------------------------------------------------------------------
// density series / mean
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityRowJson {
    pub n: u32,
    pub count: String,
    pub density: ExactRatio,
    pub running_average: ExactRatio,
    pub density_approx: String,
    pub average_approx: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LadderRowJson {
    pub t: u64,
    pub average: ExactRatio,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diff_from_previous: Option<ExactRatio>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DensityReport {
    pub q: u64,
    pub k: u32,
    pub t: u64,
    pub rows: Vec<DensityRowJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ladder: Option<Vec<LadderRowJson>>,
}

impl DensityReport {
    pub fn new(s: &DensitySeries, ladder: Option<&[LadderEntry]>) -> DensityReport {
        DensityReport {
            q: s.q,
            k: s.k,
            t: s.rows.len() as u64,
            rows: s
                .rows
                .iter()
                .map(|r| DensityRowJson {
                    n: r.n,
                    count: r.count.to_string(),
                    density: (&r.density).into(),
                    running_average: (&r.running_average).into(),
                    density_approx: approx12(&r.density),
                    average_approx: approx12(&r.running_average),
                })
                .collect(),
            ladder: ladder.map(|l| {
                l.iter()
                    .map(|e| LadderRowJson {
                        t: e.t,
                        average: (&e.average).into(),
                        diff_from_previous: e.diff_from_previous.as_ref().map(Into::into),
                    })
                    .collect()
            }),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "density of k-normal elements  q={} k={} (approx columns are rounded)\n",
            self.q, self.k
        );
        out.push_str(&format!(
            "{:>5}  {:>24}  {:>20}  {:>20}\n",
            "n", "count", "density~", "running average~"
        ));
        for r in &self.rows {
            let count = if r.count.len() > 24 {
                format!("{}... ({} digits)", &r.count[..16], r.count.len())
            } else {
                r.count.clone()
            };
            out.push_str(&format!(
                "{:>5}  {:>24}  {:>20}  {:>20}\n",
                r.n, count, r.density_approx, r.average_approx
            ));
        }
        if let Some(ladder) = &self.ladder {
            out.push_str("\ndyadic ladder of running averages:\n");
            for e in ladder {
                let diff = e
                    .diff_from_previous
                    .as_ref()
                    .map(|d| approx12(&d.to_rational().expect("serialized from a rational")))
                    .unwrap_or_else(|| "-".into());
                let avg = approx12(&e.average.to_rational().expect("serialized rational"));
                out.push_str(&format!(
                    "  A({:>6}) = {:>20}   |diff| = {}\n",
                    e.t, avg, diff
                ));
            }
        }
        out
    }

    /// Pinned schema:
    /// `n,count,density_num,density_den,avg_num,avg_den,density_approx,avg_approx`
    pub fn csv(&self) -> String {
        let mut out = String::from(
            "n,count,density_num,density_den,avg_num,avg_den,density_approx,avg_approx\n",
        );
        for r in &self.rows {
            out.push_str(&csv_line(&[
                r.n.to_string(),
                r.count.clone(),
                r.density.num.clone(),
                r.density.den.clone(),
                r.running_average.num.clone(),
                r.running_average.den.clone(),
                r.density_approx.clone(),
                r.average_approx.clone(),
            ]));
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GTermJson {
    pub g: String,
    pub deg_g: usize,
    pub mu: i32,
    pub a_g: u64,
    pub weight: ExactRatio,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompReportJson {
    pub q: u64,
    pub k: u32,
    pub t: u64,
    pub f: String,
    pub direct_sum: ExactRatio,
    pub main_term: ExactRatio,
    pub remainder: ExactRatio,
    pub main_majorant: ExactRatio,
    pub remainder_majorant: ExactRatio,
    /// The exact identity S = t*M + R was re-verified before emission.
    pub identity_checked: bool,
    pub terms: Vec<GTermJson>,
}

impl DecompReportJson {
    pub fn new(q: u64, rep: &DecompReport) -> DecompReportJson {
        DecompReportJson {
            q,
            k: rep.k,
            t: rep.t,
            f: rep.f.to_string(),
            direct_sum: (&rep.direct_sum).into(),
            main_term: (&rep.main_term).into(),
            remainder: (&rep.remainder).into(),
            main_majorant: (&rep.main_majorant).into(),
            remainder_majorant: (&rep.remainder_majorant).into(),
            identity_checked: true,
            terms: rep
                .terms
                .iter()
                .map(|t| GTermJson {
                    g: t.g.to_string(),
                    deg_g: t.g.deg(),
                    mu: t.mobius,
                    a_g: t.joint_order,
                    weight: (&t.weight).into(),
                })
                .collect(),
        }
    }

    pub fn table(&self) -> String {
        let rat = |r: &ExactRatio| format!("{}/{}", r.num, r.den);
        let mut out = format!(
            "partial-sum decomposition  q={} F={} (deg {}) t={}\n",
            self.q, self.f, self.k, self.t
        );
        out.push_str(&format!(
            "S    = {:<28} (direct sum)\nM    = {:<28} (main term)\nR    = {:<28} (remainder)\nM*   = {:<28} (main majorant)\nR*   = {:<28} (remainder majorant)\n",
            rat(&self.direct_sum),
            rat(&self.main_term),
            rat(&self.remainder),
            rat(&self.main_majorant),
            rat(&self.remainder_majorant),
        ));
        out.push_str("identity S = t*M + R: verified exactly\n");
        out.push_str(&format!(
            "{:<20} {:>6} {:>4} {:>6}  {}\n",
            "G", "deg_G", "mu", "a_G", "weight"
        ));
        for t in &self.terms {
            out.push_str(&format!(
                "{:<20} {:>6} {:>4} {:>6}  {}\n",
                t.g,
                t.deg_g,
                t.mu,
                t.a_g,
                rat(&t.weight)
            ));
        }
        out
    }

    /// Pinned schema: `G,deg_G,mu,a_G,weight_num,weight_den`
    pub fn csv(&self) -> String {
        let mut out = String::from("G,deg_G,mu,a_G,weight_num,weight_den\n");
        for t in &self.terms {
            out.push_str(&csv_line(&[
                t.g.clone(),
                t.deg_g.to_string(),
                t.mu.to_string(),
                t.a_g.to_string(),
                t.weight.num.clone(),
                t.weight.den.clone(),
            ]));
            out.push('\n');
        }
        out
    }
}

// ---------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundRowJson {
    pub u: u64,
    pub n: u64,
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointwiseBoundReport {
    pub q: u64,
    pub k: u32,
    /// The fixed multiplier p^t with t = floor(log_p k) + 1.
    pub p_pow_t: u64,
    pub rows: Vec<BoundRowJson>,
    pub all_ok: bool,
}

impl PointwiseBoundReport {
    pub fn new(q: u64, k: u32, p_pow_t: u64, rows: &[BoundRow]) -> PointwiseBoundReport {
        PointwiseBoundReport {
            q,
            k,
            p_pow_t,
            all_ok: rows.iter().all(|r| r.ok),
            rows: rows
                .iter()
                .map(|r| BoundRowJson {
                    u: r.u,
                    n: r.n,
                    lhs: (&r.lhs).into(),
                    rhs: (&r.rhs).into(),
                    ok: r.ok,
                })
                .collect(),
        }
    }

    pub fn table(&self) -> String {
        let mut out = format!(
            "lower-bound inequality  q={} k={}: density_k(p^t u) >= density_0(u)/q^k with p^t = {}\n",
            self.q, self.k, self.p_pow_t
        );
        out.push_str(&format!(
            "{:>5} {:>6}  {:>24}  {:>24}  ok\n",
            "u", "n", "lhs~", "rhs~"
        ));
        for r in &self.rows {
            let lhs = r.lhs.to_rational().expect("serialized rational");
            let rhs = r.rhs.to_rational().expect("serialized rational");
            out.push_str(&format!(
                "{:>5} {:>6}  {:>24}  {:>24}  {}\n",
                r.u,
                r.n,
                approx12(&lhs),
                approx12(&rhs),
                r.ok
            ));
        }
        out.push_str(&format!("all rows ok: {}\n", self.all_ok));
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("u,n,lhs_num,lhs_den,rhs_num,rhs_den,ok\n");
        for r in &self.rows {
            out.push_str(&csv_line(&[
                r.u.to_string(),
                r.n.to_string(),
                r.lhs.num.clone(),
                r.lhs.den.clone(),
                r.rhs.num.clone(),
                r.rhs.den.clone(),
                r.ok.to_string(),
            ]));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MeanBoundReport {
    pub q: u64,
    pub t: u64,
    pub average: ExactRatio,
    /// Exact when q is a perfect square.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_exact: Option<ExactRatio>,
    pub bound_approx: String,
    pub ok: bool,
    /// Finite-t evidence for an asymptotic bound, not a proof.
    pub note: String,
}

impl MeanBoundReport {
    pub fn new(rep: &BoundReport) -> MeanBoundReport {
        MeanBoundReport {
            q: rep.q,
            t: rep.t,
            average: (&rep.average).into(),
            bound_exact: rep.bound_exact.as_ref().map(Into::into),
            bound_approx: format!("{:.11e}", rep.bound_approx),
            ok: rep.ok,
            note: "finite-t evidence for the asymptotic bound 1 - 1/sqrt(q) - 1/q".into(),
        }
    }

    pub fn table(&self) -> String {
        let avg = self.average.to_rational().expect("serialized rational");
        let bound = match &self.bound_exact {
            Some(b) => format!("{}/{} (exact)", b.num, b.den),
            None => format!(
                "{} (approx display; comparison is exact)",
                self.bound_approx
            ),
        };
        format!(
            "mean-value bound  q={} t={}\nA(t) = {} ~ {}\nbound = {}\nA(t) > bound: {}\nnote: {}\n",
            self.q,
            self.t,
            if self.average.num.len() > 40 {
                format!(
                    "{}.../{}...",
                    &self.average.num[..12],
                    &self.average.den[..12]
                )
            } else {
                format!("{}/{}", self.average.num, self.average.den)
            },
            approx12(&avg),
            bound,
            self.ok,
            self.note
        )
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("q,t,avg_num,avg_den,bound_approx,ok\n");
        out.push_str(&csv_line(&[
            self.q.to_string(),
            self.t.to_string(),
            self.average.num.clone(),
            self.average.den.clone(),
            self.bound_approx.clone(),
            self.ok.to_string(),
        ]));
        out.push('\n');
        out
    }
}
