//! Thin command-line front end over the library: every subcommand parses
//! arguments, calls one library entry point, and renders the report in the
//! chosen format. Exit status is 0 only when every internal identity and
//! verification check passed.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use knormal::error::{Error, Result};
use knormal::fqpoly::MonicPoly;
use knormal::gf::{make_base_field, FieldSpec};
use knormal::meanvalue;
use knormal::report::*;
use knormal::spectrum;
use knormal::{intfun, Budgets};

#[derive(Parser)]
#[command(
    name = "knormal",
    version,
    about = "Exact counts, densities, and mean-value diagnostics of k-normal elements over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on q^n for exhaustive element sweeps
    #[arg(long, global = true)]
    budget_elems: Option<u64>,
    /// Cap on the candidate set size in decompositions
    #[arg(long, global = true)]
    budget_g: Option<usize>,
    /// Assert that no randomness is in use (always true; the flag is the guarantee)
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

/// The base field, given either as a prime power or as (p, m).
#[derive(Args)]
struct FieldArgs {
    /// Field size as a prime power, e.g. 9 for F_9
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,
    /// Characteristic (pair with --m)
    #[arg(long, requires = "m")]
    p: Option<u64>,
    /// Degree over the prime field (pair with --p)
    #[arg(long, requires = "p")]
    m: Option<u32>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<FieldSpec> {
        match (self.q, self.p, self.m) {
            (Some(q), None, None) => {
                let fact = intfun::factor_int(q)?;
                match fact.factors() {
                    [(p, e)] => make_base_field(*p, *e),
                    _ => Err(Error::NotPrimePower(q)),
                }
            }
            (None, Some(p), Some(m)) => make_base_field(p, m),
            _ => Err(Error::Parse(
                "give the field as --q Q or as --p P --m M".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the k-normal elements of F_{q^n} by the divisor formula
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// The full spectrum of k-normal counts for k = 0..n
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        n: u32,
        /// Also run the exhaustive rank oracle and compare
        #[arg(long)]
        verify: bool,
    },
    /// Densities of k-normal elements for n = 1..t with running averages
    Mean {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u64,
        /// Also report averages on the dyadic ladder with differences
        #[arg(long)]
        ladder: bool,
    },
    /// Exact decomposition S = t*M + R of a divisor partial sum
    Decompose {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        /// Monic polynomial of degree k with nonzero constant term,
        /// e.g. "X+1" or "X^2+2*X+1"
        #[arg(long = "F", value_name = "POLY")]
        f: String,
        #[arg(long)]
        t: u64,
    },
    /// Lower-bound inequalities: the k >= 1 comparison rows, or the
    /// mean-value bound for k = 0 (requires q >= 4)
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        /// Horizon for the k >= 1 inequality rows (p^t u <= T)
        #[arg(long = "T", value_name = "T")]
        cap: Option<u64>,
        /// Series length for the k = 0 mean-value bound
        #[arg(long)]
        t: Option<u64>,
    },
    /// Run the built-in invariant suites
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut budgets = Budgets::default();
    if let Some(cap) = cli.budget_elems {
        budgets.enum_cap = cap;
    }
    if let Some(cap) = cli.budget_g {
        budgets.g_cap = cap;
    }
    match run(&cli, &budgets) {
        Ok((text, all_ok)) => {
            let emit = if let Some(path) = &cli.out {
                std::fs::write(path, &text)
            } else {
                use std::io::Write;
                std::io::stdout().write_all(text.as_bytes())
            };
            if let Err(e) = emit {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            if all_ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn render<T: serde::Serialize>(
    format: Format,
    report: &T,
    table: impl Fn(&T) -> String,
    csv: impl Fn(&T) -> String,
) -> Result<String> {
    Ok(match format {
        Format::Table => table(report),
        Format::Csv => csv(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report)
                .map_err(|e| Error::Internal(format!("JSON encoding failed: {e}")))?;
            s.push('\n');
            s
        }
    })
}

fn run(cli: &Cli, budgets: &Budgets) -> Result<(String, bool)> {
    match &cli.command {
        Cmd::Count { field, n, k } => {
            let spec = field.resolve()?;
            let count = spectrum::count_k_normal(&spec, *n, *k)?;
            let terms = spectrum::count_terms(&spec, *n, *k, budgets.divisor_cap)?;
            let report = CountReport {
                q: spec.q(),
                n: *n,
                k: *k,
                count: count.to_string(),
                terms: terms
                    .iter()
                    .map(|(d, phi)| CountTermJson {
                        divisor: d.product().to_string(),
                        degree: d.deg(),
                        phi_cofactor: phi.to_string(),
                    })
                    .collect(),
            };
            Ok((
                render(cli.format, &report, CountReport::table, CountReport::csv)?,
                true,
            ))
        }
        Cmd::Spectrum { field, n, verify } => {
            let spec = field.resolve()?;
            let s = spectrum::full_spectrum(&spec, *n)?;
            s.check_invariants()?;
            let verified = if *verify {
                let oracle = spectrum::oracle_spectrum(&spec, *n, budgets.enum_cap)?;
                Some(oracle == s)
            } else {
                None
            };
            let report = SpectrumReport::new(&s, verified);
            let ok = verified.unwrap_or(true);
            Ok((
                render(
                    cli.format,
                    &report,
                    SpectrumReport::table,
                    SpectrumReport::csv,
                )?,
                ok,
            ))
        }
        Cmd::Mean {
            field,
            k,
            t,
            ladder,
        } => {
            let spec = field.resolve()?;
            let series = meanvalue::density_series(&spec, *k, *t, budgets)?;
            let ladder_rows = ladder.then(|| meanvalue::ladder(&series));
            let report = DensityReport::new(&series, ladder_rows.as_deref());
            Ok((
                render(
                    cli.format,
                    &report,
                    DensityReport::table,
                    DensityReport::csv,
                )?,
                true,
            ))
        }
        Cmd::Decompose { field, k, f, t } => {
            let spec = field.resolve()?;
            let poly = MonicPoly::parse(f, &spec)?;
            let rep = meanvalue::decompose(&spec, &poly, *k, *t, budgets)?;
            let report = DecompReportJson::new(spec.q(), &rep);
            Ok((
                render(
                    cli.format,
                    &report,
                    DecompReportJson::table,
                    DecompReportJson::csv,
                )?,
                true,
            ))
        }
        Cmd::Bounds { field, k, cap, t } => {
            let spec = field.resolve()?;
            if *k == 0 {
                let t = t.ok_or_else(|| {
                    Error::Parse("the k = 0 bound needs a series length --t".into())
                })?;
                let rep = meanvalue::bound_check_q0(&spec, t, budgets)?;
                let ok = rep.ok;
                let report = MeanBoundReport::new(&rep);
                Ok((
                    render(
                        cli.format,
                        &report,
                        MeanBoundReport::table,
                        MeanBoundReport::csv,
                    )?,
                    ok,
                ))
            } else {
                let cap = cap.ok_or_else(|| {
                    Error::Parse("the k >= 1 inequality rows need a horizon --T".into())
                })?;
                let rows = meanvalue::pointwise_bound_check(&spec, *k, cap)?;
                let mut pt = spec.p();
                while pt <= *k as u64 {
                    pt *= spec.p();
                }
                let report = PointwiseBoundReport::new(spec.q(), *k, pt, &rows);
                let ok = report.all_ok;
                Ok((
                    render(
                        cli.format,
                        &report,
                        PointwiseBoundReport::table,
                        PointwiseBoundReport::csv,
                    )?,
                    ok,
                ))
            }
        }
        Cmd::Selftest => selftest(budgets),
    }
}

fn selftest(budgets: &Budgets) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut all_ok = true;
    let mut check = |name: &str, ok: bool, out: &mut String| {
        out.push_str(&format!(
            "selftest {name}: {}\n",
            if ok { "ok" } else { "FAILED" }
        ));
        all_ok &= ok;
    };

    // divisor formula vs exhaustive oracle on small fields
    let mut ok = true;
    for (p, m) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
        let spec = make_base_field(p, m)?;
        let mut n = 1u32;
        while (spec.q() as u128).pow(n) <= 1 << 10 {
            let formula = spectrum::full_spectrum(&spec, n)?;
            let oracle = spectrum::oracle_spectrum(&spec, n, budgets.enum_cap)?;
            ok &= formula == oracle;
            n += 1;
        }
    }
    check("oracle equivalence (q^n <= 2^10)", ok, &mut out);

    // partition: spectrum sums to q^n without enumerating elements
    let mut ok = true;
    for (p, m) in [(2u64, 1u32), (3, 1)] {
        let spec = make_base_field(p, m)?;
        for n in 1..=24u32 {
            let s = spectrum::full_spectrum(&spec, n)?;
            ok &= s.check_invariants().is_ok();
        }
    }
    check("partition identity (n <= 24)", ok, &mut out);

    // totient product form vs direct residue counting
    let mut ok = true;
    for (p, m) in [(2u64, 1u32), (3, 1)] {
        let spec = make_base_field(p, m)?;
        for n in 1..=6u32 {
            let fact = knormal::fqpoly::factor_xn_minus_1(&spec, n)?;
            let modulus = fact.product();
            // every residue, monic or not: enumerate coefficient vectors
            let mut coprime = 0u64;
            let mut digits = vec![0u64; n as usize];
            loop {
                let residue = knormal::fqpoly::Poly::from_coeffs(
                    digits.iter().map(|&c| spec.elem(c).unwrap()).collect(),
                );
                if residue.gcd(modulus.as_poly(), &spec).is_one() {
                    coprime += 1;
                }
                let mut i = 0;
                loop {
                    if i == digits.len() {
                        break;
                    }
                    digits[i] += 1;
                    if digits[i] < spec.q() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
            ok &= num_bigint::BigUint::from(coprime) == fact.totient();
        }
    }
    check("totient consistency", ok, &mut out);

    // decomposition identity on small parameters (verified internally)
    let mut ok = true;
    for (p, m) in [(2u64, 1u32), (3, 1)] {
        let spec = make_base_field(p, m)?;
        for k in 0..=1u32 {
            for f in meanvalue::monic_coprime_to_x(&spec, k) {
                for t in 1..=8u64 {
                    ok &= meanvalue::decompose(&spec, &f, k, t, budgets).is_ok();
                }
            }
        }
    }
    check("decomposition identity (t <= 8)", ok, &mut out);

    // integer arithmetic invariants
    let mut ok = true;
    for mval in 1..=2000u64 {
        let s: u64 = intfun::divisors(mval)?
            .iter()
            .map(|&d| intfun::euler_phi(d).unwrap())
            .sum();
        ok &= s == mval;
    }
    for mval in 3..=10_000u64 {
        let bound = (mval as f64).powf(1.1 / (mval as f64).ln().ln());
        ok &= (intfun::sigma0(mval)? as f64) < bound;
    }
    check("integer arithmetic invariants", ok, &mut out);

    out.push_str(if all_ok {
        "selftest: all suites passed\n"
    } else {
        "selftest: FAILURES present\n"
    });
    Ok((out, all_ok))
}
