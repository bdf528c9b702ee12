//! Density series of k-normal elements and the dyadic ladder of their
//! running averages.
//!
//! This example demonstrates:
//! - Exact densities lambda(n) = count / q^n for n = 1..t
//! - Running averages A(t) = (1/t) sum_{n <= t} lambda(n)
//! - The dyadic ladder A(2^j) with successive differences, finite-t
//!   evidence that the averages settle toward a mean value
//!
//! Run with: cargo run --example density_ladder

use knormal::meanvalue::{density_series, ladder};
use knormal::report::approx12;
use knormal::{gf::make_base_field, Budgets};

fn main() {
    let budgets = Budgets::default();
    let f2 = make_base_field(2, 1).unwrap();

    println!("=== Densities of normal elements over F_2 ===\n");
    let series = density_series(&f2, 0, 16, &budgets).unwrap();
    println!("  n  density        running average");
    for row in &series.rows {
        println!(
            " {:>2}  {}  {}",
            row.n,
            approx12(&row.density),
            approx12(&row.running_average)
        );
    }
    println!();

    println!("=== Dyadic ladder, k = 0 and k = 1, up to t = 256 ===\n");
    for k in [0u32, 1] {
        let series = density_series(&f2, k, 256, &budgets).unwrap();
        println!("k = {k}:");
        for e in ladder(&series) {
            let diff = e
                .diff_from_previous
                .as_ref()
                .map(approx12)
                .unwrap_or_else(|| "-".into());
            println!(
                "  A({:>4}) = {}   |diff from previous| = {}",
                e.t,
                approx12(&e.average),
                diff
            );
        }
        println!();
    }

    println!("the averages are exact rationals; approximations above are display only");
    let a3 = series_average_exact();
    println!("for instance A(3) for k=0 over F_2 is exactly {a3}");
}

fn series_average_exact() -> String {
    let budgets = Budgets::default();
    let f2 = make_base_field(2, 1).unwrap();
    let series = density_series(&f2, 0, 3, &budgets).unwrap();
    let a = series.final_average();
    format!("{}/{}", a.numer(), a.denom())
}
