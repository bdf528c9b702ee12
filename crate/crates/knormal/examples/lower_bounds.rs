//! Lower-bound inequalities for k-normal densities.
//!
//! This example demonstrates:
//! - The pointwise inequality density_k(p^t u) >= density_0(u) / q^k,
//!   where p^t is the least characteristic power exceeding k
//! - The finite-t comparison of the running average of normal densities
//!   against 1 - 1/sqrt(q) - 1/q for q >= 4
//!
//! Run with: cargo run --example lower_bounds

use knormal::meanvalue::{bound_check_q0, pointwise_bound_check};
use knormal::report::approx12;
use knormal::{gf::make_base_field, Budgets};

fn main() {
    let budgets = Budgets::default();

    println!("=== density_k(p^t u) >= density_0(u)/q^k ===\n");
    for (p, m, k) in [(2u64, 1u32, 1u32), (2, 1, 2), (3, 1, 1), (2, 2, 1)] {
        let spec = make_base_field(p, m).unwrap();
        let rows = pointwise_bound_check(&spec, k, 24).unwrap();
        println!("q={} k={k}: {} comparison rows", spec.q(), rows.len());
        for r in &rows {
            println!(
                "  u={:<2} n={:<3} lhs={}  rhs={}  ok={}",
                r.u,
                r.n,
                approx12(&r.lhs),
                approx12(&r.rhs),
                r.ok
            );
            assert!(r.ok);
        }
        println!();
    }

    println!("=== Mean-value bound for q >= 4 ===\n");
    for (p, m) in [(2u64, 2u32), (3, 2), (5, 1), (7, 1)] {
        let spec = make_base_field(p, m).unwrap();
        let rep = bound_check_q0(&spec, 60, &budgets).unwrap();
        let bound = match &rep.bound_exact {
            Some(b) => format!("{}/{} exactly", b.numer(), b.denom()),
            None => format!("~{:.6} (comparison still exact)", rep.bound_approx),
        };
        println!(
            "q={}: A(60) = {}  vs bound {}  ->  {}",
            rep.q,
            approx12(&rep.average),
            bound,
            if rep.ok { "above" } else { "NOT above" }
        );
    }
    println!("\nthe q >= 4 hypothesis matters: q = 2 and q = 3 are refused");
    let f2 = make_base_field(2, 1).unwrap();
    match bound_check_q0(&f2, 60, &budgets) {
        Err(e) => println!("q=2 -> {e}"),
        Ok(_) => unreachable!(),
    }
}
