//! Counting k-normal elements two independent ways.
//!
//! This example demonstrates:
//! - The divisor formula: count = sum over degree-k divisors F of X^n - 1
//!   of Phi_q((X^n - 1)/F)
//! - The brute-force oracle: rank of the Frobenius orbit of every element
//! - Their exact agreement, and spectra far beyond enumeration range
//!
//! Run with: cargo run --example count_k_normal

use knormal::gf::make_base_field;
use knormal::spectrum::{count_terms, full_spectrum, oracle_spectrum};

fn main() {
    println!("=== Divisor formula vs exhaustive oracle ===\n");

    for (p, m, n) in [
        (2u64, 1u32, 3u32),
        (2, 1, 6),
        (3, 1, 4),
        (2, 2, 3),
        (5, 1, 3),
    ] {
        let spec = make_base_field(p, m).unwrap();
        let formula = full_spectrum(&spec, n).unwrap();
        let oracle = oracle_spectrum(&spec, n, 1 << 20).unwrap();
        assert_eq!(formula, oracle);
        println!(
            "q={:<2} n={}: spectrum {:?}  (oracle agrees on all {} elements)",
            spec.q(),
            n,
            formula
                .counts()
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
            spec.q().pow(n)
        );
        formula.check_invariants().unwrap();
    }
    println!();

    println!("=== The terms behind one count ===\n");
    let f2 = make_base_field(2, 1).unwrap();
    for (n, k) in [(3u32, 1i64), (6, 2)] {
        let terms = count_terms(&f2, n, k, 1_000).unwrap();
        println!("q=2 n={n} k={k}: degree-{k} divisors F of X^{n}-1 and Phi_2((X^{n}-1)/F):");
        let mut total = num_bigint::BigUint::ZERO;
        for (divisor, phi) in &terms {
            println!(
                "  F = {:<12} contributes {}",
                divisor.product().to_string(),
                phi
            );
            total += phi;
        }
        println!("  total = {total}\n");
    }

    println!("=== Far beyond enumeration range ===\n");
    // q^n here is astronomically large; the divisor formula does not care
    let s = full_spectrum(&f2, 100).unwrap();
    println!(
        "q=2 n=100: {} normal elements among 2^100,\n           spectrum still sums to q^n exactly: {}",
        s.count(0),
        s.total() == num_bigint::BigUint::from(2u32).pow(100)
    );
    let s = full_spectrum(&f2, 509).unwrap();
    println!(
        "q=2 n=509: X^509-1 factors as (X-1) * (one irreducible of degree 508),\n           so exactly 2^508 - 1 elements are normal ({} decimal digits)",
        s.count(0).to_string().len()
    );
}
