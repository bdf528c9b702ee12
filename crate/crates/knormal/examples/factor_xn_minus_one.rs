//! Deterministic factorization of X^n - 1 and polynomial orders.
//!
//! This example demonstrates:
//! - Cyclotomic-coset factorization over any prime-power base field
//! - Polynomial orders and the divisibility rule F | X^j - 1 iff ord(F) | j
//! - Divisor enumeration by degree and squarefree divisors
//!
//! Run with: cargo run --example factor_xn_minus_one

use knormal::fqpoly::{factor_xn_minus_1, order_within};
use knormal::gf::make_base_field;

fn main() {
    println!("=== Factoring X^n - 1 ===\n");

    let f2 = make_base_field(2, 1).unwrap();
    for n in [3u32, 2, 9, 12, 15] {
        let fact = factor_xn_minus_1(&f2, n).unwrap();
        let pretty: Vec<String> = fact
            .factors()
            .iter()
            .map(|(f, e)| {
                if *e == 1 {
                    format!("({f})")
                } else {
                    format!("({f})^{e}")
                }
            })
            .collect();
        println!("over F_2:  X^{n}-1 = {}", pretty.join(" "));
        // the recomposed product is checked on construction; recheck here
        assert_eq!(
            fact.product(),
            knormal::fqpoly::MonicPoly::x_pow_minus_one(&f2, n)
        );
    }
    println!();

    let f9 = make_base_field(3, 2).unwrap();
    let fact = factor_xn_minus_1(&f9, 8).unwrap();
    println!(
        "over F_9:  X^8-1 splits into {} linear factors (F_9* has order 8)",
        fact.factors().len()
    );
    assert!(fact.factors().iter().all(|(f, _)| f.deg() == 1));
    println!();

    println!("=== Orders ===\n");
    let fact = factor_xn_minus_1(&f2, 9).unwrap();
    for (f, _) in fact.factors() {
        let sub = fact.factor_within(f).unwrap();
        let ord = sub.order().unwrap();
        println!("ord({f}) = {ord}");
        // divisibility rule: f | X^j - 1 exactly at multiples of ord
        for j in 1..=18u64 {
            let divides = order_within(&f2, f, j).map(|o| j % o == 0).unwrap_or(false);
            assert_eq!(divides, j % ord == 0);
        }
    }
    let whole = factor_xn_minus_1(&f2, 4).unwrap();
    println!(
        "ord((X+1)^4) = {} (the multiplicity pushes the order to a power of p)",
        whole.order().unwrap()
    );
    println!();

    println!("=== Divisor enumeration ===\n");
    let fact = factor_xn_minus_1(&f2, 15).unwrap();
    for k in 0..=4usize {
        let divisors = fact.divisors_of_degree(k);
        println!(
            "degree-{k} divisors of X^15-1: {}",
            divisors
                .iter()
                .map(|d| d.product().to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    let squarefree = fact.squarefree_divisors();
    println!(
        "\nX^15-1 is squarefree with {} irreducible factors, so it has {} squarefree divisors",
        fact.distinct_factor_count(),
        squarefree.len()
    );
}
