//! Canonical field construction and arithmetic.
//!
//! This example demonstrates:
//! - Building F_q for prime and prime-power q with canonical moduli
//! - Element arithmetic through the integer encoding
//! - Extensions F_{q^n} and the Frobenius map
//!
//! Run with: cargo run --example field_tour

use knormal::gf::{make_base_field, make_extension};

fn main() {
    println!("=== Canonical fields ===\n");

    // Prime fields need no modulus; prime powers scan for the least
    // irreducible over F_p, so every run builds the identical field.
    for (p, m) in [(2u64, 1u32), (2, 2), (2, 3), (3, 2), (5, 2)] {
        let f = make_base_field(p, m).unwrap();
        println!(
            "F_{:<3} = F_{p}^{m}   modulus digits (lowest first): {:?}",
            f.q(),
            f.modulus_digits()
        );
    }
    println!();

    // F_4 arithmetic: encodings 0..4 stand for 0, 1, y, y+1
    let f4 = make_base_field(2, 2).unwrap();
    let y = f4.elem(2).unwrap();
    println!("in F_4 with y the class of the modulus variable:");
    println!("  y * y     = {} (encoding of y+1)", f4.mul(y, y));
    println!("  y + (y+1) = {}", f4.add(y, f4.elem(3).unwrap()));
    let inv = f4.inv(y).unwrap();
    println!("  y^-1      = {} and y * y^-1 = {}", inv, f4.mul(y, inv));
    println!();

    // the multiplicative group of F_9 has order 8
    let f9 = make_base_field(3, 2).unwrap();
    let mut orders = Vec::new();
    for a in f9.elements().skip(1) {
        let mut j = 1;
        let mut x = a;
        while x != f9.one() {
            x = f9.mul(x, a);
            j += 1;
        }
        orders.push(j);
    }
    println!("multiplicative orders in F_9*: {orders:?}");
    assert!(orders.iter().all(|&j| 8 % j == 0));
    println!();

    println!("=== Frobenius orbits in F_8 over F_2 ===\n");
    let f2 = make_base_field(2, 1).unwrap();
    let f8 = make_extension(&f2, 3).unwrap();
    println!("extension modulus: {}", f8.modulus());
    for code in 0..8u64 {
        let alpha = f8.from_encoding(code).unwrap();
        let a1 = f8.frobenius(&alpha);
        let a2 = f8.frobenius(&a1);
        let fmt = |e: &knormal::gf::ExtElem| {
            e.coords()
                .iter()
                .map(|c| c.encoding().to_string())
                .collect::<Vec<_>>()
                .join("")
        };
        println!(
            "  alpha={} orbit coords: {} -> {} -> {}",
            code,
            fmt(&alpha),
            fmt(&a1),
            fmt(&a2)
        );
        // the orbit closes after n = 3 steps
        assert_eq!(f8.frobenius(&a2), alpha);
    }
}
