//! Exponential and logarithm on normal forms, including the epsilon
//! fixed points.

use surreal_skand::explog::{exp, in_ln_domain, leader, ln};
use surreal_skand::surreal::rat;
use surreal_skand::Number;

fn main() {
    let w = Number::omega();
    let e0 = Number::epsilon(Number::zero());
    println!("exp(w) = {}", exp(&w, 8).unwrap().value);
    println!("exp(w*eps[0]) = {}", exp(&w.mul(&e0), 8).unwrap().value);
    println!("exp(eps[0]) = {}", exp(&e0, 8).unwrap().value);
    println!("ln(eps[0]) = {}", ln(&e0, 8).unwrap().value);
    let y = e0.mul(&Number::omega_pow(w.clone()));
    println!("ln(eps[0]*w^w) = {}", ln(&y, 8).unwrap().value);
    println!(
        "ln(w+1) = {} ",
        ln(&w.add(&Number::one()), 8).unwrap().value
    );
    let root = Number::omega_pow(Number::omega_pow(Number::from_int(-1)));
    println!("w+1 in ln domain: {}", in_ln_domain(&w.add(&Number::one())));
    println!("{root} in ln domain: {}", in_ln_domain(&root));
    println!(
        "leader(w^3*5 + w) = {}",
        leader(
            &Number::omega_pow(Number::from_int(3))
                .scale(&rat(5, 1))
                .add(&w)
        )
        .unwrap()
    );
}
