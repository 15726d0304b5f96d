//! Surreal normal forms: ring operations, truncated inverses and the
//! simplicity rule on dyadic games.

use surreal_skand::surreal::{birthday, rat, simplest_dyadic_game};
use surreal_skand::{nf_cmp, Dyadic, Number};

fn main() {
    let w = Number::omega();
    let one = Number::one();
    let x = w.add(&one).mul(&w.sub(&one));
    println!("(w+1)(w-1) = {x}");

    let inv = w.add(&one).invert(4).unwrap();
    println!("1/(w+1) ~ {} (exact: {})", inv.value, inv.exact);
    let half_omega = Number::omega_pow(Number::from_rational(rat(1, 2)));
    println!(
        "sqrt(w) = {half_omega}, compared with w: {:?}",
        nf_cmp(&half_omega, &w)
    );

    let g = simplest_dyadic_game(&[Dyadic::from_parts(1, 1)], &[Dyadic::integer(1)]).unwrap();
    println!("{{1/2 | 1}} = {g}, born on day {}", birthday(&g));
}
