//! Cantor normal form arithmetic: ordinary versus natural operations.

use surreal_skand::Ordinal;

fn main() {
    let a: Ordinal = "w + 1".parse().unwrap();
    let b: Ordinal = "w^2*2 + 3".parse().unwrap();
    println!("a = {a}, b = {b}");
    println!("a + b = {}", a.add(&b));
    println!("b + a = {}", b.add(&a));
    println!("a (+) b = {}", a.nat_add(&b));
    println!("a * b = {}", a.mul(&b));
    println!("a (x) b = {}", a.nat_mul(&b));
    println!("b - w = {}", b.sub_left(&Ordinal::omega()).unwrap());
    let (q, k) = b.div_omega();
    println!("b = w*({q}) + {k}");
    for s in ["0", "7", "w*3", "w^w", "w^2 + w"] {
        let o: Ordinal = s.parse().unwrap();
        println!("{o}: {:?}", o.classify());
    }
}
