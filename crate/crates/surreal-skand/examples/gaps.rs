//! Gap labels of ordinal-indexed sequences, jump reports, and the
//! left-right construction converging to 2/3.

use surreal_skand::gaps::{gap_of, jump_report, left_right_construct, SeqDescriptor, Sign};
use surreal_skand::surreal::real_limit_from_sequences;
use surreal_skand::{Number, Ordinal};

fn main() {
    let w = Number::omega();
    let descs = [
        (
            "(alpha)_{alpha<w}",
            SeqDescriptor::OrdinalRamp(Ordinal::omega()),
        ),
        (
            "(w + alpha)",
            SeqDescriptor::AddRamp {
                base: w.clone(),
                direction: Sign::Plus,
                length: Ordinal::omega(),
            },
        ),
        (
            "(w - alpha)",
            SeqDescriptor::AddRamp {
                base: w.clone(),
                direction: Sign::Minus,
                length: Ordinal::omega(),
            },
        ),
        (
            "(3 - 1/2^n)",
            SeqDescriptor::DyadicRamp {
                base: Number::from_int(3),
                direction: Sign::Minus,
            },
        ),
        (
            "(w - 2^n/w)",
            SeqDescriptor::GeometricRamp {
                base: w.clone(),
                direction: Sign::Minus,
            },
        ),
    ];
    for (name, d) in descs {
        println!("{name}: {}", gap_of(&d).unwrap());
    }

    let r = jump_report(&"w^2".parse().unwrap()).unwrap();
    println!(
        "jumps below {}: embeddable {}, translation invariant {}",
        r.lambda, r.embeddable, r.translation_invariant
    );
    for e in r.census.unwrap_or_default() {
        println!("  {} jumps of size {}", e.count, e.jump_size);
    }

    let (l, rr) = left_right_construct(6);
    let show = |v: &[surreal_skand::Dyadic]| {
        v.iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("L = {}\nR = {}", show(&l), show(&rr));
    println!("limit = {}", real_limit_from_sequences(l, rr, 64).unwrap());
}
