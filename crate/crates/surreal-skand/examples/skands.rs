//! Skand predicates, brace notation, set encoding and coskands.

use surreal_skand::skand::{
    brace_coordinates, brace_parse, brace_render, coskand_kind, coskand_to_setterm, decode_skand,
    encode_skand, is_periodic, is_reflexive, is_self_similar, is_strictly_periodic,
    min_finite_period, Braced, Coskand, SetTerm, Skand,
};
use surreal_skand::Ordinal;

fn o(s: &str) -> Ordinal {
    s.parse().unwrap()
}

fn main() {
    let cyc = Skand::cycle(
        vec![
            "{1}".parse().unwrap(),
            "{2}".parse().unwrap(),
            "{3}".parse().unwrap(),
        ],
        o("w^2"),
    )
    .unwrap();
    let b = Braced::Skand(cyc.clone());
    println!("{}", brace_render(&b, 5));
    println!(
        "period {:?}, strictly periodic at 3: {}",
        min_finite_period(&cyc),
        is_strictly_periodic(&cyc, &o("3")).unwrap()
    );
    let longer = Skand::cycle(cyc.map().segments()[0].1.values().to_vec(), o("w*3")).unwrap();
    println!(
        "length w*3: periodic {}, strictly {}",
        is_periodic(&longer, &o("3")).unwrap(),
        is_strictly_periodic(&longer, &o("3")).unwrap()
    );

    let flat = Skand::constant(SetTerm::empty(), o("w*2")).unwrap();
    println!(
        "const {{}} over w*2: reflexive {}, self-similar {}",
        is_reflexive(&flat),
        is_self_similar(&flat)
    );

    let parsed = brace_parse("const({a}) for w; cycle({b},{c}) for w^2 @ [w, w^2)").unwrap();
    println!("parsed: {}", brace_render(&parsed, 4));
    let code = encode_skand(&cyc);
    println!(
        "code has depth {}; decodes back: {}",
        code.depth(),
        decode_skand(&code).unwrap() == cyc.normalized()
    );
    for (x, y) in brace_coordinates(&b, 3) {
        println!("  ({x}, {y})");
    }

    let c = Coskand::trivial(o("3")).unwrap();
    println!(
        "{} is {:?}: {}",
        brace_render(&c.clone().into(), 4),
        coskand_kind(&c),
        coskand_to_setterm(&c).unwrap()
    );
}
