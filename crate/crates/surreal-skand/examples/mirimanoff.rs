//! Canonical skand witnesses for non-well-founded set equations.

use surreal_skand::skand::{
    brace_render, is_solution, solve_mirimanoff, unfold_once, MirimanoffEquation,
};

fn main() {
    let t = |s: &str| s.parse().unwrap();
    let eqs = [
        ("X = {X}", MirimanoffEquation::Reflexive(vec![]), "X"),
        (
            "Y = {1, Y}",
            MirimanoffEquation::Reflexive(vec![t("1")]),
            "Y",
        ),
        (
            "X = {a, {b, X}}",
            MirimanoffEquation::Periodic(vec![vec![t("a")], vec![t("b")]]),
            "X",
        ),
        (
            "X = {z, Y}, Y = {a, Y}",
            MirimanoffEquation::Extraordinary {
                prefix: vec![vec![t("z")]],
                cycle: vec![vec![t("a")]],
            },
            "X",
        ),
    ];
    for (text, eq, name) in eqs {
        let s = solve_mirimanoff(&eq);
        println!(
            "{text}\n  witness: {}\n  solves: {}",
            brace_render(&s.clone().into(), 4),
            is_solution(&s, &eq)
        );
        if let Some(u) = unfold_once(&s, name) {
            println!("  unfolds to {name} = {u}");
        }
    }
}
