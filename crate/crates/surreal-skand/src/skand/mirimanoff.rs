//! Canonical skand solutions of Mirimanoff-style set equations.
//!
//! Every equation here determines only the first ω components of a
//! solution; any skand over `[α₀, α)` with `α - α₀ ≥ ω` whose first ω
//! components match is also a solution, so [`is_solution`] looks at that
//! prefix alone and [`solve_mirimanoff`] returns the witness over `[0, ω)`.

use serde::Serialize;

use super::{Pattern, SetTerm, Skand, TransfiniteMap};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MirimanoffEquation {
    /// `X = {x₀, x₁, …, X}`.
    Reflexive(Vec<SetTerm>),
    /// `X = {x₀, …, {y₀, …, {z₀, …, X}}}`: one element list per level of a
    /// period.
    Periodic(Vec<Vec<SetTerm>>),
    /// Finitely many leading levels, then a periodic remainder.
    Extraordinary {
        prefix: Vec<Vec<SetTerm>>,
        cycle: Vec<Vec<SetTerm>>,
    },
}

fn component(elems: &[SetTerm]) -> SetTerm {
    SetTerm::set(elems.iter().cloned())
}

impl MirimanoffEquation {
    /// The component at level `k < ω` demanded by the equation.
    pub fn component_at(&self, k: u64) -> SetTerm {
        let cyc = |c: &[Vec<SetTerm>], i: u64| {
            if c.is_empty() {
                SetTerm::empty()
            } else {
                component(&c[(i % c.len() as u64) as usize])
            }
        };
        match self {
            MirimanoffEquation::Reflexive(xs) => component(xs),
            MirimanoffEquation::Periodic(blocks) => cyc(blocks, k),
            MirimanoffEquation::Extraordinary { prefix, cycle } => match prefix.get(k as usize) {
                Some(p) => component(p),
                None => cyc(cycle, k - prefix.len() as u64),
            },
        }
    }

    fn witness_map(&self) -> TransfiniteMap {
        let comps = |bs: &[Vec<SetTerm>]| -> Vec<SetTerm> {
            if bs.is_empty() {
                vec![SetTerm::empty()]
            } else {
                bs.iter().map(|b| component(b)).collect()
            }
        };
        let segs = match self {
            MirimanoffEquation::Reflexive(xs) => {
                vec![(Ordinal::omega(), Pattern::Constant(component(xs)))]
            }
            MirimanoffEquation::Periodic(blocks) => {
                vec![(
                    Ordinal::omega(),
                    Pattern::cycle(comps(blocks)).expect("nonempty"),
                )]
            }
            MirimanoffEquation::Extraordinary { prefix, cycle } => {
                let mut segs: Vec<_> = prefix
                    .iter()
                    .map(|b| (Ordinal::one(), Pattern::Constant(component(b))))
                    .collect();
                segs.push((
                    Ordinal::omega(),
                    Pattern::cycle(comps(cycle)).expect("nonempty"),
                ));
                segs
            }
        };
        TransfiniteMap::new(segs).expect("nonempty witness")
    }
}

/// The canonical witness over `[0, ω)`.
pub fn solve_mirimanoff(eq: &MirimanoffEquation) -> Skand {
    Skand::new(Ordinal::zero(), eq.witness_map())
}

/// Whether `s` is at least ω long and its first ω components are the ones
/// the equation demands.
pub fn is_solution(s: &Skand, eq: &MirimanoffEquation) -> bool {
    let omega = Ordinal::omega();
    if s.length() < omega {
        return false;
    }
    let head = s.map().take_front(&omega).expect("length >= w");
    head == eq.witness_map()
}

/// One unfolding step `X = X_{α₀} ∪ {X|[α₀+1, α)}`, valid when the tail
/// equals `s` itself, so that the nested set can be named by `name`.
/// Returns `None` for non-reflexive skands or atom components.
pub fn unfold_once(s: &Skand, name: &str) -> Option<SetTerm> {
    let tail = s.restrict(&s.start().succ()).ok()?;
    if !super::skand_equal(&tail, s) {
        return None;
    }
    s.value_at(s.start()).ok()?.with(SetTerm::atom(name))
}
