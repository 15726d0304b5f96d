//! Coskands: nested tuples that grow outward, `S_{α′+1} = X_{α′+1} ∪ {S_{α′}}`.

use serde::Serialize;

use super::{SetTerm, SkandError, TransfiniteMap};
use crate::ordinal::Ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coskand {
    start: Ordinal,
    map: TransfiniteMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CoskandKind {
    /// The nesting never closes: a memberless individual.
    Individual,
    FoundedSet,
}

impl Coskand {
    pub fn new(start: Ordinal, map: TransfiniteMap) -> Self {
        Coskand { start, map }
    }

    pub fn constant(v: SetTerm, length: Ordinal) -> Result<Self, SkandError> {
        Ok(Coskand::new(
            Ordinal::zero(),
            TransfiniteMap::constant(v, length)?,
        ))
    }

    pub fn trivial(length: Ordinal) -> Result<Self, SkandError> {
        Coskand::constant(SetTerm::empty(), length)
    }

    pub fn start(&self) -> &Ordinal {
        &self.start
    }

    pub fn length(&self) -> Ordinal {
        self.map.length()
    }

    pub fn end(&self) -> Ordinal {
        self.start.add(&self.length())
    }

    pub fn map(&self) -> &TransfiniteMap {
        &self.map
    }

    pub fn value_at(&self, pos: &Ordinal) -> Result<&SetTerm, SkandError> {
        let out = || SkandError::OutOfClutchRegion {
            pos: pos.clone(),
            start: self.start.clone(),
            end: self.end(),
        };
        let rho = pos.sub_left(&self.start).map_err(|_| out())?;
        self.map.value_at(&rho).ok_or_else(out)
    }
}

/// Same order type and matching components. The inductive outward
/// definition reduces to this because each layer is determined by its
/// component and the layer inside it.
pub fn coskand_equal(x: &Coskand, y: &Coskand) -> bool {
    x.map == y.map
}

/// A coskand whose region ends at a limit ordinal has no outermost layer.
pub fn coskand_kind(c: &Coskand) -> CoskandKind {
    if c.end().is_limit() {
        CoskandKind::Individual
    } else {
        CoskandKind::FoundedSet
    }
}

/// The founded set of a finite coskand: `S₀ = X₀`, `S_{i+1} = X_{i+1} ∪ {S_i}`.
/// Atom components contribute no members.
pub fn coskand_to_setterm(c: &Coskand) -> Result<SetTerm, SkandError> {
    let len = c.length();
    let n = len.as_finite().ok_or(SkandError::InfiniteLength(len))?;
    let comp = |i: u64| -> SetTerm {
        let v = c.map.value_at(&Ordinal::finite(i)).expect("i < n");
        if v.as_atom().is_some() {
            SetTerm::empty()
        } else {
            v.clone()
        }
    };
    let mut s = comp(0);
    for i in 1..n {
        s = comp(i).with(s).expect("component is a set");
    }
    Ok(s)
}
