//! Polarizations of canonical forms: isotropic subalgebras of maximal dimension.

use serde::Serialize;

use crate::admissible::{render_diagram, AdmissibleSubset, Symbol};
use crate::error::Result;
use crate::root_system::{positive_roots, Root, RootSet};
use crate::symbolic::bracket::lie_bracket;

use super::form::{kirillov_rank, LinearForm};

/// Every root not marked `−`; in a `+ □ ⊗` column corner the `+` root `(t+1,t)`
/// is traded for `(t+3,t+1)`.
pub fn polarization(s: &AdmissibleSubset) -> RootSet {
    let n = s.n();
    let d = render_diagram(s);
    let mut p = positive_roots(n).expect("n >= 2").filter(|r| d.at(r) != Symbol::Minus);
    for t in 1..n.saturating_sub(2) {
        let shape = [d.get(t + 1, t), d.get(t + 2, t), d.get(t + 3, t)];
        if shape == [Symbol::Plus, Symbol::Box, Symbol::Otimes] {
            p.remove(Root::new(t + 1, t));
            p.insert(Root::new(t + 3, t + 1));
        }
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolarizationCheck {
    pub subalgebra: bool,
    pub isotropic: bool,
    /// `|P| = N − rank(B_f)/2`.
    pub maximal: bool,
    pub size: usize,
    pub rank: usize,
}

impl PolarizationCheck {
    pub fn ok(&self) -> bool {
        self.subalgebra && self.isotropic && self.maximal
    }
}

/// `[P, P] ⊆ P`.
pub fn is_subalgebra(p: &RootSet) -> bool {
    p.iter().all(|a| p.iter().all(|b| lie_bracket(a, b).is_none_or(|(_, r)| p.contains(r))))
}

/// `f([P, P]) = 0` for every `f` supported on `S`.
pub fn isotropic_on_support(p: &RootSet, s: &AdmissibleSubset) -> bool {
    p.iter().all(|a| p.iter().all(|b| lie_bracket(a, b).is_none_or(|(_, r)| !s.roots().contains(&r))))
}

pub fn verify_polarization(s: &AdmissibleSubset, f: &LinearForm) -> Result<PolarizationCheck> {
    let p = polarization(s);
    let isotropic = p
        .iter()
        .all(|a| p.iter().all(|b| lie_bracket(a, b).is_none_or(|(_, r)| f.get(r).is_zero())));
    let rank = kirillov_rank(f)?;
    let total = s.n() * (s.n() - 1) / 2;
    Ok(PolarizationCheck {
        subalgebra: is_subalgebra(&p),
        isotropic,
        maximal: p.len() + rank / 2 == total,
        size: p.len(),
        rank,
    })
}
