//! Ideals with triangular generators `y_v − (terms in other variables)`.
//!
//! Each generator is solved for one pivot variable, and every rule is kept fully
//! back-substituted, so the quotient is a polynomial ring in the free variables
//! and the normal form decides membership.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::root_system::{positive_roots, Root};
use crate::symbolic::bracket::bracket;
use crate::symbolic::poly::{Polynomial, Var};

#[derive(Debug, Clone, Default)]
pub struct IdealHandle {
    generators: Vec<Polynomial>,
    rules: BTreeMap<Root, Polynomial>,
    nonzero: BTreeSet<Var>,
    n: usize,
}

impl IdealHandle {
    pub fn new(n: usize) -> IdealHandle {
        IdealHandle { n, ..IdealHandle::default() }
    }

    /// Constants `c_γ` that may appear in denominators.
    pub fn declare_nonzero(&mut self, v: Var) {
        self.nonzero.insert(v);
    }

    pub fn with_generators(n: usize, gens: &[Polynomial]) -> Result<IdealHandle> {
        let mut h = IdealHandle::new(n);
        for g in gens {
            h.add(g.clone())?;
        }
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Pivot variable and its solved right-hand side.
    pub fn rules(&self) -> &BTreeMap<Root, Polynomial> {
        &self.rules
    }

    pub fn normal_form(&self, p: &Polynomial) -> Result<Polynomial> {
        if self.rules.is_empty() {
            return Ok(p.clone());
        }
        p.substitute(&|v| match v {
            Var::Y(r) => self.rules.get(&r).cloned(),
            Var::C(_) => None,
        })
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    fn is_unit(&self, a: &Polynomial) -> bool {
        a.len() == 1 && a.vars().iter().all(|v| !v.is_y() && self.nonzero.contains(v))
    }

    /// Adds a generator. A generator already in the ideal is recorded but adds no rule.
    pub fn add(&mut self, g: Polynomial) -> Result<()> {
        let reduced = self.normal_form(&g)?;
        self.generators.push(g);
        if reduced.is_zero() {
            return Ok(());
        }
        let pivot = reduced.y_vars().into_iter().find_map(|r| {
            let (a, b) = reduced.split_linear(Var::Y(r))?;
            if self.is_unit(&a) && !b.y_vars().contains(&r) {
                Some((r, a, b))
            } else {
                None
            }
        });
        let Some((r, a, b)) = pivot else {
            return Err(Error::UnsupportedIdealShape(format!("no unit linear pivot in {reduced}")));
        };
        let rhs = -&(&b * &a.inv_term().expect("unit"));
        let sub = |v: Var| if v == Var::Y(r) { Some(rhs.clone()) } else { None };
        let mut updated = BTreeMap::new();
        for (k, v) in &self.rules {
            updated.insert(*k, v.substitute(&sub)?);
        }
        updated.insert(r, rhs);
        self.rules = updated;
        Ok(())
    }

    pub fn pivots(&self) -> BTreeSet<Root> {
        self.rules.keys().copied().collect()
    }
}

/// `{p, y_γ} ∈ I` for every coordinate `y_γ`.
pub fn is_casimir_mod(p: &Polynomial, ideal: &IdealHandle) -> Result<bool> {
    for g in positive_roots(ideal.n)?.iter() {
        if !ideal.contains(&bracket(p, &Polynomial::y(g)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `{I, S(𝔤)} ⊂ I`, checked on generators against coordinates.
pub fn is_poisson_ideal(ideal: &IdealHandle) -> Result<bool> {
    for g in ideal.generators() {
        if !is_casimir_mod(g, ideal)? {
            return Ok(false);
        }
    }
    Ok(true)
}
