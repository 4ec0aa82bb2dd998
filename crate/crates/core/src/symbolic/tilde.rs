//! Column-by-column reduction of a maximal admissible pair `(S, c)` to the
//! ideal of its orbit.
//!
//! Column `t` contributes the generators `θ(y_η) − c(η)` for `η ∈ A(S)` in that
//! column, then splits off canonical pairs `{p, q} = 1` and passes the remaining
//! coordinates to column `t + 1` through the series
//! `ã = Σ (−1)^s/s! · ad_p^s(a) · q^s`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::admissible::{render_diagram, AdmissibleSubset, Symbol};
use crate::error::{Error, Result};
use crate::root_system::{c_split, columns_and_chain, root_difference, Root, RootSet};
use crate::symbolic::bracket::bracket;
use crate::symbolic::ideal::IdealHandle;
use crate::symbolic::poly::{rat, Polynomial, Var};

const MAX_SERIES: usize = 64;

/// Values `c(η)` for `η ∈ A(S)`: the given ones on `S`, zero on `M(S)`.
#[derive(Debug, Clone)]
pub struct Constants {
    values: BTreeMap<Root, Polynomial>,
    nonzero: BTreeSet<Var>,
}

impl Constants {
    /// `c(ξ) = c_ξ` as free symbols, declared nonzero on `S_⊗`.
    pub fn symbolic(s: &AdmissibleSubset) -> Constants {
        let values = s.roots().iter().map(|&r| (r, Polynomial::c(r))).collect();
        let nonzero = s.otimes().into_iter().map(Var::C).collect();
        Constants { values, nonzero }
    }

    pub fn numeric(s: &AdmissibleSubset, values: &BTreeMap<Root, BigRational>) -> Result<Constants> {
        for r in values.keys() {
            if !s.roots().contains(r) {
                return Err(Error::InvalidC(format!("{r} is not in S")));
            }
        }
        let mut out = BTreeMap::new();
        for &r in s.roots() {
            let v = values.get(&r).cloned().ok_or_else(|| Error::InvalidC(format!("missing value for {r}")))?;
            if v.is_zero() && s.otimes().contains(&r) {
                return Err(Error::InvalidC(format!("c({r}) must be nonzero")));
            }
            out.insert(r, Polynomial::constant(v));
        }
        Ok(Constants { values: out, nonzero: BTreeSet::new() })
    }

    pub fn get(&self, r: Root) -> Polynomial {
        self.values.get(&r).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn nonzero(&self) -> &BTreeSet<Var> {
        &self.nonzero
    }

    fn ideal(&self, n: usize) -> IdealHandle {
        let mut h = IdealHandle::new(n);
        for v in &self.nonzero {
            h.declare_nonzero(*v);
        }
        h
    }
}

/// `Σ_s (−1)^s/s! · ad_p^s(a) · q^s`, reduced modulo `ideal`.
pub fn tilde_map(a: &Polynomial, p: &Polynomial, q: &Polynomial, ideal: &IdealHandle) -> Result<Polynomial> {
    check_canonical_pair(p, q, ideal)?;
    let mut sum = Polynomial::zero();
    let mut term = ideal.normal_form(a)?;
    let mut q_pow = Polynomial::one();
    let mut factorial = rat(1);
    let mut s = 0usize;
    while !term.is_zero() {
        if s >= MAX_SERIES {
            return Err(Error::SeriesDiverged(s));
        }
        let sign = if s.is_multiple_of(2) { rat(1) } else { rat(-1) };
        sum = &sum + &(&term * &q_pow).scale(&(sign / factorial.clone()));
        s += 1;
        factorial *= rat(s as i64);
        q_pow = &q_pow * q;
        term = ideal.normal_form(&bracket(p, &term))?;
    }
    ideal.normal_form(&sum)
}

pub fn check_canonical_pair(p: &Polynomial, q: &Polynomial, ideal: &IdealHandle) -> Result<()> {
    if ideal.normal_form(&bracket(p, q))? == Polynomial::one() {
        Ok(())
    } else {
        Err(Error::NotCanonicalPair)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnCase {
    /// One `⊗` with every `□` of the column below it.
    Peel,
    /// One `⊗` with a `□` above it; two explicit shapes.
    Special,
    /// No `⊗`.
    Plain,
}

/// Output of one column step, in the column's own coordinates.
#[derive(Debug, Clone)]
pub struct ColumnReduction {
    pub case: ColumnCase,
    pub pairs: Vec<(Polynomial, Polynomial)>,
    /// Image of `y_v` for `v ∈ B_{t+1}`, modulo the column ideal.
    pub theta: BTreeMap<Root, Polynomial>,
}

fn column_ideal(s: &AdmissibleSubset, t: usize, c: &Constants, b_t: &RootSet) -> Result<IdealHandle> {
    let mut ideal = c.ideal(s.n());
    for eta in s.a_set().column(t).iter_desc() {
        if !b_t.contains(eta) {
            return Err(Error::UnsupportedColumn { column: t, detail: format!("{eta} outside B_t") });
        }
        ideal.add(&Polynomial::y(eta) - &c.get(eta))?;
    }
    Ok(ideal)
}

/// One step of the reduction for column `t`.
pub fn reduce_column(s: &AdmissibleSubset, t: usize, c: &Constants) -> Result<ColumnReduction> {
    let chain = columns_and_chain(s);
    let b_t = chain.b(t).clone();
    let b_next = chain.b(t + 1).clone();
    let base = column_ideal(s, t, c, &b_t)?;
    let col_otimes: Vec<Root> = s.otimes().into_iter().filter(|r| r.col() == t).collect();
    let col_boxes: Vec<Root> = s.boxes().into_iter().filter(|r| r.col() == t).collect();
    let unsupported = |detail: String| Error::UnsupportedColumn { column: t, detail };
    let identity = |set: &RootSet| -> BTreeMap<Root, Polynomial> { set.iter().map(|r| (r, Polynomial::y(r))).collect() };

    match col_otimes.as_slice() {
        [] => {
            if b_next != b_t.filter(|r| r.col() != t) {
                return Err(unsupported("B_{t+1} is not B_t without column t".into()));
            }
            Ok(ColumnReduction { case: ColumnCase::Plain, pairs: Vec::new(), theta: identity(&b_next) })
        }
        [xi] if col_boxes.iter().all(|b| b.row() > xi.row()) => {
            let xi = *xi;
            let (plus, minus) = c_split(xi, &b_t)?;
            if b_next != b_t.filter(|r| r.col() != t && !minus.contains(r)) {
                return Err(unsupported("B_{t+1} is not B_t without column t and C_-".into()));
            }
            let inv_c = base.normal_form(&Polynomial::y(xi))?.inv_term().ok_or_else(|| unsupported("c(ξ) is not invertible".into()))?;
            let gammas: Vec<Root> = plus.iter_desc().collect();
            let mut phi = identity(&b_t);
            let mut stage = base.clone();
            let mut pairs = Vec::new();
            let mut removed = BTreeSet::new();
            for &gamma in &gammas {
                let gamma_dash = root_difference(xi, gamma).expect("C_+ element has a complement");
                let p = Polynomial::y(gamma_dash);
                let q = &Polynomial::y(gamma) * &inv_c;
                removed.insert(gamma_dash);
                let mut next = BTreeMap::new();
                for v in b_t.iter().filter(|v| !removed.contains(v)) {
                    let a = tilde_map(&Polynomial::y(v), &p, &q, &stage)?;
                    let img = a.substitute(&|w| match w {
                        Var::Y(r) => Some(phi.get(&r).cloned().unwrap_or_else(|| Polynomial::y(r))),
                        Var::C(_) => None,
                    })?;
                    next.insert(v, base.normal_form(&img)?);
                }
                let p_img = base.normal_form(&p.substitute_map(&lift(&phi))?)?;
                let q_img = base.normal_form(&q.substitute_map(&lift(&phi))?)?;
                pairs.push((p_img, q_img));
                phi = next;
                stage.add(Polynomial::y(gamma))?;
            }
            let theta = b_next.iter().map(|v| (v, phi[&v].clone())).collect();
            Ok(ColumnReduction { case: ColumnCase::Peel, pairs, theta })
        }
        [xi] => {
            let (p, q) = special_pair(s, t, *xi, &base)?;
            check_canonical_pair(&p, &q, &base)?;
            let mut theta = BTreeMap::new();
            for v in b_next.iter() {
                theta.insert(v, tilde_map(&Polynomial::y(v), &p, &q, &base)?);
            }
            Ok(ColumnReduction { case: ColumnCase::Special, pairs: vec![(p, q)], theta })
        }
        _ => Err(unsupported(format!("{} roots of kind ⊗", col_otimes.len()))),
    }
}

fn lift(phi: &BTreeMap<Root, Polynomial>) -> BTreeMap<Var, Polynomial> {
    phi.iter().map(|(r, p)| (Var::Y(*r), p.clone())).collect()
}

/// The two columns with a `□` above the `⊗`. Both live in a 4×4 corner; local
/// position `(r, c)` is global `(r + t − 1, c + t − 1)`.
fn special_pair(s: &AdmissibleSubset, t: usize, xi: Root, base: &IdealHandle) -> Result<(Polynomial, Polynomial)> {
    let unsupported = |detail: &str| Error::UnsupportedColumn { column: t, detail: detail.to_string() };
    let at = |r: usize, c: usize| Root::new(r + t - 1, c + t - 1);
    if s.n() + 1 - t != 4 || xi != at(4, 1) {
        return Err(unsupported("⊗ below a □ outside the two known corner shapes"));
    }
    let d = render_diagram(s);
    let column: Vec<Symbol> = (2..=4).map(|r| d.at(at(r, 1))).collect();
    let inv_c = base.normal_form(&Polynomial::y(xi))?.inv_term().ok_or_else(|| unsupported("c(ξ) is not invertible"))?;
    match column.as_slice() {
        [Symbol::Box, Symbol::Plus, Symbol::Otimes] => Ok((&Polynomial::y(at(4, 3)) * &inv_c, Polynomial::y(at(3, 1)))),
        [Symbol::Plus, Symbol::Box, Symbol::Otimes] => {
            Ok((Polynomial::y(at(2, 1)), -&(&Polynomial::y(at(4, 2)) * &inv_c)))
        }
        _ => Err(unsupported("⊗ below a □ outside the two known corner shapes")),
    }
}

/// The orbit ideal of `(S, c)` with one generator `Q_η − c(η)` per `η ∈ A(S)`.
#[derive(Debug, Clone)]
pub struct OrbitIdeal {
    pub ideal: IdealHandle,
    /// `(η, Q_η − c(η))` in processing order.
    pub generators: Vec<(Root, Polynomial)>,
    /// Canonical pairs in global coordinates, modulo the ideal.
    pub pairs: Vec<(Polynomial, Polynomial)>,
    pub cases: Vec<ColumnCase>,
}

pub fn build_ideal(s: &AdmissibleSubset, c: &Constants) -> Result<OrbitIdeal> {
    let n = s.n();
    let chain = columns_and_chain(s);
    let mut ideal = c.ideal(n);
    let mut theta: BTreeMap<Root, Polynomial> = chain.b(1).iter().map(|r| (r, Polynomial::y(r))).collect();
    let mut generators = Vec::new();
    let mut pairs = Vec::new();
    let mut cases = Vec::new();
    for t in 1..n {
        let global = |p: &Polynomial, theta: &BTreeMap<Root, Polynomial>, ideal: &IdealHandle| -> Result<Polynomial> {
            let img = p.substitute(&|w| match w {
                Var::Y(r) => theta.get(&r).cloned(),
                Var::C(_) => None,
            })?;
            ideal.normal_form(&img)
        };
        for eta in s.a_set().column(t).iter_desc() {
            let q_eta = theta.get(&eta).ok_or(Error::NotInA(eta))?;
            let g = &ideal.normal_form(q_eta)? - &c.get(eta);
            ideal.add(g.clone())?;
            generators.push((eta, g));
        }
        let step = reduce_column(s, t, c)?;
        for (p, q) in &step.pairs {
            pairs.push((global(p, &theta, &ideal)?, global(q, &theta, &ideal)?));
        }
        let mut next = BTreeMap::new();
        for (v, img) in &step.theta {
            next.insert(*v, global(img, &theta, &ideal)?);
        }
        theta = next;
        cases.push(step.case);
    }
    Ok(OrbitIdeal { ideal, generators, pairs, cases })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissible::{subset_by_label, Label};

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    #[test]
    fn tilde_basic() {
        let ideal = IdealHandle::new(3);
        // {y21, y32·y31^{-1}} = -1 mod nothing; use the pair (y32, y21 y31^{-1})
        let pp = p("y32");
        let qq = p("y21*y31^-1");
        check_canonical_pair(&pp, &qq, &ideal).unwrap();
        assert_eq!(tilde_map(&p("y31"), &pp, &qq, &ideal).unwrap(), p("y31"));
        assert_eq!(tilde_map(&p("y21*y31^-1"), &pp, &qq, &ideal).unwrap(), Polynomial::zero());
        assert_eq!(tilde_map(&p("y21"), &p("y21"), &p("y21"), &ideal), Err(Error::NotCanonicalPair));
    }

    #[test]
    fn three_by_three() {
        let s = subset_by_label(Label { n: 3, k: 0, m: 1 }).unwrap();
        let r = reduce_column(&s, 1, &Constants::symbolic(&s)).unwrap();
        assert_eq!(r.pairs, vec![(p("y32"), p("c31^-1*y21"))]);
        let o = build_ideal(&s, &Constants::symbolic(&s)).unwrap();
        assert_eq!(o.generators, vec![(Root::new(3, 1), p("y31 - c31"))]);
        let s = subset_by_label(Label { n: 3, k: 1, m: 1 }).unwrap();
        let o = build_ideal(&s, &Constants::symbolic(&s)).unwrap();
        let gens: Vec<Polynomial> = o.generators.into_iter().map(|(_, g)| g).collect();
        assert_eq!(gens, vec![p("y31"), p("y21 - c21"), p("y32 - c32")]);
    }
}
