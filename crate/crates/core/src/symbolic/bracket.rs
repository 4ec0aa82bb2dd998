//! The Lie–Poisson bracket on the symmetric algebra of the strictly lower triangular matrices.

use std::collections::BTreeMap;

use crate::root_system::Root;
use crate::symbolic::poly::{Polynomial, Var};

/// `[y_α, y_β]` as `(sign, root)`; `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
pub fn lie_bracket(a: Root, b: Root) -> Option<(i64, Root)> {
    if a.col() == b.row() {
        Some((1, Root::new(a.row(), b.col())))
    } else if b.col() == a.row() {
        Some((-1, Root::new(b.row(), a.col())))
    } else {
        None
    }
}

/// Poisson bracket extended from the Lie bracket by the Leibniz rule.
/// Constants `c_γ` are central.
pub fn bracket(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let av = a.y_vars();
    let bv = b.y_vars();
    let mut da: BTreeMap<Root, Polynomial> = BTreeMap::new();
    let mut db: BTreeMap<Root, Polynomial> = BTreeMap::new();
    let mut out = Polynomial::zero();
    for &x in &av {
        for &y in &bv {
            let Some((sign, z)) = lie_bracket(x, y) else { continue };
            let dx = da.entry(x).or_insert_with(|| a.derivative(Var::Y(x))).clone();
            let dy = db.entry(y).or_insert_with(|| b.derivative(Var::Y(y)));
            let term = &(&dx * dy) * &Polynomial::y(z).scale(&crate::symbolic::poly::rat(sign));
            out = &out + &term;
        }
    }
    out
}
