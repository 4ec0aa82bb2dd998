//! Linear forms on the strictly lower triangular algebra and the coadjoint action.

use std::collections::BTreeMap;
use std::fmt;

use crate::admissible::AdmissibleSubset;
use crate::error::{Error, Result};
use crate::root_system::{positive_roots, Root};
use crate::symbolic::bracket::lie_bracket;
use crate::symbolic::field::{Field, FieldElement};
use crate::symbolic::poly::{Polynomial, Var};

/// `f(y_γ)` for every positive root, stored densely by `Root::index`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearForm {
    n: usize,
    field: Field,
    values: Vec<FieldElement>,
}

impl LinearForm {
    pub fn zero(n: usize, field: Field) -> Result<LinearForm> {
        let len = positive_roots(n)?.len();
        Ok(LinearForm { n, field, values: vec![field.zero(); len] })
    }

    pub fn from_values(n: usize, field: Field, values: &BTreeMap<Root, FieldElement>) -> Result<LinearForm> {
        let mut f = LinearForm::zero(n, field)?;
        for (&r, v) in values {
            f.set(r, v.clone())?;
        }
        Ok(f)
    }

    /// Parses `"i,j=v;i,j=v"`; unspecified coordinates are zero.
    pub fn parse(n: usize, field: Field, text: &str) -> Result<LinearForm> {
        let mut f = LinearForm::zero(n, field)?;
        for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (root, value) = part.split_once('=').ok_or_else(|| Error::Parse(format!("expected i,j=v in {part:?}")))?;
            let r: Root = root.trim().parse()?;
            let v: i64 = value.trim().parse().map_err(|_| Error::Parse(format!("bad value in {part:?}")))?;
            f.set(r, field.from_i64(v))?;
        }
        Ok(f)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, r: Root) -> &FieldElement {
        &self.values[r.index(self.n)]
    }

    pub fn set(&mut self, r: Root, v: FieldElement) -> Result<()> {
        if !r.in_dim(self.n) {
            return Err(Error::RootOutOfRange(r, self.n));
        }
        if v.field() != self.field {
            return Err(Error::FieldMismatch(format!("value for {r}")));
        }
        let idx = r.index(self.n);
        self.values[idx] = v;
        Ok(())
    }

    /// Residues in `Root::index` order; only for prime fields.
    pub fn residues(&self) -> Option<Vec<u64>> {
        self.values.iter().map(|v| v.residue()).collect()
    }

    pub fn support(&self) -> Vec<Root> {
        (0..self.values.len()).filter(|&i| !self.values[i].is_zero()).map(|i| Root::at_index(self.n, i)).collect()
    }

    pub fn evaluate(&self, p: &Polynomial) -> Result<FieldElement> {
        p.evaluate(self.field, &|v| match v {
            Var::Y(r) => Ok(self.get(r).clone()),
            Var::C(r) => Err(Error::InvalidC(format!("unbound constant c{r}"))),
        })
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| format!("{}={v}", Root::at_index(self.n, i)))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// `f_{S,c}`: `c` on `S`, zero elsewhere (in particular on `M(S)`).
pub fn canonical_form(s: &AdmissibleSubset, field: Field, c: &BTreeMap<Root, FieldElement>) -> Result<LinearForm> {
    for r in c.keys() {
        if !s.roots().contains(r) {
            return Err(Error::InvalidC(format!("{r} is not in S")));
        }
    }
    let otimes = s.otimes();
    let mut f = LinearForm::zero(s.n(), field)?;
    for &r in s.roots() {
        let v = c.get(&r).ok_or_else(|| Error::InvalidC(format!("missing value for {r}")))?;
        if v.field() != field {
            return Err(Error::FieldMismatch(format!("value for {r}")));
        }
        if v.is_zero() && otimes.contains(&r) {
            return Err(Error::InvalidC(format!("c({r}) must be nonzero")));
        }
        f.set(r, v.clone())?;
    }
    Ok(f)
}

/// A lower unitriangular matrix; `entries[(i, j)]` for `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    n: usize,
    field: Field,
    entries: BTreeMap<Root, FieldElement>,
}

impl GroupElement {
    pub fn identity(n: usize, field: Field) -> GroupElement {
        GroupElement { n, field, entries: BTreeMap::new() }
    }

    /// `I + a·E_ij`.
    pub fn elementary(n: usize, r: Root, a: FieldElement) -> GroupElement {
        let field = a.field();
        let mut entries = BTreeMap::new();
        entries.insert(r, a);
        GroupElement { n, field, entries }
    }

    pub fn from_entries(n: usize, field: Field, entries: BTreeMap<Root, FieldElement>) -> Result<GroupElement> {
        for (r, v) in &entries {
            if !r.in_dim(n) {
                return Err(Error::RootOutOfRange(*r, n));
            }
            if v.field() != field {
                return Err(Error::FieldMismatch(format!("entry {r}")));
            }
        }
        Ok(GroupElement { n, field, entries })
    }

    pub fn matrix(&self) -> Vec<Vec<FieldElement>> {
        let mut m = vec![vec![self.field.zero(); self.n]; self.n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = self.field.one();
        }
        for (r, v) in &self.entries {
            m[r.row() - 1][r.col() - 1] = v.clone();
        }
        m
    }

    fn from_matrix(n: usize, field: Field, m: &[Vec<FieldElement>]) -> GroupElement {
        let mut entries = BTreeMap::new();
        for i in 1..=n {
            for j in 1..i {
                if !m[i - 1][j - 1].is_zero() {
                    entries.insert(Root::new(i, j), m[i - 1][j - 1].clone());
                }
            }
        }
        GroupElement { n, field, entries }
    }

    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        let m = mat_mul(&self.matrix(), &other.matrix())?;
        Ok(GroupElement::from_matrix(self.n, self.field, &m))
    }

    /// Inverse of a unitriangular matrix by forward substitution.
    pub fn inverse(&self) -> Result<GroupElement> {
        let n = self.n;
        let g = self.matrix();
        let mut inv = vec![vec![self.field.zero(); n]; n];
        for j in 0..n {
            inv[j][j] = self.field.one();
            for i in j + 1..n {
                let mut acc = self.field.zero();
                for k in j..i {
                    acc = acc.add(&g[i][k].mul(&inv[k][j])?)?;
                }
                inv[i][j] = acc.neg();
            }
        }
        Ok(GroupElement::from_matrix(n, self.field, &inv))
    }
}

fn mat_mul(a: &[Vec<FieldElement>], b: &[Vec<FieldElement>]) -> Result<Vec<Vec<FieldElement>>> {
    let n = a.len();
    let field = a[0][0].field();
    let mut out = vec![vec![field.zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] = out[i][j].add(&a[i][k].mul(&b[k][j])?)?;
            }
        }
    }
    Ok(out)
}

/// `x ↦ f(g⁻¹ x g)`: the strictly upper part of `g F g⁻¹`, where `f(y_ij) = F_ji`.
pub fn coadjoint_act(g: &GroupElement, f: &LinearForm) -> Result<LinearForm> {
    if g.n != f.n || g.field != f.field {
        return Err(Error::FieldMismatch("group element and form disagree".into()));
    }
    let n = f.n;
    let mut big_f = vec![vec![f.field.zero(); n]; n];
    for r in positive_roots(n)?.iter() {
        big_f[r.col() - 1][r.row() - 1] = f.get(r).clone();
    }
    let conj = mat_mul(&mat_mul(&g.matrix(), &big_f)?, &g.inverse()?.matrix())?;
    let mut out = LinearForm::zero(n, f.field)?;
    for r in positive_roots(n)?.iter() {
        out.set(r, conj[r.col() - 1][r.row() - 1].clone())?;
    }
    Ok(out)
}

/// Rank of `B[α][β] = f([y_α, y_β])`.
pub fn kirillov_rank(f: &LinearForm) -> Result<usize> {
    let roots: Vec<Root> = positive_roots(f.n)?.iter_desc().collect();
    let mut m: Vec<Vec<FieldElement>> = roots
        .iter()
        .map(|&a| {
            roots
                .iter()
                .map(|&b| match lie_bracket(a, b) {
                    Some((sign, r)) => {
                        let v = f.get(r).clone();
                        if sign < 0 {
                            v.neg()
                        } else {
                            v
                        }
                    }
                    None => f.field.zero(),
                })
                .collect()
        })
        .collect();
    rank(&mut m)
}

/// Rank by Gaussian elimination over the entries' field.
pub fn rank(m: &mut [Vec<FieldElement>]) -> Result<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, pivot);
        let inv = m[r][c].inv()?;
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].mul(&inv)?;
                for k in c..cols {
                    let t = m[r][k].mul(&factor)?;
                    m[i][k] = m[i][k].sub(&t)?;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    Ok(r)
}

/// Number of leading zeros in the first column, read from `y_{n1}` upward;
/// an all-zero first column gives `n − 1`.
pub fn stratum(f: &LinearForm) -> usize {
    let n = f.n;
    (2..=n).rev().take_while(|&i| f.get(Root::new(i, 1)).is_zero()).count()
}
