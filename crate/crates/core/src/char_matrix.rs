//! Minors of the characteristic matrix `Φ(τ) = τΦ + E` as polynomials in `τ`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::admissible::AdmissibleSubset;
use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::poly::Polynomial;

/// `Σ_h P_h τ^h` with polynomial coefficients; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TauPolynomial {
    coeffs: BTreeMap<usize, Polynomial>,
}

impl TauPolynomial {
    pub fn coefficient(&self, h: usize) -> Polynomial {
        self.coeffs.get(&h).cloned().unwrap_or_else(Polynomial::zero)
    }

    pub fn least_degree(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.coeffs.iter().map(|(d, p)| (*d, p))
    }

    fn from_vec(v: Vec<Polynomial>) -> TauPolynomial {
        TauPolynomial { coeffs: v.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect() }
    }
}

impl fmt::Display for TauPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|(d, p)| format!("({p})*t^{d}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Entry `(i, j)` of `Φ(τ)`, 1-based.
pub fn phi_entry(i: usize, j: usize) -> TauPolynomial {
    let mut coeffs = BTreeMap::new();
    if i == j {
        coeffs.insert(0, Polynomial::one());
    } else if i > j {
        coeffs.insert(1, Polynomial::y(Root::new(i, j)));
    }
    TauPolynomial { coeffs }
}

pub fn phi_tau(n: usize) -> Vec<Vec<TauPolynomial>> {
    (1..=n).map(|i| (1..=n).map(|j| phi_entry(i, j)).collect()).collect()
}

/// Rows and columns of a minor, both increasing and 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorSpec {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorSpec {
    pub fn new(n: usize, rows: Vec<usize>, cols: Vec<usize>) -> Result<MinorSpec> {
        let ok = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&x| (1..=n).contains(&x));
        if rows.len() != cols.len() || rows.is_empty() || !ok(&rows) || !ok(&cols) {
            return Err(Error::IndexRange(format!("minor rows {rows:?} cols {cols:?} for n = {n}")));
        }
        Ok(MinorSpec { rows, cols })
    }
}

/// Determinant by Laplace expansion along rows, memoized over the set of used columns.
pub fn minor(spec: &MinorSpec) -> TauPolynomial {
    let k = spec.rows.len();
    // each entry is c·τ^e with e ∈ {0, 1}; track coefficients per τ-degree
    let mut memo: HashMap<u32, Vec<Polynomial>> = HashMap::new();
    fn go(
        spec: &MinorSpec,
        row: usize,
        used: u32,
        memo: &mut HashMap<u32, Vec<Polynomial>>,
    ) -> Vec<Polynomial> {
        let k = spec.rows.len();
        if row == k {
            return vec![Polynomial::one()];
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = vec![Polynomial::zero(); k - row + 1];
        let mut position = 0;
        for c in 0..k {
            if used & (1 << c) != 0 {
                continue;
            }
            let (i, j) = (spec.rows[row], spec.cols[c]);
            let sign_negative = position % 2 == 1;
            position += 1;
            let (entry, shift) = if i == j {
                (Polynomial::one(), 0)
            } else if i > j {
                (Polynomial::y(Root::new(i, j)), 1)
            } else {
                continue;
            };
            let sub = go(spec, row + 1, used | (1 << c), memo);
            for (d, p) in sub.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let term = &entry * p;
                acc[d + shift] = if sign_negative { &acc[d + shift] - &term } else { &acc[d + shift] + &term };
            }
        }
        memo.insert(used, acc.clone());
        acc
    }
    let _ = k;
    TauPolynomial::from_vec(go(spec, 0, 0, &mut memo))
}

/// The permutation `w_η = s_{β_1} ⋯ s_{β_t} s_η` and the row set `w_η(Λ_j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WEta {
    pub eta: Root,
    /// `β_1, …, β_t, η`, applied right to left.
    pub word: Vec<Root>,
    /// `permutation[k - 1] = w_η(k)`.
    pub permutation: Vec<usize>,
    pub rows: Vec<usize>,
}

impl WEta {
    pub fn spec(&self, n: usize) -> MinorSpec {
        MinorSpec::new(n, self.rows.clone(), (1..=self.eta.col()).collect()).expect("valid by construction")
    }

    /// `q = |Λ ∖ wΛ|`.
    pub fn q(&self) -> usize {
        self.rows.iter().filter(|&&r| r > self.eta.col()).count()
    }

    /// `d = #{m : i_m > m}` over the ordered rows `i_1 < … < i_j`.
    pub fn d(&self) -> usize {
        self.rows.iter().enumerate().filter(|(m, &r)| r > m + 1).count()
    }
}

fn reflect(r: Root, k: usize) -> usize {
    if k == r.row() {
        r.col()
    } else if k == r.col() {
        r.row()
    } else {
        k
    }
}

pub fn w_eta(s: &AdmissibleSubset, eta: Root) -> Result<WEta> {
    if !s.a_set().contains(eta) {
        return Err(Error::NotInA(eta));
    }
    let mut word: Vec<Root> = s.otimes().into_iter().filter(|&b| b > eta).collect();
    word.push(eta);
    let n = s.n();
    let permutation: Vec<usize> = (1..=n).map(|k| word.iter().rev().fold(k, |acc, &r| reflect(r, acc))).collect();
    let mut rows: Vec<usize> = permutation[..eta.col()].to_vec();
    rows.sort_unstable();
    Ok(WEta { eta, word, permutation, rows })
}

/// The unique `H ⊆ {β_1, …, β_t}` with `(1 − w_η)φ_j = η + Σ_H β`, and `h = |H| + 1`.
pub fn h_subset(s: &AdmissibleSubset, eta: Root) -> Result<(Vec<Root>, usize)> {
    let w = w_eta(s, eta)?;
    let n = s.n();
    let j = eta.col();
    let mut target = vec![0i32; n];
    for k in 1..=j {
        target[k - 1] += 1;
    }
    for &r in &w.rows {
        target[r - 1] -= 1;
    }
    let eps = |r: Root| r.epsilon(n);
    for (x, e) in target.iter_mut().zip(eps(eta)) {
        *x -= e;
    }
    let betas = &w.word[..w.word.len() - 1];
    let mut solutions = Vec::new();
    for mask in 0u32..(1 << betas.len()) {
        let mut sum = vec![0i32; n];
        for (b, beta) in betas.iter().enumerate() {
            if mask & (1 << b) != 0 {
                for (x, e) in sum.iter_mut().zip(eps(*beta)) {
                    *x += e;
                }
            }
        }
        if sum == target {
            solutions.push(betas.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, r)| *r).collect::<Vec<_>>());
        }
    }
    if solutions.len() != 1 {
        return Err(Error::DecompositionFailure(eta, solutions.len()));
    }
    let h = solutions[0].len() + 1;
    Ok((solutions.pop().unwrap(), h))
}

/// Coefficient of `τ^h` in `M^{Λ_j}_{w_η Λ_j}(τ)`.
pub fn p_h_eta(s: &AdmissibleSubset, eta: Root) -> Result<Polynomial> {
    let (_, h) = h_subset(s, eta)?;
    let w = w_eta(s, eta)?;
    Ok(minor(&w.spec(s.n())).coefficient(h))
}

/// One generator `P_{h,η}` per `η ∈ A(S)`, in decreasing root order.
#[derive(Debug, Clone, Serialize)]
pub struct MinorGenerator {
    pub eta: Root,
    pub h: usize,
    pub rows: Vec<usize>,
    pub poly: Polynomial,
}

pub fn minor_generators(s: &AdmissibleSubset) -> Result<Vec<MinorGenerator>> {
    s.a_set()
        .iter_desc()
        .map(|eta| {
            let w = w_eta(s, eta)?;
            let (_, h) = h_subset(s, eta)?;
            let poly = minor(&w.spec(s.n())).coefficient(h);
            Ok(MinorGenerator { eta, h, rows: w.rows, poly })
        })
        .collect()
}

pub fn n0(n: usize) -> usize {
    n / 2
}

pub fn n_otimes(n: usize) -> usize {
    (n - 1) / 2
}

fn range(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `P_j(τ) = M^{1..j}_{n−j+1..n}(τ)` for `1 ≤ j ≤ n − 1`.
pub fn p_j_tau(n: usize, j: usize) -> Result<TauPolynomial> {
    if j == 0 || j >= n {
        return Err(Error::IndexRange(format!("P_{j} for n = {n}")));
    }
    Ok(minor(&MinorSpec::new(n, range(n - j + 1, n), range(1, j))?))
}

/// `P_1, …, P_{n_0}`.
pub fn regular_minors(n: usize) -> Result<Vec<Polynomial>> {
    (1..=n0(n)).map(|j| Ok(p_j_tau(n, j)?.coefficient(j))).collect()
}

/// `(P'_j, P''_j)` for `1 ≤ j ≤ n_⊗`.
pub fn bordered_minors(n: usize, j: usize) -> Result<(Polynomial, Polynomial)> {
    if j == 0 || j > n_otimes(n) {
        return Err(Error::IndexRange(format!("bordered minors need 1 <= j <= {}", n_otimes(n))));
    }
    let mut rows = vec![n - j];
    rows.extend(n - j + 2..=n);
    let p1 = minor(&MinorSpec::new(n, rows, range(1, j))?).coefficient(j);
    let mut cols = range(1, j - 1);
    cols.push(j + 1);
    let p2 = minor(&MinorSpec::new(n, range(n - j + 1, n), cols)?).coefficient(j);
    Ok((p1, p2))
}

/// `Z_1, …, Z_{n_⊗}`; `Z_{n−j}` is the coefficient of `τ^{n−j+1}` in `P_j(τ)`, `j > n_0`.
pub fn z_coefficients(n: usize) -> Result<Vec<Polynomial>> {
    (1..=n_otimes(n)).map(|k| Ok(p_j_tau(n, n - k)?.coefficient(k + 1))).collect()
}

/// `P'_{n_0} = M^{1..n_0−1}_{n_0, n_0+3..n}` for even `n`.
pub fn p_n0_prime(n: usize) -> Result<Polynomial> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::IndexRange(format!("P'_(n0) needs even n >= 4, got {n}")));
    }
    let m = n0(n);
    let mut rows = vec![m];
    rows.extend(m + 3..=n);
    Ok(minor(&MinorSpec::new(n, rows, range(1, m - 1))?).coefficient(m - 1))
}
