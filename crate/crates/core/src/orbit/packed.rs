//! Forms over `F_p` packed into a mixed-radix `u64`, and breadth-first orbit search.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::bracket::lie_bracket;
use crate::symbolic::field::{inv_mod, is_prime, mul_mod, Field};

use super::form::LinearForm;

/// Environment variable overriding the default state budget.
pub const BUDGET_ENV: &str = "UT_ORBITS_BUDGET";
pub const DEFAULT_BUDGET: usize = 1 << 26;

pub fn default_budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// One elementary generator `I + E_ij`: each move adds `sign · f(source)` to `f(target)`.
#[derive(Debug, Clone)]
struct Generator {
    moves: Vec<(usize, usize, bool)>,
}

/// The coordinate space `F_p^N`, `N = n(n−1)/2`, with digit `k` holding `f` at `Root::at_index(n, k)`.
#[derive(Debug, Clone)]
pub struct PackedSpace {
    n: usize,
    p: u64,
    pow: Vec<u64>,
    generators: Vec<Generator>,
}

impl PackedSpace {
    pub fn new(n: usize, p: u64) -> Result<PackedSpace> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let len = n * (n - 1) / 2;
        let mut pow = Vec::with_capacity(len);
        let mut acc: u64 = 1;
        for _ in 0..len {
            pow.push(acc);
            acc = acc
                .checked_mul(p)
                .ok_or_else(|| Error::IndexRange(format!("p^{len} does not fit in 64 bits")))?;
        }
        let idx = |i: usize, j: usize| Root::new(i, j).index(n);
        let mut generators = Vec::with_capacity(len);
        for k in 0..len {
            let r = Root::at_index(n, k);
            let (i, j) = (r.row(), r.col());
            let mut moves = Vec::new();
            for c in i + 1..=n {
                moves.push((idx(c, i), idx(c, j), true));
            }
            for l in 1..j {
                moves.push((idx(j, l), idx(i, l), false));
            }
            generators.push(Generator { moves });
        }
        Ok(PackedSpace { n, p, pow, generators })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.pow.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pow.is_empty()
    }

    /// `p^N`, or `None` when it overflows.
    pub fn size(&self) -> Option<u64> {
        self.pow.last().and_then(|&x| x.checked_mul(self.p))
    }

    pub fn digit(&self, code: u64, k: usize) -> u64 {
        (code / self.pow[k]) % self.p
    }

    pub fn decode_digits(&self, code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.len());
        let mut c = code;
        for _ in 0..self.len() {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    pub fn encode_digits(&self, digits: &[u64]) -> u64 {
        digits.iter().zip(&self.pow).map(|(d, w)| (d % self.p) * w).sum()
    }

    pub fn encode(&self, f: &LinearForm) -> Result<u64> {
        if f.n() != self.n || f.field() != Field::Prime(self.p) {
            return Err(Error::FieldMismatch(format!("form is not over F_{} with n = {}", self.p, self.n)));
        }
        Ok(self.encode_digits(&f.residues().expect("prime field")))
    }

    pub fn decode(&self, code: u64) -> LinearForm {
        let field = Field::Prime(self.p);
        let mut f = LinearForm::zero(self.n, field).expect("n checked");
        for (k, d) in self.decode_digits(code).into_iter().enumerate() {
            f.set(Root::at_index(self.n, k), field.from_i64(d as i64)).expect("in range");
        }
        f
    }

    /// Bitmask of the nonzero coordinates, bit `k` for `Root::at_index(n, k)`.
    pub fn support_mask(&self, code: u64) -> u32 {
        let mut mask = 0u32;
        let mut c = code;
        for k in 0..self.len() {
            if !c.is_multiple_of(self.p) {
                mask |= 1 << k;
            }
            c /= self.p;
        }
        mask
    }

    /// Images of `code` under the elementary generators `I + E_ij`.
    pub fn neighbours(&self, code: u64, out: &mut Vec<u64>) {
        out.clear();
        let p = self.p;
        let digits = self.decode_digits(code);
        for g in &self.generators {
            let mut next = code;
            for &(t, s, plus) in &g.moves {
                let ds = digits[s];
                if ds == 0 {
                    continue;
                }
                let dt = digits[t];
                let nt = if plus { (dt + ds) % p } else { (dt + p - ds) % p };
                next = next - dt * self.pow[t] + nt * self.pow[t];
            }
            if next != code {
                out.push(next);
            }
        }
    }

    /// Rank of the Kirillov form at `code`, by elimination mod `p`.
    pub fn kirillov_rank(&self, code: u64) -> usize {
        kirillov_rank_mod(self.n, self.p, &self.decode_digits(code))
    }
}

/// Rank of `B[α][β] = f([y_α, y_β])` over `F_p`, `f` given by residues in `Root::index` order.
pub fn kirillov_rank_mod(n: usize, p: u64, values: &[u64]) -> usize {
    let len = values.len();
    let roots: Vec<Root> = (0..len).map(|k| Root::at_index(n, k)).collect();
    let mut m = vec![vec![0u64; len]; len];
    for (a, ra) in roots.iter().enumerate() {
        for (b, rb) in roots.iter().enumerate() {
            if let Some((sign, r)) = lie_bracket(*ra, *rb) {
                let v = values[r.index(n)] % p;
                m[a][b] = if sign < 0 { (p - v) % p } else { v };
            }
        }
    }
    rank_mod(&mut m, p)
}

pub fn rank_mod(m: &mut [Vec<u64>], p: u64) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_multiple_of(p)) else { continue };
        m.swap(r, pivot);
        let inv = inv_mod(m[r][c] % p, p);
        for i in 0..rows {
            if i != r && !m[i][c].is_multiple_of(p) {
                let factor = mul_mod(m[i][c], inv, p);
                for k in c..cols {
                    let t = mul_mod(m[r][k], factor, p);
                    m[i][k] = (m[i][k] + p - t) % p;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// An orbit as the sorted list of packed members.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub members: Vec<u64>,
}

impl Orbit {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, code: u64) -> bool {
        self.members.binary_search(&code).is_ok()
    }

    /// `log_p |Ω|`, when the size is an exact power of `p`.
    pub fn dimension(&self, p: u64) -> Option<usize> {
        let mut size = self.members.len() as u64;
        let mut d = 0;
        while size > 1 {
            if !size.is_multiple_of(p) {
                return None;
            }
            size /= p;
            d += 1;
        }
        Some(d)
    }
}

/// Orbit of `start` under the generators, capped at `budget` members.
pub fn orbit_of_code(space: &PackedSpace, start: u64, budget: usize) -> Result<Orbit> {
    let mut seen: HashSet<u64> = HashSet::new();
    seen.insert(start);
    let mut frontier = vec![start];
    let mut buf = Vec::new();
    while let Some(code) = frontier.pop() {
        space.neighbours(code, &mut buf);
        for &next in &buf {
            if seen.insert(next) {
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { partial: seen.len(), budget });
                }
                frontier.push(next);
            }
        }
    }
    let mut members: Vec<u64> = seen.into_iter().collect();
    members.sort_unstable();
    Ok(Orbit { members })
}

/// Orbit of a form over a prime field, with the default budget.
pub fn orbit_bfs(f: &LinearForm) -> Result<(PackedSpace, Orbit)> {
    orbit_bfs_with_budget(f, default_budget())
}

pub fn orbit_bfs_with_budget(f: &LinearForm, budget: usize) -> Result<(PackedSpace, Orbit)> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::FieldMismatch("orbit search needs a prime field".into()));
    };
    let space = PackedSpace::new(f.n(), p)?;
    let start = space.encode(f)?;
    let orbit = orbit_of_code(&space, start, budget)?;
    Ok((space, orbit))
}
