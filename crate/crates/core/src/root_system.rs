//! Positive roots of `gl(n)` in the lower-triangular convention.
//!
//! The root `α_{ji} = ε_j − ε_i` (`j < i`) is stored as the matrix position
//! `(row, col) = (i, j)` of the basis vector `y_{ij}` of `ut(n)`. Roots are
//! ordered lexicographically: a root is greater when it lies in a column further
//! to the left, or in the same column but lower.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::admissible::AdmissibleSubset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub row: u8,
    pub col: u8,
}

impl Root {
    /// Panics if `row <= col`; use [`Root::checked`] for untrusted input.
    pub fn new(row: usize, col: usize) -> Root {
        assert!(row > col && col >= 1, "not a positive root position: ({row},{col})");
        Root { row: row as u8, col: col as u8 }
    }

    pub fn checked(n: usize, row: usize, col: usize) -> Result<Root> {
        if col >= 1 && row > col && row <= n {
            Ok(Root { row: row as u8, col: col as u8 })
        } else {
            Err(Error::IndexRange(format!("({row},{col}) for n = {n}")))
        }
    }

    /// The root written `α_{ab}` with `a < b`, i.e. the entry `(b, a)`.
    pub fn alpha(a: usize, b: usize) -> Root {
        Root::new(b, a)
    }

    pub fn row(self) -> usize {
        self.row as usize
    }

    pub fn col(self) -> usize {
        self.col as usize
    }

    pub fn lex_greater(self, other: Root) -> bool {
        self > other
    }

    /// `row − col`; simple roots have height 1.
    pub fn height(self) -> usize {
        self.row() - self.col()
    }

    /// Coordinates of `ε_col − ε_row` in the basis `ε_1, …, ε_n`.
    pub fn epsilon(self, n: usize) -> Vec<i32> {
        let mut v = vec![0; n];
        v[self.col() - 1] += 1;
        v[self.row() - 1] -= 1;
        v
    }

    /// Position in the lex-descending enumeration of `Δ⁺_n`, starting at 0 with `(n,1)`.
    pub fn index(self, n: usize) -> usize {
        let c = self.col();
        (1..c).map(|k| n - k).sum::<usize>() + (n - self.row())
    }

    pub fn at_index(n: usize, mut idx: usize) -> Root {
        let mut col = 1;
        while idx >= n - col {
            idx -= n - col;
            col += 1;
        }
        Root::new(n - idx, col)
    }

    pub fn in_dim(self, n: usize) -> bool {
        self.row() <= n
    }
}

impl Ord for Root {
    fn cmp(&self, other: &Self) -> Ordering {
        other.col.cmp(&self.col).then(self.row.cmp(&other.row))
    }
}

impl PartialOrd for Root {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.row, self.col)
    }
}

impl std::str::FromStr for Root {
    type Err = Error;

    fn from_str(s: &str) -> Result<Root> {
        let (a, b) = s
            .trim()
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected \"i,j\", got {s:?}")))?;
        let row: usize = a.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        let col: usize = b.trim().parse().map_err(|_| Error::Parse(s.to_string()))?;
        if col == 0 || row <= col {
            return Err(Error::Parse(format!("({row},{col}) is not strictly lower-triangular")));
        }
        Ok(Root::new(row, col))
    }
}

/// Sum of two roots when it is again a positive root.
pub fn root_sum(a: Root, b: Root) -> Option<Root> {
    if a.col == b.row {
        Some(Root { row: a.row, col: b.col })
    } else if b.col == a.row {
        Some(Root { row: b.row, col: a.col })
    } else {
        None
    }
}

/// `xi − gamma` when it is a positive root.
pub fn root_difference(xi: Root, gamma: Root) -> Option<Root> {
    if gamma == xi {
        return None;
    }
    if gamma.col == xi.col && gamma.row < xi.row {
        Some(Root { row: xi.row, col: gamma.row })
    } else if gamma.row == xi.row && gamma.col > xi.col {
        Some(Root { row: gamma.col, col: xi.col })
    } else {
        None
    }
}

/// A set of positive roots of `gl(n)`, iterated in increasing lex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootSet {
    n: usize,
    members: BTreeSet<Root>,
}

impl RootSet {
    pub fn empty(n: usize) -> RootSet {
        RootSet { n, members: BTreeSet::new() }
    }

    pub fn from_roots(n: usize, roots: impl IntoIterator<Item = Root>) -> Result<RootSet> {
        let mut set = RootSet::empty(n);
        for r in roots {
            if !r.in_dim(n) {
                return Err(Error::RootOutOfRange(r, n));
            }
            set.members.insert(r);
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: Root) -> bool {
        self.members.contains(&r)
    }

    pub fn insert(&mut self, r: Root) -> bool {
        debug_assert!(r.in_dim(self.n));
        self.members.insert(r)
    }

    pub fn remove(&mut self, r: Root) -> bool {
        self.members.remove(&r)
    }

    /// Ascending lex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Root> + '_ {
        self.members.iter().copied()
    }

    /// Descending lex order.
    pub fn iter_desc(&self) -> impl Iterator<Item = Root> + '_ {
        self.members.iter().rev().copied()
    }

    pub fn max(&self) -> Option<Root> {
        self.members.iter().next_back().copied()
    }

    /// Largest member strictly below `bound`.
    pub fn max_below(&self, bound: Root) -> Option<Root> {
        self.members.range(..bound).next_back().copied()
    }

    pub fn members(&self) -> &BTreeSet<Root> {
        &self.members
    }

    pub fn is_subset(&self, other: &RootSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn difference(&self, other: &RootSet) -> RootSet {
        RootSet { n: self.n, members: self.members.difference(&other.members).copied().collect() }
    }

    pub fn union(&self, other: &RootSet) -> RootSet {
        RootSet { n: self.n, members: self.members.union(&other.members).copied().collect() }
    }

    pub fn intersection(&self, other: &RootSet) -> RootSet {
        RootSet { n: self.n, members: self.members.intersection(&other.members).copied().collect() }
    }

    pub fn filter(&self, mut keep: impl FnMut(Root) -> bool) -> RootSet {
        RootSet { n: self.n, members: self.members.iter().copied().filter(|&r| keep(r)).collect() }
    }

    /// Roots lying in column `t`.
    pub fn column(&self, t: usize) -> RootSet {
        self.filter(|r| r.col() == t)
    }
}

impl fmt::Display for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter_desc().map(|r| format!("({r})")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

pub fn positive_roots(n: usize) -> Result<RootSet> {
    if n < 2 {
        return Err(Error::InvalidDimension(n));
    }
    let mut set = RootSet::empty(n);
    for col in 1..n {
        for row in col + 1..=n {
            set.insert(Root::new(row, col));
        }
    }
    Ok(set)
}

/// `Δ⁺_{n−t+1}`: the roots in columns `t..n`, i.e. the lower-right `(n−t+1)`-block.
pub fn tail_block(n: usize, t: usize) -> RootSet {
    let mut set = RootSet::empty(n);
    for col in t.max(1)..n {
        for row in col + 1..=n {
            set.insert(Root::new(row, col));
        }
    }
    set
}

pub fn is_additive(a: &RootSet) -> bool {
    for x in a.iter() {
        for y in a.iter() {
            if let Some(s) = root_sum(x, y) {
                if !a.contains(s) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_normal(m: &RootSet, a: &RootSet) -> Result<bool> {
    if !m.is_subset(a) {
        return Err(Error::NotSubset);
    }
    for x in a.iter() {
        for y in m.iter() {
            if let Some(s) = root_sum(x, y) {
                if !m.contains(s) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `C(ξ, A)` split into `(C₊, C₋)`; `γ ∈ C₊` iff `γ > ξ − γ`.
pub fn c_split(xi: Root, a: &RootSet) -> Result<(RootSet, RootSet)> {
    if !a.contains(xi) {
        return Err(Error::NotMember(xi));
    }
    let mut plus = RootSet::empty(a.n());
    let mut minus = RootSet::empty(a.n());
    for mid in xi.col() + 1..xi.row() {
        let upper = Root::new(mid, xi.col());
        let lower = Root::new(xi.row(), mid);
        if a.contains(upper) && a.contains(lower) {
            // upper lies in an earlier column, hence is the greater summand
            plus.insert(upper);
            minus.insert(lower);
        }
    }
    Ok((plus, minus))
}

/// `A(ξ) = A ∖ C(ξ, A)`.
pub fn restrict(a: &RootSet, xi: Root) -> Result<RootSet> {
    let (plus, minus) = c_split(xi, a)?;
    let out = a.difference(&plus.union(&minus));
    debug_assert!(!is_additive(a) || is_additive(&out));
    Ok(out)
}

/// Column decomposition `Δ^(t)` and the chain `B_1 ⊇ B_2 ⊇ … ⊇ B_n = ∅`.
#[derive(Debug, Clone)]
pub struct ColumnChain {
    /// `delta[t-1]` = roots in column `t`, for `t = 1..=n` (column `n` is empty).
    pub delta: Vec<RootSet>,
    /// `b[t-1]` = `B_t`, for `t = 1..=n`.
    pub b: Vec<RootSet>,
    /// `m[t-1]` = `m(t)` (1-based index into the `A_i` chain).
    pub m: Vec<usize>,
}

impl ColumnChain {
    pub fn delta(&self, t: usize) -> &RootSet {
        &self.delta[t - 1]
    }

    pub fn b(&self, t: usize) -> &RootSet {
        &self.b[t - 1]
    }

    /// `A^(t) = A(S) ∩ Δ^(t)`.
    pub fn a_column(&self, s: &AdmissibleSubset, t: usize) -> RootSet {
        s.a_set().column(t)
    }
}

pub fn columns_and_chain(s: &AdmissibleSubset) -> ColumnChain {
    let n = s.n();
    let mut delta = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for t in 1..=n {
        let full = positive_roots(n).expect("n >= 2");
        delta.push(full.column(t));
        let mt = s
            .roots()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.col() < t)
            .map(|(i, _)| i + 1)
            .max()
            .unwrap_or(0)
            + 1;
        m.push(mt);
        b.push(tail_block(n, t).intersection(s.a_chain(mt)));
    }
    ColumnChain { delta, b, m }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_root_counts() {
        assert_eq!(positive_roots(2).unwrap().iter().collect::<Vec<_>>(), vec![Root::new(2, 1)]);
        assert_eq!(positive_roots(5).unwrap().len(), 10);
        let r7 = positive_roots(7).unwrap();
        assert_eq!(r7.len(), 21);
        assert!(r7.contains(Root::new(7, 1)) && r7.contains(Root::new(4, 3)));
        assert_eq!(positive_roots(1), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn lex_order_examples() {
        assert!(Root::new(5, 1).lex_greater(Root::new(4, 2)));
        assert!(Root::new(4, 1).lex_greater(Root::new(3, 1)));
        assert!(!Root::new(3, 2).lex_greater(Root::new(3, 2)));
        let all: Vec<Root> = positive_roots(4).unwrap().iter_desc().collect();
        assert_eq!(all[0], Root::new(4, 1));
        assert_eq!(*all.last().unwrap(), Root::new(4, 3));
    }

    #[test]
    fn index_round_trip() {
        for n in 2..=7 {
            for (i, r) in positive_roots(n).unwrap().iter_desc().enumerate() {
                assert_eq!(r.index(n), i);
                assert_eq!(Root::at_index(n, i), r);
            }
        }
    }

    #[test]
    fn sums() {
        assert_eq!(root_sum(Root::new(3, 1), Root::new(5, 3)), Some(Root::new(5, 1)));
        assert_eq!(root_sum(Root::new(3, 1), Root::new(4, 2)), None);
        assert_eq!(root_sum(Root::new(2, 1), Root::new(3, 2)), Some(Root::new(3, 1)));
    }

    #[test]
    fn sum_matches_epsilon_arithmetic() {
        for n in 2..=7 {
            let all = positive_roots(n).unwrap();
            for a in all.iter() {
                for b in all.iter() {
                    let v: Vec<i32> = a.epsilon(n).iter().zip(b.epsilon(n)).map(|(x, y)| x + y).collect();
                    let expected = all.iter().find(|r| r.epsilon(n) == v);
                    assert_eq!(root_sum(a, b), expected, "{a} + {b}");
                    if let Some(s) = expected {
                        assert_eq!(root_difference(s, a), Some(b));
                    }
                }
            }
        }
    }

    #[test]
    fn additivity() {
        assert!(is_additive(&positive_roots(5).unwrap()));
        let a = RootSet::from_roots(5, [Root::new(3, 1), Root::new(5, 3)]).unwrap();
        assert!(!is_additive(&a));
        let m = RootSet::from_roots(5, [Root::new(2, 1)]).unwrap();
        assert_eq!(is_normal(&m, &a), Err(Error::NotSubset));
    }

    #[test]
    fn c_split_examples() {
        let d3 = positive_roots(3).unwrap();
        let (p, m) = c_split(Root::new(3, 1), &d3).unwrap();
        assert_eq!(p.iter().collect::<Vec<_>>(), vec![Root::new(2, 1)]);
        assert_eq!(m.iter().collect::<Vec<_>>(), vec![Root::new(3, 2)]);
        let (p, m) = c_split(Root::new(2, 1), &d3).unwrap();
        assert!(p.is_empty() && m.is_empty());
        let d5 = positive_roots(5).unwrap();
        let (p, m) = c_split(Root::new(5, 1), &d5).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(m.len(), 3);
        assert_eq!(
            c_split(Root::new(3, 1), &RootSet::empty(3)),
            Err(Error::NotMember(Root::new(3, 1)))
        );
    }

    #[test]
    fn c_split_matches_brute_force_decompositions() {
        for n in 2..=6 {
            let all = positive_roots(n).unwrap();
            for xi in all.iter() {
                let (p, m) = c_split(xi, &all).unwrap();
                let mut brute_plus = RootSet::empty(n);
                for g in all.iter() {
                    if let Some(rest) = all.iter().find(|&r| root_sum(g, r) == Some(xi)) {
                        if g > rest {
                            brute_plus.insert(g);
                        }
                    }
                }
                assert_eq!(p, brute_plus);
                assert_eq!(p.len(), m.len());
                for g in p.iter() {
                    assert!(m.contains(root_difference(xi, g).unwrap()));
                }
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let d3 = positive_roots(3).unwrap();
        let r = restrict(&d3, Root::new(3, 1)).unwrap();
        assert_eq!(r.iter().collect::<Vec<_>>(), vec![Root::new(3, 1)]);
        assert_eq!(restrict(&d3, Root::new(2, 1)).unwrap(), d3);
        let d5 = positive_roots(5).unwrap();
        let r = restrict(&d5, Root::new(5, 1)).unwrap();
        assert_eq!(r.len(), 4);
        assert!(is_additive(&r));
    }
}
