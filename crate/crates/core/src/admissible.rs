//! Admissible subsets, their diagrams, and the catalog of maximal ones.
//!
//! An admissible subset is built by repeatedly choosing a root `ξ_i` from the
//! current additive set `A_i` and passing to `A_{i+1} = A_i ∖ C(ξ_i, A_i)`.
//! Roots with `C(ξ_i, A_i) ≠ ∅` are the `⊗` roots, the others are `□` roots.
//! For a fixed `⊗` part the `□` parts are closed under union, so every `⊗`
//! sequence has exactly one maximal completion.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::root_system::{c_split, positive_roots, restrict, Root, RootSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Otimes,
    Box,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AdmissibleSubset {
    n: usize,
    roots: Vec<Root>,
    kinds: Vec<RootKind>,
    /// `A_1, …, A_{k+1}`.
    chain: Vec<RootSet>,
}

impl AdmissibleSubset {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `ξ_1 > ξ_2 > … > ξ_k`.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn kinds(&self) -> &[RootKind] {
        &self.kinds
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn kind_of(&self, r: Root) -> Option<RootKind> {
        self.roots.iter().position(|&x| x == r).map(|i| self.kinds[i])
    }

    /// `A_i` for `1 <= i <= k + 1`.
    pub fn a_chain(&self, i: usize) -> &RootSet {
        &self.chain[i - 1]
    }

    /// `A(S) = A_{k+1}`.
    pub fn a_set(&self) -> &RootSet {
        self.chain.last().expect("chain is never empty")
    }

    pub fn s_set(&self) -> RootSet {
        RootSet::from_roots(self.n, self.roots.iter().copied()).expect("roots lie in Δ⁺_n")
    }

    /// `M(S) = A(S) ∖ S`.
    pub fn m_set(&self) -> RootSet {
        self.a_set().difference(&self.s_set())
    }

    pub fn otimes(&self) -> Vec<Root> {
        self.of_kind(RootKind::Otimes)
    }

    pub fn boxes(&self) -> Vec<Root> {
        self.of_kind(RootKind::Box)
    }

    fn of_kind(&self, kind: RootKind) -> Vec<Root> {
        self.roots.iter().zip(&self.kinds).filter(|(_, &k)| k == kind).map(|(&r, _)| r).collect()
    }

    /// Number of `±` symbols in the diagram, i.e. `|Δ⁺| − |A(S)|`.
    pub fn dimension(&self) -> usize {
        render_diagram(self).count_plus_minus()
    }

    pub fn is_maximal(&self) -> bool {
        match maximal_completion(self.n, &self.otimes()) {
            Ok(full) => full.roots == self.roots,
            Err(_) => false,
        }
    }

    pub fn diagram(&self) -> Diagram {
        render_diagram(self)
    }
}

impl fmt::Display for AdmissibleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .roots
            .iter()
            .zip(&self.kinds)
            .map(|(r, k)| format!("{}({r})", if *k == RootKind::Otimes { "X" } else { "B" }))
            .collect();
        write!(f, "[{}]", parts.join(" > "))
    }
}

/// Replays the choice procedure; `InvalidChoice` carries the 1-based position.
pub fn build_admissible(n: usize, choices: &[Root]) -> Result<AdmissibleSubset> {
    let mut current = positive_roots(n)?;
    let mut chain = vec![current.clone()];
    let mut kinds = Vec::with_capacity(choices.len());
    for (idx, &xi) in choices.iter().enumerate() {
        let below_prev = idx == 0 || choices[idx - 1] > xi;
        if !below_prev || !xi.in_dim(n) || !current.contains(xi) {
            return Err(Error::InvalidChoice { index: idx + 1 });
        }
        let (plus, _) = c_split(xi, &current)?;
        kinds.push(if plus.is_empty() { RootKind::Box } else { RootKind::Otimes });
        current = restrict(&current, xi)?;
        chain.push(current.clone());
    }
    Ok(AdmissibleSubset { n, roots: choices.to_vec(), kinds, chain })
}

/// The maximal admissible subset whose `⊗` part is `otimes` (given in decreasing order).
pub fn maximal_completion(n: usize, otimes: &[Root]) -> Result<AdmissibleSubset> {
    let all = positive_roots(n)?;
    let mut current = all.clone();
    let mut roots = Vec::new();
    let mut next = 0;
    for r in all.iter_desc() {
        let is_next = next < otimes.len() && otimes[next] == r;
        if !current.contains(r) {
            if is_next {
                return Err(Error::InvalidChoice { index: next + 1 });
            }
            continue;
        }
        let (plus, _) = c_split(r, &current)?;
        if is_next {
            if plus.is_empty() {
                return Err(Error::InvalidChoice { index: next + 1 });
            }
            roots.push(r);
            current = restrict(&current, r)?;
            next += 1;
        } else if plus.is_empty() {
            roots.push(r);
        }
    }
    if next != otimes.len() {
        return Err(Error::InvalidChoice { index: next + 1 });
    }
    build_admissible(n, &roots)
}

/// Extends `prefix` greedily: each further root is the largest element of the
/// current `A_i` below the previous root.
fn greedy_extend(n: usize, mut roots: Vec<Root>) -> Result<AdmissibleSubset> {
    let mut s = build_admissible(n, &roots)?;
    loop {
        let next = match roots.last() {
            Some(&last) => s.a_set().max_below(last),
            None => s.a_set().max(),
        };
        match next {
            Some(r) => {
                roots.push(r);
                s = build_admissible(n, &roots)?;
            }
            None => return Ok(s),
        }
    }
}

/// `S_reg`: every root is the maximal element of its `A_i`.
pub fn regular_subset(n: usize) -> Result<AdmissibleSubset> {
    greedy_extend(n, Vec::new())
}

/// Next maximal subset under the sequence rule, or `None` after the last one.
pub fn sequence_successor(s: &AdmissibleSubset) -> Result<Option<AdmissibleSubset>> {
    if !s.is_maximal() {
        return Err(Error::NotMaximal);
    }
    let Some(p) = s.kinds.iter().rposition(|&k| k == RootKind::Otimes) else {
        return Ok(None);
    };
    let xi = s.roots[p];
    let mut prefix: Vec<Root> = s.roots[..p].to_vec();
    if let Some(eta) = s.a_chain(p + 1).max_below(xi) {
        prefix.push(eta);
    }
    let _ = xi;
    let next = greedy_extend_from(s.n, prefix, p)?;
    Ok(Some(next))
}

fn greedy_extend_from(n: usize, prefix: Vec<Root>, p: usize) -> Result<AdmissibleSubset> {
    if prefix.len() <= p {
        // nothing of A_p lies below the removed root
        return build_admissible(n, &prefix);
    }
    greedy_extend(n, prefix)
}

/// All maximal admissible subsets in sequence-rule order.
pub fn enumerate_maximal(n: usize) -> Result<Vec<AdmissibleSubset>> {
    let mut out = vec![regular_subset(n)?];
    while let Some(next) = sequence_successor(out.last().unwrap())? {
        out.push(next);
    }
    Ok(out)
}

/// Every admissible subset (including the empty one), by exhaustive recursion.
pub fn enumerate_admissible(n: usize) -> Result<Vec<AdmissibleSubset>> {
    fn recurse(roots: &mut Vec<Root>, current: &RootSet, out: &mut Vec<Vec<Root>>) {
        out.push(roots.clone());
        let candidates: Vec<Root> = match roots.last() {
            Some(&last) => current.iter().filter(|&r| r < last).collect(),
            None => current.iter().collect(),
        };
        for r in candidates {
            let next = restrict(current, r).expect("candidate is a member");
            roots.push(r);
            recurse(roots, &next, out);
            roots.pop();
        }
    }
    let all = positive_roots(n)?;
    let mut raw = Vec::new();
    recurse(&mut Vec::new(), &all, &mut raw);
    raw.into_iter().map(|r| build_admissible(n, &r)).collect()
}

/// Maximal subsets found by filtering the full search: within each group sharing
/// `S_⊗`, keep the subset whose `S_□` contains all others.
pub fn enumerate_maximal_by_search(n: usize) -> Result<Vec<AdmissibleSubset>> {
    let mut groups: BTreeMap<Vec<Root>, Vec<AdmissibleSubset>> = BTreeMap::new();
    for s in enumerate_admissible(n)? {
        groups.entry(s.otimes()).or_default().push(s);
    }
    let mut out = Vec::new();
    for (_, members) in groups {
        let best = members.iter().max_by_key(|s| s.boxes().len()).unwrap();
        let best_boxes = best.boxes();
        let dominates = members.iter().all(|s| s.boxes().iter().all(|b| best_boxes.contains(b)));
        if !dominates {
            return Err(Error::NotMaximal);
        }
        out.push(best.clone());
    }
    // sequence-rule order is decreasing lex order of root sequences
    out.sort_by(|a, b| b.roots.cmp(&a.roots));
    Ok(out)
}

/// Prefixes `prefix_columns` columns, each with `□` on the subdiagonal and `•` below,
/// in front of an admissible subset for `n − prefix_columns`.
pub fn star_expand(prefix_columns: usize, inner_n: usize, inner: &[Root]) -> Result<AdmissibleSubset> {
    if build_admissible(inner_n, inner).is_err() {
        return Err(Error::InvalidInner(inner_n));
    }
    let n = inner_n + prefix_columns;
    let mut roots: Vec<Root> = (1..=prefix_columns).map(|c| Root::new(c + 1, c)).collect();
    roots.extend(inner.iter().map(|r| Root::new(r.row() + prefix_columns, r.col() + prefix_columns)));
    build_admissible(n, &roots).map_err(|_| Error::InvalidInner(inner_n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symbol {
    Empty,
    Otimes,
    Box,
    Bullet,
    Plus,
    Minus,
}

impl Symbol {
    pub fn ascii(self) -> char {
        match self {
            Symbol::Empty => ' ',
            Symbol::Otimes => 'X',
            Symbol::Box => 'B',
            Symbol::Bullet => '.',
            Symbol::Plus => '+',
            Symbol::Minus => '-',
        }
    }

    pub fn utf8(self) -> char {
        match self {
            Symbol::Empty => ' ',
            Symbol::Otimes => '⊗',
            Symbol::Box => '□',
            Symbol::Bullet => '•',
            Symbol::Plus => '+',
            Symbol::Minus => '−',
        }
    }

    pub fn from_ascii(c: char) -> Option<Symbol> {
        Some(match c {
            ' ' | '_' => Symbol::Empty,
            'X' => Symbol::Otimes,
            'B' => Symbol::Box,
            '.' => Symbol::Bullet,
            '+' => Symbol::Plus,
            '-' => Symbol::Minus,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    n: usize,
    grid: Vec<Vec<Symbol>>,
}

impl Diagram {
    fn blank(n: usize) -> Diagram {
        Diagram { n, grid: vec![vec![Symbol::Empty; n]; n] }
    }

    /// Builds a diagram from ASCII rows (`row 1` first); trailing cells may be omitted.
    pub fn from_ascii_rows(n: usize, rows: &[&str]) -> Result<Diagram> {
        let mut d = Diagram::blank(n);
        for (i, line) in rows.iter().enumerate() {
            for (j, ch) in line.chars().enumerate() {
                let sym = Symbol::from_ascii(ch).ok_or_else(|| Error::Parse(format!("symbol {ch:?}")))?;
                if i >= n || j >= n {
                    return Err(Error::Parse("row too long".into()));
                }
                d.grid[i][j] = sym;
            }
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based `(row, col)` access.
    pub fn get(&self, row: usize, col: usize) -> Symbol {
        self.grid[row - 1][col - 1]
    }

    pub fn at(&self, r: Root) -> Symbol {
        self.get(r.row(), r.col())
    }

    fn set(&mut self, row: usize, col: usize, s: Symbol) {
        self.grid[row - 1][col - 1] = s;
    }

    pub fn count(&self, sym: Symbol) -> usize {
        (1..=self.n).flat_map(|i| (1..i).map(move |j| (i, j))).filter(|&(i, j)| self.get(i, j) == sym).count()
    }

    pub fn count_plus_minus(&self) -> usize {
        self.count(Symbol::Plus) + self.count(Symbol::Minus)
    }

    pub fn roots_with(&self, sym: Symbol) -> Vec<Root> {
        let mut out = Vec::new();
        for j in 1..self.n {
            for i in (j + 1..=self.n).rev() {
                if self.get(i, j) == sym {
                    out.push(Root::new(i, j));
                }
            }
        }
        out
    }

    /// One string per row, `n` characters each, using the ASCII alphabet.
    pub fn ascii_rows(&self) -> Vec<String> {
        self.grid.iter().map(|row| row.iter().map(|s| s.ascii()).collect()).collect()
    }

    pub fn render(&self, utf8: bool) -> String {
        let mut out = String::new();
        for row in &self.grid {
            out.push('|');
            for s in row {
                out.push(if utf8 { s.utf8() } else { s.ascii() });
                out.push('|');
            }
            out.push('\n');
        }
        out
    }
}

/// Order in which the `(i_t, a), (a, j_t)` pairs of a `⊗` root are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairOrder {
    Increasing,
    Decreasing,
}

pub fn render_diagram(s: &AdmissibleSubset) -> Diagram {
    render_diagram_with(s, PairOrder::Increasing)
}

pub fn render_diagram_with(s: &AdmissibleSubset, order: PairOrder) -> Diagram {
    let n = s.n;
    let mut d = Diagram::blank(n);
    for &xi in &s.roots {
        let (i, j) = (xi.row(), xi.col());
        for b in 1..j {
            for a in b + 1..=n {
                if d.get(a, b) == Symbol::Empty {
                    d.set(a, b, Symbol::Bullet);
                }
            }
        }
        for a in i + 1..=n {
            if d.get(a, j) == Symbol::Empty {
                d.set(a, j, Symbol::Bullet);
            }
        }
        let mut mids: Vec<usize> = (j + 1..i).collect();
        if order == PairOrder::Decreasing {
            mids.reverse();
        }
        let mut any = false;
        for a in mids {
            if d.get(i, a) == Symbol::Empty && d.get(a, j) == Symbol::Empty {
                d.set(i, a, Symbol::Minus);
                d.set(a, j, Symbol::Plus);
                any = true;
            }
        }
        d.set(i, j, if any { Symbol::Otimes } else { Symbol::Box });
    }
    for i in 1..=n {
        for j in 1..i {
            if d.get(i, j) == Symbol::Empty {
                d.set(i, j, Symbol::Bullet);
            }
        }
    }
    d
}

pub fn dimension(s: &AdmissibleSubset) -> usize {
    s.dimension()
}

/// Catalog label `(n, k, m)`: `k` bullets in the first column, `m`-th diagram of that group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.k, self.m)
    }
}

impl std::str::FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Label> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("label {s:?}: expected n,k,m")));
        }
        let num = |p: &str| p.parse::<usize>().map_err(|_| Error::Parse(format!("label {s:?}")));
        Ok(Label { n: num(parts[0])?, k: num(parts[1])?, m: num(parts[2])? })
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: Label,
    pub subset: AdmissibleSubset,
}

/// Maximal admissible subsets of `Δ⁺_n` in catalog order, each with its label.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub n: usize,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new(n: usize) -> Result<Catalog> {
        let subsets = enumerate_maximal(n)?;
        let mut serial: BTreeMap<usize, usize> = BTreeMap::new();
        let entries = subsets
            .into_iter()
            .map(|subset| {
                let k = render_diagram(&subset).roots_with(Symbol::Bullet).iter().filter(|r| r.col() == 1).count();
                let m = serial.entry(k).or_insert(0);
                *m += 1;
                CatalogEntry { label: Label { n, k, m: *m }, subset }
            })
            .collect();
        Ok(Catalog { n, entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: Label) -> Option<&AdmissibleSubset> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.subset)
    }

    pub fn label_of(&self, s: &AdmissibleSubset) -> Option<Label> {
        self.entries.iter().find(|e| &e.subset == s).map(|e| e.label)
    }

    pub fn subsets(&self) -> impl Iterator<Item = &AdmissibleSubset> {
        self.entries.iter().map(|e| &e.subset)
    }
}

/// Looks up a maximal subset by catalog label.
pub fn subset_by_label(label: Label) -> Result<AdmissibleSubset> {
    let cat = Catalog::new(label.n)?;
    cat.get(label).cloned().ok_or_else(|| Error::Parse(format!("no diagram {label}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntryJson {
    pub row: usize,
    pub col: usize,
    pub kind: RootKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub n: usize,
    pub label: Option<[usize; 3]>,
    pub roots: Vec<RootEntryJson>,
    pub grid: Vec<String>,
}

impl DiagramJson {
    pub fn new(s: &AdmissibleSubset, label: Option<Label>) -> DiagramJson {
        DiagramJson {
            n: s.n,
            label: label.map(|l| [l.n, l.k, l.m]),
            roots: s
                .roots
                .iter()
                .zip(&s.kinds)
                .map(|(r, &kind)| RootEntryJson { row: r.row(), col: r.col(), kind })
                .collect(),
            grid: render_diagram(s).ascii_rows(),
        }
    }

    pub fn to_subset(&self) -> Result<AdmissibleSubset> {
        let roots: Vec<Root> =
            self.roots.iter().map(|e| Root::checked(self.n, e.row, e.col)).collect::<Result<_>>()?;
        let s = build_admissible(self.n, &roots)?;
        if s.kinds.iter().zip(&self.roots).any(|(k, e)| *k != e.kind) {
            return Err(Error::Parse("root kinds disagree with the replayed subset".into()));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::is_normal;

    fn a(i: usize, j: usize) -> Root {
        Root::alpha(i, j)
    }

    #[test]
    fn worked_example_subset() {
        let s = build_admissible(5, &[a(1, 3), a(2, 5), a(3, 5), a(3, 4)]).unwrap();
        let m: Vec<Root> = s.m_set().iter_desc().collect();
        assert_eq!(m, vec![a(1, 5), a(1, 4)]);
        assert!(is_normal(&s.m_set(), s.a_set()).unwrap());
        assert_eq!(s.otimes(), vec![a(1, 3), a(2, 5)]);
    }

    #[test]
    fn invalid_choice_reports_position() {
        assert_eq!(build_admissible(3, &[a(1, 3), a(1, 2)]), Err(Error::InvalidChoice { index: 2 }));
        let s = build_admissible(3, &[a(1, 3)]).unwrap();
        assert_eq!(s.otimes(), vec![a(1, 3)]);
        // increasing order is rejected
        assert_eq!(build_admissible(3, &[a(2, 3), a(1, 2)]), Err(Error::InvalidChoice { index: 2 }));
    }

    #[test]
    fn small_diagrams() {
        let d = render_diagram(&build_admissible(3, &[a(1, 3)]).unwrap());
        assert_eq!(d.ascii_rows(), vec!["   ", "+  ", "X- "]);
        let d = render_diagram(&build_admissible(3, &[a(1, 2), a(2, 3)]).unwrap());
        assert_eq!(d.ascii_rows(), vec!["   ", "B  ", ".B "]);
    }

    #[test]
    fn dimensions() {
        assert_eq!(build_admissible(3, &[a(1, 3)]).unwrap().dimension(), 2);
        assert_eq!(build_admissible(3, &[a(1, 2), a(2, 3)]).unwrap().dimension(), 0);
        let s = subset_by_label(Label { n: 5, k: 2, m: 1 }).unwrap();
        assert_eq!(s.dimension(), 4);
    }

    #[test]
    fn catalog_sizes_and_order() {
        let c3 = Catalog::new(3).unwrap();
        let labels: Vec<String> = c3.entries.iter().map(|e| e.label.to_string()).collect();
        assert_eq!(labels, vec!["(3,0,1)", "(3,1,1)"]);
        assert_eq!(Catalog::new(4).unwrap().len(), 4);
        assert_eq!(Catalog::new(5).unwrap().len(), 11);
    }

    #[test]
    fn successor_examples() {
        let c3 = Catalog::new(3).unwrap();
        let first = &c3.entries[0].subset;
        assert_eq!(sequence_successor(first).unwrap().as_ref(), Some(&c3.entries[1].subset));
        assert_eq!(sequence_successor(&c3.entries[1].subset).unwrap(), None);
        let c5 = Catalog::new(5).unwrap();
        let s501 = c5.get(Label { n: 5, k: 0, m: 1 }).unwrap();
        let s502 = c5.get(Label { n: 5, k: 0, m: 2 }).unwrap();
        assert_eq!(sequence_successor(s501).unwrap().as_ref(), Some(s502));
        let not_max = build_admissible(5, &[a(1, 3)]).unwrap();
        assert_eq!(sequence_successor(&not_max), Err(Error::NotMaximal));
    }

    #[test]
    fn star_examples() {
        let c3 = Catalog::new(3).unwrap();
        let c4 = Catalog::new(4).unwrap();
        let s = star_expand(1, 3, c3.entries[0].subset.roots()).unwrap();
        assert!(s.is_maximal());
        assert_eq!(c4.label_of(&s), Some(Label { n: 4, k: 2, m: 1 }));
        let c5 = Catalog::new(5).unwrap();
        let inner = c4.get(Label { n: 4, k: 1, m: 1 }).unwrap();
        let s = star_expand(1, 4, inner.roots()).unwrap();
        assert_eq!(c5.label_of(&s).map(|l| l.k), Some(3));
        assert_eq!(star_expand(1, 3, &[a(1, 3), a(1, 2)]), Err(Error::InvalidInner(3)));
    }

    #[test]
    fn label_parse() {
        assert_eq!("7,3,8".parse::<Label>().unwrap(), Label { n: 7, k: 3, m: 8 });
        assert_eq!("(6,3,4)".parse::<Label>().unwrap().to_string(), "(6,3,4)");
        assert!("6,3".parse::<Label>().is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = Catalog::new(5).unwrap();
        for e in &c.entries {
            let j = DiagramJson::new(&e.subset, Some(e.label));
            let text = serde_json::to_string(&j).unwrap();
            let back: DiagramJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back.to_subset().unwrap(), e.subset);
        }
    }
}
