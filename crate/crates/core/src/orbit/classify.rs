//! Matching orbits to canonical pairs `(S, c)` and counting orbits over `F_p`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::admissible::{AdmissibleSubset, Catalog, Label};
use crate::char_matrix::{n0, n_otimes};
use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::field::Field;

use super::form::LinearForm;
use super::packed::{default_budget, orbit_of_code, Orbit, PackedSpace};

#[derive(Debug, Clone)]
struct Pattern {
    label: Label,
    subset: AdmissibleSubset,
    s_mask: u32,
    otimes_mask: u32,
    dim: usize,
}

/// Support patterns of every maximal subset for one `n`.
#[derive(Debug, Clone)]
pub struct Classifier {
    space: PackedSpace,
    patterns: Vec<Pattern>,
}

/// The canonical pair found in an orbit.
#[derive(Debug, Clone)]
pub struct Classification {
    pub label: Label,
    pub subset: AdmissibleSubset,
    /// The unique member `f_{S,c}`.
    pub canonical: LinearForm,
    pub canonical_code: u64,
    pub dim: usize,
    pub orbit_size: usize,
}

impl Classification {
    /// `c` read off the canonical member, on `S` only.
    pub fn constants(&self) -> BTreeMap<Root, u64> {
        self.subset.roots().iter().map(|&r| (r, self.canonical.get(r).residue().unwrap_or(0))).collect()
    }
}

fn mask(n: usize, roots: impl IntoIterator<Item = Root>) -> u32 {
    roots.into_iter().fold(0, |m, r| m | (1 << r.index(n)))
}

impl Classifier {
    pub fn new(n: usize, p: u64) -> Result<Classifier> {
        let space = PackedSpace::new(n, p)?;
        let catalog = Catalog::new(n)?;
        let patterns = catalog
            .entries
            .iter()
            .map(|e| Pattern {
                label: e.label,
                subset: e.subset.clone(),
                s_mask: mask(n, e.subset.roots().iter().copied()),
                otimes_mask: mask(n, e.subset.otimes()),
                dim: e.subset.dimension(),
            })
            .collect();
        Ok(Classifier { space, patterns })
    }

    pub fn space(&self) -> &PackedSpace {
        &self.space
    }

    /// The unique member with `S_⊗ ⊆ supp ⊆ S` for a maximal `S` of the orbit's dimension.
    pub fn classify_orbit(&self, orbit: &Orbit) -> Result<Classification> {
        let p = self.space.p();
        let dim = orbit
            .dimension(p)
            .ok_or_else(|| Error::ClassificationMismatch(format!("orbit size {} is not a power of {p}", orbit.size())))?;
        let candidates: Vec<&Pattern> = self.patterns.iter().filter(|pat| pat.dim == dim).collect();
        let mut found: Option<(usize, u64)> = None;
        for &code in &orbit.members {
            let supp = self.space.support_mask(code);
            for (k, pat) in candidates.iter().enumerate() {
                if supp & !pat.s_mask == 0 && supp & pat.otimes_mask == pat.otimes_mask {
                    if let Some((_, other)) = found {
                        return Err(Error::ClassificationMismatch(format!(
                            "two canonical members {} and {}",
                            self.space.decode(other),
                            self.space.decode(code)
                        )));
                    }
                    found = Some((k, code));
                }
            }
        }
        let (k, code) = found.ok_or_else(|| {
            Error::ClassificationMismatch(format!(
                "no canonical member in orbit of {} (size {})",
                self.space.decode(orbit.members[0]),
                orbit.size()
            ))
        })?;
        let pat = candidates[k];
        Ok(Classification {
            label: pat.label,
            subset: pat.subset.clone(),
            canonical: self.space.decode(code),
            canonical_code: code,
            dim,
            orbit_size: orbit.size(),
        })
    }

    pub fn classify(&self, f: &LinearForm) -> Result<Classification> {
        let orbit = orbit_of_code(&self.space, self.space.encode(f)?, default_budget())?;
        self.classify_orbit(&orbit)
    }
}

/// Orbit of `f` over `F_p` and its canonical pair.
pub fn classify(f: &LinearForm) -> Result<Classification> {
    let Field::Prime(p) = f.field() else {
        return Err(Error::FieldMismatch("classification needs a prime field".into()));
    };
    Classifier::new(f.n(), p)?.classify(f)
}

/// One orbit found by the census.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub label: Label,
    pub subset: AdmissibleSubset,
    pub dim: usize,
    pub size: usize,
    pub canonical: LinearForm,
    pub canonical_code: u64,
    pub stratum: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelCount {
    pub label: String,
    pub dim: usize,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Identities {
    /// `Σ |Ω| = p^N`.
    pub point_sum_ok: bool,
    /// Orbits per label equal `(p−1)^{|S_⊗|} p^{|S_□|}`.
    pub label_counts_ok: bool,
    /// Every orbit has exactly one canonical member and the expected dimension.
    pub classification_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub n: usize,
    pub p: u64,
    pub total_orbits: u64,
    pub orbits: Vec<LabelCount>,
    pub per_dimension: BTreeMap<usize, u64>,
    pub expected_per_dimension: BTreeMap<usize, u64>,
    pub identities: Identities,
    #[serde(skip)]
    pub records: Vec<OrbitRecord>,
}

impl CensusReport {
    pub fn ok(&self) -> bool {
        self.identities.point_sum_ok && self.identities.label_counts_ok && self.identities.classification_ok
    }
}

/// `(p−1)^{|S_⊗|} p^{|S_□|}` for each maximal `S`.
pub fn expected_label_counts(n: usize, p: u64) -> Result<Vec<(Label, usize, u64)>> {
    let catalog = Catalog::new(n)?;
    Ok(catalog
        .entries
        .iter()
        .map(|e| {
            let s = &e.subset;
            let count = (p - 1).pow(s.otimes().len() as u32) * p.pow(s.boxes().len() as u32);
            (e.label, s.dimension(), count)
        })
        .collect())
}

/// Every orbit of `UT(n, F_p)` on `F_p^N`, each matched to its canonical pair.
pub fn census(n: usize, p: u64) -> Result<CensusReport> {
    census_with_budget(n, p, default_budget())
}

pub fn census_with_budget(n: usize, p: u64, budget: usize) -> Result<CensusReport> {
    let classifier = Classifier::new(n, p)?;
    let space = classifier.space();
    let total = space.size().filter(|&t| t as u128 <= budget as u128).ok_or(Error::BudgetExceeded { partial: 0, budget })?;
    let mut visited = vec![false; total as usize];
    let mut records = Vec::new();
    let mut classification_ok = true;
    let mut point_sum: u64 = 0;
    let mut buf = Vec::new();
    for start in 0..total {
        if visited[start as usize] {
            continue;
        }
        visited[start as usize] = true;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            space.neighbours(members[head], &mut buf);
            head += 1;
            for &next in &buf {
                if !visited[next as usize] {
                    visited[next as usize] = true;
                    members.push(next);
                }
            }
        }
        point_sum += members.len() as u64;
        members.sort_unstable();
        let orbit = Orbit { members };
        match classifier.classify_orbit(&orbit) {
            Ok(c) => {
                if space.kirillov_rank(c.canonical_code) != c.dim {
                    classification_ok = false;
                }
                records.push(OrbitRecord {
                    label: c.label,
                    subset: c.subset.clone(),
                    dim: c.dim,
                    size: c.orbit_size,
                    stratum: super::form::stratum(&c.canonical),
                    canonical: c.canonical,
                    canonical_code: c.canonical_code,
                });
            }
            Err(_) => classification_ok = false,
        }
    }

    let expected = expected_label_counts(n, p)?;
    let mut by_label: BTreeMap<Label, u64> = BTreeMap::new();
    let mut per_dimension: BTreeMap<usize, u64> = BTreeMap::new();
    for r in &records {
        *by_label.entry(r.label).or_default() += 1;
        *per_dimension.entry(r.dim).or_default() += 1;
    }
    let mut expected_per_dimension: BTreeMap<usize, u64> = BTreeMap::new();
    let mut label_counts_ok = true;
    let mut orbits = Vec::new();
    for &(label, dim, count) in &expected {
        *expected_per_dimension.entry(dim).or_default() += count;
        let got = by_label.get(&label).copied().unwrap_or(0);
        label_counts_ok &= got == count;
        orbits.push(LabelCount { label: label.to_string(), dim, count: got });
    }
    Ok(CensusReport {
        n,
        p,
        total_orbits: records.len() as u64,
        orbits,
        per_dimension,
        expected_per_dimension,
        identities: Identities { point_sum_ok: point_sum == total, label_counts_ok, classification_ok },
        records,
    })
}

/// `d_i = N − (n_0 + 2·min(i, n_⊗))`, the largest orbit dimension in stratum `i`.
pub fn stratum_dim_formula(n: usize, i: usize) -> usize {
    n * (n - 1) / 2 - (n0(n) + 2 * i.min(n_otimes(n)))
}

/// Largest orbit dimension observed in each stratum `0 ≤ i ≤ n − 1`.
pub fn stratum_max_dims(report: &CensusReport) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for r in &report.records {
        let e = out.entry(r.stratum).or_insert(0);
        *e = (*e).max(r.dim);
    }
    out
}
