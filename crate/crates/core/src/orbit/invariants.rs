//! Exhaustive checks tying canonical pairs, minor generators and the torus action to BFS orbits.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::admissible::{AdmissibleSubset, Catalog, Label};
use crate::char_matrix::minor_generators;
use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::field::{mul_mod, inv_mod, Field};
use crate::symbolic::poly::PrimePoly;

use super::classify::{Classifier, OrbitRecord};
use super::form::canonical_form;
use super::packed::{default_budget, orbit_of_code, Orbit, PackedSpace};

/// Every admissible `c` over `F_p`: nonzero on `S_⊗`, arbitrary on `S_□`.
pub fn all_constants(s: &AdmissibleSubset, p: u64) -> Vec<BTreeMap<Root, u64>> {
    let otimes = s.otimes();
    let mut out = vec![BTreeMap::new()];
    for &r in s.roots() {
        let start = if otimes.contains(&r) { 1 } else { 0 };
        out = out
            .into_iter()
            .flat_map(|m| {
                (start..p).map(move |v| {
                    let mut m = m.clone();
                    m.insert(r, v);
                    m
                })
            })
            .collect();
    }
    out
}

fn form_code(space: &PackedSpace, s: &AdmissibleSubset, c: &BTreeMap<Root, u64>) -> Result<u64> {
    let field = Field::prime(space.p())?;
    let c = c.iter().map(|(&r, &v)| (r, field.from_i64(v as i64))).collect();
    space.encode(&canonical_form(s, field, &c)?)
}

/// A pair `(S, c)` whose orbit failed a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairFailure {
    pub label: Label,
    pub c: BTreeMap<Root, u64>,
    pub reason: String,
}

/// For every maximal `(S, c)` over `F_p`: `|Ω| = p^dim` and classification returns `(S, c)`.
pub fn check_canonical_pairs(n: usize, p: u64) -> Result<Vec<PairFailure>> {
    let classifier = Classifier::new(n, p)?;
    let space = classifier.space();
    let mut failures = Vec::new();
    for entry in Catalog::new(n)?.entries {
        let s = &entry.subset;
        for c in all_constants(s, p) {
            let code = form_code(space, s, &c)?;
            let orbit = orbit_of_code(space, code, default_budget())?;
            let fail = |reason: String| PairFailure { label: entry.label, c: c.clone(), reason };
            if orbit.dimension(p) != Some(s.dimension()) {
                failures.push(fail(format!("orbit size {}", orbit.size())));
                continue;
            }
            match classifier.classify_orbit(&orbit) {
                Ok(cl) if cl.label == entry.label && cl.canonical_code == code => {}
                Ok(cl) => failures.push(fail(format!("classified as {} at {}", cl.label, cl.canonical))),
                Err(e) => failures.push(fail(e.to_string())),
            }
        }
    }
    Ok(failures)
}

/// Minor generators `P_{h,η}` of one maximal `S`, compiled over `F_p`.
pub fn compiled_minor_generators(s: &AdmissibleSubset, p: u64) -> Result<Vec<(Root, PrimePoly)>> {
    let n = s.n();
    let idx = |r: Root| r.index(n);
    let no_c = |r: Root| -> Result<u64> { Err(Error::InvalidC(format!("unexpected constant c{r}"))) };
    minor_generators(s)?
        .into_iter()
        .map(|g| Ok((g.eta, PrimePoly::compile(&g.poly, p, &idx, &no_c)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorCheck {
    /// Roots `η` whose `P_{h,η}` takes more than one value on the orbit.
    pub varying: Vec<Root>,
    /// Size of the common level set, when computed.
    pub level_set: Option<usize>,
}

/// Constancy of the minor generators on the orbit of `record`; with `level_set`,
/// also counts the points of `F_p^N` where every generator takes its orbit value.
pub fn check_minor_generators(
    space: &PackedSpace,
    s: &AdmissibleSubset,
    orbit: &Orbit,
    level_set: bool,
) -> Result<MinorCheck> {
    let gens = compiled_minor_generators(s, space.p())?;
    let first = space.decode_digits(orbit.members[0]);
    let values: Vec<u64> = gens.iter().map(|(_, q)| q.eval(&first)).collect();
    let mut varying = Vec::new();
    for ((eta, q), &v) in gens.iter().zip(&values) {
        if orbit.members.iter().any(|&m| q.eval(&space.decode_digits(m)) != v) {
            varying.push(*eta);
        }
    }
    let level_set = if level_set {
        let total = space.size().ok_or_else(|| Error::IndexRange("p^N overflows".into()))?;
        Some(
            (0..total)
                .filter(|&code| {
                    let d = space.decode_digits(code);
                    gens.iter().zip(&values).all(|((_, q), &v)| q.eval(&d) == v)
                })
                .count(),
        )
    } else {
        None
    };
    Ok(MinorCheck { varying, level_set })
}

/// Orbit of a census record.
pub fn record_orbit(space: &PackedSpace, record: &OrbitRecord) -> Result<Orbit> {
    orbit_of_code(space, record.canonical_code, default_budget())
}

/// `f(y_ij) ↦ t_j t_i⁻¹ f(y_ij)`, the diagonal torus acting on forms.
pub fn torus_act(space: &PackedSpace, t: &[u64], code: u64) -> u64 {
    let (n, p) = (space.n(), space.p());
    let digits: Vec<u64> = space
        .decode_digits(code)
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            let r = Root::at_index(n, k);
            mul_mod(d, mul_mod(t[r.col() - 1], inv_mod(t[r.row() - 1], p), p), p)
        })
        .collect();
    space.encode_digits(&digits)
}

/// The torus preserves the set of orbits of each `S`: `t · f_{S,c}` classifies to the same `S`.
pub fn check_torus(n: usize, p: u64, samples: usize, seed: u64) -> Result<Vec<PairFailure>> {
    let classifier = Classifier::new(n, p)?;
    let space = classifier.space();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for entry in Catalog::new(n)?.entries {
        let s = &entry.subset;
        for c in all_constants(s, p) {
            let code = form_code(space, s, &c)?;
            for _ in 0..samples {
                let t: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
                let image = torus_act(space, &t, code);
                let orbit = orbit_of_code(space, image, default_budget())?;
                match classifier.classify_orbit(&orbit) {
                    Ok(cl) if cl.label == entry.label => {}
                    Ok(cl) => failures.push(PairFailure { label: entry.label, c: c.clone(), reason: format!("moved to {}", cl.label) }),
                    Err(e) => failures.push(PairFailure { label: entry.label, c: c.clone(), reason: e.to_string() }),
                }
            }
        }
    }
    Ok(failures)
}
