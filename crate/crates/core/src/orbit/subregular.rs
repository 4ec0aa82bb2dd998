//! Generator systems for orbits of dimension `N − n_0 − 2`, checked pointwise over `F_p`.

use serde::Serialize;

use crate::char_matrix::{bordered_minors, n0, n_otimes, p_n0_prime, regular_minors, z_coefficients};
use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::poly::{Polynomial, PrimePoly};

use super::packed::{Orbit, PackedSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubregularCase {
    /// Some `P_j` with `j < n_⊗` vanishes; `j0` is the first.
    One { j0: usize },
    /// Odd `n`, `P_{n_⊗} = 0`.
    Two,
    /// Even `n`, `P_{n_⊗} = 0`, system with `Z_{n_⊗}`.
    ThreeA,
    /// Even `n`, `P_{n_⊗} = 0`, system with `P'_{n_0}`.
    ThreeB,
}

/// Named polynomials; the system is `poly = value` for each entry.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSystem {
    pub case: SubregularCase,
    pub equations: Vec<(String, Polynomial, u64)>,
}

/// The polynomials appearing in any subregular system for one `n`, compiled for `F_p`.
#[derive(Debug, Clone)]
pub struct SubregularToolkit {
    n: usize,
    p: u64,
    p_j: Vec<PrimePoly>,
    p_prime: Vec<PrimePoly>,
    p_second: Vec<PrimePoly>,
    z: Vec<PrimePoly>,
    p_n0_prime: Option<PrimePoly>,
    raw: Vec<(String, Polynomial)>,
}

impl SubregularToolkit {
    pub fn new(n: usize, p: u64) -> Result<SubregularToolkit> {
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        let idx = |r: Root| r.index(n);
        let no_c = |r: Root| -> Result<u64> { Err(Error::InvalidC(format!("unexpected constant c{r}"))) };
        let compile = |poly: &Polynomial| PrimePoly::compile(poly, p, &idx, &no_c);
        let mut raw = Vec::new();
        let mut p_j = Vec::new();
        for (k, poly) in regular_minors(n)?.into_iter().enumerate() {
            p_j.push(compile(&poly)?);
            raw.push((format!("P{}", k + 1), poly));
        }
        let (mut p_prime, mut p_second) = (Vec::new(), Vec::new());
        for j in 1..=n_otimes(n) {
            let (a, b) = bordered_minors(n, j)?;
            p_prime.push(compile(&a)?);
            p_second.push(compile(&b)?);
            raw.push((format!("P'{j}"), a));
            raw.push((format!("P''{j}"), b));
        }
        let mut z = Vec::new();
        for (k, poly) in z_coefficients(n)?.into_iter().enumerate() {
            z.push(compile(&poly)?);
            raw.push((format!("Z{}", k + 1), poly));
        }
        let p_n0_prime = if n.is_multiple_of(2) {
            let poly = p_n0_prime(n)?;
            let c = compile(&poly)?;
            raw.push((format!("P'{}", n0(n)), poly));
            Some(c)
        } else {
            None
        };
        Ok(SubregularToolkit { n, p, p_j, p_prime, p_second, z, p_n0_prime, raw })
    }

    fn poly(&self, name: &str) -> Polynomial {
        self.raw.iter().find(|(k, _)| k == name).map(|(_, p)| p.clone()).expect("known name")
    }

    /// Candidate systems for the orbit through `point` (residues in `Root::index` order).
    pub fn systems(&self, point: &[u64]) -> Result<Vec<GeneratorSystem>> {
        let (n, m, nx) = (self.n, n0(self.n), n_otimes(self.n));
        let values: Vec<u64> = self.p_j.iter().map(|q| q.eval(point)).collect();
        let j0 = (1..=nx)
            .find(|&j| values[j - 1] == 0)
            .ok_or_else(|| Error::NotSubregular("P_j is nonzero for every j <= n_otimes".into()))?;
        let eq = |name: String, q: &PrimePoly| {
            let v = q.eval(point);
            let poly = self.poly(&name);
            (name, poly, v)
        };
        let zero = |name: String| {
            let poly = self.poly(&name);
            (name, poly, 0)
        };
        let p_i = |skip: &[usize], upto: usize| -> Vec<(String, Polynomial, u64)> {
            (1..=upto).filter(|i| !skip.contains(i)).map(|i| eq(format!("P{i}"), &self.p_j[i - 1])).collect()
        };
        let pp = |j: usize| eq(format!("P'{j}"), &self.p_prime[j - 1]);
        let ps = |j: usize| eq(format!("P''{j}"), &self.p_second[j - 1]);
        let zz = |j: usize| eq(format!("Z{j}"), &self.z[j - 1]);
        if j0 < nx {
            let mut e = p_i(&[j0, j0 + 1], m);
            e.extend([pp(j0), ps(j0), zero(format!("P{j0}")), zz(j0)]);
            return Ok(vec![GeneratorSystem { case: SubregularCase::One { j0 }, equations: e }]);
        }
        let base = p_i(&[], nx - 1);
        if n % 2 == 1 {
            let mut e = base;
            e.extend([pp(nx), ps(nx), zero(format!("P{nx}"))]);
            return Ok(vec![GeneratorSystem { case: SubregularCase::Two, equations: e }]);
        }
        let mut a = base.clone();
        a.extend([pp(nx), ps(nx), zero(format!("P{nx}")), zz(nx)]);
        let mut b = base;
        let q = self.p_n0_prime.as_ref().expect("even n");
        b.extend([zero(format!("P{nx}")), zero(format!("P'{nx}")), eq(format!("P'{m}"), q), ps(nx)]);
        Ok(vec![
            GeneratorSystem { case: SubregularCase::ThreeA, equations: a },
            GeneratorSystem { case: SubregularCase::ThreeB, equations: b },
        ])
    }

    /// Number of points of `F_p^N` satisfying every equation.
    pub fn zero_set_size(&self, space: &PackedSpace, system: &GeneratorSystem) -> Result<usize> {
        let idx = |r: Root| r.index(self.n);
        let no_c = |r: Root| -> Result<u64> { Err(Error::InvalidC(format!("unexpected constant c{r}"))) };
        let compiled: Vec<(PrimePoly, u64)> = system
            .equations
            .iter()
            .map(|(_, poly, v)| Ok((PrimePoly::compile(poly, self.p, &idx, &no_c)?, *v)))
            .collect::<Result<_>>()?;
        let total = space.size().ok_or_else(|| Error::IndexRange("p^N overflows".into()))?;
        Ok((0..total)
            .filter(|&code| {
                let d = space.decode_digits(code);
                compiled.iter().all(|(q, v)| q.eval(&d) == *v)
            })
            .count())
    }

    /// Whether the system's zero set is exactly `orbit`.
    pub fn cuts_out(&self, space: &PackedSpace, system: &GeneratorSystem, orbit: &Orbit) -> Result<bool> {
        let idx = |r: Root| r.index(self.n);
        let no_c = |r: Root| -> Result<u64> { Err(Error::InvalidC(format!("unexpected constant c{r}"))) };
        for (_, poly, v) in &system.equations {
            let q = PrimePoly::compile(poly, self.p, &idx, &no_c)?;
            if orbit.members.iter().any(|&m| q.eval(&space.decode_digits(m)) != *v) {
                return Ok(false);
            }
        }
        Ok(self.zero_set_size(space, system)? == orbit.size())
    }
}

/// Subregular orbit dimension `N − n_0 − 2`.
pub fn subregular_dimension(n: usize) -> usize {
    n * (n - 1) / 2 - n0(n) - 2
}
