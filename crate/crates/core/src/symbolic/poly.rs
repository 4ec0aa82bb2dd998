//! Sparse Laurent polynomials over ℚ in the coordinates `y_γ` and constants `c_γ`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::root_system::Root;
use crate::symbolic::field::{inv_mod, mul_mod, pow_mod, Field, FieldElement};

/// `C(γ)` is the symbolic constant attached to `γ`; `Y(γ)` the coordinate `y_γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    C(Root),
    Y(Root),
}

impl Var {
    pub fn y(i: usize, j: usize) -> Var {
        Var::Y(Root::new(i, j))
    }

    pub fn root(self) -> Root {
        match self {
            Var::C(r) | Var::Y(r) => r,
        }
    }

    pub fn is_y(self) -> bool {
        matches!(self, Var::Y(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, r) = match self {
            Var::C(r) => ('c', r),
            Var::Y(r) => ('y', r),
        };
        if r.row() < 10 {
            write!(f, "{name}{}{}", r.row(), r.col())
        } else {
            write!(f, "{name}_{}_{}", r.row(), r.col())
        }
    }
}

/// Product of variables with integer (possibly negative) exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, i32)>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    pub fn var(v: Var, e: i32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, i32)>) -> Monomial {
        let mut m = Monomial::one();
        for (v, e) in pairs {
            m = m.mul(&Monomial::var(v, e));
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.0
    }

    pub fn degree(&self) -> i32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.0.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let take = match (self.0.get(i), other.0.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.0[i].1 + other.0[j].1;
                    if e != 0 {
                        out.push((self.0[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial(out)
    }

    pub fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    pub fn without(&self, v: Var) -> Monomial {
        Monomial(self.0.iter().copied().filter(|(w, _)| *w != v).collect())
    }

    pub fn has_negative(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.0.iter().any(|&(v, e)| e < 0 && pred(v))
    }
}

impl Ord for Monomial {
    /// Graded, then lexicographic with the greatest variable most significant.
    fn cmp(&self, other: &Monomial) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (self.0.len(), other.0.len());
        while i > 0 || j > 0 {
            let a = if i > 0 { Some(self.0[i - 1]) } else { None };
            let b = if j > 0 { Some(other.0[j - 1]) } else { None };
            match (a, b) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(&vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i -= 1;
                        j -= 1;
                    }
                    Ordering::Greater => return ea.cmp(&0),
                    Ordering::Less => return 0.cmp(&eb),
                },
                (Some((_, ea)), None) => return ea.cmp(&0),
                (None, Some((_, eb))) => return 0.cmp(&eb),
                (None, None) => unreachable!(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .rev()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(rat(1))
    }

    pub fn constant(c: BigRational) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn int(c: i64) -> Polynomial {
        Polynomial::constant(rat(c))
    }

    pub fn term(c: BigRational, m: Monomial) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn var(v: Var) -> Polynomial {
        Polynomial::term(rat(1), Monomial::var(v, 1))
    }

    pub fn y(r: Root) -> Polynomial {
        Polynomial::var(Var::Y(r))
    }

    pub fn c(r: Root) -> Polynomial {
        Polynomial::var(Var::C(r))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn y_vars(&self) -> BTreeSet<Root> {
        self.vars().into_iter().filter_map(|v| if let Var::Y(r) = v { Some(r) } else { None }).collect()
    }

    /// True when no `y` variable occurs.
    pub fn is_constant(&self) -> bool {
        self.vars().iter().all(|v| !v.is_y())
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Inverse of a single term.
    pub fn inv_term(&self) -> Option<Polynomial> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        Some(Polynomial::term(c.recip(), m.inv()))
    }

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e != 0 {
                out.add_term(m.mul(&Monomial::var(v, -1)), c * rat(e as i64));
            }
        }
        out
    }

    /// Replaces every variable for which `f` returns a value. Negative powers
    /// require the replacement to be a single term.
    pub fn substitute(&self, f: &dyn Fn(Var) -> Option<Polynomial>) -> Result<Polynomial> {
        let mut cache: BTreeMap<(Var, i32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut acc = Polynomial::term(c.clone(), Monomial::one());
            let mut kept = Monomial::one();
            for &(v, e) in &m.0 {
                match f(v) {
                    None => kept = kept.mul(&Monomial::var(v, e)),
                    Some(q) => {
                        let piece = match cache.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let base = if e < 0 {
                                    q.inv_term().ok_or_else(|| {
                                        Error::UnsupportedIdealShape(format!("cannot invert {q} for {v}^{e}"))
                                    })?
                                } else {
                                    q
                                };
                                let p = base.pow(e.unsigned_abs());
                                cache.insert((v, e), p.clone());
                                p
                            }
                        };
                        acc = &acc * &piece;
                    }
                }
            }
            for (k, v) in acc.mul_monomial(&kept).terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    pub fn substitute_map(&self, map: &BTreeMap<Var, Polynomial>) -> Result<Polynomial> {
        self.substitute(&|v| map.get(&v).cloned())
    }

    /// Writes `self = a·v + b` with `v` absent from `a` and `b`, if `v` occurs at most linearly.
    pub fn split_linear(&self, v: Var) -> Option<(Polynomial, Polynomial)> {
        let mut a = Polynomial::zero();
        let mut b = Polynomial::zero();
        for (m, c) in &self.terms {
            match m.exponent(v) {
                0 => b.add_term(m.clone(), c.clone()),
                1 => a.add_term(m.without(v), c.clone()),
                _ => return None,
            }
        }
        Some((a, b))
    }

    pub fn evaluate(&self, field: Field, value: &dyn Fn(Var) -> Result<FieldElement>) -> Result<FieldElement> {
        let mut cache: BTreeMap<Var, FieldElement> = BTreeMap::new();
        let mut total = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_rational(c)?;
            for &(v, e) in &m.0 {
                let x = match cache.get(&v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v)?;
                        if x.field() != field {
                            return Err(Error::FieldMismatch(format!("value of {v} lies in another field")));
                        }
                        cache.insert(v, x.clone());
                        x
                    }
                };
                t = t.mul(&x.pow(e)?)?;
            }
            total = total.add(&t)?;
        }
        Ok(total)
    }

    /// Multiplies by the least common denominator of the coefficients and
    /// clears negative powers, returning a polynomial with integer coefficients.
    pub fn clear_denominators(&self) -> Polynomial {
        let mut lcm = BigInt::one();
        let mut neg: BTreeMap<Var, i32> = BTreeMap::new();
        for (m, c) in &self.terms {
            lcm = num_integer::Integer::lcm(&lcm, c.denom());
            for &(v, e) in &m.0 {
                if e < 0 {
                    let slot = neg.entry(v).or_insert(0);
                    *slot = (*slot).max(-e);
                }
            }
        }
        let shift = Monomial(neg.into_iter().collect());
        self.scale(&BigRational::from_integer(lcm)).mul_monomial(&shift)
    }

    pub fn parse(s: &str) -> Result<Polynomial> {
        parse_polynomial(s)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;

            fn $f(self, other: Polynomial) -> Polynomial {
                (&self).$f(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Polynomial, D::Error> {
        let s = String::deserialize(d)?;
        Polynomial::parse(&s).map_err(serde::de::Error::custom)
    }
}

fn parse_polynomial(s: &str) -> Result<Polynomial> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let chars: Vec<char> = compact.chars().collect();
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, &ch) in chars.iter().enumerate() {
        let sign_here = (ch == '+' || ch == '-') && (i == 0 || chars[i - 1] != '^');
        if sign_here {
            if !current.is_empty() {
                terms.push((negative, std::mem::take(&mut current)));
            } else if i != 0 {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("trailing sign in {s:?}")));
    }
    terms.push((negative, current));
    let mut out = Polynomial::zero();
    for (neg, body) in terms {
        let mut t = Polynomial::int(if neg { -1 } else { 1 });
        for factor in body.split('*') {
            t = &t * &parse_factor(factor)?;
        }
        out = &out + &t;
    }
    Ok(out)
}

fn parse_factor(f: &str) -> Result<Polynomial> {
    let err = || Error::Parse(format!("bad factor {f:?}"));
    let (base, exp) = match f.split_once('^') {
        Some((b, e)) => (b, e.parse::<i32>().map_err(|_| err())?),
        None => (f, 1),
    };
    if let Some(first) = base.chars().next() {
        if first == 'y' || first == 'c' {
            let rest = &base[1..];
            let (i, j) = if let Some(r) = rest.strip_prefix('_') {
                let (a, b) = r.split_once('_').ok_or_else(err)?;
                (a.parse::<usize>().map_err(|_| err())?, b.parse::<usize>().map_err(|_| err())?)
            } else if rest.len() == 2 && rest.chars().all(|c| c.is_ascii_digit()) {
                let d: Vec<usize> = rest.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
                (d[0], d[1])
            } else {
                return Err(err());
            };
            if i <= j || j == 0 {
                return Err(err());
            }
            let r = Root::new(i, j);
            let v = if first == 'y' { Var::Y(r) } else { Var::C(r) };
            return Ok(Polynomial::term(rat(1), Monomial::var(v, exp)));
        }
    }
    let c = match base.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| err())?;
            let b: BigInt = b.parse().map_err(|_| err())?;
            if b.is_zero() {
                return Err(err());
            }
            BigRational::new(a, b)
        }
        None => BigRational::from_integer(base.parse::<BigInt>().map_err(|_| err())?),
    };
    if exp < 0 {
        if c.is_zero() {
            return Err(err());
        }
        return Ok(Polynomial::constant(num_traits::pow(c.recip(), exp.unsigned_abs() as usize)));
    }
    Ok(Polynomial::constant(num_traits::pow(c, exp as usize)))
}

/// A polynomial in the `y` coordinates compiled for fast evaluation over `F_p`.
#[derive(Debug, Clone)]
pub struct PrimePoly {
    p: u64,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl PrimePoly {
    /// `index` maps a root to its slot in the evaluation vector; `c_value` supplies constants.
    pub fn compile(
        poly: &Polynomial,
        p: u64,
        index: &dyn Fn(Root) -> usize,
        c_value: &dyn Fn(Root) -> Result<u64>,
    ) -> Result<PrimePoly> {
        let field = Field::prime(p)?;
        let mut terms = Vec::new();
        for (m, c) in poly.terms() {
            let mut coef = field.from_rational(c)?.residue().unwrap();
            let mut factors = Vec::new();
            for &(v, e) in m.factors() {
                match v {
                    Var::Y(r) => {
                        if e < 0 {
                            return Err(Error::UnsupportedIdealShape(format!("negative power of {v}")));
                        }
                        factors.push((index(r), e as u32));
                    }
                    Var::C(r) => {
                        let x = c_value(r)? % p;
                        let x = if e < 0 {
                            if x == 0 {
                                return Err(Error::InvalidC(format!("{v} must be nonzero")));
                            }
                            inv_mod(x, p)
                        } else {
                            x
                        };
                        coef = mul_mod(coef, pow_mod(x, e.unsigned_abs() as u64, p), p);
                    }
                }
            }
            if coef != 0 {
                terms.push((coef, factors));
            }
        }
        Ok(PrimePoly { p, terms })
    }

    pub fn eval(&self, values: &[u64]) -> u64 {
        let p = self.p;
        let mut total = 0u64;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t = mul_mod(t, pow_mod(values[i], e as u64, p), p);
                if t == 0 {
                    break;
                }
            }
            total = (total + t) % p;
        }
        total
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p = Polynomial::parse("y53*y31 + y52*y21 - 3/2*c31^-1*y42").unwrap();
        let q = Polynomial::parse(&p.to_string()).unwrap();
        assert_eq!(p, q);
        assert_eq!(Polynomial::parse("y_5_3").unwrap(), Polynomial::y(Root::new(5, 3)));
        assert!(Polynomial::parse("y35").is_err());
        assert!(Polynomial::parse("2+").is_err());
    }

    #[test]
    fn laurent_arithmetic() {
        let x = Polynomial::y(Root::new(3, 1));
        let inv = x.inv_term().unwrap();
        assert_eq!(&x * &inv, Polynomial::one());
        let d = Polynomial::parse("y31^2*y21 - y21").unwrap().derivative(Var::y(3, 1));
        assert_eq!(d, Polynomial::parse("2*y31*y21").unwrap());
    }

    #[test]
    fn substitution_and_split() {
        let p = Polynomial::parse("y32*y21 + y31").unwrap();
        let (a, b) = p.split_linear(Var::y(3, 1)).unwrap();
        assert_eq!(a, Polynomial::one());
        assert_eq!(b, Polynomial::parse("y32*y21").unwrap());
        let s = p.substitute(&|v| if v == Var::y(2, 1) { Some(Polynomial::int(2)) } else { None }).unwrap();
        assert_eq!(s, Polynomial::parse("2*y32 + y31").unwrap());
        let q = Polynomial::parse("y31^-1").unwrap();
        assert!(q.substitute(&|_| Some(Polynomial::parse("y21 + 1").unwrap())).is_err());
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = Monomial::var(Var::y(2, 1), 1);
        let b = Monomial::var(Var::y(3, 2), 2);
        assert!(a < b);
        // y21 outranks y32 in the root order
        assert!(Monomial::var(Var::y(3, 2), 1) < a);
    }
}
