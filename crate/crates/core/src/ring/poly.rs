use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::ring::Rational;

pub const NGENS: usize = 4;

/// Generators of the coefficient ring, in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Gen {
    E1,
    E2,
    A1,
    A0,
}

impl Gen {
    pub const ALL: [Gen; NGENS] = [Gen::E1, Gen::E2, Gen::A1, Gen::A0];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Gen::E1 => "E1",
            Gen::E2 => "E2",
            Gen::A1 => "A1",
            Gen::A0 => "A0",
        }
    }

    /// Only `A0` may carry negative exponents.
    pub fn invertible(self) -> bool {
        matches!(self, Gen::A0)
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Gen::ALL.into_iter().find(|g| g.name() == s)
    }
}

/// Per-generator integer degrees. The E's are fixed at 2 and 4; the A's vary by use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grading(pub [i64; NGENS]);

impl Grading {
    /// Ordering/printing grading: `E1 ↦ 2, E2 ↦ 4, A1 ↦ 1, A0 ↦ 1`.
    pub const CANONICAL: Grading = Grading([2, 4, 1, 1]);
    /// Homogeneous grading for the positive lasagna part: `A0` and `E1*A1` both have degree 3,
    /// so `v = A0 - E1*A1/2` is homogeneous and e, f shift degree by -2, +2.
    pub const V_HOMOGENEOUS: Grading = Grading([2, 4, 1, 3]);
    /// Quantum grading of the lasagna generators: `A1 ↦ -2`, `A0 ↦ 0`.
    pub const LASAGNA_QUANTUM: Grading = Grading([2, 4, -2, 0]);
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub [i32; NGENS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NGENS]);

    pub fn new(exps: [i32; NGENS]) -> Result<Self> {
        for g in Gen::ALL {
            if exps[g.index()] < 0 && !g.invertible() {
                return Err(Error::NotLaurent(g.name()));
            }
        }
        Ok(Monomial(exps))
    }

    pub fn gen(g: Gen) -> Self {
        let mut e = [0; NGENS];
        e[g.index()] = 1;
        Monomial(e)
    }

    pub fn e(a: i32, b: i32) -> Self {
        Monomial([a, b, 0, 0])
    }

    pub fn exp(&self, g: Gen) -> i32 {
        self.0[g.index()]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x += y;
        }
        Monomial(e)
    }

    /// Quotient `self / other`, if it stays inside the ring.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = self.0;
        for (x, y) in e.iter_mut().zip(other.0.iter()) {
            *x -= y;
        }
        Monomial::new(e).ok()
    }

    pub fn degree(&self, grading: Grading) -> i64 {
        self.0
            .iter()
            .zip(grading.0.iter())
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// Degree with absolute values of exponents (a filtration degree).
    pub fn abs_degree(&self, grading: Grading) -> i64 {
        self.0
            .iter()
            .zip(grading.0.iter())
            .map(|(&e, &w)| (e as i64).abs() * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Canonical printing order: (filtration degree, exponent vector).
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.abs_degree(Grading::CANONICAL)
            .cmp(&other.abs_degree(Grading::CANONICAL))
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for g in Gen::ALL {
            let e = self.exp(g);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", g.name())?;
            } else {
                write!(f, "{}^{}", g.name(), e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over ℚ in `E1, E2, A1, A0^{±1}`.
///
/// Terms are kept sorted by monomial with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, Rational)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(Monomial::ONE, c)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Rational::from_int(n))
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(m, Rational::one())
    }

    pub fn gen(g: Gen) -> Self {
        Poly::monomial(Monomial::gen(g))
    }

    pub fn e1() -> Self {
        Poly::gen(Gen::E1)
    }

    pub fn e2() -> Self {
        Poly::gen(Gen::E2)
    }

    /// Builds from arbitrary (possibly repeated, possibly zero) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(it: I) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = it.into_iter().collect();
        terms.sort_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
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

    pub fn coeff(&self, m: &Monomial) -> Rational {
        match self.terms.binary_search_by(|(x, _)| x.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// The constant term, if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(x, c)| (x.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Degree of a homogeneous polynomial, `None` for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self, grading: Grading) -> Option<i64> {
        let mut it = self.terms.iter().map(|(m, _)| m.degree(grading));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self, grading: Grading) -> bool {
        self.is_zero() || self.homogeneous_degree(grading).is_some()
    }

    pub fn max_abs_degree(&self, grading: Grading) -> i64 {
        self.terms
            .iter()
            .map(|(m, _)| m.abs_degree(grading))
            .max()
            .unwrap_or(i64::MIN)
    }

    /// Substitutes rational values for the listed generators; others stay symbolic.
    pub fn substitute(&self, values: &[(Gen, Rational)]) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = m.0;
            let mut c = c.clone();
            for (g, v) in values {
                let k = e[g.index()];
                if k != 0 {
                    c *= &v.pow(k);
                    e[g.index()] = 0;
                }
            }
            (Monomial(e), c)
        }))
    }

    /// Sets `E1 = E2 = 0`.
    pub fn mod_e(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(Gen::E1) == 0 && m.exp(Gen::E2) == 0)
                .cloned()
                .collect(),
        }
    }

    /// Evaluates a polynomial in `E1, E2` only.
    pub fn eval_e(&self, e1: &Rational, e2: &Rational) -> Rational {
        let p = self.substitute(&[(Gen::E1, e1.clone()), (Gen::E2, e2.clone())]);
        p.as_constant()
            .expect("eval_e on a polynomial with A-generators")
    }

    /// Replaces each generator by a polynomial (a ring homomorphism on monomials).
    pub fn compose(&self, images: &[Poly; NGENS]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for g in Gen::ALL {
                let k = m.exp(g);
                if k < 0 {
                    panic!("compose does not support negative exponents");
                }
                if k > 0 {
                    t = &t * &images[g.index()].pow(k as u32);
                }
            }
            out += &t;
        }
        out
    }

    /// Terms in canonical printing order.
    pub fn canonical_terms(&self) -> Vec<&(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        v
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { terms: out }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        *self = self.merge(&other.scale(c), false);
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_poly(s)
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.merge(rhs, false)
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.merge(rhs, true)
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, false);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        if rhs.is_zero() {
            return;
        }
        *self = self.merge(rhs, true);
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (m, a) = &self.terms[0];
            let (n, b) = &rhs.terms[0];
            return Poly {
                terms: vec![(m.mul(n), a * b)],
            };
        }
        Poly::from_terms(
            self.terms
                .iter()
                .flat_map(|(m, a)| rhs.terms.iter().map(move |(n, b)| (m.mul(n), a * b))),
        )
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Rational> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Rational) -> Poly {
        self.scale(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `δ = 4E2 − E1²`.
pub fn delta() -> Poly {
    &Poly::e2().scale(&Rational::from_int(4)) - &Poly::e1().pow(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn delta_is_canonical_and_degree_four() {
        let d = delta();
        assert_eq!(d.to_string(), "4*E2 - E1^2");
        assert_eq!(d.homogeneous_degree(Grading::CANONICAL), Some(4));
        assert!(d.eval_e(&Rational::from_int(2), &Rational::from_int(1)).is_zero());
    }

    #[test]
    fn laurent_only_on_a0() {
        assert!(Monomial::new([0, 0, 0, -2]).is_ok());
        assert_eq!(
            Monomial::new([-1, 0, 0, 0]),
            Err(Error::NotLaurent("E1"))
        );
        let x = p("A0^-1");
        assert_eq!(&x * &p("A0"), Poly::one());
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "0",
            "1",
            "-1/2*E1*A1 + A0",
            "E2*A1*A0^-2 - 1/2*E1*A0^-1",
            "E1^2 - 2*E2",
        ] {
            let x = p(s);
            assert_eq!(p(&x.to_string()), x, "{s}");
        }
    }

    #[test]
    fn mod_e_kills_e_terms() {
        assert_eq!(p("E1*A0 + A1 - E2").mod_e(), p("A1"));
    }

    #[test]
    fn homogeneity_detection() {
        assert!(p("E1^2 + E2").is_homogeneous(Grading::CANONICAL));
        assert!(!p("E1 + E2").is_homogeneous(Grading::CANONICAL));
        assert!(p("A0 - 1/2*E1*A1").is_homogeneous(Grading::V_HOMOGENEOUS));
    }
}
