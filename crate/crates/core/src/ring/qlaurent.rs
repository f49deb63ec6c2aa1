use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::ring::Rational;

/// Laurent polynomial in `q` with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QLaurent {
    terms: BTreeMap<i64, Rational>,
}

impl QLaurent {
    pub fn zero() -> Self {
        QLaurent::default()
    }

    pub fn one() -> Self {
        QLaurent::monomial(0, Rational::one())
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QLaurent { terms }
    }

    pub fn from_ints(pairs: &[(i64, i64)]) -> Self {
        let mut out = QLaurent::zero();
        for &(e, c) in pairs {
            out = &out + &QLaurent::monomial(e, Rational::from_int(c));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    fn lowest(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    fn highest(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, e: i64, c: &Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Exact division; fails if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &QLaurent) -> Result<QLaurent> {
        let (dlo, dhi) = match (divisor.lowest(), divisor.highest()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::InexactDivision("division by zero".into())),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = QLaurent::zero();
        while let Some(rhi) = rem.highest() {
            let rlo = rem.lowest().expect("nonempty");
            // Once the remainder spans less than the divisor it cannot be a multiple.
            if rhi - rlo < dhi - dlo {
                return Err(Error::InexactDivision(format!("{self} / {divisor}")));
            }
            let shift = rhi - dhi;
            let c = &rem.coeff(rhi) / &lead;
            quot.add_term(shift, &c);
            for (e, dc) in divisor.terms() {
                rem.add_term(e + shift, &-(dc * &c));
            }
        }
        Ok(quot)
    }
}

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let mut out = QLaurent::zero();
        for (a, x) in self.terms() {
            for (b, y) in rhs.terms() {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (_, true) => write!(f, "q^{e}")?,
                (1, false) => write!(f, "{a}*q")?,
                (_, false) => write!(f, "{a}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QLaurent({self})")
    }
}

/// Balanced quantum integer `[n] = (q^n - q^-n)/(q - q^-1)`.
pub fn qint(n: i64) -> QLaurent {
    let sign = if n < 0 { -1 } else { 1 };
    let n = n.abs();
    let mut out = QLaurent::zero();
    let mut e = n - 1;
    while e >= -(n - 1) && n > 0 {
        out.add_term(e, &Rational::from_int(sign));
        e -= 2;
    }
    out
}

pub fn qfactorial(k: u64) -> QLaurent {
    (1..=k as i64).fold(QLaurent::one(), |acc, i| &acc * &qint(i))
}

/// Quantum binomial `∏_{i=1..a} [m+1-i]/[i]`, computed by exact division.
pub fn qbinom(m: i64, a: u64) -> Result<QLaurent> {
    let mut num = QLaurent::one();
    for i in 1..=a as i64 {
        num = &num * &qint(m + 1 - i);
    }
    num.div_exact(&qfactorial(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), QLaurent::one());
        assert_eq!(qint(3), QLaurent::from_ints(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(qint(-3), -&qint(3));
    }

    #[test]
    fn qint_matches_defining_quotient() {
        // (q^n - q^-n) / (q - q^-1) by long division, independent of the closed sum.
        let denom = QLaurent::from_ints(&[(1, 1), (-1, -1)]);
        for n in -6..=6i64 {
            let num = QLaurent::from_ints(&[(n, 1), (-n, -1)]);
            assert_eq!(num.div_exact(&denom).unwrap(), qint(n), "n={n}");
        }
    }

    #[test]
    fn qbinom_examples() {
        assert_eq!(qbinom(5, 0).unwrap(), QLaurent::one());
        assert_eq!(qbinom(2, 1).unwrap(), QLaurent::from_ints(&[(1, 1), (-1, 1)]));
        assert_eq!(
            qbinom(4, 2).unwrap(),
            QLaurent::from_ints(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)])
        );
    }

    #[test]
    fn inexact_division_is_reported() {
        let r = qint(3).div_exact(&qint(2));
        assert!(matches!(r, Err(Error::InexactDivision(_))));
    }

    #[test]
    fn display() {
        assert_eq!(qint(3).to_string(), "q^2 + 1 + q^-2");
    }
}
