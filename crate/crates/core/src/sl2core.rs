//! sl2 derivations on polynomial algebras: generator tables, Leibniz
//! evaluation, bracket checks and rank-one twists.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::{delta, Gen, Monomial, Poly, Rational};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Sl2 {
    E,
    F,
    H,
}

impl Sl2 {
    pub const ALL: [Sl2; 3] = [Sl2::E, Sl2::F, Sl2::H];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Sl2::E => "e",
            Sl2::F => "f",
            Sl2::H => "h",
        }
    }
}

impl fmt::Display for Sl2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The three defining brackets `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`,
/// as (left, right, result generator, scalar).
pub const BRACKETS: [(Sl2, Sl2, Sl2, i64); 3] = [
    (Sl2::H, Sl2::E, Sl2::E, 2),
    (Sl2::H, Sl2::F, Sl2::F, -2),
    (Sl2::E, Sl2::F, Sl2::H, 1),
];

pub fn bracket_name(x: Sl2, y: Sl2) -> String {
    format!("[{x},{y}]")
}

/// Images of each algebra generator under e, f, h. The action on products is
/// the derivation rule; `h` must act diagonally on generators.
#[derive(Clone, PartialEq, Debug)]
pub struct Sl2ActionSpec {
    images: BTreeMap<Gen, [Poly; 3]>,
    weights: BTreeMap<Gen, i64>,
}

impl Sl2ActionSpec {
    pub fn new(images: BTreeMap<Gen, [Poly; 3]>) -> Result<Self> {
        let mut weights = BTreeMap::new();
        for (g, imgs) in &images {
            let h = &imgs[Sl2::H.index()];
            let x = Poly::gen(*g);
            let w = if h.is_zero() {
                Rational::zero()
            } else {
                match h.terms() {
                    [(m, c)] if *m == Monomial::gen(*g) => c.clone(),
                    _ => return Err(Error::NotDiagonal(format!("h({}) = {h}", g.name()))),
                }
            };
            let w = w
                .to_i64()
                .ok_or_else(|| Error::NotDiagonal(format!("non-integral weight of {x}")))?;
            weights.insert(*g, w);
        }
        Ok(Sl2ActionSpec { images, weights })
    }

    fn table(rows: &[(Gen, &str, &str, &str)]) -> Self {
        let images = rows
            .iter()
            .map(|(g, e, f, h)| {
                let p = |s: &str| s.parse::<Poly>().expect("built-in table");
                (*g, [p(e), p(f), p(h)])
            })
            .collect();
        Sl2ActionSpec::new(images).expect("built-in table is diagonal")
    }

    /// The action on ℚ[E1, E2].
    pub fn base_ring() -> Self {
        Self::table(&[
            (Gen::E1, "-2", "E1^2 - 2*E2", "-2*E1"),
            (Gen::E2, "-E1", "E1*E2", "-4*E2"),
        ])
    }

    /// The action on ℚ[E1, E2][A0^{±1}, A1]; `A0^{-1}` is handled by the derivation rule.
    pub fn lasagna() -> Self {
        Self::table(&[
            (Gen::E1, "-2", "E1^2 - 2*E2", "-2*E1"),
            (Gen::E2, "-E1", "E1*E2", "-4*E2"),
            (Gen::A1, "0", "-1/2*E1*A1", "A1"),
            (Gen::A0, "-A1", "1/2*E1*A0 - E2*A1", "-A0"),
        ])
    }

    pub fn generators(&self) -> impl Iterator<Item = Gen> + '_ {
        self.images.keys().copied()
    }

    pub fn image(&self, g: Sl2, x: Gen) -> Option<&Poly> {
        self.images.get(&x).map(|imgs| &imgs[g.index()])
    }

    /// Replaces one image; used to build negative controls.
    pub fn with_image(mut self, g: Sl2, x: Gen, img: Poly) -> Self {
        if let Some(imgs) = self.images.get_mut(&x) {
            imgs[g.index()] = img;
        }
        self
    }

    pub fn weight_of(&self, m: &Monomial) -> Result<i64> {
        let mut w = 0;
        for g in Gen::ALL {
            let k = m.exp(g);
            if k != 0 {
                let gw = self
                    .weights
                    .get(&g)
                    .ok_or_else(|| Error::UnknownGenerator(g.name().into()))?;
                w += gw * k as i64;
            }
        }
        Ok(w)
    }

    /// Image of a monomial under `g`, by the derivation rule.
    pub fn apply_monomial(&self, g: Sl2, m: &Monomial) -> Result<Poly> {
        if g == Sl2::H {
            return Ok(Poly::term(*m, Rational::from_int(self.weight_of(m)?)));
        }
        let mut out = Poly::zero();
        for x in Gen::ALL {
            let k = m.exp(x);
            if k == 0 {
                continue;
            }
            let img = self
                .image(g, x)
                .ok_or_else(|| Error::UnknownGenerator(x.name().into()))?;
            let mut rest = m.0;
            rest[x.index()] -= 1;
            out.add_scaled(&img.mul_monomial(&Monomial(rest)), &Rational::from_int(k as i64));
        }
        Ok(out)
    }

    pub fn apply(&self, g: Sl2, x: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in x.terms() {
            out.add_scaled(&self.apply_monomial(g, m)?, c);
        }
        Ok(out)
    }

    pub fn iterate(&self, g: Sl2, v: &Poly, r: usize) -> Result<Poly> {
        let mut x = v.clone();
        for _ in 0..r {
            if x.is_zero() {
                break;
            }
            x = self.apply(g, &x)?;
        }
        Ok(x)
    }

    pub fn iterate_f(&self, v: &Poly, r: usize) -> Result<Poly> {
        self.iterate(Sl2::F, v, r)
    }

    /// Checks the three brackets on every sample; failures are returned as data.
    pub fn check_bracket(&self, samples: &[Poly]) -> Result<BracketReport> {
        let mut failures = Vec::new();
        let mut checked = 0;
        for x in samples {
            for (a, b, c, k) in BRACKETS {
                let lhs = &self.apply(a, &self.apply(b, x)?)? - &self.apply(b, &self.apply(a, x)?)?;
                let rhs = self.apply(c, x)?.scale(&Rational::from_int(k));
                checked += 1;
                if lhs != rhs {
                    failures.push(BracketFailure {
                        sample: x.to_string(),
                        bracket: bracket_name(a, b),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        Ok(BracketReport { checked, failures })
    }

    /// Declarative fixture format, one generator per line:
    /// `E1: e = -2; f = E1^2 - 2*E2; h = -2*E1`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (g, imgs) in &self.images {
            s.push_str(&format!(
                "{}: e = {}; f = {}; h = {}\n",
                g.name(),
                imgs[0],
                imgs[1],
                imgs[2]
            ));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut images = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                pos: lineno,
                msg: format!("line {}: {msg}", lineno + 1),
            };
            let (name, rest) = line.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let g = Gen::from_name(name.trim()).ok_or_else(|| Error::UnknownGenerator(name.trim().into()))?;
            let mut imgs = [Poly::zero(), Poly::zero(), Poly::zero()];
            let mut seen = [false; 3];
            for part in rest.split(';') {
                let (key, val) = part.split_once('=').ok_or_else(|| bad("missing `=`"))?;
                let i = match key.trim() {
                    "e" => 0,
                    "f" => 1,
                    "h" => 2,
                    k => return Err(bad(&format!("unknown operator `{k}`"))),
                };
                imgs[i] = val.trim().parse()?;
                seen[i] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(bad("each generator needs e, f and h images"));
            }
            images.insert(g, imgs);
        }
        Sl2ActionSpec::new(images)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BracketFailure {
    pub sample: String,
    pub bracket: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BracketReport {
    pub checked: usize,
    pub failures: Vec<BracketFailure>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Rank-one twist `τ(e) = 0, τ(f) = a·E1, τ(h) = -2a`, together with a q-shift.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TwistData {
    pub a: Rational,
    pub q_shift: i64,
}

impl TwistData {
    pub fn new(a: Rational, q_shift: i64) -> Self {
        TwistData { a, q_shift }
    }

    pub fn zero() -> Self {
        TwistData::new(Rational::zero(), 0)
    }

    pub fn tau(&self, g: Sl2) -> Poly {
        match g {
            Sl2::E => Poly::zero(),
            Sl2::F => Poly::e1().scale(&self.a),
            Sl2::H => Poly::constant(-(&self.a * &Rational::from_int(2))),
        }
    }
}

/// Flatness `τ([x,y]) = x·τ(y) − y·τ(x)` for the three brackets.
pub fn check_flat_twist(t: &TwistData, base: &Sl2ActionSpec) -> Result<bool> {
    for (x, y, z, k) in BRACKETS {
        let lhs = t.tau(z).scale(&Rational::from_int(k));
        let rhs = &base.apply(x, &t.tau(y))? - &base.apply(y, &t.tau(x))?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `δ^j`, the highest-weight vectors of ℚ[E1, E2].
pub fn delta_pow(j: u32) -> Poly {
    delta().pow(j)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn generator_examples() {
        let spec = Sl2ActionSpec::base_ring();
        assert_eq!(spec.apply(Sl2::E, &p("E1")).unwrap(), p("-2"));
        assert_eq!(spec.apply(Sl2::F, &p("E2")).unwrap(), p("E1*E2"));
        let d = delta();
        assert_eq!(spec.apply(Sl2::F, &d).unwrap(), &p("2*E1") * &d);
        assert!(spec.apply(Sl2::E, &d).unwrap().is_zero());
    }

    #[test]
    fn iterate_f_examples() {
        let spec = Sl2ActionSpec::base_ring();
        assert_eq!(spec.iterate_f(&delta(), 1).unwrap(), &p("2*E1") * &delta());
        assert!(spec.iterate_f(&Poly::one(), 5).unwrap().is_zero());
        assert_eq!(spec.iterate_f(&p("E1"), 2).unwrap(), p("2*E1^3 - 6*E1*E2"));
        assert_eq!(spec.iterate_f(&p("E1"), 0).unwrap(), p("E1"));
    }

    #[test]
    fn unknown_generator_is_an_error() {
        let spec = Sl2ActionSpec::base_ring();
        assert!(matches!(
            spec.apply(Sl2::E, &p("A1")),
            Err(Error::UnknownGenerator(_))
        ));
    }

    #[test]
    fn brackets_hold_and_corruption_is_caught() {
        let spec = Sl2ActionSpec::base_ring();
        let samples = vec![p("E1"), p("E2"), p("E1*E2"), delta().pow(3)];
        assert!(spec.check_bracket(&samples).unwrap().passed());
        let unit = spec.check_bracket(&[Poly::one()]).unwrap();
        assert!(unit.passed());
        assert_eq!(unit.checked, 3);

        let bad = spec.with_image(Sl2::F, Gen::E2, p("E2^2"));
        let rep = bad.check_bracket(&[p("E2")]).unwrap();
        assert!(rep.failures.iter().any(|f| f.bracket == "[e,f]"));
    }

    #[test]
    fn non_diagonal_h_rejected() {
        let mut images = BTreeMap::new();
        images.insert(Gen::E1, [p("0"), p("0"), p("E2")]);
        assert!(matches!(
            Sl2ActionSpec::new(images),
            Err(Error::NotDiagonal(_))
        ));
    }

    #[test]
    fn flat_twists() {
        let base = Sl2ActionSpec::base_ring();
        for a in [Rational::zero(), Rational::new(-3, 2), Rational::from_int(7)] {
            assert!(check_flat_twist(&TwistData::new(a, 0), &base).unwrap());
        }
    }

    #[test]
    fn text_format_round_trip() {
        let spec = Sl2ActionSpec::lasagna();
        let text = spec.to_text();
        assert_eq!(Sl2ActionSpec::from_text(&text).unwrap(), spec);
        assert!(Sl2ActionSpec::from_text("E1: e = 0; f = 0").is_err());
    }

    #[test]
    fn laurent_inverse_by_derivation() {
        let spec = Sl2ActionSpec::lasagna();
        let inv = p("A0^-1");
        assert_eq!(spec.apply(Sl2::E, &inv).unwrap(), p("A1*A0^-2"));
        assert_eq!(
            spec.apply(Sl2::F, &inv).unwrap(),
            p("E2*A1*A0^-2 - 1/2*E1*A0^-1")
        );
        assert_eq!(spec.apply(Sl2::H, &inv).unwrap(), inv);
    }
}
