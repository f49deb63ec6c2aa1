//! The `(a1, a2)`-parameterized sl₂ action on diagrams, on words (by the
//! Leibniz rule over primitive occurrences) and on evaluated matrices (by
//! forward-mode jets).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use serde::Serialize;

use super::expr::{Expr, Macro};
use super::word::{DiagramWord, WordComb};
use crate::error::{Error, Result};
use crate::ring::{Poly, Rational};
use crate::sl2core::{Sl2, Sl2ActionSpec};
use crate::statespace::{PolyMatrix, Prim};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DtlParams {
    pub a1: Rational,
    pub a2: Rational,
}

impl DtlParams {
    pub fn new(a1: Rational, a2: Rational) -> Self {
        DtlParams { a1, a2 }
    }

    pub fn from_ints(a1: i64, a2: i64) -> Self {
        DtlParams::new(a1.into(), a2.into())
    }

    pub fn zero() -> Self {
        DtlParams::from_ints(0, 0)
    }
}

impl fmt::Display for DtlParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a1, self.a2)
    }
}

impl FromStr for DtlParams {
    type Err = Error;

    /// `"a1,a2"` with rationals written as `p/q`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Invalid(format!("expected `a1,a2`, got `{s}`")));
        }
        Ok(DtlParams::new(parts[0].parse()?, parts[1].parse()?))
    }
}

/// Images of `dot`, `cup`, `cap` under `e`, `f`, `h`, plus the base-ring
/// action on coefficients. The standard table realizes the action for given
/// parameters; individual entries can be overridden to build controls.
#[derive(Clone, Debug)]
pub struct DtlAction {
    params: DtlParams,
    images: [[WordComb; 3]; 3],
    base: Sl2ActionSpec,
    standard: bool,
}

fn prim_slot(p: Prim) -> Option<usize> {
    match p {
        Prim::Id => None,
        Prim::Dot => Some(0),
        Prim::Cup => Some(1),
        Prim::Cap => Some(2),
    }
}

impl DtlAction {
    pub fn new(params: DtlParams) -> Self {
        let w = |s: &[Vec<Prim>], src: usize| DiagramWord::from_slices(src, s.to_vec()).expect("local word");
        let c = |r: &Rational| Poly::constant(r.clone());
        let e1 = Poly::e1();
        let (a1, a2) = (&params.a1, &params.a2);
        let dot = w(&[vec![Prim::Dot]], 1);
        let dot_dot = w(&[vec![Prim::Dot], vec![Prim::Dot]], 1);
        let cup = w(&[vec![Prim::Cup]], 0);
        let cap = w(&[vec![Prim::Cap]], 2);
        let dotted_cup = w(&[vec![Prim::Cup], vec![Prim::Dot, Prim::Id]], 0);
        let dotted_cap = w(&[vec![Prim::Dot, Prim::Id], vec![Prim::Cap]], 2);
        let two_a2 = a2 * &Rational::from_int(2);
        let comb = |terms: Vec<(Poly, DiagramWord)>, s: usize, t: usize| {
            let mut out = WordComb::zero(s, t);
            for (x, w) in terms {
                out.add_term(x, w);
            }
            out
        };
        let images = [
            [
                WordComb::term(Poly::int(-1), DiagramWord::identity(1)),
                WordComb::word(dot_dot),
                WordComb::term(Poly::int(-2), dot),
            ],
            [
                WordComb::zero(0, 2),
                comb(
                    vec![(-c(a1), dotted_cup), (-(&e1 * &c(a2)), cup.clone())],
                    0,
                    2,
                ),
                WordComb::term(c(&(a1 + &two_a2)), cup),
            ],
            [
                WordComb::zero(2, 0),
                comb(vec![(c(a1), dotted_cap), (&e1 * &c(a2), cap.clone())], 2, 0),
                WordComb::term(-c(&(a1 + &two_a2)), cap),
            ],
        ];
        DtlAction {
            params,
            images,
            base: Sl2ActionSpec::base_ring(),
            standard: true,
        }
    }

    pub fn params(&self) -> &DtlParams {
        &self.params
    }

    pub fn base(&self) -> &Sl2ActionSpec {
        &self.base
    }

    pub fn is_standard(&self) -> bool {
        self.standard
    }

    pub fn image(&self, g: Sl2, p: Prim) -> WordComb {
        match prim_slot(p) {
            Some(i) => self.images[i][g.index()].clone(),
            None => WordComb::zero(1, 1),
        }
    }

    /// Overrides one generator image; used for negative controls.
    pub fn with_image(mut self, g: Sl2, p: Prim, img: WordComb) -> Result<Self> {
        let slot = prim_slot(p).ok_or_else(|| Error::Invalid("id has no image".into()))?;
        if (img.source(), img.target()) != p.arity() {
            return Err(Error::Dimension(format!("image of `{}` has wrong arity", p.name())));
        }
        self.images[slot][g.index()] = img;
        self.standard = false;
        Ok(self)
    }

    /// Word-level action: Leibniz over primitive occurrences and coefficients.
    pub fn act(&self, g: Sl2, w: &WordComb) -> Result<WordComb> {
        let mut out = WordComb::zero(w.source(), w.target());
        for (word, c) in w.terms() {
            let dc = self.base.apply(g, c)?;
            out.add_term(dc, word.clone());
            for (s, j, p) in word.occurrences() {
                let img = &self.images[prim_slot(p).expect("non-identity")][g.index()];
                for (local, x) in img.terms() {
                    out.add_term(x * c, word.splice(s, j, local)?);
                }
            }
        }
        Ok(out)
    }

    /// Applies a word of generators right to left: `act_seq([e, f], w) = e(f(w))`.
    pub fn act_seq(&self, gs: &[Sl2], w: &WordComb) -> Result<WordComb> {
        gs.iter().rev().try_fold(w.clone(), |acc, g| self.act(*g, &acc))
    }
}

/// Expands an expression into a formal combination of words. Projector
/// macros grow quickly, so the expansion is capped at `limit` terms.
pub fn expand(e: &Expr, limit: usize) -> Result<WordComb> {
    let check = |c: WordComb| {
        if c.len() > limit {
            Err(Error::ExpansionTooLarge {
                terms: c.len(),
                limit,
            })
        } else {
            Ok(c)
        }
    };
    match e {
        Expr::Prim(p) => Ok(WordComb::prim(*p)),
        Expr::Identity(n) => Ok(WordComb::identity(*n)),
        Expr::Macro(m) => expand(&m.body(), limit),
        Expr::Scale(c, x) => Ok(expand(x, limit)?.scale(c)),
        Expr::Sum(a, b) => check(expand(a, limit)?.add(&expand(b, limit)?)?),
        Expr::Stack(a, b) => check(expand(a, limit)?.then(&expand(b, limit)?)?),
        Expr::Tensor(a, b) => check(expand(a, limit)?.tensor(&expand(b, limit)?)),
    }
}

/// The image of a jet's value under one generator. Most derivatives met in
/// practice are scalar multiples of the value, and keeping them symbolic
/// avoids large products that would only cancel.
#[derive(Clone, Debug)]
pub enum Deriv {
    /// `p · value`; `p = 0` is the zero derivative.
    Scalar(Poly),
    Matrix(PolyMatrix),
}

impl Deriv {
    pub fn zero() -> Deriv {
        Deriv::Scalar(Poly::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Deriv::Scalar(p) => p.is_zero(),
            Deriv::Matrix(m) => m.is_zero(),
        }
    }

    fn materialize(&self, value: &PolyMatrix) -> PolyMatrix {
        match self {
            Deriv::Scalar(p) if p.is_zero() => PolyMatrix::zero(value.src(), value.tgt()),
            Deriv::Scalar(p) => value.scale(p),
            Deriv::Matrix(m) => m.clone(),
        }
    }

    fn matrix(m: PolyMatrix) -> Deriv {
        if m.is_zero() {
            Deriv::zero()
        } else {
            Deriv::Matrix(m)
        }
    }
}

/// A matrix together with its images under `e`, `f`, `h`.
#[derive(Clone, Debug)]
pub struct Jet {
    pub value: PolyMatrix,
    pub d: [Deriv; 3],
}

impl Jet {
    pub fn constant(value: PolyMatrix) -> Jet {
        Jet {
            value,
            d: [Deriv::zero(), Deriv::zero(), Deriv::zero()],
        }
    }

    pub fn derivative(&self, g: Sl2) -> PolyMatrix {
        self.d[g.index()].materialize(&self.value)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &Jet) -> Result<Jet> {
        let value = next.value.compose(&self.value)?;
        let mut d = [Deriv::zero(), Deriv::zero(), Deriv::zero()];
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = match (&self.d[k], &next.d[k]) {
                (Deriv::Scalar(p), Deriv::Scalar(q)) => Deriv::Scalar(p + q),
                (a, b) => {
                    let mut m = PolyMatrix::zero(value.src(), value.tgt());
                    match a {
                        Deriv::Scalar(p) if !p.is_zero() => m = m.add(&value.scale(p))?,
                        Deriv::Matrix(x) => m = m.add(&next.value.compose(x)?)?,
                        _ => {}
                    }
                    match b {
                        Deriv::Scalar(q) if !q.is_zero() => m = m.add(&value.scale(q))?,
                        Deriv::Matrix(y) => m = m.add(&y.compose(&self.value)?)?,
                        _ => {}
                    }
                    Deriv::matrix(m)
                }
            };
        }
        Ok(Jet { value, d })
    }

    pub fn tensor(&self, right: &Jet) -> Jet {
        let value = self.value.tensor(&right.value);
        let d = std::array::from_fn(|k| match (&self.d[k], &right.d[k]) {
            (Deriv::Scalar(p), Deriv::Scalar(q)) => Deriv::Scalar(p + q),
            (a, b) => {
                let x = a.materialize(&self.value).tensor(&right.value);
                let y = self.value.tensor(&b.materialize(&right.value));
                Deriv::matrix(x.add(&y).expect("same shape"))
            }
        });
        Jet { value, d }
    }

    pub fn add(&self, other: &Jet) -> Result<Jet> {
        let value = self.value.add(&other.value)?;
        let mut d = [Deriv::zero(), Deriv::zero(), Deriv::zero()];
        for (k, slot) in d.iter_mut().enumerate() {
            *slot = match (&self.d[k], &other.d[k]) {
                (Deriv::Scalar(p), Deriv::Scalar(q)) if p == q => Deriv::Scalar(p.clone()),
                (a, b) => Deriv::matrix(a.materialize(&self.value).add(&b.materialize(&other.value))?),
            };
        }
        Ok(Jet { value, d })
    }

    pub fn scale(&self, c: &Poly, base: &Sl2ActionSpec) -> Result<Jet> {
        let value = self.value.scale(c);
        let mut d = [Deriv::zero(), Deriv::zero(), Deriv::zero()];
        for g in Sl2::ALL {
            let k = g.index();
            let dc = base.apply(g, c)?;
            d[k] = match &self.d[k] {
                Deriv::Scalar(p) if dc.is_zero() => Deriv::Scalar(p.clone()),
                Deriv::Scalar(p) => Deriv::matrix(self.value.scale(&(&(p * c) + &dc))),
                Deriv::Matrix(m) => Deriv::matrix(m.scale(c).add(&self.value.scale(&dc))?),
            };
        }
        Ok(Jet { value, d })
    }

    pub fn embed(&self, left: usize, right: usize) -> Jet {
        Jet {
            value: self.value.embed(left, right),
            d: std::array::from_fn(|k| match &self.d[k] {
                Deriv::Scalar(p) => Deriv::Scalar(p.clone()),
                Deriv::Matrix(m) => Deriv::Matrix(m.embed(left, right)),
            }),
        }
    }
}

type JetCache = RwLock<HashMap<(Macro, DtlParams), Arc<Jet>>>;

fn macro_cache() -> &'static JetCache {
    static CACHE: OnceLock<JetCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn value_cache() -> &'static RwLock<HashMap<Macro, Arc<PolyMatrix>>> {
    static CACHE: OnceLock<RwLock<HashMap<Macro, Arc<PolyMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Evaluates expressions to jets. Macro jets are memoized per instance and,
/// for standard action tables, in a process-wide cache.
pub struct Evaluator<'a> {
    action: &'a DtlAction,
    local: HashMap<Macro, Arc<Jet>>,
    scalar_local: HashMap<Macro, Option<[Poly; 3]>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(action: &'a DtlAction) -> Self {
        Evaluator {
            action,
            local: HashMap::new(),
            scalar_local: HashMap::new(),
        }
    }

    pub fn action(&self) -> &DtlAction {
        self.action
    }

    pub fn prim_jet(&self, p: Prim) -> Jet {
        let own = DiagramWord::prim(p);
        let d = std::array::from_fn(|k| {
            let img = self.action.image(Sl2::ALL[k], p);
            if img.terms().all(|(w, _)| *w == own) {
                Deriv::Scalar(img.terms().fold(Poly::zero(), |a, (_, c)| &a + c))
            } else {
                Deriv::matrix(img.evaluate())
            }
        });
        Jet { value: p.matrix(), d }
    }

    pub fn macro_jet(&mut self, m: Macro) -> Result<Arc<Jet>> {
        if let Some(j) = self.local.get(&m) {
            return Ok(j.clone());
        }
        let key = (m, self.action.params.clone());
        if self.action.standard {
            if let Some(j) = macro_cache().read().expect("cache lock").get(&key) {
                return Ok(j.clone());
            }
        }
        // Values do not depend on the action. When every derivative is known
        // to stay a scalar multiple of the value, the cached value suffices.
        let cached_value = value_cache().read().expect("cache lock").get(&m).cloned();
        let j = match (cached_value, self.scalar_derivs(&Expr::Macro(m))?) {
            (Some(v), Some(d)) => Arc::new(Jet {
                value: (*v).clone(),
                d: d.map(Deriv::Scalar),
            }),
            _ => {
                let j = Arc::new(self.jet(&m.body())?);
                value_cache()
                    .write()
                    .expect("cache lock")
                    .insert(m, Arc::new(j.value.clone()));
                j
            }
        };
        if self.action.standard {
            macro_cache()
                .write()
                .expect("cache lock")
                .insert(key, j.clone());
        }
        self.local.insert(m, j.clone());
        Ok(j)
    }

    /// The derivative coefficients when jet evaluation of `e` keeps every
    /// derivative symbolic, mirroring the rules in [`Jet`].
    pub fn scalar_derivs(&mut self, e: &Expr) -> Result<Option<[Poly; 3]>> {
        let add = |a: [Poly; 3], b: [Poly; 3]| -> [Poly; 3] { std::array::from_fn(|k| &a[k] + &b[k]) };
        Ok(match e {
            Expr::Prim(p) => {
                let own = DiagramWord::prim(*p);
                let mut out = [Poly::zero(), Poly::zero(), Poly::zero()];
                for g in Sl2::ALL {
                    let img = self.action.image(g, *p);
                    if !img.terms().all(|(w, _)| *w == own) {
                        return Ok(None);
                    }
                    out[g.index()] = img.terms().fold(Poly::zero(), |a, (_, c)| &a + c);
                }
                Some(out)
            }
            Expr::Identity(_) => Some([Poly::zero(), Poly::zero(), Poly::zero()]),
            Expr::Macro(m) => {
                if let Some(s) = self.scalar_local.get(m) {
                    return Ok(s.clone());
                }
                let s = self.scalar_derivs(&m.body())?;
                self.scalar_local.insert(*m, s.clone());
                s
            }
            Expr::Scale(c, x) => {
                for g in Sl2::ALL {
                    if !self.action.base.apply(g, c)?.is_zero() {
                        return Ok(None);
                    }
                }
                self.scalar_derivs(x)?
            }
            Expr::Sum(a, b) => match (self.scalar_derivs(a)?, self.scalar_derivs(b)?) {
                (Some(x), Some(y)) if x == y => Some(x),
                _ => None,
            },
            Expr::Stack(a, b) | Expr::Tensor(a, b) => match (self.scalar_derivs(a)?, self.scalar_derivs(b)?) {
                (Some(x), Some(y)) => Some(add(x, y)),
                _ => None,
            },
        })
    }

    pub fn jet(&mut self, e: &Expr) -> Result<Jet> {
        match e {
            Expr::Prim(p) => Ok(self.prim_jet(*p)),
            Expr::Identity(n) => Ok(Jet::constant(PolyMatrix::identity(*n))),
            Expr::Macro(m) => Ok((*self.macro_jet(*m)?).clone()),
            Expr::Scale(c, x) => self.jet(x)?.scale(c, &self.action.base),
            Expr::Sum(a, b) => self.jet(a)?.add(&self.jet(b)?),
            Expr::Stack(a, b) => self.jet(a)?.then(&self.jet(b)?),
            Expr::Tensor(a, b) => {
                // Identity factors are common; embedding avoids a full Kronecker product.
                match (&**a, &**b) {
                    (Expr::Identity(n), _) => Ok(self.jet(b)?.embed(*n, 0)),
                    (_, Expr::Identity(n)) => Ok(self.jet(a)?.embed(0, *n)),
                    _ => Ok(self.jet(a)?.tensor(&self.jet(b)?)),
                }
            }
        }
    }

    pub fn value(&mut self, e: &Expr) -> Result<PolyMatrix> {
        Ok(self.jet(e)?.value)
    }
}

/// Evaluates an expression with the standard action at `(0,0)`; only the value
/// is used, so the parameters are irrelevant.
pub fn evaluate_expr(e: &Expr) -> Result<PolyMatrix> {
    let action = DtlAction::new(DtlParams::zero());
    Evaluator::new(&action).value(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dtl::expr::parse_expr;

    fn words(s: &str) -> WordComb {
        expand(&parse_expr(s).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn h_on_dot() {
        let a = DtlAction::new(DtlParams::from_ints(3, 5));
        let out = a.act(Sl2::H, &words("dot")).unwrap();
        assert_eq!(out, words("-2*dot"));
    }

    #[test]
    fn dot_squared_evaluates() {
        assert_eq!(words("dot ; dot").evaluate(), words("E1*dot - E2*id").evaluate());
    }

    #[test]
    fn act_e_on_p2_vanishes() {
        for params in [DtlParams::from_ints(0, 0), DtlParams::from_ints(1, 0), DtlParams::from_ints(-1, 2)] {
            let a = DtlAction::new(params);
            let p2 = words("jw(2)");
            assert!(a.act(Sl2::E, &p2).unwrap().evaluate().is_zero());
            assert!(a.act(Sl2::H, &p2).unwrap().evaluate().is_zero());
        }
    }

    #[test]
    fn jets_match_word_action() {
        let a = DtlAction::new(DtlParams::new(Rational::one(), Rational::new(1, 2)));
        for s in ["jw(3)", "u(1)", "d(3)", "z(3) ; s(1,3)", "E1*(cap ; cup) - dot|dot"] {
            let e = parse_expr(s).unwrap();
            let w = expand(&e, 100_000).unwrap();
            let j = Evaluator::new(&a).jet(&e).unwrap();
            assert_eq!(j.value, w.evaluate(), "{s}");
            for g in Sl2::ALL {
                assert_eq!(j.derivative(g), a.act(g, &w).unwrap().evaluate(), "{s} {g}");
            }
        }
    }

    #[test]
    fn override_marks_nonstandard() {
        let a = DtlAction::new(DtlParams::zero())
            .with_image(Sl2::F, Prim::Dot, WordComb::zero(1, 1))
            .unwrap();
        assert!(!a.is_standard());
        assert!(a.act(Sl2::F, &words("dot")).unwrap().is_zero());
    }

    #[test]
    fn params_parse() {
        let p: DtlParams = "1,-1/2".parse().unwrap();
        assert_eq!(p, DtlParams::new(Rational::one(), Rational::new(-1, 2)));
        assert!("1".parse::<DtlParams>().is_err());
    }
}
