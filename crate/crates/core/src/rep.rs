//! Truncated sl₂-modules with monomial bases: weight spaces, highest-weight
//! vectors, classification of cyclic highest-weight modules, decomposition
//! claims and the truncated Zuckerman functor.
//!
//! Elements are polynomials, and the action is computed exactly on any
//! monomial. Truncation only bounds which basis vectors are enumerated.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dtl::Status;
use crate::error::{Error, Result};
use crate::linalg::{kernel, Eliminator, SparseVec};
use crate::ring::{Gen, Grading, Monomial, Poly, Rational};
use crate::sl2core::{Sl2, Sl2ActionSpec};

/// How `e`, `f`, `h` act on basis monomials.
#[derive(Clone, Debug)]
pub enum ModuleAction {
    /// A derivation action on polynomials.
    Derivation(Sl2ActionSpec),
    /// `ℚ[E1,E2]·w` with `e(w) = 0`, `f(w) = c·E1·w`, `h(w) = top·w`; the
    /// basis monomial `μ` stands for `μ·w`.
    Twisted { c: Rational, top: i64 },
    /// Explicit images of finitely many basis monomials.
    Table(BTreeMap<Monomial, [Poly; 3]>),
}

/// Which weight spaces are fully enumerated at a given depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Completeness {
    All,
    /// Weights `≥ offset − depth`.
    Above(i64),
    /// Weight spaces are infinite; every one is partial.
    Partial,
}

#[derive(Clone, Debug)]
pub struct TruncatedModule {
    pub name: String,
    pub action: ModuleAction,
    pub depth: i64,
    pub completeness: Completeness,
    basis: Vec<Monomial>,
    index: BTreeSet<Monomial>,
}

/// One row of an action table.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub source: String,
    pub image: Poly,
    pub leaves_truncation: bool,
}

fn coords(p: &Poly) -> SparseVec<Monomial> {
    p.terms().iter().cloned().collect()
}

fn combine(basis: &[Poly], c: &SparseVec<usize>) -> Poly {
    let mut out = Poly::zero();
    for (i, x) in c {
        out.add_scaled(&basis[*i], x);
    }
    out
}

/// Monomials `E1^a E2^b A1^m A0^i` of canonical filtration degree at most
/// `depth`, using only the generators present in `spec`.
fn monomials_to(depth: i64, spec: &Sl2ActionSpec) -> Vec<Monomial> {
    let has = |g: Gen| spec.generators().any(|x| x == g);
    let a1_max = if has(Gen::A1) { depth } else { 0 };
    let a0_max = if has(Gen::A0) { depth } else { 0 };
    let mut out = Vec::new();
    for b in 0..=depth / 4 {
        for a in 0..=(depth - 4 * b) / 2 {
            let rest = depth - 4 * b - 2 * a;
            for m in 0..=rest.min(a1_max) {
                let k = (rest - m).min(a0_max);
                for i in -k..=k {
                    out.push(Monomial([a as i32, b as i32, m as i32, i as i32]));
                }
            }
        }
    }
    out
}

impl TruncatedModule {
    fn with_basis(name: &str, action: ModuleAction, depth: i64, completeness: Completeness, basis: Vec<Monomial>) -> Self {
        let mut basis = basis;
        basis.sort_by(|a, b| a.canonical_cmp(b));
        let index = basis.iter().cloned().collect();
        TruncatedModule {
            name: name.into(),
            action,
            depth,
            completeness,
            basis,
            index,
        }
    }

    /// The span of the monomials selected by `member`, acted on by `spec`.
    pub fn polynomial(
        name: &str,
        spec: Sl2ActionSpec,
        depth: i64,
        completeness: Completeness,
        member: impl Fn(&Monomial) -> bool,
    ) -> Self {
        let basis = monomials_to(depth, &spec).into_iter().filter(|m| member(m)).collect();
        Self::with_basis(name, ModuleAction::Derivation(spec), depth, completeness, basis)
    }

    /// `ℚ[E1,E2]·w` with `f(w) = c·E1·w` and `h(w) = top·w`, to E-degree `depth`.
    pub fn twisted(name: &str, c: Rational, top: i64, depth: i64) -> Self {
        let basis = monomials_to(depth, &Sl2ActionSpec::base_ring());
        Self::with_basis(name, ModuleAction::Twisted { c, top }, depth, Completeness::Above(top), basis)
    }

    /// A finite module from explicit images; `h` must be diagonal.
    pub fn table(name: &str, images: BTreeMap<Monomial, [Poly; 3]>) -> Result<Self> {
        let basis: Vec<Monomial> = images.keys().cloned().collect();
        let m = Self::with_basis(name, ModuleAction::Table(images), 0, Completeness::All, basis);
        m.weight_decompose()?;
        Ok(m)
    }

    /// `L(n)` on the basis `x_k = A1^k ↔ f^k(v)`, `0 ≤ k ≤ n`.
    pub fn simple(n: usize) -> Self {
        let x = |k: usize| Monomial([0, 0, k as i32, 0]);
        let images = (0..=n)
            .map(|k| {
                let e = if k == 0 {
                    Poly::zero()
                } else {
                    Poly::term(x(k - 1), Rational::from_int((k * (n - k + 1)) as i64))
                };
                let f = if k == n { Poly::zero() } else { Poly::monomial(x(k + 1)) };
                let h = Poly::term(x(k), Rational::from_int(n as i64 - 2 * k as i64));
                (x(k), [e, f, h])
            })
            .collect();
        Self::table(&format!("L({n})"), images).expect("simple module is diagonal")
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        p.terms().iter().all(|(m, _)| self.index.contains(m))
    }

    pub fn degree(&self, m: &Monomial) -> i64 {
        match self.action {
            ModuleAction::Table(_) => 0,
            _ => m.abs_degree(Grading::CANONICAL),
        }
    }

    pub fn filtration_degree(&self, p: &Poly) -> i64 {
        p.terms().iter().map(|(m, _)| self.degree(m)).max().unwrap_or(0)
    }

    /// Lowest weight whose weight space is complete at `depth`.
    pub fn complete_from(&self, depth: i64) -> Option<i64> {
        match self.completeness {
            Completeness::All => Some(i64::MIN),
            Completeness::Above(o) => Some(o - depth),
            Completeness::Partial => None,
        }
    }

    fn base() -> &'static Sl2ActionSpec {
        static B: std::sync::OnceLock<Sl2ActionSpec> = std::sync::OnceLock::new();
        B.get_or_init(Sl2ActionSpec::base_ring)
    }

    pub fn act_monomial(&self, g: Sl2, m: &Monomial) -> Result<Poly> {
        match &self.action {
            ModuleAction::Derivation(spec) => spec.apply_monomial(g, m),
            ModuleAction::Twisted { c, top } => {
                let d = Self::base().apply_monomial(g, m)?;
                let own = Poly::monomial(*m);
                Ok(match g {
                    Sl2::E => d,
                    Sl2::F => &d + &(&Poly::e1() * &own).scale(c),
                    Sl2::H => &d + &own.scale(&Rational::from_int(*top)),
                })
            }
            ModuleAction::Table(t) => t
                .get(m)
                .map(|imgs| imgs[g.index()].clone())
                .ok_or_else(|| Error::Invalid(format!("{m} is not a basis vector of {}", self.name))),
        }
    }

    pub fn act(&self, g: Sl2, p: &Poly) -> Result<Poly> {
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            out.add_scaled(&self.act_monomial(g, m)?, c);
        }
        Ok(out)
    }

    pub fn iterate(&self, g: Sl2, p: &Poly, r: usize) -> Result<Poly> {
        let mut v = p.clone();
        for _ in 0..r {
            if v.is_zero() {
                break;
            }
            v = self.act(g, &v)?;
        }
        Ok(v)
    }

    pub fn weight(&self, m: &Monomial) -> Result<i64> {
        let h = self.act_monomial(Sl2::H, m)?;
        let c = h.coeff(m);
        if h != Poly::term(*m, c.clone()) || !c.is_integer() {
            return Err(Error::NotDiagonal(format!("h({m}) = {h} in {}", self.name)));
        }
        c.to_i64()
            .ok_or_else(|| Error::NotDiagonal(format!("weight of {m} out of range")))
    }

    /// Weight of a vector all of whose terms share one weight.
    pub fn weight_of(&self, p: &Poly) -> Result<Option<i64>> {
        let mut w = None;
        for (m, _) in p.terms() {
            let x = self.weight(m)?;
            if w.is_some_and(|y| y != x) {
                return Ok(None);
            }
            w = Some(x);
        }
        Ok(w)
    }

    pub fn action_table(&self, g: Sl2) -> Result<Vec<TableEntry>> {
        self.basis
            .iter()
            .map(|m| {
                let image = self.act_monomial(g, m)?;
                Ok(TableEntry {
                    source: m.to_string(),
                    leaves_truncation: !self.contains(&image),
                    image,
                })
            })
            .collect()
    }

    fn basis_to(&self, depth: i64) -> impl Iterator<Item = &Monomial> {
        self.basis.iter().filter(move |m| self.degree(m) <= depth)
    }

    fn weight_space(&self, w: i64, depth: i64) -> Result<Vec<Monomial>> {
        let mut out = Vec::new();
        for m in self.basis_to(depth) {
            if self.weight(m)? == w {
                out.push(*m);
            }
        }
        Ok(out)
    }

    /// Basis vectors bucketed by weight; fails if `h` is not diagonal.
    pub fn weight_decompose(&self) -> Result<BTreeMap<i64, Vec<Monomial>>> {
        self.weight_decompose_to(self.depth)
    }

    pub fn weight_decompose_to(&self, depth: i64) -> Result<BTreeMap<i64, Vec<Monomial>>> {
        let mut out: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in self.basis_to(depth) {
            out.entry(self.weight(m)?).or_default().push(*m);
        }
        Ok(out)
    }

    pub fn character(&self, depth: i64) -> Result<BTreeMap<i64, usize>> {
        Ok(self
            .weight_decompose_to(depth)?
            .into_iter()
            .map(|(w, v)| (w, v.len()))
            .collect())
    }

    /// A basis of the kernel of `e` on the weight-`λ` space.
    pub fn highest_weight_vectors(&self, lambda: i64) -> Result<Vec<Poly>> {
        self.highest_weight_vectors_to(lambda, self.depth)
    }

    pub fn highest_weight_vectors_to(&self, lambda: i64, depth: i64) -> Result<Vec<Poly>> {
        let space: Vec<Poly> = self.weight_space(lambda, depth)?.into_iter().map(Poly::monomial).collect();
        let images = space.iter().map(|v| self.act(Sl2::E, v).map(|p| coords(&p))).collect::<Result<Vec<_>>>()?;
        Ok(kernel(images).iter().map(|c| combine(&space, c)).collect())
    }

    /// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f` on every basis vector.
    pub fn bracket_failures(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for m in &self.basis {
            let v = Poly::monomial(*m);
            let w = self.weight(m)?;
            let ef = self.act(Sl2::E, &self.act(Sl2::F, &v)?)?;
            let fe = self.act(Sl2::F, &self.act(Sl2::E, &v)?)?;
            if &ef - &fe != v.scale(&Rational::from_int(w)) {
                out.push(format!("[e,f]({m})"));
            }
            for (g, k) in [(Sl2::E, 2), (Sl2::F, -2)] {
                let gv = self.act(g, &v)?;
                if self.weight_of(&gv)?.is_some_and(|x| x != w + k) {
                    out.push(format!("[h,{g}]({m})"));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Cyclic {
    /// `L(λ)`.
    Simple,
    /// `M(λ)`.
    Verma,
}

fn check_hwv(m: &TruncatedModule, v: &Poly, lambda: i64) -> Result<()> {
    if v.is_zero() {
        return Err(Error::Invalid("zero vector".into()));
    }
    if m.weight_of(v)? != Some(lambda) {
        return Err(Error::Invalid(format!("{v} is not of weight {lambda}")));
    }
    if !m.act(Sl2::E, v)?.is_zero() {
        return Err(Error::Invalid(format!("{v} is not killed by e")));
    }
    Ok(())
}

/// Classifies the module generated by a highest-weight vector by the exact
/// `f^{λ+1}` test.
pub fn classify_cyclic(m: &TruncatedModule, v: &Poly, lambda: i64, depth: i64) -> Result<Cyclic> {
    check_hwv(m, v, lambda)?;
    let mut w = v.clone();
    if lambda >= 0 {
        for k in 1..=lambda + 1 {
            if m.filtration_degree(&w) > depth {
                return Err(Error::Truncation(format!(
                    "f^{}({v}) leaves depth {depth} before the f^{} test",
                    k - 1,
                    lambda + 1
                )));
            }
            w = m.act(Sl2::F, &w)?;
        }
        return Ok(if w.is_zero() { Cyclic::Simple } else { Cyclic::Verma });
    }
    let cap = depth.max(m.dim() as i64) + 1;
    for r in 1..=cap {
        w = m.act(Sl2::F, &w)?;
        if w.is_zero() {
            return Err(Error::Certification(format!("f^{r}({v}) = 0 at negative weight {lambda}")));
        }
        if m.filtration_degree(&w) > depth {
            break;
        }
    }
    Ok(Cyclic::Verma)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandKind {
    M,
    #[serde(rename = "M*")]
    Mdual,
    L,
    P,
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SummandKind::M => "M",
            SummandKind::Mdual => "M*",
            SummandKind::L => "L",
            SummandKind::P => "P",
        })
    }
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summand {
    pub kind: SummandKind,
    pub lambda: i64,
    #[serde(default)]
    pub generator: Option<Poly>,
    #[serde(default = "one")]
    pub multiplicity: usize,
}

impl Summand {
    pub fn new(kind: SummandKind, lambda: i64, generator: Poly) -> Self {
        Summand {
            kind,
            lambda,
            generator: Some(generator),
            multiplicity: 1,
        }
    }

    /// Weights with their dimensions, down to `from`.
    fn character(&self, from: i64) -> Vec<i64> {
        let verma = |l: i64| (0..).map(move |k| l - 2 * k).take_while(move |w| *w >= from);
        let mut out: Vec<i64> = match self.kind {
            SummandKind::M | SummandKind::Mdual => verma(self.lambda).collect(),
            SummandKind::L => (0..=self.lambda).map(|k| self.lambda - 2 * k).filter(|w| *w >= from).collect(),
            SummandKind::P if self.lambda < -1 => verma(self.lambda).chain(verma(-self.lambda - 2)).collect(),
            SummandKind::P => verma(self.lambda).collect(),
        };
        let once = out.clone();
        for _ in 1..self.multiplicity {
            out.extend(once.iter().copied());
        }
        out
    }

    /// Weights of a basis of `ker e`, when determined by the kind.
    fn socle(&self) -> Option<Vec<i64>> {
        let l = self.lambda;
        let one: Vec<i64> = match self.kind {
            SummandKind::M if l >= 0 => vec![l, -l - 2],
            SummandKind::M | SummandKind::Mdual | SummandKind::L => vec![l],
            SummandKind::P => return None,
        };
        Some(std::iter::repeat_n(one, self.multiplicity).flatten().collect())
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.lambda)?;
        if self.multiplicity != 1 {
            write!(f, "^{}", self.multiplicity)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DecompositionClaim {
    pub summands: Vec<Summand>,
}

impl DecompositionClaim {
    pub fn character(&self, from: i64) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for s in &self.summands {
            for w in s.character(from) {
                *out.entry(w).or_insert(0) += 1;
            }
        }
        out
    }
}

impl fmt::Display for DecompositionClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SummandReport {
    pub summand: String,
    pub generator: Option<Poly>,
    pub highest_weight: Status,
    pub classification: Status,
    /// Extension witness for `M*`; absent for the other kinds.
    pub witness: Option<Status>,
    pub detail: String,
}

impl SummandReport {
    pub fn passed(&self) -> bool {
        self.highest_weight.ok() && self.classification.ok() && self.witness.is_none_or(|w| w.ok())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub module: String,
    pub claim: String,
    pub depth: i64,
    /// `None` when the module has no complete weight spaces to compare.
    pub character: Option<Status>,
    pub character_mismatches: Vec<String>,
    pub summands: Vec<SummandReport>,
    pub status: Status,
    pub caveat: String,
}

/// `u` of weight `−λ−2` with `e(u) = f^λ(v)`.
fn extension_witness(m: &TruncatedModule, v: &Poly, lambda: i64, depth: i64) -> Result<Option<Poly>> {
    let target = m.iterate(Sl2::F, v, lambda as usize)?;
    if target.is_zero() {
        return Ok(None);
    }
    let space: Vec<Poly> = m.weight_space(-lambda - 2, depth)?.into_iter().map(Poly::monomial).collect();
    let mut el = Eliminator::new();
    for b in &space {
        el.insert(coords(&m.act(Sl2::E, b)?));
    }
    Ok(el.solve(&coords(&target)).map(|c| combine(&space, &c)))
}

fn check_summand(m: &TruncatedModule, s: &Summand, depth: i64) -> Result<SummandReport> {
    let mut r = SummandReport {
        summand: s.to_string(),
        generator: s.generator.clone(),
        highest_weight: Status::Fail,
        classification: Status::Fail,
        witness: (s.kind == SummandKind::Mdual).then_some(Status::Fail),
        detail: String::new(),
    };
    if s.kind == SummandKind::P {
        r.highest_weight = Status::Pass;
        r.classification = Status::Pass;
        r.detail = "character only".into();
        return Ok(r);
    }
    let Some(v) = &s.generator else {
        r.detail = "no generator given".into();
        return Ok(r);
    };
    if let Err(e) = check_hwv(m, v, s.lambda) {
        r.detail = e.to_string();
        return Ok(r);
    }
    r.highest_weight = Status::Pass;
    let got = match classify_cyclic(m, v, s.lambda, depth) {
        Ok(c) => c,
        Err(e) => {
            r.detail = e.to_string();
            return Ok(r);
        }
    };
    let want = match s.kind {
        SummandKind::M => Cyclic::Verma,
        _ => Cyclic::Simple,
    };
    r.classification = Status::from_bool(got == want);
    r.detail = format!("generates {}", if got == Cyclic::Simple { "L" } else { "M" });
    if s.kind == SummandKind::Mdual {
        match extension_witness(m, v, s.lambda, depth)? {
            Some(u) => {
                r.witness = Some(Status::Pass);
                r.detail = format!("generates L; u = {u} has e(u) = f^{}(v)", s.lambda);
            }
            None => r.detail = format!("generates L; no u of weight {} with e(u) = f^{}(v)", -s.lambda - 2, s.lambda),
        }
    }
    Ok(r)
}

/// Checks the character of `claim` against the complete weight spaces of `m`,
/// and every claimed generator: highest weight, classification, and for `M*`
/// an extension witness.
pub fn verify_claim(m: &TruncatedModule, claim: &DecompositionClaim, depth: i64) -> Result<ClaimReport> {
    if depth > m.depth {
        return Err(Error::Truncation(format!("depth {depth} exceeds module depth {}", m.depth)));
    }
    let (character, character_mismatches) = match m.complete_from(depth) {
        None => (None, Vec::new()),
        Some(from) => {
            let ours: BTreeMap<i64, usize> = m.character(depth)?.into_iter().filter(|(w, _)| *w >= from).collect();
            let theirs = claim.character(from);
            let weights: BTreeSet<i64> = ours.keys().chain(theirs.keys()).copied().collect();
            let bad: Vec<String> = weights
                .into_iter()
                .filter_map(|w| {
                    let (a, b) = (ours.get(&w).copied().unwrap_or(0), theirs.get(&w).copied().unwrap_or(0));
                    (a != b).then(|| format!("weight {w}: module {a}, claim {b}"))
                })
                .collect();
            (Some(Status::from_bool(bad.is_empty())), bad)
        }
    };
    let summands = claim
        .summands
        .iter()
        .map(|s| check_summand(m, s, depth))
        .collect::<Result<Vec<_>>>()?;
    let ok = character.is_none_or(|c| c.ok()) && summands.iter().all(|s| s.passed());
    Ok(ClaimReport {
        module: m.name.clone(),
        claim: claim.to_string(),
        depth,
        character,
        character_mismatches,
        summands,
        status: Status::from_bool(ok),
        caveat: format!("certified on basis vectors of filtration degree ≤ {depth}"),
    })
}

/// Compares `dim ker e` on each complete weight space with the number of
/// highest-weight vectors a direct sum of the claimed summands would have.
#[derive(Clone, Debug, Serialize)]
pub struct SocleReport {
    pub depth: i64,
    pub status: Option<Status>,
    pub mismatches: Vec<String>,
}

pub fn socle_check(m: &TruncatedModule, claim: &DecompositionClaim, depth: i64) -> Result<SocleReport> {
    let from = m.complete_from(depth);
    let predicted: Option<Vec<i64>> = claim.summands.iter().map(|s| s.socle()).collect::<Option<Vec<_>>>().map(|v| v.concat());
    let (Some(from), Some(predicted)) = (from, predicted) else {
        return Ok(SocleReport {
            depth,
            status: None,
            mismatches: Vec::new(),
        });
    };
    let mut want: BTreeMap<i64, usize> = BTreeMap::new();
    for w in predicted.into_iter().filter(|w| *w >= from) {
        *want.entry(w).or_insert(0) += 1;
    }
    let mut mismatches = Vec::new();
    for w in m.weight_decompose_to(depth)?.into_keys().filter(|w| *w >= from) {
        let got = m.highest_weight_vectors_to(w, depth)?.len();
        let exp = want.get(&w).copied().unwrap_or(0);
        if got != exp {
            mismatches.push(format!("weight {w}: dim ker e = {got}, direct sum predicts {exp}"));
        }
    }
    Ok(SocleReport {
        depth,
        status: Some(Status::from_bool(mismatches.is_empty())),
        mismatches,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteGenerator {
    pub lambda: i64,
    pub vector: Poly,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZuckermanReport {
    pub module: String,
    pub depth: i64,
    pub generators: Vec<FiniteGenerator>,
    pub dimension: usize,
    pub caveat: String,
}

impl ZuckermanReport {
    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

/// The locally finite part visible at `depth`: highest-weight vectors of
/// weight `λ ≥ 0` killed by `f^{λ+1}`, and the dimension of their span.
pub fn zuckerman(m: &TruncatedModule, depth: i64) -> Result<ZuckermanReport> {
    let mut generators = Vec::new();
    for lambda in m.weight_decompose_to(depth)?.into_keys().filter(|w| *w >= 0) {
        let hwv = m.highest_weight_vectors_to(lambda, depth)?;
        let images = hwv
            .iter()
            .map(|v| m.iterate(Sl2::F, v, lambda as usize + 1).map(|p| coords(&p)))
            .collect::<Result<Vec<_>>>()?;
        for c in kernel(images) {
            generators.push(FiniteGenerator {
                lambda,
                vector: combine(&hwv, &c),
            });
        }
    }
    let dimension = generators.iter().map(|g| g.lambda as usize + 1).sum();
    Ok(ZuckermanReport {
        module: m.name.clone(),
        depth,
        generators,
        dimension,
        caveat: format!("only highest-weight vectors of filtration degree ≤ {depth} are examined"),
    })
}

/// `c` with `p = c·q`, when `q ≠ 0` and one exists.
pub fn proportional(p: &Poly, q: &Poly) -> Option<Rational> {
    let (m, qc) = q.terms().first()?;
    let c = &p.coeff(m) / qc;
    (q.scale(&c) == *p).then_some(c)
}

/// `e f^k(v) = k(λ−k+1) f^{k−1}(v)` for `k ≤ kmax`.
pub fn check_string_identity(m: &TruncatedModule, v: &Poly, lambda: i64, kmax: usize) -> Result<bool> {
    let mut prev = v.clone();
    for k in 1..=kmax {
        let cur = m.act(Sl2::F, &prev)?;
        let lhs = m.act(Sl2::E, &cur)?;
        let c = k as i64 * (lambda - k as i64 + 1);
        if lhs != prev.scale(&Rational::from_int(c)) {
            return Ok(false);
        }
        prev = cur;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2core::delta_pow;

    fn b4(depth: i64) -> TruncatedModule {
        TruncatedModule::polynomial("Q[E1,E2]", Sl2ActionSpec::base_ring(), depth, Completeness::Above(0), |_| true)
    }

    fn b4_claim(jmax: u32) -> DecompositionClaim {
        let mut s = vec![Summand::new(SummandKind::Mdual, 0, Poly::one())];
        s.extend((1..=jmax).map(|j| Summand::new(SummandKind::M, -4 * j as i64, delta_pow(j))));
        DecompositionClaim { summands: s }
    }

    #[test]
    fn weight_spaces_of_polynomial_ring() {
        let m = b4(8);
        let c = m.character(8).unwrap();
        let dims: Vec<usize> = [0, -2, -4, -6, -8].iter().map(|w| c[w]).collect();
        assert_eq!(dims, vec![1, 1, 2, 2, 3]);
        let empty = TruncatedModule::polynomial("empty", Sl2ActionSpec::base_ring(), 8, Completeness::All, |_| false);
        assert!(empty.weight_decompose().unwrap().is_empty());
    }

    #[test]
    fn highest_weight_vectors_small() {
        let m = b4(12);
        let d = m.highest_weight_vectors(-4).unwrap();
        assert_eq!(d.len(), 1);
        assert!(proportional(&d[0], &delta_pow(1)).is_some());
        assert!(m.highest_weight_vectors(-2).unwrap().is_empty());
    }

    #[test]
    fn classification() {
        let m = b4(20);
        assert_eq!(classify_cyclic(&m, &Poly::one(), 0, 20).unwrap(), Cyclic::Simple);
        assert_eq!(classify_cyclic(&m, &delta_pow(2), -8, 20).unwrap(), Cyclic::Verma);
        assert!(classify_cyclic(&m, &Poly::e1(), -2, 20).is_err());
    }

    #[test]
    fn b4_claim_and_witness() {
        let m = b4(16);
        let r = verify_claim(&m, &b4_claim(4), 16).unwrap();
        assert!(r.status.ok(), "{r:?}");
        assert!(r.summands[0].detail.contains("-1/2*E1"), "{}", r.summands[0].detail);
        assert!(socle_check(&m, &b4_claim(4), 16).unwrap().status.unwrap().ok());
    }

    #[test]
    fn swapped_claim_fails() {
        let m = b4(16);
        let mut c = b4_claim(4);
        c.summands[0].kind = SummandKind::M;
        let r = verify_claim(&m, &c, 16).unwrap();
        assert!(!r.status.ok());
        assert!(!r.summands[0].classification.ok());
        assert_eq!(r.character, Some(Status::Pass));
    }

    #[test]
    fn missing_summand_breaks_character() {
        let m = b4(16);
        let mut c = b4_claim(4);
        c.summands.pop();
        assert_eq!(verify_claim(&m, &c, 16).unwrap().character, Some(Status::Fail));
    }

    #[test]
    fn zuckerman_examples() {
        let z = zuckerman(&b4(20), 20).unwrap();
        assert_eq!(z.generators.len(), 1);
        assert_eq!(z.generators[0].vector, Poly::one());
        let l3 = TruncatedModule::simple(3);
        let z = zuckerman(&l3, 0).unwrap();
        assert_eq!(z.dimension, l3.dim());
    }

    #[test]
    fn table_module_brackets() {
        for n in 0..6 {
            let l = TruncatedModule::simple(n);
            assert!(l.bracket_failures().unwrap().is_empty());
            assert!(check_string_identity(&l, &Poly::monomial(Monomial([0, 0, 0, 0])), n as i64, n + 1).unwrap());
        }
    }

    #[test]
    fn twisted_block_matches_closed_form_weight() {
        let m = TruncatedModule::twisted("w", Rational::new(-1, 2), 1, 12);
        assert!(m.bracket_failures().unwrap().is_empty());
        assert_eq!(classify_cyclic(&m, &Poly::one(), 1, 12).unwrap(), Cyclic::Verma);
    }

    #[test]
    fn claims_round_trip_json() {
        let c = b4_claim(2);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"M*\""));
        assert_eq!(serde_json::from_str::<DecompositionClaim>(&s).unwrap(), c);
    }
}
