//! The sl₂-modules `ℚ[E1,E2]` (for B⁴) and `ℚ[E1,E2][A0^{±1},A1]` (for
//! B²×S²): their splitting into `M⁺ ⊕ M⁻`, the variable `v = A0 − E1·A1/2`,
//! the closed form for `f^r`, the filtration of `M⁻_ℓ`, and a checked
//! rendition of the resulting decompositions.

use serde::Serialize;

use crate::dtl::Status;
use crate::error::{Error, Result};
use crate::rep::{
    proportional, socle_check, verify_claim, zuckerman, ClaimReport, Completeness, DecompositionClaim, SocleReport,
    Summand, SummandKind, TruncatedModule, ZuckermanReport,
};
use crate::ring::{delta, Gen, Grading, Monomial, Poly, Rational};
use crate::sl2core::{delta_pow, Sl2, Sl2ActionSpec};

fn spec() -> &'static Sl2ActionSpec {
    static S: std::sync::OnceLock<Sl2ActionSpec> = std::sync::OnceLock::new();
    S.get_or_init(Sl2ActionSpec::lasagna)
}

fn a1(m: u32) -> Poly {
    Poly::gen(Gen::A1).pow(m)
}

fn a0(i: i32) -> Poly {
    Poly::monomial(Monomial([0, 0, 0, i]))
}

/// Gradings of a monomial `E^… A1^m A0^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LasagnaGradings {
    /// `A1 ↦ −2`, `A0^{±1} ↦ 0`, `E_k ↦ 2k`.
    pub quantum: i64,
    /// Total A-degree `m + i`.
    pub homology: i64,
    /// The `h`-eigenvalue.
    pub weight: i64,
}

pub fn gradings(m: &Monomial) -> Result<LasagnaGradings> {
    Ok(LasagnaGradings {
        quantum: m.degree(Grading::LASAGNA_QUANTUM),
        homology: (m.exp(Gen::A1) + m.exp(Gen::A0)) as i64,
        weight: spec().weight_of(m)?,
    })
}

/// A module together with the decomposition it is expected to satisfy.
#[derive(Clone, Debug)]
pub struct LasagnaModule {
    pub module: TruncatedModule,
    pub claim: DecompositionClaim,
}

/// `M*(0) ⊕ ⊕_{1 ≤ j ≤ depth/4} M(−4j)`.
pub fn b4_claim(depth: i64) -> DecompositionClaim {
    let mut summands = vec![Summand::new(SummandKind::Mdual, 0, Poly::one())];
    summands.extend((1..=depth / 4).map(|j| Summand::new(SummandKind::M, -4 * j, delta_pow(j as u32))));
    DecompositionClaim { summands }
}

/// `ℚ[E1,E2]` to degree `depth`.
pub fn b4_module(depth: i64) -> Result<LasagnaModule> {
    if depth < 4 {
        return Err(Error::Invalid(format!("B4 depth {depth} < 4")));
    }
    Ok(LasagnaModule {
        module: TruncatedModule::polynomial(
            "Q[E1,E2]",
            Sl2ActionSpec::base_ring(),
            depth,
            Completeness::Above(0),
            |_| true,
        ),
        claim: b4_claim(depth),
    })
}

/// The B²×S² module and its two summands.
#[derive(Clone, Debug)]
pub struct B2S2 {
    pub full: TruncatedModule,
    pub plus: TruncatedModule,
    pub minus: TruncatedModule,
}

pub fn plus_member(m: &Monomial) -> bool {
    m.exp(Gen::A0) >= 0
}

pub fn minus_member(m: &Monomial) -> bool {
    m.exp(Gen::A0) < 0
}

/// Images of `A0^{-1}` as stated for the B²×S² module.
pub fn stated_inverse_images() -> [Poly; 3] {
    let p = |s: &str| s.parse::<Poly>().expect("literal");
    [p("A1*A0^-2"), p("E2*A1*A0^-2 - 1/2*E1*A0^-1"), p("A0^-1")]
}

/// Differences between the derivation-extended images of `A0^{-1}` and the
/// stated ones, and failures of `g(A0^k · A0^{-k}) = 0` for `k ≤ 3`.
pub fn laurent_consistency() -> Result<Vec<String>> {
    let mut out = Vec::new();
    let stated = stated_inverse_images();
    for g in Sl2::ALL {
        let derived = spec().apply(g, &a0(-1))?;
        if derived != stated[g.index()] {
            out.push(format!("{g}(A0^-1) = {derived}, stated {}", stated[g.index()]));
        }
        for k in 1..=3 {
            let lhs = &(&spec().apply(g, &a0(k))? * &a0(-k)) + &(&a0(k) * &spec().apply(g, &a0(-k))?);
            if !lhs.is_zero() {
                out.push(format!("{g}(A0^{k} A0^-{k}) = {lhs}"));
            }
        }
    }
    Ok(out)
}

pub fn b2s2_module(depth: i64) -> Result<B2S2> {
    if depth < 6 {
        return Err(Error::Invalid(format!("B2xS2 depth {depth} < 6")));
    }
    let bad = laurent_consistency()?;
    if !bad.is_empty() {
        return Err(Error::Certification(bad.join("; ")));
    }
    let build = |name: &str, member: fn(&Monomial) -> bool| {
        TruncatedModule::polynomial(name, spec().clone(), depth, Completeness::Partial, member)
    };
    Ok(B2S2 {
        full: build("Q[E1,E2][A0^±1,A1]", |_| true),
        plus: build("M+", plus_member),
        minus: build("M-", minus_member),
    })
}

/// Whether every image of every basis vector lies in the subspace `member`.
pub fn closed_under_action(m: &TruncatedModule, member: impl Fn(&Monomial) -> bool) -> Result<bool> {
    for b in m.basis() {
        for g in Sl2::ALL {
            if !m.act_monomial(g, b)?.terms().iter().all(|(x, _)| member(x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `v = A0 − E1·A1/2`.
pub fn v() -> Poly {
    &Poly::gen(Gen::A0) - &(&Poly::e1() * &Poly::gen(Gen::A1)).scale(&Rational::new(1, 2))
}

/// `δ^j A1^m v^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VBasisElement {
    pub j: u32,
    pub m: u32,
    pub n: u32,
}

impl VBasisElement {
    pub fn new(j: u32, m: u32, n: u32) -> Self {
        VBasisElement { j, m, n }
    }

    /// `γ = 2j + (n − m)/2`.
    pub fn gamma(&self) -> Rational {
        Rational::new(4 * self.j as i64 + self.n as i64 - self.m as i64, 2)
    }

    /// `m − n − 4j`, the weight.
    pub fn weight(&self) -> i64 {
        self.m as i64 - self.n as i64 - 4 * self.j as i64
    }

    /// In `S*`: the weight is even and non-negative.
    pub fn in_s_star(&self) -> bool {
        let w = self.weight();
        w >= 0 && w % 2 == 0
    }

    pub fn expand(&self) -> Poly {
        &(&delta_pow(self.j) * &a1(self.m)) * &v().pow(self.n)
    }
}

fn falling_from(top: i64, count: i64) -> Rational {
    (0..count).fold(Rational::one(), |acc, i| &acc * &Rational::from_int(top - i))
}

fn rising(g: &Rational, count: i64) -> Rational {
    (0..count).fold(Rational::one(), |acc, i| &acc * &(g + &Rational::from_int(i)))
}

/// `Σ_{k+2a=r} (−1)^a ((k+2a)⋯(k+1)/a!) γ(γ+1)⋯(γ+r−a−1) E1^k E2^a · δ^j A1^m v^n`.
pub fn genfrcomp_closed_form(j: u32, m: u32, n: u32, r: u32) -> Poly {
    let x = VBasisElement::new(j, m, n);
    let g = x.gamma();
    let r = r as i64;
    let mut coeff = Poly::zero();
    for a in 0..=r / 2 {
        let k = r - 2 * a;
        let a_fact: i64 = (1..=a).product();
        let mut c = &falling_from(k + 2 * a, 2 * a) / &Rational::from_int(a_fact);
        c = &c * &rising(&g, r - a);
        if a % 2 == 1 {
            c = -c;
        }
        coeff.add_scaled(&Poly::monomial(Monomial::e(k as i32, a as i32)), &c);
    }
    &coeff * &x.expand()
}

pub fn iterate_f(x: &Poly, r: usize) -> Result<Poly> {
    spec().iterate_f(x, r)
}

/// The block `ℚ[E1,E2]·A1^m v^n`, analysed to E-degree `edepth`.
pub fn plus_block(m: u32, n: u32, edepth: i64) -> TruncatedModule {
    TruncatedModule::twisted(
        &format!("Q[E1,E2]*A1^{m}*v^{n}"),
        Rational::new(n as i64 - m as i64, 2),
        m as i64 - n as i64,
        edepth,
    )
}

/// Checks that `μ ↦ μ·A1^m v^n` intertwines [`plus_block`] with the action
/// on `M⁺`, on the generator and on `E1`, `E2`, `δ` multiples of it.
pub fn block_consistency(m: u32, n: u32) -> Result<bool> {
    let w = VBasisElement::new(0, m, n).expand();
    let block = plus_block(m, n, 4);
    for mu in [Poly::one(), Poly::e1(), Poly::e2(), delta()] {
        for g in Sl2::ALL {
            let real = spec().apply(g, &(&mu * &w))?;
            let model = &block.act(g, &mu)? * &w;
            if real != model {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The decomposition of a block `ℚ[E1,E2]·w` of weight `top` into
/// `M*(top−4j)` for `top−4j ≥ 0` even and `M(top−4j)` otherwise.
pub fn block_claim(top: i64, edepth: i64) -> DecompositionClaim {
    DecompositionClaim {
        summands: (0..=edepth / 4)
            .map(|j| {
                let w = top - 4 * j;
                let kind = if w >= 0 && w % 2 == 0 { SummandKind::Mdual } else { SummandKind::M };
                Summand::new(kind, w, delta_pow(j as u32))
            })
            .collect(),
    }
}

/// E-degree used for a block of weight `top` at depth `depth`: enough room
/// for the `f^{λ+1}` test and the extension witness of every `M*` summand.
pub fn block_edepth(top: i64, depth: i64) -> i64 {
    depth + 2 * top.max(0) + 2
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockReport {
    pub m: u32,
    pub n: u32,
    pub edepth: i64,
    pub consistency: Status,
    /// Highest-weight vectors are exactly the `δ^j` multiples of the generator.
    pub hwv_exact: Status,
    pub claim: ClaimReport,
    pub socle: SocleReport,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.consistency.ok() && self.hwv_exact.ok() && self.claim.status.ok()
    }
}

fn hwv_exact(block: &TruncatedModule, top: i64, edepth: i64) -> Result<bool> {
    for (w, _) in block.weight_decompose_to(edepth)? {
        let h = block.highest_weight_vectors_to(w, edepth)?;
        let expected = (top - w) % 4 == 0;
        let ok = match (expected, h.as_slice()) {
            (false, []) => true,
            (true, [x]) => proportional(x, &delta_pow(((top - w) / 4) as u32)).is_some(),
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn analyse_block(m: u32, n: u32, depth: i64) -> Result<BlockReport> {
    let top = m as i64 - n as i64;
    let edepth = block_edepth(top, depth);
    let block = plus_block(m, n, edepth);
    let claim = block_claim(top, edepth);
    Ok(BlockReport {
        m,
        n,
        edepth,
        consistency: Status::from_bool(block_consistency(m, n)?),
        hwv_exact: Status::from_bool(hwv_exact(&block, top, edepth)?),
        claim: verify_claim(&block, &claim, edepth)?,
        socle: socle_check(&block, &claim, edepth)?,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PlusReport {
    pub depth: i64,
    pub blocks: Vec<BlockReport>,
    pub status: Status,
    /// Blocks where `dim ker e` differs from what a direct sum of the claimed
    /// summands would give.
    pub not_direct: Vec<(u32, u32)>,
}

/// Every block `A1^m v^n` with `m + n ≤ depth`.
pub fn verify_plus(depth: i64) -> Result<PlusReport> {
    let mut blocks = Vec::new();
    for s in 0..=depth as u32 {
        for m in 0..=s {
            blocks.push(analyse_block(m, s - m, depth)?);
        }
    }
    let status = Status::from_bool(blocks.iter().all(|b| b.passed()));
    let not_direct = blocks
        .iter()
        .filter(|b| b.socle.status.is_some_and(|s| !s.ok()))
        .map(|b| (b.m, b.n))
        .collect();
    Ok(PlusReport {
        depth,
        blocks,
        status,
        not_direct,
    })
}

/// `M⁻_ℓ`: monomials `A1^m A0^{−n}` with `m − n = ℓ`, `n ≥ 1`.
pub fn minus_member_l(ell: i64) -> impl Fn(&Monomial) -> bool + Clone {
    move |x: &Monomial| x.exp(Gen::A0) < 0 && (x.exp(Gen::A1) + x.exp(Gen::A0)) as i64 == ell
}

pub fn s_member(ell: i64, r: i64) -> impl Fn(&Monomial) -> bool + Clone {
    let base = minus_member_l(ell);
    move |x: &Monomial| base(x) && x.exp(Gen::A1) as i64 >= r
}

pub fn minus_block(ell: i64, depth: i64) -> Result<TruncatedModule> {
    if ell.abs() > depth {
        return Err(Error::Invalid(format!("|ℓ| = {} exceeds depth {depth}", ell.abs())));
    }
    Ok(TruncatedModule::polynomial(
        &format!("M-_{ell}"),
        spec().clone(),
        depth,
        Completeness::Partial,
        minus_member_l(ell),
    ))
}

/// One step `S_{ℓ,r} ⊇ S_{ℓ,r+1}` of the filtration, within the truncation.
#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub ell: i64,
    pub r: i64,
    pub submodule: Status,
    pub strict: Status,
}

pub fn chain_step(ell: i64, r: i64, depth: i64) -> Result<ChainStep> {
    let block = minus_block(ell, depth)?;
    let member = s_member(ell, r);
    let sub = TruncatedModule::polynomial("S", spec().clone(), depth, Completeness::Partial, member.clone());
    let next = s_member(ell, r + 1);
    Ok(ChainStep {
        ell,
        r,
        submodule: Status::from_bool(closed_under_action(&sub, member)?),
        strict: Status::from_bool(block.basis().iter().any(|x| s_member(ell, r)(x) && !next(x))),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientReport {
    pub ell: i64,
    pub r: i64,
    pub weight: i64,
    pub claim: String,
    pub nonzero: bool,
    pub action_matches: Status,
    pub check: Option<ClaimReport>,
    pub status: Status,
    pub detail: String,
}

/// The stated decomposition of `S_{ℓ,r}/S_{ℓ,r+1}`.
pub fn quotient_claim(ell: i64, r: i64, edepth: i64) -> DecompositionClaim {
    block_claim(2 * r - ell, edepth)
}

/// `S_{ℓ,r}/S_{ℓ,r+1}` on the images of `P·A1^r A0^{−(r−ℓ)}`, compared with
/// the block of weight `2r − ℓ` and checked against the stated claim.
pub fn filtration_quotient(ell: i64, r: i64, depth: i64) -> Result<QuotientReport> {
    let top = 2 * r - ell;
    let edepth = block_edepth(top, depth);
    let claim = quotient_claim(ell, r, edepth);
    let mut rep = QuotientReport {
        ell,
        r,
        weight: top,
        claim: claim.to_string(),
        nonzero: r - ell >= 1,
        action_matches: Status::Fail,
        check: None,
        status: Status::Fail,
        detail: String::new(),
    };
    if !rep.nonzero {
        rep.detail = format!("A1^{r} A0^{} is not in M-, so S_({ell},{r}) = S_({ell},{}) and the quotient is zero", ell - r, r + 1);
        return Ok(rep);
    }
    let gen = Poly::monomial(Monomial([0, 0, r as i32, (ell - r) as i32]));
    let model = TruncatedModule::twisted("quotient", Rational::new(ell - 2 * r, 2), top, edepth);
    let keep = |p: Poly| Poly::from_terms(p.into_terms().into_iter().filter(|(x, _)| x.exp(Gen::A1) as i64 == r));
    let mut matches = true;
    for mu in model.basis().iter().filter(|x| x.degree(Grading::CANONICAL) <= 8) {
        let mu = Poly::monomial(*mu);
        for g in Sl2::ALL {
            let real = keep(spec().apply(g, &(&mu * &gen))?);
            if real != &model.act(g, &mu)? * &gen {
                matches = false;
            }
        }
    }
    rep.action_matches = Status::from_bool(matches);
    let check = verify_claim(&model, &claim, edepth)?;
    rep.status = Status::from_bool(matches && check.status.ok());
    rep.detail = format!("basis P*A1^{r}*A0^{}", ell - r);
    rep.check = Some(check);
    Ok(rep)
}

pub fn zuckerman_minus(ell: i64, depth: i64) -> Result<ZuckermanReport> {
    zuckerman(&minus_block(ell, depth)?, depth)
}

/// `Γ` of a block of `M⁺`: its generators must be exactly the `δ^j·w` with
/// `(j,m,n) ∈ S*`.
pub fn plus_block_gamma(m: u32, n: u32, depth: i64) -> Result<bool> {
    let top = m as i64 - n as i64;
    let edepth = block_edepth(top, depth);
    let z = zuckerman(&plus_block(m, n, edepth), edepth)?;
    let expected: Vec<u32> = (0..=(edepth / 4) as u32)
        .filter(|&j| VBasisElement::new(j, m, n).in_s_star())
        .collect();
    Ok(z.generators.len() == expected.len()
        && expected
            .iter()
            .all(|&j| z.generators.iter().any(|g| proportional(&g.vector, &delta_pow(j)).is_some())))
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryLine {
    pub claim: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryReport {
    pub depth: i64,
    pub claims: Vec<SummaryLine>,
    pub diagnostics: Vec<SummaryLine>,
    pub status: Status,
}

/// Range of `ℓ` and `r` covered by the `M⁻` part of the summary.
pub const SUMMARY_ELL: std::ops::RangeInclusive<i64> = -2..=2;
pub const SUMMARY_R: std::ops::RangeInclusive<i64> = 0..=4;

pub fn summary_report(depth: i64) -> Result<SummaryReport> {
    let mut claims = Vec::new();
    let mut line = |claim: String, ok: bool, detail: String| {
        claims.push(SummaryLine {
            claim,
            status: Status::from_bool(ok),
            detail,
        })
    };
    let b = b2s2_module(depth)?;
    let split = closed_under_action(&b.plus, plus_member)? && closed_under_action(&b.minus, minus_member)?;
    line("M = M+ ⊕ M-".into(), split, format!("{} basis vectors", b.full.dim()));

    let plus = verify_plus(depth)?;
    line(
        "M+ ≅ ⊕_S M(m-n-4j) ⊕ ⊕_S* M*(m-n-4j)".into(),
        plus.status.ok(),
        format!("{} blocks A1^m v^n with m+n ≤ {depth}", plus.blocks.len()),
    );

    for ell in SUMMARY_ELL {
        let block = minus_block(ell, depth)?;
        line(
            format!("M-_{ell} is a submodule"),
            closed_under_action(&block, minus_member_l(ell))?,
            format!("{} basis vectors", block.dim()),
        );
    }
    for ell in SUMMARY_ELL {
        for r in SUMMARY_R {
            let step = chain_step(ell, r, depth)?;
            let q = filtration_quotient(ell, r, depth)?;
            line(
                format!("S_({ell},{r}) ⊋ S_({ell},{}) with quotient {}", r + 1, q.claim),
                step.submodule.ok() && step.strict.ok() && q.status.ok(),
                q.detail.clone(),
            );
        }
    }
    for ell in SUMMARY_ELL {
        let z = zuckerman_minus(ell, depth)?;
        line(format!("Γ M-_{ell} = 0"), z.is_zero(), z.caveat.clone());
    }
    let mut gamma_ok = true;
    for s in 0..=depth as u32 {
        for m in 0..=s {
            gamma_ok &= plus_block_gamma(m, s - m, depth)?;
        }
    }
    line(
        "Γ M = Γ M+ = ⊕_S* L(m-n-4j)".into(),
        gamma_ok,
        format!("blocks with m+n ≤ {depth}"),
    );

    let diagnostics = vec![SummaryLine {
        claim: "the M+ sum is direct (dim ker e per weight)".into(),
        status: Status::from_bool(plus.not_direct.is_empty()),
        detail: format!("blocks (m,n) where it is not: {:?}", plus.not_direct),
    }];
    let status = Status::from_bool(claims.iter().all(|c| c.status.ok()));
    Ok(SummaryReport {
        depth,
        claims,
        diagnostics,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn generator_table() {
        assert!(laurent_consistency().unwrap().is_empty());
        let x = p("A1^2*A0^-3");
        assert_eq!(spec().apply(Sl2::H, &x).unwrap(), x.scale(&Rational::from_int(5)));
        let a = p("A1^2");
        assert_eq!(iterate_f(&a, 1).unwrap(), p("-E1*A1^2"));
        assert_eq!(iterate_f(&a, 2).unwrap(), p("2*E2*A1^2"));
        assert!(iterate_f(&a, 3).unwrap().is_zero());
    }

    #[test]
    fn v_is_killed_by_e() {
        assert!(spec().apply(Sl2::E, &v()).unwrap().is_zero());
        assert_eq!(spec().apply(Sl2::F, &v()).unwrap(), (&Poly::e1() * &v()).scale(&Rational::new(1, 2)));
        assert!(v().is_homogeneous(Grading::V_HOMOGENEOUS));
    }

    #[test]
    fn closed_form_small() {
        let x = VBasisElement::new(1, 2, 1);
        assert_eq!(genfrcomp_closed_form(1, 2, 1, 1), (&Poly::e1() * &x.expand()).scale(&x.gamma()));
        assert!(genfrcomp_closed_form(0, 3, 1, 3).is_zero());
        for (j, m, n) in [(0, 1, 0), (1, 0, 2), (0, 2, 2)] {
            for r in 1..=4 {
                let x = VBasisElement::new(j, m, n).expand();
                assert_eq!(genfrcomp_closed_form(j, m, n, r), iterate_f(&x, r as usize).unwrap());
            }
        }
    }

    #[test]
    fn odd_weight_verma_contains_next_delta() {
        let x = iterate_f(&a1(1), 2).unwrap();
        assert_eq!(x, (&delta() * &a1(1)).scale(&Rational::new(1, 4)));
    }

    #[test]
    fn b4_small() {
        let b = b4_module(16).unwrap();
        assert!(verify_claim(&b.module, &b.claim, 16).unwrap().status.ok());
        assert!(b4_module(2).is_err());
    }

    #[test]
    fn blocks_small() {
        for (m, n) in [(0, 0), (2, 0), (1, 0), (0, 3), (3, 1)] {
            let r = analyse_block(m, n, 6).unwrap();
            assert!(r.passed(), "{m},{n}: {r:?}");
        }
        assert!(!analyse_block(1, 0, 6).unwrap().socle.status.unwrap().ok());
        assert!(analyse_block(2, 0, 6).unwrap().socle.status.unwrap().ok());
    }

    #[test]
    fn minus_blocks() {
        for ell in -2..=2 {
            let b = minus_block(ell, 10).unwrap();
            assert!(closed_under_action(&b, minus_member_l(ell)).unwrap());
        }
        let x = p("A1^2*A0^-3");
        assert_eq!(spec().apply(Sl2::E, &x).unwrap(), p("3*A1^3*A0^-4"));
        assert!(zuckerman_minus(0, 10).unwrap().is_zero());
    }

    #[test]
    fn quotients() {
        let q = filtration_quotient(0, 1, 8).unwrap();
        assert!(q.status.ok(), "{q:?}");
        assert!(q.claim.starts_with("M*(2)"));
        let q = filtration_quotient(-1, 0, 8).unwrap();
        assert!(q.status.ok() && q.claim.starts_with("M(1)"));
        let q = filtration_quotient(1, 0, 8).unwrap();
        assert!(!q.nonzero && !q.status.ok());
        assert!(chain_step(-1, 0, 8).unwrap().strict.ok());
        assert!(!chain_step(0, 0, 8).unwrap().strict.ok());
    }

    #[test]
    fn gradings_of_generators() {
        let g = gradings(&Monomial([0, 0, 1, -2])).unwrap();
        assert_eq!((g.quantum, g.homology, g.weight), (-2, -1, 3));
    }
}
