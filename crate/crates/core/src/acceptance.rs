//! The acceptance suite: thirteen criteria, each a deterministic function of
//! the seed, reported as one line apiece.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dtl::{
    check_bridge, check_h_degree, check_word_brackets, evaluate_expr, parse_expr, random_expr, random_word,
    verify_relations, DtlAction, DtlParams, Status, WordComb,
};
use crate::error::Result;
use crate::karoubi::{
    jw, jw_bruteforce, lemma_check, projector_images, quiver_check, quiver_check_with, DPlacement, Side,
    UPlacement,
};
use crate::kirby::build_kirby;
use crate::lasagna::{
    b2s2_module, b4_module, chain_step, closed_under_action, filtration_quotient, genfrcomp_closed_form, iterate_f,
    minus_block, minus_member, minus_member_l, plus_member, verify_plus, zuckerman_minus, VBasisElement,
    SUMMARY_ELL, SUMMARY_R,
};
use crate::rep::{proportional, verify_claim, zuckerman, Summand, SummandKind};
use crate::ring::{qbinom, qfactorial, qint, Poly, QLaurent, Rational};
use crate::sl2core::{delta_pow, Sl2};
use crate::statespace::Prim;

pub const DEFAULT_SEED: u64 = 20_240_917;
pub const B4_DEPTH: i64 = 40;
pub const B2S2_DEPTH: i64 = 20;
const RANDOM_WORDS: usize = 50;
const ROUND_TRIPS: usize = 200;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub status: Status,
    pub detail: String,
    /// Set when the failure is exactly the one predicted by a known defect of
    /// the statement being checked.
    pub known_deviation: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        self.line_with(true)
    }

    /// The report line, optionally without the wall-clock time.
    pub fn line_with(&self, timed: bool) -> String {
        let tag = match (self.status, &self.known_deviation) {
            (Status::Pass, _) => "PASS".to_string(),
            (Status::Fail, Some(k)) => format!("FAIL (known: {k})"),
            (Status::Fail, None) => "FAIL".to_string(),
        };
        let time = if timed {
            format!(" [{:.1}s]", self.elapsed.as_secs_f64())
        } else {
            String::new()
        };
        format!("criterion {:>2} {tag}: {}{time} {}", self.id, self.title, self.detail)
    }

    /// Passes, or fails only in the predicted way.
    pub fn acceptable(&self) -> bool {
        self.status.ok() || self.known_deviation.is_some()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptanceReport {
    pub seed: u64,
    pub criteria: Vec<CriterionResult>,
}

impl AcceptanceReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.status.ok())
    }

    pub fn acceptable(&self) -> bool {
        self.criteria.iter().all(|c| c.acceptable())
    }
}

struct Outcome {
    ok: bool,
    detail: String,
    known: Option<String>,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
            known: None,
        }
    }
}

fn rng_for(seed: u64, id: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((id as u64) << 32))
}

fn sample_params() -> Vec<DtlParams> {
    [(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 2), (-1, 1, 2, 1)]
        .iter()
        .map(|&(a, b, c, d)| DtlParams::new(Rational::new(a, b), Rational::new(c, d)))
        .collect()
}

fn generator_words() -> Vec<WordComb> {
    [Prim::Id, Prim::Dot, Prim::Cup, Prim::Cap].into_iter().map(WordComb::prim).collect()
}

fn samples(seed: u64, id: u32) -> Vec<WordComb> {
    let mut rng = rng_for(seed, id);
    let mut out = generator_words();
    out.extend((0..RANDOM_WORDS).map(|_| random_word(&mut rng, 4, 4)));
    out
}

fn c1(seed: u64) -> Result<Outcome> {
    let s = samples(seed, 1);
    let mut checked = 0;
    let mut failures = Vec::new();
    for p in sample_params() {
        let r = check_word_brackets(&DtlAction::new(p.clone()), &s)?;
        checked += r.checked;
        failures.extend(r.failures.into_iter().map(|f| format!("({p}) {} on {}", f.check, f.sample)));
    }
    Ok(Outcome::new(
        failures.is_empty(),
        format!("{checked} bracket identities on {} words x 4 parameter points; failures: {failures:?}", s.len()),
    ))
}

fn c2() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut n = 0;
    for p in sample_params() {
        let r = verify_relations(&DtlAction::new(p.clone()))?;
        n += r.checks.len();
        bad.extend(r.checks.iter().filter(|c| !c.status.ok()).map(|c| format!("({p}) {} {}", c.relation, c.generator)));
    }
    let corrupted = DtlAction::new(DtlParams::zero()).with_image(Sl2::F, Prim::Dot, WordComb::zero(1, 1))?;
    let control = !verify_relations(&corrupted)?.passed();
    Ok(Outcome::new(
        bad.is_empty() && control,
        format!("{n} relation checks, failures {bad:?}; corrupted f(dot) detected: {control}"),
    ))
}

fn c3() -> Result<Outcome> {
    let mut bad = Vec::new();
    for n in 0..=6 {
        let p = jw(n)?;
        if !p.is_idempotent() {
            bad.push(format!("p_{n} not idempotent"));
        }
        if !p.kills_turnbacks() {
            bad.push(format!("p_{n} survives a turnback"));
        }
        if *p.matrix != jw_bruteforce(n)? {
            bad.push(format!("p_{n} differs from the symmetrizer"));
        }
    }
    let p2 = evaluate_expr(&parse_expr("(id|id) - 1/2*(cap ; cup)")?)?;
    if *jw(2)?.matrix != p2 {
        bad.push("p_2 != id - 1/2 cupcap".into());
    }
    Ok(Outcome::new(bad.is_empty(), format!("n <= 6; failures {bad:?}")))
}

fn c4() -> Result<Outcome> {
    let diff = evaluate_expr(&parse_expr("(cap ; cup ; dot|id) - (dot|id ; cap ; cup)")?)?;
    let mut bad = Vec::new();
    for p in sample_params() {
        let [e, f, h] = projector_images(2, &p)?;
        let want = diff.scale_rational(&(&p.a1 / &Rational::from_int(2)));
        if !e.is_zero() || !h.is_zero() || f != want {
            bad.push(p.to_string());
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("e(p2) = h(p2) = 0 and f(p2) = a1/2 (cupdotcap - cupcapdot) at 4 points; failures {bad:?}"),
    ))
}

fn c5() -> Result<Outcome> {
    let mut n_checks = 0;
    let mut bad = Vec::new();
    for a2 in ["0", "1/2", "1", "-3"] {
        let a2: Rational = a2.parse()?;
        for n in 0..=4 {
            for c in lemma_check(n, &a2)? {
                n_checks += 1;
                if !c.status.ok() {
                    bad.push(format!("{} {} at a2={}", c.object, c.generator, c.a2));
                }
            }
        }
    }
    Ok(Outcome::new(bad.is_empty(), format!("{n_checks} eigen-equations for U, D, z; failures {bad:?}")))
}

fn c6() -> Result<Outcome> {
    let r = quiver_check(4)?;
    let bad: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.status.ok())
        .map(|c| format!("{} (n={})", c.relation, c.n))
        .collect();
    let flipped = DPlacement {
        side: Side::Left,
        sign: -1,
    };
    let control = !quiver_check_with(2, UPlacement::default(), flipped)?.passed();
    Ok(Outcome::new(
        bad.is_empty() && control,
        format!("{} relation instances; failures {bad:?}; sign-flipped D detected: {control}", r.checks.len()),
    ))
}

fn c7() -> Result<Outcome> {
    let mut maps = 0;
    let mut bad = Vec::new();
    for a2 in ["0", "1/2"] {
        let a2: Rational = a2.parse()?;
        for (k, levels) in [(0, 4), (1, 3)] {
            match build_kirby(k, levels, &a2).and_then(|s| s.report()) {
                Ok(r) => {
                    maps += r.maps.len();
                    if !r.status.ok() {
                        bad.push(format!("k={k} a2={a2}: report failed"));
                    }
                }
                Err(e) => bad.push(format!("k={k} a2={a2}: {e}")),
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("{maps} level maps annihilated by e*, f*, h*, composites nonzero; failures {bad:?}"),
    ))
}

fn c8() -> Result<Outcome> {
    let b = b4_module(B4_DEPTH)?;
    let m = &b.module;
    let mut hwv_ok = true;
    for (w, _) in m.weight_decompose_to(B4_DEPTH)? {
        let h = m.highest_weight_vectors_to(w, B4_DEPTH)?;
        hwv_ok &= match (w % 4 == 0, h.as_slice()) {
            (false, []) => true,
            (true, [x]) => proportional(x, &delta_pow((-w / 4) as u32)).is_some(),
            _ => false,
        };
    }
    let claim = verify_claim(m, &b.claim, B4_DEPTH)?;
    let z = zuckerman(m, B4_DEPTH)?;
    let gamma_ok = z.dimension == 1
        && matches!(z.generators.as_slice(), [g] if g.lambda == 0 && proportional(&g.vector, &Poly::one()).is_some());
    let mut swapped = b.claim.clone();
    swapped.summands[0] = Summand::new(SummandKind::M, 0, Poly::one());
    let control = !verify_claim(m, &swapped, B4_DEPTH)?.status.ok();
    Ok(Outcome::new(
        hwv_ok && claim.status.ok() && gamma_ok && control,
        format!(
            "depth {B4_DEPTH}: HWVs = delta^j {hwv_ok}; {} {:?}; Gamma = L(0) {gamma_ok}; swapped M(0) rejected {control}",
            claim.claim, claim.status
        ),
    ))
}

fn c9() -> Result<Outcome> {
    let mut bad = Vec::new();
    let mut family = 0;
    for j in 0..=3 {
        for m in 0..=3 {
            for n in 0..=3 {
                let x = VBasisElement::new(j, m, n);
                let v = x.expand();
                for r in 1..=6u32 {
                    if genfrcomp_closed_form(j, m, n, r) != iterate_f(&v, r as usize)? {
                        bad.push(format!("closed form ({j},{m},{n}) r={r}"));
                    }
                }
                if x.in_s_star() {
                    family += 1;
                    let w = x.weight() as usize;
                    if iterate_f(&v, w)?.is_zero() {
                        bad.push(format!("f^{w} vanishes on ({j},{m},{n})"));
                    }
                    if !iterate_f(&v, w + 1)?.is_zero() {
                        bad.push(format!("f^{} survives on ({j},{m},{n})", w + 1));
                    }
                }
            }
        }
    }
    Ok(Outcome::new(
        bad.is_empty(),
        format!("j,m,n <= 3, r <= 6; {family} S* elements tested for f^w != 0 = f^(w+1); failures {bad:?}"),
    ))
}

fn c10() -> Result<Outcome> {
    let r = verify_plus(B2S2_DEPTH)?;
    let failed: Vec<(u32, u32)> = r.blocks.iter().filter(|b| !b.passed()).map(|b| (b.m, b.n)).collect();
    Ok(Outcome::new(
        r.status.ok(),
        format!(
            "{} blocks A1^m v^n, m+n <= {B2S2_DEPTH}: character, HWV classification and M* witnesses; failures {failed:?}; \
             note: ker e exceeds the direct-sum count in {} odd-weight blocks",
            r.blocks.len(),
            r.not_direct.len()
        ),
    ))
}

/// Pairs `(ℓ,r)` where `S_{ℓ,r} = S_{ℓ,r+1}` because `A1^r A0^{ℓ−r}` has a
/// non-negative `A0` exponent.
pub fn degenerate_pairs() -> BTreeSet<(i64, i64)> {
    SUMMARY_ELL
        .flat_map(|l| SUMMARY_R.filter(move |&r| r <= l).map(move |r| (l, r)))
        .collect()
}

fn c11() -> Result<Outcome> {
    let d = B2S2_DEPTH;
    let b = b2s2_module(d)?;
    let mut other = Vec::new();
    if !(closed_under_action(&b.plus, plus_member)? && closed_under_action(&b.minus, minus_member)?) {
        other.push("M+ / M- split".to_string());
    }
    for l in SUMMARY_ELL {
        if !closed_under_action(&minus_block(l, d)?, minus_member_l(l))? {
            other.push(format!("M-_{l} not closed"));
        }
        if !zuckerman_minus(l, d)?.is_zero() {
            other.push(format!("Gamma(M-_{l}) != 0"));
        }
    }
    let mut failing = BTreeSet::new();
    for l in SUMMARY_ELL {
        for r in SUMMARY_R {
            let step = chain_step(l, r, d)?;
            if !step.submodule.ok() {
                other.push(format!("S_({l},{r}) not a submodule"));
            }
            let q = filtration_quotient(l, r, d)?;
            if q.nonzero && !q.status.ok() {
                other.push(format!("quotient ({l},{r}) claim {}", q.claim));
            }
            if !(step.strict.ok() && q.status.ok()) {
                failing.insert((l, r));
            }
        }
    }
    let predicted = degenerate_pairs();
    let ok = other.is_empty() && failing.is_empty();
    let mut out = Outcome::new(
        ok,
        format!(
            "depth {d}, l in -2..2, r <= 4; strictness/quotient failures {failing:?}; other failures {other:?}"
        ),
    );
    if !ok && other.is_empty() && failing == predicted {
        out.known = Some(format!(
            "S_(l,r) = S_(l,r+1) whenever r <= l, so those quotients are zero: {predicted:?}"
        ));
    }
    Ok(out)
}

fn c12(seed: u64) -> Result<Outcome> {
    let s = samples(seed, 12);
    let bridge = check_bridge(&s)?;
    let h = check_h_degree(&s)?;
    Ok(Outcome::new(
        bridge.passed() && h.passed() && h.checked > 0,
        format!(
            "{} word/commutator comparisons, {} homogeneous h = -deg checks; failures {:?}",
            bridge.checked,
            h.checked,
            bridge.failures.iter().chain(&h.failures).map(|f| &f.sample).collect::<Vec<_>>()
        ),
    ))
}

fn q_identities() -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for m in -8..=8i64 {
        if qint(-m) != -&qint(m) {
            bad.push(format!("[-{m}] != -[{m}]"));
        }
        for n in -8..=8i64 {
            if &qint(m) * &qint(n) != &qint(n) * &qint(m) {
                bad.push(format!("[{m}][{n}] not symmetric"));
            }
        }
        for a in 0..=4u64 {
            let b = qbinom(m, a)?;
            if m >= a as i64 {
                let f = &qfactorial(a) * &qfactorial(m as u64 - a);
                if qfactorial(m as u64).div_exact(&f)? != b {
                    bad.push(format!("qbinom({m},{a}) factorial form"));
                }
            }
            if m < 0 {
                let mut want = qbinom(-m + a as i64 - 1, a)?;
                if a % 2 == 1 {
                    want = -&want;
                }
                if b != want {
                    bad.push(format!("qbinom({m},{a}) negation rule"));
                }
            }
        }
    }
    if qbinom(4, 2)? != QLaurent::from_ints(&[(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]) {
        bad.push("qbinom(4,2)".into());
    }
    Ok(bad)
}

fn round_trips(seed: u64) -> Result<Vec<String>> {
    let mut rng = rng_for(seed, 13);
    let mut bad = Vec::new();
    for _ in 0..ROUND_TRIPS {
        let e = random_expr(&mut rng, 4);
        let printed = e.to_string();
        match parse_expr(&printed) {
            Ok(back) if evaluate_expr(&back)? == evaluate_expr(&e)? => {}
            _ => bad.push(printed),
        }
    }
    Ok(bad)
}

fn determinism(seed: u64) -> Result<bool> {
    let once = || -> Result<String> {
        let s = samples(seed, 1);
        let r = check_word_brackets(&DtlAction::new(DtlParams::zero()), &s[..10])?;
        let words: Vec<String> = s.iter().map(|w| w.to_string()).collect();
        Ok(serde_json::to_string(&(words, r)).expect("serializable"))
    };
    Ok(once()? == once()?)
}

fn c13(seed: u64) -> Result<Outcome> {
    let q = q_identities()?;
    let rt = round_trips(seed)?;
    let det = determinism(seed)?;
    Ok(Outcome::new(
        q.is_empty() && rt.is_empty() && det,
        format!(
            "q-identities failures {q:?}; {ROUND_TRIPS} parser round-trips, failures {rt:?}; identical reports under seed {seed}: {det}"
        ),
    ))
}

pub const TITLES: [&str; 13] = [
    "sl2 brackets through the word action",
    "relation preservation",
    "Jones-Wenzl projectors",
    "e, f, h on p_2",
    "U, D, z eigen-equations at a1 = 0",
    "quiver relations",
    "Kirby color certification",
    "B4 decomposition",
    "closed form for f^r",
    "M+ decomposition",
    "M- split, filtration, quotients, Zuckerman",
    "word action equals commutator action at (0,0)",
    "q-integers, parser round-trip, determinism",
];

/// Runs one criterion (1-based).
pub fn run_criterion(id: u32, seed: u64) -> CriterionResult {
    let start = Instant::now();
    let out = match id {
        1 => c1(seed),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(),
        9 => c9(),
        10 => c10(),
        11 => c11(),
        12 => c12(seed),
        13 => c13(seed),
        _ => Ok(Outcome::new(false, format!("no criterion {id}"))),
    };
    let out = out.unwrap_or_else(|e| Outcome::new(false, format!("error: {e}")));
    CriterionResult {
        id,
        title: TITLES.get(id as usize - 1).copied().unwrap_or("unknown").to_string(),
        status: Status::from_bool(out.ok),
        detail: out.detail,
        known_deviation: out.known,
        elapsed: start.elapsed(),
    }
}

pub fn run_all(seed: u64) -> AcceptanceReport {
    AcceptanceReport {
        seed,
        criteria: (1..=13).map(|id| run_criterion(id, seed)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_pairs_are_upper_triangle() {
        let d = degenerate_pairs();
        assert_eq!(d.len(), 1 + 2 + 3);
        assert!(d.contains(&(0, 0)) && d.contains(&(2, 2)) && !d.contains(&(1, 2)));
    }

    #[test]
    fn unknown_criterion_fails() {
        let r = run_criterion(14, DEFAULT_SEED);
        assert!(!r.status.ok() && r.known_deviation.is_none());
    }

    #[test]
    fn quick_criteria() {
        for id in [4, 13] {
            let r = run_criterion(id, DEFAULT_SEED);
            assert!(r.status.ok(), "{}", r.line());
        }
    }
}
