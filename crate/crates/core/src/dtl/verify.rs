//! Relation preservation, bracket identities through the word action, and the
//! comparison between the word action and the matrix commutator action.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::action::{expand, DtlAction, DtlParams};
use super::expr::{parse_expr, Expr, Macro};
use super::word::{DiagramWord, WordComb};
use crate::error::Result;
use crate::ring::{Grading, Poly, Rational};
use crate::sl2core::{bracket_name, Sl2, BRACKETS};
use crate::statespace::{star, PolyMatrix, Prim, StateBasis};

/// Largest ambient strand count used when instantiating local relations.
pub const RELATION_CONTEXT_STRANDS: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn ok(self) -> bool {
        self == Status::Pass
    }
}

/// One relation of the category, as `lhs = rhs`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: &'static str,
    pub lhs: Expr,
    pub rhs: Expr,
}

pub fn defining_relations() -> Vec<Relation> {
    let r = |name, l: &str, rr: &str| Relation {
        name,
        lhs: parse_expr(l).expect("relation literal"),
        rhs: parse_expr(rr).expect("relation literal"),
    };
    vec![
        r("circle", "cup ; cap", "2"),
        r("dot-squared", "dot ; dot", "E1*dot - E2*id"),
        r(
            "dot-sum",
            "dot|id + id|dot",
            "E1*(id|id) - E1*(cap ; cup) + (cap ; cup ; dot|id) + (dot|id ; cap ; cup)",
        ),
    ]
}

impl Relation {
    /// `lhs − rhs` as words, embedded in every ambient identity context with at
    /// most `max_strands` extra strands.
    pub fn contexts(&self, max_strands: usize) -> Result<Vec<(usize, usize, WordComb)>> {
        let diff = expand(&Expr::difference(self.lhs.clone(), self.rhs.clone()), 10_000)?;
        let width = diff.source();
        let mut out = Vec::new();
        for extra in 0..=max_strands.saturating_sub(width) {
            for left in 0..=extra {
                out.push((left, extra - left, diff.embed(left, extra - left)));
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `none` for the relation itself, otherwise the sl₂ generator applied.
    pub generator: String,
    pub status: Status,
    pub contexts: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub params: DtlParams,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status.ok())
    }
}

fn first_entry(m: &PolyMatrix) -> Option<String> {
    let (sb, tb) = (StateBasis::new(m.src()), StateBasis::new(m.tgt()));
    m.entries()
        .next()
        .map(|(i, j, p)| format!("[{}, {}] = {}", tb.label(i), sb.label(j), p))
}

pub fn verify_relations(action: &DtlAction) -> Result<RelationReport> {
    let mut checks = Vec::new();
    for rel in defining_relations() {
        let ctx = rel.contexts(RELATION_CONTEXT_STRANDS)?;
        let gens: [Option<Sl2>; 4] = [None, Some(Sl2::E), Some(Sl2::F), Some(Sl2::H)];
        for g in gens {
            let mut witness = None;
            for (left, right, diff) in &ctx {
                let w = match g {
                    None => diff.clone(),
                    Some(g) => action.act(g, diff)?,
                };
                let m = w.evaluate();
                if let Some(e) = first_entry(&m) {
                    witness = Some(format!("context ({left} left, {right} right): {e}"));
                    break;
                }
            }
            checks.push(RelationCheck {
                relation: rel.name.into(),
                generator: g.map(|g| g.name().to_string()).unwrap_or_else(|| "none".into()),
                status: Status::from_bool(witness.is_none()),
                contexts: ctx.len(),
                witness,
            });
        }
    }
    Ok(RelationReport {
        params: action.params().clone(),
        checks,
    })
}

/// A random single-term word on at most `max_strands` strands with a small
/// random coefficient.
pub fn random_word<R: Rng>(rng: &mut R, max_strands: usize, max_slices: usize) -> WordComb {
    let source = rng.gen_range(0..=max_strands);
    let mut width = source;
    let mut slices = Vec::new();
    for _ in 0..rng.gen_range(1..=max_slices) {
        let mut slice = Vec::new();
        let mut left = width;
        let mut out_width = 0;
        while left > 0 || (out_width + 2 <= max_strands && rng.gen_bool(0.15)) {
            let can_cup = out_width + 2 + left <= max_strands;
            let choice = rng.gen_range(0..8);
            let p = match choice {
                0 | 1 if left >= 2 => Prim::Cap,
                2 if can_cup => Prim::Cup,
                3 | 4 if left >= 1 => Prim::Dot,
                _ if left >= 1 => Prim::Id,
                _ if can_cup => Prim::Cup,
                _ => break,
            };
            let (a, b) = p.arity();
            left -= a;
            out_width += b;
            slice.push(p);
        }
        width = out_width;
        slices.push(slice);
    }
    let coeffs = ["1", "-2", "1/2", "E1", "E2 - E1", "-3/4*E1^2"];
    let c: Poly = coeffs.choose(rng).expect("nonempty").parse().expect("literal");
    let w = DiagramWord::from_slices(source, slices).expect("generated slices compose");
    WordComb::term(c, w)
}

/// A random expression: a printed random word, reparsed, then possibly
/// wrapped with a macro, a sum, a tensor factor or a sign.
pub fn random_expr<R: Rng>(rng: &mut R, max_strands: usize) -> Expr {
    let w = random_word(rng, max_strands, 3);
    let e = parse_expr(&w.to_string()).expect("printed words reparse");
    let (s, t) = e.arity().expect("generated words compose");
    match rng.gen_range(0..6) {
        0 if t >= 1 => Expr::stack(e, Expr::Macro(Macro::Z(t))),
        1 if s == t && s >= 2 => Expr::sum(e, Expr::scale(Poly::e1(), Expr::Macro(Macro::S(1, s)))),
        2 if t < max_strands => Expr::tensor(e, Expr::Prim(Prim::Dot)),
        3 => Expr::negate(e),
        4 if s >= 2 => Expr::stack(Expr::Macro(Macro::Jw(s)), e),
        _ => e,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleFailure {
    pub sample: String,
    pub check: String,
    pub witness: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleReport {
    pub checked: usize,
    pub failures: Vec<SampleFailure>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `[x,y] = c·z` through the word action on every sample.
pub fn check_word_brackets(action: &DtlAction, samples: &[WordComb]) -> Result<SampleReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in samples {
        let images: Vec<WordComb> = Sl2::ALL.iter().map(|g| action.act(*g, w)).collect::<Result<_>>()?;
        for (x, y, z, c) in BRACKETS {
            let xy = action.act(x, &images[y.index()])?;
            let yx = action.act(y, &images[x.index()])?;
            let diff = xy.sub(&yx)?.sub(&images[z.index()].scale(&Poly::int(c)))?;
            checked += 1;
            if let Some(e) = first_entry(&diff.evaluate()) {
                failures.push(SampleFailure {
                    sample: w.to_string(),
                    check: bracket_name(x, y),
                    witness: e,
                });
            }
        }
    }
    Ok(SampleReport { checked, failures })
}

/// Checks that the word action at `(0,0)` agrees with the matrix commutator
/// action at zero twists.
pub fn check_bridge(samples: &[WordComb]) -> Result<SampleReport> {
    let action = DtlAction::new(DtlParams::zero());
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in samples {
        let m = w.evaluate();
        for g in Sl2::ALL {
            let lhs = action.act(g, w)?.evaluate();
            let rhs = star(g, &m)?;
            checked += 1;
            if let Some(e) = first_entry(&lhs.sub(&rhs)?) {
                failures.push(SampleFailure {
                    sample: w.to_string(),
                    check: format!("{g} word vs commutator"),
                    witness: e,
                });
            }
        }
    }
    Ok(SampleReport { checked, failures })
}

/// On homogeneous samples, `h∗F = −deg(F)·F`.
pub fn check_h_degree(samples: &[WordComb]) -> Result<SampleReport> {
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in samples {
        let m = w.evaluate();
        let Some(d) = m.homogeneous_degree() else { continue };
        checked += 1;
        let diff = star(Sl2::H, &m)?.add(&m.scale_rational(&Rational::from_int(d)))?;
        if let Some(e) = first_entry(&diff) {
            failures.push(SampleFailure {
                sample: w.to_string(),
                check: "h = -deg".into(),
                witness: e,
            });
        }
    }
    Ok(SampleReport { checked, failures })
}

/// Degree of a homogeneous word combination: `2·dots + deg(coefficient)`.
pub fn word_degree(w: &WordComb) -> Option<i64> {
    let mut d = None;
    for (word, c) in w.terms() {
        let cd = c.homogeneous_degree(Grading::CANONICAL)?;
        let x = cd + 2 * word.dots() as i64;
        match d {
            None => d = Some(x),
            Some(y) if y != x => return None,
            _ => {}
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn samples(n: usize) -> Vec<WordComb> {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..n).map(|_| random_word(&mut rng, 4, 4)).collect()
    }

    #[test]
    fn relations_hold_at_standard_points() {
        for p in [DtlParams::zero(), DtlParams::new(Rational::one(), Rational::new(-1, 2))] {
            let r = verify_relations(&DtlAction::new(p)).unwrap();
            assert!(r.passed(), "{:?}", r.checks);
            assert_eq!(r.checks.len(), 12);
        }
    }

    #[test]
    fn corrupted_f_dot_breaks_relation_two() {
        let a = DtlAction::new(DtlParams::zero())
            .with_image(Sl2::F, Prim::Dot, WordComb::zero(1, 1))
            .unwrap();
        let r = verify_relations(&a).unwrap();
        let bad = r
            .checks
            .iter()
            .find(|c| c.relation == "dot-squared" && c.generator == "f")
            .unwrap();
        assert_eq!(bad.status, Status::Fail);
        assert!(bad.witness.is_some());
    }

    #[test]
    fn random_words_are_bounded() {
        for w in samples(100) {
            assert!(w.source() <= 4 && w.target() <= 4);
        }
    }

    #[test]
    fn brackets_and_bridge_on_samples() {
        let s = samples(20);
        let a = DtlAction::new(DtlParams::new(Rational::from_int(-1), Rational::from_int(2)));
        assert!(check_word_brackets(&a, &s).unwrap().passed());
        assert!(check_bridge(&s).unwrap().passed());
        let r = check_h_degree(&s).unwrap();
        assert!(r.passed() && r.checked > 0);
    }

    #[test]
    fn h_is_nonpositive_when_a1_plus_2a2_vanishes() {
        let a = DtlAction::new(DtlParams::new(Rational::one(), Rational::new(-1, 2)));
        for w in samples(30) {
            let Some(d) = word_degree(&w) else { continue };
            let hw = a.act(Sl2::H, &w).unwrap().evaluate();
            assert_eq!(hw, w.evaluate().scale_rational(&Rational::from_int(-d)));
        }
    }
}
