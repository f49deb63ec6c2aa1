use std::fmt::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use dtl_sl2::acceptance::run_all;
use dtl_sl2::dtl::{
    check_bridge, check_word_brackets, evaluate_expr, normalize, parse_expr, random_word, verify_relations, DtlAction,
    DtlParams, Status,
};
use dtl_sl2::karoubi::{jw, jw_bruteforce, quiver_check, JW_BRUTE_BOUND};
use dtl_sl2::kirby::build_kirby;
use dtl_sl2::lasagna::{b4_module, summary_report};
use dtl_sl2::rep::{verify_claim, zuckerman};
use dtl_sl2::ring::Rational;
use dtl_sl2::Result;

/// What a command produced: a pass/fail status, a JSON report and a text
/// rendering of the same report.
pub struct Outcome {
    pub status: Status,
    pub report: Value,
    pub text: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn mark(s: Status) -> &'static str {
    if s.ok() {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn dtl_verify(params: &DtlParams, samples: usize, seed: u64) -> Result<Outcome> {
    let action = DtlAction::new(params.clone());
    let relations = verify_relations(&action)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words: Vec<_> = (0..samples).map(|_| random_word(&mut rng, 4, 4)).collect();
    let brackets = check_word_brackets(&action, &words)?;
    let bridge = if params.a1.is_zero() && params.a2.is_zero() {
        Some(check_bridge(&words)?)
    } else {
        None
    };
    let ok = relations.passed() && brackets.passed() && bridge.as_ref().is_none_or(|b| b.passed());
    let mut text = format!("params {params}\n");
    for c in &relations.checks {
        writeln!(text, "{:<12} {:<5} {}", c.relation, c.generator, mark(c.status)).unwrap();
    }
    writeln!(text, "brackets on {} words: {} failures", words.len(), brackets.failures.len()).unwrap();
    if let Some(b) = &bridge {
        writeln!(text, "word action vs commutator: {} failures", b.failures.len()).unwrap();
    }
    Ok(Outcome {
        status: Status::from_bool(ok),
        report: json!({ "relations": relations, "brackets": brackets, "bridge": bridge }),
        text,
    })
}

pub fn jw_cmd(n: usize) -> Result<Outcome> {
    let p = jw(n)?;
    let idempotent = p.is_idempotent();
    let turnbacks = p.kills_turnbacks();
    let symmetrizer = if n <= JW_BRUTE_BOUND {
        Some(*p.matrix == jw_bruteforce(n)?)
    } else {
        None
    };
    let ok = idempotent && turnbacks && symmetrizer.unwrap_or(true);
    let mut text = format!("p_{n}: idempotent {idempotent}, kills turnbacks {turnbacks}");
    if let Some(s) = symmetrizer {
        write!(text, ", equals symmetrizer {s}").unwrap();
    }
    writeln!(text, "\n{:?}", p.matrix).unwrap();
    Ok(Outcome {
        status: Status::from_bool(ok),
        report: json!({
            "n": n,
            "idempotent": idempotent,
            "kills_turnbacks": turnbacks,
            "equals_symmetrizer": symmetrizer,
            "matrix": p.matrix.to_json(),
        }),
        text,
    })
}

pub fn quiver(n_max: usize) -> Result<Outcome> {
    let r = quiver_check(n_max)?;
    let mut text = String::new();
    for c in &r.checks {
        writeln!(text, "n={} {:<36} {}", c.n, c.relation, mark(c.status)).unwrap();
    }
    Ok(Outcome {
        status: Status::from_bool(r.passed()),
        report: to_value(&r),
        text,
    })
}

pub fn kirby(k: usize, levels: usize, a2: &Rational) -> Result<Outcome> {
    let r = build_kirby(k, levels, a2)?.report()?;
    let mut text = format!("Kirby {k}-color, a2 = {a2}\nlevels: {}\n", r.levels.join(", "));
    for m in &r.maps {
        writeln!(
            text,
            "{} from level {}: degree {} + shift {} = {}; e*,f*,h* = 0: {}",
            m.name,
            m.source_level,
            m.intrinsic_degree,
            m.shift_difference,
            m.net_degree,
            m.star.iter().all(|s| s.ok())
        )
        .unwrap();
    }
    for c in &r.composites {
        writeln!(text, "composite from level {}: {}", c.source_level, mark(Status::from_bool(c.passed()))).unwrap();
    }
    Ok(Outcome {
        status: r.status,
        report: to_value(&r),
        text,
    })
}

pub fn decompose_b4(depth: i64) -> Result<Outcome> {
    let b = b4_module(depth)?;
    let claim = verify_claim(&b.module, &b.claim, depth)?;
    let gamma = zuckerman(&b.module, depth)?;
    let mut text = format!("B4 at depth {depth}\nclaim {}: {}\n", claim.claim, mark(claim.status));
    for s in &claim.summands {
        writeln!(text, "  {:<8} {} {}", s.summand, mark(Status::from_bool(s.passed())), s.detail).unwrap();
    }
    writeln!(
        text,
        "Gamma: dimension {} from {:?}\n{}\n{}",
        gamma.dimension,
        gamma.generators.iter().map(|g| g.vector.to_string()).collect::<Vec<_>>(),
        claim.caveat,
        gamma.caveat
    )
    .unwrap();
    Ok(Outcome {
        status: claim.status,
        report: json!({ "depth": depth, "claim": claim, "zuckerman": gamma }),
        text,
    })
}

pub fn decompose_b2s2(depth: i64) -> Result<Outcome> {
    let r = summary_report(depth)?;
    let mut text = format!("B2xS2 summary at depth {depth}\n");
    for c in &r.claims {
        writeln!(text, "{} {}  ({})", mark(c.status), c.claim, c.detail).unwrap();
    }
    for c in &r.diagnostics {
        writeln!(text, "diagnostic {} {}  ({})", mark(c.status), c.claim, c.detail).unwrap();
    }
    Ok(Outcome {
        status: r.status,
        report: to_value(&r),
        text,
    })
}

pub fn eval_expr(text_in: &str) -> Result<Outcome> {
    let e = parse_expr(text_in)?;
    let m = evaluate_expr(&e)?;
    let normal = normalize(&m)?;
    Ok(Outcome {
        status: Status::Pass,
        report: json!({
            "expr": e.to_string(),
            "normalized": normal.to_string(),
            "matrix": m.to_json(),
        }),
        text: format!("{normal}\n"),
    })
}

pub fn selftest(seed: u64) -> Result<Outcome> {
    let r = run_all(seed);
    let text = r.criteria.iter().map(|c| c.line_with(false) + "\n").collect();
    Ok(Outcome {
        status: Status::from_bool(r.passed()),
        report: to_value(&r),
        text,
    })
}
