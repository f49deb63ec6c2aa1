use dtl_sl2::dtl::Status;
use dtl_sl2::kirby::build_kirby;
use dtl_sl2::lasagna::{b4_claim, summary_report};
use dtl_sl2::rep::DecompositionClaim;
use dtl_sl2::ring::Rational;

#[test]
fn summary_serializes_with_depth_and_status() {
    let r = summary_report(12).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["depth"], 12);
    assert!(v["claims"].as_array().unwrap().len() > 30);
    assert_eq!(v["status"], "fail");
    let failing: Vec<&str> = r
        .claims
        .iter()
        .filter(|c| c.status == Status::Fail)
        .map(|c| c.claim.as_str())
        .collect();
    assert!(failing.iter().all(|c| c.starts_with("S_(")), "{failing:?}");
    assert_eq!(failing.len(), 6, "{failing:?}");
}

#[test]
fn kirby_report_round_trips_through_json() {
    let r = build_kirby(1, 2, &Rational::new(1, 2)).unwrap().report().unwrap();
    assert!(r.status.ok());
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["levels"][0], "q^-1 P_1^(-1/4*E1)");
    assert_eq!(v["maps"].as_array().unwrap().len(), 2);
}

#[test]
fn claims_parse_from_json() {
    let text = serde_json::to_string(&b4_claim(12)).unwrap();
    let back: DecompositionClaim = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_string(), "M*(0) ⊕ M(-4) ⊕ M(-8) ⊕ M(-12)");
}
