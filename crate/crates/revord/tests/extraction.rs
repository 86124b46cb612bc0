//! End-to-end extraction runs over the catalog and the composite fixtures.

use revord::catalog::{forbidden, witness, ForbiddenKind};
use revord::extract::{
    case_classify, certificate_to_json, extract_forbidden, reverify_json, verify_certificate,
    Budget,
};
use revord::maps::CheckReport;

fn kind(s: &str) -> ForbiddenKind {
    s.parse().unwrap()
}

fn run_one(key: &str) -> (String, usize) {
    let k = kind(key);
    let p = forbidden(k);
    let w = witness(k);
    let budget = Budget::default();
    let cert = extract_forbidden(&p, &w.map, &w.pair.0, &w.pair.1, &budget)
        .unwrap_or_else(|e| panic!("{key}: extraction failed: {e}"));
    let report = verify_certificate(&p, &cert, budget.verify_window);
    assert!(
        report.is_ok(),
        "{key}: certificate of {} fails verification: {report}",
        cert.kind
    );
    (cert.kind.to_string(), cert.assumptions.len())
}

#[test]
fn extraction_on_every_canonical_kind() {
    for k in ForbiddenKind::canonical() {
        let key = k.to_string();
        let (found, assumed) = run_one(&key);
        assert_eq!(
            assumed, 0,
            "{key}: catalog extraction used {assumed} assumed oracle answers (found {found})"
        );
    }
}

#[test]
fn extraction_recovers_expected_kinds() {
    // self-runs land on the structure itself (or the self-dual partner)
    for key in ["F1", "F4", "F5", "F6", "F7", "F8", "F3", "G1", "G2", "G3", "G4"] {
        let (found, _) = run_one(key);
        assert_eq!(found, key, "self-run of {key} found {found}");
    }
}

#[test]
fn classification_matches_the_proof_table() {
    let expect = [
        ("F1", 4, 4, false),
        ("F4", 4, 4, false),
        ("F7", 4, 4, false),
        ("F5", 1, 1, false),
        ("F6", 2, 2, false),
        ("F8", 12, 12, false),
        ("F3", 12, 12, false),
        ("F2", 9, 8, true),
        ("F6d", 5, 2, true),
        ("F5d", 7, 1, true),
        ("F2d", 8, 8, false),
        ("F4d", 11, 4, true),
        ("F1d", 11, 4, true),
        ("F7d", 11, 4, true),
    ];
    for (key, case, normalized, dualized) in expect {
        let k = kind(key);
        let p = forbidden(k);
        let w = witness(k);
        let c = case_classify(&p, &w.map, &w.pair.0, &w.pair.1)
            .unwrap_or_else(|e| panic!("{key}: classification failed: {e}"));
        assert_eq!(c.case, case, "{key}: case");
        assert_eq!(c.normalized_case, normalized, "{key}: normalized case");
        assert_eq!(c.dualized, dualized, "{key}: dualization");
    }
}

#[test]
fn certificates_roundtrip_through_json() {
    let k = kind("F8");
    let p = forbidden(k);
    let w = witness(k);
    let budget = Budget::default();
    let cert = extract_forbidden(&p, &w.map, &w.pair.0, &w.pair.1, &budget).unwrap();
    let json = certificate_to_json(&cert, 40).unwrap();
    assert_eq!(json.kind, "F8");
    let text = serde_json::to_string(&json).unwrap();
    let back: revord::extract::CertificateJson = serde_json::from_str(&text).unwrap();
    assert!(reverify_json(&p, &back, 40).is_ok());
}

#[test]
fn corrupted_certificate_is_rejected() {
    let k = kind("F8");
    let p = forbidden(k);
    let w = witness(k);
    let budget = Budget::default();
    let cert = extract_forbidden(&p, &w.map, &w.pair.0, &w.pair.1, &budget).unwrap();
    let mut json = certificate_to_json(&cert, 30).unwrap();
    // swap two targets: injectivity survives, order equivalence breaks
    let t = json.embedding[0].target.clone();
    json.embedding[0].target = json.embedding[1].target.clone();
    json.embedding[1].target = t;
    let report = reverify_json(&p, &json, 30);
    assert!(!report.is_ok(), "corrupted certificate accepted");
}
