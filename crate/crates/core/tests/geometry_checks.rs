//! Gluing, contraction and torus checks of the builtin threefolds.

use crepant_core::geometry::{
    builtin_geometry, variants, verify_all, verify_contraction, verify_equivariance, verify_transition,
    VerificationReport,
};

fn failing(reports: &[VerificationReport]) -> Vec<String> {
    reports.iter().filter(|r| !r.holds()).map(|r| r.identity.clone()).collect()
}

#[test]
fn conifold_holds_everywhere() {
    let g = builtin_geometry("conifold").unwrap();
    let reports = verify_all(&g, 100, 7).unwrap();
    assert!(failing(&reports).is_empty(), "{:?}", failing(&reports));
    assert!(reports.iter().all(|r| r.trials == 100));
}

#[test]
fn laufer1_equation_and_torus_action() {
    for k in 1..=4 {
        let g = builtin_geometry(&format!("laufer1:{k}")).unwrap();
        assert!(verify_transition(&g, 100, k as u64).unwrap().holds());
        assert!(verify_equivariance(&g, 100, k as u64).unwrap().holds());
        let reports = verify_contraction(&g, 100, k as u64).unwrap();
        let xy = reports.iter().find(|r| r.identity.ends_with("(x,y) chart")).unwrap();
        assert!(xy.holds(), "k = {k}");
        assert_eq!(failing(&reports).len(), 2, "k = {k}");
        let fixed = builtin_geometry(&format!("laufer1:{k}/corrected")).unwrap();
        assert!(failing(&verify_all(&fixed, 100, k as u64).unwrap()).is_empty(), "k = {k}");
    }
}

#[test]
fn laufer2_variants() {
    for n in 1..=3u32 {
        let printed = builtin_geometry(&format!("laufer2:{n}")).unwrap();
        let bad = failing(&verify_all(&printed, 30, 1).unwrap());
        assert!(bad.iter().any(|s| s.starts_with("v1:")), "{bad:?}");
        assert!(bad.iter().any(|s| s.starts_with("v4:")), "{bad:?}");
        let v4_only = builtin_geometry(&format!("laufer2:{n}/corrected-v4")).unwrap();
        let bad = failing(&verify_all(&v4_only, 30, 1).unwrap());
        assert!(bad.iter().all(|s| !s.starts_with("v4:")), "{bad:?}");
        let fixed = builtin_geometry(&format!("laufer2:{n}/corrected")).unwrap();
        assert!(failing(&verify_all(&fixed, 30, 1).unwrap()).is_empty());
    }
    let names: Vec<&str> = variants("laufer2", 1).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["corrected-v4", "corrected"]);
}

#[test]
fn seeds_fix_the_sample() {
    let g = builtin_geometry("laufer1:2").unwrap();
    let a = serde_json::to_string(&verify_all(&g, 10, 3).unwrap()).unwrap();
    let b = serde_json::to_string(&verify_all(&g, 10, 3).unwrap()).unwrap();
    let c = serde_json::to_string(&verify_all(&g, 10, 4).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn report_json_shape() {
    let g = builtin_geometry("laufer1:1").unwrap();
    let reports = verify_contraction(&g, 3, 0).unwrap();
    let v: serde_json::Value = serde_json::to_value(&reports[3]).unwrap();
    for key in ["geometry", "identity", "status", "trials", "counterexamples"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["status"], "fails");
    let ce = &v["counterexamples"][0];
    assert!(ce.get("point").is_some() && ce.get("residual").is_some());
}
