use grnorm_core::ade::expected_n;
use grnorm_core::{verify_ade, AdeType};

#[test]
fn every_simple_type_verifies() {
    for t in AdeType::sweep() {
        let report = verify_ade(t).unwrap();
        let failed: Vec<_> = report.checks.iter().filter(|c| !c.passed).collect();
        assert!(failed.is_empty(), "{t}: {failed:?}");
        assert_eq!(report.chain.as_ref().map(|c| c.n), Some(expected_n(t)));
    }
}

#[test]
fn out_of_range_indices_are_rejected() {
    for bad in ["A0", "D3", "E5", "E9", "F4"] {
        assert!(bad.parse::<AdeType>().is_err(), "{bad}");
    }
    assert_eq!("d10".parse::<AdeType>().unwrap(), AdeType::D(10));
}
