//! Machine-readable results. The field set is versioned by
//! [`SCHEMA_VERSION`]; any change to names or meanings bumps it.

use grnorm_core::ade::AdeVerification;
use grnorm_core::{AlgebroidCurve, ChainReport, ChainStep};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    #[serde(default)]
    pub curves: Vec<CurveReport>,
    /// Chain length of a curve whose singular points are the given curves.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub global_n: Option<usize>,
    #[serde(default)]
    pub verifications: Vec<VerificationReport>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            curves: Vec::new(),
            global_n: None,
            verifications: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSummary {
    pub gamma: Vec<u32>,
    pub tau: Vec<i64>,
    pub delta: usize,
    pub symmetric: bool,
    pub normal: bool,
    /// Semigroup members in the box `[0, gamma]`. A vector outside the box
    /// is a member exactly when its componentwise minimum with `gamma` is.
    pub semigroup: Vec<Vec<u32>>,
}

impl RingSummary {
    pub fn of(ring: &AlgebroidCurve) -> Self {
        let sg = ring.semigroup();
        RingSummary {
            gamma: ring.gamma().to_vec(),
            tau: ring.tau(),
            delta: ring.delta_invariant(),
            symmetric: grnorm_core::is_symmetric(sg),
            normal: ring.is_normal(),
            semigroup: sg.members().iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorReport {
    pub branches: Vec<usize>,
    pub recognized: String,
    pub gorenstein: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub index: usize,
    #[serde(flatten)]
    pub ring: RingSummary,
    pub dim_over_previous: usize,
    pub gorenstein: bool,
    pub normality_criterion: bool,
    pub recognized: String,
    pub factors: Vec<FactorReport>,
}

impl StepReport {
    pub fn of(step: &ChainStep) -> Self {
        StepReport {
            index: step.index,
            ring: RingSummary::of(&step.ring),
            dim_over_previous: step.dim_over_previous,
            gorenstein: step.gorenstein,
            normality_criterion: step.gr_criterion,
            recognized: step.recognized.to_string(),
            factors: step
                .factors
                .iter()
                .map(|f| FactorReport {
                    branches: f.branches.clone(),
                    recognized: f.recognized.to_string(),
                    gorenstein: f.fingerprint.gorenstein,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveReport {
    pub name: String,
    pub branches: usize,
    #[serde(flatten)]
    pub ring: RingSummary,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default)]
    pub chain: Vec<StepReport>,
}

impl CurveReport {
    pub fn semigroup(name: &str, ring: &AlgebroidCurve) -> Self {
        CurveReport {
            name: name.to_string(),
            branches: ring.branch_count(),
            ring: RingSummary::of(ring),
            n: None,
            chain: Vec::new(),
        }
    }

    pub fn chain(name: &str, report: &ChainReport) -> Self {
        let mut out = Self::semigroup(name, &report.steps[0].ring);
        out.n = Some(report.n);
        out.chain = report.steps.iter().map(StepReport::of).collect();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub ade: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub checks: Vec<CheckReport>,
}

impl VerificationReport {
    pub fn of(v: &AdeVerification) -> Self {
        VerificationReport {
            ade: v.ade.to_string(),
            passed: v.passed(),
            n: v.chain.as_ref().map(|c| c.n),
            checks: v
                .checks
                .iter()
                .map(|c| CheckReport {
                    name: c.name.clone(),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                    passed: c.passed,
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use grnorm_core::{gr_chain, make_ade, verify_ade, AdeType};

    #[test]
    fn round_trips_through_json() {
        let mut report = Report::new("normalize");
        for t in [AdeType::D(7), AdeType::E(6)] {
            let chain = gr_chain(&make_ade(t).unwrap()).unwrap();
            report.curves.push(CurveReport::chain(&t.to_string(), &chain));
        }
        report.global_n = Some(3);
        report.verifications.push(VerificationReport::of(&verify_ade(AdeType::A(3)).unwrap()));
        let text = serde_json::to_string_pretty(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert!(text.contains("\"schema_version\": 1"));
    }

    #[test]
    fn d7_chain_fields() {
        let chain = gr_chain(&make_ade(AdeType::D(7)).unwrap()).unwrap();
        let r = CurveReport::chain("D7", &chain);
        assert_eq!(r.n, Some(3));
        assert_eq!(r.ring.gamma, vec![2, 6]);
        let gammas: Vec<Vec<u32>> = r.chain.iter().map(|s| s.ring.gamma.clone()).collect();
        assert_eq!(gammas, vec![vec![2, 6], vec![1, 4], vec![0, 2], vec![0, 0]]);
        assert_eq!(r.chain[2].factors.len(), 2);
    }
}
