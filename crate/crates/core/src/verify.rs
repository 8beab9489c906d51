//! Grid runs of the identity checkers and oracle cross-checks.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::domain::TorusKnot;
use crate::error::{Error, Result};
use crate::identities::{self, IdentityReport};
use crate::maxsig;
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Glm,
    EvenPeriodicity,
    Main,
    OddShift,
    ClosedForms,
    Oracle,
    BruteMax,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Glm,
        Suite::EvenPeriodicity,
        Suite::Main,
        Suite::OddShift,
        Suite::ClosedForms,
        Suite::Oracle,
        Suite::BruteMax,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Glm => "glm",
            Suite::EvenPeriodicity => "even-periodicity",
            Suite::Main => "main",
            Suite::OddShift => "odd-shift",
            Suite::ClosedForms => "closed-forms",
            Suite::Oracle => "oracle",
            Suite::BruteMax => "brute-max",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyConfig {
    pub p_max: u32,
    pub q_max: u32,
    pub tolerance: f64,
    /// Angles per knot for the Hermitian comparison.
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            p_max: 10,
            q_max: 30,
            tolerance: oracle::DEFAULT_TOLERANCE,
            samples: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<IdentityReport>,
}

impl SuiteSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Coprime pairs `2 <= p <= p_max`, `p < q <= q_max`, sorted.
pub fn coprime_pairs(p_max: u32, q_max: u32) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 2..=p_max as i64 {
        for q in p + 1..=q_max as i64 {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

fn failure(name: &str, knots: &[(i64, i64)], err: Error) -> IdentityReport {
    let mut details = std::collections::BTreeMap::new();
    details.insert("error".to_string(), err.to_string());
    IdentityReport {
        identity_name: name.to_string(),
        knot_params: knots.iter().map(|&(p, q)| (p as u32, q as u32)).collect(),
        expected: 0,
        computed: 0,
        pass: false,
        details,
    }
}

fn flag_report(name: &str, knot: &TorusKnot, ok: bool) -> IdentityReport {
    IdentityReport {
        identity_name: name.to_string(),
        knot_params: vec![(knot.p(), knot.q())],
        expected: 1,
        computed: i64::from(ok),
        pass: ok,
        details: Default::default(),
    }
}

fn oracle_reports(p: i64, q: i64, cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let knot = TorusKnot::new(p, q).expect("grid pairs are coprime");
    match oracle::compare_with_lattice(&knot, cfg.samples, cfg.tolerance) {
        Ok(c) => {
            let matching = c.angles.iter().filter(|a| a.hermitian == a.lattice).count();
            let mut hermitian = IdentityReport {
                identity_name: "oracle-hermitian".to_string(),
                knot_params: vec![(knot.p(), knot.q())],
                expected: c.angles.len() as i64,
                computed: matching as i64,
                pass: c.pass,
                details: Default::default(),
            };
            for a in c.angles.iter().filter(|a| a.hermitian != a.lattice) {
                hermitian.details.insert(
                    format!("t={}", a.t),
                    format!("hermitian={} lattice={}", a.hermitian, a.lattice),
                );
            }
            vec![
                flag_report("oracle-alexander", &knot, c.alexander_ok),
                hermitian,
            ]
        }
        Err(e @ Error::ValidationFailure(_)) => vec![failure("oracle-alexander", &[(p, q)], e)],
        Err(e) => vec![failure("oracle-hermitian", &[(p, q)], e)],
    }
}

fn brute_reports(p: i64, q: i64) -> Vec<IdentityReport> {
    let knot = TorusKnot::new(p, q).expect("grid pairs are coprime");
    let (max, argmax) = oracle::brute_force_max(&knot);
    let expected = maxsig::max_signature(&knot);
    let mut brute = IdentityReport {
        identity_name: "brute-max".to_string(),
        knot_params: vec![(knot.p(), knot.q())],
        expected,
        computed: max,
        pass: expected == max,
        details: Default::default(),
    };
    let loci: Vec<String> = argmax.iter().map(|l| l.to_string()).collect();
    brute.details.insert("argmax".to_string(), loci.join(" "));
    let window = flag_report(
        "maximizer-window",
        &knot,
        oracle::maximizer_in_window(&knot, &argmax),
    );
    vec![brute, window]
}

fn reports_for(suite: Suite, p: i64, q: i64, cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let wrap = |name: &str, r: Result<IdentityReport>| match r {
        Ok(r) => vec![r],
        Err(e) => vec![failure(name, &[(p, q)], e)],
    };
    match suite {
        Suite::Glm => wrap("glm", identities::check_glm(p, q)),
        Suite::EvenPeriodicity if p % 2 == 0 => {
            wrap("even-periodicity", identities::check_even_periodicity(p, q))
        }
        Suite::Main => wrap("main", identities::check_main_recursion(p, q)),
        Suite::OddShift if p % 2 == 1 => identities::check_odd_shift_identity(p, q)
            .unwrap_or_else(|e| vec![failure("odd-shift", &[(p, q)], e)]),
        Suite::Oracle => oracle_reports(p, q, cfg),
        Suite::BruteMax => brute_reports(p, q),
        _ => Vec::new(),
    }
}

/// Runs one suite over the grid. Work is spread over the current rayon
/// pool; results are ordered by knot, so output does not depend on it.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteSummary {
    let mut reports: Vec<IdentityReport> = if suite == Suite::ClosedForms {
        (2..=cfg.p_max as i64)
            .into_par_iter()
            .flat_map_iter(|p| {
                identities::check_closed_forms(p)
                    .unwrap_or_else(|e| vec![failure("closed-forms", &[(p, 2 * p + 1)], e)])
            })
            .collect()
    } else {
        coprime_pairs(cfg.p_max, cfg.q_max)
            .into_par_iter()
            .flat_map_iter(|(p, q)| reports_for(suite, p, q, cfg))
            .collect()
    };
    reports.sort_by(|a, b| {
        (&a.knot_params, &a.identity_name).cmp(&(&b.knot_params, &b.identity_name))
    });
    let checked = reports.len();
    let failures: Vec<IdentityReport> = reports.into_iter().filter(|r| !r.pass).collect();
    SuiteSummary {
        suite,
        checked,
        passed: checked - failures.len(),
        failed: failures.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn grid_pairs() {
        let pairs = coprime_pairs(3, 6);
        assert_eq!(pairs, vec![(2, 3), (2, 5), (3, 4), (3, 5)]);
    }

    #[test]
    fn small_grid_passes() {
        let cfg = VerifyConfig {
            p_max: 6,
            q_max: 14,
            ..Default::default()
        };
        for s in Suite::ALL {
            let summary = run_suite(s, &cfg);
            assert!(summary.all_passed(), "{summary:?}");
            assert!(summary.checked > 0, "{s}");
        }
    }
}
