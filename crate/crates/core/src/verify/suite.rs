use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::exact::*;
use super::quadrature::{verify_orthogonality, QuadratureConfig};
use super::random::{retry_resonant, ParamSampler};
use super::IdentityReport;
use crate::branching::MkBuilder;
use crate::error::{Error, Result};
use crate::field::ParameterPoint;
use crate::partitions::{enumerate_branch_sources, partitions_in_box, Partition};
use crate::pieri::PieriCache;

/// Named families of checks runnable from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Pieri,
    CauchyMimachi,
    CauchyOkounkov,
    MIndep,
    Orthogonality,
    Branching,
    AskeyWilson,
    SpecialValues,
    StripLemma,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Pieri,
        Suite::CauchyMimachi,
        Suite::CauchyOkounkov,
        Suite::MIndep,
        Suite::Orthogonality,
        Suite::Branching,
        Suite::AskeyWilson,
        Suite::SpecialValues,
        Suite::StripLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pieri => "pieri",
            Suite::CauchyMimachi => "cauchy-mimachi",
            Suite::CauchyOkounkov => "cauchy-okounkov",
            Suite::MIndep => "m-indep",
            Suite::Orthogonality => "orthogonality",
            Suite::Branching => "branching",
            Suite::AskeyWilson => "askey-wilson",
            Suite::SpecialValues => "special-values",
            Suite::StripLemma => "strip-lemma",
        }
    }

    /// What `max_size` bounds, per suite:
    /// - pieri: `n ≤ S` and `λ ⊂ S^n`
    /// - cauchy-mimachi: `m, n ≤ S`
    /// - cauchy-okounkov: `m ≤ S`
    /// - m-indep, branching, special-values: `λ ⊂ S^k` for `k ≤ S`
    /// - askey-wilson: degree `≤ S`
    /// - orthogonality: one-variable degrees `≤ S` (the two-variable family is fixed)
    /// - strip-lemma: `m, n ≤ S`
    pub fn default_max_size(self) -> usize {
        match self {
            Suite::CauchyMimachi => 2,
            Suite::CauchyOkounkov | Suite::AskeyWilson => 4,
            _ => 3,
        }
    }

    fn needs_params(self) -> bool {
        self != Suite::StripLemma
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
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub max_size: usize,
    pub points: Vec<ParameterPoint>,
    /// Random points discarded because some coefficient was resonant there.
    pub resonant_skips: usize,
    pub passed: bool,
    pub cases_total: usize,
    pub cases_failed: usize,
    pub coefficients_checked: usize,
    pub irrational_coefficients: usize,
    pub cases: Vec<IdentityReport>,
}

fn boxes(s: usize) -> impl Iterator<Item = Partition> {
    (1..=s).flat_map(move |k| partitions_in_box(s, k))
}

fn cases_at(suite: Suite, s: usize, params: &ParameterPoint, alt: &ParameterPoint) -> Result<Vec<IdentityReport>> {
    let mut out = Vec::new();
    match suite {
        Suite::Pieri => {
            let mut b = MkBuilder::new(params.clone());
            for n in 1..=s {
                for lambda in partitions_in_box(s, n) {
                    for r in 1..=n {
                        out.push(verify_pieri_with(&mut b, &lambda, n, r)?);
                    }
                }
            }
        }
        Suite::CauchyMimachi => {
            let mut b = MkBuilder::new(params.clone());
            let mut d = MkBuilder::new(params.swapped());
            for m in 1..=s {
                for n in 1..=s {
                    out.push(verify_mimachi_cauchy_with(&mut b, &mut d, m, n)?);
                }
            }
        }
        Suite::CauchyOkounkov => {
            for m in 1..=s {
                out.push(verify_okounkov_column_row(m, params)?);
            }
        }
        Suite::MIndep | Suite::SpecialValues => {
            let cache = PieriCache::new();
            for lambda in boxes(s) {
                for mu in enumerate_branch_sources(&lambda)? {
                    out.push(if suite == Suite::MIndep {
                        verify_m_independence(&lambda, &mu, params, &cache)?
                    } else {
                        verify_special_values(&lambda, &mu, params, &cache)?
                    });
                }
            }
        }
        Suite::Branching => {
            let mut b = MkBuilder::new(params.clone());
            for lambda in boxes(s) {
                out.push(verify_branching_consistency(&mut b, &lambda)?);
            }
        }
        Suite::AskeyWilson => {
            if alt.t() == params.t() {
                return Err(Error::resonant("second t equals the first"));
            }
            for m in 0..=s {
                out.push(verify_askey_wilson_t_independence(m, params, alt.t())?);
            }
        }
        Suite::Orthogonality => {
            let one: Vec<_> = (0..=s).map(|m| Partition::new(vec![m])).collect::<Result<_>>()?;
            out.extend(verify_orthogonality(&one, params, QuadratureConfig::for_dimension(1))?);
            let two = [[0, 0], [1, 0], [1, 1], [2, 0]].map(|p| Partition::new(p.to_vec()).expect("valid"));
            out.extend(verify_orthogonality(&two, params, QuadratureConfig::for_dimension(2))?);
        }
        Suite::StripLemma => {
            for m in 1..=s {
                for n in 0..=s {
                    out.push(verify_strip_lemma(m, n)?);
                }
            }
        }
    }
    Ok(out)
}

/// Attempts per point before a run gives up on resonances.
const ATTEMPTS: usize = 25;

/// Run `suite` at `points` random parameter points derived from `seed`.
///
/// Point `i` is drawn from stream `i` of the seed, so results do not depend on
/// scheduling. Points resonant for any instance are redrawn.
pub fn run_suite(suite: Suite, max_size: Option<usize>, seed: u64, points: usize) -> Result<SuiteReport> {
    let s = max_size.unwrap_or(suite.default_max_size());
    let points = if suite.needs_params() { points.max(1) } else { 1 };
    let run_point = |i: usize| -> Result<(ParameterPoint, Vec<IdentityReport>, usize)> {
        let mut sampler = ParamSampler::with_stream(seed, 2 * i as u64);
        let mut alt = ParamSampler::with_stream(seed, 2 * i as u64 + 1);
        if suite == Suite::Orthogonality {
            sampler = sampler.orthogonality_domain();
        }
        retry_resonant(&mut sampler, ATTEMPTS, |p| cases_at(suite, s, p, &alt.draw()))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        (0..points).into_par_iter().map(run_point).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = (0..points).map(run_point).collect();

    let mut report = SuiteReport {
        suite,
        seed,
        max_size: s,
        points: Vec::new(),
        resonant_skips: 0,
        passed: true,
        cases_total: 0,
        cases_failed: 0,
        coefficients_checked: 0,
        irrational_coefficients: 0,
        cases: Vec::new(),
    };
    for res in results {
        let (params, cases, skipped) = res?;
        if suite.needs_params() {
            report.points.push(params);
        }
        report.resonant_skips += skipped;
        for c in cases {
            report.cases_total += 1;
            report.coefficients_checked += c.coefficients_checked;
            report.irrational_coefficients += c.irrational_coefficients;
            if !c.passed {
                report.cases_failed += 1;
                report.passed = false;
            }
            report.cases.push(c);
        }
    }
    Ok(report)
}
