//! Acceptance engine: exact identity verifiers, the torus-quadrature
//! orthogonality oracle, seeded random parameter points and suite runners.
//!
//! Every exact verifier reduces to "this Laurent polynomial is zero". A
//! failing report carries the first ten surviving monomials.

mod exact;
mod quadrature;
mod random;
mod suite;

use serde::Serialize;

use crate::field::{FieldElement, ParameterPoint};
use crate::laurent::{Exponent, LaurentPoly};

pub use exact::{
    verify_askey_wilson_t_independence, verify_branching_consistency, verify_m_independence, verify_mimachi_cauchy,
    verify_mimachi_cauchy_with, verify_okounkov_column_row, verify_pieri, verify_pieri_with, verify_special_values,
    verify_strip_lemma,
};
pub use quadrature::{
    density, density_truncation_bound, inner_product, verify_orthogonality, QuadratureConfig, TorusQuadrature,
};
pub use random::{retry_resonant, ParamSampler};
pub use suite::{run_suite, Suite, SuiteReport};

/// How many surviving monomials a failing report lists.
pub const MAX_OFFENDING: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Offending {
    pub exp: Exponent,
    pub coef: FieldElement,
}

/// Outcome of one identity check at one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub params: Option<ParameterPoint>,
    pub passed: bool,
    /// Number of nonzero terms left in `LHS − RHS`.
    pub residual_terms: usize,
    pub offending: Vec<Offending>,
    /// Pieri or branching coefficients produced along the way, all of which
    /// were checked to lie in ℚ.
    pub coefficients_checked: usize,
    /// Of those, how many kept a nonzero `√s` component.
    pub irrational_coefficients: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityReport {
    fn new(identity: &str, instance: String, params: Option<&ParameterPoint>) -> Self {
        Self {
            identity: identity.to_string(),
            instance,
            params: params.cloned(),
            passed: true,
            residual_terms: 0,
            offending: Vec::new(),
            coefficients_checked: 0,
            irrational_coefficients: 0,
            value: None,
            note: None,
        }
    }

    /// Record `residual` (which should be zero); fails the report otherwise.
    fn residual(mut self, residual: &LaurentPoly) -> Self {
        self.residual_terms += residual.len();
        for (exp, coef) in residual
            .terms()
            .iter()
            .take(MAX_OFFENDING.saturating_sub(self.offending.len()))
        {
            self.offending.push(Offending {
                exp: exp.clone(),
                coef: coef.clone(),
            });
        }
        if !residual.is_zero() {
            self.passed = false;
        }
        self
    }

    fn require(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.passed = false;
            self.note = Some(match self.note.take() {
                Some(prev) => format!("{prev}; {what}"),
                None => what.to_string(),
            });
        }
        self
    }

    /// Count coefficients and fail on any with a surviving `√s` part.
    fn audit<'a>(mut self, coeffs: impl IntoIterator<Item = &'a FieldElement>) -> Self {
        let mut irrational = 0;
        for c in coeffs {
            self.coefficients_checked += 1;
            if !c.is_rational() {
                irrational += 1;
            }
        }
        self.irrational_coefficients += irrational;
        self.require(irrational == 0, &format!("{irrational} coefficients outside ℚ"))
    }
}
