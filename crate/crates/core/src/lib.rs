//! Exact and arbitrary-precision verification of q-analogues of the
//! Ramanujan-type series
//!
//! ```text
//! Σ (6k+1) (1/2)_k^3 / (k!^3 4^k)        = 4/π
//! Σ (-1)^k (6k+1) (1/2)_k^3 / (k!^3 8^k) = 2√2/π
//! ```
//!
//! * [`arith`]: exact rationals, polynomials, rational functions, cyclotomics.
//! * [`qobjects`]: q-shifted factorials, q-integers and the summands of every series.
//! * [`wz`]: the two q-WZ pairs and the finite identities they certify.
//! * [`congruence`]: cyclotomic supercongruences and the classical p-adic check.
//! * [`numeric`]: high-precision evaluation of the infinite series and products.

pub mod arith;
pub mod congruence;
pub mod numeric;
pub mod qobjects;
pub mod wz;

/// Outcome of an exact check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub passed: bool,
    /// The exact nonzero difference, present only on failure.
    pub witness: Option<arith::LaurentRatFunc>,
    pub case_label: String,
}

impl CheckResult {
    pub fn pass(label: impl Into<String>) -> Self {
        Self {
            passed: true,
            witness: None,
            case_label: label.into(),
        }
    }

    pub fn fail(label: impl Into<String>, witness: Option<arith::LaurentRatFunc>) -> Self {
        Self {
            passed: false,
            witness,
            case_label: label.into(),
        }
    }
}
