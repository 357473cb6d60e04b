//! Plane curves attached to the maps: construction, point counts, Weil-type
//! bound audits, the symmetric reduction and the univariate checks behind
//! the irreducibility arguments.
//!
//! The bound audits confirm numeric inequalities only. They do not certify
//! absolute irreducibility, which is the hypothesis the bounds rest on, so
//! reports call them consistency checks.

mod bipoly;
mod builtins;
mod count;
mod identities;
mod phi;
mod weil;

use thiserror::Error;

pub use bipoly::{BiPoly, HomPoly};
pub use builtins::{build_a, build_f, build_g, build_h, direct_f, direct_g, direct_h, Tau};
pub use count::{
    count_affine, count_affine_transposed, count_infinity, curve_report, CurveReport,
    MAX_AFFINE_EVALUATIONS,
};
pub use identities::{
    symmetric_reduction_mismatches, fx0_zero_count, substitution_mismatches, tau_one_factorization_mismatches,
};
pub use phi::{phi_fibers, FiberCensus};
pub use weil::{weil_lower_check, weil_upper_check, BoundKind, WeilAudit};

pub use crate::unipoly::{is_irreducible, PolyError, UniPoly};

use crate::field::FieldError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("b has zero absolute trace")]
    TraceZero,
    #[error("tau must be nonzero")]
    TauZero,
    #[error("tau = {0} is excluded here (tau must differ from 0, 1 and -1)")]
    TauExcluded(u64),
    #[error("{what} needs a prime field, got degree {n}")]
    NotPrimeField { what: &'static str, n: usize },
    #[error("{what} needs degree {expected}, got {n}")]
    WrongDegree { what: &'static str, expected: usize, n: usize },
    #[error("{evaluations} evaluations exceed the counting budget of {budget}")]
    TooManyPoints { evaluations: u128, budget: u128 },
    #[error("the zero polynomial has no points at infinity")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("fiber over ({u}, {v}) has {size} points off the diagonal")]
    FiberAnomaly { u: u64, v: u64, size: u64 },
}

/// Monic gcd of two polynomials over F_p.
pub fn uni_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, PolyError> {
    a.gcd(b)
}

pub fn uni_derivative(a: &UniPoly) -> UniPoly {
    a.derivative()
}

/// `gcd(a, a') = 1`
pub fn is_squarefree(a: &UniPoly) -> Result<bool, PolyError> {
    a.is_squarefree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prime::primes_in;

    fn lemma_poly(p: u64) -> UniPoly {
        // Y^(p+1) - Y^2 + 4
        UniPoly::monomial(p, 1, p as usize + 1)
            .sub(&UniPoly::monomial(p, 1, 2))
            .add(&UniPoly::constant(p, 4))
    }

    #[test]
    fn gcd_with_zero() {
        let a = UniPoly::new(7, &[3, 0, 2]);
        assert_eq!(uni_gcd(&a, &UniPoly::zero(7)).unwrap(), a.monic());
        assert_eq!(
            uni_gcd(&UniPoly::zero(7), &UniPoly::zero(7)),
            Err(PolyError::GcdOfZeros)
        );
    }

    #[test]
    fn lemma_polynomial_is_squarefree() {
        for p in primes_in(5, 97) {
            let f = lemma_poly(p);
            assert!(is_squarefree(&f).unwrap(), "p = {p}");
            assert_eq!(
                uni_derivative(&f),
                UniPoly::monomial(p, 1, p as usize).sub(&UniPoly::monomial(p, 2, 1))
            );
        }
    }

    #[test]
    fn final_chain_step_is_a_unit() {
        for p in primes_in(5, 97) {
            let sign: i64 = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
            let c = UniPoly::from_i64(p, &[sign - 2]);
            let y2 = UniPoly::from_i64(p, &[4, 0, 1]);
            assert!(uni_gcd(&y2, &c).unwrap().is_one());
        }
    }
}
