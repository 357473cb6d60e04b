//! Weil-type bounds `q + 1 -/+ (d-1)(d-2) sqrt(q) - n_inf` compared in exact
//! integers by squaring both sides.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// `count >= q + 1 - (d-1)(d-2) sqrt(q) - n_inf`
    Lower,
    /// `count <= q + 1 + (d-1)(d-2) sqrt(q) - n_inf`
    Upper,
}

/// The integers behind one bound comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilAudit {
    pub kind: BoundKind,
    pub count: u64,
    pub q: u64,
    pub degree: u64,
    pub n_inf: u64,
    /// Signed distance from `q + 1 - n_inf` in the direction that could fail.
    pub excess: i128,
    /// `excess^2` when the excess is positive; `None` if it overflowed.
    pub excess_squared: Option<u128>,
    /// `(d-1)(d-2)`
    pub genus_factor: i128,
    /// `(d-1)^2 (d-2)^2 q`
    pub threshold: u128,
    pub passed: bool,
}

fn audit(kind: BoundKind, count: u64, q: u64, d: u64, n_inf: u64, excess: i128) -> WeilAudit {
    let d = d as i128;
    let genus_factor = (d - 1) * (d - 2);
    let threshold = (genus_factor.unsigned_abs())
        .checked_pow(2)
        .and_then(|k| k.checked_mul(q as u128))
        .unwrap_or(u128::MAX);
    let (excess_squared, passed) = if excess <= 0 {
        (None, true)
    } else {
        let sq = excess.unsigned_abs().checked_mul(excess.unsigned_abs());
        // an overflowing square exceeds every representable threshold
        (sq, sq.is_some_and(|s| s <= threshold))
    };
    WeilAudit {
        kind,
        count,
        q,
        degree: d as u64,
        n_inf,
        excess,
        excess_squared,
        genus_factor,
        threshold,
        passed,
    }
}

/// Passes iff `L <= 0` or `L^2 <= (d-1)^2 (d-2)^2 q` with `L = q + 1 - n_inf - count`.
pub fn weil_lower_check(count: u64, q: u64, d: u64, n_inf: u64) -> WeilAudit {
    let excess = q as i128 + 1 - n_inf as i128 - count as i128;
    audit(BoundKind::Lower, count, q, d, n_inf, excess)
}

/// Passes iff `U <= 0` or `U^2 <= (d-1)^2 (d-2)^2 q` with `U = count - (q + 1 - n_inf)`.
pub fn weil_upper_check(count: u64, q: u64, d: u64, n_inf: u64) -> WeilAudit {
    let excess = count as i128 - (q as i128 + 1 - n_inf as i128);
    audit(BoundKind::Upper, count, q, d, n_inf, excess)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturated_counts() {
        assert!(weil_lower_check(25 * 25, 25, 10, 2).passed);
        assert!(weil_upper_check(0, 97, 6, 3).passed);
    }

    #[test]
    fn lower_boundary_is_sharp() {
        for (q, d, n_inf) in [(97u64, 4u64, 3u64), (1009, 4, 3), (10007, 6, 3), (3125, 10, 2)] {
            let k = ((d - 1) * (d - 2)) as u128;
            let floor = (k * k * q as u128).isqrt() as u64;
            let Some(edge) = (q + 1 - n_inf).checked_sub(floor) else {
                continue;
            };
            assert!(weil_lower_check(edge, q, d, n_inf).passed);
            let below = weil_lower_check(edge - 1, q, d, n_inf);
            assert_eq!(below.excess_squared.unwrap() > below.threshold, !below.passed);
            assert!(!below.passed);
        }
    }

    #[test]
    fn upper_boundary_is_sharp() {
        let (q, d, n_inf) = (97u64, 6u64, 3u64);
        let floor = (400u128 * 97).isqrt() as u64;
        let edge = q + 1 - n_inf + floor;
        assert!(weil_upper_check(edge, q, d, n_inf).passed);
        assert!(!weil_upper_check(edge + 1, q, d, n_inf).passed);
    }

    #[test]
    fn genus_factors() {
        // (6-1)(6-2) = 20 and (4-1)(4-2) = 6
        assert_eq!(weil_upper_check(0, 7, 6, 3).genus_factor, 20);
        assert_eq!(weil_lower_check(0, 7, 4, 3).genus_factor, 6);
        assert_eq!(weil_lower_check(0, 25, 10, 2).genus_factor, 72);
    }
}
