use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curve::{build_g, build_h, count_affine, CurveError, Tau};
use crate::field::make_field;

/// Census of `(x, y) -> (x + y, xy)` from V(G) minus the origin into V(H).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberCensus {
    pub p: u64,
    pub tau: u64,
    /// |V(G)| over F_p
    pub vg: u64,
    /// |V(H)| over F_p
    pub vh: u64,
    /// Points of V(G) on the diagonal; only the origin is expected.
    pub diagonal_points: u64,
    pub origin_in_vg: bool,
    pub origin_in_vh: bool,
    /// |phi(V(G))|, the origin included.
    pub image_size: u64,
    /// fiber size -> number of image points with that fiber size (origin excluded)
    pub histogram: BTreeMap<u64, u64>,
    /// Images of V(G) points that miss V(H).
    pub images_outside_vh: u64,
}

impl FiberCensus {
    /// Every off-origin fiber has exactly two points and the diagonal meets V(G) only at the origin.
    pub fn is_two_to_one(&self) -> bool {
        self.diagonal_points == 1
            && self.origin_in_vg
            && self.images_outside_vh == 0
            && self.histogram.keys().all(|&k| k == 2)
    }
}

pub fn phi_fibers(p: u64, tau: &Tau) -> Result<FiberCensus, CurveError> {
    let tau = Tau::generic(p, tau.tau)?;
    let ctx = make_field(p, 1)?;
    let g = build_g(&ctx, &tau)?;
    let h = build_h(&ctx, &tau)?;
    let m = ctx.prime_modulus();

    let mut fibers: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut vg = 0u64;
    let mut diagonal_points = 0u64;
    let mut origin_in_vg = false;
    let mut images_outside_vh = 0u64;
    for x in ctx.elements() {
        for y in ctx.elements() {
            if !g.eval(&x, &y).is_zero() {
                continue;
            }
            vg += 1;
            let (xv, yv) = (x.coeffs()[0], y.coeffs()[0]);
            if xv == yv {
                diagonal_points += 1;
            }
            if xv == 0 && yv == 0 {
                origin_in_vg = true;
                continue;
            }
            let (u, v) = (m.add(xv, yv), m.mul(xv, yv));
            if !h.eval(&ctx.from_u64(u), &ctx.from_u64(v)).is_zero() {
                images_outside_vh += 1;
            }
            *fibers.entry((u, v)).or_default() += 1;
        }
    }
    if let Some((&(u, v), &size)) = fibers.iter().find(|(_, &s)| s != 2) {
        return Err(CurveError::FiberAnomaly { u, v, size });
    }
    let mut histogram = BTreeMap::new();
    for &size in fibers.values() {
        *histogram.entry(size).or_default() += 1;
    }
    Ok(FiberCensus {
        p,
        tau: tau.tau,
        vg,
        vh: count_affine(&h)?,
        diagonal_points,
        origin_in_vg,
        origin_in_vh: h.eval(&ctx.zero(), &ctx.zero()).is_zero(),
        image_size: fibers.len() as u64 + u64::from(origin_in_vg),
        histogram,
        images_outside_vh,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_p13_tau2() {
        let c = phi_fibers(13, &Tau::new(13, 2).unwrap()).unwrap();
        assert!(c.is_two_to_one());
        assert!(c.origin_in_vh);
        assert_eq!(c.image_size, 1 + (c.vg - 1) / 2);
        assert!(c.image_size <= c.vh);
    }

    #[test]
    fn excluded_tau() {
        assert_eq!(
            phi_fibers(13, &Tau::new(13, 12).unwrap()),
            Err(CurveError::TauExcluded(12))
        );
    }

    #[test]
    fn symmetric_pairs_share_images() {
        let c = phi_fibers(31, &Tau::new(31, 5).unwrap()).unwrap();
        assert!(c.is_two_to_one());
        assert_eq!((c.vg - 1) % 2, 0);
    }
}
