//! Chern data of rank-2 bundles and the invariants of the induced triple cover.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chow::{DivisorClass, SurfaceModel};
use crate::error::{Error, Result};
use crate::orbifold;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BundleKind {
    Split,
    Extension,
}

/// A rank-2 bundle: either `first + second`, or an extension with sub-line
/// bundle `first` and quotient `second`. Chern classes only see the two line
/// classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BundleSpec {
    pub kind: BundleKind,
    pub first: DivisorClass,
    pub second: DivisorClass,
}

impl BundleSpec {
    pub fn new(kind: BundleKind, first: DivisorClass, second: DivisorClass) -> Result<Self> {
        if first.surface() != second.surface() {
            return Err(Error::SurfaceMismatch {
                expected: first.surface(),
                found: second.surface(),
            });
        }
        Ok(BundleSpec { kind, first, second })
    }

    pub fn split(first: DivisorClass, second: DivisorClass) -> Result<Self> {
        Self::new(BundleKind::Split, first, second)
    }

    pub fn extension(sub: DivisorClass, quotient: DivisorClass) -> Result<Self> {
        Self::new(BundleKind::Extension, sub, quotient)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    pub c1: DivisorClass,
    pub c1_sq: Rational,
    pub c1_dot_omega: Rational,
    pub c2: Rational,
}

pub fn chern(surface: &SurfaceModel, bundle: &BundleSpec) -> Result<ChernData> {
    let c1 = bundle.first.plus(&bundle.second)?;
    Ok(ChernData {
        c1_sq: surface.intersect(&c1, &c1)?,
        c1_dot_omega: surface.intersect(&c1, &surface.omega)?,
        c2: surface.intersect(&bundle.first, &bundle.second)?,
        c1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverInvariants {
    pub lambda: Rational,
    pub kappa: Rational,
    /// `12 lambda - kappa` of the coarse family, before any stabilisation.
    pub delta_raw: Rational,
    /// `delta_raw` minus the contracted-tail correction.
    pub delta_adjusted: Rational,
    pub chi_total: Rational,
}

/// `kappa` and `lambda` of the triple cover determined by `bundle`.
///
/// `chi_override` replaces the sum of orbifold corrections over the
/// surface's orbi-points.
pub fn kappa_lambda(
    surface: &SurfaceModel,
    bundle: &BundleSpec,
    chi_override: Option<&Rational>,
) -> Result<CoverInvariants> {
    let ch = chern(surface, bundle)?;
    let chi_total = match chi_override {
        Some(c) => c.clone(),
        None => orbifold::chi_total(surface)?,
    };
    let kappa = int(3) * &surface.kappa_s + int(2) * &ch.c1_sq + int(4) * &ch.c1_dot_omega
        - int(3) * &ch.c2;
    let lambda = &surface.lambda_s
        + (&surface.kappa_s + &surface.delta_s) / int(6)
        + &ch.c1_sq / int(2)
        + &ch.c1_dot_omega / int(2)
        - &ch.c2
        + &chi_total;
    let delta_raw = int(12) * &lambda - &kappa;
    Ok(CoverInvariants {
        delta_adjusted: delta_raw.clone(),
        lambda,
        kappa,
        delta_raw,
        chi_total,
    })
}

/// Subtracts the contribution of contracted rational tails from `delta`.
pub fn adjust_delta(inv: &CoverInvariants, adjustment: &Rational) -> CoverInvariants {
    CoverInvariants {
        delta_adjusted: &inv.delta_raw - adjustment,
        ..inv.clone()
    }
}

impl CoverInvariants {
    pub fn slope(&self) -> Option<Rational> {
        if self.lambda.is_zero() {
            None
        } else {
            Some(&self.delta_adjusted / &self.lambda)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{make_surface, Basis, SurfaceId};
    use crate::rational::frac;

    fn line(m: &SurfaceModel, s: i64, twist: i64, base: i64) -> DivisorClass {
        m.twisted_section(&int(s), &int(twist), &int(base)).unwrap()
    }

    #[test]
    fn chern_on_s0() {
        let s0 = make_surface(SurfaceId::S0);
        let (n, l) = (5, 3);
        let e = BundleSpec::split(line(&s0, n, 0, l), line(&s0, n, 0, l)).unwrap();
        let ch = chern(&s0, &e).unwrap();
        assert_eq!(ch.c1_sq, int(8 * n * l));
        assert_eq!(ch.c2, int(2 * n * l));
        assert_eq!(ch.c1_dot_omega, int(-4 * l));
    }

    #[test]
    fn chern_on_s1() {
        let s1 = make_surface(SurfaceId::S1);
        let (n, b, l, m) = (6, 2, 4, 9);
        let e = BundleSpec::split(line(&s1, n, b, l), line(&s1, n, b, m)).unwrap();
        let ch = chern(&s1, &e).unwrap();
        assert_eq!(ch.c2, int(n * (l + m) - b * b));
        assert_eq!(ch.c1_sq, int(4 * n * (l + m) - 4 * b * b));
        assert_eq!(ch.c1_dot_omega, int(2 * b - 2 * (l + m)));
    }

    #[test]
    fn zero_summand_has_no_c2() {
        let s2 = make_surface(SurfaceId::S2);
        let e = BundleSpec::split(line(&s2, 3, 1, 2), DivisorClass::zero(SurfaceId::S2)).unwrap();
        assert_eq!(chern(&s2, &e).unwrap().c2, int(0));
    }

    #[test]
    fn sweeping_families() {
        let s0 = make_surface(SurfaceId::S0);
        for n in 3..10 {
            let g = 2 * n - 2;
            let e = BundleSpec::split(line(&s0, n, 0, 1), line(&s0, n, 0, 1)).unwrap();
            let inv = kappa_lambda(&s0, &e, None).unwrap();
            assert_eq!(inv.lambda, int(g));
            assert_eq!(inv.kappa, int(5 * g - 6));
            assert_eq!(inv.delta_raw, int(7 * g + 6));

            let e = BundleSpec::split(line(&s0, n, 0, 1), line(&s0, n + 1, 0, 2)).unwrap();
            let inv = kappa_lambda(&s0, &e, None).unwrap();
            assert_eq!(inv.lambda, int(3 * n - 1));
            assert_eq!(inv.kappa, int(15 * n - 15));
            assert_eq!(inv.delta_raw, int(21 * n + 3));
        }
    }

    #[test]
    fn s1_split_closed_form() {
        let s1 = make_surface(SurfaceId::S1);
        for (n, b, l, m) in [(4, 2, 5, 7), (7, 3, 11, 2), (3, 1, 0, 0)] {
            let e = BundleSpec::split(line(&s1, n, b, l), line(&s1, n, b, m)).unwrap();
            let inv = kappa_lambda(&s1, &e, None).unwrap();
            let lm = l + m;
            assert_eq!(inv.lambda, int((n - 1) * lm - b * b + b));
            assert_eq!(inv.kappa, int((5 * n - 8) * lm - 5 * b * b + 8 * b - 3));
            assert_eq!(inv.delta_raw, int((7 * n - 4) * lm - 7 * b * b + 4 * b + 3));
        }
    }

    #[test]
    fn override_and_adjustment() {
        let s3 = make_surface(SurfaceId::S3);
        let e = BundleSpec::split(line(&s3, 4, 5, 1), line(&s3, 4, 4, 1)).unwrap();
        let default = kappa_lambda(&s3, &e, None).unwrap();
        assert_eq!(default.chi_total, frac(-2, 9));
        let zeroed = kappa_lambda(&s3, &e, Some(&int(0))).unwrap();
        assert_eq!(&zeroed.lambda - &default.lambda, frac(2, 9));

        let adjusted = adjust_delta(&default, &int(3));
        assert_eq!(adjusted.delta_raw, default.delta_raw);
        assert_eq!(&adjusted.delta_raw - &adjusted.delta_adjusted, int(3));
        assert_eq!(&adjusted.lambda * int(12) - &adjusted.kappa, adjusted.delta_raw);
    }

    #[test]
    fn mismatched_summands() {
        let a = make_surface(SurfaceId::S1).section.clone();
        let b = DivisorClass::new(SurfaceId::S2, [(Basis::S, int(1))]).unwrap();
        assert!(BundleSpec::split(a, b).is_err());
        let s1 = make_surface(SurfaceId::S1);
        let e = BundleSpec::split(make_surface(SurfaceId::S2).section.clone(), make_surface(SurfaceId::S2).section.clone()).unwrap();
        assert!(kappa_lambda(&s1, &e, None).is_err());
    }
}
