//! Sweeping families on `P1 x P1` and the sharp slope.

use serde::{Deserialize, Serialize};

use crate::catalog::Parity;
use crate::chow::{make_surface, SurfaceId};
use crate::cover::{kappa_lambda, BundleSpec};
use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepResult {
    pub parity: Parity,
    pub g: i64,
    pub n: i64,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
    #[serde(with = "rational::serde_str")]
    pub kappa: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub slope: Rational,
}

/// Runs the cover pipeline on `O(n s + F) + O(n' s + d F)` over `S0`.
fn sweep(parity: Parity, n: i64) -> Result<SweepResult> {
    if n < 3 {
        return Err(Error::InvalidSweep { n });
    }
    let s0 = make_surface(SurfaceId::S0);
    let (second_s, second_f) = match parity {
        Parity::Even => (n, 1),
        Parity::Odd => (n + 1, 2),
    };
    let zero = int(0);
    let bundle = BundleSpec::split(
        s0.twisted_section(&int(n), &zero, &int(1))?,
        s0.twisted_section(&int(second_s), &zero, &int(second_f))?,
    )?;
    let inv = kappa_lambda(&s0, &bundle, None)?;
    let slope = &inv.delta_raw / &inv.lambda;
    Ok(SweepResult {
        parity,
        g: parity.genus(n),
        n,
        lambda: inv.lambda,
        kappa: inv.kappa,
        delta: inv.delta_raw,
        slope,
    })
}

fn expect(label: &str, got: &Rational, want: Rational) -> Result<()> {
    if *got != want {
        return Err(Error::Internal(format!(
            "{label}: pipeline gives {}, expected {}",
            rational::format(got),
            rational::format(&want)
        )));
    }
    Ok(())
}

/// Even genus `g = 2n - 2`: `(lambda, kappa, delta) = (g, 5g-6, 7g+6)`.
pub fn sweep_even(n: i64) -> Result<SweepResult> {
    let r = sweep(Parity::Even, n)?;
    let g = r.g;
    expect("lambda", &r.lambda, int(g))?;
    expect("kappa", &r.kappa, int(5 * g - 6))?;
    expect("delta", &r.delta, int(7 * g + 6))?;
    expect("slope", &r.slope, int(7) + frac(6, g))?;
    Ok(r)
}

/// Odd genus `g = 2n - 1`: `(lambda, kappa, delta) = (3n-1, 15n-15, 21n+3)`.
pub fn sweep_odd(n: i64) -> Result<SweepResult> {
    let r = sweep(Parity::Odd, n)?;
    expect("lambda", &r.lambda, int(3 * n - 1))?;
    expect("kappa", &r.kappa, int(15 * n - 15))?;
    expect("delta", &r.delta, int(21 * n + 3))?;
    expect("slope", &r.slope, int(7) + frac(20, 3 * r.g + 1))?;
    Ok(r)
}

/// The sweeping family of genus `g`.
pub fn sweep_genus(g: i64) -> Result<SweepResult> {
    if g < 4 {
        return Err(Error::InvalidGenus { g, reason: "genus must be at least 4" });
    }
    match Parity::of_genus(g) {
        Parity::Even => sweep_even(Parity::Even.n_for_genus(g)),
        Parity::Odd => sweep_odd(Parity::Odd.n_for_genus(g)),
    }
}

/// `7 + 6/g` for even `g`, `7 + 20/(3g+1)` for odd `g`.
pub fn sharp_slope(g: i64) -> Result<Rational> {
    if g < 4 {
        return Err(Error::InvalidGenus { g, reason: "genus must be at least 4" });
    }
    Ok(match Parity::of_genus(g) {
        Parity::Even => int(7) + frac(6, g),
        Parity::Odd => int(7) + frac(20, 3 * g + 1),
    })
}

/// Slope bound for the hyperelliptic locus, `8 + 4/g`.
pub fn hyperelliptic_slope(g: i64) -> Rational {
    int(8) + frac(4, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_points() {
        let r = sweep_even(3).unwrap();
        assert_eq!((r.lambda, r.kappa, r.delta), (int(4), int(14), int(34)));
        assert_eq!(r.slope, frac(17, 2));
        assert_eq!(sweep_even(4).unwrap().slope, int(8));

        let r = sweep_odd(3).unwrap();
        assert_eq!((r.lambda, r.kappa, r.delta), (int(8), int(30), int(66)));
        assert_eq!(r.slope, frac(33, 4));
        assert_eq!(sweep_odd(4).unwrap().slope, frac(87, 11));
    }

    #[test]
    fn sharp_values() {
        assert_eq!(sharp_slope(4).unwrap(), frac(17, 2));
        assert_eq!(sharp_slope(5).unwrap(), frac(33, 4));
        for g in 4..200 {
            assert!(sharp_slope(g).unwrap() > int(7));
        }
    }

    #[test]
    fn by_genus() {
        let r = sweep_genus(6).unwrap();
        assert_eq!((r.g, r.lambda, r.kappa, r.delta, r.slope), (6, int(6), int(24), int(48), int(8)));
        let r = sweep_genus(5).unwrap();
        assert_eq!((r.lambda, r.kappa, r.delta), (int(8), int(30), int(66)));
    }

    #[test]
    fn rejects_small_parameters() {
        assert!(sweep_even(2).is_err());
        assert!(sweep_odd(-1).is_err());
        assert!(sharp_slope(3).is_err());
        assert!(sweep_genus(3).is_err());
    }
}
