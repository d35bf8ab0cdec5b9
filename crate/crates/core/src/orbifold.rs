//! The orbifold Riemann-Roch correction at a `mu_n` point.
//!
//! For a point with stabilizer `mu_n` where the bundle restricts as
//! `k(-a) + k(-b)`,
//!
//! ```text
//! chi(n, a, b) = 1/n * sum_{i=1}^{n-1} (z^{ia} + z^{ib}) / (2 - z^i - z^{-i})
//! ```
//!
//! with `z` a primitive `n`-th root of unity. [`chi`] evaluates the sum exactly
//! in `Q(z) = Q[x]/Phi_n(x)`. [`chi_closed_form`] uses the reduction
//! `sum_i z^{ia}/(2 - z^i - z^{-i}) = (n^2-1)/12 - a(n-a)/2` and
//! [`chi_numeric`] evaluates the defining sum in double precision; the three
//! must agree.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::chow::{OrbiPoint, SurfaceModel};
use crate::error::{Error, Result};
use crate::rational::{frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChiQuery {
    pub n: i64,
    pub a: i64,
    pub b: i64,
}

impl ChiQuery {
    /// Characters are taken mod `n`.
    pub fn new(n: i64, a: i64, b: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidChiQuery {
                n,
                a,
                b,
                reason: "stabilizer order must be at least 2",
            });
        }
        Ok(ChiQuery {
            n,
            a: a.rem_euclid(n),
            b: b.rem_euclid(n),
        })
    }
}

impl From<OrbiPoint> for ChiQuery {
    fn from(p: OrbiPoint) -> Self {
        ChiQuery {
            n: p.n,
            a: p.a.rem_euclid(p.n.max(1)),
            b: p.b.rem_euclid(p.n.max(1)),
        }
    }
}

/// Dense polynomial over Q, lowest degree first, no trailing zeros.
type Poly = Vec<Rational>;

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(out)
}

/// Long division; `d` must be nonzero.
fn poly_divrem(num: &[Rational], d: &[Rational]) -> (Poly, Poly) {
    let d = trim(d.to_vec());
    let lead = d.last().expect("nonzero divisor").clone();
    let mut rem = trim(num.to_vec());
    if rem.len() < d.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - d.len() + 1];
    while rem.len() >= d.len() && !rem.is_empty() {
        let shift = rem.len() - d.len();
        let c = rem.last().unwrap() / &lead;
        for (k, dk) in d.iter().enumerate() {
            rem[shift + k] -= &c * dk;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn cyclotomic_poly(n: usize, memo: &mut HashMap<usize, Poly>) -> Poly {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d
    let mut acc = vec![Rational::zero(); n + 1];
    acc[0] = -Rational::one();
    acc[n] = Rational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_poly(d, memo);
            let (q, r) = poly_divrem(&acc, &phi_d);
            debug_assert!(r.is_empty());
            acc = q;
        }
    }
    memo.insert(n, acc.clone());
    acc
}

/// `Q(z)` for a primitive `n`-th root of unity `z`.
struct CyclotomicField {
    n: i64,
    modulus: Poly,
}

impl CyclotomicField {
    fn new(n: i64) -> Self {
        let mut memo = HashMap::new();
        let modulus = cyclotomic_poly(n as usize, &mut memo);
        CyclotomicField { n, modulus }
    }

    fn reduce(&self, p: &[Rational]) -> Poly {
        poly_divrem(p, &self.modulus).1
    }

    /// `z^k` for any integer `k`.
    fn power(&self, k: i64) -> Poly {
        let e = k.rem_euclid(self.n) as usize;
        let mut p = vec![Rational::zero(); e + 1];
        p[e] = Rational::one();
        self.reduce(&p)
    }

    fn add(&self, a: &[Rational], b: &[Rational]) -> Poly {
        poly_sub(a, &poly_sub(&[], b))
    }

    fn mul(&self, a: &[Rational], b: &[Rational]) -> Poly {
        self.reduce(&poly_mul(a, b))
    }

    /// Inverse via the extended Euclidean algorithm against `Phi_n`.
    fn inverse(&self, a: &[Rational]) -> Option<Poly> {
        let a = self.reduce(a);
        if a.is_empty() {
            return None;
        }
        // Invariant: r_k = s_k * a (mod Phi_n)
        let (mut r0, mut r1) = (self.modulus.clone(), a);
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 is a nonzero constant because Phi_n is irreducible.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        Some(self.reduce(&s0.iter().map(|x| x / &c).collect::<Vec<_>>()))
    }
}

/// Exact value of `chi(n, a, b)`, computed in the `n`-th cyclotomic field.
pub fn chi(q: ChiQuery) -> Result<Rational> {
    let q = ChiQuery::new(q.n, q.a, q.b)?;
    let field = CyclotomicField::new(q.n);
    let two = vec![int(2)];
    let mut total: Poly = Vec::new();
    for i in 1..q.n {
        let denom = poly_sub(&poly_sub(&two, &field.power(i)), &field.power(-i));
        let inv = field.inverse(&denom).ok_or_else(|| {
            Error::Internal(format!("2 - z^{i} - z^-{i} is not invertible in Q(z_{})", q.n))
        })?;
        let numer = field.add(&field.power(i * q.a), &field.power(i * q.b));
        total = field.add(&total, &field.mul(&numer, &inv));
    }
    match total.len() {
        0 => Ok(Rational::zero()),
        1 => Ok(&total[0] / int(q.n)),
        _ => Err(Error::Internal(format!(
            "chi({}, {}, {}) has a non-rational cyclotomic part",
            q.n, q.a, q.b
        ))),
    }
}

/// `sum_{i=1}^{n-1} z^{ia} / (2 - z^i - z^{-i})` for `0 <= a < n`.
fn single_character_sum(n: i64, a: i64) -> Rational {
    let a = a.rem_euclid(n);
    frac(n * n - 1, 12) - frac(a * (n - a), 2)
}

/// `chi` via the closed form for the single-character sum.
pub fn chi_closed_form(q: ChiQuery) -> Result<Rational> {
    let q = ChiQuery::new(q.n, q.a, q.b)?;
    Ok((single_character_sum(q.n, q.a) + single_character_sum(q.n, q.b)) / int(q.n))
}

/// Double-precision evaluation of the defining sum (about 15 significant
/// digits). Only used to referee the exact routes.
pub fn chi_numeric(q: ChiQuery) -> Result<f64> {
    let q = ChiQuery::new(q.n, q.a, q.b)?;
    let n = q.n as f64;
    let z = |k: i64| Complex64::from_polar(1.0, std::f64::consts::TAU * (k.rem_euclid(q.n) as f64) / n);
    let mut total = Complex64::new(0.0, 0.0);
    for i in 1..q.n {
        let numer = z(i * q.a) + z(i * q.b);
        let denom = Complex64::new(2.0, 0.0) - z(i) - z(-i);
        total += numer / denom;
    }
    Ok(total.re / n)
}

/// Sum of `chi` over the surface's orbifold points.
pub fn chi_total(surface: &SurfaceModel) -> Result<Rational> {
    surface
        .orbi_points
        .iter()
        .map(|p| chi(ChiQuery::from(*p)))
        .try_fold(Rational::zero(), |acc, v| Ok(acc + v?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{make_surface, SurfaceId};

    fn q(n: i64, a: i64, b: i64) -> ChiQuery {
        ChiQuery::new(n, a, b).unwrap()
    }

    #[test]
    fn reference_values() {
        assert_eq!(chi(q(2, 0, 1)).unwrap(), int(0));
        assert_eq!(chi(q(3, 1, 2)).unwrap(), frac(-2, 9));
        assert_eq!(chi(q(2, 0, 0)).unwrap(), frac(1, 4));
    }

    #[test]
    fn rejects_trivial_stabilizer() {
        assert!(ChiQuery::new(1, 0, 0).is_err());
        assert!(ChiQuery::new(0, 0, 0).is_err());
        assert!(chi(ChiQuery { n: 1, a: 0, b: 0 }).is_err());
    }

    #[test]
    fn cyclotomic_polynomials() {
        let mut memo = HashMap::new();
        let phi6 = cyclotomic_poly(6, &mut memo);
        assert_eq!(phi6, vec![int(1), int(-1), int(1)]);
        let phi12 = cyclotomic_poly(12, &mut memo);
        assert_eq!(phi12, vec![int(1), int(0), int(-1), int(0), int(1)]);
    }

    #[test]
    fn field_inverse_roundtrip() {
        let f = CyclotomicField::new(7);
        let a = poly_sub(&[int(3)], &f.power(2));
        let inv = f.inverse(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), vec![int(1)]);
    }

    #[test]
    fn exact_routes_agree_with_numeric_oracle() {
        for n in 2..=12 {
            for a in 0..n {
                for b in 0..n {
                    let exact = chi(q(n, a, b)).unwrap();
                    assert_eq!(exact, chi_closed_form(q(n, a, b)).unwrap(), "n={n} a={a} b={b}");
                    let num = chi_numeric(q(n, a, b)).unwrap();
                    assert!((crate::rational::to_f64(&exact) - num).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn untwisted_closed_form() {
        for n in 2..=12 {
            assert_eq!(chi(q(n, 0, 0)).unwrap(), frac(n * n - 1, 6 * n));
        }
    }

    #[test]
    fn default_surface_corrections() {
        assert_eq!(chi_total(&make_surface(SurfaceId::S0)).unwrap(), int(0));
        assert_eq!(chi_total(&make_surface(SurfaceId::S1)).unwrap(), int(0));
        assert_eq!(chi_total(&make_surface(SurfaceId::S2)).unwrap(), int(0));
        assert_eq!(chi_total(&make_surface(SurfaceId::S3)).unwrap(), frac(-2, 9));
    }
}
