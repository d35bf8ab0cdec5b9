//! Test-curve catalog for the Maroni divisor (even genus) and the tangency
//! divisor (odd genus).
//!
//! Each [`TestCurveRow`] is one family `C -> S -> B`: a base surface, a rank-2
//! bundle built from the parameters `(n, b, l, m)`, the higher boundary
//! divisor met by the special fiber, and the closed form the residual should
//! take there. The rows themselves are plain data in [`tables`].

mod tables;

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::chow::{make_surface, DivisorClass, SurfaceId, SurfaceModel};
use crate::cover::{adjust_delta, kappa_lambda, BundleKind, BundleSpec};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::rational::{self, int, Rational};

pub use tables::{even_rows, odd_rows};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_genus(g: i64) -> Self {
        if g.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `g = 2n - 2` (even) or `g = 2n - 1` (odd).
    pub fn genus(self, n: i64) -> i64 {
        match self {
            Parity::Even => 2 * n - 2,
            Parity::Odd => 2 * n - 1,
        }
    }

    pub fn n_for_genus(self, g: i64) -> i64 {
        match self {
            Parity::Even => (g + 2) / 2,
            Parity::Odd => (g + 1) / 2,
        }
    }

    pub fn min_genus(self) -> i64 {
        match self {
            Parity::Even => 4,
            Parity::Odd => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BoundaryKind {
    Delta1,
    Delta2,
    Delta3,
    Delta4,
    Delta5,
    Delta6,
    #[serde(rename = "H")]
    Hyp,
}

impl BoundaryKind {
    /// Constraint on `(g1, g2)` for a boundary divisor in genus `g`.
    fn check(self, g: i64, g1: i64, g2: i64) -> std::result::Result<(), String> {
        let (sum, min1, min2) = match self {
            BoundaryKind::Delta1 => (g - 2, 0, 0),
            BoundaryKind::Delta2 => (g - 1, 0, 0),
            BoundaryKind::Delta3 => (g, 1, 1),
            BoundaryKind::Delta4 => (g - 1, 0, 1),
            BoundaryKind::Delta5 => (g, 0, 1),
            BoundaryKind::Delta6 => (g, 1, 1),
            BoundaryKind::Hyp => return Ok(()),
        };
        if g1 + g2 != sum || g1 < min1 || g2 < min2 {
            return Err(format!(
                "{self}: need g1+g2={sum}, g1>={min1}, g2>={min2}; got g1={g1}, g2={g2}"
            ));
        }
        Ok(())
    }
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryKind::Delta1 => "Delta1",
            BoundaryKind::Delta2 => "Delta2",
            BoundaryKind::Delta3 => "Delta3",
            BoundaryKind::Delta4 => "Delta4",
            BoundaryKind::Delta5 => "Delta5",
            BoundaryKind::Delta6 => "Delta6",
            BoundaryKind::Hyp => "H",
        })
    }
}

/// A higher boundary divisor met by a test curve, with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryLabel {
    pub kind: BoundaryKind,
    pub g1: Option<i64>,
    pub g2: Option<i64>,
    pub multiplicity: i64,
}

impl fmt::Display for BoundaryLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.g1, self.g2) {
            (Some(g1), Some(g2)) => write!(f, "{}({g1},{g2})", self.kind)?,
            _ => write!(f, "{}", self.kind)?,
        }
        write!(f, " = {}", self.multiplicity)
    }
}

/// Which pulled-back line bundle from `B` a summand is twisted by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LineBase {
    L,
    M,
}

/// `base(s_coeff * s - twist * Finf)`, i.e. the class
/// `s_coeff*s - twist*Finf + deg(base)*F`.
#[derive(Debug, Clone, PartialEq)]
pub struct LineTemplate {
    pub base: LineBase,
    pub s_coeff: Expr,
    pub twist: Expr,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleTemplate {
    pub kind: BundleKind,
    pub first: LineTemplate,
    pub second: LineTemplate,
}

/// A stated restriction on the twist parameter `b`.
#[derive(Debug, Clone, PartialEq)]
pub enum BConstraint {
    Range { lo: Expr, hi: Expr },
    Odd,
    Congruent { modulus: i64, residue: i64 },
}

impl fmt::Display for BConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BConstraint::Range { lo, hi } if lo == hi => write!(f, "b = {lo}"),
            BConstraint::Range { lo, hi } => write!(f, "{lo} <= b <= {hi}"),
            BConstraint::Odd => f.write_str("b odd"),
            BConstraint::Congruent { modulus, residue } => {
                write!(f, "b = {residue} (mod {modulus})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundarySpec {
    pub kind: BoundaryKind,
    /// `None` for `H`, whose test curve carries no genus split.
    pub genera: Option<(Expr, Expr)>,
    pub multiplicity: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MuRule {
    Zero,
    DegLMinusDegM,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalRule {
    Mu(MuRule),
    /// `tau` from adjunction on `D = 3Q - c1(E)`, plus `correction` to undo
    /// the rational-tail contribution.
    Tau {
        quotient: LineTemplate,
        correction: Rational,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestCurveRow {
    pub id: String,
    pub parity: Parity,
    pub surface: SurfaceId,
    /// The bundle column as printed in the table.
    pub description: String,
    pub bundle: BundleTemplate,
    pub b_constraints: Vec<BConstraint>,
    pub boundary: Option<BoundarySpec>,
    pub delta_adjustment: Rational,
    pub rule: ExtremalRule,
    pub chi_override: Rational,
    pub expected_residual: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub row: String,
    pub n: i64,
    pub b: Option<i64>,
    #[serde(with = "rational::serde_str")]
    pub l: Rational,
    #[serde(with = "rational::serde_str")]
    pub m: Rational,
    #[serde(with = "rational::serde_str")]
    pub lambda: Rational,
    #[serde(with = "rational::serde_str")]
    pub kappa: Rational,
    /// Adjusted delta.
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
    #[serde(with = "rational::serde_str")]
    pub mu_or_tau: Rational,
    #[serde(with = "rational::serde_str")]
    pub residual: Rational,
    #[serde(with = "rational::serde_str")]
    pub expected: Rational,
    pub pass: bool,
    #[serde(skip)]
    pub boundary: Option<BoundaryLabel>,
}

/// Both tables, even rows first.
pub fn catalog() -> Vec<TestCurveRow> {
    let mut rows = even_rows();
    rows.extend(odd_rows());
    rows
}

pub fn rows_for(parity: Parity) -> Vec<TestCurveRow> {
    match parity {
        Parity::Even => even_rows(),
        Parity::Odd => odd_rows(),
    }
}

fn eval_nb(e: &Expr, n: i64, b: Option<i64>) -> Result<Rational> {
    let n = int(n);
    let b = b.map(int);
    e.eval(|name| match name {
        "n" => Some(n.clone()),
        "b" => b.clone(),
        _ => None,
    })
}

fn eval_integer(e: &Expr, n: i64, b: Option<i64>, row: &str) -> Result<i64> {
    let v = eval_nb(e, n, b)?;
    rational::to_i64(&v).ok_or_else(|| Error::GenusConstraint {
        row: row.to_string(),
        detail: format!("`{e}` = {} is not an integer", rational::format(&v)),
    })
}

impl TestCurveRow {
    pub fn genus(&self, n: i64) -> i64 {
        self.parity.genus(n)
    }

    pub fn uses_b(&self) -> bool {
        !self.b_constraints.is_empty()
    }

    /// Checks `(n, b)` against the row's stated range.
    pub fn check_admissible(&self, n: i64, b: Option<i64>) -> Result<()> {
        let fail = |predicate: String| Error::Inadmissible {
            row: self.id.clone(),
            n,
            b,
            predicate,
        };
        if n < 3 {
            return Err(fail("n >= 3".into()));
        }
        let b = match (self.uses_b(), b) {
            (false, None) => return Ok(()),
            (false, Some(_)) => return Err(fail("row takes no b parameter".into())),
            (true, None) => return Err(fail("b is required".into())),
            (true, Some(b)) => b,
        };
        for c in &self.b_constraints {
            let ok = match c {
                BConstraint::Range { lo, hi } => {
                    let bv = int(b);
                    eval_nb(lo, n, Some(b))? <= bv && bv <= eval_nb(hi, n, Some(b))?
                }
                BConstraint::Odd => b.rem_euclid(2) == 1,
                BConstraint::Congruent { modulus, residue } => {
                    b.rem_euclid(*modulus) == residue.rem_euclid(*modulus)
                }
            };
            if !ok {
                return Err(fail(c.to_string()));
            }
        }
        Ok(())
    }

    /// Every admissible `b` for this `n` (a single `None` for rows without b).
    pub fn admissible_b(&self, n: i64) -> Result<Vec<Option<i64>>> {
        if !self.uses_b() {
            return Ok(if n >= 3 { vec![None] } else { vec![] });
        }
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for c in &self.b_constraints {
            if let BConstraint::Range { lo: l, hi: h } = c {
                let l = rational::to_i64(&eval_nb(l, n, None)?.ceil()).unwrap_or(i64::MAX);
                let h = rational::to_i64(&eval_nb(h, n, None)?.floor()).unwrap_or(i64::MIN);
                lo = lo.max(l);
                hi = hi.min(h);
            }
        }
        if lo == i64::MIN || hi == i64::MAX {
            return Err(Error::Internal(format!("row {} has an unbounded b range", self.id)));
        }
        Ok((lo..=hi)
            .filter(|&b| self.check_admissible(n, Some(b)).is_ok())
            .map(Some)
            .collect())
    }

    /// The boundary divisor met at `(n, b)`, validated against its genus
    /// constraint.
    pub fn boundary_label(&self, n: i64, b: Option<i64>) -> Result<Option<BoundaryLabel>> {
        let Some(spec) = &self.boundary else {
            return Ok(None);
        };
        let (g1, g2) = match &spec.genera {
            Some((e1, e2)) => {
                let g1 = eval_integer(e1, n, b, &self.id)?;
                let g2 = eval_integer(e2, n, b, &self.id)?;
                spec.kind
                    .check(self.genus(n), g1, g2)
                    .map_err(|detail| Error::GenusConstraint {
                        row: self.id.clone(),
                        detail,
                    })?;
                (Some(g1), Some(g2))
            }
            None => (None, None),
        };
        Ok(Some(BoundaryLabel {
            kind: spec.kind,
            g1,
            g2,
            multiplicity: spec.multiplicity,
        }))
    }

    fn line(&self, surface: &SurfaceModel, t: &LineTemplate, n: i64, b: Option<i64>, l: &Rational, m: &Rational) -> Result<DivisorClass> {
        let base = match t.base {
            LineBase::L => l,
            LineBase::M => m,
        };
        surface.twisted_section(&eval_nb(&t.s_coeff, n, b)?, &eval_nb(&t.twist, n, b)?, base)
    }

    pub fn build_bundle(&self, surface: &SurfaceModel, n: i64, b: Option<i64>, l: &Rational, m: &Rational) -> Result<BundleSpec> {
        BundleSpec::new(
            self.bundle.kind,
            self.line(surface, &self.bundle.first, n, b, l, m)?,
            self.line(surface, &self.bundle.second, n, b, l, m)?,
        )
    }

    /// The closed form from the table, at the row's `(g1, g2, g)`.
    pub fn expected_at(&self, g: i64, label: Option<&BoundaryLabel>) -> Result<Rational> {
        let g = int(g);
        let g1 = label.and_then(|x| x.g1).map(int);
        let g2 = label.and_then(|x| x.g2).map(int);
        self.expected_residual.eval(|name| match name {
            "g" => Some(g.clone()),
            "g1" => g1.clone(),
            "g2" => g2.clone(),
            _ => None,
        })
    }
}

/// Degree of the Maroni divisor on an even row.
pub fn mu_degree(row: &TestCurveRow, l: &Rational, m: &Rational) -> Result<Rational> {
    match &row.rule {
        ExtremalRule::Mu(MuRule::Zero) => Ok(Rational::zero()),
        ExtremalRule::Mu(MuRule::DegLMinusDegM) => Ok(l - m),
        ExtremalRule::Tau { .. } => Err(Error::WrongParity {
            row: row.id.clone(),
            required: "even",
            actual: "odd",
        }),
    }
}

/// Branch degree of `D = 3Q - c1(E)` over `B`, plus `correction`.
pub fn tau_degree(
    surface: &SurfaceModel,
    bundle: &BundleSpec,
    quotient: &DivisorClass,
    correction: &Rational,
) -> Result<Rational> {
    let c1 = bundle.first.plus(&bundle.second)?;
    let d = quotient.scaled(&int(3)).minus(&c1)?;
    let d_plus_omega = d.plus(&surface.omega)?;
    Ok(surface.intersect(&d, &d_plus_omega)? + correction)
}

/// Evaluates one row at `(n, b, l, m)` and compares the residual against the
/// table's closed form.
pub fn residual(row: &TestCurveRow, n: i64, b: Option<i64>, l: &Rational, m: &Rational) -> Result<RowReport> {
    row.check_admissible(n, b)?;
    let label = row.boundary_label(n, b)?;
    let g = row.genus(n);
    let surface = make_surface(row.surface);
    let bundle = row.build_bundle(&surface, n, b, l, m)?;
    let inv = kappa_lambda(&surface, &bundle, Some(&row.chi_override))?;
    let inv = adjust_delta(&inv, &row.delta_adjustment);
    let gq = int(g);

    let (extremal, computed) = match &row.rule {
        ExtremalRule::Mu(_) => {
            let mu = mu_degree(row, l, m)?;
            let r = (int(7) * &gq + int(6)) * &inv.lambda
                - &gq * &inv.delta_adjusted
                - int(2) * (&gq - int(3)) * &mu;
            (mu, r)
        }
        ExtremalRule::Tau { quotient, correction } => {
            let q = row.line(&surface, quotient, n, b, l, m)?;
            let tau = tau_degree(&surface, &bundle, &q, correction)?;
            let r = (int(21) * &gq + int(27)) * &inv.lambda
                - (int(3) * &gq + int(1)) * &inv.delta_adjusted
                - int(2) * &tau;
            (tau, r)
        }
    };
    let expected = row.expected_at(g, label.as_ref())?;
    Ok(RowReport {
        row: row.id.clone(),
        n,
        b,
        l: l.clone(),
        m: m.clone(),
        lambda: inv.lambda,
        kappa: inv.kappa,
        delta: inv.delta_adjusted,
        mu_or_tau: extremal,
        pass: computed == expected,
        residual: computed,
        expected,
        boundary: label,
    })
}

/// One coefficient `c_i(g1, g2)` (or `c` for `H`) in the class expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HigherCoefficient {
    pub row: String,
    pub label: BoundaryLabel,
    pub coefficient: Rational,
}

/// `lead * [D] = lambda_coeff * lambda - delta_coeff * delta - sum coeffs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpression {
    pub parity: Parity,
    pub g: i64,
    pub lead_coefficient: Rational,
    pub lambda_coeff: Rational,
    pub delta_coeff: Rational,
    pub higher: Vec<HigherCoefficient>,
}

impl ClassExpression {
    pub fn nonnegative(&self) -> bool {
        self.higher.iter().all(|h| rational::is_nonnegative(&h.coefficient))
    }
}

pub fn assemble_class(parity: Parity, g: i64) -> Result<ClassExpression> {
    assemble_class_from(&rows_for(parity), parity, g)
}

/// [`assemble_class`] over an explicit list of rows.
pub fn assemble_class_from(rows: &[TestCurveRow], parity: Parity, g: i64) -> Result<ClassExpression> {
    if g < parity.min_genus() {
        return Err(Error::InvalidGenus {
            g,
            reason: "genus must be at least 4 (even) or 5 (odd)",
        });
    }
    if Parity::of_genus(g) != parity {
        return Err(Error::InvalidGenus {
            g,
            reason: "genus parity does not match",
        });
    }
    let n = parity.n_for_genus(g);
    let gq = int(g);
    let (lead, lambda_coeff, delta_coeff) = match parity {
        Parity::Even => (int(2) * (&gq - int(3)), int(7) * &gq + int(6), gq.clone()),
        Parity::Odd => (int(2), int(21) * &gq + int(27), int(3) * &gq + int(1)),
    };
    let mut higher = Vec::new();
    for row in rows.iter().filter(|r| r.parity == parity && r.boundary.is_some()) {
        for b in row.admissible_b(n)? {
            let label = row
                .boundary_label(n, b)?
                .expect("filtered to rows with a boundary");
            let coefficient = row.expected_at(g, Some(&label))? / int(label.multiplicity);
            higher.push(HigherCoefficient {
                row: row.id.clone(),
                label,
                coefficient,
            });
        }
    }
    higher.sort_by(|x, y| {
        (x.label.kind, x.label.g1, x.label.g2, &x.row).cmp(&(y.label.kind, y.label.g1, y.label.g2, &y.row))
    });
    Ok(ClassExpression {
        parity,
        g,
        lead_coefficient: lead,
        lambda_coeff,
        delta_coeff,
        higher,
    })
}

/// The `(l, m)` samples used by the default fidelity sweep.
pub fn default_lm_samples() -> Vec<(Rational, Rational)> {
    [(50, 60), (70, 55), (101, 103)]
        .into_iter()
        .map(|(l, m)| (int(l), int(m)))
        .collect()
}

/// Evaluates every row over all admissible `(n, b)` with `3 <= n <= n_max`
/// and every `(l, m)` sample; records are sorted by `(row, n, b, l, m)`.
pub fn sweep_rows(rows: &[TestCurveRow], n_max: i64, samples: &[(Rational, Rational)]) -> Result<Vec<RowReport>> {
    let mut out = Vec::new();
    for row in rows {
        for n in 3..=n_max {
            for b in row.admissible_b(n)? {
                for (l, m) in samples {
                    out.push(residual(row, n, b, l, m)?);
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
