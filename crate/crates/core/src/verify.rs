//! The full verification suite behind `trigonal verify`.
//!
//! Checks run against an explicit list of catalog rows so that a perturbed
//! copy of the catalog can be fed through the same suite as a negative
//! control (see [`Perturbation`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::catalog::{self, assemble_class_from, residual, BoundarySpec, ExtremalRule, Parity, TestCurveRow};
use crate::chow::{make_surface, Basis, DivisorClass, SurfaceId};
use crate::error::{Error, Result};
use crate::orbifold::{chi, chi_closed_form, chi_numeric, chi_total, ChiQuery};
use crate::rational::{self, frac, int, Rational};
use crate::report::CheckRecord;
use crate::sweep::{hyperelliptic_slope, sharp_slope, sweep_even, sweep_odd};

/// A single-constant edit to a catalog row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Perturbation {
    /// Adds 1 to the delta adjustment.
    DeltaAdjustment(String),
    /// Adds 1 to the `g1` entry of the genus map.
    GenusMap(String),
    /// Adds 1 to the constant term of the expected residual.
    ResidualCoefficient(String),
    /// Adds 1/2 to the tau adjunction correction (odd rows).
    TauCorrection(String),
    /// Adds 1/9 to the orbifold correction.
    ChiOverride(String),
}

impl Perturbation {
    pub fn row(&self) -> &str {
        match self {
            Perturbation::DeltaAdjustment(r)
            | Perturbation::GenusMap(r)
            | Perturbation::ResidualCoefficient(r)
            | Perturbation::TauCorrection(r)
            | Perturbation::ChiOverride(r) => r,
        }
    }

    pub fn apply(&self, rows: &mut [TestCurveRow]) -> Result<()> {
        let id = self.row();
        let row = rows
            .iter_mut()
            .find(|r| r.id == id)
            .ok_or_else(|| Error::Internal(format!("no catalog row `{id}`")))?;
        let unsupported = |what: &str| Error::Internal(format!("row {id} has no {what} to perturb"));
        match self {
            Perturbation::DeltaAdjustment(_) => row.delta_adjustment += int(1),
            Perturbation::GenusMap(_) => match &mut row.boundary {
                Some(BoundarySpec {
                    genera: Some((g1, _)),
                    ..
                }) => *g1 = g1.offset(&int(1)),
                _ => return Err(unsupported("genus map")),
            },
            Perturbation::ResidualCoefficient(_) => {
                row.expected_residual = row.expected_residual.offset(&int(1));
            }
            Perturbation::TauCorrection(_) => match &mut row.rule {
                ExtremalRule::Tau { correction, .. } => *correction += frac(1, 2),
                ExtremalRule::Mu(_) => return Err(unsupported("tau correction")),
            },
            Perturbation::ChiOverride(_) => row.chi_override += frac(1, 9),
        }
        Ok(())
    }
}

impl FromStr for Perturbation {
    type Err = String;

    /// `kind:ROW`, kind one of `adjustment`, `genus`, `residual`, `tau`, `chi`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let (kind, row) = s
            .split_once(':')
            .ok_or_else(|| format!("expected KIND:ROW, got `{s}`"))?;
        let row = row.to_string();
        Ok(match kind {
            "adjustment" => Perturbation::DeltaAdjustment(row),
            "genus" => Perturbation::GenusMap(row),
            "residual" => Perturbation::ResidualCoefficient(row),
            "tau" => Perturbation::TauCorrection(row),
            "chi" => Perturbation::ChiOverride(row),
            other => return Err(format!("unknown perturbation kind `{other}`")),
        })
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self {
            Perturbation::DeltaAdjustment(_) => "adjustment",
            Perturbation::GenusMap(_) => "genus",
            Perturbation::ResidualCoefficient(_) => "residual",
            Perturbation::TauCorrection(_) => "tau",
            Perturbation::ChiOverride(_) => "chi",
        };
        write!(f, "{kind}:{}", self.row())
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub rows: Vec<TestCurveRow>,
    pub table_n_max: i64,
    pub lm_samples: Vec<(Rational, Rational)>,
    pub even_g_max: i64,
    pub odd_g_max: i64,
    pub sweep_n_max: i64,
    pub chi_n_max: i64,
    pub hyperelliptic_g_max: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            rows: catalog::catalog(),
            table_n_max: 30,
            lm_samples: catalog::default_lm_samples(),
            even_g_max: 60,
            odd_g_max: 61,
            sweep_n_max: 60,
            chi_n_max: 12,
            hyperelliptic_g_max: 120,
        }
    }
}

impl SuiteConfig {
    pub fn with_perturbation(mut self, p: &Perturbation) -> Result<Self> {
        p.apply(&mut self.rows)?;
        Ok(self)
    }
}

fn record(check: &str, row: Option<&str>, cases: u64, failures: &[String]) -> CheckRecord {
    let detail = match failures {
        [] => "ok".to_string(),
        [first, ..] if failures.len() == 1 => first.clone(),
        [first, ..] => format!("{first} (+{} more)", failures.len() - 1),
    };
    CheckRecord {
        check: check.to_string(),
        row: row.map(str::to_string),
        cases,
        detail,
        pass: failures.is_empty(),
    }
}

/// Intersection-form constants and identities on each base surface.
pub fn check_surfaces() -> Vec<CheckRecord> {
    let expected_kappa = [int(0), int(-1), int(-2), int(-3)];
    let expected_delta = [int(0), int(1), frac(1, 2), frac(1, 3)];
    SurfaceId::ALL
        .into_iter()
        .map(|id| {
            let m = make_surface(id);
            let i = id.index() as usize;
            let mut fails = Vec::new();
            let mut cases = 0u64;
            let mut want = |label: &str, got: Result<Rational>, exp: Rational| {
                cases += 1;
                match got {
                    Ok(v) if v == exp => {}
                    Ok(v) => fails.push(format!("{label} = {}, expected {}", rational::format(&v), rational::format(&exp))),
                    Err(e) => fails.push(format!("{label}: {e}")),
                }
            };
            for &x in id.basis() {
                for &y in id.basis() {
                    let xy = m.pairing(x, y);
                    let yx = m.pairing(y, x);
                    if let Ok(yx) = yx {
                        want(&format!("{x}.{y} symmetry"), xy, yx);
                    }
                }
            }
            want("s.s", m.pairing(Basis::S, Basis::S), int(0));
            want("fiber.fiber", m.intersect(&m.fiber, &m.fiber), int(0));
            want("omega.omega", m.intersect(&m.omega, &m.omega), m.kappa_s.clone());
            want("kappa_S", Ok(m.kappa_s.clone()), expected_kappa[i].clone());
            want("delta_S", Ok(m.delta_s.clone()), expected_delta[i].clone());
            want("lambda_S", Ok(m.lambda_s.clone()), int(0));
            if id == SurfaceId::S0 {
                want("s.F", m.pairing(Basis::S, Basis::F), int(1));
                want("F.F", m.pairing(Basis::F, Basis::F), int(0));
            } else {
                let ii = id.index();
                let finf = DivisorClass::new(id, [(Basis::Finf, int(1))]).expect("basis");
                want("F0.Finf", m.pairing(Basis::F0, Basis::Finf), frac(1, ii));
                want("F0.F0", m.pairing(Basis::F0, Basis::F0), frac(-1, ii));
                want("Finf.Finf", m.pairing(Basis::Finf, Basis::Finf), frac(-1, ii));
                want("s.F0", m.pairing(Basis::S, Basis::F0), int(1));
                want("s.Finf", m.pairing(Basis::S, Basis::Finf), int(0));
                want("fiber.Finf", m.intersect(&m.fiber, &finf), int(0));
            }
            record(&format!("intersection-form {id}"), None, cases, &fails)
        })
        .collect()
}

/// Exact chi (cyclotomic), closed form and float oracle agree for all
/// characters with `2 <= n <= n_max`.
pub fn check_chi(n_max: i64) -> Vec<CheckRecord> {
    let mut fails = Vec::new();
    let mut cases = 0;
    for n in 2..=n_max {
        for a in 0..n {
            for b in 0..n {
                cases += 1;
                let q = ChiQuery { n, a, b };
                let outcome = (|| -> Result<Option<String>> {
                    let exact = chi(q)?;
                    let closed = chi_closed_form(q)?;
                    let numeric = chi_numeric(q)?;
                    if exact != closed {
                        return Ok(Some(format!(
                            "chi({n},{a},{b}): cyclotomic {} vs closed form {}",
                            rational::format(&exact),
                            rational::format(&closed)
                        )));
                    }
                    let err = (rational::to_f64(&exact) - numeric).abs();
                    if err >= 1e-9 {
                        return Ok(Some(format!("chi({n},{a},{b}): |exact - numeric| = {err:e}")));
                    }
                    Ok(None)
                })();
                match outcome {
                    Ok(None) => {}
                    Ok(Some(f)) => fails.push(f),
                    Err(e) => fails.push(e.to_string()),
                }
            }
        }
    }
    let mut out = vec![record("chi-oracle", None, cases, &fails)];

    let mut fails = Vec::new();
    for (id, want) in [(SurfaceId::S1, int(0)), (SurfaceId::S2, int(0)), (SurfaceId::S3, frac(-2, 9))] {
        match chi_total(&make_surface(id)) {
            Ok(v) if v == want => {}
            Ok(v) => fails.push(format!("{id}: chi total {}", rational::format(&v))),
            Err(e) => fails.push(e.to_string()),
        }
    }
    out.push(record("chi-defaults", None, 3, &fails));
    out
}

/// Residual against the closed form, `(l, m)`-independence and genus
/// consistency, one record per row and property.
pub fn check_tables(rows: &[TestCurveRow], n_max: i64, samples: &[(Rational, Rational)]) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for row in rows {
        let mut fidelity = Vec::new();
        let mut independence = Vec::new();
        let mut genus = Vec::new();
        let (mut cases, mut points) = (0u64, 0u64);
        for n in 3..=n_max {
            let bs = match row.admissible_b(n) {
                Ok(bs) => bs,
                Err(e) => {
                    fidelity.push(e.to_string());
                    continue;
                }
            };
            for b in bs {
                points += 1;
                if let Err(e) = row.boundary_label(n, b) {
                    genus.push(format!("n={n} b={b:?}: {e}"));
                }
                let mut seen: Option<Rational> = None;
                for (l, m) in samples {
                    cases += 1;
                    match residual(row, n, b, l, m) {
                        Ok(rep) => {
                            if !rep.pass {
                                fidelity.push(format!(
                                    "n={n} b={b:?} l={} m={}: residual {} != expected {}",
                                    rational::format(l),
                                    rational::format(m),
                                    rational::format(&rep.residual),
                                    rational::format(&rep.expected)
                                ));
                            }
                            match &seen {
                                None => seen = Some(rep.residual),
                                Some(prev) if *prev != rep.residual => independence.push(format!(
                                    "n={n} b={b:?}: residual varies with (l, m)"
                                )),
                                _ => {}
                            }
                        }
                        Err(e) => fidelity.push(format!("n={n} b={b:?}: {e}")),
                    }
                }
            }
        }
        let id = Some(row.id.as_str());
        out.push(record("table-fidelity", id, cases, &fidelity));
        out.push(record("lm-independence", id, points, &independence));
        out.push(record("genus-consistency", id, points, &genus));
    }
    out
}

/// Non-negativity of every higher-boundary coefficient for
/// `g` in `[min_genus, g_max]` of the given parity.
pub fn check_nonnegativity(rows: &[TestCurveRow], parity: Parity, g_max: i64) -> Vec<CheckRecord> {
    // Failures are grouped by row so the record names the offender.
    let mut by_row: BTreeMap<Option<String>, Vec<String>> = BTreeMap::new();
    let mut cases = 0u64;
    let mut g = parity.min_genus();
    while g <= g_max {
        match assemble_class_from(rows, parity, g) {
            Ok(class) => {
                for h in &class.higher {
                    cases += 1;
                    if !rational::is_nonnegative(&h.coefficient) {
                        by_row.entry(Some(h.row.clone())).or_default().push(format!(
                            "g={g}: {} coefficient {}",
                            h.label,
                            rational::format(&h.coefficient)
                        ));
                    }
                }
            }
            Err(e) => by_row
                .entry(e.row().map(str::to_string))
                .or_default()
                .push(format!("g={g}: {e}")),
        }
        g += 2;
    }
    let check = format!("nonnegativity {parity}");
    if by_row.is_empty() {
        return vec![record(&check, None, cases, &[])];
    }
    by_row
        .into_iter()
        .map(|(row, fails)| record(&check, row.as_deref(), cases, &fails))
        .collect()
}

/// Pipeline sweeps against the sharp-slope formula, plus the comparison with
/// the hyperelliptic bound.
pub fn check_sweeps(n_max: i64, hyperelliptic_g_max: i64) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        let mut fails = Vec::new();
        let mut cases = 0;
        for n in 3..=n_max {
            cases += 1;
            let r = match parity {
                Parity::Even => sweep_even(n),
                Parity::Odd => sweep_odd(n),
            };
            match r.and_then(|r| Ok((sharp_slope(r.g)?, r))) {
                Ok((want, r)) if r.slope == want && &r.lambda * int(12) - &r.kappa == r.delta => {}
                Ok((want, r)) => fails.push(format!(
                    "g={}: slope {} vs sharp {}",
                    r.g,
                    rational::format(&r.slope),
                    rational::format(&want)
                )),
                Err(e) => fails.push(format!("n={n}: {e}")),
            }
        }
        out.push(record(&format!("sweep {parity}"), None, cases, &fails));
    }
    let mut fails = Vec::new();
    for g in 4..=hyperelliptic_g_max {
        match sharp_slope(g) {
            Ok(s) if s < hyperelliptic_slope(g) => {}
            Ok(s) => fails.push(format!("g={g}: sharp slope {} not below 8 + 4/g", rational::format(&s))),
            Err(e) => fails.push(e.to_string()),
        }
    }
    out.push(record(
        "hyperelliptic-comparison",
        None,
        (hyperelliptic_g_max - 3).max(0) as u64,
        &fails,
    ));
    out
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = check_surfaces();
    out.extend(check_chi(cfg.chi_n_max));
    out.extend(check_tables(&cfg.rows, cfg.table_n_max, &cfg.lm_samples));
    out.extend(check_nonnegativity(&cfg.rows, Parity::Even, cfg.even_g_max));
    out.extend(check_nonnegativity(&cfg.rows, Parity::Odd, cfg.odd_g_max));
    out.extend(check_sweeps(cfg.sweep_n_max, cfg.hyperelliptic_g_max));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            table_n_max: 8,
            even_g_max: 14,
            odd_g_max: 15,
            sweep_n_max: 8,
            chi_n_max: 5,
            hyperelliptic_g_max: 20,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn clean_catalog_passes() {
        let recs = run_suite(&small());
        let failed: Vec<_> = recs.iter().filter(|r| !r.pass).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn perturbation_parsing() {
        let p: Perturbation = "adjustment:T1.5".parse().unwrap();
        assert_eq!(p, Perturbation::DeltaAdjustment("T1.5".into()));
        assert_eq!(p.to_string(), "adjustment:T1.5");
        assert!("bogus:T1.1".parse::<Perturbation>().is_err());
        assert!("T1.1".parse::<Perturbation>().is_err());
    }

    #[test]
    fn perturbations_fail_and_name_the_row() {
        for p in ["adjustment:T1.5", "genus:T2.2", "residual:T1.7", "tau:T2.7", "chi:T1.10"] {
            let p: Perturbation = p.parse().unwrap();
            let cfg = small().with_perturbation(&p).unwrap();
            let failed: Vec<_> = run_suite(&cfg).into_iter().filter(|r| !r.pass).collect();
            assert!(!failed.is_empty(), "{p} went undetected");
            assert!(
                failed.iter().all(|r| r.row.as_deref() == Some(p.row())),
                "{p}: {failed:#?}"
            );
        }
    }

    #[test]
    fn unsupported_perturbations() {
        let mut rows = catalog::catalog();
        assert!(Perturbation::GenusMap("T1.1".into()).apply(&mut rows).is_err());
        assert!(Perturbation::TauCorrection("T1.3".into()).apply(&mut rows).is_err());
        assert!(Perturbation::DeltaAdjustment("T9.9".into()).apply(&mut rows).is_err());
    }
}
