//! The two test-curve tables, one entry per table row, in table order.
//!
//! Formulas are kept in the notation of the tables: `n` and `b` are the row
//! parameters, `g1` and `g2` the genera of the boundary point, `g` the genus.
//! `L(a*s - t*Finf)` is the line class `a*s - t*Finf + deg(L)*F`.

use super::{
    BConstraint, BoundaryKind, BoundarySpec, BundleTemplate, ExtremalRule, LineBase, LineTemplate,
    MuRule, Parity, TestCurveRow,
};
use crate::chow::SurfaceId;
use crate::cover::BundleKind;
use crate::expr::Expr;
use crate::rational::{frac, int, Rational};

fn ex(src: &str) -> Expr {
    Expr::parse(src).unwrap_or_else(|e| panic!("catalog formula `{src}`: {e}"))
}

fn line(base: LineBase, s_coeff: &str, twist: &str) -> LineTemplate {
    LineTemplate {
        base,
        s_coeff: ex(s_coeff),
        twist: ex(twist),
    }
}

fn split(first: LineTemplate, second: LineTemplate) -> BundleTemplate {
    BundleTemplate {
        kind: BundleKind::Split,
        first,
        second,
    }
}

fn ext(sub: LineTemplate, quotient: LineTemplate) -> BundleTemplate {
    BundleTemplate {
        kind: BundleKind::Extension,
        first: sub,
        second: quotient,
    }
}

fn range(lo: &str, hi: &str) -> BConstraint {
    BConstraint::Range {
        lo: ex(lo),
        hi: ex(hi),
    }
}

fn mod3(residue: i64) -> BConstraint {
    BConstraint::Congruent { modulus: 3, residue }
}

fn meets(kind: BoundaryKind, g1: &str, g2: &str) -> Option<BoundarySpec> {
    Some(BoundarySpec {
        kind,
        genera: Some((ex(g1), ex(g2))),
        multiplicity: 1,
    })
}

fn hyperelliptic_twice() -> Option<BoundarySpec> {
    Some(BoundarySpec {
        kind: BoundaryKind::Hyp,
        genera: None,
        multiplicity: 2,
    })
}

struct Row {
    surface: SurfaceId,
    description: &'static str,
    bundle: BundleTemplate,
    b: Vec<BConstraint>,
    boundary: Option<BoundarySpec>,
    delta_adjustment: Rational,
    rule: ExtremalRule,
    residual: &'static str,
}

fn finish(prefix: &str, parity: Parity, rows: Vec<Row>) -> Vec<TestCurveRow> {
    rows.into_iter()
        .enumerate()
        .map(|(k, r)| TestCurveRow {
            id: format!("{prefix}.{}", k + 1),
            parity,
            surface: r.surface,
            description: r.description.to_string(),
            bundle: r.bundle,
            b_constraints: r.b,
            boundary: r.boundary,
            delta_adjustment: r.delta_adjustment,
            rule: r.rule,
            chi_override: if r.surface == SurfaceId::S3 { frac(-2, 9) } else { int(0) },
            expected_residual: ex(r.residual),
        })
        .collect()
}

use BoundaryKind::*;
use LineBase::{L, M};

/// Maroni divisor, even genus `g = 2n - 2`.
pub fn even_rows() -> Vec<TestCurveRow> {
    let mu0 = || ExtremalRule::Mu(MuRule::Zero);
    let rows = vec![
        Row {
            surface: SurfaceId::S0,
            description: "L(n)^⊕2",
            bundle: split(line(L, "n", "0"), line(L, "n", "0")),
            b: vec![],
            boundary: None,
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "0",
        },
        Row {
            surface: SurfaceId::S0,
            description: "generic extension L((n-1)s) ↪ E ↠ M((n+1)s)",
            bundle: ext(line(L, "n-1", "0"), line(M, "n+1", "0")),
            b: vec![],
            boundary: None,
            delta_adjustment: int(0),
            rule: ExtremalRule::Mu(MuRule::DegLMinusDegM),
            residual: "0",
        },
        Row {
            surface: SurfaceId::S1,
            description: "L(ns - bF∞) ⊕ M(ns - bF∞)",
            bundle: split(line(L, "n", "b"), line(M, "n", "b")),
            b: vec![range("1", "n-1")],
            boundary: meets(Delta1, "2*(n-b)-2", "2*b-2"),
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "3/2*g1*g2",
        },
        Row {
            surface: SurfaceId::S1,
            description: "L(ns - bF∞) ⊕ M(ns - (b-1)F∞)",
            bundle: split(line(L, "n", "b"), line(M, "n", "b-1")),
            b: vec![range("2", "n-1")],
            boundary: meets(Delta1, "2*(n-b)-1", "2*b-3"),
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "1/2*(3*g1*g2+g1+g2-1)",
        },
        Row {
            surface: SurfaceId::S1,
            description: "generic extension L(ns - bF∞) ↪ E ↠ M(ns)",
            bundle: ext(line(L, "n", "b"), line(M, "n", "0")),
            b: vec![range("2", "2*n-2")],
            boundary: meets(Delta4, "2*n-b-2", "b-1"),
            delta_adjustment: int(1),
            rule: mu0(),
            residual: "1/2*g2*(g1*g2+g2^2+5*g1-1)",
        },
        Row {
            surface: SurfaceId::S1,
            description: "extension L(ns - bF∞) ↪ E ↠ M(ns), E = O ⊕ O(2n-b) on F0",
            bundle: ext(line(L, "n", "b"), line(M, "n", "0")),
            b: vec![range("n", "2*n-2")],
            boundary: meets(Delta6, "2*n-b-1", "b-1"),
            delta_adjustment: int(2),
            rule: mu0(),
            residual: "1/2*g2*(g1*g2+g2^2+5*g1-g2-6)+g",
        },
        Row {
            surface: SurfaceId::S1,
            description: "previous row at b = 2n-1",
            bundle: ext(line(L, "n", "b"), line(M, "n", "0")),
            b: vec![range("2*n-1", "2*n-1")],
            boundary: hyperelliptic_twice(),
            delta_adjustment: int(3),
            rule: mu0(),
            residual: "1/2*g*(g-2)*(g+1)",
        },
        Row {
            surface: SurfaceId::S2,
            description: "L(ns - bF∞) ⊕ M(ns - (b-1)F∞)",
            bundle: split(line(L, "n", "b"), line(M, "n", "b-1")),
            b: vec![range("2", "2*n-1")],
            boundary: meets(Delta2, "2*n-b-1", "b-2"),
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "3*g1*g2",
        },
        Row {
            surface: SurfaceId::S2,
            description: "generic extension L(ns - bF∞) ↪ E ↠ M(ns), b odd",
            bundle: ext(line(L, "n", "b"), line(M, "n", "0")),
            b: vec![BConstraint::Odd, range("3", "4*n-3")],
            boundary: meets(Delta5, "2*n-(b+3)/2", "(b-1)/2"),
            delta_adjustment: int(2),
            rule: mu0(),
            residual: "g2^3+g1*g2^2-2*g2^2+4*g1*g2-g1-g2",
        },
        Row {
            surface: SurfaceId::S3,
            description: "L(ns - bF∞) ⊕ M(ns - (b-1)F∞), b = 2 (mod 3)",
            bundle: split(line(L, "n", "b"), line(M, "n", "b-1")),
            b: vec![mod3(2), range("5", "3*n-3")],
            boundary: meets(Delta3, "2*n-(2*b+2)/3", "(2*b-4)/3"),
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "9/2*g1*g2-g1-g2",
        },
        Row {
            surface: SurfaceId::S3,
            description: "L(ns - bF∞) ⊕ M(ns - (b-2)F∞), b = 1 (mod 3)",
            bundle: split(line(L, "n", "b"), line(M, "n", "b-2")),
            b: vec![mod3(1), range("4", "3*n-2")],
            boundary: meets(Delta3, "2*n-(2*b+1)/3", "(2*b-5)/3"),
            delta_adjustment: int(0),
            rule: mu0(),
            residual: "1/2*(9*g1*g2-g1-g2-3)",
        },
    ];
    finish("T1", Parity::Even, rows)
}

/// Tangency divisor, odd genus `g = 2n - 1`. `Q` is always the `M(...)` summand.
pub fn odd_rows() -> Vec<TestCurveRow> {
    let tau = |q: LineTemplate, correction: Rational| ExtremalRule::Tau {
        quotient: q,
        correction,
    };
    let rows = vec![
        Row {
            surface: SurfaceId::S0,
            description: "L((n+1)s) ⊕ M(ns)",
            bundle: split(line(L, "n+1", "0"), line(M, "n", "0")),
            b: vec![],
            boundary: None,
            delta_adjustment: int(0),
            rule: tau(line(M, "n", "0"), int(0)),
            residual: "0",
        },
        Row {
            surface: SurfaceId::S1,
            description: "L((n+1)s - bF∞) ⊕ M(ns - bF∞)",
            bundle: split(line(L, "n+1", "b"), line(M, "n", "b")),
            b: vec![range("1", "n-1")],
            boundary: meets(Delta1, "2*(n-b)-1", "2*b-2"),
            delta_adjustment: int(0),
            rule: tau(line(M, "n", "b"), int(0)),
            residual: "3/2*g2*(3*g1+1)",
        },
        Row {
            surface: SurfaceId::S1,
            description: "generic extension L((n+1)s - bF∞) ↪ E ↠ M(ns)",
            bundle: ext(line(L, "n+1", "b"), line(M, "n", "0")),
            b: vec![range("2", "2*n-1")],
            boundary: meets(Delta4, "2*n-b-1", "b-1"),
            delta_adjustment: int(1),
            rule: tau(line(M, "n", "0"), int(2)),
            residual: "3/2*g2*(g1*g2+g2^2+5*g1+g2+4)",
        },
        Row {
            surface: SurfaceId::S1,
            description: "extension L((n+1)s - bF∞) ↪ E ↠ M(ns), E = O ⊕ O(2n-b+1) on F0",
            bundle: ext(line(L, "n+1", "b"), line(M, "n", "0")),
            b: vec![range("n+1", "2*n-1")],
            boundary: meets(Delta6, "2*n-b", "b-1"),
            delta_adjustment: int(2),
            rule: tau(line(M, "n", "0"), int(2)),
            residual: "3/2*g2*(g1*g2+g2^2+5*g1-1)+3*g+1",
        },
        Row {
            surface: SurfaceId::S1,
            description: "previous row at b = 2n",
            bundle: ext(line(L, "n+1", "b"), line(M, "n", "0")),
            b: vec![range("2*n", "2*n")],
            boundary: hyperelliptic_twice(),
            delta_adjustment: int(3),
            rule: tau(line(M, "n", "0"), int(2)),
            residual: "3/2*g*(g^2+3)+2",
        },
        Row {
            surface: SurfaceId::S2,
            description: "L((n+1)s - bF∞) ⊕ M(ns - (b-1)F∞)",
            bundle: split(line(L, "n+1", "b"), line(M, "n", "b-1")),
            b: vec![range("2", "2*n")],
            boundary: meets(Delta2, "2*n-b", "b-2"),
            delta_adjustment: int(0),
            rule: tau(line(M, "n", "b-1"), int(0)),
            residual: "9*g1*g2",
        },
        Row {
            surface: SurfaceId::S2,
            description: "generic extension L((n+1)s - bF∞) ↪ E ↠ M(ns), b odd",
            bundle: ext(line(L, "n+1", "b"), line(M, "n", "0")),
            b: vec![BConstraint::Odd, range("3", "4*n-1")],
            boundary: meets(Delta5, "2*n-(b+1)/2", "(b-1)/2"),
            delta_adjustment: int(2),
            rule: tau(line(M, "n", "0"), frac(3, 2)),
            residual: "3*g2*(g2^2+g1*g2+4*g1-g2+4)-3*g-1",
        },
        Row {
            surface: SurfaceId::S3,
            description: "L((n+1)s - bF∞) ⊕ M(ns - (b-1)F∞), b = 2 (mod 3)",
            bundle: split(line(L, "n+1", "b"), line(M, "n", "b-1")),
            b: vec![mod3(2), range("5", "3*n-1")],
            boundary: meets(Delta3, "2*n-(2*b-1)/3", "(2*b-4)/3"),
            delta_adjustment: int(0),
            rule: tau(line(M, "n", "b-1"), int(0)),
            residual: "3/2*(9*g1*g2-2*g1-g2)-1",
        },
        Row {
            surface: SurfaceId::S3,
            description: "L((n+1)s - bF∞) ⊕ M(ns - (b-2)F∞), b = 1 (mod 3)",
            bundle: split(line(L, "n+1", "b"), line(M, "n", "b-2")),
            b: vec![mod3(1), range("4", "3*n-1")],
            boundary: meets(Delta3, "2*n-(2*b-2)/3", "(2*b-5)/3"),
            delta_adjustment: int(0),
            rule: tau(line(M, "n", "b-2"), int(0)),
            residual: "3/2*(9*g1*g2-g1-2*g2)-1",
        },
    ];
    finish("T2", Parity::Odd, rows)
}
