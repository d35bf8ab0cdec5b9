use super::*;
use crate::rational::frac;

fn row(id: &str) -> TestCurveRow {
    catalog().into_iter().find(|r| r.id == id).unwrap()
}

#[test]
fn row_counts() {
    assert_eq!(even_rows().len(), 11);
    assert_eq!(odd_rows().len(), 9);
    assert!(even_rows().iter().all(|r| r.parity == Parity::Even));
    assert!(odd_rows()
        .iter()
        .all(|r| matches!(r.rule, ExtremalRule::Tau { .. })));
}

#[test]
fn every_b_row_has_a_bounded_range() {
    for r in catalog() {
        if r.uses_b() {
            assert!(
                r.b_constraints
                    .iter()
                    .any(|c| matches!(c, BConstraint::Range { .. })),
                "{}",
                r.id
            );
        }
    }
}

#[test]
fn delta1_genus_map() {
    let r = row("T1.3");
    let label = r.boundary_label(7, Some(3)).unwrap().unwrap();
    assert_eq!(label.kind, BoundaryKind::Delta1);
    assert_eq!((label.g1, label.g2), (Some(2 * (7 - 3) - 2), Some(2 * 3 - 2)));
}

#[test]
fn odd_delta3_expected_form() {
    let r = row("T2.8");
    let (g1, g2) = (5i64, 4i64);
    let label = BoundaryLabel {
        kind: BoundaryKind::Delta3,
        g1: Some(g1),
        g2: Some(g2),
        multiplicity: 1,
    };
    let want = frac(3, 2) * int(9 * g1 * g2 - 2 * g1 - g2) - int(1);
    assert_eq!(r.expected_at(g1 + g2, Some(&label)).unwrap(), want);
}

#[test]
fn mu_degrees() {
    assert_eq!(mu_degree(&row("T1.1"), &int(5), &int(3)).unwrap(), int(0));
    assert_eq!(mu_degree(&row("T1.2"), &int(5), &int(3)).unwrap(), int(2));
    assert_eq!(mu_degree(&row("T1.2"), &int(4), &int(4)).unwrap(), int(0));
    assert!(matches!(
        mu_degree(&row("T2.1"), &int(1), &int(1)),
        Err(Error::WrongParity { .. })
    ));
}

#[test]
fn tau_on_s0_product() {
    let r = row("T2.1");
    let s0 = make_surface(SurfaceId::S0);
    for (n, l, m) in [(3, 50, 60), (5, 7, 2), (9, -3, 11)] {
        let (lq, mq) = (int(l), int(m));
        let e = r.build_bundle(&s0, n, None, &lq, &mq).unwrap();
        let q = s0.twisted_section(&int(n), &int(0), &mq).unwrap();
        assert_eq!(
            tau_degree(&s0, &e, &q, &int(0)).unwrap(),
            int((2 * n - 4) * (2 * m - l))
        );
    }
}

#[test]
fn tau_corrections_by_boundary_type() {
    let corr = |id: &str| match row(id).rule {
        ExtremalRule::Tau { correction, .. } => correction,
        ExtremalRule::Mu(_) => panic!("{id} is even"),
    };
    assert_eq!(corr("T2.3"), int(2));
    assert_eq!(corr("T2.4"), int(2));
    assert_eq!(corr("T2.5"), int(2));
    assert_eq!(corr("T2.7"), frac(3, 2));
    for id in ["T2.1", "T2.2", "T2.6", "T2.8", "T2.9"] {
        assert_eq!(corr(id), int(0), "{id}");
    }
}

#[test]
fn delta_adjustments_by_boundary_type() {
    for r in catalog() {
        let want = match r.boundary.as_ref().map(|b| b.kind) {
            Some(BoundaryKind::Delta4) => 1,
            Some(BoundaryKind::Delta5) | Some(BoundaryKind::Delta6) => 2,
            Some(BoundaryKind::Hyp) => 3,
            _ => 0,
        };
        assert_eq!(r.delta_adjustment, int(want), "{}", r.id);
    }
}

#[test]
fn chi_overrides() {
    for r in catalog() {
        let want = if r.surface == SurfaceId::S3 { frac(-2, 9) } else { int(0) };
        assert_eq!(r.chi_override, want, "{}", r.id);
        // Defaults reproduce the override.
        let model = make_surface(r.surface);
        assert_eq!(crate::orbifold::chi_total(&model).unwrap(), want);
    }
}

#[test]
fn hand_evaluated_delta1_row() {
    let rep = residual(&row("T1.3"), 4, Some(2), &int(5), &int(7)).unwrap();
    assert_eq!(rep.lambda, int(34));
    assert_eq!(rep.delta, int(271));
    assert_eq!(rep.residual, int(6));
    assert_eq!(rep.expected, int(6));
    assert!(rep.pass);
}

#[test]
fn s0_rows_vanish() {
    for id in ["T1.1", "T1.2", "T2.1"] {
        for n in 3..12 {
            for (l, m) in [(0, 0), (50, 60), (-7, 13)] {
                let rep = residual(&row(id), n, None, &int(l), &int(m)).unwrap();
                assert_eq!(rep.residual, int(0), "{id} n={n}");
            }
        }
    }
}

#[test]
fn rational_base_degrees() {
    // l and m need not be integers; the residual does not see them.
    let r = row("T2.4");
    let a = residual(&r, 6, Some(8), &frac(1, 3), &frac(-5, 7)).unwrap();
    let b = residual(&r, 6, Some(8), &int(40), &int(41)).unwrap();
    assert!(a.pass && b.pass);
    assert_eq!(a.residual, b.residual);
}

#[test]
fn inadmissible_parameters_name_the_predicate() {
    let err = residual(&row("T1.3"), 5, Some(5), &int(0), &int(0)).unwrap_err();
    match err {
        Error::Inadmissible { row, predicate, .. } => {
            assert_eq!(row, "T1.3");
            assert_eq!(predicate, "1 <= b <= n-1");
        }
        other => panic!("{other:?}"),
    }
    let err = residual(&row("T1.10"), 5, Some(6), &int(0), &int(0)).unwrap_err();
    assert!(err.to_string().contains("mod 3"), "{err}");
    assert!(residual(&row("T1.9"), 5, Some(4), &int(0), &int(0)).is_err());
    assert!(residual(&row("T1.1"), 5, Some(1), &int(0), &int(0)).is_err());
    assert!(residual(&row("T1.3"), 5, None, &int(0), &int(0)).is_err());
    assert!(residual(&row("T1.1"), 2, None, &int(0), &int(0)).is_err());
}

/// Restated admissibility, written independently of the catalog encoding.
fn independent_range(id: &str, n: i64, b: i64) -> bool {
    let m3 = |r: i64| b.rem_euclid(3) == r;
    match id {
        "T1.3" => (1..=n - 1).contains(&b),
        "T1.4" => (2..=n - 1).contains(&b),
        "T1.5" => (2..=2 * n - 2).contains(&b),
        "T1.6" => (n..=2 * n - 2).contains(&b),
        "T1.7" => b == 2 * n - 1,
        "T1.8" => (2..=2 * n - 1).contains(&b),
        "T1.9" => b % 2 != 0 && (3..=4 * n - 3).contains(&b),
        "T1.10" => m3(2) && (5..=3 * n - 3).contains(&b),
        "T1.11" => m3(1) && (4..=3 * n - 2).contains(&b),
        "T2.2" => (1..=n - 1).contains(&b),
        "T2.3" => (2..=2 * n - 1).contains(&b),
        "T2.4" => (n + 1..=2 * n - 1).contains(&b),
        "T2.5" => b == 2 * n,
        "T2.6" => (2..=2 * n).contains(&b),
        "T2.7" => b % 2 != 0 && (3..=4 * n - 1).contains(&b),
        "T2.8" => m3(2) && (5..=3 * n - 1).contains(&b),
        "T2.9" => m3(1) && (4..=3 * n - 1).contains(&b),
        other => panic!("row {other} uses no b"),
    }
}

#[test]
fn b_range_completeness() {
    for r in catalog().into_iter().filter(TestCurveRow::uses_b) {
        for n in 3..=30 {
            let listed: Vec<i64> = r.admissible_b(n).unwrap().into_iter().flatten().collect();
            for b in -10..=8 * n {
                let want = independent_range(&r.id, n, b);
                assert_eq!(r.check_admissible(n, Some(b)).is_ok(), want, "{} n={n} b={b}", r.id);
                assert_eq!(listed.contains(&b), want, "{} n={n} b={b}", r.id);
            }
        }
    }
}

#[test]
fn genus_consistency_over_admissible_range() {
    for r in catalog() {
        for n in 3..=30 {
            for b in r.admissible_b(n).unwrap() {
                r.boundary_label(n, b)
                    .unwrap_or_else(|e| panic!("{} n={n} b={b:?}: {e}", r.id));
            }
        }
    }
}

#[test]
fn fidelity_small_sweep() {
    let reports = sweep_rows(&catalog(), 12, &default_lm_samples()).unwrap();
    assert!(reports.len() > 1000);
    let bad: Vec<_> = reports.iter().filter(|r| !r.pass).collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn class_coefficients() {
    let c = assemble_class(Parity::Even, 4).unwrap();
    assert_eq!(c.lambda_coeff, int(34));
    assert_eq!(c.delta_coeff, int(4));
    assert_eq!(c.lead_coefficient, int(2));
    assert!(c.nonnegative());
    // Delta1 with g2 = 0 (b = 1).
    let zero = c
        .higher
        .iter()
        .find(|h| h.row == "T1.3" && h.label.g2 == Some(0))
        .unwrap();
    assert_eq!(zero.coefficient, int(0));
    // H is met twice, so c = residual / 2.
    let h = c.higher.iter().find(|h| h.label.kind == BoundaryKind::Hyp).unwrap();
    assert_eq!(h.coefficient, frac(4 * 2 * 5, 4));

    let c = assemble_class(Parity::Odd, 5).unwrap();
    assert_eq!(c.lambda_coeff, int(132));
    assert_eq!(c.delta_coeff, int(16));
    assert!(c.nonnegative());
}

#[test]
fn class_rejects_bad_genus() {
    assert!(assemble_class(Parity::Even, 5).is_err());
    assert!(assemble_class(Parity::Odd, 4).is_err());
    assert!(assemble_class(Parity::Even, 2).is_err());
    assert!(assemble_class(Parity::Odd, 3).is_err());
}
