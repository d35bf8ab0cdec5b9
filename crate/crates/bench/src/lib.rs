//! Workloads shared by the criterion benches.

use trigonal_core::catalog::{default_lm_samples, sweep_rows, TestCurveRow};
use trigonal_core::{catalog, RowReport};

/// Every row of both tables over `3 <= n <= n_max` at the default samples.
pub fn table_sweep(rows: &[TestCurveRow], n_max: i64) -> Vec<RowReport> {
    sweep_rows(rows, n_max, &default_lm_samples()).expect("catalog rows evaluate")
}

pub fn all_rows() -> Vec<TestCurveRow> {
    catalog()
}
