//! Structured verdicts produced by every verification routine.

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::diffgeo::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Violation that documents a known ambiguity (printed variant, slice
    /// dependence) rather than a defect of the engine.
    Finding,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointFailure {
    pub point: Vec<f64>,
    pub residual: f64,
}

/// Pairing of a condition residual with the direct geometric quantity it is
/// supposed to characterize.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub direct_check: String,
    pub direct_max_residual: f64,
    /// Points where the condition holds (residual within tolerance).
    pub condition_holds: usize,
    /// Points where the geometric property holds.
    pub property_holds: usize,
    pub agreements: usize,
    pub disagreements: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub id: String,
    pub anchor: String,
    pub points_evaluated: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_point_failures: Vec<PointFailure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_validation: Option<CrossValidation>,
}

/// Residuals are reported as finite decimals; anything non-finite is
/// clamped so JSON stays parseable and the check fails.
fn sanitize(r: f64) -> f64 {
    if r.is_nan() || r.is_infinite() {
        f64::MAX
    } else {
        r.abs()
    }
}

impl CheckEntry {
    /// Builds an entry from per-point residuals. The status is `Pass` when
    /// every residual is within `tolerance`, `on_violation` otherwise.
    pub fn from_residuals(
        id: &str,
        tolerance: f64,
        residuals: &[(Point, f64)],
        on_violation: Status,
    ) -> Self {
        let mut max_residual: f64 = 0.0;
        let mut failures = Vec::new();
        for (p, r) in residuals {
            let r = sanitize(*r);
            max_residual = max_residual.max(r);
            if r > tolerance {
                failures.push(PointFailure {
                    point: p.to_vec(),
                    residual: r,
                });
            }
        }
        let status = if failures.is_empty() {
            Status::Pass
        } else {
            on_violation
        };
        Self {
            id: id.to_string(),
            anchor: catalog::anchor(id).to_string(),
            points_evaluated: residuals.len(),
            max_residual,
            tolerance,
            status,
            note: None,
            per_point_failures: failures,
            cross_validation: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Identity evaluated column-wise by [`entries_from_columns`].
#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub tolerance: f64,
    pub on_violation: Status,
}

impl CheckSpec {
    pub fn new(id: &'static str, tolerance: f64, on_violation: Status) -> Self {
        Self {
            id,
            tolerance,
            on_violation,
        }
    }
}

/// One entry per spec; `rows[k].1[i]` is the residual of spec `i` at point
/// `k`.
pub fn entries_from_columns(specs: &[CheckSpec], rows: &[(Point, Vec<f64>)]) -> Vec<CheckEntry> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let column: Vec<(Point, f64)> = rows.iter().map(|(p, r)| (p.clone(), r[i])).collect();
            CheckEntry::from_residuals(spec.id, spec.tolerance, &column, spec.on_violation)
        })
        .collect()
}

/// Like [`entries_from_columns`], but violations at points outside the
/// hypotheses of the identity (`in_scope[k] == false`) only ever produce a
/// `Finding` carrying `scope_note`.
pub fn scoped_entries(
    specs: &[CheckSpec],
    rows: &[(Point, Vec<f64>)],
    in_scope: &[bool],
    scope_note: &str,
) -> Vec<CheckEntry> {
    specs
        .iter()
        .enumerate()
        .map(|(i, spec)| {
            let inside: Vec<(Point, f64)> = rows
                .iter()
                .zip(in_scope)
                .map(|((p, r), s)| (p.clone(), if *s { r[i] } else { 0.0 }))
                .collect();
            let column: Vec<(Point, f64)> = rows.iter().map(|(p, r)| (p.clone(), r[i])).collect();
            let mut entry =
                CheckEntry::from_residuals(spec.id, spec.tolerance, &column, spec.on_violation);
            let strict =
                CheckEntry::from_residuals(spec.id, spec.tolerance, &inside, spec.on_violation);
            if entry.status != Status::Pass && strict.status == Status::Pass {
                entry.status = Status::Finding;
                entry = entry.with_note(scope_note);
            }
            entry
        })
        .collect()
}

/// Violation status for identities that hold for a correct structure but
/// are expected to break for the printed variant.
pub fn violation_for(is_printed_variant: bool) -> Status {
    if is_printed_variant {
        Status::Finding
    } else {
        Status::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_follows_tolerance() {
        let p = Point::origin(2);
        let ok =
            CheckEntry::from_residuals("contact.eta_xi", 1e-9, &[(p.clone(), 1e-12)], Status::Fail);
        assert_eq!(ok.status, Status::Pass);
        assert!(ok.per_point_failures.is_empty());
        let bad = CheckEntry::from_residuals(
            "contact.eta_xi",
            1e-9,
            &[(p.clone(), 1e-12), (p, 0.5)],
            Status::Finding,
        );
        assert_eq!(bad.status, Status::Finding);
        assert_eq!(bad.per_point_failures.len(), 1);
        assert_eq!(bad.max_residual, 0.5);
    }

    #[test]
    fn nan_residual_is_clamped() {
        let e = CheckEntry::from_residuals(
            "contact.eta_xi",
            1e-9,
            &[(Point::origin(1), f64::NAN)],
            Status::Fail,
        );
        assert_eq!(e.status, Status::Fail);
        assert!(e.max_residual.is_finite());
    }
}
