//! Run configuration, the example registry, point sampling, the suite
//! orchestrator and report emission.

mod config;
mod registry;

pub use config::{sample_points, CheckSelection, CustomMap, RunConfig, SampleConfig, SampleMode};
pub use registry::{
    affine_setup, example_info, example_matrix, registry_example, registry_example_with,
    CodomainMetric, ExampleInfo, EXAMPLES,
};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, Group};
use crate::check::{CheckEntry, Status};
use crate::contact::{check_almost_contact, check_contact_metric, check_normality, check_sasakian};
use crate::diffgeo::{Matrix, Point, Vector};
use crate::error::{Error, Result};
use crate::semislant::{
    check_integrability_direct, check_structure_identities, check_totally_geodesic_map,
    check_totally_umbilical, condition_ids, detect_semi_slant, evaluate_characterization,
    Distribution, SubmersionClass,
};
use crate::submersion::{
    check_fundamental_equations, check_oneill_properties, check_riemannian_submersion,
    check_sff_symmetry, check_split, check_xi_horizontal, SubmersionSetup,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config: RunConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub dim_vertical: usize,
    pub dim_d1: usize,
    pub dim_d2: usize,
    /// Mean detected slant angle over the sampled points.
    pub theta: Option<f64>,
    /// Largest deviation of any per-point or per-eigenvalue angle from
    /// `theta`.
    pub theta_spread: f64,
    pub class: SubmersionClass,
    pub points_classified: usize,
    pub class_counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub anomalies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub meta: Meta,
    pub classification: Classification,
    pub checks: Vec<CheckEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

impl VerificationReport {
    /// 0 when no check has status `fail`, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn check(&self, id: &str) -> Option<&CheckEntry> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("report: {e}")))
    }

    pub fn to_text(&self) -> String {
        let c = &self.classification;
        let mut out = String::new();
        let source = self
            .meta
            .config
            .example
            .clone()
            .unwrap_or_else(|| "custom map".into());
        let _ = writeln!(
            out,
            "{} {}  {}  seed {}",
            self.meta.tool, self.meta.version, source, self.meta.seed
        );
        let theta = c
            .theta
            .map(|t| format!("{t:.9} (+/- {:.1e})", c.theta_spread))
            .unwrap_or_else(|| "undefined".into());
        let _ = writeln!(
            out,
            "class {}  dim ker {}  dim D1 {}  dim D2 {}  theta {}",
            c.class.as_str(),
            c.dim_vertical,
            c.dim_d1,
            c.dim_d2,
            theta
        );
        for a in &c.anomalies {
            let _ = writeln!(out, "anomaly: {a}");
        }
        let width = self.checks.iter().map(|e| e.id.len()).max().unwrap_or(10);
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<width$}  {:<7}  {:>11}  {:>9}  {:>6}",
            "check", "status", "max resid", "tol", "points"
        );
        for e in &self.checks {
            let status = match e.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Finding => "finding",
            };
            let _ = writeln!(
                out,
                "{:<width$}  {:<7}  {:>11.3e}  {:>9.1e}  {:>6}",
                e.id, status, e.max_residual, e.tolerance, e.points_evaluated
            );
        }
        let count = |s: Status| self.checks.iter().filter(|e| e.status == s).count();
        let _ = writeln!(
            out,
            "\n{} pass, {} fail, {} finding",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Finding)
        );
        out
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Builds the setup described by a validated config.
pub fn setup_from_config(cfg: &RunConfig) -> Result<SubmersionSetup> {
    cfg.validate()?;
    let n = cfg.domain_n()?;
    if let Some(id) = &cfg.example {
        return registry_example_with(
            id,
            cfg.alpha,
            cfg.variant,
            cfg.codomain_metric,
            cfg.tolerances,
        );
    }
    let m = cfg.custom_map.as_ref().expect("validated");
    let rows = m.rows.len();
    let a = Matrix::from_fn(rows, 2 * n + 1, |i, j| m.rows[i][j]);
    let offset = m.offset.as_ref().map(|o| Vector::from_vec(o.clone()));
    affine_setup(
        n,
        a,
        offset,
        cfg.variant,
        cfg.codomain_metric,
        cfg.tolerances,
    )
}

fn classify(setup: &SubmersionSetup, points: &[Point]) -> Result<Classification> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let mut anomalies: Vec<String> = Vec::new();
    let mut thetas = Vec::new();
    let mut spread: f64 = 0.0;
    let mut dims = None;
    for p in points {
        let d = detect_semi_slant(setup, p)?;
        *counts.entry(d.class.as_str().to_string()).or_default() += 1;
        if let Some(a) = d.anomaly.clone() {
            if !anomalies.contains(&a) && anomalies.len() < 5 {
                anomalies.push(a);
            }
        }
        if let Some(t) = d.theta {
            thetas.push(t);
        }
        spread = spread.max(d.theta_spread);
        dims.get_or_insert((
            d.d1_basis.len() + d.d2_basis.len(),
            d.dim_d1(),
            d.dim_d2(),
            d.class,
        ));
    }
    let (dim_vertical, dim_d1, dim_d2, first_class) =
        dims.ok_or_else(|| Error::InvalidConfig("no sample points".into()))?;
    let class = if counts.len() == 1 {
        first_class
    } else {
        anomalies.push(format!("classification varies across points: {counts:?}"));
        SubmersionClass::NotSemiSlant
    };
    let theta = if thetas.is_empty() {
        None
    } else {
        Some(thetas.iter().sum::<f64>() / thetas.len() as f64)
    };
    if let Some(t) = theta {
        for x in &thetas {
            spread = spread.max((x - t).abs());
        }
    }
    Ok(Classification {
        dim_vertical,
        dim_d1,
        dim_d2,
        theta,
        theta_spread: spread,
        class,
        points_classified: points.len(),
        class_counts: counts,
        anomalies,
    })
}

/// Ids selected by the config, in catalog order. Unknown selectors are an
/// error.
pub fn selected_ids(sel: &CheckSelection) -> Result<Vec<&'static str>> {
    if let CheckSelection::List(items) = sel {
        for s in items {
            if !catalog::CHECKS
                .iter()
                .any(|c| CheckSelection::List(vec![s.clone()]).selects(c.id))
            {
                return Err(Error::UnknownCheck { id: s.clone() });
            }
        }
    }
    Ok(catalog::CHECKS
        .iter()
        .filter(|c| sel.selects(c.id))
        .map(|c| c.id)
        .collect())
}

/// Samples points, classifies, runs every selected check and assembles the
/// report. Deterministic for a fixed config.
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport> {
    let setup = setup_from_config(cfg)?;
    let ids = selected_ids(&cfg.checks)?;
    let n = cfg.domain_n()?;
    let points = sample_points(n, &cfg.sample);
    let classification = classify(&setup, &points)?;
    let checks = run_checks(&setup, &points, &ids)?;
    Ok(VerificationReport {
        meta: Meta {
            tool: "semislant".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: cfg.sample.seed,
            config: cfg.clone(),
        },
        classification,
        checks,
    })
}

/// Runs the groups that contain any of `ids` and keeps the selected
/// entries, in catalog order.
pub fn run_checks(
    setup: &SubmersionSetup,
    points: &[Point],
    ids: &[&str],
) -> Result<Vec<CheckEntry>> {
    let wants = |prefix: &str| ids.iter().any(|id| id.starts_with(prefix));
    let st = &setup.structure;
    let cfg = setup.cfg();
    let mut all: Vec<CheckEntry> = Vec::new();
    if wants("contact.") || wants("sasakian.") {
        all.extend(check_almost_contact(st, points, cfg));
        all.extend(check_contact_metric(st, points, cfg));
        all.extend(check_normality(st, points, cfg));
        all.extend(check_sasakian(st, points, cfg)?);
    }
    if wants("submersion.") {
        all.extend(check_split(setup, points)?);
        all.extend(check_riemannian_submersion(setup, points)?);
        all.extend(check_xi_horizontal(setup, points)?);
    }
    if wants("oneill.") {
        all.extend(check_oneill_properties(setup, points)?);
    }
    if wants("fundamental.") {
        all.extend(check_fundamental_equations(setup, points)?);
    }
    if wants("sff.") {
        all.extend(check_sff_symmetry(setup, points)?);
    }
    if wants("slant.") || wants("decomp.") || wants("square.") || wants("structure.") {
        all.extend(check_structure_identities(setup, points)?);
    }
    if wants("integrable.") {
        all.extend(check_integrability_direct(
            setup,
            &Distribution::ALL,
            points,
        )?);
    }
    let chars: Vec<&str> = condition_ids()
        .into_iter()
        .filter(|c| ids.contains(c))
        .collect();
    if !chars.is_empty() {
        all.extend(evaluate_characterization(setup, &chars, points)?);
    }
    if wants("umbilical.") {
        all.extend(check_totally_umbilical(setup, points)?);
    }
    if wants("geodesic.") {
        all.extend(check_totally_geodesic_map(setup, points)?);
    }
    let mut out: Vec<CheckEntry> = Vec::new();
    for id in ids {
        if let Some(pos) = all.iter().position(|e| e.id == *id) {
            out.push(all.swap_remove(pos));
        }
    }
    Ok(out)
}

/// Group of every check, for listings.
pub fn check_groups() -> Vec<(Group, &'static str, &'static str)> {
    catalog::CHECKS
        .iter()
        .map(|c| (c.group, c.id, c.anchor))
        .collect()
}
