use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::registry::{example_info, CodomainMetric};
use crate::contact::StructureVariant;
use crate::diffgeo::{FdConfig, Point, Vector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomMap {
    /// `m₂` rows of `2n+1` coefficients.
    pub rows: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// All `yⁱ = 0`; `x` and `z` uniform in `[−h, h]`.
    #[default]
    SliceY0,
    /// Every coordinate uniform in `[−h, h]`.
    Box,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    pub mode: SampleMode,
    pub count: usize,
    pub seed: u64,
    pub box_halfwidth: f64,
}

impl Default for SampleConfig {
    fn default() -> Self {
        Self {
            mode: SampleMode::SliceY0,
            count: 100,
            seed: 42,
            box_halfwidth: 0.5,
        }
    }
}

/// `"all"` or a list of check ids / id prefixes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckSelection {
    Keyword(String),
    List(Vec<String>),
}

impl Default for CheckSelection {
    fn default() -> Self {
        CheckSelection::Keyword("all".into())
    }
}

impl CheckSelection {
    pub fn parse(s: &str) -> Self {
        if s == "all" {
            CheckSelection::default()
        } else {
            CheckSelection::List(s.split(',').map(|t| t.trim().to_string()).collect())
        }
    }

    /// An id is selected by an exact match or by a prefix ending at a dot
    /// boundary, so `square` selects `square.vv.printed`.
    pub fn selects(&self, id: &str) -> bool {
        match self {
            CheckSelection::Keyword(_) => true,
            CheckSelection::List(items) => items.iter().any(|s| selector_matches(s, id)),
        }
    }
}

fn selector_matches(sel: &str, id: &str) -> bool {
    id == sel || (id.starts_with(sel) && id.as_bytes().get(sel.len()) == Some(&b'.'))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_map: Option<CustomMap>,
    /// Required with `custom_map`; checked against the example otherwise.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub variant: StructureVariant,
    #[serde(default)]
    pub codomain_metric: CodomainMetric,
    #[serde(default)]
    pub sample: SampleConfig,
    #[serde(default)]
    pub tolerances: FdConfig,
    #[serde(default)]
    pub checks: CheckSelection,
}

impl RunConfig {
    pub fn for_example(id: &str) -> Self {
        Self {
            example: Some(id.to_string()),
            custom_map: None,
            n: None,
            alpha: None,
            variant: StructureVariant::default(),
            codomain_metric: CodomainMetric::default(),
            sample: SampleConfig::default(),
            tolerances: FdConfig::default(),
            checks: CheckSelection::default(),
        }
    }

    /// Parses and validates a JSON config. Syntax and schema errors carry
    /// the line and column reported by the parser.
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Sasakian dimension parameter of the domain.
    pub fn domain_n(&self) -> Result<usize> {
        match (&self.example, &self.custom_map) {
            (Some(id), None) => Ok(example_info(id)?.n),
            (None, Some(_)) => self.n.ok_or_else(|| {
                Error::InvalidConfig("field `n`: required with `custom_map`".into())
            }),
            _ => Err(Error::InvalidConfig(
                "exactly one of `example` and `custom_map` must be given".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.domain_n()?;
        if let Some(id) = &self.example {
            let info = example_info(id)?;
            if let Some(given) = self.n {
                if given != info.n {
                    return Err(Error::InvalidConfig(format!(
                        "field `n`: example {id} has n = {}, got {given}",
                        info.n
                    )));
                }
            }
            if info.needs_alpha {
                match self.alpha {
                    Some(a) if a > 0.0 && a < std::f64::consts::FRAC_PI_2 => {}
                    _ => return Err(Error::MissingAlpha(id.clone())),
                }
            }
        }
        if let Some(m) = &self.custom_map {
            if n == 0 {
                return Err(Error::InvalidConfig("field `n`: must be at least 1".into()));
            }
            let m1 = 2 * n + 1;
            if m.rows.is_empty() || m.rows.len() >= m1 {
                return Err(Error::InvalidConfig(format!(
                    "field `custom_map.rows`: need between 1 and {} rows, got {}",
                    m1 - 1,
                    m.rows.len()
                )));
            }
            for (i, row) in m.rows.iter().enumerate() {
                if row.len() != m1 {
                    return Err(Error::InvalidConfig(format!(
                        "field `custom_map.rows[{i}]`: expected {m1} entries, got {}",
                        row.len()
                    )));
                }
                if row.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "field `custom_map.rows[{i}]`: entries must be finite"
                    )));
                }
            }
            if let Some(off) = &m.offset {
                if off.len() != m.rows.len() {
                    return Err(Error::InvalidConfig(format!(
                        "field `custom_map.offset`: expected {} entries, got {}",
                        m.rows.len(),
                        off.len()
                    )));
                }
            }
        }
        if self.sample.count == 0 {
            return Err(Error::InvalidConfig(
                "field `sample.count`: must be at least 1".into(),
            ));
        }
        let h = self.sample.box_halfwidth;
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::InvalidConfig(
                "field `sample.box_halfwidth`: must be positive".into(),
            ));
        }
        if let CheckSelection::Keyword(k) = &self.checks {
            if k != "all" {
                return Err(Error::InvalidConfig(format!(
                    "field `checks`: expected \"all\" or a list of ids, got \"{k}\""
                )));
            }
        }
        self.tolerances.validate()
    }
}

/// Deterministic sample points in `R^(2n+1)`.
pub fn sample_points(n: usize, sample: &SampleConfig) -> Vec<Point> {
    let dim = 2 * n + 1;
    let h = sample.box_halfwidth;
    let mut rng = ChaCha8Rng::seed_from_u64(sample.seed);
    (0..sample.count)
        .map(|_| {
            let mut v = Vector::from_fn(dim, |_, _| rng.random_range(-h..=h));
            if sample.mode == SampleMode::SliceY0 {
                for i in n..2 * n {
                    v[i] = 0.0;
                }
            }
            Point::from_vector(v).expect("finite by construction")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_and_partial_tolerances() {
        let c = RunConfig::from_json(r#"{"example":"ex6_4","tolerances":{"derivative_tol":1e-3}}"#)
            .unwrap();
        assert_eq!(c.sample, SampleConfig::default());
        assert_eq!(c.tolerances.derivative_tol, 1e-3);
        assert_eq!(c.tolerances.algebraic_tol, 1e-9);
    }

    #[test]
    fn unknown_field_is_located() {
        let err = RunConfig::from_json("{\n  \"example\": \"ex6_4\",\n  \"bogus\": 1\n}")
            .unwrap_err()
            .to_string();
        assert!(err.contains("bogus") && err.contains("line 3"), "{err}");
    }

    #[test]
    fn example_and_custom_are_exclusive() {
        let err =
            RunConfig::from_json(r#"{"example":"ex6_4","custom_map":{"rows":[[0,0,1]]},"n":1}"#);
        assert!(err.is_err());
        assert!(RunConfig::from_json(r#"{"custom_map":{"rows":[[0,0,1]]},"n":1}"#).is_ok());
        assert!(RunConfig::from_json(r#"{"custom_map":{"rows":[[0,1]]},"n":1}"#).is_err());
    }

    #[test]
    fn selection_prefixes() {
        let s = CheckSelection::parse("square,contact.eta_xi");
        assert!(s.selects("square.vv.printed"));
        assert!(s.selects("contact.eta_xi"));
        assert!(!s.selects("contact.eta_phi"));
        assert!(!CheckSelection::parse("squa").selects("square.vv.printed"));
    }

    #[test]
    fn slice_sampling_zeroes_y() {
        let pts = sample_points(2, &SampleConfig::default());
        assert_eq!(pts.len(), 100);
        for p in &pts {
            assert_eq!(p.coords()[2], 0.0);
            assert_eq!(p.coords()[3], 0.0);
            assert!(p.coords()[0].abs() <= 0.5);
        }
        assert_eq!(pts, sample_points(2, &SampleConfig::default()));
    }
}
