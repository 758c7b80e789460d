use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use crate::contact::{standard_sasakian, StructureVariant};
use crate::diffgeo::{FdConfig, Matrix, MetricField, Vector};
use crate::error::{Error, Result};
use crate::submersion::{SmoothMap, SubmersionSetup};

/// Metric on the target `R^m₂`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodomainMetric {
    /// `¼I`, which agrees with the domain metric on the `y = 0` slice and
    /// makes the example maps Riemannian submersions there.
    #[default]
    QuarterIdentity,
    Euclidean,
}

impl CodomainMetric {
    pub fn field(self, dim: usize) -> MetricField {
        match self {
            CodomainMetric::QuarterIdentity => MetricField::scaled_euclidean(dim, 0.25),
            CodomainMetric::Euclidean => MetricField::euclidean(dim),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExampleInfo {
    pub id: &'static str,
    /// Sasakian dimension parameter; the domain is `R^(2n+1)`.
    pub n: usize,
    pub m2: usize,
    pub needs_alpha: bool,
    pub formula: &'static str,
    /// Expected slant angle; `None` means it equals `alpha`.
    pub expected_theta: Option<f64>,
    pub dim_d1: usize,
    pub dim_d2: usize,
}

pub const EXAMPLES: &[ExampleInfo] = &[
    ExampleInfo {
        id: "ex6_3",
        n: 4,
        m2: 5,
        needs_alpha: true,
        formula: "((x1+x2)/sqrt2, (y1+y2)/sqrt2, sin(a) x3 - cos(a) x4, y4, z)",
        expected_theta: None,
        dim_d1: 2,
        dim_d2: 2,
    },
    ExampleInfo {
        id: "ex6_4",
        n: 3,
        m2: 3,
        needs_alpha: false,
        formula: "((x2-y3)/sqrt2, y2, z)",
        expected_theta: Some(FRAC_PI_4),
        dim_d1: 2,
        dim_d2: 2,
    },
    ExampleInfo {
        id: "ex6_5",
        n: 4,
        m2: 3,
        needs_alpha: true,
        formula: "(sin(a) x3 - cos(a) x4, y4, z)",
        expected_theta: None,
        dim_d1: 4,
        dim_d2: 2,
    },
    ExampleInfo {
        id: "ex6_6",
        n: 6,
        m2: 7,
        needs_alpha: false,
        formula:
            "((x1-x2)/sqrt2, (y1-y2)/sqrt2, (x3+x4)/sqrt2, (y3+y4)/sqrt2, (x5-x6)/sqrt2, y5, z)",
        expected_theta: Some(FRAC_PI_4),
        dim_d1: 4,
        dim_d2: 2,
    },
];

pub fn example_info(id: &str) -> Result<&'static ExampleInfo> {
    EXAMPLES
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownExample {
            id: id.to_string(),
            valid: EXAMPLES.iter().map(|e| e.id).collect::<Vec<_>>().join(", "),
        })
}

/// Linear map matrix of a registry example, `m₂ × (2n+1)`.
pub fn example_matrix(id: &str, alpha: Option<f64>) -> Result<Matrix> {
    let info = example_info(id)?;
    let alpha = if info.needs_alpha {
        match alpha {
            Some(a) if a > 0.0 && a < std::f64::consts::FRAC_PI_2 => a,
            _ => return Err(Error::MissingAlpha(id.to_string())),
        }
    } else {
        0.0
    };
    let n = info.n;
    let x = |i: usize| i - 1;
    let y = |i: usize| n + i - 1;
    let z = 2 * n;
    let r = FRAC_1_SQRT_2;
    let (s, c) = (alpha.sin(), alpha.cos());
    // (row, column, coefficient)
    let entries: Vec<(usize, usize, f64)> = match id {
        "ex6_3" => vec![
            (0, x(1), r),
            (0, x(2), r),
            (1, y(1), r),
            (1, y(2), r),
            (2, x(3), s),
            (2, x(4), -c),
            (3, y(4), 1.0),
            (4, z, 1.0),
        ],
        "ex6_4" => vec![(0, x(2), r), (0, y(3), -r), (1, y(2), 1.0), (2, z, 1.0)],
        "ex6_5" => vec![(0, x(3), s), (0, x(4), -c), (1, y(4), 1.0), (2, z, 1.0)],
        "ex6_6" => vec![
            (0, x(1), r),
            (0, x(2), -r),
            (1, y(1), r),
            (1, y(2), -r),
            (2, x(3), r),
            (2, x(4), r),
            (3, y(3), r),
            (3, y(4), r),
            (4, x(5), r),
            (4, x(6), -r),
            (5, y(5), 1.0),
            (6, z, 1.0),
        ],
        _ => unreachable!("validated by example_info"),
    };
    let mut a = Matrix::zeros(info.m2, 2 * n + 1);
    for (i, j, v) in entries {
        a[(i, j)] = v;
    }
    Ok(a)
}

/// Registry example with the standard Sasakian domain and the default
/// codomain metric.
pub fn registry_example(
    id: &str,
    alpha: Option<f64>,
    variant: StructureVariant,
) -> Result<SubmersionSetup> {
    registry_example_with(
        id,
        alpha,
        variant,
        CodomainMetric::default(),
        FdConfig::default(),
    )
}

pub fn registry_example_with(
    id: &str,
    alpha: Option<f64>,
    variant: StructureVariant,
    metric: CodomainMetric,
    cfg: FdConfig,
) -> Result<SubmersionSetup> {
    let info = example_info(id)?;
    let a = example_matrix(id, alpha)?;
    affine_setup(info.n, a, None, variant, metric, cfg)
}

pub fn affine_setup(
    n: usize,
    a: Matrix,
    offset: Option<Vector>,
    variant: StructureVariant,
    metric: CodomainMetric,
    cfg: FdConfig,
) -> Result<SubmersionSetup> {
    let structure = standard_sasakian(n, variant)?;
    let m2 = a.nrows();
    let map = SmoothMap::affine(a, offset)?;
    SubmersionSetup::new(map, structure, metric.field(m2), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let a = example_matrix("ex6_4", None).unwrap();
        assert_eq!(a.shape(), (3, 7));
        assert!((a[(0, 1)] - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((a[(0, 5)] + FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(a[(1, 4)], 1.0);
        assert_eq!(a[(2, 6)], 1.0);
        assert_eq!(example_matrix("ex6_6", None).unwrap().shape(), (7, 13));
        let a = example_matrix("ex6_3", Some(FRAC_PI_4)).unwrap();
        assert!((a[(2, 2)] - FRAC_PI_4.sin()).abs() < 1e-15);
        assert!((a[(2, 3)] + FRAC_PI_4.cos()).abs() < 1e-15);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            example_matrix("ex9_9", None),
            Err(Error::UnknownExample { .. })
        ));
        assert!(matches!(
            example_matrix("ex6_3", None),
            Err(Error::MissingAlpha(_))
        ));
        assert!(matches!(
            example_matrix("ex6_5", Some(2.0)),
            Err(Error::MissingAlpha(_))
        ));
    }
}
