//! Coordinate-chart differential geometry.
//!
//! Everything here works on a single chart of `R^m` with point-dependent
//! tensors given as closures over coordinates. Derivatives are second-order
//! central differences unless a field carries an analytic Jacobian.

mod cache;
mod connection;
mod fields;
mod linalg;

pub use cache::PointCache;
pub use connection::{
    christoffel, covariant_derivative, covariant_derivative_along, exterior_derivative_1form,
    lie_bracket, metric_derivatives, Christoffel,
};
pub use fields::{
    central_diff_scalar, central_diff_vector, CovectorField, EndomorphismField, MetricField,
    VectorField,
};
pub use linalg::{g_inner, g_norm, null_space, orthonormalize, projector_onto, span_residual};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vector = DVector<f64>;
pub type Matrix = DMatrix<f64>;

/// A point of a coordinate chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vector,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        Self::from_vector(Vector::from_vec(coords))
    }

    pub fn from_vector(coords: Vector) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidPoint("point has no coordinates".into()));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidPoint(format!(
                "coordinate {i} is not finite ({})",
                coords[i]
            )));
        }
        Ok(Self { coords })
    }

    pub fn origin(dim: usize) -> Self {
        Self {
            coords: Vector::zeros(dim),
        }
    }

    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `self + t * dir`, used for finite-difference stencils.
    pub fn displaced(&self, dir: &Vector, t: f64) -> Point {
        Point {
            coords: &self.coords + dir * t,
        }
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.coords.iter().copied().collect()
    }
}

/// Step size and tolerances shared by every numerical check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FdConfig {
    /// Central-difference step.
    pub step: f64,
    /// Tolerance for identities that involve no numerical derivative.
    pub algebraic_tol: f64,
    /// Tolerance for identities involving one or two numerical derivatives.
    pub derivative_tol: f64,
    /// Relative singular-value cutoff for rank decisions.
    pub rank_threshold: f64,
    /// Width of an eigenvalue cluster in the slant-operator spectrum.
    pub eigen_cluster_tol: f64,
}

impl Default for FdConfig {
    fn default() -> Self {
        Self {
            step: 1e-5,
            algebraic_tol: 1e-9,
            derivative_tol: 1e-4,
            rank_threshold: 1e-8,
            eigen_cluster_tol: 1e-6,
        }
    }
}

impl FdConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("step", self.step),
            ("algebraic_tol", self.algebraic_tol),
            ("derivative_tol", self.derivative_tol),
            ("rank_threshold", self.rank_threshold),
            ("eigen_cluster_tol", self.eigen_cluster_tol),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "tolerances.{name} must be a positive finite number (got {value})"
                )));
            }
        }
        if self.rank_threshold >= 1.0 {
            return Err(Error::InvalidConfig(format!(
                "tolerances.rank_threshold must lie in (0,1) (got {})",
                self.rank_threshold
            )));
        }
        Ok(())
    }
}
