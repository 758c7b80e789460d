use std::fmt;
use std::sync::Arc;

use super::{FdConfig, Matrix, Point, Vector};
use crate::error::{Error, Result};

type VecFn = Arc<dyn Fn(&Point) -> Vector + Send + Sync>;
type MatFn = Arc<dyn Fn(&Point) -> Matrix + Send + Sync>;

/// `(f(p + h v) - f(p - h v)) / 2h`.
pub fn central_diff_vector<F>(f: F, p: &Point, dir: &Vector, h: f64) -> Vector
where
    F: Fn(&Point) -> Vector,
{
    let plus = f(&p.displaced(dir, h));
    let minus = f(&p.displaced(dir, -h));
    (plus - minus) / (2.0 * h)
}

pub fn central_diff_scalar<F>(f: F, p: &Point, dir: &Vector, h: f64) -> f64
where
    F: Fn(&Point) -> f64,
{
    (f(&p.displaced(dir, h)) - f(&p.displaced(dir, -h))) / (2.0 * h)
}

fn central_diff_matrix<F>(f: F, p: &Point, dir: &Vector, h: f64) -> Matrix
where
    F: Fn(&Point) -> Matrix,
{
    let plus = f(&p.displaced(dir, h));
    let minus = f(&p.displaced(dir, -h));
    (plus - minus) / (2.0 * h)
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(dim);
    e[i] = 1.0;
    e
}

/// Tangent vector field on a chart.
#[derive(Clone)]
pub struct VectorField {
    dim: usize,
    eval: VecFn,
    jacobian: Option<MatFn>,
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VectorField")
            .field("dim", &self.dim)
            .field("analytic_jacobian", &self.jacobian.is_some())
            .finish()
    }
}

impl VectorField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&Point) -> Vector + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(f),
            jacobian: None,
        }
    }

    pub fn constant(v: Vector) -> Self {
        let dim = v.len();
        Self::new(dim, move |_| v.clone()).with_jacobian(move |_| Matrix::zeros(dim, dim))
    }

    /// Coordinate field `d/dx^i`.
    pub fn coordinate(dim: usize, i: usize) -> Self {
        Self::constant(unit(dim, i))
    }

    pub fn with_jacobian<J>(mut self, j: J) -> Self
    where
        J: Fn(&Point) -> Matrix + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(j));
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &Point) -> Vector {
        (self.eval)(p)
    }

    pub fn has_analytic_jacobian(&self) -> bool {
        self.jacobian.is_some()
    }

    /// `J[i][j] = d Y^i / d x^j`, analytic when available.
    pub fn jacobian(&self, p: &Point, cfg: &FdConfig) -> Matrix {
        match &self.jacobian {
            Some(j) => j(p),
            None => self.fd_jacobian(p, cfg),
        }
    }

    pub fn fd_jacobian(&self, p: &Point, cfg: &FdConfig) -> Matrix {
        let n = p.dim();
        let mut jac = Matrix::zeros(self.dim, n);
        for j in 0..n {
            let col = central_diff_vector(|q| self.eval(q), p, &unit(n, j), cfg.step);
            jac.set_column(j, &col);
        }
        jac
    }

    /// Directional derivative `(d_v Y)(p)`.
    pub fn derivative_along(&self, p: &Point, v: &Vector, cfg: &FdConfig) -> Vector {
        match &self.jacobian {
            Some(j) => j(p) * v,
            None => central_diff_vector(|q| self.eval(q), p, v, cfg.step),
        }
    }

    /// Max-norm gap between analytic and finite-difference Jacobians, if an
    /// analytic Jacobian is attached.
    pub fn jacobian_discrepancy(&self, p: &Point, cfg: &FdConfig) -> Option<f64> {
        let analytic = self.jacobian.as_ref()?(p);
        let numeric = self.fd_jacobian(p, cfg);
        Some((analytic - numeric).amax())
    }
}

/// One-form on a chart.
#[derive(Clone)]
pub struct CovectorField {
    dim: usize,
    eval: VecFn,
}

impl fmt::Debug for CovectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CovectorField")
            .field("dim", &self.dim)
            .finish()
    }
}

impl CovectorField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&Point) -> Vector + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn constant(w: Vector) -> Self {
        Self::new(w.len(), move |_| w.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &Point) -> Vector {
        (self.eval)(p)
    }

    pub fn apply(&self, p: &Point, v: &Vector) -> f64 {
        self.eval(p).dot(v)
    }
}

/// (1,1)-tensor field, stored as the matrix acting on tangent components.
#[derive(Clone)]
pub struct EndomorphismField {
    dim: usize,
    eval: MatFn,
}

impl fmt::Debug for EndomorphismField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EndomorphismField")
            .field("dim", &self.dim)
            .finish()
    }
}

impl EndomorphismField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&Point) -> Matrix + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn constant(m: Matrix) -> Self {
        Self::new(m.nrows(), move |_| m.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &Point) -> Matrix {
        (self.eval)(p)
    }

    pub fn apply(&self, p: &Point, v: &Vector) -> Vector {
        self.eval(p) * v
    }

    /// The field `q -> A(q) Y(q)`.
    pub fn applied_to(&self, y: &VectorField) -> VectorField {
        let a = self.clone();
        let y = y.clone();
        VectorField::new(self.dim, move |q| a.eval(q) * y.eval(q))
    }
}

/// Point-dependent symmetric positive-definite bilinear form.
#[derive(Clone)]
pub struct MetricField {
    dim: usize,
    eval: MatFn,
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("dim", &self.dim)
            .finish()
    }
}

impl MetricField {
    pub fn new<F>(dim: usize, f: F) -> Self
    where
        F: Fn(&Point) -> Matrix + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(f),
        }
    }

    pub fn euclidean(dim: usize) -> Self {
        Self::scaled_euclidean(dim, 1.0)
    }

    pub fn scaled_euclidean(dim: usize, c: f64) -> Self {
        let m = Matrix::identity(dim, dim) * c;
        Self::new(dim, move |_| m.clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, p: &Point) -> Matrix {
        (self.eval)(p)
    }

    pub fn inner(&self, p: &Point, a: &Vector, b: &Vector) -> f64 {
        a.dot(&(self.eval(p) * b))
    }

    pub(crate) fn derivative_along(&self, p: &Point, v: &Vector, h: f64) -> Matrix {
        central_diff_matrix(|q| self.eval(q), p, v, h)
    }

    /// Checks shape, symmetry (within `algebraic_tol`) and positive
    /// definiteness at `p`.
    pub fn validate_at(&self, p: &Point, cfg: &FdConfig) -> Result<()> {
        let g = self.eval(p);
        if g.nrows() != self.dim || g.ncols() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: g.nrows(),
                context: "metric matrix",
            });
        }
        let asym = (&g - g.transpose()).amax();
        if asym > cfg.algebraic_tol * g.amax().max(1.0) {
            return Err(Error::InvalidConfig(format!(
                "metric not symmetric at {:?} (asymmetry {asym:e})",
                p.to_vec()
            )));
        }
        let sym = (&g + g.transpose()) * 0.5;
        let eig = sym.symmetric_eigenvalues();
        if eig.iter().any(|&l| !(l > 0.0)) {
            return Err(Error::DegenerateMetric { point: p.to_vec() });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analytic_and_numeric_jacobians_agree() {
        let cfg = FdConfig::default();
        // Y = (x y, sin z, x^2)
        let y = VectorField::new(3, |p: &Point| {
            let c = p.coords();
            Vector::from_vec(vec![c[0] * c[1], c[2].sin(), c[0] * c[0]])
        })
        .with_jacobian(|p: &Point| {
            let c = p.coords();
            Matrix::from_row_slice(
                3,
                3,
                &[c[1], c[0], 0.0, 0.0, 0.0, c[2].cos(), 2.0 * c[0], 0.0, 0.0],
            )
        });
        let p = Point::new(vec![0.3, -0.7, 1.1]).unwrap();
        assert!(y.jacobian_discrepancy(&p, &cfg).unwrap() < cfg.derivative_tol);
    }

    #[test]
    fn metric_validation_detects_degeneracy() {
        let cfg = FdConfig::default();
        let g = MetricField::new(2, |_| Matrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));
        assert!(matches!(
            g.validate_at(&Point::origin(2), &cfg),
            Err(Error::DegenerateMetric { .. })
        ));
        assert!(MetricField::euclidean(3)
            .validate_at(&Point::origin(3), &cfg)
            .is_ok());
    }
}
