use super::Matrix;
use super::{
    fields::central_diff_scalar, CovectorField, FdConfig, MetricField, Point, Vector, VectorField,
};
use crate::error::{Error, Result};

/// Christoffel symbols of the second kind, `Gamma^k_{ij}`, at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    dim: usize,
    symbols: Vec<f64>,
}

impl Christoffel {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.symbols[(k * self.dim + i) * self.dim + j]
    }

    /// `Gamma(x, y)^k = Gamma^k_{ij} x^i y^j`.
    pub fn contract(&self, x: &Vector, y: &Vector) -> Vector {
        let n = self.dim;
        let mut out = Vector::zeros(n);
        for k in 0..n {
            let mut acc = 0.0;
            for i in 0..n {
                if x[i] == 0.0 {
                    continue;
                }
                for j in 0..n {
                    acc += self.get(k, i, j) * x[i] * y[j];
                }
            }
            out[k] = acc;
        }
        out
    }

    /// `(d_v Y)(p) + Gamma(v, Y(p))` with these symbols taken at `p`.
    pub fn covariant(&self, v: &Vector, y: &VectorField, p: &Point, cfg: &FdConfig) -> Vector {
        y.derivative_along(p, v, cfg) + self.contract(v, &y.eval(p))
    }
}

/// `d g / d x^l` for every coordinate, symmetrized.
pub fn metric_derivatives(g: &MetricField, p: &Point, cfg: &FdConfig) -> Vec<Matrix> {
    let n = g.dim();
    (0..n)
        .map(|l| {
            let mut e = Vector::zeros(n);
            e[l] = 1.0;
            let d = g.derivative_along(p, &e, cfg.step);
            (&d + d.transpose()) * 0.5
        })
        .collect()
}

/// Levi-Civita connection coefficients by central differences of the metric.
pub fn christoffel(g: &MetricField, p: &Point, cfg: &FdConfig) -> Result<Christoffel> {
    let n = g.dim();
    if p.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
            context: "christoffel point",
        });
    }
    let gm = g.eval(p);
    let gm = (&gm + gm.transpose()) * 0.5;
    let ginv = gm
        .cholesky()
        .ok_or_else(|| Error::DegenerateMetric { point: p.to_vec() })?
        .inverse();
    let dg = metric_derivatives(g, p, cfg);

    // first kind: Gamma_{l,ij} = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    let mut first = vec![0.0; n * n * n];
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let val = 0.5 * ((dg[i][(j, l)] + dg[j][(i, l)]) - dg[l][(i, j)]);
                first[(l * n + i) * n + j] = val;
                first[(l * n + j) * n + i] = val;
            }
        }
    }
    let mut symbols = vec![0.0; n * n * n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for l in 0..n {
                    acc += ginv[(k, l)] * first[(l * n + i) * n + j];
                }
                symbols[(k * n + i) * n + j] = acc;
                symbols[(k * n + j) * n + i] = acc;
            }
        }
    }
    Ok(Christoffel { dim: n, symbols })
}

/// `(nabla_v Y)(p)` for a tangent vector `v` at `p`.
pub fn covariant_derivative_along(
    g: &MetricField,
    v: &Vector,
    y: &VectorField,
    p: &Point,
    cfg: &FdConfig,
) -> Result<Vector> {
    let gamma = christoffel(g, p, cfg)?;
    Ok(gamma.covariant(v, y, p, cfg))
}

pub fn covariant_derivative(
    g: &MetricField,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
    cfg: &FdConfig,
) -> Result<Vector> {
    covariant_derivative_along(g, &x.eval(p), y, p, cfg)
}

/// `[X, Y] = d_X Y - d_Y X`.
pub fn lie_bracket(x: &VectorField, y: &VectorField, p: &Point, cfg: &FdConfig) -> Vector {
    let xv = x.eval(p);
    let yv = y.eval(p);
    y.derivative_along(p, &xv, cfg) - x.derivative_along(p, &yv, cfg)
}

/// `d eta(X, Y) = X(eta(Y)) - Y(eta(X)) - eta([X, Y])`, without a 1/2 factor.
pub fn exterior_derivative_1form(
    eta: &CovectorField,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
    cfg: &FdConfig,
) -> f64 {
    let eta_y = |q: &Point| eta.apply(q, &y.eval(q));
    let eta_x = |q: &Point| eta.apply(q, &x.eval(q));
    let x_eta_y = central_diff_scalar(eta_y, p, &x.eval(p), cfg.step);
    let y_eta_x = central_diff_scalar(eta_x, p, &y.eval(p), cfg.step);
    x_eta_y - y_eta_x - eta.apply(p, &lie_bracket(x, y, p, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_metrics_have_no_christoffels() {
        let cfg = FdConfig::default();
        let p = Point::new(vec![0.2, -1.0, 3.0]).unwrap();
        for g in [
            MetricField::euclidean(3),
            MetricField::scaled_euclidean(3, 2.5),
        ] {
            let gamma = christoffel(&g, &p, &cfg).unwrap();
            for k in 0..3 {
                for i in 0..3 {
                    for j in 0..3 {
                        assert_eq!(gamma.get(k, i, j), 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn degenerate_metric_is_an_error() {
        let cfg = FdConfig::default();
        let g = MetricField::new(2, |_| Matrix::zeros(2, 2));
        assert!(matches!(
            christoffel(&g, &Point::origin(2), &cfg),
            Err(Error::DegenerateMetric { .. })
        ));
    }

    #[test]
    fn product_rule_in_flat_space() {
        let cfg = FdConfig::default();
        let g = MetricField::euclidean(2);
        let x = VectorField::coordinate(2, 0);
        let y = VectorField::new(2, |p: &Point| Vector::from_vec(vec![0.0, p.coords()[0]]));
        let p = Point::new(vec![0.4, -0.3]).unwrap();
        let d = covariant_derivative(&g, &x, &y, &p, &cfg).unwrap();
        assert!((d - Vector::from_vec(vec![0.0, 1.0])).norm() < 1e-9);
        let flat = covariant_derivative(&g, &x, &VectorField::coordinate(2, 1), &p, &cfg).unwrap();
        assert_eq!(flat.norm(), 0.0);
    }

    #[test]
    fn textbook_bracket() {
        let cfg = FdConfig::default();
        let x = VectorField::coordinate(2, 0);
        let y = VectorField::new(2, |p: &Point| Vector::from_vec(vec![0.0, p.coords()[0]]));
        let p = Point::new(vec![1.5, 2.0]).unwrap();
        let b = lie_bracket(&x, &y, &p, &cfg);
        assert!((b - Vector::from_vec(vec![0.0, 1.0])).norm() < 1e-9);
        let c = lie_bracket(&x, &VectorField::coordinate(2, 1), &p, &cfg);
        assert_eq!(c.norm(), 0.0);
    }

    #[test]
    fn closed_form_has_zero_differential() {
        let cfg = FdConfig::default();
        let eta = CovectorField::constant(Vector::from_vec(vec![0.0, 0.0, 1.0]));
        let x = VectorField::constant(Vector::from_vec(vec![1.0, 2.0, 0.5]));
        let y = VectorField::constant(Vector::from_vec(vec![-1.0, 0.0, 3.0]));
        let p = Point::new(vec![0.1, 0.2, 0.3]).unwrap();
        assert_eq!(exterior_derivative_1form(&eta, &x, &y, &p, &cfg), 0.0);
    }

    #[test]
    fn contact_form_differential() {
        // eta = 1/2 (dz - y dx) on R^3, X = d/dx, Y = d/dy -> +1/2
        let cfg = FdConfig::default();
        let eta = CovectorField::new(3, |p: &Point| {
            Vector::from_vec(vec![-0.5 * p.coords()[1], 0.0, 0.5])
        });
        let x = VectorField::coordinate(3, 0);
        let y = VectorField::coordinate(3, 1);
        let p = Point::new(vec![0.3, 0.7, -0.2]).unwrap();
        let d = exterior_derivative_1form(&eta, &x, &y, &p, &cfg);
        assert!((d - 0.5).abs() < 1e-9, "{d}");
        let d_rev = exterior_derivative_1form(&eta, &y, &x, &p, &cfg);
        assert!((d + d_rev).abs() < 1e-12);
    }
}
