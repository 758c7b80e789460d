#![allow(dead_code)]

use semislant::contact::{standard_sasakian, StructureVariant};
use semislant::diffgeo::{FdConfig, Matrix, MetricField, Point, Vector};
use semislant::submersion::{SmoothMap, SubmersionSetup};

fn v(c: &[f64]) -> Vector {
    Vector::from_column_slice(c)
}

/// Closed-form standard Sasakian metric in coordinates `(x, y, z)`:
/// `g_{xᵢxⱼ} = (δᵢⱼ + yᵢyⱼ)/4`, `g_{xᵢz} = −yᵢ/4`, `g_{yᵢyⱼ} = δᵢⱼ/4`,
/// `g_zz = 1/4`.
pub fn sasakian_metric_oracle(n: usize, p: &Point) -> Matrix {
    let dim = 2 * n + 1;
    let y = |i: usize| p.coords()[n + i];
    let z = 2 * n;
    let mut g = Matrix::zeros(dim, dim);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = y(i) * y(j) / 4.0;
        }
        g[(i, i)] += 0.25;
        g[(n + i, n + i)] = 0.25;
        g[(i, z)] = -y(i) / 4.0;
        g[(z, i)] = -y(i) / 4.0;
    }
    g[(z, z)] = 0.25;
    g
}

/// Exact `∂g/∂x^l` of the closed-form metric. Only the `y` derivatives are
/// nonzero.
pub fn sasakian_metric_derivative(n: usize, p: &Point, l: usize) -> Matrix {
    let dim = 2 * n + 1;
    let mut d = Matrix::zeros(dim, dim);
    if l < n || l == 2 * n {
        return d;
    }
    let k = l - n;
    let y = |i: usize| p.coords()[n + i];
    for i in 0..n {
        for j in 0..n {
            let di = if i == k { y(j) } else { 0.0 };
            let dj = if j == k { y(i) } else { 0.0 };
            d[(i, j)] = (di + dj) / 4.0;
        }
    }
    d[(k, 2 * n)] = -0.25;
    d[(2 * n, k)] = -0.25;
    d
}

/// `Γ^k_{ij}` from exact metric derivatives, returned as one matrix per
/// upper index.
pub fn sasakian_christoffel_oracle(n: usize, p: &Point) -> Vec<Matrix> {
    let dim = 2 * n + 1;
    let ginv = sasakian_metric_oracle(n, p)
        .try_inverse()
        .expect("metric is invertible");
    let dg: Vec<Matrix> = (0..dim)
        .map(|l| sasakian_metric_derivative(n, p, l))
        .collect();
    (0..dim)
        .map(|k| {
            Matrix::from_fn(dim, dim, |i, j| {
                (0..dim)
                    .map(|l| 0.5 * ginv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]))
                    .sum()
            })
        })
        .collect()
}

/// Nonlinear map `R³ → R²`, `(x, y, z) ↦ (x + y², z + sin x)`, into the
/// target metric `diag(1 + u², 1)`.
pub fn curved_setup() -> SubmersionSetup {
    let map = SmoothMap::new(3, 2, |p| {
        let c = p.coords();
        v(&[c[0] + c[1] * c[1], c[2] + c[0].sin()])
    })
    .unwrap()
    .with_jacobian(|p| {
        let c = p.coords();
        Matrix::from_row_slice(2, 3, &[1.0, 2.0 * c[1], 0.0, c[0].cos(), 0.0, 1.0])
    });
    let g2 = MetricField::new(2, |q| {
        let u = q.coords()[0];
        Matrix::from_row_slice(2, 2, &[1.0 + u * u, 0.0, 0.0, 1.0])
    });
    SubmersionSetup::new(
        map,
        standard_sasakian(1, StructureVariant::Corrected).unwrap(),
        g2,
        FdConfig::default(),
    )
    .unwrap()
}

/// Monolithic second fundamental form of a map for constant `X, Y`:
/// `∂ᵢ∂ⱼπᵃ XⁱYʲ − Γ₁ᵏᵢⱼ XⁱYʲ ∂ₖπᵃ + Γ₂ᵃ_bc (π*X)ᵇ(π*Y)ᶜ`.
pub fn sff_oracle(p: &Point, x: &Vector, y: &Vector) -> Vector {
    let c = p.coords();
    let hess = [
        Matrix::from_row_slice(3, 3, &[0.0, 0.0, 0.0, 0.0, 2.0, 0.0, 0.0, 0.0, 0.0]),
        Matrix::from_row_slice(3, 3, &[-c[0].sin(), 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]),
    ];
    let jac = Matrix::from_row_slice(2, 3, &[1.0, 2.0 * c[1], 0.0, c[0].cos(), 0.0, 1.0]);
    let g1 = sasakian_christoffel_oracle(1, p);
    let gamma1 = Vector::from_fn(3, |k, _| x.dot(&(&g1[k] * y)));
    let u = c[0] + c[1] * c[1];
    // g₂ = diag(1 + u², 1): Γ¹₁₁ = u/(1+u²), Γ²₁₁ = 0 and all others vanish
    let (px, py) = (&jac * x, &jac * y);
    let gamma2 = v(&[u / (1.0 + u * u) * px[0] * py[0], 0.0]);
    Vector::from_fn(2, |a, _| x.dot(&(&hess[a] * y))) - &jac * gamma1 + gamma2
}
