mod common;

use common::{sasakian_christoffel_oracle, sasakian_metric_oracle};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semislant::contact::{standard_sasakian, StructureVariant};
use semislant::diffgeo::{
    christoffel, covariant_derivative, exterior_derivative_1form, lie_bracket, orthonormalize,
    CovectorField, FdConfig, Matrix, MetricField, Point, Vector, VectorField,
};
use semislant::Error;

fn pt(c: &[f64]) -> Point {
    Point::new(c.to_vec()).unwrap()
}

fn v(c: &[f64]) -> Vector {
    Vector::from_column_slice(c)
}

#[test]
fn christoffels_match_closed_form_derivatives() {
    let cfg = FdConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [1usize, 2] {
        let s = standard_sasakian(n, StructureVariant::Corrected).unwrap();
        let dim = 2 * n + 1;
        for _ in 0..20 {
            let p = Point::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap();
            let g = s.g.eval(&p);
            assert!((g - sasakian_metric_oracle(n, &p)).amax() < 1e-15);
            let engine = christoffel(&s.g, &p, &cfg).unwrap();
            let oracle = sasakian_christoffel_oracle(n, &p);
            for k in 0..dim {
                for i in 0..dim {
                    for j in 0..dim {
                        let d = (engine.get(k, i, j) - oracle[k][(i, j)]).abs();
                        assert!(d < 1e-8, "n={n} Γ^{k}_{i}{j} off by {d:e}");
                    }
                }
            }
        }
    }
}

#[test]
fn sasakian_christoffels_at_origin() {
    let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
    let gamma = christoffel(&s.g, &Point::origin(3), &FdConfig::default()).unwrap();
    let (x, y, z) = (0, 1, 2);
    let expected = [((x, y, z), -0.5), ((y, x, z), 0.5), ((z, x, y), -0.5)];
    for k in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                let want = expected
                    .iter()
                    .find(|((a, b, c), _)| *a == k && ((*b, *c) == (i, j) || (*c, *b) == (i, j)))
                    .map(|(_, w)| *w)
                    .unwrap_or(0.0);
                assert!((gamma.get(k, i, j) - want).abs() < 1e-9, "Γ^{k}_{i}{j}");
            }
        }
    }
}

#[test]
fn degenerate_metric_is_reported() {
    let g = MetricField::new(2, |_| Matrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 0.0]));
    assert!(matches!(
        christoffel(&g, &Point::origin(2), &FdConfig::default()),
        Err(Error::DegenerateMetric { .. })
    ));
}

#[test]
fn covariant_derivative_examples() {
    let cfg = FdConfig::default();
    let e = MetricField::euclidean(3);
    let p = pt(&[0.3, -0.7, 1.1]);
    let dx = VectorField::coordinate(3, 0);
    let dy = VectorField::coordinate(3, 1);
    assert!(covariant_derivative(&e, &dx, &dy, &p, &cfg).unwrap().amax() < 1e-12);

    let x_dy = VectorField::new(3, |q| v(&[0.0, q.coords()[0], 0.0]));
    let r = covariant_derivative(&e, &dx, &x_dy, &p, &cfg).unwrap();
    assert!((r - v(&[0.0, 1.0, 0.0])).amax() < 1e-8);

    // ∇_{∂x} ξ = −φ∂x = ∂y for the standard structure
    let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
    let r = covariant_derivative(&s.g, &dx, &s.xi, &Point::origin(3), &cfg).unwrap();
    assert!((&r - v(&[0.0, 1.0, 0.0])).amax() < 1e-8, "{r}");
}

#[test]
fn bracket_examples() {
    let cfg = FdConfig::default();
    let p = pt(&[0.4, 0.1, -0.2]);
    let dx = VectorField::coordinate(3, 0);
    let dy = VectorField::coordinate(3, 1);
    assert!(lie_bracket(&dx, &dy, &p, &cfg).amax() < 1e-12);
    let x_dy = VectorField::new(3, |q| v(&[0.0, q.coords()[0], 0.0]));
    assert!((lie_bracket(&dx, &x_dy, &p, &cfg) - v(&[0.0, 1.0, 0.0])).amax() < 1e-8);
}

#[test]
fn exterior_derivative_examples() {
    let cfg = FdConfig::default();
    let dz = CovectorField::constant(v(&[0.0, 0.0, 1.0]));
    let a = VectorField::constant(v(&[1.0, 2.0, 0.5]));
    let b = VectorField::constant(v(&[-0.3, 0.0, 4.0]));
    let p = pt(&[0.2, 0.2, 0.2]);
    assert!(exterior_derivative_1form(&dz, &a, &b, &p, &cfg).abs() < 1e-12);

    let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
    let dx = VectorField::coordinate(3, 0);
    let dy = VectorField::coordinate(3, 1);
    let d = exterior_derivative_1form(&s.eta, &dx, &dy, &Point::origin(3), &cfg);
    assert!((d - 0.5).abs() < 1e-9, "{d}");
    let r = exterior_derivative_1form(&s.eta, &dy, &dx, &Point::origin(3), &cfg);
    assert!((d + r).abs() < 1e-12);
}

#[test]
fn orthonormalize_examples() {
    let cfg = FdConfig::default();
    let out = orthonormalize(
        &[v(&[1.0, 0.0]), v(&[1.0, 1.0])],
        &Matrix::identity(2, 2),
        &cfg,
    );
    assert_eq!(out.len(), 2);
    assert!((&out[0] - v(&[1.0, 0.0])).amax() < 1e-12);
    assert!((&out[1] - v(&[0.0, 1.0])).amax() < 1e-12);

    let q = Matrix::identity(3, 3) * 0.25;
    let out = orthonormalize(&[v(&[1.0, 0.0, 0.0])], &q, &cfg);
    assert!((&out[0] - v(&[2.0, 0.0, 0.0])).amax() < 1e-12);

    let w = v(&[1.0, -2.0, 0.5]);
    assert_eq!(orthonormalize(&[w.clone(), w * 2.0], &q, &cfg).len(), 1);
    assert!(orthonormalize(&[], &q, &cfg).is_empty());
}

#[test]
fn analytic_jacobian_agrees_with_differences() {
    let cfg = FdConfig::default();
    let f = VectorField::new(2, |q| {
        let c = q.coords();
        v(&[c[0] * c[1], c[0].sin()])
    })
    .with_jacobian(|q| {
        let c = q.coords();
        Matrix::from_row_slice(2, 2, &[c[1], c[0], c[0].cos(), 0.0])
    });
    assert!(f.jacobian_discrepancy(&pt(&[0.7, -1.3]), &cfg).unwrap() < 1e-8);
}

/// Polynomial field of degree two with the given coefficients; 3 + 9 + 27
/// coefficients per component in dimension 3.
fn quadratic_field(c: Vec<f64>) -> VectorField {
    VectorField::new(3, move |q| {
        let x = q.coords();
        Vector::from_fn(3, |k, _| {
            let base = k * 13;
            let mut s = c[base];
            for i in 0..3 {
                s += c[base + 1 + i] * x[i];
            }
            for i in 0..3 {
                for j in i..3 {
                    s += c[base + 4 + i + j] * x[i] * x[j];
                }
            }
            s
        })
    })
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 39)
}

fn point3() -> impl Strategy<Value = Point> {
    prop::collection::vec(-1.0f64..1.0, 3).prop_map(|c| Point::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn bracket_is_antisymmetric(a in coeffs(), b in coeffs(), p in point3()) {
        let cfg = FdConfig::default();
        let (x, y) = (quadratic_field(a), quadratic_field(b));
        let s = lie_bracket(&x, &y, &p, &cfg) + lie_bracket(&y, &x, &p, &cfg);
        prop_assert!(s.amax() < 1e-12);
    }

    #[test]
    fn connection_is_metric_compatible(a in coeffs(), b in coeffs(), c in coeffs(), p in point3()) {
        let cfg = FdConfig::default();
        let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
        let (x, y, z) = (quadratic_field(a), quadratic_field(b), quadratic_field(c));
        let g = s.g.clone();
        let (yc, zc) = (y.clone(), z.clone());
        let gyz = move |q: &Point| g.inner(q, &yc.eval(q), &zc.eval(q));
        let lhs = semislant::diffgeo::central_diff_scalar(gyz, &p, &x.eval(&p), cfg.step);
        let nxy = covariant_derivative(&s.g, &x, &y, &p, &cfg).unwrap();
        let nxz = covariant_derivative(&s.g, &x, &z, &p, &cfg).unwrap();
        let rhs = s.g.inner(&p, &nxy, &z.eval(&p)) + s.g.inner(&p, &y.eval(&p), &nxz);
        prop_assert!((lhs - rhs).abs() < 1e-4, "{}", (lhs - rhs).abs());
    }

    #[test]
    fn connection_is_torsion_free(a in coeffs(), b in coeffs(), p in point3()) {
        let cfg = FdConfig::default();
        let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
        let (x, y) = (quadratic_field(a), quadratic_field(b));
        let t = covariant_derivative(&s.g, &x, &y, &p, &cfg).unwrap()
            - covariant_derivative(&s.g, &y, &x, &p, &cfg).unwrap()
            - lie_bracket(&x, &y, &p, &cfg);
        prop_assert!(t.amax() < 1e-4);
    }

    #[test]
    fn christoffels_are_symmetric(p in point3()) {
        let s = standard_sasakian(1, StructureVariant::Corrected).unwrap();
        let gamma = christoffel(&s.g, &p, &FdConfig::default()).unwrap();
        for k in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    prop_assert_eq!(gamma.get(k, i, j), gamma.get(k, j, i));
                }
            }
        }
    }
}
