//! Almost contact metric, contact metric and Sasakian structures.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{violation_for, CheckEntry};
use crate::diffgeo::{
    christoffel, exterior_derivative_1form, g_norm, lie_bracket, CovectorField, EndomorphismField,
    FdConfig, Matrix, MetricField, Point, Vector, VectorField,
};
use crate::error::{Error, Result};

/// Which `φ` the standard structure uses.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureVariant {
    /// `φ(ΣXᵢ∂xᵢ + Yᵢ∂yᵢ + Z∂z) = Σ(Yᵢ∂xᵢ − Xᵢ∂yᵢ)`; an almost contact
    /// structure only on the slice `y = 0`.
    AsPrinted,
    /// Adds `ΣYᵢyᵢ ∂z`, which makes `φ² = −I + η⊗ξ` hold everywhere.
    #[default]
    Corrected,
}

impl StructureVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            StructureVariant::AsPrinted => "as_printed",
            StructureVariant::Corrected => "corrected",
        }
    }
}

/// Scale between the fundamental 2-form and `dη` as computed by
/// [`exterior_derivative_1form`] (no 1/2 factor): `Φ = s·dη`.
pub const DIFFERENTIAL_SCALE: f64 = 0.5;

/// Candidate scales tried by [`fit_contact_scale`].
pub const CANDIDATE_SCALES: [f64; 3] = [1.0, 0.5, 2.0];

/// Random vectors added to the coordinate frame by the algebraic checks.
const EXTRA_FRAME_VECTORS: usize = 10;
const FRAME_SEED: u64 = 0x5a5a_1e55;

/// The quadruple `(φ, ξ, η, g)` on a chart of odd dimension.
#[derive(Debug, Clone)]
pub struct AlmostContactStructure {
    pub phi: EndomorphismField,
    pub xi: VectorField,
    pub eta: CovectorField,
    pub g: MetricField,
    dim: usize,
    variant: Option<StructureVariant>,
}

impl AlmostContactStructure {
    pub fn new(
        phi: EndomorphismField,
        xi: VectorField,
        eta: CovectorField,
        g: MetricField,
    ) -> Result<Self> {
        let dim = g.dim();
        if dim.is_multiple_of(2) {
            return Err(Error::InvalidDimension(format!(
                "almost contact structures live on odd-dimensional charts (got {dim})"
            )));
        }
        for (what, d) in [("phi", phi.dim()), ("xi", xi.dim()), ("eta", eta.dim())] {
            if d != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: d,
                    context: what_context(what),
                });
            }
        }
        Ok(Self {
            phi,
            xi,
            eta,
            g,
            dim,
            variant: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Set for structures built by [`standard_sasakian`].
    pub fn variant(&self) -> Option<StructureVariant> {
        self.variant
    }

    pub fn is_printed_variant(&self) -> bool {
        self.variant == Some(StructureVariant::AsPrinted)
    }

    /// `Φ(X, Y) = g(X, φY)`.
    pub fn fundamental_form(&self, p: &Point, x: &Vector, y: &Vector) -> f64 {
        self.g.inner(p, x, &self.phi.apply(p, y))
    }
}

fn what_context(what: &str) -> &'static str {
    match what {
        "phi" => "phi dimension",
        "xi" => "xi dimension",
        _ => "eta dimension",
    }
}

/// The standard Sasakian structure on `R^(2n+1)` with coordinates
/// `(x¹..xⁿ, y¹..yⁿ, z)`:
/// `η = ½(dz − Σyⁱdxⁱ)`, `ξ = 2∂z`, `g = η⊗η + ¼Σ(dxⁱ⊗dxⁱ + dyⁱ⊗dyⁱ)`.
pub fn standard_sasakian(n: usize, variant: StructureVariant) -> Result<AlmostContactStructure> {
    if n == 0 {
        return Err(Error::InvalidDimension(
            "standard Sasakian structure needs n >= 1".into(),
        ));
    }
    let dim = 2 * n + 1;
    let eta_at = move |p: &Point| -> Vector {
        let c = p.coords();
        let mut w = Vector::zeros(dim);
        for i in 0..n {
            w[i] = -0.5 * c[n + i];
        }
        w[2 * n] = 0.5;
        w
    };
    let eta = CovectorField::new(dim, eta_at);
    let mut xi_vec = Vector::zeros(dim);
    xi_vec[2 * n] = 2.0;
    let xi = VectorField::constant(xi_vec);
    let g = MetricField::new(dim, move |p: &Point| {
        let e = eta_at(p);
        let mut m = &e * e.transpose();
        for i in 0..2 * n {
            m[(i, i)] += 0.25;
        }
        m
    });
    let phi = EndomorphismField::new(dim, move |p: &Point| {
        let mut m = Matrix::zeros(dim, dim);
        for i in 0..n {
            m[(i, n + i)] = 1.0;
            m[(n + i, i)] = -1.0;
            if variant == StructureVariant::Corrected {
                m[(2 * n, n + i)] = p.coords()[n + i];
            }
        }
        m
    });
    let mut s = AlmostContactStructure::new(phi, xi, eta, g)?;
    s.variant = Some(variant);
    Ok(s)
}

fn unit(dim: usize, i: usize) -> Vector {
    let mut e = Vector::zeros(dim);
    e[i] = 1.0;
    e
}

/// Coordinate frame plus a few fixed pseudo-random vectors.
pub fn identity_frame(dim: usize) -> Vec<Vector> {
    let mut frame: Vec<Vector> = (0..dim).map(|i| unit(dim, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(FRAME_SEED ^ dim as u64);
    for _ in 0..EXTRA_FRAME_VECTORS {
        frame.push(Vector::from_fn(dim, |_, _| rng.random_range(-1.0..1.0)));
    }
    frame
}

fn residual_entry(
    id: &str,
    tol: f64,
    points: &[Point],
    status_on_violation: crate::check::Status,
    f: impl Fn(&Point) -> f64 + Sync,
) -> CheckEntry {
    let residuals: Vec<(Point, f64)> = points.par_iter().map(|p| (p.clone(), f(p))).collect();
    CheckEntry::from_residuals(id, tol, &residuals, status_on_violation)
}

fn with_variant_note(entry: CheckEntry, s: &AlmostContactStructure) -> CheckEntry {
    match s.variant() {
        Some(v) if !entry.passed() => entry.with_note(format!("structure variant {}", v.as_str())),
        _ => entry,
    }
}

/// The five algebraic almost-contact identities.
pub fn check_almost_contact(
    s: &AlmostContactStructure,
    points: &[Point],
    cfg: &FdConfig,
) -> Vec<CheckEntry> {
    let dim = s.dim();
    let tol = cfg.algebraic_tol;
    let bad = violation_for(s.is_printed_variant());
    let frame = identity_frame(dim);
    let entries = vec![
        residual_entry("contact.phi_squared", tol, points, bad, |p| {
            let phi = s.phi.eval(p);
            let xi = s.xi.eval(p);
            let eta = s.eta.eval(p);
            let target = -Matrix::identity(dim, dim) + &xi * eta.transpose();
            (&phi * &phi - target).amax()
        }),
        residual_entry("contact.eta_xi", tol, points, bad, |p| {
            (s.eta.apply(p, &s.xi.eval(p)) - 1.0).abs()
        }),
        residual_entry("contact.phi_xi", tol, points, bad, |p| {
            s.phi.apply(p, &s.xi.eval(p)).amax()
        }),
        residual_entry("contact.eta_phi", tol, points, bad, |p| {
            (s.eta.eval(p).transpose() * s.phi.eval(p)).amax()
        }),
        residual_entry("contact.metric_compatible", tol, points, bad, |p| {
            let g = s.g.eval(p);
            let phi = s.phi.eval(p);
            let eta = s.eta.eval(p);
            let mut worst: f64 = 0.0;
            for a in &frame {
                let pa = &phi * a;
                for b in &frame {
                    let lhs = pa.dot(&(&g * (&phi * b)));
                    let rhs = a.dot(&(&g * b)) - eta.dot(a) * eta.dot(b);
                    worst = worst.max((lhs - rhs).abs());
                }
            }
            worst
        }),
    ];
    entries
        .into_iter()
        .map(|e| with_variant_note(e, s))
        .collect()
}

/// Max over coordinate pairs and points of `|Φ(∂i, ∂j) − scale·dη(∂i, ∂j)|`.
pub fn contact_residual(s: &AlmostContactStructure, scale: f64, p: &Point, cfg: &FdConfig) -> f64 {
    let dim = s.dim();
    let mut worst: f64 = 0.0;
    for i in 0..dim {
        let xi_f = VectorField::coordinate(dim, i);
        for j in (i + 1)..dim {
            let xj_f = VectorField::coordinate(dim, j);
            let phi_form = s.fundamental_form(p, &unit(dim, i), &unit(dim, j));
            let d = exterior_derivative_1form(&s.eta, &xi_f, &xj_f, p, cfg);
            worst = worst.max((phi_form - scale * d).abs());
        }
    }
    worst
}

/// Best scale `s` in [`CANDIDATE_SCALES`] with its max residual over `points`.
pub fn fit_contact_scale(
    s: &AlmostContactStructure,
    points: &[Point],
    cfg: &FdConfig,
) -> (f64, f64) {
    let mut best = (CANDIDATE_SCALES[0], f64::INFINITY);
    for &scale in &CANDIDATE_SCALES {
        let r = points
            .par_iter()
            .map(|p| contact_residual(s, scale, p, cfg))
            .reduce(|| 0.0, f64::max);
        if r < best.1 {
            best = (scale, r);
        }
    }
    best
}

/// `Φ = s·dη` with the best-fitting scale; the scale is recorded in the note.
pub fn check_contact_metric(
    s: &AlmostContactStructure,
    points: &[Point],
    cfg: &FdConfig,
) -> Vec<CheckEntry> {
    let (scale, _) = fit_contact_scale(s, points, cfg);
    let bad = violation_for(s.is_printed_variant());
    let entry = residual_entry(
        "contact.fundamental_form",
        cfg.derivative_tol,
        points,
        bad,
        |p| contact_residual(s, scale, p, cfg),
    )
    .with_note(format!("best scale s = {scale}"));
    vec![entry]
}

/// `N(X,Y) = φ²[X,Y] + [φX,φY] − φ[φX,Y] − φ[X,φY] + 2dη(X,Y)ξ`, with `dη`
/// taken as `DIFFERENTIAL_SCALE` times the unnormalized exterior derivative.
pub fn nijenhuis_residual(
    s: &AlmostContactStructure,
    x: &VectorField,
    y: &VectorField,
    p: &Point,
    cfg: &FdConfig,
) -> Vector {
    let phi = s.phi.eval(p);
    let phi_x = s.phi.applied_to(x);
    let phi_y = s.phi.applied_to(y);
    let xy = lie_bracket(x, y, p, cfg);
    let pxpy = lie_bracket(&phi_x, &phi_y, p, cfg);
    let pxy = lie_bracket(&phi_x, y, p, cfg);
    let xpy = lie_bracket(x, &phi_y, p, cfg);
    let d = exterior_derivative_1form(&s.eta, x, y, p, cfg);
    &phi * (&phi * xy) + pxpy - &phi * (pxy + xpy) + s.xi.eval(p) * (2.0 * DIFFERENTIAL_SCALE * d)
}

pub fn check_normality(
    s: &AlmostContactStructure,
    points: &[Point],
    cfg: &FdConfig,
) -> Vec<CheckEntry> {
    let dim = s.dim();
    let bad = violation_for(s.is_printed_variant());
    let entry = residual_entry("contact.normality", cfg.derivative_tol, points, bad, |p| {
        let g = s.g.eval(p);
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in (i + 1)..dim {
                let n = nijenhuis_residual(
                    s,
                    &VectorField::coordinate(dim, i),
                    &VectorField::coordinate(dim, j),
                    p,
                    cfg,
                );
                worst = worst.max(g_norm(&g, &n));
            }
        }
        worst
    });
    vec![with_variant_note(entry, s)]
}

/// `(∇_Xφ)Y − g(X,Y)ξ + η(Y)X` and `∇_Xξ + φX` on the coordinate frame.
pub fn sasakian_residuals(
    s: &AlmostContactStructure,
    p: &Point,
    cfg: &FdConfig,
) -> Result<(f64, f64)> {
    let dim = s.dim();
    let gamma = christoffel(&s.g, p, cfg)?;
    let g = s.g.eval(p);
    let phi = s.phi.eval(p);
    let xi = s.xi.eval(p);
    let eta = s.eta.eval(p);
    let mut nabla_phi: f64 = 0.0;
    let mut nabla_xi: f64 = 0.0;
    for i in 0..dim {
        let x = unit(dim, i);
        for j in 0..dim {
            let y = unit(dim, j);
            let phi_y = s.phi.applied_to(&VectorField::coordinate(dim, j));
            let lhs = gamma.covariant(&x, &phi_y, p, cfg) - &phi * gamma.contract(&x, &y);
            let rhs = &xi * g[(i, j)] - &x * eta[j];
            nabla_phi = nabla_phi.max(g_norm(&g, &(lhs - rhs)));
        }
        let r = gamma.covariant(&x, &s.xi, p, cfg) + &phi * &x;
        nabla_xi = nabla_xi.max(g_norm(&g, &r));
    }
    Ok((nabla_phi, nabla_xi))
}

pub fn check_sasakian(
    s: &AlmostContactStructure,
    points: &[Point],
    cfg: &FdConfig,
) -> Result<Vec<CheckEntry>> {
    let per_point: Vec<(Point, f64, f64)> = points
        .par_iter()
        .map(|p| sasakian_residuals(s, p, cfg).map(|(a, b)| (p.clone(), a, b)))
        .collect::<Result<_>>()?;
    let bad = violation_for(s.is_printed_variant());
    let tol = cfg.derivative_tol;
    let phi_res: Vec<(Point, f64)> = per_point.iter().map(|(p, a, _)| (p.clone(), *a)).collect();
    let xi_res: Vec<(Point, f64)> = per_point.iter().map(|(p, _, b)| (p.clone(), *b)).collect();
    Ok(vec![
        with_variant_note(
            CheckEntry::from_residuals("sasakian.nabla_phi", tol, &phi_res, bad),
            s,
        ),
        with_variant_note(
            CheckEntry::from_residuals("sasakian.nabla_xi", tol, &xi_res, bad),
            s,
        ),
    ])
}
