//! Invariant/slant decomposition of the vertical space and everything built
//! on it: slant angle, structure identities, characterization conditions,
//! umbilical fibres and geodesic maps.

mod characterization;
mod geodesic;
mod identities;
mod local;

pub use characterization::{
    check_integrability_direct, condition_ids, evaluate_characterization, Distribution,
};
pub use geodesic::{check_totally_geodesic_map, check_totally_umbilical, mean_curvature};
pub use identities::check_structure_identities;

use nalgebra::SymmetricEigen;
use serde::{Deserialize, Serialize};

use crate::diffgeo::{
    g_inner, g_norm, null_space, orthonormalize, projector_onto, span_residual, FdConfig, Matrix,
    Point, PointCache, Vector, VectorField,
};
use crate::error::{Error, Result};
use crate::submersion::{horizontal_space, LocalGeometry, PointSplit, SubmersionSetup};

/// `φU = φ̂U + ωU` for vertical `U`.
#[derive(Debug, Clone, PartialEq)]
pub struct VerticalDecomp {
    pub phi_hat: Vector,
    pub omega: Vector,
}

/// `φX = ℬX + 𝒞X` for horizontal `X`.
#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalDecomp {
    pub b: Vector,
    pub c: Vector,
}

fn precondition_tol(cfg: &FdConfig, scale: f64) -> f64 {
    cfg.algebraic_tol.sqrt() * scale.max(1.0)
}

pub fn decompose_vertical(
    setup: &SubmersionSetup,
    split: &PointSplit,
    u: &Vector,
) -> Result<VerticalDecomp> {
    let off = g_norm(&split.g, &split.horizontal(u));
    if off > precondition_tol(setup.cfg(), g_norm(&split.g, u)) {
        return Err(Error::NotVertical { residual: off });
    }
    let phi_u = setup.structure.phi.apply(&split.point, u);
    Ok(VerticalDecomp {
        phi_hat: split.vertical(&phi_u),
        omega: split.horizontal(&phi_u),
    })
}

pub fn decompose_horizontal(
    setup: &SubmersionSetup,
    split: &PointSplit,
    x: &Vector,
) -> Result<HorizontalDecomp> {
    let off = g_norm(&split.g, &split.vertical(x));
    if off > precondition_tol(setup.cfg(), g_norm(&split.g, x)) {
        return Err(Error::NotHorizontal { residual: off });
    }
    let phi_x = setup.structure.phi.apply(&split.point, x);
    Ok(HorizontalDecomp {
        b: split.vertical(&phi_x),
        c: split.horizontal(&phi_x),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubmersionClass {
    Invariant,
    Slant,
    SemiSlant,
    AntiInvariant,
    NotSemiSlant,
}

impl SubmersionClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SubmersionClass::Invariant => "invariant",
            SubmersionClass::Slant => "slant",
            SubmersionClass::SemiSlant => "semi-slant",
            SubmersionClass::AntiInvariant => "anti-invariant",
            SubmersionClass::NotSemiSlant => "not-semi-slant",
        }
    }
}

/// Per-point result of the spectral analysis.
#[derive(Debug, Clone)]
pub struct SemiSlantData {
    pub point: Point,
    pub d1_basis: Vec<Vector>,
    pub d2_basis: Vec<Vector>,
    /// `g₁`-orthonormal basis of `ωD₂`.
    pub omega_d2_basis: Vec<Vector>,
    pub mu_basis: Vec<Vector>,
    pub theta: Option<f64>,
    /// Largest deviation of a single D₂ eigenvalue's angle from `theta`.
    pub theta_spread: f64,
    /// Spectrum of `−φ̂²` on the vertical space, descending.
    pub eigenvalues: Vec<f64>,
    pub p_proj: Matrix,
    pub q_proj: Matrix,
    pub class: SubmersionClass,
    pub anomaly: Option<String>,
}

impl SemiSlantData {
    pub fn dim_d1(&self) -> usize {
        self.d1_basis.len()
    }

    pub fn dim_d2(&self) -> usize {
        self.d2_basis.len()
    }
}

/// Matrix of `φ̂` in a `g`-orthonormal vertical basis: `A[i][j] = g(vᵢ, φvⱼ)`.
fn phi_hat_matrix(basis: &[Vector], g: &Matrix, phi: &Matrix) -> Matrix {
    let k = basis.len();
    Matrix::from_fn(k, k, |i, j| g_inner(g, &basis[i], &(phi * &basis[j])))
}

/// Eigenpairs of `−φ̂² = AᵀA`, sorted by descending eigenvalue.
fn slant_spectrum(basis: &[Vector], g: &Matrix, phi: &Matrix) -> Vec<(f64, Vector)> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let a = phi_hat_matrix(basis, g, phi);
    let s = a.transpose() * &a;
    let s = (&s + s.transpose()) * 0.5;
    let eig = SymmetricEigen::new(s);
    let mut pairs: Vec<(f64, Vector)> = (0..k)
        .map(|i| {
            let coeffs = eig.eigenvectors.column(i);
            let v = basis
                .iter()
                .zip(coeffs.iter())
                .fold(Vector::zeros(g.nrows()), |acc, (b, c)| acc + b * *c);
            (eig.eigenvalues[i], v)
        })
        .collect();
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0));
    pairs
}

fn vertical_onb(setup: &SubmersionSetup, q: &Point) -> (Vec<Vector>, Matrix) {
    let cfg = setup.cfg();
    let jac = setup.map.jacobian(q, cfg);
    let (null, _) = null_space(&jac, cfg.rank_threshold);
    let g = setup.g1(q);
    (orthonormalize(&null, &g, cfg), g)
}

/// Spectral detection of `D₁ ⊕ D₂` at `p`.
pub fn detect_semi_slant(setup: &SubmersionSetup, p: &Point) -> Result<SemiSlantData> {
    let split = horizontal_space(setup, p)?;
    let cfg = setup.cfg();
    let phi = setup.structure.phi.eval(p);
    let spectrum = slant_spectrum(&split.vertical_basis, &split.g, &phi);
    let tol = cfg.eigen_cluster_tol;

    let (d1, rest): (Vec<_>, Vec<_>) = spectrum.iter().cloned().partition(|(l, _)| *l >= 1.0 - tol);
    let mut anomaly = None;
    let mut single_cluster = true;
    if let (Some(first), Some(last)) = (rest.first(), rest.last()) {
        // descending, so a single cluster has its extremes within tolerance
        if first.0 - last.0 > tol {
            single_cluster = false;
            anomaly = Some(format!(
                "slant part of the spectrum has more than one cluster: {:?}",
                rest.iter().map(|(l, _)| *l).collect::<Vec<_>>()
            ));
        }
        if last.0.abs() <= tol {
            for (_, v) in rest.iter().filter(|(l, _)| l.abs() <= tol) {
                let phi_v = &phi * v;
                if g_norm(&split.g, &phi_v) <= tol.sqrt() {
                    anomaly = Some("vertical direction annihilated by phi".into());
                }
            }
        }
    }
    let d1_basis: Vec<Vector> = d1.iter().map(|(_, v)| v.clone()).collect();
    let d2_basis: Vec<Vector> = rest.iter().map(|(_, v)| v.clone()).collect();
    let eigenvalues: Vec<f64> = spectrum.iter().map(|(l, _)| *l).collect();

    let (theta, theta_spread) = if rest.is_empty() {
        (None, 0.0)
    } else {
        let mean = rest.iter().map(|(l, _)| *l).sum::<f64>() / rest.len() as f64;
        let theta = mean.clamp(0.0, 1.0).sqrt().acos();
        let spread = rest
            .iter()
            .map(|(l, _)| (l.clamp(0.0, 1.0).sqrt().acos() - theta).abs())
            .fold(0.0, f64::max);
        (Some(theta), spread)
    };

    let class = if anomaly.is_some() || !single_cluster {
        SubmersionClass::NotSemiSlant
    } else if d2_basis.is_empty() {
        SubmersionClass::Invariant
    } else if d1_basis.is_empty() {
        match theta {
            Some(t) if (t - std::f64::consts::FRAC_PI_2).abs() <= tol.sqrt() => {
                SubmersionClass::AntiInvariant
            }
            _ => SubmersionClass::Slant,
        }
    } else {
        SubmersionClass::SemiSlant
    };

    let (omega_d2_basis, mu_basis) = horizontal_decomposition(&split, &phi, &d2_basis, cfg);
    Ok(SemiSlantData {
        point: p.clone(),
        p_proj: projector_onto(&d1_basis, &split.g),
        q_proj: projector_onto(&d2_basis, &split.g),
        d1_basis,
        d2_basis,
        omega_d2_basis,
        mu_basis,
        theta,
        theta_spread,
        eigenvalues,
        class,
        anomaly,
    })
}

/// `(ker π*)⊥ = ωD₂ ⊕ μ`.
fn horizontal_decomposition(
    split: &PointSplit,
    phi: &Matrix,
    d2: &[Vector],
    cfg: &FdConfig,
) -> (Vec<Vector>, Vec<Vector>) {
    let omega: Vec<Vector> = d2.iter().map(|w| split.horizontal(&(phi * w))).collect();
    let omega_basis = orthonormalize(&omega, &split.g, cfg);
    let pw = projector_onto(&omega_basis, &split.g);
    let rest: Vec<Vector> = split.horizontal_basis.iter().map(|h| h - &pw * h).collect();
    (omega_basis, orthonormalize(&rest, &split.g, cfg))
}

/// Uses a caller-supplied `D₁` instead of the spectral one. `D₂` is its
/// vertical complement; the returned data records invariance and angle
/// constancy failures as an anomaly.
pub fn detect_with_declared_d1(
    setup: &SubmersionSetup,
    p: &Point,
    declared_d1: &[Vector],
) -> Result<SemiSlantData> {
    let cfg = setup.cfg();
    let split = horizontal_space(setup, p)?;
    let phi = setup.structure.phi.eval(p);
    let mut worst: f64 = 0.0;
    for v in declared_d1 {
        worst = worst.max(g_norm(&split.g, &split.horizontal(v)));
    }
    if worst > precondition_tol(cfg, 1.0) {
        return Err(Error::NotVertical { residual: worst });
    }
    let d1_basis = orthonormalize(declared_d1, &split.g, cfg);
    let p_proj = projector_onto(&d1_basis, &split.g);
    let complement: Vec<Vector> = split
        .vertical_basis
        .iter()
        .map(|v| v - &p_proj * v)
        .collect();
    let d2_onb = orthonormalize(&complement, &split.g, cfg);
    let invariance = d1_basis
        .iter()
        .map(|u| span_residual(&d1_basis, &split.g, &split.vertical(&(&phi * u))))
        .fold(0.0, f64::max);
    let d2_spec = slant_spectrum(&d2_onb, &split.g, &phi);
    let d2_basis: Vec<Vector> = d2_spec.iter().map(|(_, v)| v.clone()).collect();
    let lambdas: Vec<f64> = d2_spec.iter().map(|(l, _)| *l).collect();
    let mut anomaly = None;
    if invariance > cfg.algebraic_tol {
        anomaly = Some(format!(
            "declared D1 is not phi-invariant (residual {invariance:e})"
        ));
    }
    let (theta, spread) = if lambdas.is_empty() {
        (None, 0.0)
    } else {
        let mean = lambdas.iter().sum::<f64>() / lambdas.len() as f64;
        let t = mean.clamp(0.0, 1.0).sqrt().acos();
        let s = lambdas
            .iter()
            .map(|l| (l.clamp(0.0, 1.0).sqrt().acos() - t).abs())
            .fold(0.0, f64::max);
        (Some(t), s)
    };
    if spread > cfg.eigen_cluster_tol {
        anomaly = Some(format!(
            "angle on declared D2 is not constant (spread {spread:e})"
        ));
    }
    let mut eigenvalues = vec![1.0; d1_basis.len()];
    eigenvalues.extend(lambdas);
    let class = match (anomaly.is_some(), d1_basis.is_empty(), d2_basis.is_empty()) {
        (true, _, _) => SubmersionClass::NotSemiSlant,
        (_, _, true) => SubmersionClass::Invariant,
        (_, true, _) => SubmersionClass::Slant,
        _ => SubmersionClass::SemiSlant,
    };
    let (omega_d2_basis, mu_basis) = horizontal_decomposition(&split, &phi, &d2_basis, cfg);
    Ok(SemiSlantData {
        point: p.clone(),
        p_proj,
        q_proj: projector_onto(&d2_basis, &split.g),
        d1_basis,
        d2_basis,
        omega_d2_basis,
        mu_basis,
        theta,
        theta_spread: spread,
        eigenvalues,
        class,
        anomaly,
    })
}

/// Angle between `φU` and `D₂` for `U ∈ D₂`.
pub fn slant_angle(setup: &SubmersionSetup, data: &SemiSlantData, u: &Vector) -> Result<f64> {
    let p = &data.point;
    let g = setup.g1(p);
    let norm_u = g_norm(&g, u);
    if norm_u == 0.0 {
        return Err(Error::UndefinedAngle("zero vector".into()));
    }
    let off = g_norm(&g, &(u - &data.q_proj * u));
    if off > precondition_tol(setup.cfg(), norm_u) {
        return Err(Error::NotInSlantDistribution { residual: off });
    }
    let phi_u = setup.structure.phi.apply(p, u);
    let norm_phi = g_norm(&g, &phi_u);
    if norm_phi <= setup.cfg().algebraic_tol * norm_u {
        return Err(Error::UndefinedAngle("phi U vanishes".into()));
    }
    let along = g_norm(&g, &(&data.q_proj * &phi_u));
    Ok((along / norm_phi).clamp(0.0, 1.0).acos())
}

/// Smooth projector fields of the decomposition, recomputed at every
/// evaluation point with the dimensions fixed at the base point.
#[derive(Debug, Clone)]
pub struct SlantFields {
    setup: SubmersionSetup,
    k1: usize,
    k2: usize,
    cache: PointCache<(Matrix, Matrix)>,
}

impl SlantFields {
    pub fn new(setup: &SubmersionSetup, data: &SemiSlantData) -> Self {
        Self {
            setup: setup.clone(),
            k1: data.dim_d1(),
            k2: data.dim_d2(),
            cache: PointCache::new(),
        }
    }

    /// `(P_D₁, P_D₂)` at `q`.
    pub fn projectors(&self, q: &Point) -> (Matrix, Matrix) {
        self.cache
            .get_or_insert_with(q, || self.compute_projectors(q))
    }

    fn compute_projectors(&self, q: &Point) -> (Matrix, Matrix) {
        let (basis, g) = vertical_onb(&self.setup, q);
        let phi = self.setup.structure.phi.eval(q);
        let spectrum = slant_spectrum(&basis, &g, &phi);
        let d1: Vec<Vector> = spectrum
            .iter()
            .take(self.k1)
            .map(|(_, v)| v.clone())
            .collect();
        let p1 = projector_onto(&d1, &g);
        let pv = projector_onto(&basis, &g);
        let p2 = pv - &p1;
        (p1, p2)
    }

    /// Projector onto `μ` at `q`.
    pub fn mu_projector(&self, q: &Point) -> Matrix {
        let (_, p2) = self.projectors(q);
        let g = self.setup.g1(q);
        let phi = self.setup.structure.phi.eval(q);
        let ph = self.setup.horizontal_projector(q);
        let omega = &ph * &phi * &p2;
        let cols: Vec<Vector> = (0..omega.ncols())
            .map(|j| omega.column(j).into_owned())
            .collect();
        let mut onb = orthonormalize(&cols, &g, self.setup.cfg());
        onb.truncate(self.k2);
        ph - projector_onto(&onb, &g)
    }

    pub fn d1_field(&self, u: Vector) -> VectorField {
        let s = self.clone();
        VectorField::new(self.setup.m1(), move |q| s.projectors(q).0 * &u)
    }

    pub fn d2_field(&self, u: Vector) -> VectorField {
        let s = self.clone();
        VectorField::new(self.setup.m1(), move |q| s.projectors(q).1 * &u)
    }
}

/// Pointwise operators `φ̂, ω, ℬ, 𝒞` and their field versions.
pub(crate) struct Ops<'l, 'a> {
    pub l: &'l LocalGeometry<'a>,
}

impl<'l, 'a> Ops<'l, 'a> {
    pub fn phi_hat(&self, v: &Vector) -> Vector {
        self.l.v(&self.l.phi(&self.l.v(v)))
    }
    pub fn omega(&self, v: &Vector) -> Vector {
        self.l.h(&self.l.phi(&self.l.v(v)))
    }
    pub fn b(&self, x: &Vector) -> Vector {
        self.l.v(&self.l.phi(&self.l.h(x)))
    }
    pub fn c(&self, x: &Vector) -> Vector {
        self.l.h(&self.l.phi(&self.l.h(x)))
    }

    pub fn phi_f(&self, f: &VectorField) -> VectorField {
        self.l.setup.phi_field(f)
    }
    /// `φ̂` or `ℬ` of a field: vertical part of `φ` applied to it.
    pub fn vphi_f(&self, f: &VectorField) -> VectorField {
        self.l.setup.vertical_part(&self.phi_f(f))
    }
    /// `ω` or `𝒞` of a field.
    pub fn hphi_f(&self, f: &VectorField) -> VectorField {
        self.l.setup.horizontal_part(&self.phi_f(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::StructureVariant;
    use crate::report::registry_example;

    #[test]
    fn ex6_3_spectrum_at_origin() {
        let alpha = std::f64::consts::FRAC_PI_3;
        let setup = registry_example("ex6_3", Some(alpha), StructureVariant::Corrected).unwrap();
        let data = detect_semi_slant(&setup, &Point::origin(9)).unwrap();
        assert_eq!(data.class, SubmersionClass::SemiSlant);
        assert_eq!(data.dim_d1(), 2);
        assert_eq!(data.dim_d2(), 2);
        let expected = [1.0, 1.0, 0.25, 0.25];
        for (l, e) in data.eigenvalues.iter().zip(expected) {
            assert!((l - e).abs() < 1e-8, "{l} vs {e}");
        }
        assert!((data.theta.unwrap() - alpha).abs() < 1e-6);
    }
}
