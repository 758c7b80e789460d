//! Smooth maps between charts, their vertical/horizontal splittings and the
//! tensors of a Riemannian submersion.

mod checks;
mod local;

pub use checks::{
    check_fundamental_equations, check_oneill_properties, check_riemannian_submersion,
    check_sff_symmetry, check_split, check_xi_horizontal, riemannian_first_order_residual,
    riemannian_residual, xi_vertical_component,
};
pub use local::{par_local, LocalGeometry};

use std::fmt;
use std::sync::Arc;

use crate::contact::AlmostContactStructure;
use crate::diffgeo::{
    central_diff_vector, g_inner, null_space, orthonormalize, projector_onto, FdConfig, Matrix,
    MetricField, Point, PointCache, Vector, VectorField,
};
use crate::error::{Error, Result};

type MapFn = Arc<dyn Fn(&Point) -> Vector + Send + Sync>;
type JacFn = Arc<dyn Fn(&Point) -> Matrix + Send + Sync>;

/// `π: R^m₁ → R^m₂` with `m₁ > m₂`.
#[derive(Clone)]
pub struct SmoothMap {
    m1: usize,
    m2: usize,
    eval: MapFn,
    jacobian: Option<JacFn>,
    linear: Option<(Matrix, Vector)>,
}

impl fmt::Debug for SmoothMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothMap")
            .field("m1", &self.m1)
            .field("m2", &self.m2)
            .field("affine", &self.linear.is_some())
            .finish()
    }
}

impl SmoothMap {
    pub fn new<F>(m1: usize, m2: usize, f: F) -> Result<Self>
    where
        F: Fn(&Point) -> Vector + Send + Sync + 'static,
    {
        if m2 == 0 || m1 <= m2 {
            return Err(Error::InvalidDimension(format!(
                "a submersion needs m1 > m2 >= 1 (got m1 = {m1}, m2 = {m2})"
            )));
        }
        Ok(Self {
            m1,
            m2,
            eval: Arc::new(f),
            jacobian: None,
            linear: None,
        })
    }

    /// `p ↦ A p + b`.
    pub fn affine(a: Matrix, offset: Option<Vector>) -> Result<Self> {
        let (m2, m1) = a.shape();
        let b = offset.unwrap_or_else(|| Vector::zeros(m2));
        if b.len() != m2 {
            return Err(Error::DimensionMismatch {
                expected: m2,
                got: b.len(),
                context: "affine offset",
            });
        }
        if a.iter().chain(b.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(
                "map coefficients must be finite".into(),
            ));
        }
        let (a_eval, b_eval, a_jac) = (a.clone(), b.clone(), a.clone());
        let mut map = Self::new(m1, m2, move |p| &a_eval * p.coords() + &b_eval)?
            .with_jacobian(move |_| a_jac.clone());
        map.linear = Some((a, b));
        Ok(map)
    }

    pub fn with_jacobian<J>(mut self, j: J) -> Self
    where
        J: Fn(&Point) -> Matrix + Send + Sync + 'static,
    {
        self.jacobian = Some(Arc::new(j));
        self
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.m2
    }

    /// Matrix and offset when the map was built with [`SmoothMap::affine`].
    pub fn affine_parts(&self) -> Option<&(Matrix, Vector)> {
        self.linear.as_ref()
    }

    pub fn eval(&self, p: &Point) -> Vector {
        (self.eval)(p)
    }

    pub fn image(&self, p: &Point) -> Point {
        Point::from_vector(self.eval(p)).unwrap_or_else(|_| Point::origin(self.m2))
    }

    pub fn jacobian(&self, p: &Point, cfg: &FdConfig) -> Matrix {
        match &self.jacobian {
            Some(j) => j(p),
            None => self.fd_jacobian(p, cfg),
        }
    }

    pub fn fd_jacobian(&self, p: &Point, cfg: &FdConfig) -> Matrix {
        let mut jac = Matrix::zeros(self.m2, self.m1);
        for j in 0..self.m1 {
            let mut e = Vector::zeros(self.m1);
            e[j] = 1.0;
            jac.set_column(j, &central_diff_vector(|q| self.eval(q), p, &e, cfg.step));
        }
        jac
    }

    pub fn jacobian_discrepancy(&self, p: &Point, cfg: &FdConfig) -> Option<f64> {
        let analytic = self.jacobian.as_ref()?(p);
        Some((analytic - self.fd_jacobian(p, cfg)).amax())
    }
}

/// `π: (M₁, φ, ξ, η, g₁) → (M₂, g₂)`.
#[derive(Debug, Clone)]
pub struct SubmersionSetup {
    pub map: SmoothMap,
    pub structure: AlmostContactStructure,
    pub codomain_metric: MetricField,
    cfg: FdConfig,
    vertical_cache: PointCache<Matrix>,
    lift_cache: PointCache<Option<Matrix>>,
}

impl SubmersionSetup {
    pub fn new(
        map: SmoothMap,
        structure: AlmostContactStructure,
        codomain_metric: MetricField,
        cfg: FdConfig,
    ) -> Result<Self> {
        if structure.dim() != map.m1() {
            return Err(Error::DimensionMismatch {
                expected: map.m1(),
                got: structure.dim(),
                context: "domain structure dimension",
            });
        }
        if codomain_metric.dim() != map.m2() {
            return Err(Error::DimensionMismatch {
                expected: map.m2(),
                got: codomain_metric.dim(),
                context: "codomain metric dimension",
            });
        }
        cfg.validate()?;
        Ok(Self {
            map,
            structure,
            codomain_metric,
            cfg,
            vertical_cache: PointCache::new(),
            lift_cache: PointCache::new(),
        })
    }

    pub fn m1(&self) -> usize {
        self.map.m1()
    }

    pub fn m2(&self) -> usize {
        self.map.m2()
    }

    pub fn cfg(&self) -> &FdConfig {
        &self.cfg
    }

    pub fn g1(&self, p: &Point) -> Matrix {
        self.structure.g.eval(p)
    }

    /// `g₁`-orthogonal projector onto `ker π*` at `q`, built as
    /// `N (NᵀGN)⁻¹ NᵀG` from a Euclidean null basis `N`. Smooth in `q` as long
    /// as the rank is constant, which is what derivatives of projected fields
    /// need.
    pub fn vertical_projector(&self, q: &Point) -> Matrix {
        self.vertical_cache
            .get_or_insert_with(q, || self.compute_vertical_projector(q))
    }

    fn compute_vertical_projector(&self, q: &Point) -> Matrix {
        let jac = self.map.jacobian(q, &self.cfg);
        let (basis, _) = null_space(&jac, self.cfg.rank_threshold);
        let m1 = self.m1();
        if basis.is_empty() {
            return Matrix::zeros(m1, m1);
        }
        let n = Matrix::from_columns(&basis);
        let g = self.g1(q);
        let gn = &g * &n;
        let gram = n.transpose() * &gn;
        match gram.cholesky() {
            Some(ch) => &n * ch.inverse() * gn.transpose(),
            None => Matrix::zeros(m1, m1),
        }
    }

    pub fn horizontal_projector(&self, q: &Point) -> Matrix {
        Matrix::identity(self.m1(), self.m1()) - self.vertical_projector(q)
    }

    /// The horizontal vector at `q` mapping to `w`:
    /// `G⁻¹Jᵀ (J G⁻¹ Jᵀ)⁻¹ w`.
    pub fn lift_at(&self, q: &Point, w: &Vector) -> Result<Vector> {
        if w.len() != self.m2() {
            return Err(Error::DimensionMismatch {
                expected: self.m2(),
                got: w.len(),
                context: "target vector",
            });
        }
        match self
            .lift_cache
            .get_or_insert_with(q, || self.lift_operator(q).ok())
        {
            Some(op) => Ok(op * w),
            None => self.lift_operator(q).map(|op| op * w),
        }
    }

    /// `G⁻¹Jᵀ (J G⁻¹ Jᵀ)⁻¹`, an `m₁ × m₂` matrix.
    fn lift_operator(&self, q: &Point) -> Result<Matrix> {
        let jac = self.map.jacobian(q, &self.cfg);
        let ginv = self
            .g1(q)
            .cholesky()
            .ok_or_else(|| Error::DegenerateMetric { point: q.to_vec() })?
            .inverse();
        let gjt = &ginv * jac.transpose();
        let gram = &jac * &gjt;
        let (_, rank) = null_space(&jac, self.cfg.rank_threshold);
        if rank < self.m2() {
            return Err(Error::RankDeficient {
                rank,
                required: self.m2(),
                point: q.to_vec(),
            });
        }
        let inv = gram.try_inverse().ok_or_else(|| Error::RankDeficient {
            rank,
            required: self.m2(),
            point: q.to_vec(),
        })?;
        Ok(gjt * inv)
    }

    /// `q ↦ P_v(q) u`.
    pub fn vertical_field(&self, u: Vector) -> VectorField {
        let s = self.clone();
        VectorField::new(self.m1(), move |q| s.vertical_projector(q) * &u)
    }

    /// `q ↦ P_h(q) x`.
    pub fn horizontal_field(&self, x: Vector) -> VectorField {
        let s = self.clone();
        VectorField::new(self.m1(), move |q| s.horizontal_projector(q) * &x)
    }

    /// `𝒱E` as a field.
    pub fn vertical_part(&self, e: &VectorField) -> VectorField {
        let s = self.clone();
        let e = e.clone();
        VectorField::new(self.m1(), move |q| s.vertical_projector(q) * e.eval(q))
    }

    /// `ℋE` as a field.
    pub fn horizontal_part(&self, e: &VectorField) -> VectorField {
        let s = self.clone();
        let e = e.clone();
        VectorField::new(self.m1(), move |q| s.horizontal_projector(q) * e.eval(q))
    }

    /// Basic field π-related to the constant target field `w`.
    pub fn basic_field(&self, w: Vector) -> VectorField {
        let s = self.clone();
        let m1 = self.m1();
        VectorField::new(m1, move |q| {
            s.lift_at(q, &w).unwrap_or_else(|_| Vector::zeros(m1))
        })
    }

    /// `φE` as a field.
    pub fn phi_field(&self, e: &VectorField) -> VectorField {
        self.structure.phi.applied_to(e)
    }
}

/// Orthonormal bases and projectors of `ker π*` and its `g₁`-complement at
/// one point.
#[derive(Debug, Clone)]
pub struct PointSplit {
    pub point: Point,
    pub vertical_basis: Vec<Vector>,
    pub horizontal_basis: Vec<Vector>,
    pub vertical_projector: Matrix,
    pub horizontal_projector: Matrix,
    /// Numerical rank of the Jacobian.
    pub rank: usize,
    pub jacobian: Matrix,
    pub g: Matrix,
}

impl PointSplit {
    pub fn is_submersion(&self) -> bool {
        self.rank == self.jacobian.nrows()
    }

    pub fn fibre_dim(&self) -> usize {
        self.vertical_basis.len()
    }

    pub fn inner(&self, a: &Vector, b: &Vector) -> f64 {
        g_inner(&self.g, a, b)
    }

    pub fn vertical(&self, v: &Vector) -> Vector {
        &self.vertical_projector * v
    }

    pub fn horizontal(&self, v: &Vector) -> Vector {
        &self.horizontal_projector * v
    }
}

/// Vertical part of the split: a `g₁`-orthonormal basis of `ker π*`. Rank
/// deficiency is recorded in `rank`, not raised.
pub fn vertical_space(setup: &SubmersionSetup, p: &Point) -> Result<(Vec<Vector>, usize)> {
    check_point(setup, p)?;
    let cfg = setup.cfg();
    let jac = setup.map.jacobian(p, cfg);
    let (null, rank) = null_space(&jac, cfg.rank_threshold);
    let g = setup.g1(p);
    setup.structure.g.validate_at(p, cfg)?;
    Ok((orthonormalize(&null, &g, cfg), rank))
}

/// Complete split at `p`.
pub fn horizontal_space(setup: &SubmersionSetup, p: &Point) -> Result<PointSplit> {
    let (vertical_basis, rank) = vertical_space(setup, p)?;
    let cfg = setup.cfg();
    let g = setup.g1(p);
    let m1 = setup.m1();
    let pv = projector_onto(&vertical_basis, &g);
    let complement: Vec<Vector> = (0..m1)
        .map(|i| {
            let mut e = Vector::zeros(m1);
            e[i] = 1.0;
            &e - &pv * &e
        })
        .collect();
    let horizontal_basis = orthonormalize(&complement, &g, cfg);
    let ph = projector_onto(&horizontal_basis, &g);
    Ok(PointSplit {
        point: p.clone(),
        jacobian: setup.map.jacobian(p, cfg),
        vertical_basis,
        horizontal_basis,
        vertical_projector: pv,
        horizontal_projector: ph,
        rank,
        g,
    })
}

/// Horizontal lift of `w ∈ T_{π(p)}M₂`.
pub fn horizontal_lift(setup: &SubmersionSetup, w: &Vector, p: &Point) -> Result<Vector> {
    check_point(setup, p)?;
    setup.lift_at(p, w)
}

fn check_point(setup: &SubmersionSetup, p: &Point) -> Result<()> {
    if p.dim() != setup.m1() {
        return Err(Error::DimensionMismatch {
            expected: setup.m1(),
            got: p.dim(),
            context: "point in the domain chart",
        });
    }
    Ok(())
}
