use super::{horizontal_space, PointSplit, SubmersionSetup};
use crate::diffgeo::{
    central_diff_vector, christoffel, Christoffel, FdConfig, Matrix, Point, Vector, VectorField,
};
use crate::error::Result;
use rayon::prelude::*;

/// Evaluates `f` on a [`LocalGeometry`] at each point in parallel, keeping
/// the input order.
pub fn par_local<T, F>(setup: &SubmersionSetup, points: &[Point], f: F) -> Result<Vec<(Point, T)>>
where
    T: Send,
    F: Fn(&LocalGeometry) -> T + Sync,
{
    points
        .par_iter()
        .map(|p| {
            let local = LocalGeometry::new(setup, p)?;
            Ok((p.clone(), f(&local)))
        })
        .collect()
}

/// Everything needed to evaluate tensors of the submersion at one point:
/// the split, both sets of Christoffel symbols and the structure tensors.
///
/// Tangent-vector arguments enter tensorially and are plain vectors; the
/// differentiated slot is always a [`VectorField`].
#[derive(Debug, Clone)]
pub struct LocalGeometry<'a> {
    pub setup: &'a SubmersionSetup,
    pub split: PointSplit,
    pub gamma: Christoffel,
    pub gamma2: Christoffel,
    pub image: Point,
    phi: Matrix,
    xi: Vector,
    eta: Vector,
    g2: Matrix,
}

impl<'a> LocalGeometry<'a> {
    pub fn new(setup: &'a SubmersionSetup, p: &Point) -> Result<Self> {
        let cfg = setup.cfg();
        let split = horizontal_space(setup, p)?;
        let gamma = christoffel(&setup.structure.g, p, cfg)?;
        let image = setup.map.image(p);
        let gamma2 = christoffel(&setup.codomain_metric, &image, cfg)?;
        Ok(Self {
            phi: setup.structure.phi.eval(p),
            xi: setup.structure.xi.eval(p),
            eta: setup.structure.eta.eval(p),
            g2: setup.codomain_metric.eval(&image),
            setup,
            split,
            gamma,
            gamma2,
            image,
        })
    }

    pub fn point(&self) -> &Point {
        &self.split.point
    }

    pub fn cfg(&self) -> &FdConfig {
        self.setup.cfg()
    }

    pub fn g1(&self, a: &Vector, b: &Vector) -> f64 {
        self.split.inner(a, b)
    }

    pub fn norm1(&self, a: &Vector) -> f64 {
        self.g1(a, a).max(0.0).sqrt()
    }

    pub fn g2(&self, a: &Vector, b: &Vector) -> f64 {
        a.dot(&(&self.g2 * b))
    }

    pub fn norm2(&self, a: &Vector) -> f64 {
        self.g2(a, a).max(0.0).sqrt()
    }

    pub fn phi(&self, v: &Vector) -> Vector {
        &self.phi * v
    }

    pub fn xi(&self) -> &Vector {
        &self.xi
    }

    pub fn eta(&self, v: &Vector) -> f64 {
        self.eta.dot(v)
    }

    pub fn v(&self, v: &Vector) -> Vector {
        self.split.vertical(v)
    }

    pub fn h(&self, v: &Vector) -> Vector {
        self.split.horizontal(v)
    }

    /// `π*v`.
    pub fn push(&self, v: &Vector) -> Vector {
        &self.split.jacobian * v
    }

    /// Vertical ONB at the point, each paired with the field `q ↦ P_v(q)u`.
    pub fn vertical_fields(&self) -> Vec<(Vector, VectorField)> {
        self.split
            .vertical_basis
            .iter()
            .map(|u| (u.clone(), self.setup.vertical_field(u.clone())))
            .collect()
    }

    /// Basic lifts of the target coordinate fields, with their values here.
    pub fn basic_fields(&self) -> Vec<(Vector, VectorField)> {
        (0..self.setup.m2())
            .map(|a| {
                let mut w = Vector::zeros(self.setup.m2());
                w[a] = 1.0;
                let field = self.setup.basic_field(w);
                (field.eval(self.point()), field)
            })
            .collect()
    }

    /// `∇_v Y` at the point.
    pub fn nabla(&self, v: &Vector, y: &VectorField) -> Vector {
        self.gamma.covariant(v, y, self.point(), self.cfg())
    }

    /// `𝒯_E F = ℋ∇_{𝒱E}𝒱F + 𝒱∇_{𝒱E}ℋF`.
    pub fn t_tensor(&self, e: &Vector, f: &VectorField) -> Vector {
        let ve = self.v(e);
        let vf = self.setup.vertical_part(f);
        let hf = self.setup.horizontal_part(f);
        self.h(&self.nabla(&ve, &vf)) + self.v(&self.nabla(&ve, &hf))
    }

    /// `𝒜_E F = ℋ∇_{ℋE}𝒱F + 𝒱∇_{ℋE}ℋF`.
    pub fn a_tensor(&self, e: &Vector, f: &VectorField) -> Vector {
        let he = self.h(e);
        let vf = self.setup.vertical_part(f);
        let hf = self.setup.horizontal_part(f);
        self.h(&self.nabla(&he, &vf)) + self.v(&self.nabla(&he, &hf))
    }

    /// `∇̂_U V = 𝒱∇_U V`.
    pub fn nabla_hat(&self, u: &Vector, v: &VectorField) -> Vector {
        self.v(&self.nabla(u, v))
    }

    /// `(∇π*)(X, Y) = ∇^π_X π*Y − π*(∇_X Y)`, where the pullback derivative
    /// differentiates `t ↦ J(c(t)) Y(c(t))` and adds the codomain
    /// Christoffel term at `π(p)`.
    pub fn sff(&self, x: &Vector, y: &VectorField) -> Vector {
        let p = self.point();
        let cfg = self.cfg();
        let map = &self.setup.map;
        let pushed = central_diff_vector(|q| map.jacobian(q, cfg) * y.eval(q), p, x, cfg.step);
        let pullback = pushed + self.gamma2.contract(&self.push(x), &self.push(&y.eval(p)));
        pullback - self.push(&self.nabla(x, y))
    }
}
