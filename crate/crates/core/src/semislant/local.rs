use super::{detect_semi_slant, SemiSlantData, SlantFields};
use crate::diffgeo::{Point, Vector, VectorField};
use crate::error::Result;
use crate::submersion::{
    riemannian_residual, xi_vertical_component, LocalGeometry, SubmersionSetup,
};
use rayon::prelude::*;

/// Per-point frames for the slant checks: D₁, D₂ and vertical ONB vectors
/// with their projector fields, and the basic lifts of the target
/// coordinate fields.
pub(crate) struct SlantLocal<'a> {
    pub l: LocalGeometry<'a>,
    pub data: SemiSlantData,
    pub d1: Vec<(Vector, VectorField)>,
    pub d2: Vec<(Vector, VectorField)>,
    pub vf: Vec<(Vector, VectorField)>,
    pub bf: Vec<(Vector, VectorField)>,
    /// ξ horizontal and `π*` isometric on horizontal vectors here.
    pub in_scope: bool,
}

impl<'a> SlantLocal<'a> {
    pub fn new(setup: &'a SubmersionSetup, p: &Point) -> Result<Self> {
        let l = LocalGeometry::new(setup, p)?;
        let data = detect_semi_slant(setup, p)?;
        let fields = SlantFields::new(setup, &data);
        let d1 = data
            .d1_basis
            .iter()
            .map(|u| (u.clone(), fields.d1_field(u.clone())))
            .collect();
        let d2 = data
            .d2_basis
            .iter()
            .map(|u| (u.clone(), fields.d2_field(u.clone())))
            .collect();
        let tol = setup.cfg().algebraic_tol;
        let in_scope = xi_vertical_component(&l) <= tol && riemannian_residual(&l) <= tol;
        Ok(Self {
            vf: l.vertical_fields(),
            bf: l.basic_fields(),
            l,
            data,
            d1,
            d2,
            in_scope,
        })
    }
}

/// Runs `f` on every point in parallel; the result keeps the input order
/// and carries the scope flag.
pub(crate) fn par_slant<T, F>(
    setup: &SubmersionSetup,
    points: &[Point],
    f: F,
) -> Result<Vec<(Point, T, bool)>>
where
    T: Send,
    F: Fn(&SlantLocal) -> T + Sync,
{
    points
        .par_iter()
        .map(|p| {
            let s = SlantLocal::new(setup, p)?;
            Ok((p.clone(), f(&s), s.in_scope))
        })
        .collect()
}

pub(crate) fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |a, b| {
        if b.is_nan() || a.is_nan() {
            f64::NAN
        } else {
            a.max(b.abs())
        }
    })
}
