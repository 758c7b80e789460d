use super::local::{par_slant, SlantLocal};
use crate::check::{CheckEntry, Status};
use crate::diffgeo::{Point, Vector};
use crate::error::Result;
use crate::submersion::SubmersionSetup;

/// `H = (1/k) Σ 𝒯_{Vᵢ}Vᵢ` over the vertical ONB.
pub(crate) fn mean_curvature_local(s: &SlantLocal) -> Vector {
    let l = &s.l;
    let k = s.vf.len().max(1) as f64;
    s.vf.iter()
        .fold(Vector::zeros(l.setup.m1()), |acc, (v, vf)| {
            acc + l.t_tensor(v, vf)
        })
        / k
}

/// Mean curvature vector of the fibre through `p`.
pub fn mean_curvature(setup: &SubmersionSetup, p: &Point) -> Result<Vector> {
    let s = SlantLocal::new(setup, p)?;
    Ok(mean_curvature_local(&s))
}

/// Umbilicity residual `maxᵢⱼ ‖𝒯_{Vᵢ}Vⱼ − δᵢⱼH‖`, and at umbilical points
/// the component of `H` outside `ωD₂`.
pub fn check_totally_umbilical(
    setup: &SubmersionSetup,
    points: &[Point],
) -> Result<Vec<CheckEntry>> {
    let tol = setup.cfg().derivative_tol;
    let rows = par_slant(setup, points, |s| {
        let l = &s.l;
        let h = mean_curvature_local(s);
        let mut umb: f64 = 0.0;
        for (i, (v, _)) in s.vf.iter().enumerate() {
            for (j, (_, wf)) in s.vf.iter().enumerate() {
                let t = l.t_tensor(v, wf);
                let d = if i == j { t - &h } else { t };
                umb = umb.max(l.norm1(&d));
            }
        }
        let pw = crate::diffgeo::projector_onto(&s.data.omega_d2_basis, &l.split.g);
        let outside = l.norm1(&(&h - pw * &h));
        (umb, outside)
    })?;
    let umb: Vec<(Point, f64)> = rows.iter().map(|(p, r, _)| (p.clone(), r.0)).collect();
    let umbilical = CheckEntry::from_residuals("umbilical.fibres", tol, &umb, Status::Finding);
    let umbilical = if umbilical.passed() {
        umbilical
    } else {
        umbilical.with_note("fibres are not totally umbilical at these points")
    };
    let at_umbilical: Vec<(Point, f64)> = rows
        .iter()
        .filter(|(_, r, scope)| r.0 <= tol && *scope)
        .map(|(p, r, _)| (p.clone(), r.1))
        .collect();
    let mut mean =
        CheckEntry::from_residuals("umbilical.mean_curvature", tol, &at_umbilical, Status::Fail);
    if at_umbilical.is_empty() {
        mean = mean.with_note("no umbilical points among the samples");
    }
    Ok(vec![umbilical, mean])
}

/// `‖(∇π*)(E,F)‖` over vertical and basic frame fields, and the identity
/// `(∇π*)(U,V) = −π*(𝒯_UV)` on vertical pairs.
pub fn check_totally_geodesic_map(
    setup: &SubmersionSetup,
    points: &[Point],
) -> Result<Vec<CheckEntry>> {
    let tol = setup.cfg().derivative_tol;
    let rows = par_slant(setup, points, |s: &SlantLocal| {
        let l = &s.l;
        let frames: Vec<_> = s.vf.iter().chain(s.bf.iter()).collect();
        let mut map: f64 = 0.0;
        for (x, _) in &frames {
            for (_, yf) in &frames {
                map = map.max(l.norm2(&l.sff(x, yf)));
            }
        }
        let mut vert: f64 = 0.0;
        for (u, _) in &s.vf {
            for (_, vf) in &s.vf {
                let d = l.sff(u, vf) + l.push(&l.t_tensor(u, vf));
                vert = vert.max(l.norm2(&d));
            }
        }
        (map, vert)
    })?;
    let map: Vec<(Point, f64)> = rows.iter().map(|(p, r, _)| (p.clone(), r.0)).collect();
    let vert: Vec<(Point, f64)> = rows.iter().map(|(p, r, _)| (p.clone(), r.1)).collect();
    let m = CheckEntry::from_residuals("geodesic.map", tol, &map, Status::Finding);
    let m = if m.passed() {
        m
    } else {
        m.with_note("map is not totally geodesic at these points")
    };
    Ok(vec![
        m,
        CheckEntry::from_residuals("geodesic.vertical_pairs", tol, &vert, Status::Fail),
    ])
}
