use super::local::{par_slant, SlantLocal};
use super::Ops;
use crate::check::{CheckEntry, CrossValidation, PointFailure, Status};
use crate::diffgeo::{central_diff_scalar, lie_bracket, Point, Vector, VectorField};
use crate::error::{Error, Result};
use crate::submersion::SubmersionSetup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Vertical,
    D1,
    D2,
    Horizontal,
}

impl Distribution {
    pub const ALL: [Distribution; 4] = [
        Distribution::Vertical,
        Distribution::D1,
        Distribution::D2,
        Distribution::Horizontal,
    ];

    fn check_id(self) -> &'static str {
        match self {
            Distribution::Vertical => "integrable.vertical",
            Distribution::D1 => "integrable.d1",
            Distribution::D2 => "integrable.d2",
            Distribution::Horizontal => "integrable.horizontal",
        }
    }
}

fn bracket_residual(s: &SlantLocal, which: Distribution) -> f64 {
    let l = &s.l;
    let cfg = l.cfg();
    let frames: &[(Vector, VectorField)] = match which {
        Distribution::Vertical => &s.vf,
        Distribution::D1 => &s.d1,
        Distribution::D2 => &s.d2,
        Distribution::Horizontal => &s.bf,
    };
    let mut worst: f64 = 0.0;
    for (i, (_, ef)) in frames.iter().enumerate() {
        for (_, ff) in frames.iter().skip(i + 1) {
            let b = lie_bracket(ef, ff, l.point(), cfg);
            let outside = match which {
                Distribution::Vertical => l.h(&b),
                Distribution::D1 => &b - &s.data.p_proj * &b,
                Distribution::D2 => &b - &s.data.q_proj * &b,
                Distribution::Horizontal => l.v(&b),
            };
            worst = worst.max(l.norm1(&outside));
        }
    }
    worst
}

/// Component of brackets of frame fields outside the distribution. The
/// vertical distribution is integrable for every submersion, so a
/// violation there is a failure; for the others it is a measurement.
pub fn check_integrability_direct(
    setup: &SubmersionSetup,
    which: &[Distribution],
    points: &[Point],
) -> Result<Vec<CheckEntry>> {
    let rows = par_slant(setup, points, |s| {
        which
            .iter()
            .map(|w| bracket_residual(s, *w))
            .collect::<Vec<_>>()
    })?;
    let tol = setup.cfg().derivative_tol;
    Ok(which
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let column: Vec<(Point, f64)> =
                rows.iter().map(|(p, r, _)| (p.clone(), r[i])).collect();
            let on_violation = if *w == Distribution::Vertical {
                Status::Fail
            } else {
                Status::Finding
            };
            let e = CheckEntry::from_residuals(w.check_id(), tol, &column, on_violation);
            if *w != Distribution::Vertical && !e.passed() {
                e.with_note("distribution is not integrable at these points")
            } else {
                e
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    /// Condition holds iff the property holds.
    Iff,
    /// Condition implies the property.
    Sufficient,
}

struct Condition {
    id: &'static str,
    direct: &'static str,
    kind: Kind,
    /// Status when verdicts disagree at a point where ξ is horizontal and the
    /// structure is the corrected one.
    on_disagreement: Status,
    eval: fn(&SlantLocal) -> (f64, f64),
}

const CONDITIONS: &[Condition] = &[
    Condition {
        id: "char.d1_integrable",
        direct: "[U,V] outside D1, U,V in D1",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d1_integrable,
    },
    Condition {
        id: "char.d2_integrable",
        direct: "[Z,W] outside D2, Z,W in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d2_integrable,
    },
    Condition {
        id: "char.d1_parallel.d2_part",
        direct: "g1(nabla_U V, Z), U,V in D1, Z in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d1_parallel_d2,
    },
    Condition {
        id: "char.d1_parallel.horizontal_part",
        direct: "g1(nabla_U V, X), U,V in D1, X horizontal",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d1_parallel_h,
    },
    Condition {
        id: "char.d2_parallel.d1_part",
        direct: "g1(nabla_Z W, U), Z,W in D2, U in D1",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d2_parallel_d1,
    },
    Condition {
        id: "char.d2_parallel.horizontal_part",
        direct: "g1(nabla_Z W, X), Z,W in D2, X horizontal",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: d2_parallel_h,
    },
    Condition {
        id: "char.horizontal_integrable.d1_part",
        direct: "g1([X,Y], V), X,Y basic, V in D1",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: h_integrable_d1,
    },
    Condition {
        id: "char.horizontal_integrable.d2_part",
        direct: "g1([X,Y], W), X,Y basic, W in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: h_integrable_d2,
    },
    Condition {
        id: "char.horizontal_parallel.d1_part",
        direct: "g1(nabla_X Y, V), X,Y basic, V in D1",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: h_parallel_d1,
    },
    Condition {
        id: "char.horizontal_parallel.d2_part",
        direct: "g1(nabla_X Y, W), X,Y basic, W in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: h_parallel_d2,
    },
    Condition {
        id: "char.vertical_parallel",
        direct: "g1(nabla_U V, X), U in D1, V in D2, X horizontal",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: v_parallel,
    },
    Condition {
        id: "char.geodesic_sufficient",
        direct: "|(nabla pi*)(X, Z1 + Z2)|, X,Z2 basic, Z1 vertical",
        kind: Kind::Sufficient,
        on_disagreement: Status::Fail,
        eval: geodesic_sufficient,
    },
    Condition {
        id: "char.geodesic.d1_pairs",
        direct: "g2((nabla pi*)(U,V), pi*Z), U,V in D1",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_d1,
    },
    Condition {
        id: "char.geodesic.d2_pairs",
        direct: "g2((nabla pi*)(U,V), pi*Z), U,V in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_d2,
    },
    Condition {
        id: "char.geodesic.mixed",
        direct: "g2((nabla pi*)(U,X), pi*Y), U vertical, X,Y basic",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_mixed,
    },
    Condition {
        id: "char.geodesic_vector.vertical",
        direct: "|(nabla pi*)(U,V)|, U,V vertical",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_vec_vertical,
    },
    Condition {
        id: "char.geodesic_vector.mixed",
        direct: "|(nabla pi*)(X,U)|, X basic, U vertical",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_vec_mixed,
    },
    Condition {
        id: "char.geodesic_vector.d1_d2",
        direct: "|(nabla pi*)(U,V)|, U in D1, V in D2",
        kind: Kind::Iff,
        on_disagreement: Status::Fail,
        eval: geodesic_vec_d1_d2,
    },
];

pub fn condition_ids() -> Vec<&'static str> {
    CONDITIONS.iter().map(|c| c.id).collect()
}

fn find(id: &str) -> Result<&'static Condition> {
    CONDITIONS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::UnknownCondition {
            id: id.to_string(),
            valid: condition_ids().join(", "),
        })
}

/// Evaluates the listed conditions at every point, each paired with its
/// direct geometric quantity. The entry's residual is the condition
/// residual; its status reflects verdict agreement.
pub fn evaluate_characterization(
    setup: &SubmersionSetup,
    ids: &[&str],
    points: &[Point],
) -> Result<Vec<CheckEntry>> {
    let conds: Vec<&Condition> = ids.iter().map(|id| find(id)).collect::<Result<_>>()?;
    let rows = par_slant(setup, points, |s| {
        conds.iter().map(|c| (c.eval)(s)).collect::<Vec<_>>()
    })?;
    let tol = setup.cfg().derivative_tol;
    Ok(conds
        .iter()
        .enumerate()
        .map(|(i, c)| cross_validate(c, tol, &rows, i, setup.structure.is_printed_variant()))
        .collect())
}

fn cross_validate(
    c: &Condition,
    tol: f64,
    rows: &[(Point, Vec<(f64, f64)>, bool)],
    i: usize,
    printed_variant: bool,
) -> CheckEntry {
    let column: Vec<(Point, f64)> = rows.iter().map(|(p, r, _)| (p.clone(), r[i].0)).collect();
    let mut entry = CheckEntry::from_residuals(c.id, tol, &column, Status::Pass);
    entry.per_point_failures.clear();
    let mut cv = CrossValidation {
        direct_check: c.direct.to_string(),
        direct_max_residual: 0.0,
        condition_holds: 0,
        property_holds: 0,
        agreements: 0,
        disagreements: 0,
    };
    let mut in_scope_disagreement = false;
    for (p, r, scope) in rows {
        let (cond, direct) = r[i];
        let direct = if direct.is_finite() {
            direct.abs()
        } else {
            f64::MAX
        };
        cv.direct_max_residual = cv.direct_max_residual.max(direct);
        let ch = cond.is_finite() && cond.abs() <= tol;
        let ph = direct <= tol;
        cv.condition_holds += ch as usize;
        cv.property_holds += ph as usize;
        let agree = match c.kind {
            Kind::Iff => ch == ph,
            Kind::Sufficient => !ch || ph,
        };
        if agree {
            cv.agreements += 1;
        } else {
            cv.disagreements += 1;
            in_scope_disagreement |= *scope;
            entry.per_point_failures.push(PointFailure {
                point: p.to_vec(),
                residual: if cond.is_finite() {
                    cond.abs()
                } else {
                    f64::MAX
                },
            });
        }
    }
    entry.status = if cv.disagreements == 0 {
        Status::Pass
    } else if in_scope_disagreement && !printed_variant {
        c.on_disagreement
    } else {
        Status::Finding
    };
    entry.cross_validation = Some(cv);
    entry.with_note("status reflects verdict agreement with the direct check")
}

// --- condition evaluators: (condition residual, direct residual) ---

type Frames = [(Vector, VectorField)];

fn pairs<'f>(
    a: &'f Frames,
    b: &'f Frames,
) -> impl Iterator<Item = (&'f (Vector, VectorField), &'f (Vector, VectorField))> {
    a.iter().flat_map(move |x| b.iter().map(move |y| (x, y)))
}

fn d1_integrable(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let mut cond: f64 = 0.0;
    for ((u, uf), (v, vf)) in pairs(&s.d1, &s.d1) {
        let delta = l.sff(u, &o.phi_f(vf)) - l.sff(v, &o.phi_f(uf));
        for (z, _) in &s.d2 {
            cond = cond.max(l.g2(&delta, &l.push(&o.omega(z))).abs());
        }
    }
    (cond, bracket_residual(s, Distribution::D1))
}

fn d2_integrable(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let mut cond: f64 = 0.0;
    for ((z, _), (w, _)) in pairs(&s.d2, &s.d2) {
        for (_, uf) in &s.d1 {
            let phi_u = o.phi_f(uf);
            let lhs = l.g2(&l.push(&o.omega(w)), &l.sff(z, &phi_u))
                + l.g2(&l.push(&o.omega(z)), &l.sff(w, &phi_u));
            let rhs = l.g1(&o.phi_hat(w), &l.nabla_hat(z, &phi_u))
                + l.g1(&o.phi_hat(z), &l.nabla_hat(w, &phi_u));
            cond = cond.max((lhs - rhs).abs());
        }
    }
    (cond, bracket_residual(s, Distribution::D2))
}

fn d1_parallel_d2(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.d1, &s.d1) {
        let sff = l.sff(u, &o.phi_f(vf));
        let nuv = l.nabla(u, vf);
        for (z, zf) in &s.d2 {
            let lhs = l.g2(&sff, &l.push(&o.omega(z)));
            let rhs = l.g1(&l.t_tensor(u, &o.hphi_f(&o.vphi_f(zf))), v);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nuv, z).abs());
        }
    }
    (cond, direct)
}

fn d1_parallel_h(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.d1, &s.d1) {
        let sff = l.sff(u, &o.phi_f(vf));
        let nuv = l.nabla(u, vf);
        for (x, xf) in &s.bf {
            let bx = o.vphi_f(xf);
            let lhs = -l.g2(&sff, &l.push(&o.c(x)));
            let rhs = l.g1(
                v,
                &(l.nabla_hat(u, &o.vphi_f(&bx)) + l.t_tensor(u, &o.hphi_f(&bx))),
            ) + l.g1(v, &o.phi_hat(u)) * l.eta(x);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nuv, x).abs());
        }
    }
    (cond, direct)
}

fn d2_parallel_d1(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((z, _), (w, wf)) in pairs(&s.d2, &s.d2) {
        let nzw = l.nabla(z, wf);
        for (u, uf) in &s.d1 {
            let phi_u = o.phi_f(uf);
            let lhs = l.g2(&l.push(&o.omega(w)), &l.sff(z, &phi_u));
            let rhs = l.g1(&o.phi_hat(w), &l.nabla_hat(z, &phi_u));
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nzw, u).abs());
        }
    }
    (cond, direct)
}

fn d2_parallel_h(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((z, _), (w, wf)) in pairs(&s.d2, &s.d2) {
        let nzw = l.nabla(z, wf);
        let om_w = o.hphi_f(wf);
        let om_phw = o.hphi_f(&o.vphi_f(wf));
        let t = l.t_tensor(z, &om_w);
        for (x, _) in &s.bf {
            let px = l.push(x);
            let lhs = l.g2(&l.sff(z, &om_w), &px) - l.g2(&l.sff(z, &om_phw), &px);
            let rhs = l.g1(&t, &o.b(x)) + l.g1(w, &o.phi_hat(z)) * l.eta(x);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nzw, x).abs());
        }
    }
    (cond, direct)
}

fn h_integrable_d1(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let cfg = l.cfg();
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((x, xf), (y, yf)) in pairs(&s.bf, &s.bf) {
        let br = lie_bracket(xf, yf, l.point(), cfg);
        let inner = l.v(&(l.nabla(x, &o.vphi_f(yf)) + l.nabla(y, &o.vphi_f(xf))));
        for (v, vf) in &s.d1 {
            let phv = o.vphi_f(vf);
            let px = l.push(x);
            let lhs = l.g2(&l.sff(y, &phv), &px) + l.g2(&l.sff(x, &phv), &px);
            let rhs = l.g1(&o.phi_hat(v), &inner);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&br, v).abs());
        }
    }
    (cond, direct)
}

fn h_integrable_d2(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let cfg = l.cfg();
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((x, xf), (y, yf)) in pairs(&s.bf, &s.bf) {
        let br = lie_bracket(xf, yf, l.point(), cfg);
        let d = l.sff(x, &o.hphi_f(yf)) - l.sff(y, &o.hphi_f(xf));
        let a = l.a_tensor(x, &o.vphi_f(yf)) + l.a_tensor(y, &o.vphi_f(xf));
        for (w, _) in &s.d2 {
            let om = o.omega(w);
            let lhs = l.g2(&d, &l.push(&om));
            let rhs = l.g1(&a, &om) + l.eta(y) * l.g1(x, &om) - l.eta(x) * l.g1(y, &om);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&br, w).abs());
        }
    }
    (cond, direct)
}

fn h_parallel_d1(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((x, _), (y, yf)) in pairs(&s.bf, &s.bf) {
        let nxy = l.nabla(x, yf);
        let by = o.vphi_f(yf);
        let inner = l.v(&l.nabla(x, &o.vphi_f(&by))) + l.a_tensor(x, &o.hphi_f(&by));
        for (v, vf) in &s.d1 {
            let lhs = l.g1(v, &inner);
            let rhs = l.g2(&l.push(&o.c(y)), &l.sff(x, &o.phi_f(vf)));
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nxy, v).abs());
        }
    }
    (cond, direct)
}

fn h_parallel_d2(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((x, _), (y, yf)) in pairs(&s.bf, &s.bf) {
        let nxy = l.nabla(x, yf);
        let sff_xy = l.sff(x, yf);
        let sff_xcy = l.sff(x, &o.hphi_f(yf));
        for (w, wf) in &s.d2 {
            let om = o.omega(w);
            let lhs = l.g1(&l.a_tensor(x, &o.hphi_f(wf)), &o.b(y)) + l.eta(y) * l.g1(x, &om);
            let rhs =
                l.g2(&sff_xy, &l.push(&o.omega(&o.phi_hat(w)))) - l.g2(&sff_xcy, &l.push(&om));
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nxy, w).abs());
        }
    }
    (cond, direct)
}

fn v_parallel(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.d1, &s.d2) {
        let nuv = l.nabla(u, vf);
        for (x, xf) in &s.bf {
            let lhs = l.g1(&o.omega(v), &l.t_tensor(u, &o.vphi_f(xf)))
                + l.g1(v, &o.phi_hat(u)) * l.eta(x);
            let rhs = l.g2(&l.sff(u, &o.hphi_f(xf)), &l.push(&o.omega(v)))
                - l.g2(&l.sff(u, xf), &l.push(&o.omega(&o.phi_hat(v))));
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g1(&nuv, x).abs());
        }
    }
    (cond, direct)
}

fn zero_field(dim: usize) -> (Vector, VectorField) {
    (
        Vector::zeros(dim),
        VectorField::constant(Vector::zeros(dim)),
    )
}

fn geodesic_sufficient(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let m1 = l.setup.m1();
    let mut z1s: Vec<(Vector, VectorField)> = s.vf.clone();
    z1s.push(zero_field(m1));
    let mut z2s: Vec<(Vector, VectorField)> = s.bf.clone();
    z2s.push(zero_field(m1));
    let xi = l.xi();
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for (x, _) in &s.bf {
        let cx = o.c(x);
        for (_, z1f) in &z1s {
            let ph1 = o.vphi_f(z1f);
            let om1 = o.hphi_f(z1f);
            for (z2, z2f) in &z2s {
                let b2 = o.vphi_f(z2f);
                let c2 = o.hphi_f(z2f);
                let pullback = l.sff(x, z2f) + l.push(&l.nabla(x, z2f));
                let lhs = -pullback;
                let inner_c = l.h(&l.nabla(x, &om1)) - l.a_tensor(x, &ph1)
                    + l.a_tensor(x, &b2)
                    + l.h(&l.nabla(x, &c2));
                let inner_w = l.a_tensor(x, &om1) - l.v(&l.nabla(x, &ph1))
                    + l.v(&l.nabla(x, &b2))
                    + l.a_tensor(x, &c2);
                let e2 = l.eta(z2);
                let rhs_vec = o.c(&inner_c) + o.omega(&inner_w)
                    - &cx * e2
                    - xi * (l.eta(x) * e2)
                    - xi * l.g1(z2, &cx);
                let rhs = l.push(&rhs_vec);
                cond = cond.max(l.norm2(&(lhs - rhs)));
                let z = VectorField::new(m1, {
                    let (a, b) = (z1f.clone(), z2f.clone());
                    move |q| a.eval(q) + b.eval(q)
                });
                direct = direct.max(l.norm2(&l.sff(x, &z)));
            }
        }
    }
    (cond, direct)
}

fn geodesic_d1(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.d1, &s.d1) {
        let nh = l.nabla_hat(u, &o.phi_f(vf));
        let sff = l.sff(u, vf);
        for (z, zf) in &s.bf {
            let lhs = l.g1(&nh, &o.b(z));
            let rhs =
                l.g1(&l.t_tensor(u, &o.hphi_f(zf)), &l.phi(v)) - l.g1(v, &o.phi_hat(u)) * l.eta(z);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g2(&sff, &l.push(z)).abs());
        }
    }
    (cond, direct)
}

fn geodesic_d2(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.d2, &s.d2) {
        let om_v = o.hphi_f(vf);
        let a = l.sff(u, &o.hphi_f(&o.vphi_f(vf))) + l.sff(u, &om_v);
        let t = l.t_tensor(u, &om_v);
        let sff = l.sff(u, vf);
        for (z, _) in &s.bf {
            let pz = l.push(z);
            let lhs = l.g2(&a, &pz);
            let rhs = l.g1(&t, &o.b(z)) + l.g1(v, &o.phi_hat(u)) * l.eta(z);
            cond = cond.max((lhs - rhs).abs());
            direct = direct.max(l.g2(&sff, &pz).abs());
        }
    }
    (cond, direct)
}

fn geodesic_mixed(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let cfg = l.cfg();
    let eta_field = l.setup.structure.eta.clone();
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for (u, _) in &s.vf {
        let qu = &s.data.q_proj * u;
        for (x, xf) in &s.bf {
            let cx = o.hphi_f(xf);
            let bx = o.vphi_f(xf);
            let sff_cx = l.sff(u, &cx);
            let sff_wbx = l.sff(u, &o.hphi_f(&bx));
            let t_phbx = l.t_tensor(u, &o.vphi_f(&bx));
            let t_cx = l.t_tensor(u, &cx);
            let sff_ux = l.sff(u, xf);
            let xf2 = xf.clone();
            let eta2 = eta_field.clone();
            let u_eta_x =
                central_diff_scalar(|q| eta2.apply(q, &xf2.eval(q)), l.point(), u, cfg.step);
            for (y, _) in &s.bf {
                let lhs = l.g2(&sff_cx, &l.push(&o.c(y))) - l.g2(&sff_wbx, &l.push(y));
                let rhs = l.g1(&t_phbx, y) - l.g1(&t_cx, &o.b(y)) + l.eta(x) * l.g1(&qu, &l.phi(y))
                    - l.eta(y) * (u_eta_x + l.g1(x, &o.omega(u)));
                cond = cond.max((lhs - rhs).abs());
                direct = direct.max(l.g2(&sff_ux, &l.push(y)).abs());
            }
        }
    }
    (cond, direct)
}

fn geodesic_vec_vertical(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (v, vf)) in pairs(&s.vf, &s.vf) {
        let ph = o.vphi_f(vf);
        let om = o.hphi_f(vf);
        let vec = o.c(&(l.t_tensor(u, &ph) + l.h(&l.nabla(u, &om))))
            + o.omega(&(l.nabla_hat(u, &ph) + l.t_tensor(u, &om)))
            + l.xi() * l.g1(&(&s.data.p_proj * v), &o.phi_hat(u));
        cond = cond.max(l.norm1(&vec));
        direct = direct.max(l.norm2(&l.sff(u, vf)));
    }
    (cond, direct)
}

fn geodesic_vec_mixed(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((x, _), (u, uf)) in pairs(&s.bf, &s.vf) {
        let ph = o.vphi_f(uf);
        let om = o.hphi_f(uf);
        let vec = o.c(&(l.a_tensor(x, &ph) + l.h(&l.nabla(x, &om))))
            + o.omega(&(l.a_tensor(x, &om) + l.v(&l.nabla(x, &ph))))
            + l.xi() * l.g1(&(&s.data.q_proj * u), &o.b(x));
        cond = cond.max(l.norm1(&vec));
        direct = direct.max(l.norm2(&l.sff(x, uf)));
    }
    (cond, direct)
}

fn geodesic_vec_d1_d2(s: &SlantLocal) -> (f64, f64) {
    let l = &s.l;
    let o = Ops { l };
    let (mut cond, mut direct) = (0.0f64, 0.0f64);
    for ((u, _), (_, vf)) in pairs(&s.d1, &s.d2) {
        let ph = o.vphi_f(vf);
        let om = o.hphi_f(vf);
        let vec = o.c(&(l.t_tensor(u, &ph) + l.h(&l.nabla(u, &ph))))
            + o.omega(&(l.t_tensor(u, &om) + l.v(&l.nabla(u, &ph))));
        cond = cond.max(l.norm1(&vec));
        direct = direct.max(l.norm2(&l.sff(u, vf)));
    }
    (cond, direct)
}
