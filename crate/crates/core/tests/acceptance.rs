//! Acceptance suite: prints one line per criterion and exits nonzero if
//! any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::process::ExitCode;

use common::{curved_setup, sasakian_christoffel_oracle, sff_oracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semislant::check::{CheckEntry, Status};
use semislant::contact::{
    check_almost_contact, check_sasakian, standard_sasakian, StructureVariant,
};
use semislant::diffgeo::{christoffel, FdConfig, Point, Vector, VectorField};
use semislant::report::{registry_example, run_suite, sample_points, RunConfig, SampleConfig};
use semislant::semislant::{
    check_structure_identities, condition_ids, detect_semi_slant, evaluate_characterization,
};
use semislant::submersion::{check_oneill_properties, LocalGeometry};

type Outcome = Result<String, String>;

fn slice(n: usize, count: usize, seed: u64) -> Vec<Point> {
    sample_points(
        n,
        &SampleConfig {
            count,
            seed,
            ..SampleConfig::default()
        },
    )
}

fn random_box(dim: usize, count: usize, seed: u64) -> Vec<Point> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| Point::new((0..dim).map(|_| rng.random_range(-1.0..1.0)).collect()).unwrap())
        .collect()
}

fn ensure(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn status_of(entries: &[CheckEntry], id: &str) -> Result<Status, String> {
    entries
        .iter()
        .find(|e| e.id == id)
        .map(|e| e.status)
        .ok_or_else(|| format!("{id} missing"))
}

fn slant_angles() -> Outcome {
    let mut cases: Vec<(&str, Option<f64>, f64, usize)> = Vec::new();
    for a in [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3] {
        cases.push(("ex6_3", Some(a), a, 4));
        cases.push(("ex6_5", Some(a), a, 4));
    }
    cases.push(("ex6_4", None, FRAC_PI_4, 3));
    cases.push(("ex6_6", None, FRAC_PI_4, 6));
    let mut worst: f64 = 0.0;
    for (id, alpha, want, n) in &cases {
        let s =
            registry_example(id, *alpha, StructureVariant::Corrected).map_err(|e| e.to_string())?;
        for p in slice(*n, 20, 42) {
            let d = detect_semi_slant(&s, &p).map_err(|e| e.to_string())?;
            let t = d.theta.ok_or_else(|| format!("{id}: no slant angle"))?;
            worst = worst.max((t - want).abs()).max(d.theta_spread);
        }
    }
    ensure(
        worst <= 1e-6,
        format!(
            "slant angle of {} example runs, max error {worst:.1e}",
            cases.len()
        ),
    )
}

fn ex6_3_spectrum() -> Outcome {
    let s = registry_example("ex6_3", Some(FRAC_PI_3), StructureVariant::Corrected)
        .map_err(|e| e.to_string())?;
    let d = detect_semi_slant(&s, &Point::origin(9)).map_err(|e| e.to_string())?;
    let want = [1.0, 1.0, 0.25, 0.25];
    let err = if d.eigenvalues.len() == want.len() {
        d.eigenvalues
            .iter()
            .zip(want)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    ensure(
        err <= 1e-8 && d.dim_d1() == 2 && d.dim_d2() == 2,
        format!(
            "spectrum {:?}, dim D1 {}, dim D2 {}, error {err:.1e}",
            d.eigenvalues,
            d.dim_d1(),
            d.dim_d2()
        ),
    )
}

fn sasakian_structure() -> Outcome {
    let cfg = FdConfig::default();
    let s = standard_sasakian(2, StructureVariant::Corrected).map_err(|e| e.to_string())?;
    let pts = random_box(5, 100, 2024);
    let alg = check_almost_contact(&s, &pts, &cfg);
    let alg_max = alg.iter().map(|e| e.max_residual).fold(0.0, f64::max);
    let sas = check_sasakian(&s, &pts, &cfg).map_err(|e| e.to_string())?;
    let sas_max = sas.iter().map(|e| e.max_residual).fold(0.0, f64::max);

    let printed = standard_sasakian(2, StructureVariant::AsPrinted).map_err(|e| e.to_string())?;
    let off_slice = [Point::new(vec![0.2, -0.1, 0.7, 0.0, 0.3]).unwrap()];
    let p_alg = check_almost_contact(&printed, &off_slice, &cfg);
    let p_status = status_of(&p_alg, "contact.phi_squared")?;
    let p_res = p_alg[0].max_residual;
    ensure(
        alg_max <= 1e-9
            && alg.iter().all(|e| e.status == Status::Pass)
            && sas_max <= 1e-4
            && sas.iter().all(|e| e.status == Status::Pass)
            && p_status == Status::Finding
            && p_res > 1e-9,
        format!(
            "corrected: algebraic {alg_max:.1e}, sasakian {sas_max:.1e}; printed phi^2 off slice {p_res:.1e} ({p_status:?})"
        ),
    )
}

fn oneill_on_ex6_4() -> Outcome {
    let s =
        registry_example("ex6_4", None, StructureVariant::Corrected).map_err(|e| e.to_string())?;
    let e = check_oneill_properties(&s, &slice(3, 50, 42)).map_err(|e| e.to_string())?;
    let ids = [
        "oneill.t_symmetric",
        "oneill.a_alternating",
        "oneill.a_half_bracket",
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for id in ids {
        let c = e
            .iter()
            .find(|c| c.id == id)
            .ok_or(format!("{id} missing"))?;
        ok &= c.status == Status::Pass;
        parts.push(format!("{id} {:.1e}", c.max_residual));
    }
    ensure(ok, parts.join(", "))
}

fn identities_on_ex6_3() -> Outcome {
    let s = registry_example("ex6_3", Some(FRAC_PI_3), StructureVariant::Corrected)
        .map_err(|e| e.to_string())?;
    let e = check_structure_identities(&s, &slice(4, 50, 42)).map_err(|e| e.to_string())?;
    let required = |id: &str| {
        id.starts_with("slant.")
            || (id.starts_with("decomp.") && !id.ends_with(".printed_sign"))
            || (id.starts_with("square.") && id.ends_with(".corrected"))
            || (id.starts_with("structure.") && !id.ends_with(".printed"))
    };
    let failing: Vec<&str> = e
        .iter()
        .filter(|c| required(&c.id) && c.status != Status::Pass)
        .map(|c| c.id.as_str())
        .collect();
    let n_required = e.iter().filter(|c| required(&c.id)).count();
    let hh = status_of(&e, "square.hh.printed")?;
    ensure(
        failing.is_empty() && hh == Status::Finding,
        format!("{n_required} identities, failing {failing:?}, square.hh.printed {hh:?}"),
    )
}

fn characterizations() -> Outcome {
    let mut disagreements = 0;
    let mut evaluated = 0;
    for (id, alpha, n) in [("ex6_3", Some(FRAC_PI_3), 4), ("ex6_4", None, 3)] {
        let s =
            registry_example(id, alpha, StructureVariant::Corrected).map_err(|e| e.to_string())?;
        let ids = condition_ids();
        let e =
            evaluate_characterization(&s, &ids, &slice(n, 50, 42)).map_err(|e| e.to_string())?;
        for c in &e {
            let cv = c
                .cross_validation
                .as_ref()
                .ok_or(format!("{} has no cross validation", c.id))?;
            disagreements += cv.disagreements;
            evaluated += 1;
        }
    }
    ensure(
        disagreements == 0,
        format!("{evaluated} condition runs, {disagreements} disagreements"),
    )
}

fn oracles() -> Outcome {
    let cfg = FdConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut gamma_err: f64 = 0.0;
    for n in [1usize, 2] {
        let s = standard_sasakian(n, StructureVariant::Corrected).map_err(|e| e.to_string())?;
        let dim = 2 * n + 1;
        for p in random_box(dim, 20, 100 + n as u64) {
            let engine = christoffel(&s.g, &p, &cfg).map_err(|e| e.to_string())?;
            let oracle = sasakian_christoffel_oracle(n, &p);
            for k in 0..dim {
                for i in 0..dim {
                    for j in 0..dim {
                        gamma_err = gamma_err.max((engine.get(k, i, j) - oracle[k][(i, j)]).abs());
                    }
                }
            }
        }
    }
    let s = curved_setup();
    let mut sff_err: f64 = 0.0;
    for p in random_box(3, 20, 8) {
        let l = LocalGeometry::new(&s, &p).map_err(|e| e.to_string())?;
        for _ in 0..5 {
            let x = Vector::from_fn(3, |_, _| rng.random_range(-1.0..1.0));
            let y = Vector::from_fn(3, |_, _| rng.random_range(-1.0..1.0));
            let engine = l.sff(&x, &VectorField::constant(y.clone()));
            sff_err = sff_err.max((engine - sff_oracle(&p, &x, &y)).amax());
        }
    }
    ensure(
        gamma_err <= 1e-8 && sff_err <= 1e-4,
        format!("christoffel error {gamma_err:.1e}, second fundamental form error {sff_err:.1e}"),
    )
}

fn determinism() -> Outcome {
    let cfg = RunConfig::for_example("ex6_4");
    let a = run_suite(&cfg).map_err(|e| e.to_string())?.to_json();
    let b = run_suite(&cfg).map_err(|e| e.to_string())?.to_json();
    ensure(
        a == b,
        format!("two runs, {} bytes each, identical: {}", a.len(), a == b),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("slant angles of the registry examples", slant_angles),
        ("spectrum of ex6_3 at the origin", ex6_3_spectrum),
        ("Sasakian structure on R^5", sasakian_structure),
        ("T and A identities on ex6_4", oneill_on_ex6_4),
        ("structure identities on ex6_3", identities_on_ex6_3),
        (
            "characterizations agree with direct checks",
            characterizations,
        ),
        ("independent oracles", oracles),
        ("deterministic JSON", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (verdict, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {verdict}  {name}: {detail}", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
