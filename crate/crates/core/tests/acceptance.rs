//! Acceptance criteria. Runs as a plain binary (`harness = false`) and prints
//! one PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::Command;
use std::time::Instant;

use livshift::bounds::{bound_from_accuracy, AccuracyRecord, Model, System, SystemState};
use livshift::config::Constants;
use livshift::fields::{electric_field, potential_from_source, scalar_potential, DiscretizedSource, PointCharge};
use livshift::helium::{ee_coulomb_integral, helium_ground_shift, sample_pair, HeliumConfig};
use livshift::hydrogenic::{angular_quadratic_element, expect_inv_power, radial_matrix_element, HydrogenicState, QuantumNumbers};
use livshift::numerics::{angular_element_numeric, angular_quadrature, expectation_numeric, mc_integrate};
use livshift::perturbation::{
    degenerate_manifold_shifts, hydrogen_shift_diagonal, manifold_matrix, permanent_stark_shift, spin_orbit_shift,
};
use livshift::tensor::{KappaMatrix, KfTensor};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
        }
    }
}

fn random_kappa(rng: &mut ChaCha8Rng, scale: f64) -> KappaMatrix {
    let mut v = [0.0; 6];
    for x in &mut v {
        *x = rng.random_range(-scale..scale);
    }
    KappaMatrix::new([[v[0], v[1], v[2]], [v[1], v[3], v[4]], [v[2], v[4], v[5]]]).unwrap()
}

fn random_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    let q: [f64; 4] = loop {
        let q = [
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        ];
        let n2: f64 = q.iter().map(|v| v * v).sum();
        if n2 > 1e-2 && n2 <= 1.0 {
            let n = n2.sqrt();
            break [q[0] / n, q[1] / n, q[2] / n, q[3] / n];
        }
    };
    let [w, x, y, z] = q;
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

fn random_point(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let x = [
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
            rng.random_range(-10.0..10.0),
        ];
        if x.iter().map(|v: &f64| v * v).sum::<f64>() > 0.01 {
            return x;
        }
    }
}

fn states(nmax: u32) -> Vec<(u32, u32, i32)> {
    let mut out = Vec::new();
    for n in 1..=nmax {
        for l in 0..n {
            for m in -(l as i32)..=l as i32 {
                out.push((n, l, m));
            }
        }
    }
    out
}

fn frobenius(k: &KappaMatrix) -> f64 {
    k.rows().iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Analytic diagonal shift against direct product quadrature of the wavefunction.
fn hydrogen_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let kappas: Vec<KappaMatrix> = (0..50).map(|_| random_kappa(&mut rng, 1e-3)).collect();
    let mut worst = 0.0f64;
    let mut cases = 0;
    for (n, l, m) in states(5) {
        let s = HydrogenicState::nlm(1.0, n, l, m).unwrap();
        for kappa in &kappas {
            let t = KfTensor::from_kappa(kappa);
            let analytic = hydrogen_shift_diagonal(&s, &t).unwrap().value_hartree;
            let numeric = expectation_numeric(&s, |r, d| 1.0 / r * kappa.quadratic_form(d.unit)).unwrap();
            // guard against accidental cancellation with the natural size of the shift
            let scale = analytic.abs().max(1e-3 * frobenius(kappa) / (n * n) as f64);
            worst = worst.max((analytic - numeric).abs() / scale);
            cases += 1;
        }
    }
    Outcome::new(
        worst <= 1e-8,
        format!("worst relative difference {worst:.2e} over {cases} (state, kappa) pairs, limit 1e-8"),
    )
}

fn radial_moments() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for z in [1.0, 2.0] {
        for n in 1..=5u32 {
            for l in 0..n {
                for k in 1..=3u32 {
                    if k == 3 && l == 0 {
                        continue;
                    }
                    let s = HydrogenicState::nlm(z, n, l, 0).unwrap();
                    let closed = expect_inv_power(&s, k).unwrap();
                    let quad = radial_matrix_element(z, n, l, l, k).unwrap();
                    worst = worst.max((closed - quad).abs() / closed.abs());
                    cases += 1;
                }
            }
        }
    }
    Outcome::new(
        worst <= 1e-10,
        format!("worst relative difference {worst:.2e} over {cases} moments (Z = 1, 2), limit 1e-10"),
    )
}

fn scaling_law() -> Outcome {
    let k = 1e-6;
    let t = KfTensor::uniform(k).unwrap();
    let c = Constants::default();
    let mut spread = 0.0f64;
    let mut worst_target = 0.0f64;
    let mut worst_ev = 0.0f64;
    for z in [1.0, 2.0] {
        let scaled: Vec<f64> = (1..=5u32)
            .map(|n| {
                let r = hydrogen_shift_diagonal(&HydrogenicState::nlm(z, n, 0, 0).unwrap(), &t).unwrap();
                let nn = (n * n) as f64;
                let expected_ev = k * z * z * c.hartree_ev / nn;
                worst_ev = worst_ev.max((r.value_ev - expected_ev).abs() / expected_ev);
                r.value_hartree * nn
            })
            .collect();
        let target = k * z * z;
        for v in &scaled {
            spread = spread.max((v - scaled[0]).abs() / scaled[0].abs());
            worst_target = worst_target.max((v - target).abs() / target);
        }
    }
    Outcome::new(
        spread <= 1e-9 && worst_target <= 1e-9 && worst_ev <= 1e-9,
        format!(
            "n^2 * shift spread {spread:.2e}, vs K*Z^2 {worst_target:.2e}, eV form K*hartree/n^2 {worst_ev:.2e}; limit 1e-9"
        ),
    )
}

fn field_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let h = 1e-5;
    let mut worst_fd = 0.0f64;
    for _ in 0..100 {
        let kappa = random_kappa(&mut rng, 0.05);
        let t = KfTensor::from_kappa(&kappa);
        let x = random_point(&mut rng);
        let c = PointCharge::at_origin(rng.random_range(0.1..5.0));
        let e = electric_field(&x, &c, &t).unwrap();
        let norm = e.iter().map(|v| v * v).sum::<f64>().sqrt();
        for i in 0..3 {
            let (mut xp, mut xm) = (x, x);
            xp[i] += h;
            xm[i] -= h;
            let g = -(scalar_potential(&xp, &c, &t).unwrap() - scalar_potential(&xm, &c, &t).unwrap()) / (2.0 * h);
            worst_fd = worst_fd.max((e[i] - g).abs() / norm);
        }
    }
    let mut worst_offset = 0.0f64;
    for _ in 0..100 {
        let k = rng.random_range(-0.09..0.09);
        let t = KfTensor::uniform(k).unwrap();
        let x = random_point(&mut rng);
        let c = PointCharge::at_origin(rng.random_range(0.1..5.0));
        let green = potential_from_source(&x, &DiscretizedSource::point(&c), &t).unwrap()[0];
        let coulomb = scalar_potential(&x, &c, &t).unwrap();
        let len = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let expected = 3.0 * k * c.q / (4.0 * PI * len);
        worst_offset = worst_offset.max(((green - coulomb) - expected).abs() / expected.abs());
    }
    Outcome::new(
        worst_fd <= 1e-6 && worst_offset <= 1e-10,
        format!(
            "E vs -grad A0 worst {worst_fd:.2e} (limit 1e-6, 100 draws); Green minus Coulomb vs 3Kq/(4pi|X|) worst {worst_offset:.2e} (limit 1e-10)"
        ),
    )
}

fn spin_orbit() -> Outcome {
    let k = 1e-6;
    let t = KfTensor::uniform(k).unwrap();
    let kappa = t.kappa();
    let rule = angular_quadrature(12, 16);
    let mut bracket_err = 0.0f64;
    for m in -1..=1 {
        let b = angular_element_numeric(1, m, 1, m, &rule, |d| {
            2.0 * kappa.quadratic_form(d.unit) - 9.0 * kappa.quadratic_form(d.unit)
        });
        bracket_err = bracket_err.max((b.re + 7.0 * k).abs() / k).max(b.im.abs() / k);
    }

    let level = |tj| HydrogenicState::new(1.0, QuantumNumbers::new(2, 1, 0).unwrap().with_twice_j(tj).unwrap()).unwrap();
    let up = spin_orbit_shift(&level(3), &t).unwrap().value_hartree;
    let down = spin_orbit_shift(&level(1), &t).unwrap().value_hartree;
    let up_err = (up + 7.0 * k / 96.0).abs() / (7.0 * k / 96.0);
    let down_err = (down - 7.0 * k / 48.0).abs() / (7.0 * k / 48.0);

    let state = SystemState::default_for(System::SpinOrbit, HeliumConfig::default());
    let b = bound_from_accuracy(&state, &AccuracyRecord::hydrogen_maser(1e-12).unwrap(), Model::Computed, &Constants::default())
        .unwrap();
    let within = b.ratio > 1.0 / 3.0 && b.ratio < 3.0;
    Outcome::new(
        bracket_err <= 1e-9 && up_err <= 1e-9 && down_err <= 1e-9 && within,
        format!(
            "bracket -7K error {bracket_err:.2e}*K; j=3/2 {up:.6e} (rel {up_err:.1e}), j=1/2 {down:.6e} (rel {down_err:.1e}); bound {:.4e} vs published {:e}, ratio {:.4}",
            b.bound, b.paper_bound, b.ratio
        ),
    )
}

fn helium() -> Outcome {
    let cfg = HeliumConfig {
        z: 2.0,
        mc_samples: 10_000_000,
        ..Default::default()
    };
    let ee = ee_coulomb_integral(&cfg).unwrap();
    let ee_ok = (ee.estimate.value - 1.25).abs() <= 3.0 * ee.estimate.std_error && ee.estimate.std_error <= 2e-3;

    let k = 1e-6;
    let shift = helium_ground_shift(&cfg, &KfTensor::uniform(k).unwrap()).unwrap();
    let expected = (2.0 * 4.0 - 5.0 * 2.0 / 8.0) * k;
    let shift_ok = (shift.value_hartree - expected).abs() <= 3.0 * shift.error_estimate;
    let reference_ok = shift.paper_formula_value_hartree == Some(0.75 * k) && shift.discrepancy_flag;
    Outcome::new(
        ee_ok && shift_ok && reference_ok,
        format!(
            "<1/r12> = {:.6} +- {:.1e} (1.25); shift {:.6e} +- {:.1e} Ha vs (2Z^2 - 5Z/8)K = {expected:.6e}; published closed form {:.2e} Ha, flagged = {}",
            ee.estimate.value,
            ee.estimate.std_error,
            shift.value_hartree,
            shift.error_estimate,
            shift.paper_formula_value_hartree.unwrap_or(f64::NAN),
            shift.discrepancy_flag
        ),
    )
}

fn bound_table_report() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_livshift"))
        .args(["bound", "table", "--accuracy-ev", "1e-12", "--format", "text"])
        .output()
        .expect("binary runs");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    let published = ["2.8e-17", "4.1e-18", "8.7e-13", "3.8e-17"];
    let missing: Vec<&str> = published.iter().copied().filter(|p| !text.contains(p)).collect();
    let rows: Vec<&str> = text.lines().skip(2).take(4).collect();
    let has_columns = rows.len() == 4 && rows.iter().all(|r| r.split_whitespace().count() >= 5);
    let ok = out.status.success() && missing.is_empty() && has_columns;
    let mut detail = format!("exit {:?}, missing {:?}", out.status.code(), missing);
    for r in rows {
        detail.push_str("\n      ");
        detail.push_str(r.trim_end());
    }
    Outcome::new(ok, detail)
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();

    // linearity, exact
    let qn = QuantumNumbers::new(3, 2, 1).unwrap();
    let s = HydrogenicState::new(1.0, qn).unwrap();
    let so = HydrogenicState::new(1.0, qn.with_twice_j(5).unwrap()).unwrap();
    let he = HeliumConfig {
        mc_samples: 1_000_000,
        ..Default::default()
    };
    let shifts = |t: &KfTensor| {
        [
            hydrogen_shift_diagonal(&s, t).unwrap().value_hartree,
            permanent_stark_shift(&s, t).unwrap().value_hartree,
            spin_orbit_shift(&so, t).unwrap().value_hartree,
            helium_ground_shift(&he, t).unwrap().value_hartree,
        ]
    };
    let mut linear_ok = true;
    for _ in 0..20 {
        let t = KfTensor::from_kappa(&random_kappa(&mut rng, 0.02));
        let base = shifts(&t);
        for alpha in [-1.0, 0.5, 2.0] {
            let scaled = shifts(&t.scaled(alpha).unwrap());
            linear_ok &= base.iter().zip(&scaled).all(|(a, b)| *b == alpha * a);
        }
    }
    if !linear_ok {
        failures.push("linearity");
    }

    // rotation invariance of manifold spectra
    let mut worst_rot = 0.0f64;
    for _ in 0..20 {
        let kappa = random_kappa(&mut rng, 0.03);
        let r = random_rotation(&mut rng);
        for n in 1..=3 {
            let a = degenerate_manifold_shifts(n, 1.0, &KfTensor::from_kappa(&kappa), false).unwrap();
            let b = degenerate_manifold_shifts(n, 1.0, &KfTensor::from_kappa(&kappa.rotated(r).unwrap()), false).unwrap();
            for (x, y) in a.eigenvalues_hartree.iter().zip(&b.eigenvalues_hartree) {
                worst_rot = worst_rot.max((x - y).abs());
            }
        }
    }
    if worst_rot > 1e-10 {
        failures.push("rotation invariance");
    }

    // Hermiticity
    let mut worst_herm = 0.0f64;
    for _ in 0..20 {
        let kappa = random_kappa(&mut rng, 0.05);
        for n in 1..=4 {
            let v = manifold_matrix(n, 1.0, &KfTensor::from_kappa(&kappa)).unwrap();
            let d = &v - v.adjoint();
            worst_herm = d.iter().fold(worst_herm, |m, e| m.max(e.norm()));
        }
    }
    if worst_herm > 1e-14 {
        failures.push("Hermiticity");
    }

    // selection rules
    let mut worst_forbidden = 0.0f64;
    let kappa = random_kappa(&mut rng, 0.05);
    for l in 0..=6u32 {
        for lp in 0..=6u32 {
            for m in -(l as i32)..=l as i32 {
                for mp in -(lp as i32)..=lp as i32 {
                    let dl = l.abs_diff(lp);
                    if (dl == 0 || dl == 2) && (m - mp).abs() <= 2 {
                        continue;
                    }
                    let v = angular_quadratic_element(l, m, lp, mp, &kappa).unwrap();
                    worst_forbidden = worst_forbidden.max(v.norm());
                }
            }
        }
    }
    if worst_forbidden >= 1e-14 {
        failures.push("selection rules");
    }

    // Monte Carlo determinism
    let t = KfTensor::uniform(1e-4).unwrap();
    let a = helium_ground_shift(&he, &t).unwrap();
    let b = helium_ground_shift(&he, &t).unwrap();
    let deterministic = a.value_hartree.to_bits() == b.value_hartree.to_bits()
        && a.error_estimate.to_bits() == b.error_estimate.to_bits();
    if !deterministic {
        failures.push("Monte Carlo determinism");
    }

    // standard error ~ 1/sqrt(N) over a 100x sweep
    let inv_r12 = |p: &livshift::helium::ElectronPair| 1.0 / p.separation().1;
    let small = mc_integrate(|r| sample_pair(r, 2.0), inv_r12, 100_000, 3);
    let large = mc_integrate(|r| sample_pair(r, 2.0), inv_r12, 10_000_000, 3);
    let scaling = small.std_error / large.std_error / 10.0;
    if !(1.0 / 1.5..=1.5).contains(&scaling) {
        failures.push("Monte Carlo error scaling");
    }

    Outcome::new(
        failures.is_empty(),
        format!(
            "linearity exact = {linear_ok}; rotation {worst_rot:.1e} (1e-10); Hermiticity {worst_herm:.1e} (1e-14); forbidden elements {worst_forbidden:.1e} (<1e-14); MC bit-identical = {deterministic}; std-error scaling ratio {scaling:.3} (1/1.5..1.5){}",
            if failures.is_empty() { String::new() } else { format!("; failed: {}", failures.join(", ")) }
        ),
    )
}

fn main() {
    // `cargo test` passes harness flags such as `--nocapture`; listing must not run anything.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    // name, check, wall-clock limit in seconds
    type Criterion = (&'static str, fn() -> Outcome, f64);
    let criteria: [Criterion; 8] = [
        ("oracle equivalence (hydrogen)", hydrogen_oracle, 60.0),
        ("closed-form radial moments", radial_moments, f64::INFINITY),
        ("1/n^2 scaling law", scaling_law, f64::INFINITY),
        ("field consistency", field_consistency, f64::INFINITY),
        ("spin-orbit", spin_orbit, f64::INFINITY),
        ("helium", helium, 120.0),
        ("published bound table", bound_table_report, f64::INFINITY),
        ("property suite", property_suite, f64::INFINITY),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed().as_secs_f64();
        let pass = outcome.pass && elapsed < *limit;
        if !pass {
            failed += 1;
        }
        let verdict = if pass { "PASS" } else { "FAIL" };
        let over = if elapsed < *limit { "" } else { " (over time limit)" };
        println!("criterion {} {verdict} {name} [{elapsed:.1} s{over}]: {}", i + 1, outcome.detail);
    }
    let total = start.elapsed().as_secs_f64();
    if total >= 300.0 {
        failed += 1;
        println!("acceptance: suite exceeded 300 s");
    }
    println!("acceptance: {} of 8 criteria passed in {total:.1} s", 8 - failed.min(8));
    if failed > 0 {
        std::process::exit(1);
    }
}
