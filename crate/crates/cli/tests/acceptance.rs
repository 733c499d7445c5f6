//! Acceptance run: one PASS/FAIL line per criterion, tolerances pinned below.
//! Run with `cargo test -p helastica --test acceptance`. The run is a report: it exits
//! 0 so the rest of a workspace test run still executes, unless
//! HELASTICA_ACCEPTANCE_STRICT is set, in which case any FAIL exits 1.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use helastica_core::closing::{self, CertifyOptions, ClosedElasticaRecord};
use helastica_core::elastica::{self, ElasticaCase};
use helastica_core::elliptic::{complete_e, complete_ke, jacobi, EllipticModulus, JacobiKernel};
use helastica_core::flow::{self, FlowOptions, FlowState, StopReason, ZeroTurningStyle};
use helastica_core::hypgeo;
use helastica_core::Error;

const IDENTITY_TOL: f64 = 1e-11;
const DN_SQ_TOL: f64 = 1e-9;
const SPEED_TOL: f64 = 1e-6;
const KILLING_TOL: f64 = 1e-6;
const CURVATURE_TOL: f64 = 1e-4;
const CERT_SAMPLES: usize = 4096;
const CAPTION_C_TOL: f64 = 1e-2;
const FE_SMALL_C_TOL: f64 = 5e-4;
const THRESHOLD_E_MAX: f64 = 16.5;
const DISCRETE_E_MIN: f64 = 15.9;
const REILLY_TOL: f64 = 1e-8;
const REILLY_FACTOR: f64 = 3.0;
const ORACLE_RHO_TOL: f64 = 1e-2;
const TERMINAL_REL: f64 = 1e-2;
const HAUSDORFF_TOL: f64 = 1e-2;
const GROWTH_FACTOR: f64 = 2.0;
const FLOW_E_MIN: f64 = 15.8;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn modulus(p: f64) -> EllipticModulus {
    EllipticModulus::new(p).unwrap()
}

/// Additive-recurrence (R₂) low-discrepancy points in the unit square.
fn r2(i: usize) -> (f64, f64) {
    let g = 1.324_717_957_244_746_f64;
    ((0.5 + i as f64 / g).fract(), (0.5 + i as f64 / (g * g)).fract())
}

fn periodic_trapezoid(f: impl Fn(f64) -> f64, period: f64, n: usize) -> f64 {
    let h = period / n as f64;
    (0..n).map(|i| f(i as f64 * h)).sum::<f64>() * h
}

fn crit1() -> Outcome {
    let mut worst = 0.0f64;
    for i in 0..10_000 {
        let (u, v) = r2(i);
        let (x, p) = (-50.0 + 100.0 * u, 0.999 * v);
        let j = jacobi(x, modulus(p));
        let p2 = p * p;
        worst = worst
            .max((j.sn * j.sn + j.cn * j.cn - 1.0).abs())
            .max((j.dn * j.dn + p2 * j.sn * j.sn - 1.0).abs())
            .max((j.dn * j.dn - p2 * j.cn * j.cn - (1.0 - p2)).abs())
            .max((j.sn - j.am.sin()).abs())
            .max((j.cn - j.am.cos()).abs());
    }
    // derivative identities by a five-point difference of the kernel itself
    let mut worst_d = 0.0f64;
    let h = 1e-3;
    for i in 0..200 {
        let (u, v) = r2(20_000 + i);
        let (x, p) = (-10.0 + 20.0 * u, 0.95 * v);
        let m = modulus(p);
        let f = |s: f64| jacobi(s, m);
        let (a, b, c, d) = (f(x - 2.0 * h), f(x - h), f(x + h), f(x + 2.0 * h));
        let fd = |g: fn(&helastica_core::elliptic::JacobiTriple) -> f64| (g(&a) - 8.0 * g(&b) + 8.0 * g(&c) - g(&d)) / (12.0 * h);
        let j = f(x);
        worst_d = worst_d
            .max((fd(|t| t.sn) - j.cn * j.dn).abs())
            .max((fd(|t| t.cn) + j.sn * j.dn).abs())
            .max((fd(|t| t.dn) + p * p * j.sn * j.cn).abs())
            .max((fd(|t| t.am) - j.dn).abs());
    }
    let mut worst_int = 0.0f64;
    for i in 0..=17 {
        let p = 0.1 + 0.05 * i as f64;
        let k = JacobiKernel::new(modulus(p));
        let half = 0.5 * periodic_trapezoid(|s| k.eval(s).dn.powi(2), 2.0 * k.k(), 4096);
        worst_int = worst_int.max((half - k.e()).abs());
    }
    let upper = PI / (2.0 * 2f64.sqrt());
    let mut mono = true;
    let mut prev = f64::INFINITY;
    for i in 1..1000 {
        let p = i as f64 / 1000.0;
        let f = complete_e(modulus(p)) / (2.0 - p * p).sqrt();
        mono &= f < prev && f > 1.0 && f < upper;
        prev = f;
    }
    let (k0, e0) = complete_ke(modulus(0.0));
    mono &= k0 == FRAC_PI_2 && e0 == FRAC_PI_2;
    outcome(
        worst < IDENTITY_TOL && worst_d < 1e-8 && worst_int < DN_SQ_TOL && mono,
        format!(
            "identities {worst:.1e} (tol {IDENTITY_TOL:e}), derivatives {worst_d:.1e} (tol 1e-8), ∫dn² − E {worst_int:.1e} (tol {DN_SQ_TOL:e}), E/√(2−p²) monotone in bounds: {mono}"
        ),
    )
}

fn certify_opts() -> CertifyOptions {
    CertifyOptions { samples: CERT_SAMPLES, ..Default::default() }
}

/// Closed records of a small catalog: rotational cells plus figure-eights.
fn small_catalog() -> Vec<ClosedElasticaRecord> {
    let opts = certify_opts();
    let mut recs = Vec::new();
    for cell in closing::catalog_cells(&[-0.5, 0.0, 0.3, 0.39], 6) {
        recs.extend(closing::solve_cell(cell, &opts).unwrap_or_default());
    }
    for l in [0.6, 0.3, 0.1, 0.03, 0.01] {
        if let Ok(r) = closing::solve_figure_eight_with(l, &opts) {
            recs.push(r);
        }
    }
    recs
}

fn crit2(catalog: &[ClosedElasticaRecord]) -> Outcome {
    let mut count = [0usize; 3];
    let (mut speed, mut killing, mut curv) = (0.0f64, 0.0f64, 0.0f64);
    let mut failures = Vec::new();
    for r in catalog {
        let grid = elastica::uniform_grid(r.length, CERT_SAMPLES);
        let path = match elastica::trace(&r.params, &r.kp, &grid) {
            Ok(p) => p,
            Err(e) => {
                failures.push(format!("{e}"));
                continue;
            }
        };
        let res = path.residuals(16, 1e-3).unwrap();
        let kd = hypgeo::hyperbolic_curvature(&path.closed_curve().unwrap()).unwrap();
        let kc = grid.iter().zip(&kd).map(|(s, k)| (k - elastica::curvature_profile(&r.params, *s).0).abs()).fold(0.0, f64::max);
        speed = speed.max(res.unit_speed);
        killing = killing.max(res.killing);
        curv = curv.max(kc);
        count[if r.params.case == ElasticaCase::Orbitlike { 0 } else { 1 }] += 1;
    }
    // the asymptotically geodesic case has no closed member; check open arcs
    for lambda in [-0.5, 0.0, 0.7] {
        let params = elastica::classify_from_c(lambda, 0.0).unwrap();
        if params.case != ElasticaCase::AsymptoticallyGeodesic {
            failures.push(format!("λ={lambda}: expected the asymptotically geodesic case"));
            continue;
        }
        let kp = elastica::killing_params_plus(&params, 1.0).unwrap();
        let grid: Vec<f64> = (0..CERT_SAMPLES).map(|i| -6.0 + 12.0 * i as f64 / (CERT_SAMPLES - 1) as f64).collect();
        let path = elastica::trace(&params, &kp, &grid).unwrap();
        let res = path.residuals(16, 1e-3).unwrap();
        let kd = hypgeo::hyperbolic_curvature_open(&path.points).unwrap();
        // open three-point curvature lives on the interior samples
        let kc = (1..CERT_SAMPLES - 1)
            .map(|i| (kd[i - 1].abs() - elastica::curvature_profile(&params, grid[i]).0.abs()).abs())
            .fold(0.0, f64::max);
        speed = speed.max(res.unit_speed);
        killing = killing.max(res.killing);
        curv = curv.max(kc);
        count[2] += 1;
    }
    let total: usize = count.iter().sum();
    outcome(
        failures.is_empty()
            && total >= 20
            && count.iter().all(|&c| c > 0)
            && speed < SPEED_TOL
            && killing < KILLING_TOL
            && curv < CURVATURE_TOL,
        format!(
            "{total} elastica (orbitlike {}, wavelike {}, asymptotically geodesic {}) at N = {CERT_SAMPLES}: speed {speed:.1e}, Killing {killing:.1e}, curvature {curv:.1e}{}",
            count[0],
            count[1],
            count[2],
            if failures.is_empty() { String::new() } else { format!("; failures: {failures:?}") }
        ),
    )
}

fn crit3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (l, c, tol) in [(0.6, 0.36, CAPTION_C_TOL), (0.01, 0.00248, FE_SMALL_C_TOL)] {
        match closing::solve_figure_eight(l) {
            Ok(r) => {
                let good = (r.params.c - c).abs() < tol;
                ok &= good;
                notes.push(format!("fig-8 λ={l}: C={:.5} ({})", r.params.c, if good { "ok" } else { "off" }));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("fig-8 λ={l}: {e}"));
            }
        }
    }
    for (n, c) in [(3, -0.394317), (5, -0.0635), (7, -0.0225), (9, -0.01086)] {
        match closing::solve_rotational_closed(0.0, n, None) {
            Ok(r) => {
                let good = (r.params.c - c).abs() < CAPTION_C_TOL;
                ok &= good;
                notes.push(format!("n={n}: C={:.5}{}", r.params.c, if good { "" } else { " (off)" }));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    // turning-number examples: λ=0.39 near C=−0.54, λ=0.3 near C=−0.38
    for (l, c) in [(0.39, -0.54), (0.3, -0.38)] {
        let near = (1..=12)
            .filter_map(|n| closing::rotational_roots(l, n, None).ok().map(|v| (n, v)))
            .flat_map(|(n, v)| v.into_iter().map(move |r| (n, r)))
            .filter(|(_, r)| (r.c - c).abs() < 2e-2)
            .min_by(|a, b| (a.1.c - c).abs().partial_cmp(&(b.1.c - c).abs()).unwrap());
        match near {
            Some((n, root)) => {
                let rec = closing::solve_rotational_closed(l, n, Some(root.m)).unwrap();
                let discrete = hypgeo::turning_number(&closing::record_curve(&rec, CERT_SAMPLES).unwrap()).unwrap();
                let formula = closing::total_curvature_formula(&rec, discrete);
                let good = discrete.abs() == 4 && formula == Ok(discrete);
                ok &= good;
                notes.push(format!(
                    "λ={l}: n={n} m={} C={:.4} T discrete {discrete}, formula {:?} (want |T| = 4)",
                    root.m, root.c, formula
                ));
            }
            None => {
                ok = false;
                let theta = closing::winding_per_period(l, c).map(|t| format!("{t:.4}")).unwrap_or_else(|e| e.to_string());
                notes.push(format!("λ={l}: no closed member within 0.02 of C={c} for n ≤ 12 (Θ={theta})"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn crit4() -> Outcome {
    let mut ok = true;
    let mut prev = f64::INFINITY;
    let mut rows = Vec::new();
    for l in [0.6, 0.3, 0.1, 0.03, 0.01] {
        let r = match closing::solve_figure_eight(l) {
            Ok(r) => r,
            Err(e) => return outcome(false, format!("λ={l}: {e}")),
        };
        let curve = closing::record_curve(&r, CERT_SAMPLES).unwrap();
        let discrete = hypgeo::energy(&curve, 0.0).unwrap();
        ok &= r.energy > 16.0 && r.energy < prev && !r.simple && !hypgeo::is_simple(&curve) && discrete >= DISCRETE_E_MIN;
        rows.push(format!("{l}: {:.4} (discrete {discrete:.4})", r.energy));
        prev = r.energy;
    }
    ok &= prev <= THRESHOLD_E_MAX;
    outcome(ok, format!("energies {}; none simple", rows.join(", ")))
}

fn crit5(catalog: &[ClosedElasticaRecord]) -> Outcome {
    let mut worst = 0.0f64;
    let mut floor_ok = true;
    let mut n_orbit = 0;
    for r in catalog.iter().filter(|r| r.params.case == ElasticaCase::Orbitlike) {
        n_orbit += 1;
        let q = closing::reilly_quotient(r);
        worst = worst.max((q - closing::reilly_closed_form(r).unwrap()).abs());
        floor_ok &= q >= closing::inverse_k(r.params.p.unwrap());
    }
    let mut scan_set = catalog.to_vec();
    for l in [-0.5, 0.0, 0.3, 0.39] {
        scan_set.extend(closing::circular_record(l, 1.0));
    }
    let scan = closing::reilly_scan(&scan_set, 15.0);
    let q = |l| closing::reilly_quotient(&closing::solve_figure_eight(l).unwrap());
    let factor = q(0.6) / q(0.01);
    let mut prev = f64::INFINITY;
    let mut decreasing = true;
    for l in [0.6, 0.3, 0.1, 0.03, 0.01] {
        decreasing &= q(l) < prev;
        prev = q(l);
    }
    outcome(
        worst < REILLY_TOL && floor_ok && n_orbit > 0 && scan.count > 0 && scan.min_ratio > 0.0 && decreasing && factor >= REILLY_FACTOR,
        format!(
            "{n_orbit} orbitlike: |E/L − κ₀²E/K| ≤ {worst:.1e}, E/L ≥ 1/K: {floor_ok}; {} records below E = 15, min E/L {:.4}; figure-eight E/L decreasing: {decreasing}, factor 0.6→0.01 = {factor:.3} (need ≥ {REILLY_FACTOR})",
            scan.count, scan.min_ratio
        ),
    )
}

fn crit6() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    let grid: Vec<f64> = (1..=20).map(|k| 0.1 * k as f64).collect();
    for rho0 in [0.5, 2.0] {
        let oracle = flow::circle_ode_oracle(rho0, 0.0, &grid).unwrap();
        let mut st = FlowState::new(flow::geodesic_circle(rho0, 512).unwrap(), 0.0, 1e-5).unwrap();
        let opts = FlowOptions::default();
        let mut dev = 0.0f64;
        for (t, r) in grid.iter().zip(&oracle) {
            let d = flow::evolve(&mut st, *t, u64::MAX, &opts);
            if d.stop != StopReason::EndTime {
                return outcome(false, format!("ρ₀={rho0}: stopped {:?} at t={t}", d.stop));
            }
            dev = dev.max((flow::circle_radius(&st.curve).unwrap() - r).abs());
        }
        let d = flow::evolve(&mut st, 30.0, u64::MAX, &FlowOptions { dt_max: 1e-2, ..Default::default() });
        let last = d.last().copied().unwrap();
        let kerr = (last.max_kappa / 2f64.sqrt() - 1.0).abs();
        let eerr = (last.energy / (4.0 * PI) - 1.0).abs();
        let haus = flow::hausdorff_to_clifford(&st.curve).unwrap();
        let good = d.stop == StopReason::EndTime && dev < ORACLE_RHO_TOL && kerr < TERMINAL_REL && eerr < TERMINAL_REL && haus < HAUSDORFF_TOL;
        ok &= good;
        notes.push(format!(
            "ρ₀={rho0}: |ρ − ρ_oracle| ≤ {dev:.1e} to t=2, at t=30 κ rel {kerr:.1e}, E rel {eerr:.1e}, Hausdorff {haus:.1e}, forced-remesh E rise {:.1e}",
            st.remesh_energy_rise
        ));
    }
    outcome(ok, notes.join("; "))
}

fn crit7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (name, style) in [
        ("lemniscate", ZeroTurningStyle::Lemniscate),
        ("figure-eight λ=0.1", ZeroTurningStyle::FigureEight { lambda: 0.1 }),
    ] {
        let c = flow::make_zero_turning_curve(style, 1.0, 1024).unwrap();
        let mut st = FlowState::new(c, 0.0, 1e-5).unwrap();
        let d = flow::evolve(&mut st, 2e4, 200, &FlowOptions { dt_max: 1.0, ..Default::default() });
        if let StopReason::Failed(e) = d.stop {
            ok = false;
            notes.push(format!("{name}: failed: {e}"));
            continue;
        }
        let (first, last) = (d.samples[0], *d.last().unwrap());
        let q = d.samples.len() * 3 / 4;
        let tail = &d.samples[q..];
        let trend = tail.last().unwrap().length - tail[0].length;
        let e_ok = d.samples.iter().all(|s| s.energy >= FLOW_E_MIN && s.energy <= first.energy);
        let t_ok = d.samples.iter().all(|s| s.turning == 0);
        let growth = last.length / first.length;
        let good = growth >= GROWTH_FACTOR && trend > 0.0 && e_ok && t_ok;
        ok &= good;
        notes.push(format!(
            "{name}: L ×{growth:.2} by t={:.0} ({:?}), final-quartile ΔL {trend:+.3}, E {:.3}→{:.3} in [{FLOW_E_MIN}, E₀]: {e_ok}, T=0 throughout: {t_ok}, forced-remesh E rise {:.1e}",
            last.t, d.stop, first.energy, last.energy, st.remesh_energy_rise
        ));
    }
    outcome(ok, notes.join("; "))
}

fn crit8() -> Outcome {
    let mut checks = Vec::new();
    checks.push(("κ₀² < λ+2 refused", matches!(elastica::classify(0.0, 1.0), Err(Error::NoElastica { .. }))));
    checks.push(("κ₀² = λ+4 flagged", matches!(elastica::classify(0.5, 4.5), Err(Error::Degenerate { .. }))));
    // the asymptotically geodesic profile sits on the boundary of the rotational interval
    // and has no period, so neither closing condition can be posed for it
    let ag = elastica::classify_from_c(0.0, 0.0).unwrap();
    let no_ag = ag.case == ElasticaCase::AsymptoticallyGeodesic
        && ag.p.is_none()
        && closing::winding_per_period(0.0, ag.c).is_err()
        && elastica::Profile::new(&ag).half_period().is_none();
    checks.push(("no closed asymptotically geodesic record", no_ag));
    checks.push(("λ=0, n=1 has no root", matches!(closing::solve_rotational_closed(0.0, 1, None), Err(Error::NoRoot(_)))));
    let thr = closing::figure_eight_lambda_max();
    checks.push(("threshold 64/π²−2 ≈ 4.48", (thr - 4.4845).abs() < 1e-3));
    let ok = checks.iter().all(|c| c.1);
    outcome(
        ok,
        checks.iter().map(|(n, b)| format!("{n}: {}", if *b { "yes" } else { "NO" })).collect::<Vec<_>>().join("; "),
    )
}

fn main() {
    let started = Instant::now();
    let catalog_time = Instant::now();
    let catalog = small_catalog();
    let catalog_time = catalog_time.elapsed();
    type Crit<'a> = (u32, &'a str, Duration, Box<dyn Fn() -> Outcome + 'a>);
    let crits: Vec<Crit> = vec![
        (1, "elliptic kernel", Duration::from_secs(5), Box::new(crit1)),
        (2, "parametrization certificate", Duration::from_secs(60), Box::new(|| crit2(&catalog))),
        (3, "figure reproduction", Duration::from_secs(120), Box::new(crit3)),
        (4, "threshold energy", Duration::from_secs(120), Box::new(crit4)),
        (5, "Reilly structure", Duration::from_secs(120), Box::new(|| crit5(&catalog))),
        (6, "flow convergence below threshold", Duration::from_secs(600), Box::new(crit6)),
        (7, "flow growth above threshold", Duration::from_secs(1800), Box::new(crit7)),
        (8, "structural refusals", Duration::from_secs(5), Box::new(crit8)),
    ];
    let mut failed = 0;
    for (id, name, budget, f) in crits {
        let t = Instant::now();
        let mut o = f();
        let mut el = t.elapsed();
        if id == 2 {
            // the certificate includes building the records it checks
            el += catalog_time;
        }
        if el > budget {
            o.pass = false;
            o.detail.push_str(&format!("; over the {}s budget", budget.as_secs()));
        }
        if !o.pass {
            failed += 1;
        }
        println!("{} {id}. {name} [{:.1}s]: {}", if o.pass { "PASS" } else { "FAIL" }, el.as_secs_f64(), o.detail);
    }
    println!("acceptance: {} of 8 passed in {:.1}s", 8 - failed, started.elapsed().as_secs_f64());
    if failed > 0 && std::env::var_os("HELASTICA_ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
