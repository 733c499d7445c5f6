//! Closing conditions and certified closed elastica.
//!
//! Rotational (orbitlike, λ² + 4C < 0) members close iff the winding per curvature period
//! Θ(λ, C) is rational m/n. Wavelike members close iff the translational integral
//! vanishes over one cn-period; these are the λ-figure-eights.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use num_traits::Float;

use crate::elastica::{
    self, classify, classify_from_c, killing_params_plus, trace, uniform_grid, ElasticaCase, ElasticaParams,
    KillingParams, Profile, TraceResiduals, DEGENERACY_TOL,
};
use crate::elliptic::{EllipticModulus, JacobiKernel};
use crate::error::{Error, Result};
use crate::hypgeo::{self, SampledCurve};
use crate::quad::{adaptive, GaussLegendre};
use crate::roots::{bisect, interior_grid, scan_values, Bracket};

/// 64/π² − 2: upper end of the figure-eight range, lower end for n = 1 rotational members.
pub fn figure_eight_lambda_max() -> f64 {
    64.0 / (PI * PI) - 2.0
}

/// Closing-condition and certificate residuals of a record.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosingResiduals {
    /// |Θ − m/n| (rotational) or the normalized translational integral (wavelike)
    pub closing: f64,
    /// |γ(L) − γ(0)| / γ₂(0)
    pub closure_gap: f64,
    /// |γ'(L) − γ'(0)| / γ₂(0)
    pub tangent_gap: f64,
    pub unit_speed: f64,
    pub killing: f64,
    /// max |κ_discrete − κ_profile| on the sampled curve
    pub curvature: f64,
    /// |E_discrete / E_closed_form − 1|
    pub energy_rel: f64,
    /// |L_discrete / L − 1|
    pub length_rel: f64,
    /// number of samples the certificate was computed with
    pub samples: usize,
}

/// A certified closed elastica.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClosedElasticaRecord {
    pub params: ElasticaParams,
    pub kp: KillingParams,
    /// winding about the Killing zero (rotational members only)
    pub m: Option<i64>,
    pub n: u32,
    #[cfg_attr(feature = "serde", serde(rename = "L"))]
    pub length: f64,
    pub energy: f64,
    pub total_curvature: i64,
    pub simple: bool,
    pub residuals: ClosingResiduals,
}

/// Certificate thresholds and sampling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifyOptions {
    pub samples: usize,
    pub start_height: f64,
    pub max_closure_gap: f64,
    pub max_tangent_gap: f64,
    pub max_energy_rel: f64,
    pub max_trace_residual: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            samples: 4096,
            start_height: 1.0,
            max_closure_gap: 1e-5,
            max_tangent_gap: 1e-4,
            max_energy_rel: 5e-3,
            max_trace_residual: 1e-6,
        }
    }
}

/// C_deg = −λ − λ²/4, where (λ+2)² + 4C = 4.
pub fn degenerate_c(lambda: f64) -> f64 {
    -lambda - 0.25 * lambda * lambda
}

/// Open C-interval of rotational orbitlike profiles: (−(λ+2)²/4, min(0, −λ²/4)).
pub fn rotational_interval(lambda: f64) -> Result<(f64, f64)> {
    if !(lambda > -1.0) {
        return Err(Error::Domain("rotational elastica need lambda > -1"));
    }
    let lo = -0.25 * (lambda + 2.0) * (lambda + 2.0);
    let hi = (-0.25 * lambda * lambda).min(0.0);
    Ok((lo, hi))
}

/// Θ(λ, C) = (1/π) ∫₀^{2K/r} √(−(λ²+4C)/4) (κ² − λ)/(λ² + 4C + 4κ²) ds.
pub fn winding_per_period(lambda: f64, c: f64) -> Result<f64> {
    let (lo, hi) = rotational_interval(lambda)?;
    if !(c > lo && c < hi) {
        return Err(Error::Domain("winding integral needs a rotational orbitlike profile"));
    }
    let params = classify_from_c(lambda, c)?;
    winding_for(&params)
}

fn winding_for(params: &ElasticaParams) -> Result<f64> {
    let (lambda, c) = (params.lambda, params.c);
    let q = lambda * lambda + 4.0 * c;
    if q >= 0.0 {
        return Err(Error::Domain("winding integral needs lambda^2 + 4C < 0"));
    }
    let min_den = q + 4.0 * (params.kappa0_sq * params.p.map_or(1.0, |p| p.comp_sq()));
    if min_den <= 0.0 || (params.kappa0_sq - lambda - 4.0).abs() <= DEGENERACY_TOL {
        return Err(Error::Degenerate { lambda, kappa0_sq: params.kappa0_sq });
    }
    let p = params.p.ok_or(Error::Domain("winding integral needs an elliptic profile"))?;
    let (p_sq, pc_sq) = (p.p_sq(), p.comp_sq());
    let k0 = params.kappa0_sq;
    let pref = (-q / 4.0).sqrt();
    // φ = am(rs): ds = dφ/(r√(1 − p² sin²φ)), κ² = κ₀²(1 − p² sin²φ); even about π/2.
    // In u = π/2 − φ the weight is (1 − p²) + p² sin²u, free of cancellation near u = 0.
    let v = adaptive(
        |u| {
            let w = pc_sq + p_sq * u.sin().powi(2);
            let k2 = k0 * w;
            (k2 - lambda) / ((q + 4.0 * k2) * w.sqrt())
        },
        0.0,
        FRAC_PI_2,
        1e-15,
        1e-13,
    )?;
    Ok(2.0 * pref * v / (PI * params.r))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Whether (m, n) is admissible for a closed rotational elastica traversed once.
pub fn admissible_winding(m: i64, n: u32) -> bool {
    if n == 0 {
        return false;
    }
    if m == 0 {
        return n == 1;
    }
    let am = m.unsigned_abs();
    !(am > 1 && n > 1 && gcd(am, n as u64) != 1)
}

/// One root C of nΘ(λ, C) = m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationalRoot {
    pub c: f64,
    pub m: i64,
    pub theta: f64,
}

const SCAN_POINTS: usize = 512;

/// All roots of nΘ(λ, C) = m over admissible m with |m| ≤ n + 2 (or only `m_hint`).
/// Errors with "m out of window" when Θ reaches rationals m/n only beyond the window.
pub fn rotational_roots(lambda: f64, n: u32, m_hint: Option<i64>) -> Result<Vec<RotationalRoot>> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1"));
    }
    let (lo, hi) = rotational_interval(lambda)?;
    let cdeg = degenerate_c(lambda);
    let mut pieces = Vec::new();
    if cdeg > lo && cdeg < hi {
        pieces.push((lo, cdeg));
        pieces.push((cdeg, hi));
    } else {
        pieces.push((lo, hi));
    }
    let nf = n as f64;
    let window = (n + 2) as i64;
    let ms: Vec<i64> = match m_hint {
        Some(m) => alloc::vec![m],
        None => (-window..=window).collect(),
    };
    let mut roots = Vec::new();
    let mut theta_min = f64::INFINITY;
    let mut theta_max = f64::NEG_INFINITY;
    for (a, b) in pieces {
        let grid = interior_grid(a, b, SCAN_POINTS);
        let thetas: Vec<f64> = grid.iter().map(|&c| winding_per_period(lambda, c).unwrap_or(f64::NAN)).collect();
        for t in thetas.iter().filter(|t| t.is_finite()) {
            theta_min = theta_min.min(*t);
            theta_max = theta_max.max(*t);
        }
        for &m in &ms {
            if !admissible_winding(m, n) {
                continue;
            }
            let target = m as f64 / nf;
            let vals: Vec<f64> = thetas.iter().map(|t| t - target).collect();
            for br in scan_values(&grid, &vals) {
                if let Some(root) = refine_rotational(lambda, n, m, br) {
                    roots.push(root);
                }
            }
        }
    }
    if roots.is_empty() {
        if m_hint.is_none() && theta_max.is_finite() {
            // integers m with m/n inside the attained range but outside the window
            let lo_m = (theta_min * nf).ceil() as i64;
            let hi_m = (theta_max * nf).floor() as i64;
            if (lo_m..=hi_m).any(|m| m.abs() > window && admissible_winding(m, n)) {
                return Err(Error::MOutOfWindow { n, theta: theta_min });
            }
        }
        return Err(Error::NoRoot("no admissible (m, n) closes at this lambda"));
    }
    roots.sort_by(|x, y| (x.m.abs(), -x.m, x.c).partial_cmp(&(y.m.abs(), -y.m, y.c)).unwrap());
    Ok(roots)
}

fn refine_rotational(lambda: f64, n: u32, m: i64, br: Bracket) -> Option<RotationalRoot> {
    let target = m as f64 / n as f64;
    let f = |c: f64| winding_per_period(lambda, c).map(|t| t - target).unwrap_or(f64::NAN);
    let mut c = bisect(f, br, 1e-12);
    let mut res = f(c).abs();
    if res >= 1e-10 {
        // steep Θ near an end of the interval: keep bisecting to machine width
        c = bisect(f, br, 0.0);
        res = f(c).abs();
    }
    // a sign change across the jump at C_deg never converges in the residual
    (res < 1e-9).then(|| RotationalRoot { c, m, theta: target + f(c) })
}

/// Solves for the closed rotational elastica with n curvature periods. Without a hint
/// the smallest |m| is chosen (positive first).
pub fn solve_rotational_closed(lambda: f64, n: u32, m_hint: Option<i64>) -> Result<ClosedElasticaRecord> {
    solve_rotational_closed_with(lambda, n, m_hint, &CertifyOptions::default())
}

pub fn solve_rotational_closed_with(
    lambda: f64,
    n: u32,
    m_hint: Option<i64>,
    opts: &CertifyOptions,
) -> Result<ClosedElasticaRecord> {
    let roots = rotational_roots(lambda, n, m_hint)?;
    let root = roots[0];
    certify_rotational(lambda, n, root, opts)
}

/// Every certified closed rotational elastica with n periods at this λ.
pub fn solve_rotational_all(lambda: f64, n: u32, opts: &CertifyOptions) -> Result<Vec<ClosedElasticaRecord>> {
    rotational_roots(lambda, n, None)?
        .into_iter()
        .map(|root| certify_rotational(lambda, n, root, opts))
        .collect()
}

fn certify_rotational(lambda: f64, n: u32, root: RotationalRoot, opts: &CertifyOptions) -> Result<ClosedElasticaRecord> {
    let params = classify_from_c(lambda, root.c)?;
    let kp = killing_params_plus(&params, opts.start_height)?;
    let k = JacobiKernel::new(params.p.expect("orbitlike")).k();
    let length = 2.0 * n as f64 * k / params.r;
    let closing = (root.theta - root.m as f64 / n as f64).abs();
    certify(params, kp, Some(root.m), n, length, closing, opts)
}

/// Samples the record's curve with `n` points over one period.
pub fn record_curve(record: &ClosedElasticaRecord, samples: usize) -> Result<SampledCurve> {
    if record.params.case == ElasticaCase::Circular {
        return elastica::circle_with_curvature(record.params.kappa0_sq.sqrt(), record.kp.y, samples);
    }
    elastica::sample_curve(&record.params, &record.kp, &uniform_grid(record.length, samples))
}

fn certify(
    params: ElasticaParams,
    kp: KillingParams,
    m: Option<i64>,
    n: u32,
    length: f64,
    closing: f64,
    opts: &CertifyOptions,
) -> Result<ClosedElasticaRecord> {
    let path = trace(&params, &kp, &uniform_grid(length, opts.samples))?;
    let y0 = path.points[0].y;
    let start = path.points[0].to_complex();
    let end = path.point_at(length)?;
    let closure_gap = (end - start).norm() / y0;
    let tangent_gap = (path.velocity_at(length)? - path.velocity_at(0.0)?).norm() / y0;
    let TraceResiduals { unit_speed, killing } = path.residuals((opts.samples / 256).max(1), 1e-3)?;

    let curve = path.closed_curve()?;
    let kd = hypgeo::hyperbolic_curvature(&curve)?;
    let profile = path.profile();
    let curvature = path.s.iter().zip(&kd).map(|(s, k)| (k - profile.kappa(*s).0).abs()).fold(0.0, f64::max);

    let mut rec = ClosedElasticaRecord {
        params,
        kp,
        m,
        n,
        length,
        energy: 0.0,
        total_curvature: 0,
        simple: hypgeo::is_simple(&curve),
        residuals: ClosingResiduals {
            closing,
            closure_gap,
            tangent_gap,
            unit_speed,
            killing,
            curvature,
            energy_rel: 0.0,
            length_rel: 0.0,
            samples: opts.samples,
        },
    };
    rec.energy = closed_energy(&rec);
    rec.residuals.energy_rel = (hypgeo::energy(&curve, 0.0)? / rec.energy - 1.0).abs();
    rec.residuals.length_rel = (hypgeo::length(&curve)? / length - 1.0).abs();
    let discrete_t = hypgeo::turning_number(&curve)?;
    rec.total_curvature = discrete_t;

    let r = &rec.residuals;
    if !(r.closure_gap < opts.max_closure_gap) {
        return Err(Error::Certificate { what: "closure gap", value: r.closure_gap });
    }
    if !(r.tangent_gap < opts.max_tangent_gap) {
        return Err(Error::Certificate { what: "tangent gap", value: r.tangent_gap });
    }
    if !(r.unit_speed.max(r.killing) < opts.max_trace_residual) {
        return Err(Error::Certificate { what: "parametrization residual", value: r.unit_speed.max(r.killing) });
    }
    if !(r.energy_rel < opts.max_energy_rel) {
        return Err(Error::Certificate { what: "closed-form vs discrete energy", value: r.energy_rel });
    }
    if !(r.length_rel < opts.max_energy_rel) {
        return Err(Error::Certificate { what: "closed-form vs discrete length", value: r.length_rel });
    }
    total_curvature_formula(&rec, discrete_t)?;
    Ok(rec)
}

/// Closed-form bending energy ∫κ² ds of a closed record.
pub fn closed_energy(record: &ClosedElasticaRecord) -> f64 {
    let ps = &record.params;
    let g = 2.0 * ps.lambda + 4.0;
    match ps.case {
        ElasticaCase::Circular => ps.kappa0_sq * record.length,
        ElasticaCase::Orbitlike => {
            let p = ps.p.expect("orbitlike");
            let e = JacobiKernel::new(p).e();
            4.0 * record.n as f64 * g.sqrt() * e / (2.0 - p.p_sq()).sqrt()
        }
        ElasticaCase::Wavelike => {
            let p = ps.p.expect("wavelike");
            let j = JacobiKernel::new(p);
            let n = record.n as f64;
            n * 8.0 * (g / (2.0 * p.p_sq() - 1.0)).sqrt() * (j.e() - p.comp_sq() * j.k())
        }
        ElasticaCase::AsymptoticallyGeodesic => f64::NAN,
    }
}

/// Total curvature predicted for the record, with the orientation sign (and the ± of the
/// κ₀² > λ + 4 branch) resolved against the discrete turning number. Errors when no
/// admissible sign reproduces it.
pub fn total_curvature_formula(record: &ClosedElasticaRecord, discrete: i64) -> Result<i64> {
    let ps = &record.params;
    let candidates: Vec<i64> = match (ps.case, record.m) {
        (ElasticaCase::Wavelike, _) => alloc::vec![0],
        (ElasticaCase::Circular, _) => alloc::vec![1, -1],
        (ElasticaCase::Orbitlike, Some(m)) => {
            if (ps.kappa0_sq - ps.lambda - 4.0).abs() <= DEGENERACY_TOL {
                return Err(Error::Degenerate { lambda: ps.lambda, kappa0_sq: ps.kappa0_sq });
            }
            let n = record.n as i64;
            if ps.kappa0_sq < 4.0 + ps.lambda {
                alloc::vec![m, -m]
            } else {
                alloc::vec![m + n, m - n, -(m + n), -(m - n)]
            }
        }
        _ => return Err(Error::Domain("no total-curvature formula for this record")),
    };
    candidates
        .into_iter()
        .find(|t| *t == discrete)
        .ok_or(Error::Certificate { what: "turning number vs total-curvature formula", value: discrete as f64 })
}

/// E/L of the record.
pub fn reilly_quotient(record: &ClosedElasticaRecord) -> f64 {
    record.energy / record.length
}

/// κ₀² E(p)/K(p) for orbitlike records.
pub fn reilly_closed_form(record: &ClosedElasticaRecord) -> Option<f64> {
    let p = record.params.p?;
    (record.params.case == ElasticaCase::Orbitlike).then(|| {
        let j = JacobiKernel::new(p);
        record.params.kappa0_sq * j.e() / j.k()
    })
}

/// The circular record with κ² = λ + 2 (needs λ > −1); its lowest point sits at height `y`.
pub fn circular_record(lambda: f64, y: f64) -> Result<ClosedElasticaRecord> {
    let params = classify(lambda, lambda + 2.0)?;
    let kappa = params.kappa0_sq.sqrt();
    if !(kappa > 1.0) {
        return Err(Error::Domain("circular elastica are closed only for lambda > -1"));
    }
    // κ = coth ρ, L = 2π sinh ρ = 2π/√(κ² − 1)
    let length = 2.0 * PI / (params.kappa0_sq - 1.0).sqrt();
    let mut rec = ClosedElasticaRecord {
        params,
        kp: KillingParams { a: 0.0, c: 0.0, y },
        m: None,
        n: 1,
        length,
        energy: 0.0,
        total_curvature: 1,
        simple: true,
        residuals: ClosingResiduals::default(),
    };
    rec.energy = closed_energy(&rec);
    Ok(rec)
}

/// ∫₀^{2π} (cos²t − λ/κ₀²) / ((1 − q sin²t) √(1 − p² sin²t)) dt with q = 4κ₀²/(κ₀² − λ)².
pub fn figure_eight_residual(lambda: f64, kappa0_sq: f64) -> Result<f64> {
    let params = classify(lambda, kappa0_sq)?;
    if params.case != ElasticaCase::Wavelike {
        return Err(Error::Domain("figure-eight residual needs a wavelike profile"));
    }
    theta_form(&params)
}

fn theta_form(params: &ElasticaParams) -> Result<f64> {
    let (lambda, k2) = (params.lambda, params.kappa0_sq);
    let q = 4.0 * k2 / ((k2 - lambda) * (k2 - lambda));
    if !(q < 1.0 - DEGENERACY_TOL) {
        return Err(Error::Degenerate { lambda, kappa0_sq: k2 });
    }
    let p = params.p.expect("wavelike");
    let (p_sq, pc_sq) = (p.p_sq(), p.comp_sq());
    let ratio = lambda / k2;
    let d = k2 - lambda;
    let qc = (d * d - 4.0 * k2) / (d * d);
    // period π and even about π/2; in u = π/2 − t: cos²t = sin²u, sin²t = cos²u
    let v = adaptive(
        |u| {
            let s2 = u.sin().powi(2);
            (s2 - ratio) / ((qc + q * s2) * (pc_sq + p_sq * s2).sqrt())
        },
        0.0,
        FRAC_PI_2,
        1e-15,
        1e-13,
    )?;
    Ok(4.0 * v)
}

/// ∫₀^{4K/r} (κ² − λ)/(λ² + 4C + 4κ²) ds for a wavelike profile.
pub fn wavelike_closing_integral(params: &ElasticaParams) -> Result<f64> {
    if params.case != ElasticaCase::Wavelike {
        return Err(Error::Domain("needs a wavelike profile"));
    }
    let profile = Profile::new(params);
    let q = params.lambda * params.lambda + 4.0 * params.c;
    let quarter = 0.5 * profile.half_period().expect("wavelike");
    let rule = GaussLegendre::new(20);
    // κ² is even about 0 and about K/r, so the full period is 4× the quarter
    let v: f64 = rule.doubling(
        |s| {
            let k2 = profile.kappa(s).0.powi(2);
            (k2 - params.lambda) / (q + 4.0 * k2)
        },
        0.0,
        quarter,
        2,
        1e-14,
    )?;
    Ok(4.0 * v)
}

/// Positive factor relating the two forms: s-integral = κ₀²/(r(κ₀² − λ)²) · θ-integral.
pub fn wavelike_form_factor(params: &ElasticaParams) -> f64 {
    let d = params.kappa0_sq - params.lambda;
    params.kappa0_sq / (params.r * d * d)
}

/// κ₀² of the wavelike profile with 1 − p² = e.
fn kappa0_sq_from_e(lambda: f64, e: f64) -> f64 {
    (2.0 * lambda + 4.0) * (1.0 - e) / (1.0 - 2.0 * e)
}

/// Roots κ₀² of the figure-eight residual, found by a log-spaced scan in 1 − p².
pub fn figure_eight_roots(lambda: f64) -> Result<Vec<f64>> {
    if !(lambda > 0.0 && lambda < figure_eight_lambda_max()) {
        return Err(Error::Domain("figure-eights exist for 0 < lambda < 64/pi^2 - 2"));
    }
    // 1 − p² = ½·10^{−t}, t ∈ (0, 11.5): p from 1/√2 up to the modulus cap
    let ts = interior_grid(0.0, 11.5, SCAN_POINTS);
    let k2s: Vec<f64> = ts.iter().rev().map(|t| kappa0_sq_from_e(lambda, 0.5 * 10f64.powf(-t))).collect();
    let vals: Vec<f64> = k2s.iter().map(|&k2| figure_eight_residual(lambda, k2).unwrap_or(f64::NAN)).collect();
    let mut out = Vec::new();
    for br in scan_values(&k2s, &vals) {
        let f = |k2: f64| figure_eight_residual(lambda, k2).unwrap_or(f64::NAN);
        let k2 = bisect(f, br, 1e-12 * br.lo.abs().max(1.0));
        if f(k2).abs() < 1e-8 {
            out.push(k2);
        }
    }
    if out.is_empty() {
        return Err(Error::NoRoot("figure-eight residual has no sign change"));
    }
    Ok(out)
}

/// The λ-figure-eight: closed wavelike elastica with n = 1 and total curvature 0.
pub fn solve_figure_eight(lambda: f64) -> Result<ClosedElasticaRecord> {
    solve_figure_eight_with(lambda, &CertifyOptions::default())
}

pub fn solve_figure_eight_with(lambda: f64, opts: &CertifyOptions) -> Result<ClosedElasticaRecord> {
    let k2 = figure_eight_roots(lambda)?[0];
    let params = classify(lambda, k2)?;
    let kp = killing_params_plus(&params, opts.start_height)?;
    let k = JacobiKernel::new(params.p.expect("wavelike")).k();
    let length = 4.0 * k / params.r;
    let closing = (theta_form(&params)? * wavelike_form_factor(&params)).abs();
    certify(params, kp, None, 1, length, closing, opts)
}

/// One (λ, n) cell of a catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogCell {
    pub lambda: f64,
    pub n: u32,
}

/// Certified rotational records of one cell (all admissible m); no-root cells are empty.
pub fn solve_cell(cell: CatalogCell, opts: &CertifyOptions) -> Result<Vec<ClosedElasticaRecord>> {
    match rotational_roots(cell.lambda, cell.n, None) {
        Ok(roots) => roots.into_iter().map(|r| certify_rotational(cell.lambda, cell.n, r, opts)).collect(),
        Err(Error::NoRoot(_)) => Ok(Vec::new()),
        Err(e) => Err(e),
    }
}

/// Cells for every λ in `lambdas` and 1 ≤ n ≤ n_max.
pub fn catalog_cells(lambdas: &[f64], n_max: u32) -> Vec<CatalogCell> {
    lambdas.iter().flat_map(|&lambda| (1..=n_max).map(move |n| CatalogCell { lambda, n })).collect()
}

/// Deterministic catalog order: λ, case, n, m, C.
pub fn sort_catalog(records: &mut [ClosedElasticaRecord]) {
    records.sort_by(|a, b| {
        let ka = (a.params.lambda, a.params.case as u8, a.n, a.m.unwrap_or(0), a.params.c);
        let kb = (b.params.lambda, b.params.case as u8, b.n, b.m.unwrap_or(0), b.params.c);
        ka.partial_cmp(&kb).unwrap_or(core::cmp::Ordering::Equal)
    });
}

/// Minimum E/L over records with energy ≤ cap, with the per-record 1/K(p) floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReillyScan {
    pub count: usize,
    pub min_ratio: f64,
    /// smallest margin E/L − 1/K(p) over the orbitlike records scanned
    pub min_margin: f64,
}

pub fn reilly_scan(records: &[ClosedElasticaRecord], energy_cap: f64) -> ReillyScan {
    let mut scan = ReillyScan { count: 0, min_ratio: f64::INFINITY, min_margin: f64::INFINITY };
    for r in records.iter().filter(|r| r.energy <= energy_cap) {
        scan.count += 1;
        let q = reilly_quotient(r);
        scan.min_ratio = scan.min_ratio.min(q);
        if let (ElasticaCase::Orbitlike, Some(p)) = (r.params.case, r.params.p) {
            scan.min_margin = scan.min_margin.min(q - 1.0 / JacobiKernel::new(p).k());
        }
    }
    scan
}

/// 1/K(p) for an elliptic modulus.
pub fn inverse_k(p: EllipticModulus) -> f64 {
    1.0 / JacobiKernel::new(p).k()
}
