//! L²-gradient flow of E_λ = ∫(κ² + λ) ds for closed curves in the upper half-plane.
//!
//! Normal speed V = 2∂ₛ²κ + κ³ − (2+λ)κ. The stepping uses V as the exact first
//! variation of the sampled energy (a consistent discretization of that formula), so
//! the energy-decrease acceptance rule can always be met by a small enough step.
//! The stiff 2∂ₛ⁴ part is treated implicitly with frozen coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_traits::Float;

use crate::closing;
use crate::error::{Error, Result};
use crate::hypgeo::{self, HPoint, Parametrization, SampledCurve, D1, D2};

/// Per-sample local quantities of the centered-difference discretization.
#[derive(Debug, Clone, Copy)]
struct Local {
    x1: f64,
    y1: f64,
    x2: f64,
    y2: f64,
    y: f64,
}

impl Local {
    fn at(pts: &[HPoint], i: usize) -> Self {
        let [x1, y1, x2, y2] = hypgeo::derivative_at(pts, i);
        Self { x1, y1, x2, y2, y: pts[i].y }
    }

    fn speed(&self) -> f64 {
        (self.x1 * self.x1 + self.y1 * self.y1).sqrt()
    }

    /// κ = y·k_E + T₁ with k_E the Euclidean curvature.
    fn kappa(&self) -> f64 {
        let s = self.speed();
        let cr = self.x1 * self.y2 - self.y1 * self.x2;
        self.y * cr / (s * s * s) + self.x1 / s
    }
}

/// Sampled E_λ = Σ (κᵢ² + λ) σᵢ with σᵢ = |γ'ᵢ|/yᵢ; agrees with [`hypgeo::energy`].
pub fn discrete_energy(curve: &SampledCurve, lambda: f64) -> f64 {
    let pts = curve.points();
    (0..pts.len())
        .map(|i| {
            let l = Local::at(pts, i);
            let k = l.kappa();
            (k * k + lambda) * l.speed() / l.y
        })
        .sum()
}

/// ∂E/∂pⱼ for every sample (x and y components).
fn energy_gradient(pts: &[HPoint], lambda: f64) -> Vec<[f64; 2]> {
    let n = pts.len();
    let mut g = vec![[0.0; 2]; n];
    for i in 0..n {
        let Local { x1, y1, x2, y2, y } = Local::at(pts, i);
        let s = (x1 * x1 + y1 * y1).sqrt();
        let s3 = s * s * s;
        let s5 = s3 * s * s;
        let cr = x1 * y2 - y1 * x2;
        let k = y * cr / s3 + x1 / s;
        let kx1 = y * y2 / s3 - 3.0 * y * cr * x1 / s5 + 1.0 / s - x1 * x1 / s3;
        let ky1 = -y * x2 / s3 - 3.0 * y * cr * y1 / s5 - x1 * y1 / s3;
        let kx2 = -y * y1 / s3;
        let ky2 = y * x1 / s3;
        let ky = cr / s3;
        let f = k * k + lambda;
        let w = 2.0 * k * s / y;
        let ex1 = w * kx1 + f * x1 / (s * y);
        let ey1 = w * ky1 + f * y1 / (s * y);
        let ex2 = w * kx2;
        let ey2 = w * ky2;
        let ey = w * ky - f * s / (y * y);
        for k in 0..5 {
            let j = (i + n + k - 2) % n;
            g[j][0] += D1[k] * ex1 + D2[k] * ex2;
            g[j][1] += D1[k] * ey1 + D2[k] * ey2;
        }
        g[i][1] += ey;
    }
    g
}

/// Euclidean unit normal n = (−T₂, T₁) and hyperbolic speed σ at each sample.
fn normals(pts: &[HPoint]) -> (Vec<[f64; 2]>, Vec<f64>) {
    (0..pts.len())
        .map(|i| {
            let l = Local::at(pts, i);
            let s = l.speed();
            ([-l.y1 / s, l.x1 / s], s / l.y)
        })
        .unzip()
}

/// Normal speed V with dE_λ = Σ Vᵢ uᵢ σᵢ for hyperbolic normal displacements uᵢ,
/// i.e. the L²(ds) gradient of the sampled energy. Flow velocity is −V·N.
pub fn gradient(curve: &SampledCurve, lambda: f64) -> Result<Vec<f64>> {
    let pts = curve.points();
    check_segments(pts)?;
    let g = energy_gradient(pts, lambda);
    let (nrm, sigma) = normals(pts);
    Ok((0..pts.len()).map(|i| (g[i][0] * nrm[i][0] + g[i][1] * nrm[i][1]) * pts[i].y / sigma[i]).collect())
}

/// V = 2∂ₛ²κ + κ³ − (2+λ)κ evaluated directly: κ from the five-point stencils, ∂ₛ²κ by the
/// compact three-point stencil on the hyperbolic arclength spacing.
pub fn gradient_formula(curve: &SampledCurve, lambda: f64) -> Result<Vec<f64>> {
    let pts = curve.points();
    check_segments(pts)?;
    let n = pts.len();
    let k = hypgeo::hyperbolic_curvature(curve)?;
    // half-step spacings σ_{i+½} from the hyperbolic length of each chord
    let half: Vec<f64> = (0..n).map(|i| chord_length(pts[i], pts[(i + 1) % n])).collect();
    Ok((0..n)
        .map(|i| {
            let (a, c) = ((i + n - 1) % n, (i + 1) % n);
            let (hm, hp) = (half[a], half[i]);
            let kss = ((k[c] - k[i]) / hp - (k[i] - k[a]) / hm) / (0.5 * (hm + hp));
            2.0 * kss + k[i] * k[i] * k[i] - (2.0 + lambda) * k[i]
        })
        .collect())
}

/// Hyperbolic distance between two points.
pub fn distance(p: HPoint, q: HPoint) -> f64 {
    let d2 = (p.x - q.x).powi(2) + (p.y - q.y).powi(2);
    2.0 * (0.5 * d2.sqrt() / (p.y * q.y).sqrt()).asinh()
}

fn chord_length(p: HPoint, q: HPoint) -> f64 {
    distance(p, q)
}

fn check_segments(pts: &[HPoint]) -> Result<()> {
    let n = pts.len();
    for i in 0..n {
        let c = pts[(i + 1) % n];
        let a = pts[(i + n - 1) % n];
        if a.x == c.x && a.y == c.y {
            return Err(Error::DegenerateSegment { index: i });
        }
    }
    Ok(())
}

/// Symmetric positive definite matrix with a skyline profile: row i is stored from
/// column lo[i] to i. Factorized in place by Cholesky (the profile has no fill-in).
struct Skyline {
    lo: Vec<usize>,
    rows: Vec<Vec<f64>>,
}

impl Skyline {
    fn new<F: Fn(usize, usize) -> f64>(lo: Vec<usize>, a: F) -> Self {
        let rows = lo.iter().enumerate().map(|(i, &l)| (l..=i).map(|j| a(i, j)).collect()).collect();
        Self { lo, rows }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        if j < self.lo[i] {
            0.0
        } else {
            self.rows[i][j - self.lo[i]]
        }
    }

    fn factor(&mut self) -> Result<()> {
        let n = self.lo.len();
        for i in 0..n {
            for j in self.lo[i]..=i {
                let k0 = self.lo[i].max(self.lo[j]);
                let mut sum = self.get(i, j);
                for k in k0..j {
                    sum -= self.get(i, k) * self.get(j, k);
                }
                let v = if i == j {
                    if !(sum > 0.0) {
                        return Err(Error::Domain("matrix is not positive definite"));
                    }
                    sum.sqrt()
                } else {
                    sum / self.get(j, j)
                };
                self.rows[i][j - self.lo[i]] = v;
            }
        }
        Ok(())
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n {
            let mut s = b[i];
            for k in self.lo[i]..i {
                s -= self.get(i, k) * b[k];
            }
            b[i] = s / self.get(i, i);
        }
        // Lᵀ x = z: column sweep
        for i in (0..n).rev() {
            b[i] /= self.get(i, i);
            let bi = b[i];
            for k in self.lo[i]..i {
                b[k] -= self.get(i, k) * bi;
            }
        }
    }
}

fn cyclic_dist(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j);
    d.min(n - d)
}

/// D⁴ = D₂² with D₂ the five-point second difference: a symmetric nine-point stencil,
/// the leading part of the Hessian of the sampled energy.
fn d4_stencil() -> [f64; 5] {
    let mut s = [0.0; 5];
    for (k, sk) in s.iter_mut().enumerate() {
        // offset k ≥ 0: Σ_j D₂[j] D₂[j + k]
        for j in 0..5 {
            if j + k < 5 {
                *sk += D2[j] * D2[j + k];
            }
        }
    }
    s
}

/// Solves (diag(d) + c·D⁴) u = b with the periodic nine-point D⁴.
fn solve_cyclic_d4(d: &[f64], c: f64, b: &mut [f64]) -> Result<()> {
    let n = d.len();
    let st = d4_stencil();
    let lo: Vec<usize> = (0..n).map(|i| if i + 4 >= n { 0 } else { i.saturating_sub(4) }).collect();
    let mut m = Skyline::new(lo, |i, j| {
        let k = cyclic_dist(i, j, n);
        let v = if k <= 4 { c * st[k] } else { 0.0 };
        v + if i == j { d[i] } else { 0.0 }
    });
    m.factor()?;
    m.solve(b);
    Ok(())
}

/// Periodic cubic spline through `pts` at knots `t` with period `period`.
struct PeriodicSpline {
    t: Vec<f64>,
    period: f64,
    x: Vec<f64>,
    y: Vec<f64>,
    mx: Vec<f64>,
    my: Vec<f64>,
}

impl PeriodicSpline {
    fn new(pts: &[HPoint], t: Vec<f64>, period: f64) -> Result<Self> {
        let n = pts.len();
        let h: Vec<f64> = (0..n).map(|i| if i + 1 < n { t[i + 1] - t[i] } else { period - t[i] + t[0] }).collect();
        let lo: Vec<usize> = (0..n).map(|i| if i + 1 >= n { 0 } else { i.saturating_sub(1) }).collect();
        let mut m = Skyline::new(lo, |i, j| {
            if i == j {
                2.0 * (h[(i + n - 1) % n] + h[i])
            } else if (j + 1) % n == i {
                h[j]
            } else if (i + 1) % n == j {
                h[i]
            } else {
                0.0
            }
        });
        m.factor()?;
        let x: Vec<f64> = pts.iter().map(|p| p.x).collect();
        let y: Vec<f64> = pts.iter().map(|p| p.y).collect();
        let rhs = |f: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|i| {
                    let a = (i + n - 1) % n;
                    let c = (i + 1) % n;
                    6.0 * ((f[c] - f[i]) / h[i] - (f[i] - f[a]) / h[a])
                })
                .collect()
        };
        let mut mx = rhs(&x);
        let mut my = rhs(&y);
        m.solve(&mut mx);
        m.solve(&mut my);
        Ok(Self { t, period, x, y, mx, my })
    }

    /// Position and derivative on interval `i` at local offset `u` ∈ [0, hᵢ].
    fn eval(&self, i: usize, u: f64) -> ([f64; 2], [f64; 2]) {
        let n = self.t.len();
        let j = (i + 1) % n;
        let h = if i + 1 < n { self.t[i + 1] - self.t[i] } else { self.period - self.t[i] + self.t[0] };
        let (a, b) = ((h - u) / h, u / h);
        let cub = |f: &[f64], m: &[f64]| {
            let v = a * f[i] + b * f[j] + ((a * a * a - a) * m[i] + (b * b * b - b) * m[j]) * h * h / 6.0;
            let d = (f[j] - f[i]) / h + ((1.0 - 3.0 * a * a) * m[i] + (3.0 * b * b - 1.0) * m[j]) * h / 6.0;
            (v, d)
        };
        let (x, dx) = cub(&self.x, &self.mx);
        let (y, dy) = cub(&self.y, &self.my);
        ([x, y], [dx, dy])
    }

    fn interval(&self, i: usize) -> f64 {
        let n = self.t.len();
        if i + 1 < n {
            self.t[i + 1] - self.t[i]
        } else {
            self.period - self.t[i] + self.t[0]
        }
    }
}

/// Resamples the curve at `n` points uniform in hyperbolic arclength, keeping sample 0.
pub fn reparametrize(curve: &SampledCurve, n: usize) -> Result<SampledCurve> {
    let pts = curve.points();
    let m = pts.len();
    // knots at cumulative hyperbolic chord length
    let mut t = Vec::with_capacity(m);
    let mut acc = 0.0;
    for i in 0..m {
        t.push(acc);
        acc += chord_length(pts[i], pts[(i + 1) % m]);
    }
    let spline = PeriodicSpline::new(pts, t, acc)?;
    // hyperbolic arclength on SUB sub-pieces of each interval (4-point Gauss–Legendre)
    const SUB: usize = 8;
    const GX: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
    const GW: [f64; 4] = [0.347_854_845_137_453_9, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
    let mut nodes = Vec::with_capacity(m * SUB + 1);
    let mut cum = 0.0;
    for i in 0..m {
        let h = spline.interval(i);
        let dh = h / SUB as f64;
        for k in 0..SUB {
            nodes.push((i, k as f64 * dh, cum));
            let mid = (k as f64 + 0.5) * dh;
            let mut piece = 0.0;
            for (x, w) in GX.iter().zip(&GW) {
                let (p, d) = spline.eval(i, mid + 0.5 * dh * x);
                if !(p[1] > 0.0) {
                    return Err(Error::ModelBreakdown { time: f64::NAN });
                }
                piece += w * (d[0] * d[0] + d[1] * d[1]).sqrt() / p[1];
            }
            cum += 0.5 * dh * piece;
        }
    }
    let total = cum;
    let mut out = Vec::with_capacity(n);
    let mut j = 0;
    for k in 0..n {
        let target = total * k as f64 / n as f64;
        while j + 1 < nodes.len() && nodes[j + 1].2 <= target {
            j += 1;
        }
        let (i, u0, s0) = nodes[j];
        let s1 = if j + 1 < nodes.len() { nodes[j + 1].2 } else { total };
        let dh = spline.interval(i) / SUB as f64;
        let u = u0 + dh * if s1 > s0 { (target - s0) / (s1 - s0) } else { 0.0 };
        let (p, _) = spline.eval(i, u);
        out.push(HPoint::new(p[0], p[1])?);
    }
    SampledCurve::new(out, Parametrization::HyperbolicArclength, Some(total))
}

/// max |σᵢ/σ̄ − 1| of the hyperbolic speed.
pub fn speed_nonuniformity(curve: &SampledCurve) -> f64 {
    let sp = hypgeo::hyperbolic_speed(curve);
    let mean = sp.iter().sum::<f64>() / sp.len() as f64;
    sp.iter().map(|s| (s / mean - 1.0).abs()).fold(0.0, f64::max)
}

/// Step control.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct FlowOptions {
    pub dt0: f64,
    pub dt_max: f64,
    pub dt_min: f64,
    /// accepted energy rise, relative to 1 + |E|
    pub energy_tol: f64,
    pub grow_after: u32,
    pub growth: f64,
    pub remesh_every: u32,
    /// forced remesh when the hyperbolic speed departs this far from uniform
    pub max_nonuniformity: f64,
    pub blowup_ratio: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            dt0: 1e-4,
            dt_max: 1e-3,
            dt_min: 1e-14,
            energy_tol: 1e-12,
            grow_after: 10,
            growth: 1.5,
            remesh_every: 25,
            max_nonuniformity: 0.2,
            blowup_ratio: 1e6,
        }
    }
}

#[derive(Debug, Clone)]
pub struct FlowState {
    pub curve: SampledCurve,
    pub time: f64,
    pub dt: f64,
    pub lambda: f64,
    pub step_count: u64,
    pub energy: f64,
    pub rejected: u64,
    pub remeshes: u64,
    pub forced_remeshes: u64,
    /// total energy increase caused by forced remeshes (the only non-step energy change)
    pub remesh_energy_rise: f64,
    streak: u32,
    since_remesh: u32,
}

impl FlowState {
    pub fn new(curve: SampledCurve, lambda: f64, dt0: f64) -> Result<Self> {
        if !(dt0 > 0.0) {
            return Err(Error::Domain("dt must be positive"));
        }
        check_segments(curve.points())?;
        let energy = discrete_energy(&curve, lambda);
        if !energy.is_finite() {
            return Err(Error::InvalidCurve("energy of the initial curve is not finite"));
        }
        Ok(Self {
            curve,
            time: 0.0,
            dt: dt0,
            lambda,
            step_count: 0,
            energy,
            rejected: 0,
            remeshes: 0,
            forced_remeshes: 0,
            remesh_energy_rise: 0.0,
            streak: 0,
            since_remesh: 0,
        })
    }
}

/// Candidate update with step `dt`; None when a sample leaves the half-plane.
fn trial(curve: &SampledCurve, lambda: f64, dt: f64) -> Result<Option<SampledCurve>> {
    let pts = curve.points();
    let v = gradient(curve, lambda)?;
    let (nrm, sigma) = normals(pts);
    let d: Vec<f64> = sigma.iter().map(|s| s.powi(4)).collect();
    let mut u: Vec<f64> = v.iter().zip(&d).map(|(v, d)| -dt * d * v).collect();
    solve_cyclic_d4(&d, 2.0 * dt, &mut u)?;
    let mut out = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        let y = pts[i].y;
        let p = HPoint { x: pts[i].x + u[i] * y * nrm[i][0], y: y + u[i] * y * nrm[i][1] };
        if !(p.y > 0.0) || !p.x.is_finite() {
            return Ok(None);
        }
        out.push(p);
    }
    Ok(SampledCurve::new(out, curve.param(), None).ok())
}

/// Step length that lands exactly on `t_end` without disturbing the controller.
fn capped_dt(state: &FlowState, t_end: f64) -> f64 {
    state.dt.min(t_end - state.time)
}

/// One accepted semi-implicit step (dt halved on rejection). Errors: stiffness when dt
/// underflows, model breakdown when every candidate leaves the half-plane.
pub fn step(state: &mut FlowState, opts: &FlowOptions) -> Result<()> {
    step_to(state, opts, f64::INFINITY)
}

fn step_to(state: &mut FlowState, opts: &FlowOptions, t_end: f64) -> Result<()> {
    if speed_nonuniformity(&state.curve) > opts.max_nonuniformity {
        // sampling too uneven for the stencils: resample even if E rises slightly
        state.curve = reparametrize(&state.curve, state.curve.len())?;
        let e = discrete_energy(&state.curve, state.lambda);
        state.remesh_energy_rise += (e - state.energy).max(0.0);
        state.energy = e;
        state.forced_remeshes += 1;
    }
    let mut left_plane = false;
    loop {
        let dt = capped_dt(state, t_end);
        if state.dt < opts.dt_min {
            return Err(if left_plane {
                Error::ModelBreakdown { time: state.time }
            } else {
                Error::Stiffness { time: state.time, dt: state.dt }
            });
        }
        match trial(&state.curve, state.lambda, dt)? {
            None => left_plane = true,
            Some(c) => {
                let e = discrete_energy(&c, state.lambda);
                if e.is_finite() && e <= state.energy + opts.energy_tol * (1.0 + state.energy.abs()) {
                    state.curve = c;
                    state.energy = e;
                    state.time = if dt == t_end - state.time { t_end } else { state.time + dt };
                    state.step_count += 1;
                    state.streak += 1;
                    state.since_remesh += 1;
                    if state.streak >= opts.grow_after {
                        state.dt = (state.dt * opts.growth).min(opts.dt_max);
                        state.streak = 0;
                    }
                    break;
                }
                left_plane = false;
            }
        }
        state.rejected += 1;
        state.streak = 0;
        state.dt *= 0.5;
    }
    if state.since_remesh >= opts.remesh_every {
        state.since_remesh = 0;
        if let Ok(c) = reparametrize(&state.curve, state.curve.len()) {
            let e = discrete_energy(&c, state.lambda);
            // keep the energy sequence monotone: a remesh that raises E is skipped
            if e <= state.energy {
                state.curve = c;
                state.energy = e;
                state.remeshes += 1;
            }
        }
    }
    Ok(())
}

/// One row of flow diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DiagnosticSample {
    pub t: f64,
    /// E_λ
    pub energy: f64,
    pub length: f64,
    /// bending energy over length, E₀/L
    pub ratio: f64,
    pub turning: i64,
    pub min_y: f64,
    pub max_kappa: f64,
}

pub fn diagnose(state: &FlowState) -> Result<DiagnosticSample> {
    let c = &state.curve;
    let k = hypgeo::hyperbolic_curvature(c)?;
    let length = hypgeo::length(c)?;
    let e0 = discrete_energy(c, 0.0);
    Ok(DiagnosticSample {
        t: state.time,
        energy: state.energy,
        length,
        ratio: e0 / length,
        turning: hypgeo::turning_number(c)?,
        min_y: c.min_y(),
        max_kappa: k.iter().map(|k| k.abs()).fold(0.0, f64::max),
    })
}

/// Why a run ended.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StopReason {
    EndTime,
    /// max y / min y exceeded the sentinel
    BlowUp,
    Failed(Error),
}

#[derive(Debug, Clone)]
pub struct FlowDiagnostics {
    pub samples: Vec<DiagnosticSample>,
    pub stop: StopReason,
}

impl FlowDiagnostics {
    pub fn last(&self) -> Option<&DiagnosticSample> {
        self.samples.last()
    }

    /// Whether the turning number is the same at every sample.
    pub fn turning_constant(&self) -> bool {
        self.samples.windows(2).all(|w| w[0].turning == w[1].turning)
    }
}

/// Steps until `t_end`, the blow-up sentinel, or a failure; samples diagnostics every
/// `sample_every` accepted steps (plus the first and last state). `on_sample` sees the
/// state at each sample. On failure the state holds the last accepted curve.
pub fn evolve_with<F: FnMut(&FlowState, &DiagnosticSample)>(
    state: &mut FlowState,
    t_end: f64,
    sample_every: u64,
    opts: &FlowOptions,
    mut on_sample: F,
) -> FlowDiagnostics {
    let every = sample_every.max(1);
    let mut samples = Vec::new();
    let mut record = |state: &FlowState, samples: &mut Vec<DiagnosticSample>| -> Result<()> {
        let d = diagnose(state)?;
        on_sample(state, &d);
        samples.push(d);
        Ok(())
    };
    if let Err(e) = record(state, &mut samples) {
        return FlowDiagnostics { samples, stop: StopReason::Failed(e) };
    }
    let stop = loop {
        if state.time >= t_end {
            break StopReason::EndTime;
        }
        if state.curve.max_y() / state.curve.min_y() > opts.blowup_ratio {
            break StopReason::BlowUp;
        }
        if let Err(e) = step_to(state, opts, t_end) {
            break StopReason::Failed(e);
        }
        if state.step_count % every == 0 || state.time >= t_end {
            if let Err(e) = record(state, &mut samples) {
                break StopReason::Failed(e);
            }
        }
    };
    if samples.last().map_or(true, |s| s.t != state.time) {
        // the final state is always sampled, unless it cannot be diagnosed
        let _ = record(state, &mut samples);
    }
    FlowDiagnostics { samples, stop }
}

pub fn evolve(state: &mut FlowState, t_end: f64, sample_every: u64, opts: &FlowOptions) -> FlowDiagnostics {
    evolve_with(state, t_end, sample_every, opts, |_, _| {})
}

/// dρ/dt of a geodesic circle of radius ρ under the flow: coth ρ (coth²ρ − 2 − λ).
pub fn circle_rate(rho: f64, lambda: f64) -> f64 {
    let k = 1.0 / rho.tanh();
    k * (k * k - 2.0 - lambda)
}

/// E_λ of the geodesic circle: (coth²ρ + λ)·2π sinh ρ.
pub fn circle_energy(rho: f64, lambda: f64) -> f64 {
    let k = 1.0 / rho.tanh();
    (k * k + lambda) * 2.0 * PI * rho.sinh()
}

/// ρ(t) of the circle-reduced flow at each time in `t_grid` (ascending, from t = 0),
/// by Dormand–Prince 5(4) with tolerance 1e-10.
pub fn circle_ode_oracle(rho0: f64, lambda: f64, t_grid: &[f64]) -> Result<Vec<f64>> {
    if !(rho0 > 0.0) {
        return Err(Error::Domain("circle radius must be positive"));
    }
    let f = |r: f64| circle_rate(r, lambda);
    let tol = 1e-10;
    let mut out = Vec::with_capacity(t_grid.len());
    let (mut t, mut y) = (0.0, rho0);
    let mut h = 1e-4;
    for &target in t_grid {
        if target < t {
            return Err(Error::Domain("time grid must be ascending and non-negative"));
        }
        while t < target {
            let hh = h.min(target - t);
            let (y5, err) = dopri_step(&f, y, hh);
            let scale = tol * (1.0 + y.abs());
            if err <= scale {
                t = if hh == target - t { target } else { t + hh };
                y = y5;
                if !(y > 0.0) {
                    return Err(Error::ModelBreakdown { time: t });
                }
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * (scale / err).powf(0.2)).clamp(0.2, 5.0) };
            h = hh * fac;
            if h < 1e-14 {
                return Err(Error::Stiffness { time: t, dt: h });
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn dopri_step<F: Fn(f64) -> f64>(f: &F, y: f64, h: f64) -> (f64, f64) {
    let k1 = f(y);
    let k2 = f(y + h * (k1 / 5.0));
    let k3 = f(y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    let k4 = f(y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    let k5 = f(y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    let k6 = f(y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4
        - 5103.0 / 18656.0 * k5));
    let y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 - 2187.0 / 6784.0 * k5
        + 11.0 / 84.0 * k6);
    let k7 = f(y5);
    let y4 = y + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 + 393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5
        + 187.0 / 2100.0 * k6
        + 1.0 / 40.0 * k7);
    (y5, (y5 - y4).abs())
}

/// Initial data with turning number 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroTurningStyle {
    /// Gerono lemniscate (a sin t cos t, y₀ + a sin t) with a = scale, y₀ = 2·scale
    Lemniscate,
    /// the sampled λ-figure-eight, dilated so its lowest point is at height `scale`
    FigureEight { lambda: f64 },
}

/// Zero-turning closed curve with min y ≥ scale, `n` samples uniform in hyperbolic arclength.
pub fn make_zero_turning_curve(style: ZeroTurningStyle, scale: f64, n: usize) -> Result<SampledCurve> {
    if !(scale > 0.0) {
        return Err(Error::Domain("scale must be positive"));
    }
    match style {
        ZeroTurningStyle::Lemniscate => {
            let a = scale;
            let y0 = 2.0 * scale;
            // dense polygon in t, then arclength-uniform resampling by the spline
            let m = 4 * n.max(64);
            let pts = (0..m)
                .map(|k| {
                    let t = 2.0 * PI * k as f64 / m as f64;
                    HPoint::new(a * t.sin() * t.cos(), y0 + a * t.sin())
                })
                .collect::<Result<Vec<_>>>()?;
            let dense = SampledCurve::new(pts, Parametrization::UniformParameter, None)?;
            reparametrize(&dense, n)
        }
        ZeroTurningStyle::FigureEight { lambda } => {
            let rec = closing::solve_figure_eight(lambda)?;
            let c = closing::record_curve(&rec, n)?;
            let k = scale / c.min_y();
            let pts = c.points().iter().map(|p| HPoint::new(k * p.x, k * p.y)).collect::<Result<Vec<_>>>()?;
            SampledCurve::new(pts, Parametrization::HyperbolicArclength, c.period_hint())
        }
    }
}

/// Dilation and horizontal translation putting the lowest sample at (0, 1).
pub fn normalize_lowest_point(curve: &SampledCurve) -> Result<SampledCurve> {
    let low = *curve
        .points()
        .iter()
        .min_by(|a, b| a.y.partial_cmp(&b.y).unwrap_or(core::cmp::Ordering::Equal))
        .ok_or(Error::InvalidCurve("empty curve"))?;
    let pts = curve
        .points()
        .iter()
        .map(|p| HPoint::new((p.x - low.x) / low.y, p.y / low.y))
        .collect::<Result<Vec<_>>>()?;
    SampledCurve::new(pts, curve.param(), curve.period_hint())
}

/// Euclidean Hausdorff distance between the polygon and the Clifford circle, both
/// normalized to pass through (0, 1) at their lowest point.
pub fn hausdorff_to_clifford(curve: &SampledCurve) -> Result<f64> {
    let c = normalize_lowest_point(curve)?;
    // Clifford circle (0,1) + (1/√2)(cos, sin), lowest point at 1 − 1/√2
    let s = 1.0 / (1.0 - core::f64::consts::FRAC_1_SQRT_2);
    let (cy, r) = (s, s * core::f64::consts::FRAC_1_SQRT_2);
    let pts = c.points();
    let to_circle = pts.iter().map(|p| ((p.x * p.x + (p.y - cy).powi(2)).sqrt() - r).abs()).fold(0.0, f64::max);
    let m = 4 * pts.len();
    let mut to_curve: f64 = 0.0;
    for k in 0..m {
        let a = 2.0 * PI * k as f64 / m as f64;
        let q = (r * a.cos(), cy + r * a.sin());
        let d = (0..pts.len())
            .map(|i| point_segment(q, pts[i], pts[(i + 1) % pts.len()]))
            .fold(f64::INFINITY, f64::min);
        to_curve = to_curve.max(d);
    }
    Ok(to_circle.max(to_curve))
}

fn point_segment(q: (f64, f64), a: HPoint, b: HPoint) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let l2 = dx * dx + dy * dy;
    let t = if l2 > 0.0 { (((q.0 - a.x) * dx + (q.1 - a.y) * dy) / l2).clamp(0.0, 1.0) } else { 0.0 };
    ((q.0 - a.x - t * dx).powi(2) + (q.1 - a.y - t * dy).powi(2)).sqrt()
}

/// Geodesic circle of radius ρ about i as flow initial data (κ = coth ρ).
pub fn geodesic_circle(rho: f64, n: usize) -> Result<SampledCurve> {
    if !(rho > 0.0) {
        return Err(Error::Domain("circle radius must be positive"));
    }
    // Euclidean center (0, cosh ρ), radius sinh ρ
    hypgeo::hyperbolic_circle(0.0, rho.cosh(), rho.sinh(), n)
}

/// Geodesic radius of a sampled (near-)circle from its hyperbolic length L = 2π sinh ρ.
pub fn circle_radius(curve: &SampledCurve) -> Result<f64> {
    Ok((hypgeo::length(curve)? / (2.0 * PI)).asinh())
}
