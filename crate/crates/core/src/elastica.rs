//! Hyperbolic elastica: solutions of 2κ'' + κ³ − (λ + 2)κ = 0.
//!
//! A profile is fixed by λ and the vertex curvature κ₀² (equivalently the integration
//! constant C of κ'² + κ⁴/4 − ((λ+2)/2)κ² = C). The curve itself is recovered from the
//! Killing field aγ² + c through γ = f(∫ 1/θ), θ = κ² − λ + 2iκ'.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::elliptic::{EllipticModulus, JacobiKernel};
use crate::error::{Error, Result};
use crate::hypgeo::{HPoint, Parametrization, SampledCurve};
use crate::quad::GaussLegendre;

/// Tolerance for the excluded locus κ₀² = λ + 4.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Curvature-profile case.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ElasticaCase {
    Circular,
    Orbitlike,
    AsymptoticallyGeodesic,
    Wavelike,
}

impl ElasticaCase {
    pub fn as_str(self) -> &'static str {
        match self {
            ElasticaCase::Circular => "circular",
            ElasticaCase::Orbitlike => "orbitlike",
            ElasticaCase::AsymptoticallyGeodesic => "asymptotically-geodesic",
            ElasticaCase::Wavelike => "wavelike",
        }
    }
}

/// One member of the elastica family.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ElasticaParams {
    pub lambda: f64,
    pub kappa0_sq: f64,
    #[cfg_attr(feature = "serde", serde(rename = "C"))]
    pub c: f64,
    pub case: ElasticaCase,
    /// Elliptic modulus; absent for circular and asymptotically geodesic profiles.
    pub p: Option<EllipticModulus>,
    pub r: f64,
    /// Set when 1 − p ≤ 1e-9 (C within ~1e-8 of the asymptotically geodesic value);
    /// p itself is clamped to the modulus cap.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "core::ops::Not::not"))]
    pub p_near_one: bool,
}

fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Threshold on 1 − p above which a modulus is reported as near 1.
pub const NEAR_ONE: f64 = 1e-9;

fn modulus_with_flag(p_sq: f64) -> Result<(EllipticModulus, bool)> {
    let (p, _) = EllipticModulus::clamped(p_sq.max(0.0).sqrt())?;
    Ok((p, 1.0 - p.p() <= NEAR_ONE))
}

/// Classifies the profile with vertex curvature κ₀² at multiplier λ.
pub fn classify(lambda: f64, kappa0_sq: f64) -> Result<ElasticaParams> {
    if !(lambda.is_finite() && kappa0_sq.is_finite()) {
        return Err(Error::Domain("non-finite parameters"));
    }
    let circ = lambda + 2.0;
    let geo = 2.0 * lambda + 4.0;
    if kappa0_sq < circ && !rel_eq(kappa0_sq, circ, 1e-14) || kappa0_sq <= 0.0 {
        return Err(Error::NoElastica { lambda, kappa0_sq });
    }
    let c = 0.25 * kappa0_sq * (kappa0_sq - geo);
    if rel_eq(kappa0_sq, circ, 1e-14) {
        return Ok(ElasticaParams {
            lambda,
            kappa0_sq,
            c: -0.25 * circ * circ,
            case: ElasticaCase::Circular,
            p: None,
            r: 0.0,
            p_near_one: false,
        });
    }
    if kappa0_sq == geo {
        return Ok(ElasticaParams {
            lambda,
            kappa0_sq,
            c: 0.0,
            case: ElasticaCase::AsymptoticallyGeodesic,
            p: None,
            r: 0.5 * geo.sqrt(),
            p_near_one: false,
        });
    }
    if kappa0_sq < geo {
        if (kappa0_sq - (lambda + 4.0)).abs() <= DEGENERACY_TOL {
            return Err(Error::Degenerate { lambda, kappa0_sq });
        }
        // p² = 2 − (2λ+4)/κ₀² = 2(κ₀² − λ − 2)/κ₀²
        let p_sq = 2.0 * (kappa0_sq - circ) / kappa0_sq;
        let (p, p_near_one) = modulus_with_flag(p_sq)?;
        return Ok(ElasticaParams {
            lambda,
            kappa0_sq,
            c,
            case: ElasticaCase::Orbitlike,
            p: Some(p),
            r: 0.5 * kappa0_sq.sqrt(),
            p_near_one,
        });
    }
    // wavelike: p² = κ₀² / (2κ₀² − 2λ − 4)
    let p_sq = kappa0_sq / (2.0 * (kappa0_sq - circ));
    let (p, p_near_one) = modulus_with_flag(p_sq)?;
    Ok(ElasticaParams {
        lambda,
        kappa0_sq,
        c,
        case: ElasticaCase::Wavelike,
        p: Some(p),
        r: 0.5 * (kappa0_sq / p_sq).sqrt(),
        p_near_one,
    })
}

/// The three roots α ≤ β ≤ γ of P(u) = u(−u² + 2(λ+2)u + 4C) (in u = κ²), i.e.
/// {0, λ+2 ± √D} with D = (λ+2)² + 4C. Returns None when D < 0.
pub fn cubic_roots(lambda: f64, c: f64) -> Option<[f64; 3]> {
    let d = (lambda + 2.0) * (lambda + 2.0) + 4.0 * c;
    if d < 0.0 {
        return None;
    }
    let sd = d.sqrt();
    let mut r = [0.0, lambda + 2.0 - sd, lambda + 2.0 + sd];
    r.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(r)
}

/// Classifies from (λ, C) through the cubic roots: κ₀² = γ, p² = (γ−β)/(γ−α),
/// r² = (γ−α)/4.
pub fn classify_from_c(lambda: f64, c: f64) -> Result<ElasticaParams> {
    if !(lambda.is_finite() && c.is_finite()) {
        return Err(Error::Domain("non-finite parameters"));
    }
    let circ = lambda + 2.0;
    let Some([alpha, beta, gamma]) = cubic_roots(lambda, c) else {
        return Err(Error::NoElastica { lambda, kappa0_sq: f64::NAN });
    };
    if gamma <= 0.0 {
        return Err(Error::NoElastica { lambda, kappa0_sq: gamma });
    }
    let kappa0_sq = gamma;
    if rel_eq(c, -0.25 * circ * circ, 1e-14) {
        return classify(lambda, circ);
    }
    if c == 0.0 {
        return Ok(ElasticaParams {
            lambda,
            kappa0_sq: 2.0 * lambda + 4.0,
            c: 0.0,
            case: ElasticaCase::AsymptoticallyGeodesic,
            p: None,
            r: 0.5 * (2.0 * lambda + 4.0).sqrt(),
            p_near_one: false,
        });
    }
    let case = if c < 0.0 { ElasticaCase::Orbitlike } else { ElasticaCase::Wavelike };
    if case == ElasticaCase::Orbitlike && (kappa0_sq - (lambda + 4.0)).abs() <= DEGENERACY_TOL {
        return Err(Error::Degenerate { lambda, kappa0_sq });
    }
    let p_sq = (gamma - beta) / (gamma - alpha);
    let (p, p_near_one) = modulus_with_flag(p_sq)?;
    Ok(ElasticaParams { lambda, kappa0_sq, c, case, p: Some(p), r: 0.5 * (gamma - alpha).sqrt(), p_near_one })
}

/// Evaluator for κ(s), κ'(s) and θ(s) of one profile.
#[derive(Debug, Clone, Copy)]
pub struct Profile {
    params: ElasticaParams,
    kappa0: f64,
    jac: Option<JacobiKernel>,
}

impl Profile {
    pub fn new(params: &ElasticaParams) -> Self {
        Self { params: *params, kappa0: params.kappa0_sq.sqrt(), jac: params.p.map(JacobiKernel::new) }
    }

    pub fn params(&self) -> &ElasticaParams {
        &self.params
    }

    pub fn jacobi(&self) -> Option<&JacobiKernel> {
        self.jac.as_ref()
    }

    /// Period of κ² (and of θ up to the sign of κ'): 2K/r for elliptic cases.
    pub fn half_period(&self) -> Option<f64> {
        self.jac.map(|j| 2.0 * j.k() / self.params.r)
    }

    /// (κ(s), κ'(s))
    pub fn kappa(&self, s: f64) -> (f64, f64) {
        let (k0, r) = (self.kappa0, self.params.r);
        match self.params.case {
            ElasticaCase::Circular => (k0, 0.0),
            ElasticaCase::AsymptoticallyGeodesic => {
                let t = (r * s).tanh();
                let sech = 1.0 / (r * s).cosh();
                (k0 * sech, -k0 * r * sech * t)
            }
            ElasticaCase::Orbitlike => {
                let j = self.jac.as_ref().expect("orbitlike profile has a modulus").eval(r * s);
                let p_sq = self.jac.unwrap().modulus().p_sq();
                (k0 * j.dn, -k0 * r * p_sq * j.sn * j.cn)
            }
            ElasticaCase::Wavelike => {
                let j = self.jac.as_ref().expect("wavelike profile has a modulus").eval(r * s);
                (k0 * j.cn, -k0 * r * j.sn * j.dn)
            }
        }
    }

    /// θ(s) = κ² − λ + 2iκ'
    pub fn theta(&self, s: f64) -> Complex64 {
        let (k, kp) = self.kappa(s);
        Complex64::new(k * k - self.params.lambda, 2.0 * kp)
    }
}

/// (κ(s), κ'(s)) of the profile.
pub fn curvature_profile(params: &ElasticaParams, s: f64) -> (f64, f64) {
    Profile::new(params).kappa(s)
}

/// θ(s) = κ² − λ + 2iκ'.
pub fn theta(params: &ElasticaParams, s: f64) -> Complex64 {
    Profile::new(params).theta(s)
}

/// Residual of κ'² + κ⁴/4 − ((λ+2)/2)κ² − C at s.
pub fn first_integral_residual(params: &ElasticaParams, s: f64) -> f64 {
    let (k, kp) = curvature_profile(params, s);
    kp * kp + 0.25 * k.powi(4) - 0.5 * (params.lambda + 2.0) * k * k - params.c
}

/// Type of a Killing field aγ² + c.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum KillingType {
    Rotational,
    Translational,
    Horocyclical,
}

/// Coefficients of the extended Killing field aγ² + c and the start height y.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KillingParams {
    pub a: f64,
    pub c: f64,
    pub y: f64,
}

impl KillingParams {
    pub fn kind(&self) -> KillingType {
        let ac = self.a * self.c;
        if ac > 0.0 {
            KillingType::Rotational
        } else if ac < 0.0 {
            KillingType::Translational
        } else {
            KillingType::Horocyclical
        }
    }

    /// Zero of a rotational field on the positive imaginary axis.
    pub fn rotation_center(&self) -> Option<HPoint> {
        (self.kind() == KillingType::Rotational).then(|| HPoint { x: 0.0, y: (self.c / self.a).sqrt() })
    }
}

/// Both Killing branches a = (−(κ₀²−λ) ± 2κ₀)/(2y), c = ay² + (κ₀²−λ)y; index 0 is "+".
pub fn killing_params(params: &ElasticaParams, y: f64) -> Result<[KillingParams; 2]> {
    if params.case == ElasticaCase::Circular {
        return Err(Error::Circular);
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::Domain("start height must be positive"));
    }
    let m = params.kappa0_sq - params.lambda;
    let k0 = params.kappa0_sq.sqrt();
    let mk = |sign: f64| {
        let a = (-m + sign * 2.0 * k0) / (2.0 * y);
        // for the "+" branch at λ = 0 on the asymptotically geodesic profile a vanishes
        // exactly in exact arithmetic; snap the rounding residue
        let a = if a.abs() <= 1e-15 * (m.abs() + 2.0 * k0) / y { 0.0 } else { a };
        KillingParams { a, c: a * y * y + m * y, y }
    };
    Ok([mk(1.0), mk(-1.0)])
}

/// The branch used throughout: κ₀ > 0 with a = (−(κ₀²−λ) + 2κ₀)/(2y).
pub fn killing_params_plus(params: &ElasticaParams, y: f64) -> Result<KillingParams> {
    Ok(killing_params(params, y)?[0])
}

/// a·(x² − y², 2xy) + c·(1, 0)
pub fn killing_field_eval(kp: &KillingParams, pt: HPoint) -> (f64, f64) {
    (kp.a * (pt.x * pt.x - pt.y * pt.y) + kp.c, 2.0 * kp.a * pt.x * pt.y)
}

/// tan of a complex argument with the real part reduced modulo π.
pub fn ctan(w: Complex64) -> Complex64 {
    let u = w.re - PI * (w.re / PI).round();
    let v = w.im;
    if v.abs() > 300.0 {
        return Complex64::new(0.0, v.signum());
    }
    let den = (2.0 * u).cos() + (2.0 * v).cosh();
    Complex64::new((2.0 * u).sin() / den, (2.0 * v).sinh() / den)
}

/// cot of a complex argument with the real part reduced modulo π.
pub fn ccot(w: Complex64) -> Complex64 {
    let u = w.re - PI * (w.re / PI).round();
    let v = w.im;
    if v.abs() > 300.0 {
        return Complex64::new(0.0, -v.signum());
    }
    let den = (2.0 * v).cosh() - (2.0 * u).cos();
    Complex64::new((2.0 * u).sin() / den, -(2.0 * v).sinh() / den)
}

/// tanh of a complex argument with the imaginary part reduced modulo π.
pub fn ctanh(w: Complex64) -> Complex64 {
    // tanh(w) = −i tan(iw)
    let t = ctan(Complex64::new(-w.im, w.re));
    Complex64::new(t.im, -t.re)
}

/// The meromorphic f with f' = af² + c chosen by the sign pattern of (a, c), together
/// with the purely imaginary shift z₁ making f(z₁) = iy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Uniformizer {
    /// sgn(c)√(c/a)·tan(√(ac) z), used when y < √(c/a)
    Tan { scale: f64, k: f64 },
    /// −sgn(c)√(c/a)·cot(√(ac) z), used when y > √(c/a)
    Cot { scale: f64, k: f64 },
    /// sgn(c)√(−c/a)·tanh(√(−ac) z)
    Tanh { scale: f64, k: f64 },
    /// −1/(az)
    Reciprocal { a: f64 },
    /// cz
    Linear { c: f64 },
}

impl Uniformizer {
    /// Returns the uniformizer and z₁ (purely imaginary).
    pub fn for_killing(kp: &KillingParams) -> Result<(Self, f64)> {
        let (a, c, y) = (kp.a, kp.c, kp.y);
        let ac = a * c;
        if a == 0.0 && c == 0.0 {
            return Err(Error::Domain("vanishing Killing field"));
        }
        if a == 0.0 {
            return Ok((Uniformizer::Linear { c }, y / c));
        }
        if c == 0.0 {
            // −1/(a z₁) = iy  ⇒  z₁ = i/(a y)
            return Ok((Uniformizer::Reciprocal { a }, 1.0 / (a * y)));
        }
        let sg = c.signum();
        if ac > 0.0 {
            let rho = (c / a).sqrt();
            let k = ac.sqrt();
            let q = sg * y / rho;
            if q.abs() < 1.0 {
                // tan(k z₁) = i q  ⇒  k z₁ = i artanh(q)
                Ok((Uniformizer::Tan { scale: sg * rho, k }, q.atanh() / k))
            } else if q.abs() > 1.0 {
                // cot(k z₁) = −i q  ⇒  k z₁ = i artanh(1/q)
                Ok((Uniformizer::Cot { scale: -sg * rho, k }, (1.0 / q).atanh() / k))
            } else {
                Err(Error::Domain("start point is the zero of the Killing field"))
            }
        } else {
            let rho = (-c / a).sqrt();
            let k = (-ac).sqrt();
            // tanh(k z₁) = i sg y/ρ  ⇒  k z₁ = i arctan(sg y/ρ)
            Ok((Uniformizer::Tanh { scale: sg * rho, k }, (sg * y / rho).atan() / k))
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match *self {
            Uniformizer::Tan { scale, k } => ctan(z * k) * scale,
            Uniformizer::Cot { scale, k } => ccot(z * k) * scale,
            Uniformizer::Tanh { scale, k } => ctanh(z * k) * scale,
            Uniformizer::Reciprocal { a } => -(z * a).inv(),
            Uniformizer::Linear { c } => z * c,
        }
    }
}

/// Self-check residuals of a traced elastica.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TraceResiduals {
    /// max | |γ'|/γ₂ − 1 | with γ' from a 5-point difference of independently evaluated points
    pub unit_speed: f64,
    /// max |θγ' − (aγ² + c)| / (|θ|γ₂)
    pub killing: f64,
}

/// An elastica traced on a grid of arclength values.
#[derive(Debug, Clone)]
pub struct ElasticaPath {
    pub params: ElasticaParams,
    pub kp: KillingParams,
    pub uniformizer: Uniformizer,
    /// Im z₁ (Re z₁ = 0)
    pub z1: f64,
    pub s: Vec<f64>,
    /// Z(s) = ∫₀ˢ 1/θ
    pub zint: Vec<Complex64>,
    pub points: Vec<HPoint>,
}

fn gl_rule() -> GaussLegendre {
    GaussLegendre::new(12)
}

/// ∫ₐᵇ 1/θ by composite Gauss–Legendre with panel doubling.
fn integrate_inv_theta(profile: &Profile, rule: &GaussLegendre, a: f64, b: f64) -> Result<Complex64> {
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    rule.doubling(|s| profile.theta(s).inv(), a, b, 1, 1e-13)
}

impl ElasticaPath {
    pub fn profile(&self) -> Profile {
        Profile::new(&self.params)
    }

    /// γ at an arbitrary arclength, integrating from the nearest traced sample.
    pub fn point_at(&self, s: f64) -> Result<Complex64> {
        let profile = self.profile();
        let i = match self.s.binary_search_by(|v| v.partial_cmp(&s).unwrap()) {
            Ok(i) => i,
            Err(i) => {
                if i == 0 {
                    0
                } else if i >= self.s.len() || (s - self.s[i - 1]) < (self.s[i] - s) {
                    i - 1
                } else {
                    i
                }
            }
        };
        let dz = integrate_inv_theta(&profile, &gl_rule(), self.s[i], s)?;
        Ok(self.uniformizer.eval(self.zint[i] + dz + Complex64::new(0.0, self.z1)))
    }

    /// γ'(s) = (aγ² + c)/θ(s).
    pub fn velocity_at(&self, s: f64) -> Result<Complex64> {
        let g = self.point_at(s)?;
        Ok((g * g * self.kp.a + self.kp.c) / self.profile().theta(s))
    }

    /// Samples as a closed curve (the grid must cover one period, endpoint excluded).
    pub fn closed_curve(&self) -> Result<SampledCurve> {
        let hint = if self.s.len() >= 2 {
            Some((self.s[1] - self.s[0]) * self.s.len() as f64)
        } else {
            None
        };
        SampledCurve::new(self.points.clone(), Parametrization::HyperbolicArclength, hint)
    }

    /// Unit-speed and Killing residuals at every `stride`-th sample, with γ' from a
    /// five-point difference (step `h`) of freshly integrated points.
    pub fn residuals(&self, stride: usize, h: f64) -> Result<TraceResiduals> {
        let profile = self.profile();
        let rule = GaussLegendre::new(8);
        let mut out = TraceResiduals::default();
        let base = Complex64::new(0.0, self.z1);
        for i in (0..self.s.len()).step_by(stride.max(1)) {
            let s = self.s[i];
            let mut g = [Complex64::new(0.0, 0.0); 5];
            for (j, off) in [-2.0, -1.0, 1.0, 2.0].iter().enumerate() {
                let dz = rule.composite(|t| profile.theta(t).inv(), s, s + off * h, 1);
                let idx = if j < 2 { j } else { j + 1 };
                g[idx] = self.uniformizer.eval(self.zint[i] + dz + base);
            }
            g[2] = self.uniformizer.eval(self.zint[i] + base);
            let d = (g[0] - g[1] * 8.0 + g[3] * 8.0 - g[4]) / (12.0 * h);
            let y = g[2].im;
            let th = profile.theta(s);
            out.unit_speed = out.unit_speed.max((d.norm() / y - 1.0).abs());
            let kil = (th * d - (g[2] * g[2] * self.kp.a + self.kp.c)).norm() / (th.norm() * y);
            out.killing = out.killing.max(kil);
        }
        Ok(out)
    }
}

/// Traces γ(s) = f(Z(s) + z₁) on `s_grid` (sorted). Fails with "not an elastica" when
/// the analytic hyperbolic speed |aγ² + c|/(|θ|γ₂) departs from 1 by more than 1e-3.
pub fn trace(params: &ElasticaParams, kp: &KillingParams, s_grid: &[f64]) -> Result<ElasticaPath> {
    if params.case == ElasticaCase::Circular {
        return Err(Error::Circular);
    }
    if params.case == ElasticaCase::Orbitlike && (params.kappa0_sq - params.lambda - 4.0).abs() <= DEGENERACY_TOL {
        return Err(Error::Degenerate { lambda: params.lambda, kappa0_sq: params.kappa0_sq });
    }
    if s_grid.is_empty() {
        return Err(Error::Domain("empty arclength grid"));
    }
    let profile = Profile::new(params);
    let rule = gl_rule();
    let (uniformizer, z1) = Uniformizer::for_killing(kp)?;
    let base = Complex64::new(0.0, z1);
    let mut zint = Vec::with_capacity(s_grid.len());
    let mut acc = integrate_inv_theta(&profile, &rule, 0.0, s_grid[0])?;
    zint.push(acc);
    for w in s_grid.windows(2) {
        acc += integrate_inv_theta(&profile, &rule, w[0], w[1])?;
        zint.push(acc);
    }
    let mut points = Vec::with_capacity(s_grid.len());
    let mut worst = 0.0f64;
    for (s, z) in s_grid.iter().zip(&zint) {
        let g = uniformizer.eval(*z + base);
        if !(g.im > 0.0 && g.re.is_finite()) {
            return Err(Error::NotAnElastica { residual: f64::INFINITY });
        }
        let speed = (g * g * kp.a + kp.c).norm() / (profile.theta(*s).norm() * g.im);
        worst = worst.max((speed - 1.0).abs());
        points.push(HPoint { x: g.re, y: g.im });
    }
    if !(worst <= 1e-3) {
        return Err(Error::NotAnElastica { residual: worst });
    }
    Ok(ElasticaPath { params: *params, kp: *kp, uniformizer, z1, s: s_grid.to_vec(), zint, points })
}

/// Samples the elastica on `s_grid` as a periodic curve.
pub fn sample_curve(params: &ElasticaParams, kp: &KillingParams, s_grid: &[f64]) -> Result<SampledCurve> {
    trace(params, kp, s_grid)?.closed_curve()
}

/// N arclength samples of [0, length).
pub fn uniform_grid(length: f64, n: usize) -> Vec<f64> {
    (0..n).map(|k| length * k as f64 / n as f64).collect()
}

/// Circle of constant hyperbolic curvature κ > 1 whose lowest point is (0, y_low).
pub fn circle_with_curvature(kappa: f64, y_low: f64, n: usize) -> Result<SampledCurve> {
    if !(kappa > 1.0) {
        return Err(Error::Domain("closed circles need curvature > 1"));
    }
    // Euclidean center (0, m), radius r: κ = m/r and m − r = y_low
    let r = y_low / (kappa - 1.0);
    crate::hypgeo::hyperbolic_circle(0.0, kappa * r, r, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_rows() {
        let c = classify(0.0, 2.0).unwrap();
        assert_eq!(c.case, ElasticaCase::Circular);
        assert_eq!(c.c, -1.0);
        let g = classify(0.0, 4.0).unwrap();
        assert_eq!(g.case, ElasticaCase::AsymptoticallyGeodesic);
        assert_eq!((g.c, g.r), (0.0, 1.0));
        assert!(matches!(classify(0.0, 1.0), Err(Error::NoElastica { .. })));
        assert!(matches!(classify(0.5, 4.5), Err(Error::Degenerate { .. })));
    }

    #[test]
    fn near_geodesic_wavelike_is_flagged() {
        let w = classify(0.0, 4.0000000001).unwrap();
        assert_eq!(w.case, ElasticaCase::Wavelike);
        assert!(w.p_near_one);
    }

    #[test]
    fn ctan_matches_identities() {
        let w = Complex64::new(0.3, -0.7);
        let t = ctan(w);
        let direct = w.sin() / w.cos();
        assert!((t - direct).norm() < 1e-14);
        assert!((ctan(w + PI * 7.0) - t).norm() < 1e-12);
        assert!((ccot(w) - direct.inv()).norm() < 1e-14);
        let th = ctanh(w);
        assert!((th - w.tanh()).norm() < 1e-14);
    }
}
