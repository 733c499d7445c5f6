//! Discrete closed curves in the upper half-plane H² = {(x, y) : y > 0} with the
//! metric |dz|²/y².
//!
//! Derivatives are centered five-point periodic finite differences in the sample index,
//! so every quantity here is fourth-order accurate in the grid spacing.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::InvalidCurve("non-finite coordinate"));
        }
        if y <= 0.0 {
            return Err(Error::InvalidCurve("point not in the upper half-plane"));
        }
        Ok(Self { x, y })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.x, self.y)
    }
}

/// How the samples of a curve are spaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Parametrization {
    UniformParameter,
    HyperbolicArclength,
}

/// A closed curve given by N ≥ 8 periodic samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    points: Vec<HPoint>,
    param: Parametrization,
    period_hint: Option<f64>,
}

impl SampledCurve {
    pub const MIN_SAMPLES: usize = 8;

    pub fn new(points: Vec<HPoint>, param: Parametrization, period_hint: Option<f64>) -> Result<Self> {
        if points.len() < Self::MIN_SAMPLES {
            return Err(Error::InvalidCurve("fewer than 8 samples"));
        }
        for p in &points {
            HPoint::new(p.x, p.y)?;
        }
        let n = points.len();
        for i in 0..n {
            let (a, b) = (points[i], points[(i + 1) % n]);
            if a.x == b.x && a.y == b.y {
                return Err(Error::DegenerateSegment { index: i });
            }
        }
        Ok(Self { points, param, period_hint })
    }

    /// Builds a curve from (x, y) pairs, uniform-parameter tagged.
    pub fn from_xy(xy: &[(f64, f64)]) -> Result<Self> {
        let pts = xy.iter().map(|&(x, y)| HPoint { x, y }).collect();
        Self::new(pts, Parametrization::UniformParameter, None)
    }

    pub fn points(&self) -> &[HPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn param(&self) -> Parametrization {
        self.param
    }

    pub fn period_hint(&self) -> Option<f64> {
        self.period_hint
    }

    pub fn into_points(self) -> Vec<HPoint> {
        self.points
    }

    pub fn min_y(&self) -> f64 {
        self.points.iter().map(|p| p.y).fold(f64::INFINITY, f64::min)
    }

    pub fn max_y(&self) -> f64 {
        self.points.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Five-point first- and second-derivative weights for offsets −2..=2.
pub(crate) const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
pub(crate) const D2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

/// (x', y', x'', y'') at sample i of a closed polygon.
pub(crate) fn derivative_at(pts: &[HPoint], i: usize) -> [f64; 4] {
    let n = pts.len();
    let mut d = [0.0; 4];
    for k in 0..5 {
        let p = pts[(i + n + k - 2) % n];
        d[0] += D1[k] * p.x;
        d[1] += D1[k] * p.y;
        d[2] += D2[k] * p.x;
        d[3] += D2[k] * p.y;
    }
    d
}

/// First and second index derivatives at each sample (centered, periodic).
fn derivatives(pts: &[HPoint]) -> Vec<[f64; 4]> {
    (0..pts.len()).map(|i| derivative_at(pts, i)).collect()
}

/// Signed hyperbolic curvature from the point height and the parameter derivatives
/// γ' = (x1, y1), γ'' = (x2, y2).
///
/// With σ = |γ'|/y (hyperbolic speed) the arclength derivatives are ∂ₛγ = γ'/σ and
/// ∂ₛ²γ = (γ''/σ − γ'σ'/σ²)/σ. The curvature vector is
/// κ⃗ = (∂ₛ²γ₁ − (2/y)∂ₛγ₁∂ₛγ₂, ∂ₛ²γ₂ + ((∂ₛγ₁)² − (∂ₛγ₂)²)/y),
/// and κ = ⟨κ⃗, N⟩/y² with N = iT.
fn curvature_at(y: f64, x1: f64, y1: f64, x2: f64, y2: f64) -> Result<f64> {
    let speed = (x1 * x1 + y1 * y1).sqrt();
    if !(speed > 1e-300) {
        return Err(Error::DegenerateSegment { index: usize::MAX });
    }
    let sigma = speed / y;
    let dsigma = (x1 * x2 + y1 * y2) / (speed * y) - speed * y1 / (y * y);
    let (t1, t2) = (x1 / sigma, y1 / sigma);
    let s2x = (x2 / sigma - x1 * dsigma / (sigma * sigma)) / sigma;
    let s2y = (y2 / sigma - y1 * dsigma / (sigma * sigma)) / sigma;
    let k1 = s2x - 2.0 / y * t1 * t2;
    let k2 = s2y + (t1 * t1 - t2 * t2) / y;
    // N = iT = (−T₂, T₁)
    Ok((-k1 * t2 + k2 * t1) / (y * y))
}

/// Per-sample signed hyperbolic curvature of a closed curve (positive for a
/// counter-clockwise circle).
pub fn hyperbolic_curvature(curve: &SampledCurve) -> Result<Vec<f64>> {
    let pts = curve.points();
    derivatives(pts)
        .iter()
        .enumerate()
        .map(|(i, d)| curvature_at(pts[i].y, d[0], d[1], d[2], d[3]).map_err(|_| Error::DegenerateSegment { index: i }))
        .collect()
}

/// Curvature at the interior samples 1..n−1 of an open polyline.
pub fn hyperbolic_curvature_open(pts: &[HPoint]) -> Result<Vec<f64>> {
    if pts.len() < 3 {
        return Err(Error::InvalidCurve("open curvature needs 3 samples"));
    }
    (1..pts.len() - 1)
        .map(|i| {
            let (a, b, c) = (pts[i - 1], pts[i], pts[i + 1]);
            curvature_at(b.y, 0.5 * (c.x - a.x), 0.5 * (c.y - a.y), c.x - 2.0 * b.x + a.x, c.y - 2.0 * b.y + a.y)
                .map_err(|_| Error::DegenerateSegment { index: i })
        })
        .collect()
}

/// Hyperbolic speed |γ'|/y at each sample (index parametrization).
pub fn hyperbolic_speed(curve: &SampledCurve) -> Vec<f64> {
    let pts = curve.points();
    derivatives(pts).iter().zip(pts).map(|(d, p)| (d[0] * d[0] + d[1] * d[1]).sqrt() / p.y).collect()
}

/// Hyperbolic length Σ |γ'|/y (periodic trapezoid rule).
pub fn length(curve: &SampledCurve) -> Result<f64> {
    let sp = hyperbolic_speed(curve);
    if let Some(i) = sp.iter().position(|s| !(*s > 0.0)) {
        return Err(Error::DegenerateSegment { index: i });
    }
    Ok(sp.iter().sum())
}

/// E_λ = ∫ (κ² + λ) ds; λ = 0 gives the bending energy.
pub fn energy(curve: &SampledCurve, lambda: f64) -> Result<f64> {
    let k = hyperbolic_curvature(curve)?;
    let sp = hyperbolic_speed(curve);
    Ok(k.iter().zip(&sp).map(|(k, s)| (k * k + lambda) * s).sum())
}

/// Orientation-preserving isometry z ↦ (az + b)/(cz + d) with real coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl MobiusMap {
    pub const IDENTITY: MobiusMap = MobiusMap { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !((det - 1.0).abs() <= 1e-12) {
            return Err(Error::BadMobius { det });
        }
        Ok(Self { a, b, c, d })
    }

    /// Rescales arbitrary coefficients with positive determinant to determinant 1.
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(Error::BadMobius { det });
        }
        let s = det.sqrt();
        Ok(Self { a: a / s, b: b / s, c: c / s, d: d / s })
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// self ∘ other
    pub fn compose(&self, o: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        let den = z * self.c + self.d;
        if den.norm() < 1e-300 {
            return Err(Error::Domain("Mobius pole"));
        }
        Ok((z * self.a + self.b) / den)
    }

    pub fn apply_point(&self, p: HPoint) -> Result<HPoint> {
        let w = self.apply(p.to_complex())?;
        HPoint::new(w.re, w.im)
    }

    /// Differential at z applied to the tangent vector v.
    pub fn push_vector(&self, z: Complex64, v: Complex64) -> Complex64 {
        let den = z * self.c + self.d;
        v / (den * den)
    }
}

/// Isometry Φ with Φ(z) = (0, y_target) and dΦ_z(v) = (y_target, 0).
///
/// Pre-translates z to the imaginary axis, then w = √(v / y_target), d = Re w,
/// c = Im w / y and (a, b) from  d·a − c·b = 1, y²c·a + d·b = 0.
pub fn normalize_initial(z: HPoint, v: (f64, f64), y_target: f64) -> Result<MobiusMap> {
    if !(y_target > 0.0) {
        return Err(Error::Domain("target height must be positive"));
    }
    let y = z.y;
    let norm = (v.0 * v.0 + v.1 * v.1).sqrt() / y;
    if !((norm - 1.0).abs() <= 1e-8) {
        return Err(Error::NotUnitTangent { norm });
    }
    let w = (Complex64::new(v.0, v.1) / y_target).sqrt();
    let d = w.re;
    let c = w.im / y;
    let det = d * d + y * y * c * c;
    let a = d / det;
    let b = -y * y * c / det;
    // compose with the translation w ↦ w − x
    MobiusMap::new(a, b - a * z.x, c, d - c * z.x)
}

/// Applies an isometry to every sample.
pub fn apply_mobius(map: &MobiusMap, curve: &SampledCurve) -> Result<SampledCurve> {
    let pts = curve.points().iter().map(|p| map.apply_point(*p)).collect::<Result<Vec<_>>>()?;
    SampledCurve::new(pts, curve.param(), curve.period_hint())
}

/// Exterior-angle sum of the closed polygon, in turns (before rounding by [`turning_number`]).
pub fn turning_sum(curve: &SampledCurve) -> f64 {
    let pts = curve.points();
    let n = pts.len();
    let mut total = 0.0;
    for i in 0..n {
        let p0 = pts[(i + n - 1) % n];
        let p1 = pts[i];
        let p2 = pts[(i + 1) % n];
        let (ax, ay) = (p1.x - p0.x, p1.y - p0.y);
        let (bx, by) = (p2.x - p1.x, p2.y - p1.y);
        total += (ax * by - ay * bx).atan2(ax * bx + ay * by);
    }
    total / (2.0 * PI)
}

/// Euclidean turning number (total curvature / 2π) of the closed polygon.
pub fn turning_number(curve: &SampledCurve) -> Result<i64> {
    let t = turning_sum(curve);
    let r = t.round();
    let residual = (t - r).abs();
    if residual >= 0.05 {
        return Err(Error::AmbiguousTurning { residual });
    }
    Ok(r as i64)
}

fn orient(a: HPoint, b: HPoint, c: HPoint) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: HPoint, b: HPoint, p: HPoint) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test by orientation signs.
pub fn segments_intersect(p1: HPoint, p2: HPoint, q1: HPoint, q2: HPoint) -> bool {
    let d1 = orient(q1, q2, p1);
    let d2 = orient(q1, q2, p2);
    let d3 = orient(p1, p2, q1);
    let d4 = orient(p1, p2, q2);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// True iff no two non-adjacent edges of the closed polygon meet.
pub fn is_simple(curve: &SampledCurve) -> bool {
    let pts = curve.points();
    let n = pts.len();
    let boxes: Vec<[f64; 4]> = (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            [a.x.min(b.x), a.x.max(b.x), a.y.min(b.y), a.y.max(b.y)]
        })
        .collect();
    for i in 0..n {
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (bi, bj) = (&boxes[i], &boxes[j]);
            if bi[1] < bj[0] || bj[1] < bi[0] || bi[3] < bj[2] || bj[3] < bi[2] {
                continue;
            }
            if segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) {
                return false;
            }
        }
    }
    true
}

/// N samples of the Euclidean circle with center (cx, cy) and radius r, counter-clockwise,
/// spaced uniformly in hyperbolic arclength.
pub fn hyperbolic_circle(cx: f64, cy: f64, r: f64, n: usize) -> Result<SampledCurve> {
    if !(cy > r && r > 0.0) {
        return Err(Error::Domain("circle must lie in the upper half-plane"));
    }
    // hyperbolic center ic₀ with c₀ = √(cy² − r²); geodesic radius ρ with cosh ρ = cy/c₀.
    // Points: Möbius image of a circle about i, which is uniform in hyperbolic angle.
    let c0 = (cy * cy - r * r).sqrt();
    let rho = (cy / c0).acosh();
    let th = (0.5 * rho).tanh();
    // disc-to-half-plane: w ∈ D ↦ i(1 + w)/(1 − w), then scale by c0 and shift by cx
    let pts = (0..n)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / n as f64 - 0.5 * PI;
            let w = Complex64::from_polar(th, phi);
            let z = Complex64::i() * (w + 1.0) / (Complex64::new(1.0, 0.0) - w);
            HPoint { x: cx + c0 * z.re, y: c0 * z.im }
        })
        .collect();
    SampledCurve::new(pts, Parametrization::HyperbolicArclength, Some(2.0 * PI * rho.sinh()))
}
