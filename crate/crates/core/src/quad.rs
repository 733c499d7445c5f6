//! Gauss–Legendre rules (fixed, composite, doubling) and adaptive Gauss–Kronrod 7/15.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};
use num_complex::Complex64;
use num_traits::Float;

use crate::error::{Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait Quantity: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Quantity for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Quantity for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// An n-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let nf = n as f64;
        for i in 0..n {
            // Tricomi's initial guess, then Newton on P_n
            let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d.is_finite() {
                dp = d;
            }
            nodes.push(x);
            weights.push(2.0 / ((1.0 - x * x) * dp * dp));
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Single-panel rule on [a, b].
    pub fn integrate<T: Quantity, F: FnMut(f64) -> T>(&self, mut f: F, a: f64, b: f64) -> T {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * x) * (w * half);
        }
        acc
    }

    /// Composite rule with `panels` equal panels on [a, b].
    pub fn composite<T: Quantity, F: FnMut(f64) -> T>(&self, mut f: F, a: f64, b: f64, panels: usize) -> T {
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        for k in 0..panels {
            let lo = a + h * k as f64;
            let hi = if k + 1 == panels { b } else { lo + h };
            acc = acc + self.integrate(&mut f, lo, hi);
        }
        acc
    }

    /// Composite rule, doubling the panel count until successive results differ by
    /// less than `tol` (absolute, relative to max(1, |I|)).
    pub fn doubling<T: Quantity, F: FnMut(f64) -> T>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        start_panels: usize,
        tol: f64,
    ) -> Result<T> {
        let mut panels = start_panels.max(1);
        let mut prev = self.composite(&mut f, a, b, panels);
        for _ in 0..16 {
            panels *= 2;
            let next = self.composite(&mut f, a, b, panels);
            let diff = (next - prev).magnitude();
            if diff <= tol * next.magnitude().max(1.0) {
                return Ok(next);
            }
            prev = next;
        }
        Err(Error::Quadrature { estimate: prev.magnitude(), error: f64::NAN })
    }
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = f(c - dx) + f(c + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Globally adaptive Gauss–Kronrod 7/15: repeatedly bisects the interval with the
/// largest error estimate until the summed estimate meets the tolerance.
pub fn adaptive<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> Result<f64> {
    let (v0, e0) = gk15(&mut f, a, b);
    let mut parts: Vec<(f64, f64, f64, f64)> = Vec::new();
    parts.push((a, b, v0, e0));
    let mut total = v0;
    let mut err = e0;
    let mut mass = v0.abs();
    // tolerance never below roundoff of ∫|f|, so integrals near zero still terminate
    let goal = |total: f64, mass: f64| abs_tol.max(rel_tol * total.abs()).max(4.0 * f64::EPSILON * mass);
    for _ in 0..4000 {
        if err <= goal(total, mass) {
            return Ok(total);
        }
        let (worst, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |acc, (i, p)| if p.3 > acc.1 { (i, p.3) } else { acc });
        let (lo, hi, v, e) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (vl, el) = gk15(&mut f, lo, mid);
        let (vr, er) = gk15(&mut f, mid, hi);
        total += vl + vr - v;
        err += el + er - e;
        mass += vl.abs() + vr.abs() - v.abs();
        parts.push((lo, mid, vl, el));
        parts.push((mid, hi, vr, er));
        if parts.len() % 64 == 0 {
            // resum to avoid drift in the running totals
            total = parts.iter().map(|p| p.2).sum();
            err = parts.iter().map(|p| p.3).sum();
            mass = parts.iter().map(|p| p.2.abs()).sum();
        }
    }
    total = parts.iter().map(|p| p.2).sum();
    err = parts.iter().map(|p| p.3).sum();
    mass = parts.iter().map(|p| p.2.abs()).sum();
    if total.is_finite() && err <= goal(total, mass) {
        Ok(total)
    } else {
        Err(Error::Quadrature { estimate: total, error: err })
    }
}
