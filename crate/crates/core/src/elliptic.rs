//! Jacobi elliptic functions and elliptic integrals, parametrized by the modulus `p`
//! (not the parameter m = p²).
//!
//! K and E come from the arithmetic–geometric mean, the amplitude from descending
//! Landen transformations after reduction to one half-period, F from Carlson's R_F.

use core::f64::consts::{FRAC_PI_2, PI};
use num_traits::Float;

use crate::error::{Error, Result};

/// Elliptic modulus p with 0 ≤ p ≤ 1 − 1e-12.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(try_from = "f64", into = "f64"))]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    /// Largest modulus we evaluate at; K(p) diverges as p → 1.
    pub const MAX: f64 = 1.0 - 1e-12;

    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..=Self::MAX).contains(&p) {
            return Err(Error::Domain("elliptic modulus must lie in [0, 1 - 1e-12]"));
        }
        Ok(Self(p))
    }

    /// Clamps p into the admissible range, reporting whether the cap was hit.
    /// Negative or non-finite input is still an error.
    pub fn clamped(p: f64) -> Result<(Self, bool)> {
        if !(p >= 0.0) {
            return Err(Error::Domain("elliptic modulus must be non-negative"));
        }
        if p > Self::MAX {
            Ok((Self(Self::MAX), true))
        } else {
            Ok((Self(p), false))
        }
    }

    /// Builds the modulus from p² (more accurate when p² is what the formulas give).
    pub fn from_sq(p_sq: f64) -> Result<Self> {
        Self::new(p_sq.sqrt())
    }

    pub fn p(self) -> f64 {
        self.0
    }

    pub fn p_sq(self) -> f64 {
        self.0 * self.0
    }

    /// 1 − p², evaluated without cancellation.
    pub fn comp_sq(self) -> f64 {
        (1.0 - self.0) * (1.0 + self.0)
    }
}

impl TryFrom<f64> for EllipticModulus {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        Self::new(p)
    }
}

impl From<EllipticModulus> for f64 {
    fn from(p: EllipticModulus) -> f64 {
        p.0
    }
}

/// sn, cn, dn and the amplitude at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub am: f64,
}

const AGM_STEPS: usize = 40;

/// AGM sequences a_n, c_n starting from (1, √(1−p²), p). Returns the number of
/// steps used; a[0..=n], c[0..=n] are filled.
fn agm(p: EllipticModulus, a: &mut [f64; AGM_STEPS], c: &mut [f64; AGM_STEPS]) -> usize {
    let mut an = 1.0;
    let mut bn = p.comp_sq().sqrt();
    a[0] = an;
    c[0] = p.p();
    let mut n = 0;
    while n + 1 < AGM_STEPS && c[n].abs() > 1e-17 * an {
        let a1 = 0.5 * (an + bn);
        let b1 = (an * bn).sqrt();
        n += 1;
        c[n] = 0.5 * (an - bn);
        a[n] = a1;
        an = a1;
        bn = b1;
    }
    n
}

/// Complete integrals (K(p), E(p)) in one AGM pass.
pub fn complete_ke(p: EllipticModulus) -> (f64, f64) {
    let mut a = [0.0; AGM_STEPS];
    let mut c = [0.0; AGM_STEPS];
    let n = agm(p, &mut a, &mut c);
    let k = FRAC_PI_2 / a[n];
    // E = K (1 − Σ 2^{j−1} c_j²)
    let mut sum = 0.0;
    let mut pow = 0.5;
    for cj in c.iter().take(n + 1) {
        sum += pow * cj * cj;
        pow *= 2.0;
    }
    (k, k * (1.0 - sum))
}

/// Complete elliptic integral of the first kind, ∫₀^{π/2} (1 − p² sin²β)^{−1/2} dβ.
pub fn complete_k(p: EllipticModulus) -> f64 {
    complete_ke(p).0
}

/// Complete elliptic integral of the second kind, ∫₀^{π/2} (1 − p² sin²β)^{1/2} dβ.
pub fn complete_e(p: EllipticModulus) -> f64 {
    complete_ke(p).1
}

/// Precomputed AGM data for repeated evaluation of the Jacobi functions at one modulus.
#[derive(Debug, Clone, Copy)]
pub struct JacobiKernel {
    p: EllipticModulus,
    a: [f64; AGM_STEPS],
    c: [f64; AGM_STEPS],
    n: usize,
    k: f64,
    e: f64,
}

impl JacobiKernel {
    pub fn new(p: EllipticModulus) -> Self {
        let mut a = [0.0; AGM_STEPS];
        let mut c = [0.0; AGM_STEPS];
        let n = agm(p, &mut a, &mut c);
        let (k, e) = complete_ke(p);
        Self { p, a, c, n, k, e }
    }

    pub fn modulus(&self) -> EllipticModulus {
        self.p
    }

    /// K(p)
    pub fn k(&self) -> f64 {
        self.k
    }

    /// E(p)
    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn eval(&self, x: f64) -> JacobiTriple {
        if self.p.p() == 0.0 {
            return JacobiTriple { sn: x.sin(), cn: x.cos(), dn: 1.0, am: x };
        }
        // am(x + 2Kl) = lπ + am(x): reduce to [−K, K]
        let l = (x / (2.0 * self.k)).round();
        let x0 = x - 2.0 * self.k * l;
        // descending Landen: φ_n = 2ⁿ a_n x, φ_{j−1} = (φ_j + asin(c_j/a_j sin φ_j)) / 2
        let mut phi = (1u64 << self.n) as f64 * self.a[self.n] * x0;
        for j in (1..=self.n).rev() {
            phi = 0.5 * (phi + (self.c[j] / self.a[j] * phi.sin()).asin());
        }
        let sign = if (l as i64).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        let sn = sign * phi.sin();
        let cn = sign * phi.cos();
        let ps = self.p.p() * sn;
        let dn = ((1.0 - ps) * (1.0 + ps)).sqrt();
        JacobiTriple { sn, cn, dn, am: l * PI + phi }
    }
}

/// Jacobi amplitude and sn, cn, dn at `x`.
pub fn jacobi(x: f64, p: EllipticModulus) -> JacobiTriple {
    JacobiKernel::new(p).eval(x)
}

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
pub fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (mut x, mut y, mut z) = (x, y, z);
    for _ in 0..100 {
        let mu = (x + y + z) / 3.0;
        let dx = 1.0 - x / mu;
        let dy = 1.0 - y / mu;
        let dz = 1.0 - z / mu;
        let eps = dx.abs().max(dy.abs()).max(dz.abs());
        if eps < 1e-4 {
            // fifth-order Taylor tail; error ~ eps⁶
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / mu.sqrt();
        }
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
    }
    f64::NAN
}

/// Incomplete integral of the first kind, F(φ, p) = ∫₀^φ (1 − p² sin²β)^{−1/2} dβ, for any real φ.
pub fn incomplete_f(phi: f64, p: EllipticModulus) -> f64 {
    if phi == 0.0 {
        return 0.0;
    }
    let l = (phi / PI).round();
    let phi0 = phi - l * PI;
    let (s, c) = (phi0.sin(), phi0.cos());
    let ps = p.p() * s;
    let f0 = s * carlson_rf(c * c, (1.0 - ps) * (1.0 + ps), 1.0);
    if l == 0.0 {
        f0
    } else {
        2.0 * l * complete_k(p) + f0
    }
}
