//! Floating-point evaluation in spherical variables: `r1` along `z`, `r2`
//! in the `xz` half-plane with positive `x`, `r3` at polar angle `θ13` and
//! azimuth `φ`.

use num_complex::Complex;
use num_traits::ToPrimitive;

use crate::angular::{wigner3j, ThreeJArgs};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial};
use crate::invariant::{scalar_products, InvariantSpec, Parity};
use crate::scalar::{real, Real};

/// Default threshold on `sin θ12 · sin θ13` below which `φ` is treated as
/// undefined.
pub const DEFAULT_COLLINEAR_TOL: f64 = 1e-9;

/// Jacobi polynomial `P_n^(α,β)(x)` by the three-term recurrence in `n`.
pub fn jacobi<T: Real>(n: u32, alpha: u32, beta: u32, x: T) -> T {
    let one = T::one();
    let two = real::<T>(2.0);
    let (a, b) = (real::<T>(alpha as f64), real::<T>(beta as f64));
    let mut p0 = one;
    if n == 0 {
        return p0;
    }
    let mut p1 = (a + one) + (a + b + two) * (x - one) / two;
    for m in 2..=n {
        let m = real::<T>(m as f64);
        let c = two * m + a + b;
        let a1 = two * m * (m + a + b) * (c - two);
        let a2 = (c - one) * (a * a - b * b);
        let a3 = (c - two) * (c - one) * c;
        let a4 = two * (m + a - one) * (m + b - one) * c;
        let p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Lengths and relative angles of three vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalConfig<T> {
    /// Squared lengths `ξ1, ξ2, ξ3`.
    pub xi: [T; 3],
    pub theta12: T,
    pub theta13: T,
    pub theta23: T,
    /// Azimuth of `r3` about `r1`, measured from the `r1`-`r2` plane.
    pub phi: T,
}

impl<T: Real> SphericalConfig<T> {
    /// Configuration from `θ12`, `θ13` and `φ`; `θ23` follows from them.
    pub fn from_angles(xi: [T; 3], theta12: T, theta13: T, phi: T) -> Self {
        let c23 = theta12.cos() * theta13.cos() + theta12.sin() * theta13.sin() * phi.cos();
        let one = T::one();
        SphericalConfig {
            xi,
            theta12,
            theta13,
            theta23: c23.max(-one).min(one).acos(),
            phi,
        }
    }

    /// `ζ = sqrt(ξ1 ξ2 ξ3) sin θ12 sin θ13 sin φ`.
    pub fn zeta(&self) -> T {
        (self.xi[0] * self.xi[1] * self.xi[2]).sqrt()
            * self.theta12.sin()
            * self.theta13.sin()
            * self.phi.sin()
    }

    /// Largest violation of
    /// `cos φ · sin θ12 sin θ13 = cos θ23 - cos θ12 cos θ13`.
    pub fn consistency_error(&self) -> T {
        let lhs = self.phi.cos() * self.theta12.sin() * self.theta13.sin();
        let rhs = self.theta23.cos() - self.theta12.cos() * self.theta13.cos();
        (lhs - rhs).abs()
    }

    /// Cartesian vectors realizing this configuration in the special frame.
    pub fn to_vectors(&self) -> [[T; 3]; 3] {
        let z = T::zero();
        let [l1, l2, l3] = self.xi.map(|x| x.sqrt());
        [
            [z, z, l1],
            [l2 * self.theta12.sin(), z, l2 * self.theta12.cos()],
            [
                l3 * self.theta13.sin() * self.phi.cos(),
                l3 * self.theta13.sin() * self.phi.sin(),
                l3 * self.theta13.cos(),
            ],
        ]
    }
}

/// Configuration of three vectors. `cos θab = η_c / sqrt(ξa ξb)` with `c`
/// the third index, and the sign of `sin φ` is taken from `ζ`.
pub fn config_from_vectors<T: Real>(r: &[[T; 3]; 3]) -> Result<SphericalConfig<T>> {
    config_from_vectors_with_tol(r, real(DEFAULT_COLLINEAR_TOL))
}

pub fn config_from_vectors_with_tol<T: Real>(r: &[[T; 3]; 3], tol: T) -> Result<SphericalConfig<T>> {
    let sp = scalar_products(r);
    if let Some(i) = sp.xi.iter().position(|x| *x <= T::zero()) {
        return Err(Error::Degenerate(format!("vector r{} has zero length", i + 1)));
    }
    let one = T::one();
    let clamp = |c: T| c.max(-one).min(one);
    let [x1, x2, x3] = sp.xi;
    let [h1, h2, h3] = sp.eta;
    let c12 = clamp(h3 / (x1 * x2).sqrt());
    let c13 = clamp(h2 / (x1 * x3).sqrt());
    let c23 = clamp(h1 / (x2 * x3).sqrt());
    let s12 = (one - c12 * c12).max(T::zero()).sqrt();
    let s13 = (one - c13 * c13).max(T::zero()).sqrt();
    if s12 < tol {
        return Err(Error::Degenerate("r1 and r2 are collinear".into()));
    }
    if s13 < tol {
        return Err(Error::Degenerate("r1 and r3 are collinear".into()));
    }
    let cos_phi = (c23 - c12 * c13) / (s12 * s13);
    let sin_phi = sp.zeta / ((x1 * x2 * x3).sqrt() * s12 * s13);
    Ok(SphericalConfig {
        xi: sp.xi,
        theta12: c12.acos(),
        theta13: c13.acos(),
        theta23: c23.acos(),
        phi: sin_phi.atan2(cos_phi),
    })
}

fn signed_pow<T: Real>(x: T, e: i64) -> T {
    x.powi(e as i32)
}

/// Angular sum for one `|ν|`:
/// even: `Σ_{r,s} (-1)^{r+s} C(ν,2r) C(r,s) u^{ν-2r+2s} w^{r-s}`,
/// odd: the same with `C(ν,2r+1)` and `u^{ν-1-2r+2s}`,
/// where `u = cos θ23 - cos θ12 cos θ13` and
/// `w = (1 - cos²θ12)(1 - cos²θ13)`.
fn angular_sum<T: Real>(nu: i64, odd: bool, u: T, w: T) -> T {
    let mut total = T::zero();
    let r_max = if odd { (nu - 1).div_euclid(2) } else { nu / 2 };
    for r in 0..=r_max {
        for s in 0..=r {
            let sign = if (r + s) % 2 == 0 { T::one() } else { -T::one() };
            let (pick, upow) = if odd {
                (2 * r + 1, nu - 1 - 2 * r + 2 * s)
            } else {
                (2 * r, nu - 2 * r + 2 * s)
            };
            let c = binomial(nu as u64, pick as u64) * binomial(r as u64, s as u64);
            let c = real::<T>(c.to_f64().unwrap_or(f64::INFINITY));
            total += sign * c * signed_pow(u, upow) * signed_pow(w, r - s);
        }
    }
    total
}

/// `I_{j,k,l}` evaluated from spherical variables.
pub fn appendix_eval<T: Real>(spec: InvariantSpec, cfg: &SphericalConfig<T>) -> Result<Complex<T>> {
    appendix_eval_with_tol(spec, cfg, real(DEFAULT_COLLINEAR_TOL))
}

pub fn appendix_eval_with_tol<T: Real>(
    spec: InvariantSpec,
    cfg: &SphericalConfig<T>,
    tol: T,
) -> Result<Complex<T>> {
    let [j, k, l] = spec.indices();
    let (s12, s13) = (cfg.theta12.sin(), cfg.theta13.sin());
    if s12 * s13 < tol {
        return Err(Error::Degenerate(format!(
            "sin θ12 · sin θ13 = {:?} is below tolerance",
            s12 * s13
        )));
    }
    let (c12, c13, c23) = (cfg.theta12.cos(), cfg.theta13.cos(), cfg.theta23.cos());
    let u = c23 - c12 * c13;
    let w = (T::one() - c12 * c12) * (T::one() - c13 * c13);
    let odd = spec.parity() == Parity::Odd;
    let (ki, li) = (k as i64, l as i64);

    let mut sum = T::zero();
    for nu in -ki..=ki {
        if nu.abs() > li {
            continue;
        }
        if odd && nu == 0 {
            continue;
        }
        let w3j = wigner3j(ThreeJArgs::new(j, k, l, 0, nu as i32, -nu as i32)).to_f64();
        if w3j == 0.0 {
            continue;
        }
        let a = nu.unsigned_abs();
        let radical = factorial((ki - nu) as u64)
            * factorial((ki + nu) as u64)
            * factorial((li - nu) as u64)
            * factorial((li + nu) as u64);
        let radical = radical.to_f64().unwrap_or(f64::INFINITY).sqrt() / 4f64.powi(a as i32);
        let mut term = real::<T>(w3j * radical)
            * jacobi(k - a as u32, a as u32, a as u32, c12)
            * jacobi(l - a as u32, a as u32, a as u32, c13)
            * angular_sum(a as i64, odd, u, w);
        if nu % 2 != 0 {
            term = -term;
        }
        if odd && nu < 0 {
            term = -term;
        }
        sum += term;
    }
    let denom = factorial(k as u64) * factorial(l as u64);
    let inv_denom = real::<T>(1.0 / denom.to_f64().unwrap_or(f64::INFINITY));
    let [x1, x2, x3] = cfg.xi;
    if odd {
        // -iζ sqrt(ξ1^{j-1} ξ2^{k-1} ξ3^{l-1}) / (k! l!) Σ ...
        let lengths = (x1.powi(j as i32 - 1) * x2.powi(k as i32 - 1) * x3.powi(l as i32 - 1)).sqrt();
        let v = -cfg.zeta() * lengths * inv_denom * sum;
        Ok(Complex::new(T::zero(), v))
    } else {
        let lengths = (x1.powi(j as i32) * x2.powi(k as i32) * x3.powi(l as i32)).sqrt();
        Ok(Complex::new(lengths * inv_denom * sum, T::zero()))
    }
}
