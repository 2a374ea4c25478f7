//! Evaluation by substituting scalar products, without Cartesian expansion.

use num_complex::Complex;
use num_traits::ToPrimitive;

use super::InvariantPoly;
use crate::exactnum::{ComplexSurd, Rational};
use crate::scalar::{real, Coefficient, Real};

/// `ξ`, `η` and `ζ` of three vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarProducts<T> {
    pub xi: [T; 3],
    pub eta: [T; 3],
    pub zeta: T,
}

impl<T: Coefficient> ScalarProducts<T> {
    /// Point `(ξ1, ξ2, ξ3, η1, η2, η3)` for polynomial evaluation.
    pub fn point(&self) -> [T; 6] {
        let [x1, x2, x3] = self.xi.clone();
        let [h1, h2, h3] = self.eta.clone();
        [x1, x2, x3, h1, h2, h3]
    }
}

fn dot<T: Coefficient>(u: &[T; 3], v: &[T; 3]) -> T {
    let mut s = T::zero();
    for i in 0..3 {
        s += &(u[i].clone() * v[i].clone());
    }
    s
}

pub fn scalar_products<T: Coefficient>(r: &[[T; 3]; 3]) -> ScalarProducts<T> {
    let [r1, r2, r3] = r;
    let cross = [
        r1[1].clone() * r2[2].clone() - r1[2].clone() * r2[1].clone(),
        r1[2].clone() * r2[0].clone() - r1[0].clone() * r2[2].clone(),
        r1[0].clone() * r2[1].clone() - r1[1].clone() * r2[0].clone(),
    ];
    ScalarProducts {
        xi: [dot(r1, r1), dot(r2, r2), dot(r3, r3)],
        eta: [dot(r2, r3), dot(r3, r1), dot(r1, r2)],
        zeta: dot(&cross, r3),
    }
}

/// Exact value at rational vectors.
pub fn evaluate(inv: &InvariantPoly, r: &[[Rational; 3]; 3]) -> ComplexSurd {
    let sp = scalar_products(r);
    let mut value = inv.poly.eval_with(&sp.point(), |c| c.clone());
    for _ in 0..inv.zeta_power {
        value *= &sp.zeta;
    }
    let v = inv.prefactor.scale(&value);
    if inv.imaginary {
        ComplexSurd::imag(v)
    } else {
        ComplexSurd::real(v)
    }
}

/// Floating-point value.
pub fn evaluate_float<T: Real>(inv: &InvariantPoly, r: &[[T; 3]; 3]) -> Complex<T> {
    let sp = scalar_products(r);
    let mut value = inv
        .poly
        .eval_with(&sp.point(), |c| real::<T>(c.to_f64().unwrap_or(f64::NAN)));
    for _ in 0..inv.zeta_power {
        value = value * sp.zeta;
    }
    let v = value * real::<T>(inv.prefactor.to_f64());
    if inv.imaginary {
        Complex::new(T::zero(), v)
    } else {
        Complex::new(v, T::zero())
    }
}
