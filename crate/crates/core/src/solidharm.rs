//! Racah-normalized solid harmonics `C^l_m` as exact Cartesian polynomials.
//!
//! `C^l_m(r) = sqrt(4π/(2l+1)) r^l Y_lm`, so no factor of π ever appears.
//! Multiplying by `2^l l!` turns the expansion into a polynomial with
//! Gaussian-integer coefficients; the remaining factor is a single surd.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial, squarefree_split, ComplexSurd, Rational, SurdSum};
use crate::poly::{Monomial, Poly};
use crate::scalar::Coefficient;

/// Gaussian integer.
pub type GaussianInt = Complex<BigInt>;

/// Polynomial in the nine components `(x1, y1, z1, x2, y2, z2, x3, y3, z3)`.
pub type CartesianPoly = Poly<ComplexSurd, 9>;

/// Polynomial in one vector's components `(x, y, z)`.
pub type VectorPoly<C> = Poly<C, 3>;

/// Which of the three vectors a polynomial refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    R1,
    R2,
    R3,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::R1, Slot::R2, Slot::R3];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Slot> {
        Self::ALL.get(i).copied()
    }

    /// First Cartesian variable of this vector.
    pub fn offset(self) -> usize {
        3 * self.index()
    }
}

/// `C^l_m = coeff · sqrt(radicand) · poly` with `poly` Gaussian-integral.
#[derive(Clone, Debug, PartialEq)]
pub struct HarmonicParts {
    pub poly: VectorPoly<GaussianInt>,
    pub coeff: Rational,
    pub radicand: BigUint,
}

pub fn harmonic_parts(l: u32, m: i32) -> Result<HarmonicParts> {
    if m.unsigned_abs() > l {
        return Err(Error::Projection { l, m });
    }
    if l > crate::MAX_L {
        return Err(Error::TooLarge(l));
    }
    let am = m.unsigned_abs();
    let mut poly = VectorPoly::<GaussianInt>::zero();
    let lf = factorial(l as u64);
    let mut k = 0;
    while am + 2 * k <= l {
        let p = am + k;
        let zpow = l - am - 2 * k;
        let mut c = lf.clone()
            / (factorial(p as u64) * factorial(k as u64) * factorial(zpow as u64))
            * (BigInt::one() << zpow);
        if p % 2 == 1 {
            c = -c;
        }
        // (x + iy)^p (x - iy)^k z^zpow
        let plus = binomial_expansion(p, 1);
        let minus = binomial_expansion(k, -1);
        let zmono = Monomial::var(2, zpow);
        let scale = GaussianInt::new(c, BigInt::zero());
        for (m1, c1) in plus.iter() {
            for (m2, c2) in minus.iter() {
                poly.add_term(m1.mul(*m2).mul(zmono), c1 * c2 * &scale);
            }
        }
        k += 1;
    }
    if m < 0 {
        // C^l_{-m} = (-1)^m conj(C^l_m)
        let sign = if am % 2 == 1 { -BigInt::one() } else { BigInt::one() };
        poly = poly.map_coeffs(|c| c.conj() * &sign);
    }
    let radical = factorial((l + am) as u64) * factorial((l - am) as u64);
    let (s, radicand) = squarefree_split(&radical.to_biguint().unwrap());
    let coeff = Rational::new(BigInt::from(s), (BigInt::one() << l) * lf);
    Ok(HarmonicParts {
        poly,
        coeff,
        radicand,
    })
}

/// `(x + sign·iy)^p` expanded.
fn binomial_expansion(p: u32, sign: i64) -> VectorPoly<GaussianInt> {
    let mut out = VectorPoly::zero();
    for t in 0..=p {
        // binom(p, t) x^(p-t) (sign·i y)^t
        let mut c = GaussianInt::new(binomial(p as u64, t as u64), BigInt::zero());
        for _ in 0..t {
            c *= GaussianInt::new(BigInt::zero(), BigInt::from(sign));
        }
        out.add_term(Monomial::new([p - t, t, 0]), c);
    }
    out
}

/// Place a single-vector polynomial into the nine-variable ring.
pub fn lift<C: Coefficient>(p: &VectorPoly<C>, slot: Slot) -> Poly<C, 9> {
    let base = slot.offset();
    let mut out = Poly::zero();
    for (m, c) in p.iter() {
        let mut e = [0u32; 9];
        for i in 0..3 {
            e[base + i] = m.exponent(i);
        }
        out.add_term_ref(Monomial::new(e), c);
    }
    out
}

pub(crate) fn gaussian_to_surd(z: &GaussianInt, coeff: &Rational, radicand: &BigUint) -> ComplexSurd {
    let re = Rational::from_integer(z.re.clone()) * coeff;
    let im = Rational::from_integer(z.im.clone()) * coeff;
    ComplexSurd::new(
        SurdSum::term(re, radicand.clone()),
        SurdSum::term(im, radicand.clone()),
    )
}

/// `C^l_m` of the vector in `slot`, with surd coefficients.
pub fn racah_solid_harmonic(l: u32, m: i32, slot: Slot) -> Result<CartesianPoly> {
    let parts = harmonic_parts(l, m)?;
    let single = parts
        .poly
        .map_coeffs(|z| gaussian_to_surd(z, &parts.coeff, &parts.radicand));
    Ok(lift(&single, slot))
}

/// Laplacian in the components of one vector.
pub fn laplacian<C: Coefficient, const N: usize>(p: &Poly<C, N>, slot: Slot) -> Poly<C, N> {
    let base = slot.offset();
    assert!(base + 3 <= N, "slot {slot:?} outside a {N}-variable polynomial");
    let mut out = p.second_derivative(base);
    out = out + p.second_derivative(base + 1);
    out + p.second_derivative(base + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn mono(e: [u32; 9]) -> Monomial<9> {
        Monomial::new(e)
    }

    #[test]
    fn low_order_harmonics() {
        let c00 = racah_solid_harmonic(0, 0, Slot::R1).unwrap();
        assert_eq!(c00, CartesianPoly::constant(ComplexSurd::one()));

        let c10 = racah_solid_harmonic(1, 0, Slot::R2).unwrap();
        assert_eq!(c10, CartesianPoly::var(5));

        // -sqrt(3/2) (x + iy) z
        let c21 = racah_solid_harmonic(2, 1, Slot::R1).unwrap();
        let s = SurdSum::sqrt(&rat(3, 2)).unwrap();
        let mut expect = CartesianPoly::zero();
        expect.add_term(mono([1, 0, 1, 0, 0, 0, 0, 0, 0]), ComplexSurd::real(-s.clone()));
        expect.add_term(mono([0, 1, 1, 0, 0, 0, 0, 0, 0]), ComplexSurd::imag(-s));
        assert_eq!(c21, expect);

        assert_eq!(
            racah_solid_harmonic(2, 3, Slot::R1),
            Err(Error::Projection { l: 2, m: 3 })
        );
    }

    #[test]
    fn laplacian_examples() {
        let z1 = CartesianPoly::var(2);
        let lap = laplacian(&z1.mul_ref(&z1), Slot::R1);
        assert_eq!(lap, CartesianPoly::constant(ComplexSurd::from_u32(2).unwrap()));

        let xi1 = (0..3).fold(CartesianPoly::zero(), |acc, i| {
            acc + CartesianPoly::var(i).mul_ref(&CartesianPoly::var(i))
        });
        assert_eq!(
            laplacian(&xi1, Slot::R1),
            CartesianPoly::constant(ComplexSurd::from_u32(6).unwrap())
        );
        assert!(laplacian(&xi1, Slot::R2).is_zero());

        let c32 = racah_solid_harmonic(3, 2, Slot::R3).unwrap();
        assert!(laplacian(&c32, Slot::R3).is_zero());
    }

    use num_traits::FromPrimitive;

    #[test]
    fn harmonic_up_to_ten() {
        for l in 0..=10u32 {
            for m in -(l as i32)..=(l as i32) {
                let parts = harmonic_parts(l, m).unwrap();
                assert!(laplacian(&parts.poly, Slot::R1).is_zero(), "l={l} m={m}");
                for (mono, _) in parts.poly.iter() {
                    assert_eq!(mono.total_degree(), l);
                }
            }
        }
    }

    #[test]
    fn north_pole_and_leading_term() {
        for l in 0..=10u32 {
            for m in -(l as i32)..=(l as i32) {
                let c = racah_solid_harmonic(l, m, Slot::R1).unwrap();
                let mut at_pole = ComplexSurd::zero();
                let mut zl = [0; 9];
                zl[2] = l;
                if let Some(v) = c.coeff(&mono(zl)) {
                    at_pole = v.clone();
                }
                let expect = if m == 0 { ComplexSurd::one() } else { ComplexSurd::zero() };
                assert_eq!(at_pole, expect, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        for l in 0..=8u32 {
            for m in 1..=(l as i32) {
                let pos = racah_solid_harmonic(l, m, Slot::R2).unwrap();
                let neg = racah_solid_harmonic(l, -m, Slot::R2).unwrap();
                let sign = if m % 2 == 0 { ComplexSurd::one() } else { -ComplexSurd::one() };
                let expect = pos.map_coeffs(|c| c.conj() * sign.clone());
                assert_eq!(neg, expect, "l={l} m={m}");
            }
        }
    }

    /// Normalization: the addition theorem gives
    /// `Σ_m |C^l_m(r)|^2 = |r|^{2l}`.
    #[test]
    fn addition_theorem_at_sample_points() {
        let points = [[1.0, 2.0, -0.5], [0.3, -1.1, 0.7], [-2.0, 0.0, 1.0]];
        for l in 0..=8u32 {
            for p in points {
                let r2: f64 = p.iter().map(|x| x * x).sum();
                let mut total = 0.0;
                for m in -(l as i32)..=(l as i32) {
                    let parts = harmonic_parts(l, m).unwrap();
                    let point = p.map(|x| Complex::new(x, 0.0));
                    let v = parts.poly.eval_with(&point, |z| {
                        Complex::new(
                            z.re.to_string().parse::<f64>().unwrap(),
                            z.im.to_string().parse::<f64>().unwrap(),
                        )
                    });
                    let scale = crate::exactnum::SurdSum::term(parts.coeff.clone(), parts.radicand.clone()).to_f64();
                    total += (v * scale).norm_sqr();
                }
                let expect = r2.powi(l as i32);
                assert!((total - expect).abs() <= 1e-10 * expect.max(1.0), "l={l} {total} vs {expect}");
            }
        }
    }
}
