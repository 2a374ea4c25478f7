//! The invariant straight from its definition as a 3-j contraction of
//! three solid harmonics.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::angular::{wigner3j_parts, ThreeJArgs};
use crate::exactnum::{squarefree_split, ComplexSurd, Rational, SurdSum};
use crate::invariant::InvariantSpec;
use crate::poly::{Monomial, Poly};
use crate::solidharm::{harmonic_parts, lift, CartesianPoly, GaussianInt, HarmonicParts, Slot};

type Lifted = Vec<(Monomial<9>, GaussianInt)>;

fn lifted(parts: &HarmonicParts, slot: Slot) -> Lifted {
    lift(&parts.poly, slot)
        .iter()
        .map(|(m, c)| (*m, c.clone()))
        .collect()
}

/// `Σ_{μ,ν} (j k l; μ ν -μ-ν) C^j_μ(r1) C^k_ν(r2) C^l_{-μ-ν}(r3)`.
pub fn definition_invariant(spec: InvariantSpec) -> CartesianPoly {
    let [j, k, l] = spec.indices();
    let (ji, ki, li) = (j as i32, k as i32, l as i32);
    let harmonics = |deg: u32, slot: Slot| -> Vec<(HarmonicParts, Lifted)> {
        (-(deg as i32)..=deg as i32)
            .map(|m| {
                let p = harmonic_parts(deg, m).expect("projection in range");
                let lf = lifted(&p, slot);
                (p, lf)
            })
            .collect()
    };
    let h1 = harmonics(j, Slot::R1);
    let h2 = harmonics(k, Slot::R2);
    let h3 = harmonics(l, Slot::R3);

    // Scalar weight `coeff · sqrt(radicand)` of every (μ, ν) term.
    let mut weights: Vec<(i32, i32, Rational, BigUint)> = Vec::new();
    for mu in -ji..=ji {
        for nu in -ki..=ki {
            let rho = -mu - nu;
            if rho.abs() > li {
                continue;
            }
            let Some((c3j, m3j)) = wigner3j_parts(ThreeJArgs::new(j, k, l, mu, nu, rho)) else {
                continue;
            };
            let p1 = &h1[(mu + ji) as usize].0;
            let p2 = &h2[(nu + ki) as usize].0;
            let p3 = &h3[(rho + li) as usize].0;
            let radical = m3j * &p1.radicand * &p2.radicand * &p3.radicand;
            let (s, m) = squarefree_split(&radical);
            let c = c3j * &p1.coeff * &p2.coeff * &p3.coeff * Rational::from_integer(BigInt::from(s));
            weights.push((mu, nu, c, m));
        }
    }

    // Per radicand, a common denominator lets the heavy accumulation run
    // over Gaussian integers.
    let mut denominators: BTreeMap<BigUint, BigInt> = BTreeMap::new();
    for (_, _, c, m) in &weights {
        let d = denominators.entry(m.clone()).or_insert_with(BigInt::one);
        *d = d.lcm(c.denom());
    }
    let mut sums: BTreeMap<BigUint, Poly<GaussianInt, 9>> = BTreeMap::new();
    for (mu, nu, c, m) in &weights {
        let d = &denominators[m];
        let w = (c * Rational::from_integer(d.clone())).to_integer();
        let acc = sums.entry(m.clone()).or_insert_with(Poly::zero);
        let a = &h1[(mu + ji) as usize].1;
        let b = &h2[(nu + ki) as usize].1;
        let r = &h3[(-mu - nu + li) as usize].1;
        // fold the weight into the smallest factor
        let scaled: Lifted = a
            .iter()
            .map(|(mono, z)| (*mono, z * Complex::new(w.clone(), BigInt::zero())))
            .collect();
        for (m1, c1) in &scaled {
            for (m2, c2) in b {
                let c12 = c1 * c2;
                let m12 = m1.mul(*m2);
                for (m3, c3) in r {
                    acc.add_term(m12.mul(*m3), &c12 * c3);
                }
            }
        }
    }

    let mut out = CartesianPoly::zero();
    for (m, poly) in sums {
        let d = Rational::from_integer(denominators[&m].clone());
        for (mono, z) in poly.iter() {
            let re = SurdSum::term(Rational::from_integer(z.re.clone()) / &d, m.clone());
            let im = SurdSum::term(Rational::from_integer(z.im.clone()) / &d, m.clone());
            out.add_term(*mono, ComplexSurd::new(re, im));
        }
    }
    out
}
