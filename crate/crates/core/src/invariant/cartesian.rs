//! Expansion of invariants into the nine Cartesian components.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{InvariantPoly, ScalarMonomial, ETA1, ETA2, ETA3, XI1, XI2, XI3};
use crate::exactnum::{ComplexSurd, Rational, SurdSum};
use crate::poly::{Monomial, Poly};
use crate::solidharm::CartesianPoly;

type IntCartesian = Poly<BigInt, 9>;

fn component(vector: usize, axis: usize) -> IntCartesian {
    IntCartesian::var(3 * vector + axis)
}

fn dot(u: usize, v: usize) -> IntCartesian {
    (0..3).fold(IntCartesian::zero(), |acc, i| acc + &component(u, i) * &component(v, i))
}

/// Cartesian form of `ξ1 … η3`, indexed like [`super::ScalarPoly`] variables.
pub fn scalar_cartesian(var: usize) -> Poly<BigInt, 9> {
    match var {
        XI1 => dot(0, 0),
        XI2 => dot(1, 1),
        XI3 => dot(2, 2),
        ETA1 => dot(1, 2),
        ETA2 => dot(2, 0),
        ETA3 => dot(0, 1),
        _ => panic!("scalar variable index {var} out of range"),
    }
}

/// `ζ = (r1 × r2)·r3`.
pub fn zeta_cartesian() -> Poly<BigInt, 9> {
    let mut out = IntCartesian::zero();
    let perms = [(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1), (0, 2, 1, -1), (2, 1, 0, -1), (1, 0, 2, -1)];
    for (i, j, k, s) in perms {
        let mut e = [0u32; 9];
        e[i] += 1;
        e[3 + j] += 1;
        e[6 + k] += 1;
        out.add_term(Monomial::new(e), BigInt::from(s));
    }
    out
}

/// `ζ² - (ξ1ξ2ξ3 - ξ1η1² - ξ2η2² - ξ3η3² + 2η1η2η3)` expanded; the zero
/// polynomial.
pub fn zeta_squared_identity() -> Poly<BigInt, 9> {
    let v = |i| scalar_cartesian(i);
    let z = zeta_cartesian();
    let xi123 = &(&v(XI1) * &v(XI2)) * &v(XI3);
    let a = &v(XI1) * &v(ETA1).pow(2);
    let b = &v(XI2) * &v(ETA2).pow(2);
    let c = &v(XI3) * &v(ETA3).pow(2);
    let d = (&(&v(ETA1) * &v(ETA2)) * &v(ETA3)).scale(&BigInt::from(2));
    &z * &z - (xi123 - a - b - c + d)
}

struct Powers {
    base: Vec<IntCartesian>,
    cache: Vec<Vec<IntCartesian>>,
}

impl Powers {
    fn new() -> Self {
        Powers {
            base: (0..6).map(scalar_cartesian).collect(),
            cache: vec![vec![IntCartesian::constant(BigInt::one())]; 6],
        }
    }

    fn get(&mut self, var: usize, e: u32) -> &IntCartesian {
        while self.cache[var].len() <= e as usize {
            let next = self.cache[var].last().unwrap().mul_ref(&self.base[var]);
            self.cache[var].push(next);
        }
        &self.cache[var][e as usize]
    }
}

/// Horner-style expansion sharing work across monomials with a common
/// prefix of exponents.
fn expand(terms: &mut [(ScalarMonomial, BigInt)], var: usize, powers: &mut Powers) -> IntCartesian {
    if var == 6 {
        let mut total = BigInt::zero();
        for (_, c) in terms.iter() {
            total += c;
        }
        return IntCartesian::constant(total);
    }
    terms.sort_unstable_by_key(|(m, _)| m.exponent(var));
    let mut out = IntCartesian::zero();
    let mut start = 0;
    while start < terms.len() {
        let e = terms[start].0.exponent(var);
        let mut end = start;
        while end < terms.len() && terms[end].0.exponent(var) == e {
            end += 1;
        }
        let inner = expand(&mut terms[start..end], var + 1, powers);
        let part = if e == 0 { inner } else { powers.get(var, e).mul_ref(&inner) };
        out = out + part;
        start = end;
    }
    out
}

/// Exact Cartesian form with the prefactor and `i` folded into the
/// coefficients.
pub fn to_cartesian(inv: &InvariantPoly) -> CartesianPoly {
    let mut lcm = BigInt::one();
    for (_, c) in inv.poly.iter() {
        lcm = lcm.lcm(c.denom());
    }
    let mut terms: Vec<(ScalarMonomial, BigInt)> = inv
        .poly
        .iter()
        .map(|(m, c)| (*m, (c * Rational::from_integer(lcm.clone())).to_integer()))
        .collect();
    let mut powers = Powers::new();
    let mut expanded = expand(&mut terms, 0, &mut powers);
    if inv.zeta_power > 0 {
        expanded = expanded.mul_ref(&zeta_cartesian().pow(inv.zeta_power));
    }
    let (pc, radicand) = inv
        .prefactor
        .single_term()
        .map(|(c, m)| (c.clone(), m.clone()))
        .unwrap_or_else(|| (Rational::zero(), One::one()));
    let scale = pc / Rational::from_integer(lcm);
    expanded.map_coeffs(|c| {
        let s = SurdSum::term(Rational::from_integer(c.clone()) * &scale, radicand.clone());
        if inv.imaginary {
            ComplexSurd::imag(s)
        } else {
            ComplexSurd::real(s)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::invariant::build_invariant;

    #[test]
    fn zeta_identity_vanishes() {
        assert!(zeta_squared_identity().is_zero());
        assert_eq!(zeta_cartesian().len(), 6);
    }

    #[test]
    fn simple_expansions() {
        let i = build_invariant(0, 1, 1).unwrap();
        let c = to_cartesian(&i);
        let s = SurdSum::signed_sqrt(&rat(-1, 3));
        let expect = scalar_cartesian(ETA1).map_coeffs(|x| {
            ComplexSurd::real(s.scale(&Rational::from_integer(x.clone())))
        });
        assert_eq!(c, expect);

        let i = build_invariant(1, 1, 1).unwrap();
        let c = to_cartesian(&i);
        assert_eq!(c.len(), 6);
        let s = SurdSum::sqrt(&rat(1, 6)).unwrap();
        let expect = zeta_cartesian()
            .map_coeffs(|x| ComplexSurd::imag(s.scale(&Rational::from_integer(x.clone()))));
        assert_eq!(c, expect);
    }

    #[test]
    fn homogeneous_degrees() {
        let i = build_invariant(1, 1, 2).unwrap();
        for (m, _) in to_cartesian(&i).iter() {
            let e = m.exponents();
            assert_eq!([e[0] + e[1] + e[2], e[3] + e[4] + e[5], e[6] + e[7] + e[8]], [1, 1, 2]);
        }
    }
}
