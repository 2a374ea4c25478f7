//! Sparse multivariate polynomials with packed exponent vectors.
//!
//! A [`Monomial`] packs up to nine exponents of seven bits each into a
//! `u64`, variable 0 in the most significant field, so the integer order
//! of the packed word is the lexicographic order of the exponent tuple.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rustc_hash::FxHashMap;

use crate::scalar::Coefficient;

const FIELD_BITS: u32 = 7;
const FIELD_MASK: u64 = (1 << FIELD_BITS) - 1;

/// Largest exponent representable in a single monomial field.
pub const MAX_EXPONENT: u32 = FIELD_MASK as u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial<const N: usize>(u64);

impl<const N: usize> Monomial<N> {
    const FITS: () = assert!(N as u32 * FIELD_BITS <= 64);

    #[inline]
    fn shift(i: usize) -> u32 {
        (N - 1 - i) as u32 * FIELD_BITS
    }

    pub fn one() -> Self {
        #[allow(clippy::let_unit_value)]
        let _ = Self::FITS;
        Monomial(0)
    }

    /// Panics if any exponent exceeds [`MAX_EXPONENT`].
    pub fn new(exponents: [u32; N]) -> Self {
        let mut word = 0u64;
        for (i, &e) in exponents.iter().enumerate() {
            assert!(e <= MAX_EXPONENT, "exponent {e} overflows monomial field");
            word |= (e as u64) << Self::shift(i);
        }
        Monomial(word)
    }

    pub fn var(i: usize, power: u32) -> Self {
        let mut e = [0; N];
        e[i] = power;
        Self::new(e)
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        ((self.0 >> Self::shift(i)) & FIELD_MASK) as u32
    }

    pub fn exponents(&self) -> [u32; N] {
        std::array::from_fn(|i| self.exponent(i))
    }

    pub fn total_degree(&self) -> u32 {
        (0..N).map(|i| self.exponent(i)).sum()
    }

    /// Product of monomials. Exponent fields must not overflow.
    #[inline]
    pub fn mul(self, other: Self) -> Self {
        debug_assert!(
            (0..N).all(|i| self.exponent(i) + other.exponent(i) <= MAX_EXPONENT),
            "monomial exponent overflow"
        );
        Monomial(self.0 + other.0)
    }

    /// Lower exponent `i` by `by`; `None` if it would go negative.
    pub fn lower(self, i: usize, by: u32) -> Option<Self> {
        (self.exponent(i) >= by).then(|| Monomial(self.0 - ((by as u64) << Self::shift(i))))
    }

    pub fn packed(&self) -> u64 {
        self.0
    }
}

impl<const N: usize> fmt::Debug for Monomial<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Sparse polynomial in `N` variables with coefficients in `C`.
///
/// Zero coefficients are never stored, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Default)]
pub struct Poly<C, const N: usize> {
    terms: FxHashMap<Monomial<N>, C>,
}

impl<C: Coefficient, const N: usize> Poly<C, N> {
    pub fn zero() -> Self {
        Poly {
            terms: FxHashMap::default(),
        }
    }

    pub fn constant(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial<N>, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn var(i: usize) -> Self {
        Self::term(Monomial::var(i, 1), C::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial<N>) -> Option<&C> {
        self.terms.get(m)
    }

    /// Accumulate `c` into the coefficient of `m`.
    pub fn add_term(&mut self, m: Monomial<N>, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_term_ref(&mut self, m: Monomial<N>, c: &C) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    /// Unordered iteration.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial<N>, &C)> {
        self.terms.iter()
    }

    /// Terms in lexicographic exponent order.
    pub fn sorted_terms(&self) -> Vec<(Monomial<N>, &C)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_unstable_by_key(|(m, _)| *m);
        v
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone() * s.clone());
        }
        out
    }

    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(&C) -> D) -> Poly<D, N> {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    pub fn map_monomials(&self, mut f: impl FnMut(Monomial<N>) -> Monomial<N>) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term_ref(f(*m), c);
        }
        out
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone() * scale.clone());
        }
    }

    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(*m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(C::one());
        for _ in 0..e {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Evaluate at a point, converting coefficients with `conv`.
    pub fn eval_with<T: Coefficient>(&self, point: &[T; N], conv: impl Fn(&C) -> T) -> T {
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut v = conv(c);
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exponent(i) {
                    v = v * x.clone();
                }
            }
            total += &v;
        }
        total
    }

    /// Second derivative with respect to variable `i`.
    pub fn second_derivative(&self, i: usize) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(i);
            if e >= 2 {
                let factor = C::from_u64((e as u64) * (e as u64 - 1)).expect("small integer");
                out.add_term(m.lower(i, 2).unwrap(), c.clone() * factor);
            }
        }
        out
    }
}

impl<C: Coefficient + fmt::Debug, const N: usize> fmt::Debug for Poly<C, N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.sorted_terms()).finish()
    }
}

impl<C: Coefficient, const N: usize> Add for Poly<C, N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<C: Coefficient, const N: usize> Sub for Poly<C, N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl<C: Coefficient, const N: usize> Neg for Poly<C, N> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<C: Coefficient, const N: usize> Mul for &Poly<C, N> {
    type Output = Poly<C, N>;
    fn mul(self, rhs: Self) -> Poly<C, N> {
        self.mul_ref(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type P = Poly<BigInt, 3>;

    #[test]
    fn packed_order_is_lexicographic() {
        let a = Monomial::<3>::new([1, 0, 5]);
        let b = Monomial::<3>::new([0, 9, 9]);
        let c = Monomial::<3>::new([1, 1, 0]);
        assert!(b < a && a < c);
        assert_eq!(a.mul(c).exponents(), [2, 1, 5]);
        assert_eq!(a.lower(2, 5).unwrap().exponents(), [1, 0, 0]);
        assert!(a.lower(1, 1).is_none());
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = P::var(0);
        let y = P::var(1);
        let p = &(x.clone() + y.clone()) * &(x.clone() - y.clone());
        let q = &x * &x - &y * &y;
        assert_eq!(p, q);
        assert_eq!(p.len(), 2);
        assert!((p.clone() - q).is_zero());
    }

    #[test]
    fn binomial_power() {
        let p = (P::var(0) + P::var(1)).pow(4);
        let c: Vec<i64> = p
            .sorted_terms()
            .iter()
            .map(|(_, c)| i64::try_from(*c).unwrap())
            .collect();
        assert_eq!(c, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn second_derivative_of_cube() {
        let p = P::term(Monomial::new([3, 1, 0]), BigInt::from(2));
        let d = p.second_derivative(0);
        assert_eq!(d, P::term(Monomial::new([1, 1, 0]), BigInt::from(12)));
    }
}
