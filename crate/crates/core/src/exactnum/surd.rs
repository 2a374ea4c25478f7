//! Finite sums of rational multiples of square roots, and complex pairs
//! of them.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use super::combinatorics::{is_squarefree, squarefree_split};
use super::Rational;
use crate::error::{Error, Result};

/// `Σ c·√m` over squarefree radicands `m ≥ 1`.
///
/// Canonical: radicands squarefree, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SurdSum {
    terms: BTreeMap<BigUint, Rational>,
}

impl SurdSum {
    /// `c·√m` for an arbitrary positive integer `m`.
    pub fn term(c: Rational, m: BigUint) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (s, free) = squarefree_split(&m);
        let c = c * Rational::from_integer(BigInt::from(s));
        let mut terms = BTreeMap::new();
        terms.insert(free, c);
        SurdSum { terms }
    }

    pub fn from_rational(c: Rational) -> Self {
        Self::term(c, BigUint::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `√r` for `r ≥ 0`, normalised as `√(pq)/q`.
    pub fn sqrt(r: &Rational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::NegativeRadicand(super::rational_string(r)));
        }
        if r.is_zero() {
            return Ok(Self::zero());
        }
        let p = r.numer().to_biguint().unwrap();
        let q = r.denom().to_biguint().unwrap();
        let inv_q = Rational::new(BigInt::one(), BigInt::from(q.clone()));
        Ok(Self::term(inv_q, p * q))
    }

    /// `sign(r)·√|r|`.
    pub fn signed_sqrt(r: &Rational) -> Self {
        let mag = Self::sqrt(&r.abs()).expect("non-negative");
        if r.is_negative() {
            -mag
        } else {
            mag
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigUint, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The `(coefficient, radicand)` pair of a single-term value.
    pub fn single_term(&self) -> Option<(&Rational, &BigUint)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// Rational value if the sum has no irrational part.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&BigUint::one()).cloned(),
            _ => None,
        }
    }

    /// Signed square `sign·c²m` of a single-term value.
    pub fn signed_square(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let (c, m) = self.single_term()?;
        let sq = c * c * Rational::from_integer(BigInt::from(m.clone()));
        Some(if c.is_negative() { -sq } else { sq })
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        SurdSum {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| c.to_f64().unwrap() * m.to_f64().unwrap().sqrt())
            .sum()
    }

    /// Sign of the value; exact for single-term sums.
    pub fn signum(&self) -> i32 {
        if let Some((c, _)) = self.single_term() {
            return if c.is_negative() { -1 } else { 1 };
        }
        let v = self.to_f64();
        if self.is_zero() {
            0
        } else if v < 0.0 {
            -1
        } else {
            1
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| !c.is_zero() && is_squarefree(m))
    }

    fn insert(&mut self, m: BigUint, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut out = SurdSum::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                // √m1·√m2 = g·√((m1/g)(m2/g)) for squarefree m1, m2
                let g = m1.gcd(m2);
                let m = (m1 / &g) * (m2 / &g);
                let c = c1 * c2 * Rational::from_integer(BigInt::from(g));
                out.insert(m, c);
            }
        }
        debug_assert!(out.is_canonical());
        out
    }
}

impl Zero for SurdSum {
    fn zero() -> Self {
        SurdSum::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for SurdSum {
    fn one() -> Self {
        SurdSum::from_integer(1)
    }
}

impl FromPrimitive for SurdSum {
    fn from_i64(n: i64) -> Option<Self> {
        Some(SurdSum::from_integer(n))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(SurdSum::from_rational(Rational::from_integer(n.into())))
    }
}

impl<'a> AddAssign<&'a SurdSum> for SurdSum {
    fn add_assign(&mut self, rhs: &'a SurdSum) {
        for (m, c) in &rhs.terms {
            self.insert(m.clone(), c.clone());
        }
        debug_assert!(self.is_canonical());
    }
}

impl Add for SurdSum {
    type Output = SurdSum;
    fn add(mut self, rhs: SurdSum) -> SurdSum {
        self += &rhs;
        self
    }
}

impl Sub for SurdSum {
    type Output = SurdSum;
    fn sub(mut self, rhs: SurdSum) -> SurdSum {
        self += &(-rhs);
        self
    }
}

impl Neg for SurdSum {
    type Output = SurdSum;
    fn neg(self) -> SurdSum {
        SurdSum {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: SurdSum) -> SurdSum {
        self.mul_ref(&rhs)
    }
}

impl<'a> Mul<&'a SurdSum> for &'a SurdSum {
    type Output = SurdSum;
    fn mul(self, rhs: &'a SurdSum) -> SurdSum {
        self.mul_ref(rhs)
    }
}

/// Render a non-negative rational square root `√r` compactly:
/// `p/q`, `sqrt(p)`, `1/sqrt(q)` or `sqrt(p/q)`.
fn sqrt_text(r: &Rational) -> String {
    let p = r.numer().to_biguint().unwrap();
    let q = r.denom().to_biguint().unwrap();
    let (sp, mp) = squarefree_split(&p);
    let (sq, mq) = squarefree_split(&q);
    if mp.is_one() && mq.is_one() {
        return if sq.is_one() {
            sp.to_string()
        } else {
            format!("{sp}/{sq}")
        };
    }
    if p.is_one() {
        return format!("1/sqrt({q})");
    }
    if q.is_one() {
        return format!("sqrt({p})");
    }
    format!("sqrt({p}/{q})")
}

/// Magnitude text of a single surd term, with the sign split off.
pub(crate) fn single_term_text(c: &Rational, m: &BigUint) -> (bool, String) {
    let sq = c * c * Rational::from_integer(BigInt::from(m.clone()));
    (c.is_negative(), sqrt_text(&sq))
}

impl fmt::Display for SurdSum {
    /// Each term is written as a signed square root of a rational.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = single_term_text(c, m);
            match (i, neg) {
                (0, true) => write!(f, "-{mag}")?,
                (0, false) => write!(f, "{mag}")?,
                (_, true) => write!(f, " - {mag}")?,
                (_, false) => write!(f, " + {mag}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SurdSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SurdSum({self})")
    }
}

/// `re + i·im` with surd components.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ComplexSurd {
    pub re: SurdSum,
    pub im: SurdSum,
}

impl ComplexSurd {
    pub fn new(re: SurdSum, im: SurdSum) -> Self {
        ComplexSurd { re, im }
    }

    pub fn real(re: SurdSum) -> Self {
        ComplexSurd {
            re,
            im: SurdSum::zero(),
        }
    }

    pub fn imag(im: SurdSum) -> Self {
        ComplexSurd {
            re: SurdSum::zero(),
            im,
        }
    }

    pub fn i() -> Self {
        Self::imag(SurdSum::one())
    }

    /// `(a + bi)·√m` for a complex rational `a + bi`.
    pub fn from_complex_rational(z: &Complex<Rational>, sqrt_part: &SurdSum) -> Self {
        ComplexSurd {
            re: sqrt_part.scale(&z.re),
            im: sqrt_part.scale(&z.im),
        }
    }

    pub fn conj(&self) -> Self {
        ComplexSurd {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn mul_i(&self) -> Self {
        ComplexSurd {
            re: -self.im.clone(),
            im: self.re.clone(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ComplexSurd {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        Complex::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Zero for ComplexSurd {
    fn zero() -> Self {
        ComplexSurd::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ComplexSurd {
    fn one() -> Self {
        ComplexSurd::real(SurdSum::one())
    }
}

impl FromPrimitive for ComplexSurd {
    fn from_i64(n: i64) -> Option<Self> {
        Some(ComplexSurd::real(SurdSum::from_integer(n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        SurdSum::from_u64(n).map(ComplexSurd::real)
    }
}

impl<'a> AddAssign<&'a ComplexSurd> for ComplexSurd {
    fn add_assign(&mut self, rhs: &'a ComplexSurd) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Add for ComplexSurd {
    type Output = ComplexSurd;
    fn add(mut self, rhs: ComplexSurd) -> ComplexSurd {
        self += &rhs;
        self
    }
}

impl Sub for ComplexSurd {
    type Output = ComplexSurd;
    fn sub(self, rhs: ComplexSurd) -> ComplexSurd {
        self + (-rhs)
    }
}

impl Neg for ComplexSurd {
    type Output = ComplexSurd;
    fn neg(self) -> ComplexSurd {
        ComplexSurd {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Mul for ComplexSurd {
    type Output = ComplexSurd;
    fn mul(self, rhs: ComplexSurd) -> ComplexSurd {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        ComplexSurd { re, im }
    }
}

impl fmt::Display for ComplexSurd {
    /// `a`, `i/sqrt(6)`, `-i*sqrt(3/10)`, `a + i*b`, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let imag_text = |s: &SurdSum| -> String {
            if let Some((c, m)) = s.single_term() {
                let (neg, mag) = single_term_text(c, m);
                let sign = if neg { "-" } else { "" };
                if mag == "1" {
                    format!("{sign}i")
                } else if let Some(rest) = mag.strip_prefix("1/") {
                    format!("{sign}i/{rest}")
                } else {
                    format!("{sign}i*{mag}")
                }
            } else {
                format!("i*({s})")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", imag_text(&self.im)),
            (false, false) => {
                let im = imag_text(&self.im);
                match im.strip_prefix('-') {
                    Some(rest) => write!(f, "{} - {rest}", self.re),
                    None => write!(f, "{} + {im}", self.re),
                }
            }
        }
    }
}

impl fmt::Debug for ComplexSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexSurd({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn sqrt_int(m: u64) -> SurdSum {
        SurdSum::term(Rational::one(), BigUint::from(m))
    }

    #[test]
    fn radicand_collapse() {
        assert_eq!(sqrt_int(2) * sqrt_int(2), SurdSum::from_integer(2));
    }

    #[test]
    fn conjugate_product() {
        let a = SurdSum::one() + sqrt_int(3);
        let b = SurdSum::one() - sqrt_int(3);
        assert_eq!(a * b, SurdSum::from_integer(-2));
    }

    #[test]
    fn squarefree_product() {
        // 6·10 = 60 = 2²·15
        let expect = SurdSum::term(rat(2, 1), BigUint::from(15u32));
        assert_eq!(sqrt_int(6) * sqrt_int(10), expect);
        assert_eq!(expect.single_term().unwrap().1, &BigUint::from(15u32));
    }

    #[test]
    fn sqrt_of_fraction() {
        let s = SurdSum::sqrt(&rat(2, 15)).unwrap();
        let (c, m) = s.single_term().unwrap();
        assert_eq!(c, &rat(1, 15));
        assert_eq!(m, &BigUint::from(30u32));
        assert_eq!(s.signed_square().unwrap(), rat(2, 15));
        assert_eq!(s.to_string(), "sqrt(2/15)");
        assert!(SurdSum::sqrt(&rat(-1, 2)).is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(SurdSum::signed_sqrt(&rat(-1, 3)).to_string(), "-1/sqrt(3)");
        assert_eq!(SurdSum::signed_sqrt(&rat(4, 9)).to_string(), "2/3");
        assert_eq!(SurdSum::signed_sqrt(&rat(5, 1)).to_string(), "sqrt(5)");
        let z = ComplexSurd::imag(SurdSum::signed_sqrt(&rat(1, 6)));
        assert_eq!(z.to_string(), "i/sqrt(6)");
        let z = ComplexSurd::imag(SurdSum::signed_sqrt(&rat(-3, 10)));
        assert_eq!(z.to_string(), "-i*sqrt(3/10)");
        assert_eq!(ComplexSurd::zero().to_string(), "0");
    }

    #[test]
    fn complex_products() {
        let i = ComplexSurd::i();
        assert_eq!(i.clone() * i.clone(), -ComplexSurd::one());
        let z = ComplexSurd::new(sqrt_int(2), sqrt_int(3));
        let n = z.clone() * z.conj();
        assert_eq!(n, ComplexSurd::real(SurdSum::from_integer(5)));
    }
}
