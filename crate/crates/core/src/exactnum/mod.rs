//! Exact number tower: big rationals, quadratic-surd sums, complex surds,
//! and the factorial-type combinatorics used throughout.

mod combinatorics;
mod surd;

pub use combinatorics::{
    binomial, double_factorial, factorial, factorial_signed, is_squarefree, squarefree_split,
};
pub use surd::{ComplexSurd, SurdSum};

pub(crate) use surd::single_term_text;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for a small rational literal.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `numerator/denominator`, always with an explicit denominator.
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parse `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: `{s}`"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(p, q))
}

/// `1/n!` as a rational, zero for negative `n`.
pub(crate) fn inv_factorial(n: i64) -> Rational {
    match factorial_signed(n) {
        Some(f) => Rational::new(BigInt::one(), f),
        None => Rational::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    #[test]
    fn rational_strings_round_trip() {
        let r = rat(-6, 4);
        assert_eq!(rational_string(&r), "-3/2");
        assert_eq!(parse_rational("-3/2").unwrap(), r);
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(rational_string(&Rational::zero()), "0/1");
    }

    fn small_surd() -> impl Strategy<Value = SurdSum> {
        prop::collection::vec((-20i64..20, 1i64..12, 1u32..40), 0..4).prop_map(|parts| {
            parts.into_iter().fold(SurdSum::zero(), |acc, (p, q, m)| {
                acc + SurdSum::term(rat(p, q), BigUint::from(m))
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn surd_ring_distributes(a in small_surd(), b in small_surd(), c in small_surd()) {
            let lhs = (a.clone() + b.clone()) * c.clone();
            let rhs = a.clone() * c.clone() + b.clone() * c.clone();
            prop_assert!(lhs.is_canonical() && rhs.is_canonical());
            prop_assert_eq!(lhs, rhs);
            let comm = a.clone() * b.clone() == b.clone() * a.clone();
            prop_assert!(comm);
            let cancel = (a.clone() - a).is_zero();
            prop_assert!(cancel);
        }

        #[test]
        fn squarefree_split_round_trip(n in 1u64..5_000_000) {
            let (s, m) = squarefree_split(&BigUint::from(n));
            prop_assert_eq!(&s * &s * &m, BigUint::from(n));
            let m = u64::try_from(m).unwrap();
            let mut d = 2u64;
            while d * d <= m {
                prop_assert!(m % (d * d) != 0);
                d += 1;
            }
        }
    }
}
