use std::cell::RefCell;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

thread_local! {
    static FACTORIALS: RefCell<Vec<BigInt>> = RefCell::new(vec![BigInt::one()]);
}

/// `n!`
pub fn factorial(n: u64) -> BigInt {
    FACTORIALS.with(|cache| {
        let mut cache = cache.borrow_mut();
        while cache.len() as u64 <= n {
            let next = cache.last().unwrap() * BigInt::from(cache.len());
            cache.push(next);
        }
        cache[n as usize].clone()
    })
}

/// `n!` for a signed argument; `None` when `n < 0`.
pub fn factorial_signed(n: i64) -> Option<BigInt> {
    (n >= 0).then(|| factorial(n as u64))
}

/// `n!! = n (n-2) (n-4) ...` with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Result<BigInt> {
    if n < -1 {
        return Err(Error::DoubleFactorial(n));
    }
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    Ok(acc)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Split `n = s^2 m` with `m` squarefree, by trial division.
///
/// Radicands here are products of small factorials, so the loop ends as
/// soon as the cofactor reaches 1.
pub fn squarefree_split(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "squarefree_split of zero");
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut d = 2u64;
    loop {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut count = 0u32;
        loop {
            let (q, r) = rest.div_rem(&dd);
            if !r.is_zero() {
                break;
            }
            rest = q;
            count += 1;
        }
        if count > 0 {
            square *= dd.pow(count / 2);
            if count % 2 == 1 {
                free *= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // what is left is 1 or a prime
    free *= rest;
    (square, free)
}

pub fn is_squarefree(m: &BigUint) -> bool {
    !m.is_zero() && squarefree_split(m).0.is_one()
}
