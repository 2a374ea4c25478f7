//! Wigner 3-j symbols for integer angular momenta, evaluated exactly.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::exactnum::{factorial, squarefree_split, Rational, SurdSum};

/// `|j - k| <= l <= j + k`
pub fn triangle_ok(j: u32, k: u32, l: u32) -> bool {
    j.abs_diff(k) <= l && l <= j + k
}

/// `(-1)^(j+k+l)`, the phase picked up by an odd permutation of columns.
pub fn wigner3j_permutation_phase(j: u32, k: u32, l: u32) -> i32 {
    if (j + k + l) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Arguments of `(j k l; mu nu rho)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThreeJArgs {
    pub j: u32,
    pub k: u32,
    pub l: u32,
    pub mu: i32,
    pub nu: i32,
    pub rho: i32,
}

impl ThreeJArgs {
    pub fn new(j: u32, k: u32, l: u32, mu: i32, nu: i32, rho: i32) -> Self {
        ThreeJArgs {
            j,
            k,
            l,
            mu,
            nu,
            rho,
        }
    }

    fn selection_ok(&self) -> bool {
        self.mu + self.nu + self.rho == 0
            && self.mu.unsigned_abs() <= self.j
            && self.nu.unsigned_abs() <= self.k
            && self.rho.unsigned_abs() <= self.l
            && triangle_ok(self.j, self.k, self.l)
    }
}

/// Exact value as a single surd term; zero when selection rules fail.
pub fn wigner3j(args: ThreeJArgs) -> SurdSum {
    match wigner3j_parts(args) {
        Some((c, m)) => SurdSum::term(c, m),
        None => SurdSum::zero(),
    }
}

/// `(coefficient, squarefree radicand)` with value `coefficient·√radicand`,
/// or `None` for a vanishing symbol.
pub(crate) fn wigner3j_parts(args: ThreeJArgs) -> Option<(Rational, BigUint)> {
    if !args.selection_ok() {
        return None;
    }
    let (key, phase) = canonical_key(args);
    let cache = memo();
    if let Some(hit) = cache.read().unwrap().get(&key) {
        return hit.clone().map(|(c, m)| (c * Rational::from_integer(phase.into()), m));
    }
    let value = racah(key);
    cache.write().unwrap().insert(key, value.clone());
    value.map(|(c, m)| (c * Rational::from_integer(phase.into()), m))
}

type Key = [i64; 6];
type Memo = RwLock<HashMap<Key, Option<(Rational, BigUint)>>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Reduce by the column-permutation and sign-flip symmetries. Returns the
/// representative `[j1, j2, j3, m1, m2, m3]` and the phase relating it to
/// the input.
fn canonical_key(args: ThreeJArgs) -> (Key, i32) {
    let odd_total = (args.j + args.k + args.l) % 2 == 1;
    let cols = [
        (args.j as i64, args.mu as i64),
        (args.k as i64, args.nu as i64),
        (args.l as i64, args.rho as i64),
    ];
    let sorted = |mut c: [(i64, i64); 3]| -> ([(i64, i64); 3], bool) {
        // bubble sort descending, counting swaps for the permutation parity
        let mut odd = false;
        for _ in 0..2 {
            for i in 0..2 {
                if c[i] < c[i + 1] {
                    c.swap(i, i + 1);
                    odd = !odd;
                }
            }
        }
        (c, odd)
    };
    let (plain, plain_odd) = sorted(cols);
    let (flipped, flip_odd) = sorted(cols.map(|(j, m)| (j, -m)));
    let (best, odd_ops) = if flipped > plain {
        (flipped, !flip_odd)
    } else {
        (plain, plain_odd)
    };
    let phase = if odd_total && odd_ops { -1 } else { 1 };
    let key = [
        best[0].0, best[1].0, best[2].0, best[0].1, best[1].1, best[2].1,
    ];
    (key, phase)
}

/// Racah single-sum formula. The alternating sum is rational; the radical
/// part collects the triangle coefficient and the six `(j ± m)!`.
fn racah(key: Key) -> Option<(Rational, BigUint)> {
    let [j1, j2, j3, m1, m2, m3] = key;
    let f = |n: i64| factorial(n as u64);

    let t_min = 0.max(j2 - j3 - m1).max(j1 - j3 + m2);
    let t_max = (j1 + j2 - j3).min(j1 - m1).min(j2 + m2);
    let mut sum = Rational::zero();
    for t in t_min..=t_max {
        let denom = f(t)
            * f(j3 - j2 + t + m1)
            * f(j3 - j1 + t - m2)
            * f(j1 + j2 - j3 - t)
            * f(j1 - t - m1)
            * f(j2 - t + m2);
        let term = Rational::new(BigInt::one(), denom);
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    if sum.is_zero() {
        return None;
    }
    if (j1 - j2 - m3).rem_euclid(2) == 1 {
        sum = -sum;
    }

    let radical_num = f(j1 + j2 - j3)
        * f(j1 - j2 + j3)
        * f(-j1 + j2 + j3)
        * f(j1 + m1)
        * f(j1 - m1)
        * f(j2 + m2)
        * f(j2 - m2)
        * f(j3 + m3)
        * f(j3 - m3);
    let radical_den = f(j1 + j2 + j3 + 1);
    // √(N/D) = √(N·D)/D
    let (s, free) = squarefree_split(&(radical_num * &radical_den).to_biguint().unwrap());
    let coeff = sum * Rational::new(BigInt::from(s), radical_den);
    Some((coeff, free))
}
