//! Closed-form coefficient tables.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{CoeffQuery, CoeffTable, Kind};
use crate::exactnum::{double_factorial, factorial, inv_factorial, Rational};

/// Summation limits used by the region formulas.
///
/// `Tight` uses the trimmed limits under which every summand is generically
/// nonzero. `Wide` sums over the untrimmed boxes and relies on `G = 0` and
/// `1/(negative)! = 0` to kill the extra terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bounds {
    Tight,
    Wide,
}

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

fn dfact(n: i64) -> Rational {
    Rational::from_integer(double_factorial(n).expect("double factorial argument >= -1"))
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow2(e: i64) -> Rational {
    Rational::from_integer(BigInt::one() << e as u64)
}

/// `G_{a,b}` (even) or `F_{a,b}` (odd).
pub(crate) fn gf(q: CoeffQuery, kind: Kind, a: i64, b: i64, bounds: Bounds) -> Rational {
    let (j, k, n) = q.signed();
    if a < 0 || b < 0 || a + b > n {
        return Rational::zero();
    }
    let t = kind.dfact_offset();
    let r_lo = match bounds {
        Bounds::Tight => 0.max(2 * a + b - n),
        Bounds::Wide => 0,
    };
    let common = fact(n) * fact(k - 2 * n + 2 * a + b) * dfact(2 * j - 2 * a - 1 + t)
        / (fact(b) * fact(j - n) * dfact(2 * j - 2 * n - 1 + t) * dfact(2 * k - 2 * n - 1 + t));
    let mut sum = Rational::zero();
    for r in r_lo..=a {
        let term = sign(a + b + r) * fact(j - 2 * a - b + r)
            * dfact(2 * k - 2 * n + 4 * a + 2 * b - 2 * r - 1 + t)
            * inv_factorial(r)
            * inv_factorial(a - r)
            * inv_factorial(n - 2 * a - b + r)
            * inv_factorial(k - 2 * n + 2 * a + b - r)
            / pow2(a - r);
        sum += &term;
    }
    sum * common
}

/// `G_{a,b}`, zero when `a < 0`, `b < 0` or `a + b > n`.
pub fn g_function(q: CoeffQuery, a: i64, b: i64) -> Rational {
    gf(q, Kind::Even, a, b, Bounds::Tight)
}

/// `F_{a,b}`, the odd-parity counterpart of [`g_function`].
pub fn f_function(q: CoeffQuery, a: i64, b: i64) -> Rational {
    gf(q, Kind::Odd, a, b, Bounds::Tight)
}

/// `Π_{m=lo}^{λ} 2m (2j + 2k - 4n - 2m + shift)`; empty products are 1.
pub(crate) fn lambda_product(q: CoeffQuery, kind: Kind, lo: i64) -> Rational {
    let (j, k, n) = q.signed();
    let s = kind.shift();
    let mut acc = BigInt::one();
    for m in lo.max(1)..=q.lambda() as i64 {
        acc *= 2 * m * (2 * j + 2 * k - 4 * n - 2 * m + s);
    }
    Rational::from_integer(acc)
}

/// Normalization entry `A_00n` (even) or `B_00n` (odd).
pub fn seed(q: CoeffQuery, kind: Kind) -> Rational {
    let (j, k, n) = q.signed();
    let t = kind.dfact_offset();
    fact(k - n) * dfact(2 * j - 1 + t) / (fact(k - 2 * n) * dfact(2 * j - 2 * n - 1 + t))
        * lambda_product(q, kind, 1)
}

pub fn seed_even(q: CoeffQuery) -> Rational {
    seed(q, Kind::Even)
}

pub fn seed_odd(q: CoeffQuery) -> Rational {
    seed(q, Kind::Odd)
}

/// First-region entry at `(a, b, n-a-b)`.
#[cfg(test)]
pub(crate) fn region_first(q: CoeffQuery, kind: Kind, a: i64, b: i64) -> Rational {
    let (j, k, n) = q.signed();
    gf(q, kind, a, b, Bounds::Tight) * fact(j - n) * fact(k - n)
        / (fact(j - 2 * a - b) * fact(k - 2 * n + 2 * a + b))
        * lambda_product(q, kind, 1)
}

/// Entry at `(a, b, n-a-b+c)` for `0 <= a <= n`, `0 <= b <= n-a`.
pub(crate) fn region_second(q: CoeffQuery, kind: Kind, a: i64, b: i64, c: i64, bounds: Bounds) -> Rational {
    let (j, k, n) = q.signed();
    let mut sum = Rational::zero();
    for s in 0..=b {
        let r_lo = match bounds {
            Bounds::Tight => s.max(c - a),
            Bounds::Wide => s,
        };
        for r in r_lo..=c {
            let g = gf(q, kind, a - c + r, b - s, bounds);
            if g.is_zero() {
                continue;
            }
            sum += &(g * pow2(s) * inv_factorial(c - r) * inv_factorial(r - s) * inv_factorial(s));
        }
    }
    sum * sign(c) * fact(c) * fact(j - n) * fact(k - n)
        * inv_factorial(j - 2 * a - b)
        * inv_factorial(k - 2 * n + 2 * a + b - 2 * c)
        * lambda_product(q, kind, c + 1)
}

/// Entry at `(a, n-a+b, c)` for `0 <= a <= n`, `0 <= b <= j-n-a`.
pub(crate) fn region_third(q: CoeffQuery, kind: Kind, a: i64, b: i64, c: i64, bounds: Bounds) -> Rational {
    let (j, k, n) = q.signed();
    let (s_lo, s_hi) = match bounds {
        Bounds::Tight => (0.max(b - a), (b + c).min(n - a + b)),
        Bounds::Wide => (0, b + c),
    };
    let mut sum = Rational::zero();
    for s in s_lo..=s_hi {
        let (r_lo, r_hi) = match bounds {
            Bounds::Tight => (s.max(b + c - a), (s + c).min(b + c)),
            Bounds::Wide => (s, s + c),
        };
        for r in r_lo..=r_hi {
            let g = gf(q, kind, a - b - c + r, n - a + b - s, bounds);
            if g.is_zero() {
                continue;
            }
            sum += &(g * pow2(s) * inv_factorial(r - s) * inv_factorial(s) * inv_factorial(b + c - r));
        }
    }
    sum * sign(b + c) * fact(b + c) * fact(j - n) * fact(k - n)
        * inv_factorial(j - n - a - b)
        * inv_factorial(k - n + a - b - 2 * c)
        * lambda_product(q, kind, b + c + 1)
}

/// Entry at `(n+a, b, c)` for `0 <= a <= [j/2]-n`.
pub(crate) fn region_fourth(q: CoeffQuery, kind: Kind, a: i64, b: i64, c: i64, bounds: Bounds) -> Rational {
    let (j, k, n) = q.signed();
    let s_lo = match bounds {
        Bounds::Tight => 0.max(b - n),
        Bounds::Wide => 0,
    };
    let mut sum = Rational::zero();
    for s in s_lo..=b {
        let r_lo = match bounds {
            Bounds::Tight => s.max(b + c - n),
            Bounds::Wide => s,
        };
        for r in r_lo..=s + c {
            let g = gf(q, kind, n - b - c + r, b - s, bounds);
            if g.is_zero() {
                continue;
            }
            sum += &(g * pow2(s) * inv_factorial(r - s) * inv_factorial(s) * inv_factorial(a + b + c - r));
        }
    }
    sum * sign(a + b + c) * fact(a + b + c) * fact(j - n) * fact(k - n)
        * inv_factorial(j - 2 * n - 2 * a - b)
        * inv_factorial(k - 2 * c - b)
        * lambda_product(q, kind, a + b + c + 1)
}

/// Which region formula fills a domain index, with its local parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    /// `(a, b, n-a-b+c)`
    Second { a: i64, b: i64, c: i64 },
    /// `(a, n-a+b, c)` with `b >= 1`
    Third { a: i64, b: i64, c: i64 },
    /// `(n+a, b, c)`
    Fourth { a: i64, b: i64, c: i64 },
}

/// Partition of the index domain: rows `a < n` split at `b = n-a` between
/// the second and third formulas, rows `a >= n` use the fourth.
pub(crate) fn region_of(q: CoeffQuery, a: i64, b: i64, c: i64) -> Region {
    let n = q.n as i64;
    if a >= n {
        Region::Fourth { a: a - n, b, c }
    } else if b <= n - a {
        Region::Second {
            a,
            b,
            c: c - (n - a - b),
        }
    } else {
        Region::Third {
            a,
            b: b - (n - a),
            c,
        }
    }
}

pub(crate) fn eval_region(q: CoeffQuery, kind: Kind, region: Region, bounds: Bounds) -> Rational {
    match region {
        Region::Second { a, b, c } => region_second(q, kind, a, b, c, bounds),
        Region::Third { a, b, c } => region_third(q, kind, a, b, c, bounds),
        Region::Fourth { a, b, c } => region_fourth(q, kind, a, b, c, bounds),
    }
}

pub(crate) fn table_closed_with(q: CoeffQuery, kind: Kind, bounds: Bounds) -> CoeffTable {
    let mut table = CoeffTable::empty(q, kind);
    for (a, b, c) in q.domain() {
        let region = region_of(q, a as i64, b as i64, c as i64);
        table.insert(a, b, c, eval_region(q, kind, region, bounds));
    }
    table
}

/// `A_abc` over the whole index domain from the closed forms.
pub fn table_even_closed(q: CoeffQuery) -> CoeffTable {
    table_closed_with(q, Kind::Even, Bounds::Tight)
}

/// `B_abc` over the whole index domain from the closed forms.
pub fn table_odd_closed(q: CoeffQuery) -> CoeffTable {
    table_closed_with(q, Kind::Odd, Bounds::Tight)
}

pub fn table_closed(q: CoeffQuery, kind: Kind) -> CoeffTable {
    table_closed_with(q, kind, Bounds::Tight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn q(j: u32, k: u32, n: u32) -> CoeffQuery {
        CoeffQuery::new(j, k, n).unwrap()
    }

    /// Term-by-term transcription with floats for the ratios, used only as
    /// a cross-check of the exact implementation.
    fn gf_float(j: i64, k: i64, n: i64, a: i64, b: i64, t: i64) -> f64 {
        fn f(n: i64) -> f64 {
            (1..=n).map(|i| i as f64).product()
        }
        fn df(n: i64) -> f64 {
            let mut acc = 1.0;
            let mut i = n;
            while i > 1 {
                acc *= i as f64;
                i -= 2;
            }
            acc
        }
        if a < 0 || b < 0 || a + b > n {
            return 0.0;
        }
        let mut sum = 0.0;
        for r in 0.max(2 * a + b - n)..=a {
            let sgn = if (a + b + r) % 2 == 0 { 1.0 } else { -1.0 };
            sum += sgn * f(n) / (2f64.powi((a - r) as i32) * f(r) * f(a - r) * f(b))
                * f(j - 2 * a - b + r) * f(k - 2 * n + 2 * a + b)
                / (f(n - 2 * a - b + r) * f(j - n) * f(k - 2 * n + 2 * a + b - r))
                * df(2 * j - 2 * a - 1 + t) * df(2 * k - 2 * n + 4 * a + 2 * b - 2 * r - 1 + t)
                / (df(2 * j - 2 * n - 1 + t) * df(2 * k - 2 * n - 1 + t));
        }
        sum
    }

    #[test]
    fn g_and_f_examples() {
        assert_eq!(g_function(q(2, 2, 0), 0, 0), int(1));
        assert_eq!(g_function(q(2, 2, 1), 1, 1), int(0));
        assert_eq!(f_function(q(2, 2, 0), 0, 0), int(1));
        assert_eq!(f_function(q(2, 2, 1), 0, 2), int(0));
        // (2,2,1), a=1, b=0: only r = 1 survives:
        // (+1)·1!/(1·1!·0!·0!) · 1!·2!/(0!·1!·1!) · 1!!·3!!/(1!!·1!!) = 6
        assert_eq!(g_function(q(2, 2, 1), 1, 0), int(6));
        // r = 0: 2!·0!/(1!·1!·0!) · 3!!·1!!/(1!!·1!!) = 6
        assert_eq!(g_function(q(2, 2, 1), 0, 0), int(6));
        // (3,3,1), a=1, b=0, odd: r = 1 only:
        // 1 · 2!·3!/(0!·2!·2!) · 5!!·7!!/(5!!·5!!) = 3 · 7
        assert_eq!(f_function(q(3, 3, 1), 1, 0), int(21));
        for j in 0..=8u32 {
            for k in j..=8 {
                for n in 0..=j / 2 {
                    for a in -1..=n as i64 + 1 {
                        for b in -1..=n as i64 + 1 {
                            for (kind, t) in [(Kind::Even, 0), (Kind::Odd, 2)] {
                                let exact = gf(q(j, k, n), kind, a, b, Bounds::Tight);
                                let wide = gf(q(j, k, n), kind, a, b, Bounds::Wide);
                                assert_eq!(exact, wide);
                                let float = gf_float(j as i64, k as i64, n as i64, a, b, t);
                                let e: f64 = num_traits::ToPrimitive::to_f64(&exact).unwrap();
                                assert!((e - float).abs() <= 1e-9 * float.abs().max(1.0));
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn seed_examples() {
        assert_eq!(seed_even(q(0, 0, 0)), int(1));
        assert_eq!(seed_even(q(1, 1, 0)), int(6));
        // (2,2,1): λ = 1; (1!·3!!)/(0!·1!!) · 2·(4+4-4-2+1) = 3 · 6
        assert_eq!(seed_even(q(2, 2, 1)), int(18));
        assert_eq!(seed_odd(q(0, 0, 0)), int(1));
        // (1,1,0): λ = 1; 1 · 2·(2+2-2+3)
        assert_eq!(seed_odd(q(1, 1, 0)), int(10));
    }

    #[test]
    fn first_region_starts_at_seed() {
        for j in 0..=8u32 {
            for k in j..=8 {
                for n in 0..=j / 2 {
                    for kind in [Kind::Even, Kind::Odd] {
                        assert_eq!(region_first(q(j, k, n), kind, 0, 0), seed(q(j, k, n), kind));
                    }
                }
            }
        }
    }

    #[test]
    fn small_tables() {
        let t = table_even_closed(q(0, 0, 0));
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(0, 0, 0), int(1));
        let t = table_even_closed(q(0, 2, 0));
        // c = 0: η1², c = 1: ξ2 ξ3; ratio 3 : -1
        assert_eq!(t.get(0, 0, 1) / t.get(0, 0, 0), rat(-1, 3));
    }
}
