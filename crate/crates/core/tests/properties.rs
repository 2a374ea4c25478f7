use num_traits::{One, Zero};
use proptest::prelude::*;

use rotinv::oracle::{appendix_eval, config_from_vectors};
use rotinv::{build_invariant, evaluate, evaluate_float, ComplexSurd, InvariantSpec, Rational};

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn vector() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-5i64..=5)
}

fn vectors() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(vector())
}

fn exact(v: &[[i64; 3]; 3]) -> [[Rational; 3]; 3] {
    v.map(|x| x.map(r))
}

fn spec() -> impl Strategy<Value = InvariantSpec> {
    let all = InvariantSpec::canonical_by_total(9);
    (0..all.len()).prop_map(move |i| all[i])
}

fn any_order_spec() -> impl Strategy<Value = (u32, u32, u32)> {
    (spec(), 0usize..6).prop_map(|(s, p)| {
        let [a, b, c] = s.indices();
        [(a, b, c), (b, a, c), (a, c, b), (c, b, a), (b, c, a), (c, a, b)][p]
    })
}

/// Rational rotation from the Cayley transform `(I - A)^-1 (I + A)` of the
/// skew matrix of `(a, b, c)`.
fn cayley(a: i64, b: i64, c: i64) -> [[Rational; 3]; 3] {
    let d = r(1 + a * a + b * b + c * c);
    let m = [
        [1 + a * a - b * b - c * c, 2 * (a * b - c), 2 * (a * c + b)],
        [2 * (a * b + c), 1 - a * a + b * b - c * c, 2 * (b * c - a)],
        [2 * (a * c - b), 2 * (b * c + a), 1 - a * a - b * b + c * c],
    ];
    m.map(|row| row.map(|x| r(x) / &d))
}

fn apply(m: &[[Rational; 3]; 3], v: &[Rational; 3]) -> [Rational; 3] {
    [0, 1, 2].map(|i| {
        (0..3).fold(Rational::zero(), |acc, k| acc + &m[i][k] * &v[k])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exact_rotation_invariance(s in spec(), v in vectors(), (a, b, c) in (-3i64..=3, -3i64..=3, -3i64..=3)) {
        let inv = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let x = exact(&v);
        let m = cayley(a, b, c);
        let rotated = [apply(&m, &x[0]), apply(&m, &x[1]), apply(&m, &x[2])];
        prop_assert_eq!(evaluate(&inv, &x), evaluate(&inv, &rotated));
    }

    #[test]
    fn reflection_parity(s in spec(), v in vectors()) {
        let inv = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let x = exact(&v);
        let neg = x.clone().map(|u| u.map(|c| -c));
        let want = if s.total() % 2 == 0 { evaluate(&inv, &x) } else { -evaluate(&inv, &x) };
        prop_assert_eq!(evaluate(&inv, &neg), want);
    }

    #[test]
    fn homogeneous_in_each_vector(s in spec(), v in vectors(), slot in 0usize..3, t in 2i64..=4) {
        let inv = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let x = exact(&v);
        let mut scaled = x.clone();
        scaled[slot] = scaled[slot].clone().map(|c| c * r(t));
        let degree = s.indices()[slot];
        let factor = (0..degree).fold(Rational::one(), |acc, _| acc * r(t));
        prop_assert_eq!(evaluate(&inv, &scaled), evaluate(&inv, &x).scale(&factor));
    }

    #[test]
    fn swapping_two_vectors((j, k, l) in any_order_spec(), v in vectors()) {
        let x = exact(&v);
        let base = evaluate(&build_invariant(j, k, l).unwrap(), &x);
        let swapped = evaluate(&build_invariant(k, j, l).unwrap(), &[x[1].clone(), x[0].clone(), x[2].clone()]);
        let want = if (j + k + l) % 2 == 0 { base } else { -base };
        prop_assert_eq!(swapped, want);
    }

    #[test]
    fn float_matches_exact(s in spec(), v in vectors()) {
        let inv = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let e = evaluate(&inv, &exact(&v)).to_complex_f64();
        let f = evaluate_float(&inv, &v.map(|u| u.map(|c| c as f64)));
        prop_assert!((e - f).norm() <= 1e-12 * e.norm().max(1.0), "{} vs {}", e, f);
    }

    #[test]
    fn spherical_formula_matches(s in spec(), v in prop::array::uniform3(prop::array::uniform3(-2.0f64..2.0))) {
        prop_assume!(v.iter().all(|u| u.iter().map(|c| c * c).sum::<f64>() > 0.05));
        let Ok(cfg) = config_from_vectors(&v) else { return Ok(()) };
        prop_assume!(cfg.theta12.sin() * cfg.theta13.sin() > 1e-3);
        let inv = build_invariant(s.j(), s.k(), s.l()).unwrap();
        let want = evaluate_float(&inv, &v);
        let got = appendix_eval(s, &cfg).unwrap();
        let scale = v.iter().zip(s.indices()).map(|(u, d)| u.iter().map(|c| c * c).sum::<f64>().sqrt().powi(d as i32)).product::<f64>();
        prop_assert!((got - want).norm() <= 1e-9 * scale, "{}: {} vs {}", s, got, want);
    }
}

#[test]
fn north_pole_values() {
    let z = [r(0), r(0), r(1)];
    let inv = build_invariant(0, 2, 2).unwrap();
    let v = evaluate(&inv, &[z.clone(), z.clone(), z]);
    // (1/sqrt 5) * (3 - 1)/2
    assert_eq!(v, ComplexSurd::real(rotinv::SurdSum::sqrt(&Rational::new(1.into(), 5.into())).unwrap()));
}
