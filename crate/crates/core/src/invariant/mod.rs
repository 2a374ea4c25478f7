//! Assembled invariants `I_{j,k,l}` as polynomials in the scalar products
//! `ξ1, ξ2, ξ3, η1, η2, η3` times an optional factor `iζ`.
//!
//! `ξa = ra·ra`, `η1 = r2·r3`, `η2 = r3·r1`, `η3 = r1·r2`, `ζ = (r1×r2)·r3`.

mod cartesian;
mod eval;
mod render;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::angular::{triangle_ok, wigner3j, wigner3j_permutation_phase, ThreeJArgs};
use crate::coeffs::{table_closed, CoeffQuery, CoeffTable, Kind};
use crate::error::{Error, Result};
use crate::exactnum::{Rational, SurdSum};
use crate::poly::{Monomial, Poly};

pub use cartesian::{scalar_cartesian, to_cartesian, zeta_cartesian, zeta_squared_identity};
pub use eval::{evaluate, evaluate_float, scalar_products, ScalarProducts};
pub use render::{invariant_json, render, Format};

/// Variable indices of a [`ScalarPoly`].
pub const XI1: usize = 0;
pub const XI2: usize = 1;
pub const XI3: usize = 2;
pub const ETA1: usize = 3;
pub const ETA2: usize = 4;
pub const ETA3: usize = 5;

/// Index of `ξa` for vector slot `a` (0-based).
pub fn xi(a: usize) -> usize {
    XI1 + a
}

/// Index of `ηa`, the product of the two vectors other than `a`.
pub fn eta(a: usize) -> usize {
    ETA1 + a
}

/// Exponents `(e_ξ1, e_ξ2, e_ξ3, e_η1, e_η2, e_η3)`.
pub type ScalarMonomial = Monomial<6>;

/// Rational polynomial in `ξ1, ξ2, ξ3, η1, η2, η3`.
pub type ScalarPoly = Poly<Rational, 6>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(total: u32) -> Parity {
        if total % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Parity::Even => Kind::Even,
            Parity::Odd => Kind::Odd,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// A triangle-valid `(j, k, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSpec {
    j: u32,
    k: u32,
    l: u32,
}

impl InvariantSpec {
    pub fn new(j: u32, k: u32, l: u32) -> Result<Self> {
        if !triangle_ok(j, k, l) {
            return Err(Error::Triangle { j, k, l });
        }
        if let Some(&big) = [j, k, l].iter().find(|&&x| x > crate::MAX_L) {
            return Err(Error::TooLarge(big));
        }
        Ok(InvariantSpec { j, k, l })
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn indices(&self) -> [u32; 3] {
        [self.j, self.k, self.l]
    }

    pub fn total(&self) -> u32 {
        self.j + self.k + self.l
    }

    pub fn max_l(&self) -> u32 {
        self.j.max(self.k).max(self.l)
    }

    pub fn parity(&self) -> Parity {
        Parity::of(self.total())
    }

    pub fn is_canonical(&self) -> bool {
        self.j <= self.k && self.k <= self.l
    }

    /// Coefficient query of the sorted triple: `(J, K, (J+K-L)/2)` for even
    /// specs and `(J-1, K-1, (J+K-L-1)/2)` for odd ones.
    pub fn query(&self) -> CoeffQuery {
        let mut s = self.indices();
        s.sort_unstable();
        let [a, b, c] = s;
        let q = match self.parity() {
            Parity::Even => CoeffQuery::new(a, b, (a + b - c) / 2),
            Parity::Odd => CoeffQuery::new(a - 1, b - 1, (a + b - c - 1) / 2),
        };
        q.expect("triangle-valid spec maps to a valid query")
    }

    pub fn canonical_n(&self) -> u32 {
        self.query().n
    }

    /// Inverse of [`InvariantSpec::query`].
    pub fn from_query(q: CoeffQuery, parity: Parity) -> InvariantSpec {
        let (j, k, n) = (q.j, q.k, q.n);
        let spec = match parity {
            Parity::Even => InvariantSpec::new(j, k, j + k - 2 * n),
            Parity::Odd => InvariantSpec::new(j + 1, k + 1, j + k - 2 * n + 1),
        };
        spec.expect("valid query maps to a triangle-valid spec")
    }

    /// Canonical specs with `j <= k <= l <= max_l`.
    pub fn canonical_up_to(max_l: u32) -> Vec<InvariantSpec> {
        let mut out = Vec::new();
        for l in 0..=max_l {
            for k in 0..=l {
                for j in 0..=k {
                    if let Ok(s) = InvariantSpec::new(j, k, l) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }

    /// Canonical specs with `j + k + l <= max_total`.
    pub fn canonical_by_total(max_total: u32) -> Vec<InvariantSpec> {
        InvariantSpec::canonical_up_to(max_total)
            .into_iter()
            .filter(|s| s.total() <= max_total)
            .collect()
    }
}

impl fmt::Display for InvariantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I({},{},{})", self.j, self.k, self.l)
    }
}

/// Result of sorting a spec into canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Canonical {
    /// The sorted spec.
    pub spec: InvariantSpec,
    /// Canonical slot `a` holds original vector `perm[a]`.
    pub perm: [usize; 3],
    /// `±1`: the 3-j column phase `(-1)^(j+k+l)` raised to the parity of
    /// `perm`.
    pub sign: i32,
    /// Whether `perm` is an odd permutation.
    pub odd_permutation: bool,
}

pub fn canonicalize(j: u32, k: u32, l: u32) -> Result<Canonical> {
    let spec = InvariantSpec::new(j, k, l)?;
    let vals = spec.indices();
    let mut perm = [0usize, 1, 2];
    perm.sort_by_key(|&i| vals[i]);
    let inversions = (0..3)
        .flat_map(|x| (x + 1..3).map(move |y| (x, y)))
        .filter(|&(x, y)| perm[x] > perm[y])
        .count();
    let odd_permutation = inversions % 2 == 1;
    let phase = wigner3j_permutation_phase(j, k, l);
    let sign = if odd_permutation { phase } else { 1 };
    let sorted = InvariantSpec::new(vals[perm[0]], vals[perm[1]], vals[perm[2]])?;
    Ok(Canonical {
        spec: sorted,
        perm,
        sign,
        odd_permutation,
    })
}

/// `prefactor · [i ζ] · poly`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    pub spec: InvariantSpec,
    /// Single surd term.
    pub prefactor: SurdSum,
    pub imaginary: bool,
    pub zeta_power: u32,
    pub poly: ScalarPoly,
}

impl InvariantPoly {
    pub fn parity(&self) -> Parity {
        self.spec.parity()
    }
}

/// Monomial `ξ1^a ξ2^c ξ3^(a+b+c-n) η1^(k-2c-b) η2^(j-2a-b) η3^b`.
pub fn table_monomial(q: CoeffQuery, a: u32, b: u32, c: u32) -> ScalarMonomial {
    let (j, k, n) = (q.j, q.k, q.n);
    Monomial::new([a, c, a + b + c - n, k - 2 * c - b, j - 2 * a - b, b])
}

fn normalized_poly(q: CoeffQuery, table: &CoeffTable) -> Result<ScalarPoly> {
    let total = table.normalizer();
    if total.is_zero() {
        return Err(Error::ZeroNormalizer {
            j: q.j,
            k: q.k,
            n: q.n,
        });
    }
    let inv = Rational::one() / total;
    let mut poly = ScalarPoly::zero();
    for ((a, b, c), v) in table.entries() {
        poly.add_term(table_monomial(q, a, b, c), v * &inv);
    }
    Ok(poly)
}

fn check_table(q: CoeffQuery, table: &CoeffTable, kind: Kind) -> Result<()> {
    if table.kind != kind || table.query != q {
        return Err(Error::TableMismatch(format!(
            "expected {} table for {q}, got {} table for {}",
            kind.name(),
            table.kind.name(),
            table.query
        )));
    }
    Ok(())
}

/// `I_{j,k,j+k-2n}` from an `A_abc` table.
pub fn assemble_even(q: CoeffQuery, table: &CoeffTable) -> Result<InvariantPoly> {
    check_table(q, table, Kind::Even)?;
    let spec = InvariantSpec::from_query(q, Parity::Even);
    let prefactor = wigner3j(ThreeJArgs::new(spec.j, spec.k, spec.l, 0, 0, 0));
    Ok(InvariantPoly {
        spec,
        prefactor,
        imaginary: false,
        zeta_power: 0,
        poly: normalized_poly(q, table)?,
    })
}

/// `I_{j+1,k+1,j+k-2n+1}` from a `B_abc` table.
pub fn assemble_odd(q: CoeffQuery, table: &CoeffTable) -> Result<InvariantPoly> {
    check_table(q, table, Kind::Odd)?;
    let spec = InvariantSpec::from_query(q, Parity::Odd);
    let (j, k) = (q.j as i64, q.k as i64);
    // (1/2) sqrt((j+2)!(k+2)!/(j!k!))
    let ladder = SurdSum::sqrt(&Rational::from_integer(((j + 2) * (j + 1) * (k + 2) * (k + 1)).into()))?
        .scale(&Rational::new(1.into(), 2.into()));
    let three_j = wigner3j(ThreeJArgs::new(spec.j, spec.k, spec.l, 1, -1, 0));
    Ok(InvariantPoly {
        spec,
        prefactor: ladder * three_j,
        imaginary: true,
        zeta_power: 1,
        poly: normalized_poly(q, table)?,
    })
}

pub fn assemble(q: CoeffQuery, table: &CoeffTable) -> Result<InvariantPoly> {
    match table.kind {
        Kind::Even => assemble_even(q, table),
        Kind::Odd => assemble_odd(q, table),
    }
}

/// Express a canonical invariant in the original vector order.
pub fn relabel(canonical: &InvariantPoly, c: &Canonical, original: InvariantSpec) -> InvariantPoly {
    let p = c.perm;
    let mut sign = c.sign;
    if canonical.zeta_power % 2 == 1 && c.odd_permutation {
        sign = -sign;
    }
    let factor = Rational::from_integer(sign.into());
    let poly = canonical
        .poly
        .map_monomials(|m| {
            let mut e = [0u32; 6];
            for (a, &orig) in p.iter().enumerate() {
                e[xi(orig)] = m.exponent(xi(a));
                e[eta(orig)] = m.exponent(eta(a));
            }
            Monomial::new(e)
        })
        .scale(&factor);
    InvariantPoly {
        spec: original,
        prefactor: canonical.prefactor.clone(),
        imaginary: canonical.imaginary,
        zeta_power: canonical.zeta_power,
        poly,
    }
}

/// Build `I_{j,k,l}` in any index order, taking coefficient tables from
/// `tables`.
pub fn build_invariant_with(
    j: u32,
    k: u32,
    l: u32,
    tables: impl Fn(Kind, CoeffQuery) -> Result<CoeffTable>,
) -> Result<InvariantPoly> {
    let c = canonicalize(j, k, l)?;
    let q = c.spec.query();
    let kind = c.spec.parity().kind();
    let table = tables(kind, q)?;
    let canonical = assemble(q, &table)?;
    debug_assert_eq!(canonical.spec, c.spec);
    Ok(relabel(&canonical, &c, InvariantSpec::new(j, k, l)?))
}

/// Build `I_{j,k,l}` from the closed-form tables.
pub fn build_invariant(j: u32, k: u32, l: u32) -> Result<InvariantPoly> {
    build_invariant_with(j, k, l, |kind, q| Ok(table_closed(q, kind)))
}

/// Positive content: gcd of the numerators over lcm of the denominators.
pub(crate) fn content(poly: &ScalarPoly) -> Rational {
    use num_integer::Integer;
    let mut num = num_bigint::BigInt::zero();
    let mut den = num_bigint::BigInt::one();
    for (_, c) in poly.iter() {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        return Rational::one();
    }
    Rational::new(num.abs(), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, rat};

    fn mono(e: [u32; 6]) -> ScalarMonomial {
        Monomial::new(e)
    }

    #[test]
    fn spec_queries() {
        let s = InvariantSpec::new(2, 4, 6).unwrap();
        assert_eq!(s.query(), CoeffQuery::new(2, 4, 0).unwrap());
        let s = InvariantSpec::new(2, 3, 4).unwrap();
        assert_eq!(s.parity(), Parity::Odd);
        assert_eq!(s.query(), CoeffQuery::new(1, 2, 0).unwrap());
        let s = InvariantSpec::new(4, 4, 5).unwrap();
        assert_eq!(s.query(), CoeffQuery::new(3, 3, 1).unwrap());
        assert_eq!(InvariantSpec::new(1, 1, 3), Err(Error::Triangle { j: 1, k: 1, l: 3 }));
        for s in InvariantSpec::canonical_up_to(9) {
            assert_eq!(InvariantSpec::from_query(s.query(), s.parity()), s);
        }
    }

    #[test]
    fn canonicalize_examples() {
        let c = canonicalize(2, 1, 1).unwrap();
        assert_eq!(c.spec, InvariantSpec::new(1, 1, 2).unwrap());
        assert_eq!(c.perm, [1, 2, 0]);
        assert_eq!(c.sign, 1);

        let c = canonicalize(1, 1, 1).unwrap();
        assert_eq!(c.perm, [0, 1, 2]);
        assert_eq!(c.sign, 1);
        assert!(!c.odd_permutation);

        let c = canonicalize(3, 2, 2).unwrap();
        assert_eq!(c.spec, InvariantSpec::new(2, 2, 3).unwrap());
        assert_eq!(c.perm, [1, 2, 0]);
        assert!(!c.odd_permutation);

        let c = canonicalize(2, 1, 2).unwrap();
        assert_eq!(c.perm, [1, 0, 2]);
        assert_eq!(c.sign, -1);
        assert!(canonicalize(1, 1, 3).is_err());
    }

    #[test]
    fn small_even_invariants() {
        let i = build_invariant(0, 0, 0).unwrap();
        assert_eq!(i.prefactor, SurdSum::one());
        assert_eq!(i.poly, ScalarPoly::constant(int(1)));

        let i = build_invariant(0, 1, 1).unwrap();
        assert_eq!(i.prefactor, SurdSum::signed_sqrt(&rat(-1, 3)));
        assert_eq!(i.poly, ScalarPoly::var(ETA1));

        let i = build_invariant(0, 2, 2).unwrap();
        assert_eq!(i.prefactor, SurdSum::sqrt(&rat(1, 5)).unwrap());
        let mut expect = ScalarPoly::zero();
        expect.add_term(mono([0, 0, 0, 2, 0, 0]), rat(3, 2));
        expect.add_term(mono([0, 1, 1, 0, 0, 0]), rat(-1, 2));
        assert_eq!(i.poly, expect);
    }

    #[test]
    fn small_odd_invariants() {
        let i = build_invariant(1, 1, 1).unwrap();
        assert!(i.imaginary);
        assert_eq!(i.zeta_power, 1);
        assert_eq!(i.prefactor, SurdSum::sqrt(&rat(1, 6)).unwrap());
        assert_eq!(i.poly, ScalarPoly::constant(int(1)));

        let i = build_invariant(2, 3, 4).unwrap();
        assert_eq!(i.prefactor, SurdSum::signed_sqrt(&rat(-5, 7)));
        let mut expect = ScalarPoly::zero();
        expect.add_term(mono([0, 0, 0, 2, 1, 0]), rat(7, 4));
        expect.add_term(mono([0, 1, 1, 0, 1, 0]), rat(-1, 4));
        expect.add_term(mono([0, 0, 1, 1, 0, 1]), rat(-2, 4));
        assert_eq!(i.poly, expect);
    }

    #[test]
    fn normalized_polys_sum_to_one() {
        for s in InvariantSpec::canonical_up_to(8) {
            let i = build_invariant(s.j(), s.k(), s.l()).unwrap();
            let mut total = Rational::zero();
            for (_, c) in i.poly.iter() {
                total += c;
            }
            assert_eq!(total, Rational::one(), "{s}");
            assert_eq!(i.prefactor.num_terms(), 1);
        }
    }

    #[test]
    fn mismatched_table_is_rejected() {
        let q = CoeffQuery::new(1, 1, 0).unwrap();
        let t = table_closed(q, Kind::Odd);
        assert!(matches!(assemble_even(q, &t), Err(Error::TableMismatch(_))));
    }
}
