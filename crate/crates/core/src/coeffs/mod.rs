//! Coefficient tables `A_abc` (even invariants) and `B_abc` (odd
//! invariants), from the closed forms and from the Laplace recursions.
//!
//! For a query `(j, k, n)` the table is indexed by
//! `0 <= a <= [j/2]`, `0 <= b <= j-2a`, `max(0, n-a-b) <= c <= [(k-b)/2]`
//! and multiplies the monomial
//! `ξ1^a ξ2^c ξ3^(a+b+c-n) η1^(k-2c-b) η2^(j-2a-b) η3^b`.

pub mod cache;
mod closed;
mod recursive;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rational;

pub use closed::{
    f_function, g_function, seed, seed_even, seed_odd, table_closed, table_even_closed,
    table_odd_closed, Bounds,
};
pub use recursive::{table_even_recursive, table_odd_recursive, table_recursive};

/// Valid `(j, k, n)` with `0 <= 2n <= j <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffQuery {
    pub j: u32,
    pub k: u32,
    pub n: u32,
}

impl CoeffQuery {
    pub fn new(j: u32, k: u32, n: u32) -> Result<Self> {
        if 2 * n > j || j > k {
            return Err(Error::QueryDomain { j, k, n });
        }
        if k > crate::MAX_L {
            return Err(Error::TooLarge(k));
        }
        Ok(CoeffQuery { j, k, n })
    }

    /// `[(j+k)/2] - n`
    pub fn lambda(&self) -> u32 {
        (self.j + self.k) / 2 - self.n
    }

    pub(crate) fn signed(&self) -> (i64, i64, i64) {
        (self.j as i64, self.k as i64, self.n as i64)
    }

    pub fn in_domain(&self, a: i64, b: i64, c: i64) -> bool {
        let (j, k, n) = self.signed();
        a >= 0 && a <= j / 2 && b >= 0 && b <= j - 2 * a && c >= 0.max(n - a - b) && 2 * c <= k - b
    }

    /// Index domain in lexicographic order.
    pub fn domain(&self) -> impl Iterator<Item = (u32, u32, u32)> {
        let CoeffQuery { j, k, n } = *self;
        (0..=j / 2).flat_map(move |a| {
            (0..=j - 2 * a).flat_map(move |b| {
                let lo = n.saturating_sub(a + b);
                let hi = (k - b) / 2;
                (lo..=hi).map(move |c| (a, b, c))
            })
        })
    }

    /// All valid queries with `k <= max_k`.
    pub fn all_up_to(max_k: u32) -> impl Iterator<Item = CoeffQuery> {
        (0..=max_k).flat_map(move |k| {
            (0..=k).flat_map(move |j| (0..=j / 2).map(move |n| CoeffQuery { j, k, n }))
        })
    }
}

impl fmt::Display for CoeffQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.j, self.k, self.n)
    }
}

/// Even tables hold `A_abc`, odd tables hold `B_abc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Even,
    Odd,
}

impl Kind {
    /// The constant added in the first term of each recursion.
    pub fn shift(self) -> i64 {
        match self {
            Kind::Even => 1,
            Kind::Odd => 3,
        }
    }

    /// Offset of the double-factorial arguments relative to the even case.
    pub(crate) fn dfact_offset(self) -> i64 {
        match self {
            Kind::Even => 0,
            Kind::Odd => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Even => "even",
            Kind::Odd => "odd",
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(Kind::Even),
            "odd" => Ok(Kind::Odd),
            other => Err(Error::Parse(format!("unknown table kind `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub query: CoeffQuery,
    pub kind: Kind,
    entries: BTreeMap<(u32, u32, u32), Rational>,
}

impl CoeffTable {
    pub(crate) fn empty(query: CoeffQuery, kind: Kind) -> Self {
        CoeffTable {
            query,
            kind,
            entries: BTreeMap::new(),
        }
    }

    pub(crate) fn insert(&mut self, a: u32, b: u32, c: u32, v: Rational) {
        self.entries.insert((a, b, c), v);
    }

    pub fn lambda(&self) -> u32 {
        self.query.lambda()
    }

    /// Entry lookup; zero outside the index domain.
    pub fn get(&self, a: i64, b: i64, c: i64) -> Rational {
        if a < 0 || b < 0 || c < 0 {
            return Rational::zero();
        }
        self.entries
            .get(&(a as u32, b as u32, c as u32))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `(a, b, c) -> value` in lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32, u32), &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `P = Σ A_abc` or `Q = Σ B_abc`.
    pub fn normalizer(&self) -> Rational {
        let mut total = Rational::zero();
        for v in self.entries.values() {
            total += v;
        }
        total
    }

    /// Entries that are not integers, as `(a, b, c)`.
    pub fn non_integer_entries(&self) -> Vec<(u32, u32, u32)> {
        self.entries
            .iter()
            .filter(|(_, v)| !v.denom().is_one())
            .map(|(k, _)| *k)
            .collect()
    }

    /// Nonzero residuals of the three Laplace recursions, evaluated at
    /// every index of the domain.
    pub fn laplace_residuals(&self) -> Vec<Residual> {
        let mut out = Vec::new();
        for (a, b, c) in self.query.domain() {
            let (a, b, c) = (a as i64, b as i64, c as i64);
            for eq in Relation::ALL {
                let mut total = Rational::zero();
                for (coef, (x, y, z)) in eq.terms(self.query, self.kind, a, b, c) {
                    if coef != 0 {
                        total += &(self.get(x, y, z) * Rational::from_integer(coef.into()));
                    }
                }
                if !total.is_zero() {
                    out.push(Residual {
                        relation: eq,
                        index: (a, b, c),
                        value: total,
                    });
                }
            }
        }
        out
    }

    /// Check the domain is filled exactly.
    pub fn covers_domain(&self) -> bool {
        self.entries.len() == self.query.domain().count()
            && self
                .query
                .domain()
                .all(|key| self.entries.contains_key(&key))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    pub relation: Relation,
    pub index: (i64, i64, i64),
    pub value: Rational,
}

/// The three relations obtained from the Laplace equation in each vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    /// Leading coefficient `2a(2j-2a+s)`.
    First,
    /// Leading coefficient `2c(2k-2c+s)`.
    Second,
    /// Leading coefficient `2(a+b+c-n)(2k+2j-2a-2b-2c-2n+s)`.
    Third,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Relation::First, Relation::Second, Relation::Third];

    /// `(coefficient, index)` pairs whose weighted sum vanishes. The first
    /// pair is always the centre `(a, b, c)` itself.
    pub fn terms(
        self,
        q: CoeffQuery,
        kind: Kind,
        a: i64,
        b: i64,
        c: i64,
    ) -> [(i64, (i64, i64, i64)); 4] {
        let (j, k, n) = q.signed();
        let s = kind.shift();
        let ja = j - 2 * a - b;
        let kc = k - 2 * c - b;
        match self {
            Relation::First => [
                (2 * a * (2 * j - 2 * a + s), (a, b, c)),
                ((ja + 2) * (ja + 1), (a - 1, b, c)),
                ((b + 2) * (b + 1), (a - 1, b + 2, c - 1)),
                (2 * (b + 1) * (ja + 1), (a - 1, b + 1, c)),
            ],
            Relation::Second => [
                (2 * c * (2 * k - 2 * c + s), (a, b, c)),
                ((kc + 2) * (kc + 1), (a, b, c - 1)),
                ((b + 2) * (b + 1), (a - 1, b + 2, c - 1)),
                (2 * (b + 1) * (kc + 1), (a, b + 1, c - 1)),
            ],
            Relation::Third => [
                (
                    2 * (a + b + c - n) * (2 * k + 2 * j - 2 * a - 2 * b - 2 * c - 2 * n + s),
                    (a, b, c),
                ),
                ((kc + 2) * (kc + 1), (a, b, c - 1)),
                ((ja + 2) * (ja + 1), (a - 1, b, c)),
                (2 * (kc + 1) * (ja + 1), (a, b - 1, c)),
            ],
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Relation::First => "first",
            Relation::Second => "second",
            Relation::Third => "third",
        };
        f.write_str(s)
    }
}
