//! Coefficient tables solved from the seed by the Laplace recursions alone.
//!
//! Each step applies one relation at a chosen centre and solves for exactly
//! one unknown entry. Every other term must be known, out of the index
//! domain, or carry a zero coefficient; otherwise the solver stops with
//! [`Error::RecursionStalled`].

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{seed, CoeffQuery, CoeffTable, Kind, Relation};
use crate::error::{Error, Result};
use crate::exactnum::Rational;

type Index = (i64, i64, i64);

struct Solver {
    q: CoeffQuery,
    kind: Kind,
    known: BTreeMap<Index, Rational>,
}

impl Solver {
    fn step(&mut self, stage: &'static str, eq: Relation, centre: Index, target: Index) -> Result<()> {
        let stalled = |reason: String| Error::RecursionStalled {
            stage,
            a: target.0,
            b: target.1,
            c: target.2,
            reason,
        };
        if !self.q.in_domain(target.0, target.1, target.2) {
            return Err(stalled("target outside the index domain".into()));
        }
        if self.known.contains_key(&target) {
            return Err(stalled("target already determined".into()));
        }
        let (a, b, c) = centre;
        let mut target_coef = 0;
        let mut rest = Rational::zero();
        for (coef, idx) in eq.terms(self.q, self.kind, a, b, c) {
            if idx == target {
                target_coef += coef;
                continue;
            }
            if coef == 0 || !self.q.in_domain(idx.0, idx.1, idx.2) {
                continue;
            }
            match self.known.get(&idx) {
                Some(v) => rest += &(v * Rational::from_integer(coef.into())),
                None => {
                    return Err(stalled(format!(
                        "{eq} relation at {centre:?} also needs unknown {idx:?}"
                    )))
                }
            }
        }
        if target_coef == 0 {
            return Err(stalled(format!(
                "{eq} relation at {centre:?} has zero coefficient on the unknown"
            )));
        }
        let value = -rest / Rational::from_integer(target_coef.into());
        self.known.insert(target, value);
        Ok(())
    }
}

/// Solve the table from the seed in five sweeps:
///
/// 1. `(0, b+1, n-b-1)` from the second relation centred at `(0, b, n-b)`;
/// 2. `(a, b, n-a-b)` for `a >= 1` from the first relation;
/// 3. `(a, b, n-a-b+c)`, `b <= n-a`, `c >= 1` from the third relation;
/// 4. `(a, n-a+b, c)`, `b >= 1` from the third relation;
/// 5. `(n+a, b, c)`, `a >= 1` from the third relation.
///
/// Within each sweep indices advance lexicographically.
pub fn table_recursive(q: CoeffQuery, kind: Kind) -> Result<CoeffTable> {
    let (j, k, n) = q.signed();
    let mut solver = Solver {
        q,
        kind,
        known: BTreeMap::new(),
    };
    solver.known.insert((0, 0, n), seed(q, kind));

    for b in 0..n {
        solver.step("first-row", Relation::Second, (0, b, n - b), (0, b + 1, n - b - 1))?;
    }
    for a in 1..=n {
        for b in 0..=n - a {
            let idx = (a, b, n - a - b);
            solver.step("first-region", Relation::First, idx, idx)?;
        }
    }
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 1..=(k + b) / 2 + a - n {
                let idx = (a, b, n - a - b + c);
                solver.step("second-region", Relation::Third, idx, idx)?;
            }
        }
    }
    for a in 0..=n {
        for b in 1..=j - n - a {
            for c in 0..=(k - n + a - b) / 2 {
                let idx = (a, n - a + b, c);
                solver.step("third-region", Relation::Third, idx, idx)?;
            }
        }
    }
    for a in 1..=j / 2 - n {
        for b in 0..=j - 2 * n - 2 * a {
            for c in 0..=(k - b) / 2 {
                let idx = (n + a, b, c);
                solver.step("fourth-region", Relation::Third, idx, idx)?;
            }
        }
    }

    let mut table = CoeffTable::empty(q, kind);
    for (a, b, c) in q.domain() {
        let v = solver
            .known
            .remove(&(a as i64, b as i64, c as i64))
            .ok_or_else(|| Error::RecursionStalled {
                stage: "coverage",
                a: a as i64,
                b: b as i64,
                c: c as i64,
                reason: "index never reached by the sweeps".into(),
            })?;
        table.insert(a, b, c, v);
    }
    if let Some((idx, _)) = solver.known.into_iter().next() {
        return Err(Error::RecursionStalled {
            stage: "coverage",
            a: idx.0,
            b: idx.1,
            c: idx.2,
            reason: "solved an index outside the domain".into(),
        });
    }
    Ok(table)
}

pub fn table_even_recursive(q: CoeffQuery) -> Result<CoeffTable> {
    table_recursive(q, Kind::Even)
}

pub fn table_odd_recursive(q: CoeffQuery) -> Result<CoeffTable> {
    table_recursive(q, Kind::Odd)
}
