//! Text, LaTeX and JSON renderings of an invariant.
//!
//! Text and LaTeX pull the positive content of the polynomial out as a
//! leading rational, so `I(0,2,2)` reads
//! `1/sqrt(5) * { 1/2 [ 3 h1^2 - x2 x3 ] }`. In text `x` stands for `ξ`
//! and `h` for `η`.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{content, InvariantPoly, ScalarMonomial, ETA1, ETA3, XI1, XI2};
use crate::error::{Error, Result};
use crate::exactnum::{rational_string, single_term_text, squarefree_split, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Latex,
    Json,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "latex" => Ok(Format::Latex),
            "json" => Ok(Format::Json),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

pub fn render(inv: &InvariantPoly, format: Format) -> String {
    match format {
        Format::Text => render_text(inv),
        Format::Latex => render_latex(inv),
        Format::Json => render_json(inv),
    }
}

/// Listing order: by the exponents of `ξ1`, `η3`, `ξ2`, then the rest.
fn listing_order(inv: &InvariantPoly) -> Vec<(ScalarMonomial, Rational)> {
    let mut terms: Vec<_> = inv.poly.iter().map(|(m, c)| (*m, c.clone())).collect();
    terms.sort_by_key(|(m, _)| (m.exponent(XI1), m.exponent(ETA3), m.exponent(XI2), *m));
    terms
}

/// `poly = scale · Σ integer terms`.
struct Layout {
    negative: bool,
    magnitude: Rational,
    scale: Rational,
    terms: Vec<(ScalarMonomial, BigInt)>,
}

impl Layout {
    fn new(inv: &InvariantPoly) -> Layout {
        let scale = content(&inv.poly);
        let terms = listing_order(inv)
            .into_iter()
            .map(|(m, c)| (m, (c / &scale).to_integer()))
            .collect();
        let (negative, magnitude) = match inv.prefactor.single_term() {
            Some((c, m)) => (
                c.is_negative(),
                c * c * Rational::from_integer(BigInt::from(m.clone())),
            ),
            None => (false, Rational::zero()),
        };
        Layout {
            negative,
            magnitude,
            scale,
            terms,
        }
    }

    /// A lone monomial with unit coefficient, sign folded into the prefix.
    fn unit_monomial(&self) -> Option<(ScalarMonomial, bool)> {
        match self.terms.as_slice() {
            [(m, c)] if self.scale.is_one() && c.abs().is_one() => Some((*m, c.is_negative())),
            _ => None,
        }
    }
}

fn var_name(i: usize) -> (char, usize) {
    if i < ETA1 {
        ('x', i + 1)
    } else {
        ('h', i - ETA1 + 1)
    }
}

fn monomial_text(m: &ScalarMonomial) -> String {
    let mut parts = Vec::new();
    for i in 0..6 {
        let e = m.exponent(i);
        let (v, idx) = var_name(i);
        match e {
            0 => {}
            1 => parts.push(format!("{v}{idx}")),
            _ => parts.push(format!("{v}{idx}^{e}")),
        }
    }
    parts.join(" ")
}

fn monomial_latex(m: &ScalarMonomial) -> String {
    let mut out = String::new();
    for i in 0..6 {
        let e = m.exponent(i);
        let (v, idx) = var_name(i);
        let name = if v == 'x' { "\\xi" } else { "\\eta" };
        match e {
            0 => {}
            1 => out.push_str(&format!("{name}_{{{idx}}}")),
            _ => out.push_str(&format!("{name}_{{{idx}}}^{{{e}}}")),
        }
    }
    out
}

/// Signed integer-coefficient terms, spaced for text or packed for LaTeX.
fn join_terms(
    terms: &[(ScalarMonomial, BigInt)],
    mono: impl Fn(&ScalarMonomial) -> String,
    spaced: bool,
) -> String {
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().enumerate() {
        let body = mono(m);
        let mag = c.abs();
        let glue = if spaced { " " } else { "" };
        let term = if body.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            body
        } else {
            format!("{mag}{glue}{body}")
        };
        let neg = c.is_negative();
        match (i, neg, spaced) {
            (0, true, _) => out.push_str(&format!("-{term}")),
            (0, false, _) => out.push_str(&term),
            (_, true, true) => out.push_str(&format!(" - {term}")),
            (_, false, true) => out.push_str(&format!(" + {term}")),
            (_, true, false) => out.push_str(&format!("-{term}")),
            (_, false, false) => out.push_str(&format!("+{term}")),
        }
    }
    out
}

fn render_text(inv: &InvariantPoly) -> String {
    let lay = Layout::new(inv);
    let mag = match inv.prefactor.single_term() {
        Some((c, m)) => single_term_text(c, m).1,
        None => "0".into(),
    };
    let zeta = if inv.imaginary { "i zeta" } else { "" };
    let prefix = |negative: bool| -> String {
        let sign = if negative { "-" } else { "" };
        match (zeta.is_empty(), mag == "1") {
            (true, _) => format!("{sign}{mag}"),
            (false, true) => format!("{sign}{zeta}"),
            (false, false) => format!("{sign}{zeta} {mag}"),
        }
    };
    if let Some((m, neg)) = lay.unit_monomial() {
        let negative = lay.negative != neg;
        if m == ScalarMonomial::one() {
            return prefix(negative);
        }
        return if zeta.is_empty() && mag == "1" {
            format!("{}{}", if negative { "-" } else { "" }, monomial_text(&m))
        } else {
            format!("{} {}", prefix(negative), monomial_text(&m))
        };
    }
    let body = join_terms(&lay.terms, monomial_text, true);
    if lay.scale.is_one() {
        format!("{} * {{ {body} }}", prefix(lay.negative))
    } else {
        format!("{} * {{ {} [ {body} ] }}", prefix(lay.negative), lay.scale)
    }
}

fn fraction_latex(p: &BigUint, q: &BigUint) -> String {
    if q.is_one() {
        p.to_string()
    } else {
        format!("\\frac{{{p}}}{{{q}}}")
    }
}

/// `√r` for non-negative rational `r`, in the shapes used by the text form.
fn sqrt_latex(r: &Rational) -> String {
    let p = r.numer().to_biguint().unwrap_or_default();
    let q = r.denom().to_biguint().unwrap_or_default();
    let (sp, mp) = squarefree_split(&p);
    let (sq, mq) = squarefree_split(&q);
    if mp.is_one() && mq.is_one() {
        return fraction_latex(&sp, &sq);
    }
    if p.is_one() {
        return format!("\\frac{{1}}{{\\sqrt{{{q}}}}}");
    }
    if q.is_one() {
        return format!("\\sqrt{{{p}}}");
    }
    format!("\\sqrt{{\\frac{{{p}}}{{{q}}}}}")
}

fn render_latex(inv: &InvariantPoly) -> String {
    let lay = Layout::new(inv);
    let mag = if lay.magnitude.is_zero() {
        "0".to_string()
    } else {
        sqrt_latex(&lay.magnitude)
    };
    let zeta = if inv.imaginary { "{\\rm i}\\zeta" } else { "" };
    let prefix = |negative: bool| -> String {
        let sign = if negative { "-" } else { "" };
        if !zeta.is_empty() && mag == "1" {
            format!("{sign}{zeta}")
        } else {
            format!("{sign}{zeta}{mag}")
        }
    };
    if let Some((m, neg)) = lay.unit_monomial() {
        let negative = lay.negative != neg;
        if m == ScalarMonomial::one() {
            return prefix(negative);
        }
        if zeta.is_empty() && mag == "1" {
            return format!("{}{}", if negative { "-" } else { "" }, monomial_latex(&m));
        }
        return format!("{}\\,{}", prefix(negative), monomial_latex(&m));
    }
    let body = join_terms(&lay.terms, monomial_latex, false);
    let scale = if lay.scale.is_one() {
        String::new()
    } else {
        fraction_latex(
            &lay.scale.numer().to_biguint().unwrap_or_default(),
            &lay.scale.denom().to_biguint().unwrap_or_default(),
        )
    };
    format!(
        "{}\\left\\{{{scale}\\left[{body}\\right]\\right\\}}",
        prefix(lay.negative)
    )
}

#[derive(Serialize)]
struct PrefactorDoc {
    coef: String,
    radicand: serde_json::Value,
}

#[derive(Serialize)]
struct TermDoc {
    xi: [u32; 3],
    eta: [u32; 3],
    coef: String,
}

#[derive(Serialize)]
struct InvariantDoc {
    j: u32,
    k: u32,
    l: u32,
    parity: &'static str,
    prefactor: PrefactorDoc,
    imaginary: bool,
    zeta: u32,
    terms: Vec<TermDoc>,
}

/// Radicands that overflow `u64` are written as decimal strings.
fn radicand_value(m: &BigUint) -> serde_json::Value {
    match m.to_u64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(m.to_string()),
    }
}

fn invariant_doc(inv: &InvariantPoly) -> InvariantDoc {
    let (coef, radicand) = match inv.prefactor.single_term() {
        Some((c, m)) => (rational_string(c), radicand_value(m)),
        None => ("0/1".to_string(), serde_json::Value::from(1u64)),
    };
    let terms = inv
        .poly
        .sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let e = m.exponents();
            TermDoc {
                xi: [e[0], e[1], e[2]],
                eta: [e[3], e[4], e[5]],
                coef: rational_string(c),
            }
        })
        .collect();
    InvariantDoc {
        j: inv.spec.j(),
        k: inv.spec.k(),
        l: inv.spec.l(),
        parity: inv.parity().name(),
        prefactor: PrefactorDoc { coef, radicand },
        imaginary: inv.imaginary,
        zeta: inv.zeta_power,
        terms,
    }
}

/// The JSON document as a value.
pub fn invariant_json(inv: &InvariantPoly) -> serde_json::Value {
    serde_json::to_value(invariant_doc(inv)).expect("invariant document serializes")
}

fn render_json(inv: &InvariantPoly) -> String {
    serde_json::to_string_pretty(&invariant_doc(inv)).expect("invariant document serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariant::build_invariant;

    fn text(j: u32, k: u32, l: u32) -> String {
        render(&build_invariant(j, k, l).unwrap(), Format::Text)
    }

    #[test]
    fn text_forms() {
        assert_eq!(text(0, 0, 0), "1");
        assert_eq!(text(0, 2, 2), "1/sqrt(5) * { 1/2 [ 3 h1^2 - x2 x3 ] }");
        assert_eq!(text(1, 2, 2), "-i zeta sqrt(3/10) h1");
        assert_eq!(text(0, 1, 1), "-1/sqrt(3) h1");
        assert_eq!(text(1, 1, 1), "i zeta 1/sqrt(6)");
        assert_eq!(
            text(2, 2, 2),
            "-sqrt(2/35) * { 1/2 [ -3 x2 h2^2 + 9 h1 h2 h3 - 3 x3 h3^2 - 3 x1 h1^2 + 2 x1 x2 x3 ] }"
        );
    }

    #[test]
    fn latex_forms() {
        let i = build_invariant(0, 2, 2).unwrap();
        assert_eq!(
            render(&i, Format::Latex),
            "\\frac{1}{\\sqrt{5}}\\left\\{\\frac{1}{2}\\left[3\\eta_{1}^{2}-\\xi_{2}\\xi_{3}\\right]\\right\\}"
        );
        let i = build_invariant(1, 2, 2).unwrap();
        assert_eq!(render(&i, Format::Latex), "-{\\rm i}\\zeta\\sqrt{\\frac{3}{10}}\\,\\eta_{1}");
        let i = build_invariant(0, 0, 0).unwrap();
        assert_eq!(render(&i, Format::Latex), "1");
    }

    #[test]
    fn json_form() {
        let i = build_invariant(0, 2, 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render(&i, Format::Json)).unwrap();
        assert_eq!(v, invariant_json(&i));
        assert_eq!(v["parity"], "even");
        assert_eq!(v["prefactor"]["coef"], "1/5");
        assert_eq!(v["prefactor"]["radicand"], 5);
        assert_eq!(v["zeta"], 0);
        let terms = v["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0]["xi"], serde_json::json!([0, 0, 0]));
        assert_eq!(terms[0]["eta"], serde_json::json!([2, 0, 0]));
        assert_eq!(terms[0]["coef"], "3/2");
        assert_eq!(terms[1]["coef"], "-1/2");
    }

    #[test]
    fn unknown_format_rejected() {
        assert_eq!("yaml".parse::<Format>(), Err(Error::UnknownFormat("yaml".into())));
    }
}
