//! Text rendering in derivative notation: `c_j` is shown as `E^{(j)}/j!`.

use std::cmp::Reverse;

use num_traits::{One, Signed};

use super::atoms::{Dir, Family, PolyAtom, SpectralAtom};
use super::form::Form;
use super::table::table;
use crate::scalar::{factorial, fmt_q, Scalar, Q};

/// Rendered atom name and the factor its stored coefficient is divided by.
fn atom_text(a: &SpectralAtom) -> (String, Q) {
    let base = SpectralAtom { pending: None, ..a.clone() };
    let prefix = match a.pending {
        None => String::new(),
        Some(p) => {
            let d = if p.dir == Dir::L { "L" } else { "R" };
            format!("{d}^{} ", p.power)
        }
    };
    let j = base.laurent;
    let point = fmt_q(&base.point);
    let at_pole = table().pole_at(&base).is_some();
    let deriv = |name: &str, sub: String| -> (String, Q) {
        if at_pole {
            (format!("{name}^{{[{j}]}}_{{{sub}}}"), Q::one())
        } else {
            (format!("{name}^{{({j})}}_{{{sub}}}"), factorial(j.max(0) as u64))
        }
    };
    let (name, div) = match base.family {
        Family::Constant => ("1".to_string(), Q::one()),
        Family::Eisenstein => deriv("E", format!("{},{point}", base.weight)),
        Family::Poincare { index } => deriv("F", format!("{},{index},{point}", base.weight)),
        Family::Incoherent { disc } => {
            if base.weight == 1 && base.point == num_traits::Zero::zero() && j >= 1 {
                (format!("E^{{-({})}}_{{{disc}}}", j - 1), factorial(j as u64))
            } else {
                deriv("E^{-}", format!("{disc},{},{point}", base.weight))
            }
        }
    };
    (format!("{prefix}{name}"), div)
}

fn term_text(p: &PolyAtom, a: &SpectralAtom, c: &Scalar) -> (bool, String) {
    let (name, div) = atom_text(a);
    let coeff = c.scale(&div.recip());
    let negative = coeff.terms().count() == 1 && coeff.terms().all(|(_, x)| x.is_negative());
    let shown = if negative { -&coeff } else { coeff };
    let mut parts = Vec::new();
    if shown != Scalar::one() {
        parts.push(shown.to_string());
    }
    let trivial_atom = a.family == Family::Constant && a.pending.is_none();
    if *p != PolyAtom::ONE || trivial_atom {
        if *p == PolyAtom::ONE {
            if parts.is_empty() {
                parts.push("1".into());
            }
        } else {
            parts.push(format!("e_{{{},{}}}", p.r, p.m - p.r));
        }
    }
    if !trivial_atom {
        parts.push(name);
    }
    (negative, parts.join(" "))
}

/// Deterministic ordering: descending Laurent index, then ascending `r`.
pub fn ordered_terms(f: &Form) -> Vec<(&PolyAtom, &SpectralAtom, &Scalar)> {
    let mut terms: Vec<_> = f.terms().collect();
    terms.sort_by_key(|(p, a, _)| (Reverse(a.laurent), p.r, p.m, (*a).clone()));
    terms
}

pub fn pretty(f: &Form) -> String {
    let mut out = String::new();
    for (i, (p, a, c)) in ordered_terms(f).into_iter().enumerate() {
        let (neg, text) = term_text(p, a, c);
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(" + "),
            (_, true) => out.push_str(" - "),
        }
        out.push_str(&text);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The displayed coefficient of each term, in display order.
pub fn displayed_coefficients(f: &Form) -> Vec<Scalar> {
    ordered_terms(f)
        .into_iter()
        .map(|(_, a, c)| {
            let (_, div) = atom_text(a);
            c.scale(&div.recip())
        })
        .collect()
}

impl std::fmt::Display for Form {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", pretty(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn residue_display() {
        let f = Form::spectral(SpectralAtom::constant()).scale(&Scalar::monomial(q(3), -1));
        assert_eq!(pretty(&f), "3/π");
        assert_eq!(pretty(&Form::e_atom(3, 0).unwrap()), "e_{0,3}");
        assert_eq!(pretty(&Form::zero(2)), "0");
    }

    #[test]
    fn derivative_notation() {
        let a = SpectralAtom::new(Family::Eisenstein, 0, q(0), 2);
        let f = Form::spectral(a).scale(&Scalar::int(-1));
        assert_eq!(pretty(&f), "-1/2 E^{(2)}_{0,0}");
    }
}
