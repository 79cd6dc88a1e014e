//! Maaß operators, Laplace, mirror and flip on forms.

use num_traits::One;

use super::atoms::{Dir, Family, PolyAtom, SpectralAtom};
use super::form::Form;
use super::table::table;
use crate::scalar::{factorial, q, Scalar, Q};
use crate::Error;

/// One shift of a pending-free atom, normalized.
fn shift_atom(atom: &SpectralAtom, dir: Dir) -> Vec<(SpectralAtom, Scalar)> {
    let t = table();
    let mut out = Vec::new();
    for (a, c) in atom.shift_raw(dir) {
        for (b, d) in t.normalize(a) {
            out.push((b, &c * &d));
        }
    }
    out
}

/// Unfolds a pending operator into plain atoms.
pub fn expand_atom(atom: &SpectralAtom) -> Vec<(SpectralAtom, Scalar)> {
    let Some(pending) = atom.pending else {
        return table().normalize(atom.clone());
    };
    let base = SpectralAtom { pending: None, ..atom.clone() };
    let mut current = table().normalize(base);
    for _ in 0..pending.power {
        let mut next: Vec<(SpectralAtom, Scalar)> = Vec::new();
        for (a, c) in &current {
            for (b, d) in shift_atom(a, pending.dir) {
                let coeff = c * &d;
                match next.iter_mut().find(|(x, _)| *x == b) {
                    Some((_, slot)) => *slot += &coeff,
                    None => next.push((b, coeff)),
                }
            }
        }
        next.retain(|(_, c)| !c.is_zero());
        current = next;
    }
    current
}

/// Replaces every pending operator by its expansion. Idempotent.
pub fn expand(f: &Form) -> Form {
    if !f.has_pending() {
        return f.clone();
    }
    let mut out = Form::zero(f.weight());
    for (p, a, c) in f.terms() {
        for (b, d) in expand_atom(a) {
            out.insert(*p, b, c * &d);
        }
    }
    out
}

fn apply(f: &Form, dir: Dir) -> Form {
    let f = expand(f);
    let shift = if dir == Dir::L { -2 } else { 2 };
    let mut out = Form::zero(f.weight() + shift);
    for (p, a, c) in f.terms() {
        let moved = match dir {
            Dir::L => p.lower(),
            Dir::R => p.raise().map(|np| (np, Q::one())),
        };
        if let Some((np, x)) = moved {
            out.insert(np, a.clone(), c.scale(&x));
        }
        for (b, d) in shift_atom(a, dir) {
            out.insert(*p, b, c * &d);
        }
    }
    out
}

pub fn lower(f: &Form) -> Form {
    apply(f, Dir::L)
}

pub fn raise(f: &Form) -> Form {
    apply(f, Dir::R)
}

pub fn lower_pow(f: &Form, n: u32) -> Form {
    (0..n).fold(expand(f), |g, _| lower(&g))
}

pub fn raise_pow(f: &Form, n: u32) -> Form {
    (0..n).fold(expand(f), |g, _| raise(&g))
}

/// `Δ = −R ∘ L`.
pub fn laplace(f: &Form) -> Form {
    raise(&lower(f)).scale(&Scalar::int(-1))
}

pub fn laplace_pow(f: &Form, n: u32) -> Form {
    (0..n).fold(expand(f), |g, _| laplace(&g))
}

pub fn is_zero(f: &Form) -> bool {
    expand(f).is_empty()
}

/// `y^k` times the complex conjugate, which maps weight `k` to `−k`.
pub fn mirror(f: &Form) -> Result<Form, Error> {
    if f.has_pending() {
        return Err(Error::Domain("mirror needs an expanded form".into()));
    }
    let mut out = Form::zero(-f.weight());
    for (p, a, c) in f.terms() {
        let (np, px) = mirror_poly(p);
        let (na, ax) = mirror_atom(a)?;
        out.insert(np, na, (c * &ax).scale(&px));
    }
    Ok(out)
}

/// `y^{m−2r} conj(𝔢_{r,m−r}) = (−1)^m (m−r)!/r! 𝔢_{m−r,r}`.
fn mirror_poly(p: &PolyAtom) -> (PolyAtom, Q) {
    let sign = if p.m % 2 == 0 { Q::one() } else { -Q::one() };
    let x = sign * factorial((p.m - p.r) as u64) / factorial(p.r as u64);
    (PolyAtom { m: p.m, r: p.m - p.r }, x)
}

fn mirror_atom(a: &SpectralAtom) -> Result<(SpectralAtom, Scalar), Error> {
    let k = a.weight;
    match a.family {
        Family::Constant => Ok((a.clone(), Scalar::one())),
        Family::Eisenstein => {
            Ok((SpectralAtom::new(Family::Eisenstein, -k, &a.point + q(k), a.laurent), Scalar::one()))
        }
        Family::Poincare { index } => {
            let sign = if (1 - k).rem_euclid(2) == 0 { 1 } else { -1 };
            let base = Q::from_integer((4 * index.abs()).into());
            let pow = if k >= 0 { base.pow(-(k as i32)) } else { base.pow((-k) as i32) };
            let factor = Scalar::monomial(q(sign) * pow, -(k as i32));
            Ok((SpectralAtom::new(Family::Poincare { index: -index }, -k, a.point.clone(), a.laurent), factor))
        }
        Family::Incoherent { .. } => {
            Err(Error::Domain("mirror is not defined for incoherent Eisenstein atoms".into()))
        }
    }
}

/// `F_k f = mirror(R^{−k} f) / (−k)!` for weight `k ≤ 0`.
pub fn flip(f: &Form) -> Result<Form, Error> {
    let k = f.weight();
    if k > 0 {
        return Err(Error::Domain(format!("flip requires weight ≤ 0, got {k}")));
    }
    let raised = raise_pow(f, (-k) as u32);
    let x = factorial((-k) as u64).recip();
    Ok(mirror(&raised)?.scale(&Scalar::rational(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn eis(k: i64, p: i64, j: i64) -> Form {
        Form::spectral(SpectralAtom::new(Family::Eisenstein, k, q(p), j))
    }

    #[test]
    fn lowering_first_derivative() {
        assert_eq!(lower(&eis(0, 0, 1)), eis(-2, 1, 0));
    }

    #[test]
    fn lowering_e2_gives_residue() {
        let out = lower(&eis(2, 0, 0));
        let expected = Form::spectral(SpectralAtom::constant()).scale(&Scalar::monomial(q(3), -1));
        assert_eq!(out, expected);
        assert!(is_zero(&lower_pow(&eis(2, 0, 0), 2)));
    }

    #[test]
    fn e_basis_laplace() {
        let f = Form::e_atom(4, 1).unwrap();
        assert_eq!(laplace(&f), f.scale(&Scalar::int(-6)));
    }

    #[test]
    fn flip_on_e_m0() {
        for m in 0..5u32 {
            let f = Form::e_atom(m, m).unwrap();
            let sign = if m % 2 == 0 { 1 } else { -1 };
            assert_eq!(flip(&f).unwrap(), f.scale(&Scalar::int(sign)));
        }
    }

    #[test]
    fn mirror_is_involution() {
        let mut f = Form::zero(0);
        f.push(PolyAtom { m: 2, r: 1 }, SpectralAtom::new(Family::Eisenstein, 0, q(2), 0), Scalar::one())
            .unwrap();
        assert_eq!(mirror(&mirror(&f).unwrap()).unwrap(), f);
        let g = Form::spectral(SpectralAtom::new(Family::Poincare { index: -2 }, -3, Q::new(5.into(), 2.into()), 1));
        assert_eq!(mirror(&mirror(&g).unwrap()).unwrap(), g);
    }
}
