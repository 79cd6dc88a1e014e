//! Weight-homogeneous linear combinations of `𝔢 ⊗ spectral` atoms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::atoms::{Dir, Family, Pending, PolyAtom, SpectralAtom};
use super::table::table;
use crate::scalar::{fmt_q, parse_q, Scalar, Q};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    weight: i64,
    terms: BTreeMap<(PolyAtom, SpectralAtom), Scalar>,
}

impl Form {
    pub fn zero(weight: i64) -> Self {
        Self { weight, terms: BTreeMap::new() }
    }

    /// `𝔢_{r,m−r}` times the constant function.
    pub fn e_atom(m: u32, r: u32) -> Result<Self, Error> {
        let poly = PolyAtom::new(m, r).ok_or(Error::IndexOutOfRange { m, r })?;
        let mut f = Self::zero(poly.weight());
        f.push(poly, SpectralAtom::constant(), Scalar::one())?;
        Ok(f)
    }

    /// A single spectral atom with trivial polynomial part.
    pub fn spectral(atom: SpectralAtom) -> Self {
        let mut f = Self::zero(atom.current_weight());
        f.insert(PolyAtom::ONE, atom, Scalar::one());
        f
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyAtom, &SpectralAtom, &Scalar)> {
        self.terms.iter().map(|((p, a), c)| (p, a, c))
    }

    pub fn coefficient(&self, poly: &PolyAtom, atom: &SpectralAtom) -> Scalar {
        self.terms.get(&(*poly, atom.clone())).cloned().unwrap_or_default()
    }

    pub fn has_pending(&self) -> bool {
        self.terms.keys().any(|(_, a)| a.pending.is_some())
    }

    /// Adds `coeff · poly ⊗ atom`, normalizing the atom through the coincidence table.
    pub fn push(&mut self, poly: PolyAtom, atom: SpectralAtom, coeff: Scalar) -> Result<(), Error> {
        let w = poly.weight() + atom.current_weight();
        if w != self.weight {
            return Err(Error::WeightMismatch { expected: self.weight, found: w });
        }
        self.insert(poly, atom, coeff);
        Ok(())
    }

    /// As [`Form::push`] without the weight check; callers guarantee homogeneity.
    pub(crate) fn insert(&mut self, poly: PolyAtom, atom: SpectralAtom, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(poly.weight() + atom.current_weight(), self.weight);
        // A pending atom whose expansion vanishes is zero.
        if atom.pending.is_some() && super::ops::expand_atom(&atom).is_empty() {
            return;
        }
        for (a, c) in table().normalize(atom) {
            self.insert_raw(poly, a, &coeff * &c);
        }
    }

    fn insert_raw(&mut self, poly: PolyAtom, atom: SpectralAtom, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (poly, atom);
        match self.terms.get_mut(&key) {
            Some(slot) => {
                *slot += &coeff;
                if slot.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form, Error> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { expected: self.weight, found: other.weight });
        }
        let mut out = self.clone();
        for ((p, a), c) in &other.terms {
            out.insert_raw(*p, a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, Error> {
        self.add(&other.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        let mut out = Form::zero(self.weight);
        for ((p, a), x) in &self.terms {
            out.insert_raw(*p, a.clone(), x * c);
        }
        out
    }

    /// `𝔢_{r,m−r} ⊗ f` for `f` whose polynomial parts are all trivial.
    pub fn tensor(poly: PolyAtom, f: &Form) -> Result<Form, Error> {
        let mut out = Form::zero(poly.weight() + f.weight);
        for ((p, a), c) in &f.terms {
            if *p != PolyAtom::ONE {
                return Err(Error::Domain("tensor needs a form with trivial polynomial part".into()));
            }
            out.insert_raw(poly, a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&FormRepr::from(self)).expect("form serializes")
    }

    pub fn from_json(text: &str) -> Result<Form, Error> {
        let repr: FormRepr = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        repr.into_form()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoeffRepr {
    pub pi_exp: i32,
    pub num: String,
    pub den: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralRepr {
    pub family: Family,
    pub weight: i64,
    pub point: String,
    pub laurent: i64,
    pub pending: Option<Pending>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermRepr {
    pub poly: PolyAtom,
    pub spectral: SpectralRepr,
    pub coeff: Vec<CoeffRepr>,
}

impl TermRepr {
    pub fn new(poly: &PolyAtom, atom: &SpectralAtom, coeff: &Scalar) -> Self {
        Self {
            poly: *poly,
            spectral: SpectralRepr {
                family: atom.family,
                weight: atom.weight,
                point: fmt_q(&atom.point),
                laurent: atom.laurent,
                pending: atom.pending,
            },
            coeff: coeff
                .terms()
                .map(|(e, x)| CoeffRepr { pi_exp: e, num: x.numer().to_string(), den: x.denom().to_string() })
                .collect(),
        }
    }

    pub fn parse(&self) -> Result<(PolyAtom, SpectralAtom, Scalar), Error> {
        let poly = PolyAtom::new(self.poly.m, self.poly.r)
            .ok_or(Error::IndexOutOfRange { m: self.poly.m, r: self.poly.r })?;
        let point = parse_q(&self.spectral.point)
            .ok_or_else(|| Error::Parse(format!("bad point {:?}", self.spectral.point)))?;
        if let Family::Poincare { index: 0 } = self.spectral.family {
            return Err(Error::Parse("Poincaré index must be nonzero".into()));
        }
        if matches!(self.spectral.pending, Some(Pending { power: 0, .. })) {
            return Err(Error::Parse("pending power must be positive".into()));
        }
        let mut atom = SpectralAtom::new(self.spectral.family, self.spectral.weight, point, self.spectral.laurent);
        atom.pending = self.spectral.pending;
        let mut coeff = Scalar::zero();
        for c in &self.coeff {
            let num: BigInt = c.num.parse().map_err(|_| Error::Parse(format!("bad numerator {:?}", c.num)))?;
            let den: BigInt = c.den.parse().map_err(|_| Error::Parse(format!("bad denominator {:?}", c.den)))?;
            if den == BigInt::from(0) {
                return Err(Error::Parse("zero denominator".into()));
            }
            coeff += &Scalar::monomial(Q::new(num, den), c.pi_exp);
        }
        Ok((poly, atom, coeff))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormRepr {
    pub weight: i64,
    pub terms: Vec<TermRepr>,
}

impl From<&Form> for FormRepr {
    fn from(f: &Form) -> Self {
        FormRepr { weight: f.weight, terms: f.terms().map(|(p, a, c)| TermRepr::new(p, a, c)).collect() }
    }
}

impl FormRepr {
    pub fn into_form(self) -> Result<Form, Error> {
        let mut f = Form::zero(self.weight);
        for t in &self.terms {
            let (p, a, c) = t.parse()?;
            f.push(p, a, c)?;
        }
        Ok(f)
    }
}

impl Serialize for Form {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormRepr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FormRepr::deserialize(d)?.into_form().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for an atom with a pending operator.
pub fn pending_atom(family: Family, weight: i64, point: Q, laurent: i64, dir: Dir, power: u32) -> SpectralAtom {
    SpectralAtom::new(family, weight, point, laurent).with_pending(dir, power)
}
