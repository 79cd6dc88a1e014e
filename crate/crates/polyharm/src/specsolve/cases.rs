//! Constant-weight preimages and one construction per case label.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::wmodel::{emit_form, solve_wd};
use crate::classify::BkCase;
use crate::scalar::{q, Scalar, Q};
use crate::symcalc::{flip, raise_pow, Dir, Family, FamilySymbol, Form};
use crate::Error;

/// Family parameters for the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    /// Exponent index of the Poincaré family; must be negative.
    pub poincare_index: i64,
    /// Discriminant parameter of the incoherent family.
    pub disc: i64,
}

impl Default for CaseParams {
    fn default() -> Self {
        Self { poincare_index: -1, disc: 3 }
    }
}

/// A preimage of the family value `f^{(0)}` under `Δ^d` in the family's own weight.
///
/// With eigenvalue `s(1−k−s)`, the coefficient `c_d` maps to `(1−k)^d c_0` when `k ≠ 1`,
/// and at `k = 1` the eigenvalue `−s²` sends `c_{2d}` to `(−1)^d c_0`.
pub fn preimage_constant_weight(d: u32, family: &FamilySymbol) -> Form {
    let k = family.base_weight;
    let eps = Q::from_integer(family.sign().into());
    let (j, x) = if k == 1 {
        let sign = if d % 2 == 0 { Q::one() } else { -Q::one() };
        (2 * d as i64, sign)
    } else {
        (d as i64, (eps / q(1 - k)).pow(d as i32))
    };
    Form::spectral(family.atom(j)).scale(&Scalar::rational(x))
}

/// The incoherent family vanishes at the base point, so the usable coefficients are
/// `c_{2d+1}` with `Δ^d c_{2d+1} = (−1)^d c_1`.
pub fn preimage_incoherent(disc: i64, d: u32) -> Form {
    let family = FamilySymbol::new(Family::Incoherent { disc }, 1, 1);
    let sign = if d % 2 == 0 { Q::one() } else { -Q::one() };
    Form::spectral(family.atom(2 * d as i64)).scale(&Scalar::rational(sign))
}

fn check(label: BkCase, k: i64, d: u32) -> Result<(), Error> {
    if !label.admits_weight(k) {
        return Err(Error::Domain(format!("case {label} does not occur in weight {k}")));
    }
    if label == BkCase::IIId && d == 0 {
        return Err(Error::Domain("case IIId requires depth ≥ 1".into()));
    }
    Ok(())
}

fn poincare(params: &CaseParams, base_weight: i64, orientation: i8) -> Result<FamilySymbol, Error> {
    if params.poincare_index >= 0 {
        return Err(Error::Domain("Poincaré index must be negative".into()));
    }
    Ok(FamilySymbol::new(Family::Poincare { index: params.poincare_index }, base_weight, orientation))
}

/// Builds a form of weight `k` and exact depth `d` realizing `label`.
pub fn construct_case(label: BkCase, k: i64, d: u32, params: &CaseParams) -> Result<Form, Error> {
    check(label, k, d)?;
    let m = |x: i64| u32::try_from(x).map_err(|_| Error::Domain(format!("negative degree {x}")));
    match label {
        BkCase::Ia => {
            let w = solve_wd(0, m(-k)?, Dir::L, d)?;
            emit_form(&w, &FamilySymbol::new(Family::Eisenstein, 0, 1))
        }
        BkCase::Ib => {
            let w = solve_wd(0, m(-k)?, Dir::L, d)?;
            emit_form(&w, &poincare(params, 0, -1)?)
        }
        BkCase::Ic => flip(&construct_case(BkCase::Ib, k, d, params)?),
        BkCase::Id if k < 0 => {
            let w = solve_wd(k, 0, Dir::L, d)?;
            emit_form(&w, &FamilySymbol::new(Family::Eisenstein, k, -1))
        }
        BkCase::Id => {
            // The reflected point of E_0 is its pole, so build weight 0 from weight −2.
            let w = solve_wd(-2, 2, Dir::R, d)?;
            emit_form(&w, &FamilySymbol::new(Family::Eisenstein, -2, -1))
        }
        BkCase::IIa => Ok(preimage_constant_weight(d, &poincare(params, 1, 1)?)),
        BkCase::IIb => Ok(preimage_incoherent(params.disc, d)),
        BkCase::IIIa => Ok(raise_pow(&construct_case(BkCase::Id, 2 - k, d, params)?, (k - 1) as u32)),
        BkCase::IIIb => {
            let w = solve_wd(2, m(k - 2)?, Dir::R, d)?;
            emit_form(&w, &FamilySymbol::new(Family::Eisenstein, 2, 1))
        }
        BkCase::IIIc => Ok(raise_pow(&construct_case(BkCase::Ic, 2 - k, d + 1, params)?, (k - 1) as u32)),
        BkCase::IIId => {
            // Δ commutes with R^{k−1} here, and R^{k−1} does not kill the harmonic top of an
            // Ib form, so the depth is preserved: start from Ib in depth d.
            Ok(raise_pow(&construct_case(BkCase::Ib, 2 - k, d, params)?, (k - 1) as u32))
        }
    }
}
