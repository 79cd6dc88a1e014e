//! Polynomial-part and spectral-part atoms, and the single-step shift rules.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{q, Scalar, Q};

/// The vector 𝔢_{r,m−r} of the polynomial representation of degree `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PolyAtom {
    pub m: u32,
    pub r: u32,
}

impl PolyAtom {
    pub const ONE: PolyAtom = PolyAtom { m: 0, r: 0 };

    pub fn new(m: u32, r: u32) -> Option<Self> {
        (r <= m).then_some(Self { m, r })
    }

    pub fn weight(&self) -> i64 {
        self.m as i64 - 2 * self.r as i64
    }

    /// `L 𝔢_{r,m−r} = (r+1)(m−r) 𝔢_{r+1,m−r−1}`.
    pub fn lower(&self) -> Option<(PolyAtom, Q)> {
        if self.r == self.m {
            return None;
        }
        let c = q((self.r as i64 + 1) * (self.m - self.r) as i64);
        Some((PolyAtom { m: self.m, r: self.r + 1 }, c))
    }

    /// `R 𝔢_{r,m−r} = 𝔢_{r−1,m−r+1}`.
    pub fn raise(&self) -> Option<PolyAtom> {
        (self.r > 0).then(|| PolyAtom { m: self.m, r: self.r - 1 })
    }
}

/// Which spectral family an atom is drawn from. Base weight and orientation are
/// not part of the identity; see [`FamilySymbol`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    /// Real analytic Eisenstein series, parametrized by `s` in `y^s`.
    Eisenstein,
    /// Poincaré series with exponent index `index`, parametrized by the global `σ`.
    Poincare { index: i64 },
    /// Character-twisted weight one Eisenstein series attached to discriminant `-disc`.
    Incoherent { disc: i64 },
    /// The constant function 1. Only appears at weight 0.
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Dir {
    L,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Pending {
    pub dir: Dir,
    pub power: u32,
}

/// Laurent coefficient `c_j` at `point` of a family of the given weight, optionally with a
/// power of `L` or `R` applied to the family before the coefficient is taken.
///
/// With a pending operator, `weight` is the weight the operator acts on.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpectralAtom {
    pub family: Family,
    pub weight: i64,
    pub point: Q,
    pub laurent: i64,
    pub pending: Option<Pending>,
}

impl SpectralAtom {
    pub fn new(family: Family, weight: i64, point: Q, laurent: i64) -> Self {
        Self { family, weight, point, laurent, pending: None }
    }

    pub fn constant() -> Self {
        Self::new(Family::Constant, 0, Q::zero(), 0)
    }

    pub fn with_pending(mut self, dir: Dir, power: u32) -> Self {
        self.pending = (power > 0).then_some(Pending { dir, power });
        self
    }

    /// Weight of the function the atom denotes, after any pending operator.
    pub fn current_weight(&self) -> i64 {
        match self.pending {
            None => self.weight,
            Some(Pending { dir: Dir::L, power }) => self.weight - 2 * power as i64,
            Some(Pending { dir: Dir::R, power }) => self.weight + 2 * power as i64,
        }
    }

    fn moved(&self, weight: i64, point: Q, laurent: i64) -> Self {
        Self { family: self.family, weight, point, laurent, pending: None }
    }

    /// One application of `L` or `R` to a pending-free atom, before normalization.
    ///
    /// The family satisfies `X Φ_w(p+u) = (α + β u) Φ_{w'}(p'+u)`, so the coefficient of
    /// `u^j` is `α c_j + β c_{j−1}` of the shifted family.
    pub fn shift_raw(&self, dir: Dir) -> Vec<(SpectralAtom, Scalar)> {
        debug_assert!(self.pending.is_none());
        let p = &self.point;
        let w = self.weight;
        let (weight, point, alpha, beta) = match (self.family, dir) {
            (Family::Constant, _) => return Vec::new(),
            (Family::Eisenstein | Family::Incoherent { .. }, Dir::L) => {
                (w - 2, p + Q::one(), Scalar::rational(p.clone()), Scalar::one())
            }
            (Family::Eisenstein | Family::Incoherent { .. }, Dir::R) => {
                (w + 2, p - Q::one(), Scalar::rational(p + q(w)), Scalar::one())
            }
            (Family::Poincare { index }, Dir::L) => {
                let four_n = q(4 * index.abs());
                let alpha = (p - Q::new(w.into(), 2.into())) / &four_n;
                (w - 2, p.clone(), Scalar::monomial(alpha, -1), Scalar::monomial(four_n.recip(), -1))
            }
            (Family::Poincare { index }, Dir::R) => {
                let four_n = q(4 * index.abs());
                let alpha = (p + Q::new(w.into(), 2.into())) * &four_n;
                (w + 2, p.clone(), Scalar::monomial(alpha, 1), Scalar::monomial(four_n, 1))
            }
        };
        let mut out = Vec::with_capacity(2);
        if !alpha.is_zero() {
            out.push((self.moved(weight, point.clone(), self.laurent), alpha));
        }
        out.push((self.moved(weight, point, self.laurent - 1), beta));
        out
    }
}

/// A family together with the data needed to turn solver output into atoms: the base weight
/// at which `Δ f_s = s(1−k−s) f_s` holds, and the orientation of the `s` parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySymbol {
    pub family: Family,
    pub base_weight: i64,
    pub orientation: i8,
}

impl FamilySymbol {
    pub fn new(family: Family, base_weight: i64, orientation: i8) -> Self {
        Self { family, base_weight, orientation }
    }

    /// Orders of vanishing at the base point, in the family's own parameter.
    pub fn vanishing_order(&self) -> i64 {
        match self.family {
            Family::Incoherent { .. } => 1,
            _ => 0,
        }
    }

    /// The native parameter value corresponding to `s = 0`.
    ///
    /// Every family is normalized so that `f_s = Φ(base + ε s)` has eigenvalue `s(1−k−s)`.
    pub fn base_point(&self) -> Q {
        let k = self.base_weight;
        let plus = self.orientation >= 0;
        match self.family {
            Family::Eisenstein | Family::Incoherent { .. } | Family::Constant => {
                if plus {
                    Q::zero()
                } else {
                    q(1 - k)
                }
            }
            Family::Poincare { .. } => {
                if plus {
                    Q::new(k.into(), 2.into())
                } else {
                    Q::new((2 - k).into(), 2.into())
                }
            }
        }
    }

    pub fn sign(&self) -> i64 {
        if self.orientation >= 0 {
            1
        } else {
            -1
        }
    }

    /// Atom for `∂_s^j f_s / j!` at `s = 0`, up to the sign `ε^j` which the caller applies.
    pub fn atom(&self, j: i64) -> SpectralAtom {
        SpectralAtom::new(self.family, self.base_weight, self.base_point(), j + self.vanishing_order())
    }
}
