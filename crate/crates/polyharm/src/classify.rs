//! Exact depth and the ten-case labelling of forms.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::symcalc::{expand, is_zero, laplace, lower, lower_pow, raise_pow, Form};
use crate::Error;

pub const DEFAULT_DEPTH_BOUND: u32 = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BkCase {
    Ia,
    Ib,
    Ic,
    Id,
    IIa,
    IIb,
    IIIa,
    IIIb,
    IIIc,
    IIId,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ReprCase {
    GIa,
    GIb,
    GIc,
    GId,
    CIa,
    CIb,
    GIIa,
    GIIb,
    GIIc,
    GIId,
}

impl BkCase {
    pub const ALL: [BkCase; 10] = [
        BkCase::Ia,
        BkCase::Ib,
        BkCase::Ic,
        BkCase::Id,
        BkCase::IIa,
        BkCase::IIb,
        BkCase::IIIa,
        BkCase::IIIb,
        BkCase::IIIc,
        BkCase::IIId,
    ];

    pub fn repr(self) -> ReprCase {
        match self {
            BkCase::Ia => ReprCase::GIa,
            BkCase::Ib => ReprCase::GIc,
            BkCase::Ic => ReprCase::GId,
            BkCase::Id => ReprCase::GIb,
            BkCase::IIa => ReprCase::CIa,
            BkCase::IIb => ReprCase::CIb,
            BkCase::IIIa => ReprCase::GIIa,
            BkCase::IIIb => ReprCase::GIIb,
            BkCase::IIIc => ReprCase::GIIc,
            BkCase::IIId => ReprCase::GIId,
        }
    }

    /// Whether the label can occur at weight `k`.
    pub fn admits_weight(self, k: i64) -> bool {
        match self {
            BkCase::Ia | BkCase::Ib | BkCase::Ic | BkCase::Id => k < 1,
            BkCase::IIa | BkCase::IIb => k == 1,
            _ => k > 1,
        }
    }
}

impl ReprCase {
    pub const ALL: [ReprCase; 10] = [
        ReprCase::GIa,
        ReprCase::GIb,
        ReprCase::GIc,
        ReprCase::GId,
        ReprCase::CIa,
        ReprCase::CIb,
        ReprCase::GIIa,
        ReprCase::GIIb,
        ReprCase::GIIc,
        ReprCase::GIId,
    ];

    pub fn bk(self) -> BkCase {
        *BkCase::ALL.iter().find(|b| b.repr() == self).expect("translation table is total")
    }
}

impl fmt::Display for BkCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl fmt::Display for ReprCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for BkCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        BkCase::ALL
            .into_iter()
            .find(|c| c.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown case label {s:?}")))
    }
}

/// `l` and `γ = k² − 2k` attached to a weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightContext {
    pub k: i64,
    pub l: i64,
    pub gamma: i64,
}

impl WeightContext {
    pub fn new(k: i64) -> Self {
        let l = match k {
            k if k < 1 => 1 - k,
            1 => 0,
            k => k - 1,
        };
        Self { k, l, gamma: k * k - 2 * k }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseLabel {
    pub bk: BkCase,
    pub repr: ReprCase,
    pub depth: u32,
    pub context: WeightContext,
}

#[derive(Serialize, Deserialize)]
struct CaseLabelRepr {
    bk: BkCase,
    repr: ReprCase,
    depth: u32,
    k: i64,
    l: i64,
    gamma: i64,
}

impl Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CaseLabelRepr {
            bk: self.bk,
            repr: self.repr,
            depth: self.depth,
            k: self.context.k,
            l: self.context.l,
            gamma: self.context.gamma,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CaseLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CaseLabelRepr::deserialize(d)?;
        let label = CaseLabel::new(r.bk, r.depth, r.k).map_err(serde::de::Error::custom)?;
        if label.repr != r.repr || label.context.l != r.l || label.context.gamma != r.gamma {
            return Err(serde::de::Error::custom("inconsistent case label"));
        }
        Ok(label)
    }
}

impl CaseLabel {
    pub fn new(bk: BkCase, depth: u32, k: i64) -> Result<Self, Error> {
        if !bk.admits_weight(k) {
            return Err(Error::Domain(format!("case {bk} does not occur in weight {k}")));
        }
        if bk == BkCase::IIId && depth == 0 {
            return Err(Error::Domain("case IIId occurs only in positive depth".into()));
        }
        Ok(Self { bk, repr: bk.repr(), depth, context: WeightContext::new(k) })
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} depth {} (k = {}, l = {}, gamma = {})",
            self.bk, self.repr, self.depth, self.context.k, self.context.l, self.context.gamma
        )
    }
}

/// Smallest `d` with `Δ^{d+1} f = 0`.
pub fn exact_depth(f: &Form, bound: u32) -> Result<u32, Error> {
    let mut current = expand(f);
    for d in 0..=bound {
        let next = laplace(&current);
        if next.is_empty() {
            return Ok(d);
        }
        current = next;
    }
    Err(Error::DepthBound(bound))
}

pub fn classify_bk(f: &Form) -> Result<CaseLabel, Error> {
    classify_bk_with_bound(f, DEFAULT_DEPTH_BOUND)
}

pub fn classify_bk_with_bound(f: &Form, bound: u32) -> Result<CaseLabel, Error> {
    let k = f.weight();
    let d = exact_depth(f, bound)?;
    let top = crate::symcalc::laplace_pow(f, d);
    let bk = if k < 1 {
        let low = is_zero(&lower(&top));
        let high = is_zero(&raise_pow(&top, (1 - k) as u32));
        match (low, high) {
            (true, true) => BkCase::Ia,
            (true, false) => BkCase::Ib,
            (false, true) => BkCase::Ic,
            (false, false) => BkCase::Id,
        }
    } else if k == 1 {
        if is_zero(&lower(&top)) {
            BkCase::IIa
        } else {
            BkCase::IIb
        }
    } else {
        let kk = k as u32;
        let below_top = || crate::symcalc::laplace_pow(f, d - 1);
        if d >= 1 && is_zero(&lower_pow(&below_top(), kk)) {
            BkCase::IIId
        } else if is_zero(&lower(&top)) {
            BkCase::IIIa
        } else if is_zero(&lower_pow(&top, kk)) {
            BkCase::IIIb
        } else {
            BkCase::IIIc
        }
    };
    CaseLabel::new(bk, d, k)
}

/// Classifies many forms in parallel, preserving order.
pub fn classify_many(forms: &[Form]) -> Vec<Result<CaseLabel, Error>> {
    forms.par_iter().map(classify_bk).collect()
}

/// Dimension vector of the cyclic module paired with a label, `(n_−, n_∗, n_+)` for the
/// Gelfand quiver and `(n_−, n_+)` for the two-cyclic quiver.
pub fn expected_dimension_vector(repr: ReprCase, depth: u32) -> Result<Vec<usize>, Error> {
    let d = depth as usize;
    Ok(match repr {
        ReprCase::GIa => vec![d, d + 1, d],
        ReprCase::GIb => vec![d + 1, d + 1, d + 1],
        ReprCase::GIc => vec![d, d + 1, d + 1],
        ReprCase::GId => vec![d + 1, d + 1, d],
        ReprCase::GIIa => vec![d, d, d + 1],
        ReprCase::GIIb => vec![d, d + 1, d + 1],
        ReprCase::GIIc => vec![d + 1, d + 1, d + 1],
        ReprCase::GIId => {
            if d == 0 {
                return Err(Error::Domain("GIId exists only for depth ≥ 1".into()));
            }
            vec![d - 1, d, d + 1]
        }
        ReprCase::CIa => vec![d, d + 1],
        ReprCase::CIb => vec![d + 1, d + 1],
    })
}
