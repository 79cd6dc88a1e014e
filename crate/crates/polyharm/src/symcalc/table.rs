//! Known coincidences between atoms: poles with residues, forced zeros, and named rules.
//!
//! Everything outside this table is treated as linearly independent. The table is read once,
//! from the JSON file named by [`CONFIG_ENV`] if set, otherwise the built-in default is used.

use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::atoms::{Family, PolyAtom, SpectralAtom};
use super::form::TermRepr;
use crate::scalar::{parse_q, q, Scalar, Q};
use crate::Error;

/// Environment variable naming an optional JSON coincidence-table file.
pub const CONFIG_ENV: &str = "POLYHARM_CONFIG";

/// Name of the rule that zeroes order-zero Poincaré coefficients at weakly holomorphic points.
pub const CUSP_RULE: &str = "poincare_cusp_vanishing";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyPattern {
    Eisenstein,
    Poincare,
    Incoherent,
}

impl FamilyPattern {
    fn matches(&self, family: &Family) -> bool {
        matches!(
            (self, family),
            (FamilyPattern::Eisenstein, Family::Eisenstein)
                | (FamilyPattern::Poincare, Family::Poincare { .. })
                | (FamilyPattern::Incoherent, Family::Incoherent { .. })
        )
    }
}

#[derive(Clone, Debug)]
pub struct PoleEntry {
    pub family: FamilyPattern,
    pub weight: i64,
    pub point: Q,
    /// Always 1; deeper poles are rejected at load time.
    pub order: u32,
    /// Replacement for the `c_{−1}` atom, a pending-free combination of spectral atoms.
    pub residue: Vec<(SpectralAtom, Scalar)>,
}

#[derive(Clone, Debug)]
pub struct ZeroEntry {
    pub family: FamilyPattern,
    pub weight: i64,
    pub point: Q,
    pub laurent: i64,
}

#[derive(Clone, Debug)]
pub struct CoincidenceTable {
    pub poles: Vec<PoleEntry>,
    pub zeros: Vec<ZeroEntry>,
    pub rules: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct PoleRepr {
    family: FamilyPattern,
    weight: i64,
    point: String,
    order: u32,
    residue_form: ResidueRepr,
}

#[derive(Serialize, Deserialize)]
struct ResidueRepr {
    weight: i64,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct ZeroRepr {
    family: FamilyPattern,
    weight: i64,
    point: String,
    laurent: i64,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    #[serde(default)]
    poles: Vec<PoleRepr>,
    #[serde(default)]
    zeros: Vec<ZeroRepr>,
    #[serde(default)]
    rules: Vec<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ConfigFile {
    Full(TableRepr),
    /// A bare list of poles; zeros and rules keep their defaults.
    Poles(Vec<PoleRepr>),
}

fn point(text: &str) -> Result<Q, Error> {
    parse_q(text).ok_or_else(|| Error::Config(format!("bad point {text:?}")))
}

impl Default for CoincidenceTable {
    fn default() -> Self {
        Self {
            poles: vec![PoleEntry {
                family: FamilyPattern::Eisenstein,
                weight: 0,
                point: q(1),
                order: 1,
                residue: vec![(SpectralAtom::constant(), Scalar::monomial(q(3), -1))],
            }],
            zeros: vec![ZeroEntry {
                family: FamilyPattern::Incoherent,
                weight: 1,
                point: Q::zero(),
                laurent: 0,
            }],
            rules: vec![CUSP_RULE.to_string()],
        }
    }
}

impl CoincidenceTable {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let parsed: ConfigFile =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let repr = match parsed {
            ConfigFile::Full(t) => t,
            ConfigFile::Poles(poles) => {
                let d = Self::default();
                let mut t = d.to_repr();
                t.poles = poles;
                t
            }
        };
        let mut poles = Vec::new();
        for p in repr.poles {
            if p.order != 1 {
                return Err(Error::Config(format!("pole order {} unsupported, only simple poles", p.order)));
            }
            if p.residue_form.weight != p.weight {
                return Err(Error::Config("residue weight differs from pole weight".into()));
            }
            let mut residue = Vec::new();
            for t in &p.residue_form.terms {
                let (poly, atom, c) = t.parse()?;
                if poly != PolyAtom::ONE || atom.pending.is_some() || atom.current_weight() != p.weight {
                    return Err(Error::Config("residue terms must be plain spectral atoms of the pole weight".into()));
                }
                residue.push((atom, c));
            }
            poles.push(PoleEntry { family: p.family, weight: p.weight, point: point(&p.point)?, order: 1, residue });
        }
        let zeros = repr
            .zeros
            .into_iter()
            .map(|z| Ok(ZeroEntry { family: z.family, weight: z.weight, point: point(&z.point)?, laurent: z.laurent }))
            .collect::<Result<_, Error>>()?;
        for r in &repr.rules {
            if r != CUSP_RULE {
                return Err(Error::Config(format!("unknown rule {r:?}")));
            }
        }
        Ok(Self { poles, zeros, rules: repr.rules })
    }

    fn to_repr(&self) -> TableRepr {
        TableRepr {
            poles: self
                .poles
                .iter()
                .map(|p| PoleRepr {
                    family: p.family,
                    weight: p.weight,
                    point: crate::scalar::fmt_q(&p.point),
                    order: p.order,
                    residue_form: ResidueRepr {
                        weight: p.weight,
                        terms: p.residue.iter().map(|(a, c)| TermRepr::new(&PolyAtom::ONE, a, c)).collect(),
                    },
                })
                .collect(),
            zeros: self
                .zeros
                .iter()
                .map(|z| ZeroRepr {
                    family: z.family,
                    weight: z.weight,
                    point: crate::scalar::fmt_q(&z.point),
                    laurent: z.laurent,
                })
                .collect(),
            rules: self.rules.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_repr()).expect("table serializes")
    }

    /// Reads [`CONFIG_ENV`] if set.
    pub fn from_env() -> Result<Self, Error> {
        match std::env::var_os(CONFIG_ENV) {
            None => Ok(Self::default()),
            Some(path) => {
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Config(format!("{}: {e}", path.to_string_lossy())))?;
                Self::from_json(&text)
            }
        }
    }

    pub fn pole_at(&self, atom: &SpectralAtom) -> Option<&PoleEntry> {
        self.poles
            .iter()
            .find(|p| p.family.matches(&atom.family) && p.weight == atom.weight && p.point == atom.point)
    }

    fn forced_zero(&self, atom: &SpectralAtom) -> bool {
        self.zeros.iter().any(|z| {
            z.family.matches(&atom.family)
                && z.weight == atom.weight
                && z.point == atom.point
                && z.laurent == atom.laurent
        }) || (atom.laurent == 0 && self.rules.iter().any(|r| r == CUSP_RULE) && cusp_vanishing(atom))
    }

    /// Rewrites a single atom into canonical atoms. Pending atoms pass through untouched.
    pub fn normalize(&self, atom: SpectralAtom) -> Vec<(SpectralAtom, Scalar)> {
        if atom.pending.is_some() {
            return vec![(atom, Scalar::one())];
        }
        if atom.family == Family::Constant {
            return if atom.laurent == 0 && atom.weight == 0 {
                vec![(SpectralAtom::constant(), Scalar::one())]
            } else {
                Vec::new()
            };
        }
        let lowest = match self.pole_at(&atom) {
            Some(pole) => {
                if atom.laurent == -1 {
                    return pole.residue.clone();
                }
                -(pole.order as i64)
            }
            None => 0,
        };
        if atom.laurent < lowest || self.forced_zero(&atom) {
            return Vec::new();
        }
        vec![(atom, Scalar::one())]
    }
}

/// Dimension of weight `w` cusp forms on SL2(Z).
pub fn cusp_form_dimension(w: i64) -> i64 {
    if w < 12 || w % 2 != 0 {
        return 0;
    }
    let modular = w / 12 + if w % 12 == 2 { 0 } else { 1 };
    modular - 1
}

/// Order-zero coefficients of Poincaré series that are weakly holomorphic with no cusp form
/// to absorb them. Requires `2σ` integral and at least 2, matching parity with the weight,
/// the exponent sign compatible with the weight, and no cusp forms of weight `2σ`.
fn cusp_vanishing(atom: &SpectralAtom) -> bool {
    let Family::Poincare { index } = atom.family else {
        return false;
    };
    let two_sigma = &atom.point * q(2);
    if !two_sigma.is_integer() {
        return false;
    }
    let Ok(h) = i64::try_from(two_sigma.to_integer()) else {
        return false;
    };
    let w = atom.weight;
    h >= 2 && index.signum() * w >= h && (w - h) % 2 == 0 && cusp_form_dimension(h) == 0
}

static TABLE: OnceLock<CoincidenceTable> = OnceLock::new();

/// The process-wide table. Falls back to the default if the configured file is unusable;
/// front ends should call [`CoincidenceTable::from_env`] first to report such errors.
pub fn table() -> &'static CoincidenceTable {
    TABLE.get_or_init(|| CoincidenceTable::from_env().unwrap_or_default())
}

/// Installs a table before first use. Fails if one is already in place.
pub fn install(t: CoincidenceTable) -> Result<(), Error> {
    TABLE.set(t).map_err(|_| Error::Config("coincidence table already initialized".into()))
}
