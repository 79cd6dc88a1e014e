//! Representations of the Gelfand quiver `− ⇄ ∗ ⇄ +` and the two-cyclic quiver `− ⇄ +`.
//!
//! Cyclic modules are realized inside `scalars[[t]]` per vertex: a module is given by a lowest
//! and a one-past-highest exponent at each vertex, with the basis `t^α, …, t^{β−1}`.
//! Arrows into `∗` multiply by `t`, arrows out of `∗` are inclusions.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::linalg::Matrix;
use crate::scalar::{q, Q};
use crate::Error;

/// Number of random generator candidates tried per vertex after the basis vectors.
pub const CYCLIC_TRIALS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quiver {
    Gelfand,
    Cyclic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeType {
    Star,
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CyclicCase {
    A,
    B,
    C,
    D,
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeType::Star => "∗",
            NodeType::Plus => "+",
            NodeType::Minus => "−",
        })
    }
}

impl FromStr for NodeType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "star" | "*" | "∗" => Ok(NodeType::Star),
            "plus" | "+" => Ok(NodeType::Plus),
            "minus" | "-" | "−" => Ok(NodeType::Minus),
            _ => Err(Error::Parse(format!("unknown vertex type {s:?}"))),
        }
    }
}

impl FromStr for CyclicCase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "a" => Ok(CyclicCase::A),
            "b" => Ok(CyclicCase::B),
            "c" => Ok(CyclicCase::C),
            "d" => Ok(CyclicCase::D),
            _ => Err(Error::Parse(format!("unknown case {s:?}"))),
        }
    }
}

impl FromStr for Quiver {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "gelfand" => Ok(Quiver::Gelfand),
            "cyclic" => Ok(Quiver::Cyclic),
            _ => Err(Error::Parse(format!("unknown quiver {s:?}"))),
        }
    }
}

/// A representation with exact matrices. Dimension vectors list `(n_−, n_∗, n_+)` for the
/// Gelfand quiver and `(n_−, n_+)` for the two-cyclic quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "quiver", rename_all = "lowercase")]
pub enum QuiverRep {
    Gelfand {
        dims: [usize; 3],
        /// `V_− → V_∗`
        a_minus: Matrix,
        /// `V_∗ → V_−`
        b_minus: Matrix,
        /// `V_+ → V_∗`
        a_plus: Matrix,
        /// `V_∗ → V_+`
        b_plus: Matrix,
    },
    Cyclic {
        dims: [usize; 2],
        /// `V_− → V_+`
        a_plus: Matrix,
        /// `V_+ → V_−`
        a_minus: Matrix,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub dims: Vec<usize>,
    /// Nilpotency degrees of the loops at each vertex, in the same order as `dims`.
    pub degrees: Vec<usize>,
}

impl QuiverRep {
    pub fn quiver(&self) -> Quiver {
        match self {
            QuiverRep::Gelfand { .. } => Quiver::Gelfand,
            QuiverRep::Cyclic { .. } => Quiver::Cyclic,
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        match self {
            QuiverRep::Gelfand { dims, .. } => dims.to_vec(),
            QuiverRep::Cyclic { dims, .. } => dims.to_vec(),
        }
    }

    /// Arrows as `(source, target, matrix)` with vertices indexed as in `dims`.
    pub fn arrows(&self) -> Vec<(usize, usize, &Matrix)> {
        match self {
            QuiverRep::Gelfand { a_minus, b_minus, a_plus, b_plus, .. } => {
                vec![(0, 1, a_minus), (1, 0, b_minus), (2, 1, a_plus), (1, 2, b_plus)]
            }
            QuiverRep::Cyclic { a_plus, a_minus, .. } => vec![(0, 1, a_plus), (1, 0, a_minus)],
        }
    }

    pub fn vertex(&self, t: NodeType) -> Option<usize> {
        match (self.quiver(), t) {
            (Quiver::Gelfand, NodeType::Minus) => Some(0),
            (Quiver::Gelfand, NodeType::Star) => Some(1),
            (Quiver::Gelfand, NodeType::Plus) => Some(2),
            (Quiver::Cyclic, NodeType::Minus) => Some(0),
            (Quiver::Cyclic, NodeType::Plus) => Some(1),
            (Quiver::Cyclic, NodeType::Star) => None,
        }
    }

    pub fn vertex_types(&self) -> Vec<NodeType> {
        match self.quiver() {
            Quiver::Gelfand => vec![NodeType::Star, NodeType::Plus, NodeType::Minus],
            Quiver::Cyclic => vec![NodeType::Plus, NodeType::Minus],
        }
    }

    /// Shapes agree with `dims` and, for the Gelfand quiver, `A_− B_− = A_+ B_+`.
    pub fn validate(&self) -> Result<(), Error> {
        let dims = self.dims();
        for (s, t, m) in self.arrows() {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Domain(format!("arrow {s}→{t} has shape {}×{}", m.rows(), m.cols())));
            }
        }
        if let QuiverRep::Gelfand { a_minus, b_minus, a_plus, b_plus, .. } = self {
            if &(a_minus * b_minus) != &(a_plus * b_plus) {
                return Err(Error::Verification("relation A_− B_− = A_+ B_+ fails".into()));
            }
        }
        Ok(())
    }

    /// The loop endomorphisms at each vertex.
    pub fn loops(&self) -> Vec<Matrix> {
        match self {
            QuiverRep::Gelfand { a_minus, b_minus, a_plus, b_plus, .. } => {
                vec![b_minus * a_minus, a_minus * b_minus, b_plus * a_plus]
            }
            QuiverRep::Cyclic { a_plus, a_minus, .. } => vec![a_minus * a_plus, a_plus * a_minus],
        }
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> Result<QuiverRep, Error> {
        match (self, other) {
            (
                QuiverRep::Gelfand { dims: d1, a_minus: a1, b_minus: b1, a_plus: c1, b_plus: e1 },
                QuiverRep::Gelfand { dims: d2, a_minus: a2, b_minus: b2, a_plus: c2, b_plus: e2 },
            ) => Ok(QuiverRep::Gelfand {
                dims: [d1[0] + d2[0], d1[1] + d2[1], d1[2] + d2[2]],
                a_minus: a1.direct_sum(a2),
                b_minus: b1.direct_sum(b2),
                a_plus: c1.direct_sum(c2),
                b_plus: e1.direct_sum(e2),
            }),
            (
                QuiverRep::Cyclic { dims: d1, a_plus: a1, a_minus: b1 },
                QuiverRep::Cyclic { dims: d2, a_plus: a2, a_minus: b2 },
            ) => Ok(QuiverRep::Cyclic {
                dims: [d1[0] + d2[0], d1[1] + d2[1]],
                a_plus: a1.direct_sum(a2),
                a_minus: b1.direct_sum(b2),
            }),
            _ => Err(Error::Domain("direct sum of representations of different quivers".into())),
        }
    }
}

/// Exponent window `[lo, hi)` per vertex.
type Window = Vec<(i64, i64)>;

/// Lowest exponents of the projectives and of `Q`, vertex order `(−, ∗, +)`.
fn gelfand_windows(t: NodeType, c: CyclicCase, d: i64) -> Result<Window, Error> {
    // (−, ∗, +) lowest exponents
    let p_star = [0, 0, 0];
    let p_plus = [1, 1, 0];
    let p_minus = [0, 1, 1];
    let q_mod = [0, 1, 0];
    let shift = |e: [i64; 3], s: i64| e.map(|x| x + s);
    let (top, sub) = match (t, c) {
        (NodeType::Star, CyclicCase::A) => (p_star, shift(q_mod, d)),
        (NodeType::Star, CyclicCase::B) => (p_star, shift(p_star, d + 1)),
        (NodeType::Star, CyclicCase::C) => (p_star, shift(p_minus, d)),
        (NodeType::Star, CyclicCase::D) => (p_star, shift(p_plus, d)),
        (NodeType::Plus | NodeType::Minus, CyclicCase::D) if d == 0 => {
            return Err(Error::Domain("case d of this type exists only for depth ≥ 1".into()));
        }
        (NodeType::Plus, CyclicCase::A) => (p_plus, shift(p_star, d + 1)),
        (NodeType::Plus, CyclicCase::B) => (p_plus, shift(q_mod, d + 1)),
        (NodeType::Plus, CyclicCase::C) => (p_plus, shift(p_plus, d + 1)),
        (NodeType::Plus, CyclicCase::D) => (p_plus, shift(p_minus, d)),
        (NodeType::Minus, _) => {
            let w = gelfand_windows(NodeType::Plus, c, d)?;
            return Ok(vec![w[2], w[1], w[0]]);
        }
    };
    Ok((0..3).map(|i| (top[i], sub[i])).collect())
}

/// Vertex order `(−, +)`.
fn cyclic_windows(t: NodeType, c: CyclicCase, d: i64) -> Result<Window, Error> {
    let p_plus = [0, 0];
    let p_minus = [0, 1];
    let shift = |e: [i64; 2], s: i64| e.map(|x| x + s);
    let (top, sub) = match (t, c) {
        (NodeType::Plus, CyclicCase::A) => (p_plus, shift(p_minus, d)),
        (NodeType::Plus, CyclicCase::B) => (p_plus, shift(p_plus, d + 1)),
        (NodeType::Minus, CyclicCase::A) => (p_minus, shift(p_plus, d + 1)),
        (NodeType::Minus, CyclicCase::B) => (p_minus, shift(p_minus, d + 1)),
        _ => return Err(Error::Domain("the two-cyclic quiver has types + and − with cases a and b only".into())),
    };
    Ok((0..2).map(|i| (top[i], sub[i])).collect())
}

/// Matrix of `t^j ↦ t^{j+s}` from window `src` to window `dst`, dropping what leaves `dst`.
fn shift_map(src: (i64, i64), dst: (i64, i64), s: i64) -> Matrix {
    let rows = (dst.1 - dst.0) as usize;
    let cols = (src.1 - src.0) as usize;
    Matrix::from_fn(rows, cols, |i, j| {
        if src.0 + j as i64 + s == dst.0 + i as i64 {
            Q::one()
        } else {
            Q::zero()
        }
    })
}

/// The cyclic module of the given type and case, as a quotient of an indecomposable projective.
pub fn build_cyclic_module(quiver: Quiver, t: NodeType, c: CyclicCase, d: u32) -> Result<QuiverRep, Error> {
    let d = d as i64;
    let rep = match quiver {
        Quiver::Gelfand => {
            let w = gelfand_windows(t, c, d)?;
            let dims = [0, 1, 2].map(|i| (w[i].1 - w[i].0) as usize);
            QuiverRep::Gelfand {
                dims,
                a_minus: shift_map(w[0], w[1], 1),
                b_minus: shift_map(w[1], w[0], 0),
                a_plus: shift_map(w[2], w[1], 1),
                b_plus: shift_map(w[1], w[2], 0),
            }
        }
        Quiver::Cyclic => {
            let w = cyclic_windows(t, c, d)?;
            QuiverRep::Cyclic {
                dims: [0, 1].map(|i| (w[i].1 - w[i].0) as usize),
                a_plus: shift_map(w[0], w[1], 1),
                a_minus: shift_map(w[1], w[0], 0),
            }
        }
    };
    rep.validate()?;
    Ok(rep)
}

pub fn invariants_of(rep: &QuiverRep) -> Result<Invariants, Error> {
    rep.validate()?;
    let degrees = rep
        .loops()
        .iter()
        .map(|c| c.nilpotency_degree().ok_or_else(|| Error::Domain("loop is not nilpotent".into())))
        .collect::<Result<_, _>>()?;
    Ok(Invariants { dims: rep.dims(), degrees })
}

/// Column basis of the span of `vectors`.
fn span_basis(vectors: Vec<Vec<Q>>, dim: usize) -> Vec<Vec<Q>> {
    if vectors.is_empty() || dim == 0 {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors);
    let (red, pivots) = m.rref();
    (0..pivots.len()).map(|i| red.row(i).to_vec()).collect()
}

/// Dimension of the submodule generated by `v` placed at vertex `at`.
pub fn generated_dimension(rep: &QuiverRep, at: usize, v: &[Q]) -> usize {
    let dims = rep.dims();
    let mut spans: Vec<Vec<Vec<Q>>> = vec![Vec::new(); dims.len()];
    spans[at] = span_basis(vec![v.to_vec()], dims[at]);
    loop {
        let mut grown = false;
        for (s, t, m) in rep.arrows() {
            if spans[s].is_empty() || dims[t] == 0 {
                continue;
            }
            let mut candidates = spans[t].clone();
            candidates.extend(spans[s].iter().map(|x| m.apply(x)));
            let next = span_basis(candidates, dims[t]);
            if next.len() > spans[t].len() {
                spans[t] = next;
                grown = true;
            }
        }
        if !grown {
            return spans.iter().map(Vec::len).sum();
        }
    }
}

/// A vertex type admitting a generator of the whole representation, if any.
///
/// Tries basis vectors, then [`CYCLIC_TRIALS`] seeded random combinations per vertex.
pub fn is_cyclic(rep: &QuiverRep) -> Option<NodeType> {
    let dims = rep.dims();
    let total: usize = dims.iter().sum();
    if total == 0 {
        return None;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for t in rep.vertex_types() {
        let at = rep.vertex(t).expect("vertex exists");
        let n = dims[at];
        if n == 0 {
            continue;
        }
        let basis = (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect::<Vec<_>>());
        let random = (0..CYCLIC_TRIALS).map(|_| (0..n).map(|_| q(rng.gen_range(-3..=3))).collect::<Vec<_>>());
        for v in basis.chain(random) {
            if generated_dimension(rep, at, &v) == total {
                return Some(t);
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicClass {
    #[serde(rename = "type")]
    pub node: NodeType,
    pub case: CyclicCase,
    pub d: u32,
}

/// Recovers the cyclic class of a representation from its dimension vector and loop degrees.
pub fn classify_cyclic(rep: &QuiverRep) -> Result<CyclicClass, Error> {
    let inv = invariants_of(rep)?;
    let node = is_cyclic(rep).ok_or_else(|| Error::Domain("representation is not cyclic".into()))?;
    let cases: &[CyclicCase] = match rep.quiver() {
        Quiver::Gelfand => &[CyclicCase::A, CyclicCase::B, CyclicCase::C, CyclicCase::D],
        Quiver::Cyclic => &[CyclicCase::A, CyclicCase::B],
    };
    let max_d = inv.dims.iter().copied().max().unwrap_or(0) as u32 + 1;
    let mut found = Vec::new();
    for &case in cases {
        for d in 0..=max_d {
            if let Ok(expected) = build_cyclic_module(rep.quiver(), node, case, d) {
                if expected.dims() == inv.dims {
                    found.push(CyclicClass { node, case, d });
                }
            }
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(Error::Verification("cyclic but dimension vector not in the table".into())),
        _ => Err(Error::Verification("ambiguous dimension vector".into())),
    }
}

/// Basis of the endomorphism algebra, each element as one matrix per vertex.
pub fn endomorphisms(rep: &QuiverRep) -> Vec<Vec<Matrix>> {
    let dims = rep.dims();
    let offsets: Vec<usize> = dims
        .iter()
        .scan(0, |acc, &n| {
            let o = *acc;
            *acc += n * n;
            Some(o)
        })
        .collect();
    let unknowns: usize = dims.iter().map(|n| n * n).sum();
    // entry (i, j) of the block at vertex v
    let var = |v: usize, i: usize, j: usize| offsets[v] + i * dims[v] + j;
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for (s, t, m) in rep.arrows() {
        // X_t M − M X_s = 0, entry (i, j)
        for i in 0..dims[t] {
            for j in 0..dims[s] {
                let mut row = vec![Q::zero(); unknowns];
                for l in 0..dims[t] {
                    row[var(t, i, l)] += m[(l, j)].clone();
                }
                for l in 0..dims[s] {
                    row[var(s, l, j)] -= m[(i, l)].clone();
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() { Matrix::zeros(0, unknowns) } else { Matrix::from_rows(rows) };
    system
        .kernel()
        .into_iter()
        .map(|x| {
            (0..dims.len())
                .map(|v| Matrix::from_fn(dims[v], dims[v], |i, j| x[var(v, i, j)].clone()))
                .collect()
        })
        .collect()
}

/// `dim End − dim rad`, where the radical is taken for the trace form `tr(xy)` on the
/// module. It equals 1 exactly when the only idempotents are 0 and 1.
pub fn endomorphism_top_dimension(rep: &QuiverRep) -> usize {
    let basis = endomorphisms(rep);
    let n = basis.len();
    let trace = |x: &[Matrix], y: &[Matrix]| -> Q { x.iter().zip(y).map(|(a, b)| (a * b).trace()).sum() };
    let gram = Matrix::from_fn(n, n, |i, j| trace(&basis[i], &basis[j]));
    gram.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let r = build_cyclic_module(Quiver::Gelfand, NodeType::Star, CyclicCase::A, 2).unwrap();
        let inv = invariants_of(&r).unwrap();
        assert_eq!(inv.dims, vec![2, 3, 2]);
        assert_eq!(inv.degrees[1], 3);
        assert!(build_cyclic_module(Quiver::Gelfand, NodeType::Plus, CyclicCase::D, 0).is_err());
        let c = build_cyclic_module(Quiver::Cyclic, NodeType::Plus, CyclicCase::B, 1).unwrap();
        assert_eq!(invariants_of(&c).unwrap(), Invariants { dims: vec![2, 2], degrees: vec![2, 2] });
    }

    #[test]
    fn sum_is_not_cyclic() {
        let a = build_cyclic_module(Quiver::Gelfand, NodeType::Star, CyclicCase::A, 0).unwrap();
        let s = a.direct_sum(&a).unwrap();
        assert_eq!(is_cyclic(&s), None);
        assert!(classify_cyclic(&s).is_err());
        assert_eq!(endomorphism_top_dimension(&s), 4);
    }
}
