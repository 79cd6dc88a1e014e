//! Exact coefficients of the form `sum q_e * pi^e` with rational `q_e`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary precision rational.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u64) -> Q {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    Q::from_integer(acc)
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(text.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Finite sum of rational multiples of powers of pi. The empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar {
    terms: BTreeMap<i32, Q>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::rational(Q::one())
    }

    pub fn rational(x: Q) -> Self {
        Self::monomial(x, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::rational(q(n))
    }

    /// `x * pi^e`.
    pub fn monomial(x: Q, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !x.is_zero() {
            terms.insert(e, x);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Q)> {
        self.terms.iter().map(|(e, x)| (*e, x))
    }

    /// The rational value if no pi-power other than `pi^0` occurs.
    pub fn as_rational(&self) -> Option<Q> {
        match self.terms.len() {
            0 => Some(Q::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, x: &Q) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (*e, c * x)).collect(),
        }
    }

    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(e, c)| c.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI.powi(*e))
            .sum()
    }

    fn add_term(&mut self, e: i32, x: Q) {
        if x.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(Q::zero);
        *slot += x;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl From<Q> for Scalar {
    fn from(x: Q) -> Self {
        Scalar::rational(x)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (e, x) in &rhs.terms {
            self.add_term(*e, x.clone());
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(e, x)| (*e, -x)).collect(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (e1, x1) in &self.terms {
            for (e2, x2) in &rhs.terms {
                out.add_term(e1 + e2, x1 * x2);
            }
        }
        out
    }
}

fn fmt_monomial(x: &Q, e: i32) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    let num = a.numer().to_string();
    let den = a.denom().to_string();
    let pi = |p: i32| if p == 1 { "π".to_string() } else { format!("π^{p}") };
    let top = match (e > 0, num.as_str()) {
        (true, "1") => pi(e),
        (true, _) => format!("{num}{}", pi(e)),
        (false, _) => num,
    };
    let bottom = match (e < 0, den.as_str()) {
        (false, "1") => String::new(),
        (false, _) => den,
        (true, "1") => pi(-e),
        (true, _) => format!("({den}{})", pi(-e)),
    };
    if bottom.is_empty() {
        format!("{sign}{top}")
    } else {
        format!("{sign}{top}/{bottom}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, x)| fmt_monomial(x, *e)).collect();
        if parts.len() == 1 {
            write!(f, "{}", parts[0])
        } else {
            write!(f, "({})", parts.join(" + "))
        }
    }
}
