//! Laurent polynomials in one variable over the rationals, evaluation points,
//! and the Lagrange idempotents that split `A / I` into a product of copies of
//! the base field.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{format_scalar, parse_scalar, Scalar};

/// Finite sum `Σ c_k t^k` with integer (possibly negative) exponents.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: Scalar, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// `t - a`.
    pub fn linear(a: &Scalar) -> Self {
        let mut p = Self::monomial(Scalar::one(), 1);
        p.add_term(0, -a.clone());
        p
    }

    fn add_term(&mut self, k: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, k: i64) -> Scalar {
        self.terms.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        let mut p = Self::zero();
        for (&e, c) in &self.terms {
            p.add_term(e, c * k);
        }
        p
    }

    /// Exact value at `a`.
    pub fn evaluate(&self, a: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (&k, c) in &self.terms {
            let power = if k >= 0 {
                pow(a, k as u64)
            } else if a.is_zero() {
                return Err(Error::NegativePowerAtZero);
            } else {
                pow(&a.recip(), k.unsigned_abs())
            };
            acc += c * power;
        }
        Ok(acc)
    }
}

fn pow(a: &Scalar, e: u64) -> Scalar {
    num_traits::pow(a.clone(), e as usize)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        for (&k, c) in &rhs.terms {
            p.add_term(k, c.clone());
        }
        p
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                p.add_term(a + b, x * y);
            }
        }
        p
    }
}

/// Canonical form: `c*t^k` terms joined by `+`, exponents descending, `0` for zero.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(k, c)| format!("{}*t^{}", format_scalar(c), k))
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Accepts the canonical form and the usual shorthand: `2 - t`, `t^-1`,
/// `3/2*t^2`, `-t^(-2) + 1`.
impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut poly = LaurentPoly::zero();
        let mut start = 0;
        let bytes = s.as_bytes();
        for i in 0..=bytes.len() {
            let boundary = i == bytes.len()
                || bytes[i] == b'+'
                || (bytes[i] == b'-' && i > 0 && !matches!(bytes[i - 1], b'^' | b'(' | b'+' | b'*' | b'-'));
            if boundary && i > start {
                let (k, c) = parse_term(&s[start..i], text)?;
                poly.add_term(k, c);
            }
            if boundary {
                start = if i < bytes.len() && bytes[i] == b'+' { i + 1 } else { i };
            }
        }
        Ok(poly)
    }
}

fn parse_term(term: &str, whole: &str) -> Result<(i64, Scalar)> {
    let bad = || Error::Parse(format!("malformed term '{term}' in polynomial '{whole}'"));
    let Some(tpos) = term.find('t') else {
        return Ok((0, parse_scalar(term)?));
    };
    let coeff_text = term[..tpos].trim_end_matches('*');
    let coeff = match coeff_text {
        "" | "+" => Scalar::one(),
        "-" => -Scalar::one(),
        c => parse_scalar(c).map_err(|_| bad())?,
    };
    let rest = &term[tpos + 1..];
    let exp = if rest.is_empty() {
        1
    } else {
        let e = rest.strip_prefix('^').ok_or_else(bad)?;
        let e = e
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(e);
        e.parse::<i64>().map_err(|_| bad())?
    };
    Ok((exp, coeff))
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Nonzero, pairwise distinct rational evaluation points `a_1, …, a_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPoints(Vec<Scalar>);

impl EvaluationPoints {
    pub fn new(points: Vec<Scalar>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidPoints("no points given".into()));
        }
        if let Some(p) = points.iter().find(|p| p.is_zero()) {
            return Err(Error::InvalidPoints(format!("point {} is zero", format_scalar(p))));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::InvalidPoints(format!("duplicate point {}", format_scalar(p))));
            }
        }
        Ok(EvaluationPoints(points))
    }

    /// The points `1, 2, …, n`.
    pub fn consecutive(n: usize) -> Self {
        EvaluationPoints((1..=n as i64).map(crate::exactla::int).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.0
    }
}

/// Lagrange idempotents `P_1, …, P_n` with `P_i(a_j) = δ_ij`. Their images form
/// a basis of `A / I`, where `I` is the ideal of polynomials vanishing at
/// every point; `I` itself is only ever tested by evaluation.
#[derive(Clone, Debug)]
pub struct IdempotentBasis {
    points: EvaluationPoints,
    idempotents: Vec<LaurentPoly>,
}

pub fn lagrange_idempotents(points: &EvaluationPoints) -> IdempotentBasis {
    let pts = points.as_slice();
    let idempotents = (0..pts.len())
        .map(|i| {
            let mut num = LaurentPoly::one();
            let mut den = Scalar::one();
            for (j, aj) in pts.iter().enumerate() {
                if j != i {
                    num = &num * &LaurentPoly::linear(aj);
                    den *= &pts[i] - aj;
                }
            }
            num.scale(&den.recip())
        })
        .collect();
    IdempotentBasis {
        points: points.clone(),
        idempotents,
    }
}

impl IdempotentBasis {
    pub fn points(&self) -> &EvaluationPoints {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }

    /// `P_i`, 1-based.
    pub fn get(&self, i: usize) -> Result<&LaurentPoly> {
        i.checked_sub(1)
            .and_then(|k| self.idempotents.get(k))
            .ok_or_else(|| Error::InvalidIndex(format!("idempotent P{i} with {} points", self.len())))
    }

    pub fn idempotents(&self) -> &[LaurentPoly] {
        &self.idempotents
    }

    /// Coordinates of `p` modulo `I`: `(p(a_1), …, p(a_n))`, so that
    /// `p ≡ Σ p(a_i) P_i`.
    pub fn reduce(&self, p: &LaurentPoly) -> Result<Vec<Scalar>> {
        reduce_mod_ideal(p, self)
    }

    /// Whether `p` lies in the ideal of the points.
    pub fn in_ideal(&self, p: &LaurentPoly) -> Result<bool> {
        Ok(self.reduce(p)?.iter().all(Zero::is_zero))
    }
}

pub fn evaluate(p: &LaurentPoly, a: &Scalar) -> Result<Scalar> {
    p.evaluate(a)
}

pub fn reduce_mod_ideal(p: &LaurentPoly, basis: &IdempotentBasis) -> Result<Vec<Scalar>> {
    basis
        .points
        .as_slice()
        .iter()
        .map(|a| p.evaluate(a))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int, ratio};
    use proptest::prelude::*;

    fn pts(xs: &[i64]) -> EvaluationPoints {
        EvaluationPoints::new(xs.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn two_point_idempotents() {
        let basis = lagrange_idempotents(&pts(&[1, 2]));
        assert_eq!(basis.get(1).unwrap(), &"2 - t".parse::<LaurentPoly>().unwrap());
        assert_eq!(basis.get(2).unwrap(), &"t - 1".parse::<LaurentPoly>().unwrap());
        let p1 = basis.get(1).unwrap();
        let p2 = basis.get(2).unwrap();
        assert_eq!(p1.evaluate(&int(1)).unwrap(), int(1));
        assert_eq!(p1.evaluate(&int(2)).unwrap(), int(0));
        assert_eq!(p2.evaluate(&int(1)).unwrap(), int(0));
        assert_eq!(p2.evaluate(&int(2)).unwrap(), int(1));
    }

    #[test]
    fn single_point_idempotent_is_one() {
        let basis = lagrange_idempotents(&pts(&[5]));
        assert_eq!(basis.get(1).unwrap(), &LaurentPoly::one());
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(LaurentPoly::monomial(int(1), 2).evaluate(&int(3)).unwrap(), int(9));
        assert_eq!(LaurentPoly::monomial(int(1), -1).evaluate(&int(2)).unwrap(), ratio(1, 2));
        let p: LaurentPoly = "2 - t".parse().unwrap();
        assert_eq!(p.evaluate(&int(2)).unwrap(), int(0));
        assert_eq!(
            LaurentPoly::monomial(int(1), -1).evaluate(&int(0)),
            Err(Error::NegativePowerAtZero)
        );
    }

    #[test]
    fn reduction_examples() {
        let basis = lagrange_idempotents(&pts(&[1, 2, 3]));
        assert_eq!(basis.reduce(&LaurentPoly::one()).unwrap(), vec![int(1); 3]);
        let two = lagrange_idempotents(&pts(&[1, 2]));
        assert_eq!(two.reduce(&LaurentPoly::monomial(int(1), 2)).unwrap(), vec![int(1), int(4)]);
        assert_eq!(two.reduce(two.get(1).unwrap()).unwrap(), vec![int(1), int(0)]);
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(EvaluationPoints::new(vec![int(1), int(1)]).is_err());
        assert!(EvaluationPoints::new(vec![int(0), int(1)]).is_err());
        assert!(EvaluationPoints::new(vec![]).is_err());
    }

    #[test]
    fn canonical_text_form() {
        let p: LaurentPoly = "2 - t + 1/2 t^-1".parse().unwrap();
        assert_eq!(p.to_string(), "-1*t^1+2*t^0+1/2*t^-1");
        assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        assert_eq!("-t^(-2)+1".parse::<LaurentPoly>().unwrap().coefficient(-2), int(-1));
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert!("2*s".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    fn points_strategy() -> impl Strategy<Value = EvaluationPoints> {
        proptest::collection::btree_set((-6i64..7).prop_filter("nonzero", |x| *x != 0), 1..5)
            .prop_map(|s| EvaluationPoints::new(s.into_iter().map(int).collect()).unwrap())
    }

    fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-2i64..3, -3i64..4), 0..4).prop_map(|ts| {
            ts.into_iter()
                .fold(LaurentPoly::zero(), |acc, (k, c)| &acc + &LaurentPoly::monomial(int(c), k))
        })
    }

    proptest! {
        #[test]
        fn idempotents_are_kronecker_and_sum_to_one(points in points_strategy()) {
            let basis = lagrange_idempotents(&points);
            let n = points.len();
            let mut total = LaurentPoly::zero();
            for (i, p) in basis.idempotents().iter().enumerate() {
                prop_assert!(p.degree().unwrap_or(0) < n as i64);
                for (j, a) in points.as_slice().iter().enumerate() {
                    let expect = if i == j { int(1) } else { int(0) };
                    prop_assert_eq!(p.evaluate(a).unwrap(), expect);
                }
                total = &total + p;
            }
            prop_assert_eq!(total, LaurentPoly::one());
        }

        #[test]
        fn reduction_is_multiplicative(points in points_strategy(), p in poly_strategy(), q in poly_strategy()) {
            let basis = lagrange_idempotents(&points);
            let cp = basis.reduce(&p).unwrap();
            let cq = basis.reduce(&q).unwrap();
            let cpq = basis.reduce(&(&p * &q)).unwrap();
            let pointwise: Vec<Scalar> = cp.iter().zip(&cq).map(|(a, b)| a * b).collect();
            prop_assert_eq!(cpq, pointwise);
        }

        #[test]
        fn distinct_idempotents_multiply_into_ideal(points in points_strategy()) {
            let basis = lagrange_idempotents(&points);
            let ps = basis.idempotents();
            for l in 0..ps.len() {
                for k in 0..ps.len() {
                    if l != k {
                        prop_assert!(basis.in_ideal(&(&ps[l] * &ps[k])).unwrap());
                    }
                }
            }
        }

        #[test]
        fn text_round_trip(p in poly_strategy()) {
            prop_assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
        }
    }
}
