//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Every polynomial lives over the same fixed tuple of seven variables
//! `(p, q, t, u, v, w, x)`, so an exponent vector is a plain `[u32; 7]`.
//! Terms are kept in a [`BTreeMap`] ordered by graded lexicographic order
//! (total degree first, then the exponent vector compared lexicographically
//! with `p` most significant). The largest key is the leading term used by
//! [`MultiPoly::exact_div`].
//!
//! Zero coefficients are never stored, so two polynomials are equal exactly
//! when their term maps are equal.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Number of variables in the fixed universe.
pub const NUM_VARS: usize = 7;

/// One of the seven polynomial variables, in their fixed order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P,
    Q,
    T,
    U,
    V,
    W,
    X,
}

impl Var {
    pub const ALL: [Var; NUM_VARS] = [Var::P, Var::Q, Var::T, Var::U, Var::V, Var::W, Var::X];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["p", "q", "t", "u", "v", "w", "x"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Var::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| PolyError::UnknownVariable(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("divisor does not divide the dividend exactly")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable {0} has no value at the evaluation point")]
    UnboundVariable(Var),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed polynomial data: {0}")]
    Malformed(String),
}

/// An exponent vector over `(p, q, t, u, v, w, x)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; NUM_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; NUM_VARS]);

    pub const fn new(exponents: [u32; NUM_VARS]) -> Self {
        Monomial(exponents)
    }

    /// `var^exp`.
    pub fn var(var: Var, exp: u32) -> Self {
        Monomial::ONE.with(var, exp)
    }

    /// Returns a copy with the exponent of `var` replaced by `exp`.
    #[must_use]
    pub fn with(mut self, var: Var, exp: u32) -> Self {
        self.0[var.index()] = exp;
        self
    }

    pub fn exponent(&self, var: Var) -> u32 {
        self.0[var.index()]
    }

    pub fn exponents(&self) -> &[u32; NUM_VARS] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, when it exists.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut out = [0; NUM_VARS];
        for (o, (a, b)) in out.iter_mut().zip(self.0.iter().zip(other.0.iter())) {
            *o = b - a;
        }
        Some(Monomial(out))
    }

    fn write_factors(&self, f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for var in Var::ALL {
            let e = self.exponent(var);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Mul for Monomial {
    type Output = Monomial;

    // multiplying monomials adds exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: Monomial) -> Monomial {
        let mut out = self.0;
        for (o, r) in out.iter_mut().zip(rhs.0.iter()) {
            *o += r;
        }
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `Z[p, q, t, u, v, w, x]` in canonical sparse form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial(c, Monomial::ONE)
    }

    pub fn var(var: Var) -> Self {
        MultiPoly::monomial(1, Monomial::var(var, 1))
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut out = MultiPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c.into());
        }
        out.debug_check();
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::ONE).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_constant().and_then(|c| c.to_i64())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    /// True if every term has total degree `d` in the given variables.
    pub fn is_homogeneous_in(&self, vars: &[Var], d: u32) -> bool {
        self.terms
            .keys()
            .all(|m| vars.iter().map(|&v| m.exponent(v)).sum::<u32>() == d)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn sub_term(&mut self, m: Monomial, c: &BigInt) {
        self.add_term(m, -c);
    }

    fn debug_check(&self) {
        debug_assert!(
            self.terms.values().all(|c| !c.is_zero()),
            "zero coefficient stored"
        );
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: Monomial) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k * m, c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution of polynomials for variables; unbound
    /// variables stay as they are.
    pub fn substitute(&self, bindings: &[(Var, MultiPoly)]) -> MultiPoly {
        if bindings.is_empty() {
            return self.clone();
        }
        let mut bound: [Option<&MultiPoly>; NUM_VARS] = [None; NUM_VARS];
        for (v, value) in bindings {
            bound[v.index()] = Some(value);
        }
        // powers[var][e] = value^e, grown on demand
        let mut powers: Vec<Vec<MultiPoly>> = vec![vec![MultiPoly::one()]; NUM_VARS];
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let mut kept = Monomial::ONE;
            let mut factor = MultiPoly::constant(c.clone());
            for var in Var::ALL {
                let e = m.exponent(var);
                match bound[var.index()] {
                    None => kept = kept.with(var, e),
                    Some(value) if e > 0 => {
                        let table = &mut powers[var.index()];
                        while table.len() <= e as usize {
                            let next = table.last().unwrap() * value;
                            table.push(next);
                        }
                        factor = &factor * &table[e as usize];
                    }
                    Some(_) => {}
                }
            }
            out += &factor.mul_monomial(kept);
        }
        out.debug_check();
        out
    }

    /// Substitutes integer constants.
    pub fn specialize(&self, values: &[(Var, i64)]) -> MultiPoly {
        let bindings: Vec<(Var, MultiPoly)> = values
            .iter()
            .map(|&(v, c)| (v, MultiPoly::constant(c)))
            .collect();
        self.substitute(&bindings)
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: Var, b: Var) -> MultiPoly {
        MultiPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let (ea, eb) = (m.exponent(a), m.exponent(b));
            (m.with(a, eb).with(b, ea), c.clone())
        }))
    }

    /// The coefficient of `var^k`, as a polynomial in the other variables.
    pub fn coeff_of(&self, var: Var, k: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(var) == k)
                .map(|(m, c)| (m.with(var, 0), c.clone()))
                .collect(),
        }
    }

    /// Exact division: returns `q` with `self == q * divisor`, or
    /// [`PolyError::NotDivisible`] when no such polynomial exists.
    ///
    /// Repeatedly cancels the graded-lex leading term of the remainder
    /// against the leading term of the divisor. Over the integers this
    /// reaches zero iff the division is exact.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, PolyError> {
        let (lead_m, lead_c) = divisor.leading_term().ok_or(PolyError::DivisionByZero)?;
        let (lead_m, lead_c) = (*lead_m, lead_c.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = lead_m.quotient_of(m).ok_or(PolyError::NotDivisible)?;
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            for (dm, dc) in &divisor.terms {
                rem.sub_term(*dm * qm, &(dc * &qc));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Double-precision evaluation. Every variable that occurs must be bound.
    pub fn eval_f64(&self, point: &[(Var, f64)]) -> Result<f64, PolyError> {
        let mut values: [Option<f64>; NUM_VARS] = [None; NUM_VARS];
        for &(v, x) in point {
            values[v.index()] = Some(x);
        }
        let mut sum = 0.0;
        for (m, c) in &self.terms {
            let mut term = c.to_f64().unwrap_or(f64::NAN);
            for var in Var::ALL {
                let e = m.exponent(var);
                if e > 0 {
                    let x = values[var.index()].ok_or(PolyError::UnboundVariable(var))?;
                    term *= x.powi(e as i32);
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Text form without spaces around the operators, e.g. `p^2+p*q+q^2+1`.
    pub fn to_compact_string(&self) -> String {
        let mut s = String::new();
        self.write_terms(&mut s, "+", "-").expect("writing to a String");
        s
    }

    /// Groups terms by ascending powers of `var`, e.g. `1 + (p+q+2)*t`.
    pub fn display_grouped(&self, var: Var) -> String {
        let Some(deg) = self.degree_in(var) else {
            return "0".to_string();
        };
        let mut out = String::new();
        for k in 0..=deg {
            let c = self.coeff_of(var, k);
            if c.is_zero() {
                continue;
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let single_negative = c.num_terms() == 1 && c.leading_term().unwrap().1.is_negative();
            let body = if k == 0 {
                c.to_compact_string()
            } else if c.num_terms() > 1 {
                format!("({})*{power}", c.to_compact_string())
            } else if c.is_one() {
                power
            } else if single_negative && (-&c).is_one() {
                format!("-{power}")
            } else {
                format!("{}*{power}", c.to_compact_string())
            };
            if out.is_empty() {
                out = body;
            } else if let Some(rest) = body.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
        out
    }

    fn write_terms(&self, f: &mut impl fmt::Write, plus: &str, minus: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_char('0');
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    f.write_char('-')?;
                }
            } else {
                f.write_str(if negative { minus } else { plus })?;
            }
            let abs = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                m.write_factors(f)?;
            } else {
                write!(f, "{abs}*")?;
                m.write_factors(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, " + ", " - ")
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}

impl From<Var> for MultiPoly {
    fn from(v: Var) -> Self {
        MultiPoly::var(v)
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&MultiPoly> for MultiPoly {
    fn sub_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.sub_term(*m, c);
        }
    }
}

impl MulAssign<&MultiPoly> for MultiPoly {
    fn mul_assign(&mut self, rhs: &MultiPoly) {
        *self = &*self * rhs;
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(*ma * *mb, ca * cb);
            }
        }
        out.debug_check();
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $imp<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $imp<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a MultiPoly> for MultiPoly {
    fn sum<I: Iterator<Item = &'a MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for MultiPoly {
    fn product<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::one(), |acc, x| &acc * &x)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    exponents: [u32; NUM_VARS],
    coeff: String,
}

/// JSON form: a list of `{"exponents": [7 ints], "coeff": "<decimal>"}`,
/// leading term first.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<JsonTerm> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| JsonTerm {
                exponents: m.0,
                coeff: c.to_string(),
            })
            .collect();
        terms.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<JsonTerm>::deserialize(deserializer)?;
        let mut parsed = Vec::with_capacity(terms.len());
        for t in terms {
            let c = t
                .coeff
                .parse::<BigInt>()
                .map_err(|e| serde::de::Error::custom(PolyError::Malformed(e.to_string())))?;
            parsed.push((Monomial(t.exponents), c));
        }
        Ok(MultiPoly::from_terms(parsed))
    }
}

/// Shorthand constructors used throughout the crate and its tests.
pub fn p() -> MultiPoly {
    MultiPoly::var(Var::P)
}

pub fn q() -> MultiPoly {
    MultiPoly::var(Var::Q)
}

pub fn t() -> MultiPoly {
    MultiPoly::var(Var::T)
}

pub fn c(value: i64) -> MultiPoly {
    MultiPoly::constant(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> MultiPoly {
        c(1) + (p() + q() + c(2)) * t()
    }

    fn d5() -> MultiPoly {
        let s = p() + q();
        c(1) + (s.pow(2) + c(2) * &s + c(3)) * t()
            + (p().pow(2) + p() * q() + q().pow(2) + c(1)) * t().pow(2)
    }

    #[test]
    fn add_identity_and_cancellation() {
        assert_eq!(p() + q() + MultiPoly::zero(), p() + q());
        assert_eq!((p() + q()) + (p() - q()), c(2) * p());
        assert_eq!(c(1) + (p() + q() + c(2)) * t(), d4());
    }

    #[test]
    fn mul_and_pow() {
        assert_eq!((p() + q()) * (p() - q()), p().pow(2) - q().pow(2));
        assert_eq!((c(1) + t()).pow(2), c(1) + c(2) * t() + t().pow(2));
        assert_eq!((c(1) + t()).pow(0), c(1));
        assert_eq!(
            (p() + q()).pow(2),
            p().pow(2) + c(2) * p() * q() + q().pow(2)
        );
    }

    #[test]
    fn substitution() {
        let d4_at = d4().substitute(&[(Var::P, c(1)), (Var::Q, c(-1))]);
        assert_eq!(d4_at, c(1) + c(2) * t());
        // E_4(q)
        assert_eq!(d4().specialize(&[(Var::P, 1), (Var::T, 1)]), c(4) + q());
        let x = MultiPoly::var(Var::X);
        assert_eq!(x.substitute(&[(Var::P, c(3))]), x);
        assert_eq!(d5().substitute(&[]), d5());
    }

    #[test]
    fn substitution_by_polynomials() {
        // (p+q)^2 with p <- q, q <- p is unchanged; with p <- t*q it becomes q^2 (t+1)^2
        let s = (p() + q()).pow(2);
        assert_eq!(s.substitute(&[(Var::P, q()), (Var::Q, p())]), s);
        let got = s.substitute(&[(Var::P, t() * q())]);
        assert_eq!(got, q().pow(2) * (t() + c(1)).pow(2));
    }

    #[test]
    fn coefficient_extraction() {
        assert_eq!(d4().coeff_of(Var::T, 1), p() + q() + c(2));
        assert_eq!(
            d5().coeff_of(Var::T, 2),
            p().pow(2) + p() * q() + q().pow(2) + c(1)
        );
        assert!(c(1).coeff_of(Var::T, 3).is_zero());
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            (p().pow(2) - q().pow(2)).exact_div(&(p() + q())).unwrap(),
            p() - q()
        );
        assert_eq!(
            (p().pow(2) + q().pow(2)).exact_div(&(p() + q())),
            Err(PolyError::NotDivisible)
        );
        assert_eq!((c(3) * p()).exact_div(&c(2)), Err(PolyError::NotDivisible));
        assert_eq!(p().exact_div(&MultiPoly::zero()), Err(PolyError::DivisionByZero));
        assert_eq!(MultiPoly::zero().exact_div(&p()).unwrap(), MultiPoly::zero());
    }

    #[test]
    fn float_evaluation() {
        let one_plus_t = c(1) + t();
        assert!((one_plus_t.eval_f64(&[(Var::T, 0.2)]).unwrap() - 1.2).abs() < 1e-15);
        let d4_p1 = d4().specialize(&[(Var::P, 1)]);
        let v = d4_p1.eval_f64(&[(Var::Q, 0.3), (Var::T, 0.2)]).unwrap();
        assert!((v - 1.66).abs() < 1e-12);
        assert_eq!(c(1).eval_f64(&[]).unwrap(), 1.0);
        assert_eq!(t().eval_f64(&[]), Err(PolyError::UnboundVariable(Var::T)));
    }

    #[test]
    fn text_forms() {
        let s = p().pow(2) + p() * q() + q().pow(2) + c(1);
        assert_eq!(s.to_string(), "p^2 + p*q + q^2 + 1");
        assert_eq!(s.to_compact_string(), "p^2+p*q+q^2+1");
        assert_eq!((p() - c(2) * q()).to_string(), "p - 2*q");
        assert_eq!((-p()).to_string(), "-p");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(d4().display_grouped(Var::T), "1 + (p+q+2)*t");
        let neg1 = c(1) + c(3) * t() + c(2) * t().pow(2);
        assert_eq!(neg1.display_grouped(Var::T), "1 + 3*t + 2*t^2");
        assert_eq!((c(1) - t()).display_grouped(Var::T), "1 - t");
        assert_eq!(c(1).display_grouped(Var::T), "1");
    }

    #[test]
    fn json_form() {
        let s = c(2) * p() - q().pow(3) + c(7);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"[{"exponents":[0,3,0,0,0,0,0],"coeff":"-1"},{"exponents":[1,0,0,0,0,0,0],"coeff":"2"},{"exponents":[0,0,0,0,0,0,0],"coeff":"7"}]"#
        );
        let back: MultiPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        let huge = c(10).pow(40);
        let back: MultiPoly = serde_json::from_str(&serde_json::to_string(&huge).unwrap()).unwrap();
        assert_eq!(back, huge);
    }

    #[test]
    fn json_with_zero_or_duplicate_terms_is_canonicalised() {
        let raw = r#"[{"exponents":[1,0,0,0,0,0,0],"coeff":"2"},
                      {"exponents":[1,0,0,0,0,0,0],"coeff":"-2"},
                      {"exponents":[0,0,0,0,0,0,0],"coeff":"0"}]"#;
        let parsed: MultiPoly = serde_json::from_str(raw).unwrap();
        assert!(parsed.is_zero());
    }

    #[test]
    fn graded_order_and_leading_term() {
        let s = p() + q().pow(2) + c(5);
        assert_eq!(s.leading_term().unwrap().0, &Monomial::var(Var::Q, 2));
        assert!(Monomial::var(Var::P, 1) > Monomial::var(Var::Q, 1));
        assert!(Monomial::var(Var::Q, 2) > Monomial::var(Var::P, 1));
    }
}
