//! Exact integers, rationals and sparse multivariate polynomials.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; a
//! `BigRational` is always kept in lowest terms with a positive denominator,
//! so structural equality is value equality.
//!
//! [`MultiPoly`] is a sparse polynomial with `BigInt` coefficients over the
//! closed symbol set `{rho, q, z, x, y}`. Terms are kept in a `BTreeMap`
//! keyed by exponent vector and zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("assignment does not cover symbol `{0}`")]
    MissingSymbol(Symbol),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
}

/// Indeterminates available to [`MultiPoly`].
///
/// The declaration order is the variable priority used by the canonical
/// ordering: `rho` is the most significant variable, `y` the least.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Rho,
    Q,
    Z,
    X,
    Y,
}

impl Symbol {
    pub const ALL: [Symbol; 5] = [Symbol::Rho, Symbol::Q, Symbol::Z, Symbol::X, Symbol::Y];

    fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::Rho => "rho",
            Symbol::Q => "q",
            Symbol::Z => "z",
            Symbol::X => "x",
            Symbol::Y => "y",
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Symbol {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Symbol::ALL.into_iter().find(|sym| sym.name() == s).ok_or_else(|| PolyError::UnknownSymbol(s.to_string()))
    }
}

/// Exponent vector indexed by [`Symbol`]. The derived ordering is
/// lexicographic with `rho` most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial([u32; 5]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(sym: Symbol, exp: u32) -> Self {
        let mut m = Monomial::default();
        m.0[sym.index()] = exp;
        m
    }

    pub fn exponent(&self, sym: Symbol) -> u32 {
        self.0[sym.index()]
    }

    pub fn with_exponent(mut self, sym: Symbol, exp: u32) -> Self {
        self.0[sym.index()] = exp;
        self
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u32; 5];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.0[i] + other.0[i];
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for sym in Symbol::ALL {
            let e = self.exponent(sym);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Sparse multivariate polynomial with exact integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MultiPoly::term(c, Monomial::one())
    }

    pub fn var(sym: Symbol) -> Self {
        MultiPoly::term(1, Monomial::var(sym, 1))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = MultiPoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// Builds a polynomial from `(coefficient, monomial)` pairs, combining
    /// repeated monomials.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, Monomial)>) -> Self {
        let mut p = MultiPoly::zero();
        for (c, m) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn degree_in(&self, sym: Symbol) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(sym)).max()
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        Symbol::ALL.into_iter().filter(|&s| self.terms.keys().any(|m| m.exponent(s) > 0)).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    pub fn pow(&self, mut exp: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact value of the polynomial at `assignment`.
    pub fn eval(&self, assignment: &BTreeMap<Symbol, BigRational>) -> Result<BigRational, PolyError> {
        for sym in self.symbols() {
            if !assignment.contains_key(&sym) {
                return Err(PolyError::MissingSymbol(sym));
            }
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for sym in Symbol::ALL {
                let e = m.exponent(sym);
                if e > 0 {
                    v *= num_traits::pow(assignment[&sym].clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Replaces every occurrence of `sym` with the polynomial `replacement`.
    pub fn substitute(&self, sym: Symbol, replacement: &MultiPoly) -> MultiPoly {
        let max_exp = self.degree_in(sym).unwrap_or(0);
        let mut powers = Vec::with_capacity(max_exp as usize + 1);
        powers.push(MultiPoly::one());
        for e in 1..=max_exp as usize {
            let next = &powers[e - 1] * replacement;
            powers.push(next);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(sym) as usize;
            let rest = MultiPoly::term(c.clone(), m.with_exponent(sym, 0));
            out += &rest * &powers[e];
        }
        out
    }

    /// Replaces `sym` by `a*sym + b`, fully expanded.
    pub fn substitute_linear(&self, sym: Symbol, a: &BigInt, b: &BigInt) -> MultiPoly {
        let replacement = MultiPoly::var(sym).scale(a) + MultiPoly::constant(b.clone());
        self.substitute(sym, &replacement)
    }

    /// Renames `from` to `to`. Exponents add if `to` already occurs.
    pub fn rename(&self, from: Symbol, to: Symbol) -> MultiPoly {
        self.substitute(from, &MultiPoly::var(to))
    }
}

/// `p(sym := a*sym + b)`.
pub fn poly_substitute_linear(p: &MultiPoly, sym: Symbol, a: &BigInt, b: &BigInt) -> MultiPoly {
    p.substitute_linear(sym, a, b)
}

pub fn poly_eval(p: &MultiPoly, assignment: &BTreeMap<Symbol, BigRational>) -> Result<BigRational, PolyError> {
    p.eval(assignment)
}

/// The falling factorial `(s)_m = s(s-1)...(s-m+1)`; `(s)_0 = 1`.
pub fn falling_factorial(sym: Symbol, m: usize) -> MultiPoly {
    let s = MultiPoly::var(sym);
    (0..m).fold(MultiPoly::one(), |acc, i| &acc * &(s.clone() - MultiPoly::constant(i as i64)))
}

/// The rising factorial `s(s+1)...(s+m-1)`.
pub fn rising_factorial(sym: Symbol, m: usize) -> MultiPoly {
    let s = MultiPoly::var(sym);
    (0..m).fold(MultiPoly::one(), |acc, i| &acc * &(s.clone() + MultiPoly::constant(i as i64)))
}

impl fmt::Display for MultiPoly {
    /// Canonical rendering: terms in descending lexicographic monomial order
    /// (variable priority `rho > q > z > x > y`), joined by ` + `. A unit
    /// coefficient is omitted; every other coefficient, `-1` included, is
    /// written as `c*monomial`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl From<BigInt> for MultiPoly {
    fn from(c: BigInt) -> Self {
        MultiPoly::constant(c)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        *self += &rhs;
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

/// A value produced by one of the number families: integer, rational or
/// polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactValue {
    Int(BigInt),
    Rational(BigRational),
    Poly(MultiPoly),
}

impl ExactValue {
    /// True for integers, rationals with denominator 1, and polynomials.
    pub fn is_integral(&self) -> bool {
        match self {
            ExactValue::Int(_) | ExactValue::Poly(_) => true,
            ExactValue::Rational(r) => r.is_integer(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            ExactValue::Int(v) => v.is_zero(),
            ExactValue::Rational(v) => v.is_zero(),
            ExactValue::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            ExactValue::Int(v) => v.is_negative(),
            ExactValue::Rational(v) => v.is_negative(),
            ExactValue::Poly(_) => false,
        }
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Int(v) => write!(f, "{v}"),
            ExactValue::Rational(v) => write!(f, "{v}"),
            ExactValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl From<BigInt> for ExactValue {
    fn from(v: BigInt) -> Self {
        ExactValue::Int(v)
    }
}

impl From<BigRational> for ExactValue {
    fn from(v: BigRational) -> Self {
        ExactValue::Rational(v)
    }
}

impl From<MultiPoly> for ExactValue {
    fn from(v: MultiPoly) -> Self {
        ExactValue::Poly(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn at(sym: Symbol, v: i64) -> BTreeMap<Symbol, BigRational> {
        BTreeMap::from([(sym, BigRational::from_integer(v.into()))])
    }

    fn x() -> MultiPoly {
        MultiPoly::var(Symbol::X)
    }

    #[test]
    fn eval_examples() {
        let q = MultiPoly::var(Symbol::Q);
        let p = q.scale(&4.into()) + MultiPoly::constant(9);
        assert_eq!(p.eval(&at(Symbol::Q, 1)).unwrap(), BigRational::from_integer(13.into()));
        assert_eq!(MultiPoly::zero().eval(&at(Symbol::Q, 7)).unwrap(), BigRational::zero());
        let ff = falling_factorial(Symbol::X, 3);
        assert_eq!(ff.eval(&at(Symbol::X, 5)).unwrap(), BigRational::from_integer(60.into()));
    }

    #[test]
    fn eval_names_missing_symbol() {
        let p = MultiPoly::var(Symbol::Rho) * MultiPoly::var(Symbol::Q);
        let err = p.eval(&at(Symbol::Q, 2)).unwrap_err();
        assert_eq!(err, PolyError::MissingSymbol(Symbol::Rho));
        assert!(err.to_string().contains("rho"));
    }

    #[test]
    fn eval_at_rational_point() {
        let p = x().pow(2);
        let half = BTreeMap::from([(Symbol::X, BigRational::new(1.into(), 2.into()))]);
        assert_eq!(p.eval(&half).unwrap(), BigRational::new(1.into(), 4.into()));
    }

    #[test]
    fn substitute_linear_examples() {
        let one = BigInt::one();
        let shifted = x().pow(2).substitute_linear(Symbol::X, &one, &one);
        assert_eq!(shifted, x().pow(2) + x().scale(&2.into()) + MultiPoly::one());

        let z = MultiPoly::var(Symbol::Z);
        let p = MultiPoly::constant(4) - z;
        assert_eq!(p.substitute_linear(Symbol::Z, &one, &BigInt::zero()), p);

        let ff = falling_factorial(Symbol::X, 2).substitute_linear(Symbol::X, &one, &one);
        assert_eq!(ff, x().pow(2) + x());
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(Symbol::X, 0), MultiPoly::one());
        assert_eq!(falling_factorial(Symbol::X, 2), x().pow(2) - x());
        let y3 = falling_factorial(Symbol::Y, 3);
        assert_eq!(y3.eval(&at(Symbol::Y, 4)).unwrap(), BigRational::from_integer(24.into()));
    }

    #[test]
    fn canonical_rendering() {
        let q = MultiPoly::var(Symbol::Q);
        let rho = MultiPoly::var(Symbol::Rho);
        assert_eq!((q.scale(&4.into()) + MultiPoly::constant(9)).to_string(), "4*q + 9");
        let z = MultiPoly::var(Symbol::Z);
        assert_eq!((MultiPoly::constant(4) - z).to_string(), "-1*z + 4");
        let one_plus_q = MultiPoly::one() + q.clone();
        let p = &rho * &one_plus_q.pow(2) + one_plus_q.pow(4) - q.pow(2).scale(&3.into());
        // (1+q)^4 - 3q^2 = q^4 + 4q^3 + 3q^2 + 4q + 1
        assert_eq!(p.to_string(), "rho*q^2 + 2*rho*q + rho + q^4 + 4*q^3 + 3*q^2 + 4*q + 1");
        assert_eq!(MultiPoly::zero().to_string(), "0");
        assert_eq!(MultiPoly::constant(-3).to_string(), "-3");
        let xy = MultiPoly::var(Symbol::X) * MultiPoly::var(Symbol::Y).pow(2);
        assert_eq!(xy.scale(&(-2).into()).to_string(), "-2*x*y^2");
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let p = x() - x();
        assert!(p.is_zero());
        assert_eq!(p.len(), 0);
        assert!(x().scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn rename_and_general_substitution() {
        let z = MultiPoly::var(Symbol::Z);
        let p = z.pow(2) + MultiPoly::constant(1);
        assert_eq!(p.rename(Symbol::Z, Symbol::X), x().pow(2) + MultiPoly::one());
        let x_plus_y = x() + MultiPoly::var(Symbol::Y);
        let sq = z.pow(2).substitute(Symbol::Z, &x_plus_y);
        assert_eq!(sq, x_plus_y.pow(2));
    }

    #[test]
    fn symbol_parsing() {
        for sym in Symbol::ALL {
            assert_eq!(sym.name().parse::<Symbol>().unwrap(), sym);
        }
        assert!("w".parse::<Symbol>().is_err());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (-5i64..=5, 0u32..3, 0u32..3, 0u32..2);
        prop::collection::vec(term, 0..5).prop_map(|ts| {
            MultiPoly::from_terms(ts.into_iter().map(|(c, eq, ex, ez)| {
                let m = Monomial::one()
                    .with_exponent(Symbol::Q, eq)
                    .with_exponent(Symbol::X, ex)
                    .with_exponent(Symbol::Z, ez);
                (c, m)
            }))
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(p in small_poly(), q in small_poly(), r in small_poly()) {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert!((&p - &p).is_zero());
        }

        #[test]
        fn eval_after_shift_is_shifted_eval(p in small_poly(), v in -6i64..6, qv in -3i64..3, zv in -3i64..3) {
            let one = BigInt::one();
            let shifted = p.substitute_linear(Symbol::X, &one, &one);
            let mut a = BTreeMap::new();
            a.insert(Symbol::Q, BigRational::from_integer(qv.into()));
            a.insert(Symbol::Z, BigRational::from_integer(zv.into()));
            let mut b = a.clone();
            a.insert(Symbol::X, BigRational::from_integer(v.into()));
            b.insert(Symbol::X, BigRational::from_integer((v + 1).into()));
            prop_assert_eq!(shifted.eval(&a).unwrap(), p.eval(&b).unwrap());
        }
    }
}
