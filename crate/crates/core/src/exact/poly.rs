//! Dense univariate polynomials over a commutative ring.
//!
//! `Poly<Rational>` carries the one-variable data of a loop (the functions
//! `v_i`, `s_i`). `NestedPoly = Poly<Poly<Rational>>` represents polynomials
//! in two variables: the outer variable indexes the coefficient vector and
//! every coefficient is a polynomial in the inner variable. A two-variable
//! identity holds iff the nested polynomial is zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;

/// Commutative ring with exact equality, enough to host polynomial coefficients.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Polynomial with coefficients in ascending powers and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

/// Polynomial in two variables, stored as a polynomial in the outer variable
/// whose coefficients are polynomials in the inner variable.
pub type NestedPoly = Poly<Poly<Rational>>;

/// Coarse shape of a one-variable rational polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolyClass {
    Zero,
    ConstantNonzero,
    Linear,
    Nonlinear,
}

impl<T: Ring> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * x^power`.
    pub fn monomial(c: T, power: usize) -> Self {
        let mut coeffs = vec![T::zero(); power];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Poly::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^power`, zero beyond the degree.
    pub fn coeff(&self, power: usize) -> T {
        self.coeffs.get(power).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn scale(&self, c: &T) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiply by `x^power`.
    pub fn shift(&self, power: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); power];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut acc = Poly::constant(T::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute the polynomial `q` for the variable.
    pub fn compose(&self, q: &Poly<T>) -> Self {
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| {
            &(&acc * q) + &Poly::constant(c.clone())
        })
    }

    /// Apply `f` coefficientwise.
    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    // Coefficientwise combination, padding the shorter operand with zeros.
    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Self {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = T::zero();
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = rhs.coeffs.get(i).unwrap_or(&zero);
                f(a, b)
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl Poly<Rational> {
    /// Parse from strings in ascending power order.
    pub fn from_strs(coeffs: &[&str]) -> Result<Self, crate::error::Error> {
        coeffs
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Rational>, _>>()
            .map(Poly::new)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// Zero, constant, linear (degree one, or degree at most one), nonlinear.
    pub fn classify(&self) -> PolyClass {
        match self.degree() {
            None => PolyClass::Zero,
            Some(0) => PolyClass::ConstantNonzero,
            Some(1) => PolyClass::Linear,
            Some(_) => PolyClass::Nonlinear,
        }
    }

    pub fn vanishes_at_zero(&self) -> bool {
        self.coeff(0).is_zero()
    }
}

impl NestedPoly {
    /// Evaluate at `outer = y`, `inner = x`.
    pub fn eval2(&self, inner: &Rational, outer: &Rational) -> Rational {
        self.coeffs()
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * outer + c.eval(inner))
    }

    /// Lift a one-variable polynomial into the outer variable.
    pub fn lift_outer(p: &Poly<Rational>) -> Self {
        p.map(|c| Poly::constant(c.clone()))
    }

    /// Lift a one-variable polynomial into the inner variable.
    pub fn lift_inner(p: &Poly<Rational>) -> Self {
        Poly::constant(p.clone())
    }

    /// Swap the roles of the two variables.
    pub fn transpose(&self) -> Self {
        let inner_len = self.coeffs().iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
        let coeffs = (0..inner_len)
            .map(|j| Poly::new(self.coeffs().iter().map(|c| c.coeff(j)).collect()))
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Ring> Ring for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::constant(T::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, T::add)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.zip_with(rhs, T::sub)
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::new(coeffs)
    }
    fn neg(&self) -> Self {
        Poly::new(self.coeffs.iter().map(T::neg).collect())
    }
}

impl<T: Ring> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        Ring::add(self, rhs)
    }
}

impl<T: Ring> Add for Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Poly<T>) -> Poly<T> {
        Ring::add(&self, &rhs)
    }
}

impl<T: Ring> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        Ring::sub(self, rhs)
    }
}

impl<T: Ring> Sub for Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Poly<T>) -> Poly<T> {
        Ring::sub(&self, &rhs)
    }
}

impl<T: Ring> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        Ring::mul(self, rhs)
    }
}

impl<T: Ring> Mul for Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Poly<T>) -> Poly<T> {
        Ring::mul(&self, &rhs)
    }
}

impl<T: Ring> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Ring::neg(self)
    }
}

impl<T: Ring> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Ring::neg(&self)
    }
}

impl<T: Ring> Default for Poly<T> {
    fn default() -> Self {
        Poly::zero()
    }
}

impl<T: fmt::Debug> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.coeffs).finish()
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Serialize> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de, T: Ring + Deserialize<'de>> Deserialize<'de> for Poly<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Vec::<T>::deserialize(deserializer).map(Poly::new)
    }
}
