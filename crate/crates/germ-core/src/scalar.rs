//! The exact coefficient field Q(i)(e).
//!
//! Scalars are Gaussian rationals (arbitrary-precision rational real and
//! imaginary parts) extended by a single transcendental `e`. Elements
//! involving `e` are stored as reduced rational functions: coprime numerator
//! and denominator polynomials in `e` over Q(i), denominator monic. Reduction
//! plus a demotion rule (a rational function that is actually constant is
//! stored as a plain Gaussian rational) makes stored forms canonical, so
//! structural equality is semantic equality and zero tests are exact.
//!
//! The transcendental gives the field honest infinite transcendence-free
//! linear algebra over Q: the powers e, e^2, e^3, ... are Q-linearly
//! independent, which is what the group-exploration examples rely on.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// A Gaussian rational: `re + im·i` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    re: BigRational,
    im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        GaussRat::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn i() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::one())
    }

    pub fn zero() -> Self {
        GaussRat::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::new(BigRational::one(), BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn add(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }

    fn sub(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }

    fn mul(&self, rhs: &GaussRat) -> GaussRat {
        GaussRat::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }

    fn neg(&self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    /// Multiplicative inverse via the conjugate; `None` for zero.
    fn inv(&self) -> Option<GaussRat> {
        let norm = &self.re * &self.re + &self.im * &self.im;
        if norm.is_zero() {
            return None;
        }
        Some(GaussRat::new(&self.re / &norm, -(&self.im / &norm)))
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&self.re.to_string());
        }
        if !self.im.is_zero() {
            let mag = self.im.abs();
            let sign = if self.im.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if self.im.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(sign);
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push('i');
        }
        write!(f, "{out}")
    }
}

/// Dense polynomial in the transcendental `e` over the Gaussian rationals.
/// Invariant: no trailing zero coefficient (the zero polynomial is empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct EpsPoly(Vec<GaussRat>);

impl EpsPoly {
    fn zero() -> Self {
        EpsPoly(Vec::new())
    }

    fn constant(c: GaussRat) -> Self {
        let mut p = EpsPoly(vec![c]);
        p.normalize();
        p
    }

    fn one() -> Self {
        EpsPoly::constant(GaussRat::one())
    }

    fn var() -> Self {
        EpsPoly(vec![GaussRat::zero(), GaussRat::one()])
    }

    fn normalize(&mut self) {
        while self.0.last().map_or(false, GaussRat::is_zero) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    /// Degree; the zero polynomial has none.
    fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    fn lead(&self) -> &GaussRat {
        self.0.last().expect("leading coefficient of zero polynomial")
    }

    fn add(&self, rhs: &EpsPoly) -> EpsPoly {
        let n = self.0.len().max(rhs.0.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.0.get(k);
            let b = rhs.0.get(k);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        let mut p = EpsPoly(out);
        p.normalize();
        p
    }

    fn neg(&self) -> EpsPoly {
        EpsPoly(self.0.iter().map(GaussRat::neg).collect())
    }

    fn mul(&self, rhs: &EpsPoly) -> EpsPoly {
        if self.is_zero() || rhs.is_zero() {
            return EpsPoly::zero();
        }
        let mut out = vec![GaussRat::zero(); self.0.len() + rhs.0.len() - 1];
        for (j, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (k, b) in rhs.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[j + k] = out[j + k].add(&a.mul(b));
            }
        }
        let mut p = EpsPoly(out);
        p.normalize();
        p
    }

    fn scale(&self, c: &GaussRat) -> EpsPoly {
        if c.is_zero() {
            return EpsPoly::zero();
        }
        EpsPoly(self.0.iter().map(|a| a.mul(c)).collect())
    }

    /// Division with remainder by a nonzero polynomial (coefficients form a field).
    fn divrem(&self, rhs: &EpsPoly) -> (EpsPoly, EpsPoly) {
        assert!(!rhs.is_zero(), "polynomial division by zero");
        let d = rhs.degree().unwrap();
        let lead_inv = rhs.lead().inv().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![GaussRat::zero(); self.0.len().saturating_sub(d)];
        while let Some(rd) = rem.degree() {
            if rd < d {
                break;
            }
            let c = rem.lead().mul(&lead_inv);
            let shift = rd - d;
            for (k, b) in rhs.0.iter().enumerate() {
                rem.0[k + shift] = rem.0[k + shift].sub(&c.mul(b));
            }
            quo[shift] = c;
            rem.normalize();
        }
        let mut q = EpsPoly(quo);
        q.normalize();
        (q, rem)
    }

    /// Monic gcd by the Euclidean algorithm.
    fn gcd(&self, rhs: &EpsPoly) -> EpsPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.into_monic()
    }

    fn into_monic(self) -> EpsPoly {
        if self.is_zero() || self.lead().is_one() {
            return self;
        }
        let inv = self.lead().inv().unwrap();
        self.scale(&inv)
    }

    /// Renders one term `c·e^k`, with the coefficient parenthesized when it
    /// would not reparse as a single factor.
    fn term_string(c: &GaussRat, k: usize) -> String {
        if k == 0 {
            return c.to_string();
        }
        let var = if k == 1 { "e".to_string() } else { format!("e^{k}") };
        if c.is_one() {
            var
        } else if c.neg().is_one() {
            format!("-{var}")
        } else if c.is_real() {
            format!("{c}{var}")
        } else {
            format!("({c}){var}")
        }
    }

    fn term_count(&self) -> usize {
        self.0.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for EpsPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let term = EpsPoly::term_string(c, k);
            if out.is_empty() {
                out = term;
            } else if let Some(stripped) = term.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(&term);
            }
        }
        write!(f, "{out}")
    }
}

/// A reduced rational function in `e`: coprime numerator/denominator,
/// denominator monic. Never actually a constant (those demote to
/// [`Scalar::Rat`]), and never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: EpsPoly,
    den: EpsPoly,
}

/// An element of the coefficient field Q(i)(e), stored canonically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Plain Gaussian rational (the common case).
    Rat(GaussRat),
    /// Genuine rational function in the transcendental `e`.
    Fun(Box<RatFun>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(GaussRat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(GaussRat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(GaussRat::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Rat(GaussRat::from_ratio(num, den))
    }

    pub fn i() -> Self {
        Scalar::Rat(GaussRat::i())
    }

    pub fn from_gauss(g: GaussRat) -> Self {
        Scalar::Rat(g)
    }

    /// The transcendental generator `e`.
    pub fn epsilon() -> Self {
        Scalar::Fun(Box::new(RatFun { num: EpsPoly::var(), den: EpsPoly::one() }))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(g) if g.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(g) if g.is_one())
    }

    /// True when `-self` is one.
    pub fn is_neg_one(&self) -> bool {
        match self {
            Scalar::Rat(g) => g.neg().is_one(),
            Scalar::Fun(_) => false,
        }
    }

    /// Plain Gaussian-rational view, if this scalar does not involve `e`.
    pub fn as_gauss(&self) -> Option<&GaussRat> {
        match self {
            Scalar::Rat(g) => Some(g),
            Scalar::Fun(_) => None,
        }
    }

    fn fun_parts(&self) -> (EpsPoly, EpsPoly) {
        match self {
            Scalar::Rat(g) => (EpsPoly::constant(g.clone()), EpsPoly::one()),
            Scalar::Fun(f) => (f.num.clone(), f.den.clone()),
        }
    }

    /// Canonical form from a numerator/denominator pair.
    fn reduce(num: EpsPoly, den: EpsPoly) -> Scalar {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.gcd(&den);
        let (num, r1) = num.divrem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.divrem(&g);
        debug_assert!(r2.is_zero());
        // Make the denominator monic, folding the leading coefficient into the numerator.
        let lead_inv = den.lead().inv().unwrap();
        let num = num.scale(&lead_inv);
        let den = den.scale(&lead_inv);
        if den.is_one() && num.degree() == Some(0) {
            return Scalar::Rat(num.0.into_iter().next().unwrap());
        }
        Scalar::Fun(Box::new(RatFun { num, den }))
    }

    pub fn add_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.add(b)),
            _ => {
                let (an, ad) = self.fun_parts();
                let (bn, bd) = rhs.fun_parts();
                Scalar::reduce(an.mul(&bd).add(&bn.mul(&ad)), ad.mul(&bd))
            }
        }
    }

    pub fn sub_ref(&self, rhs: &Scalar) -> Scalar {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.mul(b)),
            _ => {
                if self.is_zero() || rhs.is_zero() {
                    return Scalar::zero();
                }
                let (an, ad) = self.fun_parts();
                let (bn, bd) = rhs.fun_parts();
                Scalar::reduce(an.mul(&bn), ad.mul(&bd))
            }
        }
    }

    pub fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rat(g) => Scalar::Rat(g.neg()),
            Scalar::Fun(f) => Scalar::Fun(Box::new(RatFun { num: f.num.neg(), den: f.den.clone() })),
        }
    }

    /// Multiplicative inverse; division by zero is an explicit error.
    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rat(g) => g.inv().map(Scalar::Rat).ok_or(Error::DivisionByZero),
            Scalar::Fun(f) => Ok(Scalar::reduce(f.den.clone(), f.num.clone())),
        }
    }

    pub fn div_ref(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self.mul_ref(&rhs.inv()?))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, n: i64) -> Result<Scalar> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut out = Scalar::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                out = out.mul_ref(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_ref(&base);
            }
        }
        Ok(out)
    }

    /// True when this scalar, used as a coefficient in front of a monomial,
    /// must be parenthesized to reparse as a single factor.
    pub fn needs_parens(&self) -> bool {
        match self {
            Scalar::Rat(g) => !g.is_real(),
            Scalar::Fun(f) => f.num.term_count() > 1 || !f.den.is_one() || f.num.degree() == Some(0),
        }
    }

    /// True for rational functions whose leading display term carries a minus
    /// sign (used for pretty term joining); conservative for `e`-scalars.
    pub fn display_starts_negative(&self) -> bool {
        match self {
            Scalar::Rat(g) => {
                if !g.re().is_zero() {
                    g.re().is_negative()
                } else {
                    g.im().is_negative()
                }
            }
            Scalar::Fun(_) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(g) => write!(f, "{g}"),
            Scalar::Fun(r) => {
                if r.den.is_one() {
                    write!(f, "{}", r.num)
                } else {
                    let num = if r.num.term_count() > 1 {
                        format!("({})", r.num)
                    } else {
                        r.num.to_string()
                    };
                    let den = if r.den.term_count() > 1 {
                        format!("({})", r.den)
                    } else {
                        r.den.to_string()
                    };
                    write!(f, "{num}/{den}")
                }
            }
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $impl_method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$impl_method(rhs)
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$impl_method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, add_ref);
scalar_binop!(Sub, sub, sub_ref);
scalar_binop!(Mul, mul, mul_ref);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}
