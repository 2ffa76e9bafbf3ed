//! Truncated formal power series in one and two variables.
//!
//! A series carries a truncation order `trunc`: its coefficients are known
//! exactly through total degree `trunc` and unknown beyond. Operations
//! propagate the sharpest honest truncation — e.g. the tail of `f` enters
//! `f·g` only multiplied by `g`, so the product is trustworthy through
//! `min(trunc_f + ord(g), trunc_g + ord(f))`. Nothing is ever reported beyond
//! what the inputs support; order queries that run off the end of the stored
//! data come back as [`OrderResult::AtLeast`] instead of a guess.
//!
//! Zero coefficients are never stored, so the term maps are canonical and
//! structural equality is equality of jets at equal truncation.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;
use crate::{Error, Result};

/// The order (lowest degree with a nonzero coefficient) of a truncated
/// series: either exactly known, or only bounded below by the truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderResult {
    Exact(u32),
    AtLeast(u32),
}

impl OrderResult {
    /// The best lower bound this result certifies.
    pub fn lower_bound(&self) -> u32 {
        match *self {
            OrderResult::Exact(n) => n,
            OrderResult::AtLeast(n) => n,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, OrderResult::Exact(_))
    }

    pub fn exact_value(&self) -> Option<u32> {
        match *self {
            OrderResult::Exact(n) => Some(n),
            OrderResult::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderResult::Exact(n) => write!(f, "{n}"),
            OrderResult::AtLeast(n) => write!(f, ">= {n}"),
        }
    }
}

/// Formal power series in `x`, `y` truncated at total degree `trunc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiSeries {
    coeffs: BTreeMap<(u32, u32), Scalar>,
    trunc: u32,
}

impl BiSeries {
    pub fn zero(trunc: u32) -> Self {
        BiSeries { coeffs: BTreeMap::new(), trunc }
    }

    pub fn constant(c: Scalar, trunc: u32) -> Self {
        let mut s = BiSeries::zero(trunc);
        s.set_coeff(0, 0, c);
        s
    }

    pub fn var_x(trunc: u32) -> Self {
        BiSeries::monomial(1, 0, Scalar::one(), trunc)
    }

    pub fn var_y(trunc: u32) -> Self {
        BiSeries::monomial(0, 1, Scalar::one(), trunc)
    }

    pub fn monomial(i: u32, j: u32, c: Scalar, trunc: u32) -> Self {
        let mut s = BiSeries::zero(trunc);
        s.set_coeff(i, j, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Scalar)>>(terms: I, trunc: u32) -> Self {
        let mut s = BiSeries::zero(trunc);
        for ((i, j), c) in terms {
            let cur = s.coeff(i, j).add_ref(&c);
            s.set_coeff(i, j, cur);
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Stored nonzero terms in key order.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.coeffs.iter()
    }

    fn set_coeff(&mut self, i: u32, j: u32, c: Scalar) {
        if i + j > self.trunc || c.is_zero() {
            self.coeffs.remove(&(i, j));
        } else {
            self.coeffs.insert((i, j), c);
        }
    }

    /// Lower the truncation to `t`, dropping terms beyond it.
    pub fn truncate_to(&self, t: u32) -> BiSeries {
        let t = t.min(self.trunc);
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| i + j <= t)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        BiSeries { coeffs, trunc: t }
    }

    /// Zero all terms of total degree > k, keeping the truncation.
    pub fn jet(&self, k: u32) -> BiSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|((i, j), _)| i + j <= k)
            .map(|(key, v)| (*key, v.clone()))
            .collect();
        BiSeries { coeffs, trunc: self.trunc }
    }

    /// Jets at level `k` agree (ignores the truncation fields; requires both
    /// to actually know their coefficients through degree `k`).
    pub fn eq_through(&self, other: &BiSeries, k: u32) -> bool {
        debug_assert!(k <= self.trunc && k <= other.trunc);
        let a = self.coeffs.iter().filter(|((i, j), _)| i + j <= k);
        let b = other.coeffs.iter().filter(|((i, j), _)| i + j <= k);
        a.eq(b)
    }

    pub fn order(&self) -> OrderResult {
        match self.coeffs.keys().map(|(i, j)| i + j).min() {
            Some(n) => OrderResult::Exact(n),
            None => OrderResult::AtLeast(self.trunc + 1),
        }
    }

    /// Certified lower bound on the order, used for truncation bookkeeping.
    fn ord_lb(&self) -> u32 {
        self.order().lower_bound()
    }

    pub fn add_ref(&self, rhs: &BiSeries) -> BiSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = BiSeries::zero(trunc);
        for (&(i, j), c) in &self.coeffs {
            if i + j <= trunc {
                out.set_coeff(i, j, c.clone());
            }
        }
        for (&(i, j), c) in &rhs.coeffs {
            if i + j <= trunc {
                let cur = out.coeff(i, j).add_ref(c);
                out.set_coeff(i, j, cur);
            }
        }
        out
    }

    pub fn neg_ref(&self) -> BiSeries {
        BiSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.neg_ref())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub_ref(&self, rhs: &BiSeries) -> BiSeries {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn scale(&self, c: &Scalar) -> BiSeries {
        if c.is_zero() {
            return BiSeries::zero(self.trunc);
        }
        BiSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul_ref(&self, rhs: &BiSeries) -> BiSeries {
        // The unknown tail of each factor enters the product multiplied by
        // the other factor, so validity extends to min(F + ord g, G + ord f).
        let trunc = (self.trunc + rhs.ord_lb()).min(rhs.trunc + self.ord_lb());
        let mut out = BiSeries::zero(trunc);
        for (&(a, b), ca) in &self.coeffs {
            for (&(c, d), cb) in &rhs.coeffs {
                let (i, j) = (a + c, b + d);
                if i + j > trunc {
                    continue;
                }
                let cur = out.coeff(i, j).add_ref(&ca.mul_ref(cb));
                out.set_coeff(i, j, cur);
            }
        }
        out
    }

    pub fn partial_x(&self) -> BiSeries {
        let trunc = self.trunc.saturating_sub(1);
        let mut out = BiSeries::zero(trunc);
        for (&(i, j), c) in &self.coeffs {
            if i >= 1 {
                let cur = out.coeff(i - 1, j).add_ref(&c.mul_ref(&Scalar::from_int(i as i64)));
                out.set_coeff(i - 1, j, cur);
            }
        }
        out
    }

    pub fn partial_y(&self) -> BiSeries {
        let trunc = self.trunc.saturating_sub(1);
        let mut out = BiSeries::zero(trunc);
        for (&(i, j), c) in &self.coeffs {
            if j >= 1 {
                let cur = out.coeff(i, j - 1).add_ref(&c.mul_ref(&Scalar::from_int(j as i64)));
                out.set_coeff(i, j - 1, cur);
            }
        }
        out
    }

    /// Multiplicative inverse of a unit (nonzero constant term), degree by degree.
    pub fn reciprocal(&self) -> Result<BiSeries> {
        let c0 = self.coeff(0, 0);
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.inv()?;
        let trunc = self.trunc;
        let mut out = BiSeries::zero(trunc);
        out.set_coeff(0, 0, c0_inv.clone());
        for d in 1..=trunc {
            for i in (0..=d).rev() {
                let j = d - i;
                // coefficient of x^i y^j in f·g must vanish:
                //   c0·g[i,j] = -sum over f-terms of positive degree.
                let mut acc = Scalar::zero();
                for (&(a, b), fc) in &self.coeffs {
                    if a + b == 0 || a > i || b > j {
                        continue;
                    }
                    let g = out.coeff(i - a, j - b);
                    if !g.is_zero() {
                        acc = acc.add_ref(&fc.mul_ref(&g));
                    }
                }
                if !acc.is_zero() {
                    out.set_coeff(i, j, acc.mul_ref(&c0_inv).neg_ref());
                }
            }
        }
        Ok(out)
    }

    /// Exact division by `x`; every stored term must be divisible.
    pub fn div_x(&self) -> Result<BiSeries> {
        let trunc = self.trunc.saturating_sub(1);
        let mut out = BiSeries::zero(trunc);
        for (&(i, j), c) in &self.coeffs {
            if i == 0 {
                return Err(Error::Internal("division by x of a term without x".into()));
            }
            out.set_coeff(i - 1, j, c.clone());
        }
        Ok(out)
    }

    /// Evaluate along a parametrized arc: `f(xt(t), yt(t))`.
    ///
    /// Both components must vanish at the origin. The output truncation is
    /// the conservative `min(input truncations, trunc·min-order)`.
    pub fn substitute(&self, xt: &UniSeries, yt: &UniSeries) -> Result<UniSeries> {
        if !xt.coeff(0).is_zero() || !yt.coeff(0).is_zero() {
            return Err(Error::ConstantTermInSubstitution);
        }
        let nt = xt.trunc.min(yt.trunc);
        let a = xt.ord_lb().min(yt.ord_lb());
        let out_trunc = nt.min(self.trunc.saturating_mul(a));
        let mut out = UniSeries::zero(out_trunc);
        let mut x_pows: Vec<UniSeries> = vec![UniSeries::one_capped(out_trunc)];
        let mut y_pows: Vec<UniSeries> = vec![UniSeries::one_capped(out_trunc)];
        for (&(i, j), c) in &self.coeffs {
            while x_pows.len() <= i as usize {
                let next = x_pows.last().unwrap().mul_capped(xt, out_trunc);
                x_pows.push(next);
            }
            while y_pows.len() <= j as usize {
                let next = y_pows.last().unwrap().mul_capped(yt, out_trunc);
                y_pows.push(next);
            }
            let term = x_pows[i as usize].mul_capped(&y_pows[j as usize], out_trunc);
            out = out.add_ref(&term.scale(c));
        }
        out.trunc = out_trunc;
        Ok(out)
    }

    /// Substitute series for both variables: `f(u, v)` with `u, v` vanishing
    /// at the origin. Result is valid modulo degree `min(truncations) + 1`.
    pub fn compose(&self, u: &BiSeries, v: &BiSeries) -> Result<BiSeries> {
        if !u.coeff(0, 0).is_zero() || !v.coeff(0, 0).is_zero() {
            return Err(Error::ConstantTermInSubstitution);
        }
        let out_trunc = self.trunc.min(u.trunc).min(v.trunc);
        let mut out = BiSeries::zero(out_trunc);
        let mut u_pows: Vec<BiSeries> = vec![BiSeries::constant(Scalar::one(), out_trunc)];
        let mut v_pows: Vec<BiSeries> = vec![BiSeries::constant(Scalar::one(), out_trunc)];
        for (&(i, j), c) in &self.coeffs {
            // Terms of degree beyond the cap cannot contribute: ord(u), ord(v) >= 1.
            if i + j > out_trunc {
                continue;
            }
            while u_pows.len() <= i as usize {
                let next = u_pows.last().unwrap().mul_capped(u, out_trunc);
                u_pows.push(next);
            }
            while v_pows.len() <= j as usize {
                let next = v_pows.last().unwrap().mul_capped(v, out_trunc);
                v_pows.push(next);
            }
            let term = u_pows[i as usize].mul_capped(&v_pows[j as usize], out_trunc);
            out = out.add_ref(&term.scale(c));
        }
        out.trunc = out_trunc;
        Ok(out)
    }

    /// Multiplication with an explicit degree cap (used by power tables,
    /// where the caller already knows the validity bound).
    fn mul_capped(&self, rhs: &BiSeries, cap: u32) -> BiSeries {
        let mut out = BiSeries::zero(cap);
        for (&(a, b), ca) in &self.coeffs {
            if a + b > cap {
                continue;
            }
            for (&(c, d), cb) in &rhs.coeffs {
                let (i, j) = (a + c, b + d);
                if i + j > cap {
                    continue;
                }
                let cur = out.coeff(i, j).add_ref(&ca.mul_ref(cb));
                out.set_coeff(i, j, cur);
            }
        }
        out
    }
}

impl fmt::Display for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| ((i + j, j), monomial_string(&[("x", i), ("y", j)]), c));
        write!(f, "{}", render_terms(items))
    }
}

/// Formal power series in `t` truncated at degree `trunc`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniSeries {
    coeffs: BTreeMap<u32, Scalar>,
    trunc: u32,
}

impl UniSeries {
    pub fn zero(trunc: u32) -> Self {
        UniSeries { coeffs: BTreeMap::new(), trunc }
    }

    fn one_capped(trunc: u32) -> Self {
        UniSeries::monomial(0, Scalar::one(), trunc)
    }

    pub fn var_t(trunc: u32) -> Self {
        UniSeries::monomial(1, Scalar::one(), trunc)
    }

    pub fn monomial(k: u32, c: Scalar, trunc: u32) -> Self {
        let mut s = UniSeries::zero(trunc);
        s.set_coeff(k, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, Scalar)>>(terms: I, trunc: u32) -> Self {
        let mut s = UniSeries::zero(trunc);
        for (k, c) in terms {
            let cur = s.coeff(k).add_ref(&c);
            s.set_coeff(k, cur);
        }
        s
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: u32) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &Scalar)> {
        self.coeffs.iter()
    }

    fn set_coeff(&mut self, k: u32, c: Scalar) {
        if k > self.trunc || c.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, c);
        }
    }

    pub fn truncate_to(&self, t: u32) -> UniSeries {
        let t = t.min(self.trunc);
        let coeffs = self.coeffs.iter().filter(|(&k, _)| k <= t).map(|(k, v)| (*k, v.clone())).collect();
        UniSeries { coeffs, trunc: t }
    }

    pub fn order(&self) -> OrderResult {
        match self.coeffs.keys().min() {
            Some(&n) => OrderResult::Exact(n),
            None => OrderResult::AtLeast(self.trunc + 1),
        }
    }

    pub fn ord_lb(&self) -> u32 {
        self.order().lower_bound()
    }

    /// Coefficients agree through degree `k` (ignores the truncation fields;
    /// requires both to actually know their coefficients through `k`).
    pub fn eq_through(&self, other: &UniSeries, k: u32) -> bool {
        debug_assert!(k <= self.trunc && k <= other.trunc);
        let a = self.coeffs.iter().filter(|(&d, _)| d <= k);
        let b = other.coeffs.iter().filter(|(&d, _)| d <= k);
        a.eq(b)
    }

    pub fn add_ref(&self, rhs: &UniSeries) -> UniSeries {
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = UniSeries::zero(trunc);
        for (&k, c) in &self.coeffs {
            if k <= trunc {
                out.set_coeff(k, c.clone());
            }
        }
        for (&k, c) in &rhs.coeffs {
            if k <= trunc {
                let cur = out.coeff(k).add_ref(c);
                out.set_coeff(k, cur);
            }
        }
        out
    }

    pub fn neg_ref(&self) -> UniSeries {
        UniSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.neg_ref())).collect(),
            trunc: self.trunc,
        }
    }

    pub fn sub_ref(&self, rhs: &UniSeries) -> UniSeries {
        self.add_ref(&rhs.neg_ref())
    }

    pub fn scale(&self, c: &Scalar) -> UniSeries {
        if c.is_zero() {
            return UniSeries::zero(self.trunc);
        }
        UniSeries {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v.mul_ref(c))).collect(),
            trunc: self.trunc,
        }
    }

    pub fn mul_ref(&self, rhs: &UniSeries) -> UniSeries {
        let trunc = (self.trunc + rhs.ord_lb()).min(rhs.trunc + self.ord_lb());
        self.mul_capped(rhs, trunc)
    }

    fn mul_capped(&self, rhs: &UniSeries, cap: u32) -> UniSeries {
        let mut out = UniSeries::zero(cap);
        for (&a, ca) in &self.coeffs {
            if a > cap {
                continue;
            }
            for (&b, cb) in &rhs.coeffs {
                if a + b > cap {
                    continue;
                }
                let cur = out.coeff(a + b).add_ref(&ca.mul_ref(cb));
                out.set_coeff(a + b, cur);
            }
        }
        out
    }

    pub fn derivative(&self) -> UniSeries {
        let trunc = self.trunc.saturating_sub(1);
        let mut out = UniSeries::zero(trunc);
        for (&k, c) in &self.coeffs {
            if k >= 1 {
                out.set_coeff(k - 1, c.mul_ref(&Scalar::from_int(k as i64)));
            }
        }
        out
    }

    /// Exact division by `t^k`; all stored exponents must be at least `k`.
    pub fn shift_down(&self, k: u32) -> Result<UniSeries> {
        let trunc = self.trunc.checked_sub(k).ok_or_else(|| {
            Error::InsufficientTruncation {
                trunc: self.trunc,
                needed: format!("division by t^{k}"),
            }
        })?;
        let mut out = UniSeries::zero(trunc);
        for (&e, c) in &self.coeffs {
            if e < k {
                return Err(Error::Internal(format!("division by t^{k} of a term t^{e}")));
            }
            out.set_coeff(e - k, c.clone());
        }
        Ok(out)
    }

    /// Multiplicative inverse of a unit, degree by degree.
    pub fn reciprocal(&self) -> Result<UniSeries> {
        let a0 = self.coeff(0);
        if a0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let a0_inv = a0.inv()?;
        let mut out = UniSeries::zero(self.trunc);
        out.set_coeff(0, a0_inv.clone());
        for n in 1..=self.trunc {
            let mut acc = Scalar::zero();
            for (&k, a) in self.coeffs.range(1..=n) {
                let c = out.coeff(n - k);
                if !c.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(&c));
                }
            }
            if !acc.is_zero() {
                out.set_coeff(n, acc.mul_ref(&a0_inv).neg_ref());
            }
        }
        Ok(out)
    }

    /// Dense coefficient vector `[c_0, ..., c_deg]` of the stored polynomial
    /// data (empty for the zero series).
    pub fn poly_coeffs(&self) -> Vec<Scalar> {
        match self.coeffs.keys().max() {
            None => Vec::new(),
            Some(&deg) => {
                let mut v = vec![Scalar::zero(); deg as usize + 1];
                for (&k, c) in &self.coeffs {
                    v[k as usize] = c.clone();
                }
                v
            }
        }
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self
            .coeffs
            .iter()
            .map(|(&k, c)| ((k, 0), monomial_string(&[("t", k)]), c));
        write!(f, "{}", render_terms(items))
    }
}

fn monomial_string(vars: &[(&str, u32)]) -> String {
    let mut parts = Vec::new();
    for &(name, e) in vars {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Renders (grade, monomial, coefficient) terms in graded order as
/// re-parseable text.
fn render_terms<'a, I>(terms: I) -> String
where
    I: Iterator<Item = ((u32, u32), String, &'a Scalar)>,
{
    let mut items: Vec<_> = terms.collect();
    items.sort_by(|a, b| a.0.cmp(&b.0));
    if items.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (_, mono, c) in items {
        let term = if mono.is_empty() {
            c.to_string()
        } else if c.is_one() {
            mono
        } else if c.is_neg_one() {
            format!("-{mono}")
        } else if c.needs_parens() {
            format!("({c})*{mono}")
        } else {
            format!("{c}*{mono}")
        };
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
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn product_of_sum_and_difference() {
        let n = 8;
        let x = BiSeries::var_x(n);
        let y = BiSeries::var_y(n);
        let p = x.add_ref(&y).mul_ref(&x.sub_ref(&y));
        let expected = BiSeries::from_terms([((2, 0), s(1)), ((0, 2), s(-1))], p.trunc());
        assert_eq!(p, expected);
    }

    #[test]
    fn reciprocal_of_one_plus_x() {
        let f = BiSeries::from_terms([((0, 0), s(1)), ((1, 0), s(1))], 3);
        let r = f.reciprocal().unwrap();
        let expected = BiSeries::from_terms(
            [((0, 0), s(1)), ((1, 0), s(-1)), ((2, 0), s(1)), ((3, 0), s(-1))],
            3,
        );
        assert_eq!(r, expected);
        // f · (1/f) = 1 through the truncation.
        let prod = f.mul_ref(&r);
        assert!(prod.eq_through(&BiSeries::constant(s(1), 3), 3));
    }

    #[test]
    fn order_of_zero_series_is_a_lower_bound() {
        let z = BiSeries::zero(24);
        assert_eq!(z.order(), OrderResult::AtLeast(25));
        let f = BiSeries::from_terms([((2, 0), s(1)), ((1, 1), s(3))], 10);
        assert_eq!(f.order(), OrderResult::Exact(2));
    }

    #[test]
    fn truncation_combines_with_order_refinement() {
        // Units: plain min.
        let u = BiSeries::from_terms([((0, 0), s(1)), ((1, 0), s(1))], 4);
        let v = BiSeries::from_terms([((0, 0), s(1)), ((0, 1), s(2))], 6);
        assert_eq!(u.mul_ref(&v).trunc(), 4);
        // Positive order sharpens the bound: x@4 · x@6 is valid through 5.
        let a = BiSeries::var_x(4);
        let b = BiSeries::var_x(6);
        assert_eq!(a.mul_ref(&b).trunc(), 5);
    }

    #[test]
    fn substitute_cusp_into_its_equation() {
        let n = 24;
        // y^2 - x^3 vanishes identically along (t^2, t^3).
        let f = BiSeries::from_terms([((0, 2), s(1)), ((3, 0), s(-1))], n);
        let xt = UniSeries::monomial(2, s(1), n);
        let yt = UniSeries::monomial(3, s(1), n);
        let g = f.substitute(&xt, &yt).unwrap();
        assert!(g.is_zero());
        assert_eq!(g.order(), OrderResult::AtLeast(25));
        // y alone pulls back to t^3.
        let y = BiSeries::var_y(n);
        let h = y.substitute(&xt, &yt).unwrap();
        assert_eq!(h.order(), OrderResult::Exact(3));
        assert_eq!(h.coeff(3), s(1));
    }

    #[test]
    fn substitute_requires_vanishing_components() {
        let f = BiSeries::var_x(6);
        let bad = UniSeries::from_terms([(0, s(1)), (1, s(1))], 6);
        let good = UniSeries::var_t(6);
        assert_eq!(f.substitute(&bad, &good), Err(Error::ConstantTermInSubstitution));
    }

    #[test]
    fn compose_respects_jets() {
        // compose(jet_k f, u, v) == compose(f, u, v) mod degree k.
        let n = 8;
        let f = BiSeries::from_terms(
            [((1, 0), s(2)), ((0, 1), s(1)), ((2, 0), s(1)), ((1, 2), s(-3)), ((4, 0), s(5))],
            n,
        );
        let u = BiSeries::from_terms([((1, 0), s(1)), ((0, 2), s(1))], n);
        let v = BiSeries::from_terms([((0, 1), s(1)), ((1, 1), s(-2))], n);
        let full = f.compose(&u, &v).unwrap();
        for k in 1..=4 {
            let jetted = f.jet(k).compose(&u, &v).unwrap();
            assert!(jetted.jet(k).eq_through(&full.jet(k), k), "k={k}");
        }
    }

    #[test]
    fn partial_derivatives() {
        let f = BiSeries::from_terms([((2, 1), s(1)), ((0, 3), s(2))], 6);
        let fx = f.partial_x();
        assert_eq!(fx.coeff(1, 1), s(2));
        assert_eq!(fx.trunc(), 5);
        let fy = f.partial_y();
        assert_eq!(fy.coeff(2, 0), s(1));
        assert_eq!(fy.coeff(0, 2), s(6));
    }

    #[test]
    fn uniseries_division_and_reciprocal() {
        let n = 10;
        // (t^2 + t^3) / t^2 = 1 + t with truncation lowered by 2.
        let f = UniSeries::from_terms([(2, s(1)), (3, s(1))], n);
        let g = f.shift_down(2).unwrap();
        assert_eq!(g.trunc(), n - 2);
        assert_eq!(g.coeff(0), s(1));
        assert_eq!(g.coeff(1), s(1));
        let r = g.reciprocal().unwrap();
        let prod = g.mul_ref(&r);
        assert_eq!(prod.coeff(0), s(1));
        for k in 1..=n - 2 {
            assert_eq!(prod.coeff(k), s(0), "k={k}");
        }
    }

    #[test]
    fn display_roundtrip_shapes() {
        let f = BiSeries::from_terms(
            [((0, 2), s(1)), ((3, 0), s(-1)), ((1, 1), Scalar::from_ratio(1, 2))],
            16,
        );
        assert_eq!(f.to_string(), "1/2*x*y + y^2 - x^3");
        let g = UniSeries::from_terms([(1, s(1)), (3, s(-2))], 8);
        assert_eq!(g.to_string(), "t - 2*t^3");
        assert_eq!(BiSeries::zero(4).to_string(), "0");
    }
}
