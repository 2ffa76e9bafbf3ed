//! Formal irreducible plane curves given by primitive parametrizations.
//!
//! A curve enters the system as a pair (x(t), y(t)) of series vanishing at
//! t = 0, not both zero, and primitive: the exponents appearing have gcd 1,
//! so the parameter is not a power of a finer one. Primitivity guarantees the
//! parametrized germ is irreducible. The implicit equation is recovered by a
//! resultant (computed exactly, by evaluation and interpolation), which in
//! turn gives the order-based intersection number of two curves: the
//! vanishing order of one curve's equation along the other's parametrization.

use std::fmt;

use crate::blowup;
use crate::diffeo::FormalDiffeo;
use crate::scalar::Scalar;
use crate::series::{BiSeries, OrderResult, UniSeries};
use crate::{Error, Result};

/// A tangent direction at the origin, stored as the line {ax + by = 0} in
/// canonical form: the first nonzero coefficient equals 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TangentDirection {
    a: Scalar,
    b: Scalar,
}

impl TangentDirection {
    /// Line {ax + by = 0}; coefficients must not both vanish.
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::Internal("tangent line needs a nonzero coefficient".into()));
        }
        let lead = if a.is_zero() { &b } else { &a };
        let inv = lead.inv()?;
        Ok(TangentDirection { a: a.mul_ref(&inv), b: b.mul_ref(&inv) })
    }

    /// Line through the origin with direction vector (u, v).
    pub fn from_tangent_vector(u: &Scalar, v: &Scalar) -> Result<Self> {
        TangentDirection::new(v.clone(), u.neg_ref())
    }

    pub fn coeff_x(&self) -> &Scalar {
        &self.a
    }

    pub fn coeff_y(&self) -> &Scalar {
        &self.b
    }

    /// Whether this is the line {x = 0}.
    pub fn is_vertical(&self) -> bool {
        self.b.is_zero()
    }

    /// A direction vector (u, v) spanning the line.
    pub fn direction_vector(&self) -> (Scalar, Scalar) {
        (self.b.clone(), self.a.neg_ref())
    }
}

impl fmt::Display for TangentDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let term = |c: &Scalar, var: &str| -> Option<String> {
            if c.is_zero() {
                None
            } else if c.is_one() {
                Some(var.to_string())
            } else if c.needs_parens() {
                Some(format!("({c}){var}"))
            } else {
                Some(format!("{c}{var}"))
            }
        };
        let parts: Vec<String> =
            [term(&self.a, "x"), term(&self.b, "y")].into_iter().flatten().collect();
        write!(f, "{} = 0", parts.join(" + "))
    }
}

/// A primitive parametrization (x(t), y(t)) of an irreducible curve germ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CurveParam {
    xt: UniSeries,
    yt: UniSeries,
}

impl CurveParam {
    /// Validate and build: components vanish at t = 0, are not both zero,
    /// and the exponents present have gcd 1.
    pub fn new(xt: UniSeries, yt: UniSeries) -> Result<Self> {
        if !xt.coeff(0).is_zero() || !yt.coeff(0).is_zero() {
            return Err(Error::ConstantTermInCurve);
        }
        if xt.is_zero() && yt.is_zero() {
            return Err(Error::ZeroCurve);
        }
        let mut g: u32 = 0;
        for (&k, _) in xt.terms().chain(yt.terms()) {
            g = gcd(g, k);
        }
        if g > 1 {
            return Err(Error::NotPrimitive { gcd: g });
        }
        Ok(Self::from_components_unchecked(xt, yt))
    }

    /// Internal constructor for images of valid curves (strict transforms,
    /// diffeomorphism actions), where primitivity is preserved by the
    /// operation but may not be visible in truncated data.
    pub(crate) fn from_components_unchecked(xt: UniSeries, yt: UniSeries) -> Self {
        let t = xt.trunc().min(yt.trunc());
        CurveParam { xt: xt.truncate_to(t), yt: yt.truncate_to(t) }
    }

    pub fn comp_x(&self) -> &UniSeries {
        &self.xt
    }

    pub fn comp_y(&self) -> &UniSeries {
        &self.yt
    }

    pub fn trunc(&self) -> u32 {
        self.xt.trunc()
    }

    /// Multiplicity at the origin: min of the component orders.
    pub fn multiplicity(&self) -> OrderResult {
        match (self.xt.order(), self.yt.order()) {
            (OrderResult::Exact(a), OrderResult::Exact(b)) => OrderResult::Exact(a.min(b)),
            (OrderResult::Exact(a), OrderResult::AtLeast(b))
            | (OrderResult::AtLeast(b), OrderResult::Exact(a)) => {
                if a <= b {
                    OrderResult::Exact(a)
                } else {
                    OrderResult::AtLeast(b)
                }
            }
            (OrderResult::AtLeast(a), OrderResult::AtLeast(b)) => OrderResult::AtLeast(a.min(b)),
        }
    }

    /// Multiplicity as a number (exact for every valid curve in range).
    pub fn multiplicity_value(&self) -> u32 {
        self.multiplicity().lower_bound()
    }

    /// Tangent direction: the line spanned by the lowest-order coefficient
    /// vector of the parametrization.
    pub fn tangent_direction(&self) -> TangentDirection {
        let m = self.multiplicity_value();
        let u = self.xt.coeff(m);
        let v = self.yt.coeff(m);
        TangentDirection::from_tangent_vector(&u, &v)
            .expect("valid curve has a nonzero lowest-order coefficient vector")
    }

    /// Image under a diffeomorphism: φ evaluated along the parametrization.
    pub fn act(&self, phi: &FormalDiffeo) -> Result<CurveParam> {
        let u = phi.comp_x().substitute(&self.xt, &self.yt)?;
        let v = phi.comp_y().substitute(&self.xt, &self.yt)?;
        Ok(CurveParam::from_components_unchecked(u, v))
    }

    /// Whether the first `depth` infinitely near points of the two curves
    /// coincide (exact comparison; errors when truncation cannot certify).
    pub fn equal_up_to(&self, other: &CurveParam, depth: u32) -> Result<bool> {
        Ok(blowup::shared_prefix(self, other, depth)? == depth)
    }
}

impl fmt::Display for CurveParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.xt, self.yt)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Degree of a dense coefficient vector, ignoring trailing zeros.
fn poly_deg(p: &[Scalar]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of a by b over the scalar field; b must be nonzero.
fn poly_rem(mut a: Vec<Scalar>, b: &[Scalar]) -> Result<Vec<Scalar>> {
    let db = poly_deg(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = b[db].inv()?;
    while let Some(da) = poly_deg(&a) {
        if da < db {
            break;
        }
        let factor = a[da].mul_ref(&lead_inv);
        for (k, bc) in b.iter().enumerate().take(db + 1) {
            let idx = da - db + k;
            a[idx] = a[idx].sub_ref(&factor.mul_ref(bc));
        }
        a[da] = Scalar::zero();
    }
    Ok(a)
}

/// Greatest common divisor over the scalar field (up to a unit).
fn poly_gcd(mut a: Vec<Scalar>, mut b: Vec<Scalar>) -> Result<Vec<Scalar>> {
    while poly_deg(&b).is_some() {
        let r = poly_rem(a, &b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

/// Whether the two polynomials share a root other than t = 0.
fn has_nonzero_common_root(a: &[Scalar], b: &[Scalar]) -> Result<bool> {
    let g = poly_gcd(a.to_vec(), b.to_vec())?;
    let Some(deg) = poly_deg(&g) else { return Ok(false) };
    let lowest = g.iter().position(|c| !c.is_zero()).unwrap_or(deg);
    Ok(deg > lowest)
}

/// Resultant of two univariate polynomials over the scalar field, by the
/// Euclidean remainder sequence with leading-coefficient bookkeeping.
fn poly_resultant(a: Vec<Scalar>, b: Vec<Scalar>) -> Result<Scalar> {
    let (mut a, mut b) = (a, b);
    let mut acc = Scalar::one();
    loop {
        let da = match poly_deg(&a) {
            Some(d) => d,
            None => return Ok(Scalar::zero()),
        };
        let db = match poly_deg(&b) {
            Some(d) => d,
            None => return Ok(Scalar::zero()),
        };
        if db == 0 {
            // Res(A, c) = c^{deg A}.
            return Ok(acc.mul_ref(&b[0].pow(da as i64)?));
        }
        if da < db {
            if (da * db) % 2 == 1 {
                acc = acc.neg_ref();
            }
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let r = poly_rem(a, &b)?;
        let dr = poly_deg(&r);
        if (da * db) % 2 == 1 {
            acc = acc.neg_ref();
        }
        let drop = da - dr.map_or(da, |d| d.min(da));
        acc = acc.mul_ref(&b[db].pow(drop as i64)?);
        if dr.is_none() {
            // Common factor of positive degree: resultant vanishes.
            return Ok(Scalar::zero());
        }
        a = b;
        b = r;
    }
}

/// Interpolate values at the integer nodes 0, 1, …, n−1 into monomial
/// coefficients, by Lagrange's formula with exact arithmetic.
fn interpolate_at_integers(values: &[Scalar]) -> Result<Vec<Scalar>> {
    let n = values.len();
    // Master polynomial Π (z − j).
    let mut master = vec![Scalar::one()];
    for j in 0..n {
        let node = Scalar::from_int(j as i64);
        let mut next = vec![Scalar::zero(); master.len() + 1];
        for (k, c) in master.iter().enumerate() {
            next[k + 1] = next[k + 1].add_ref(c);
            next[k] = next[k].sub_ref(&c.mul_ref(&node));
        }
        master = next;
    }
    let mut out = vec![Scalar::zero(); n];
    for (i, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        // Synthetic division of the master polynomial by (z − i).
        let node = Scalar::from_int(i as i64);
        let mut q = vec![Scalar::zero(); n];
        let mut carry = Scalar::zero();
        for k in (0..n).rev() {
            carry = master[k + 1].add_ref(&carry.mul_ref(&node));
            q[k] = carry.clone();
        }
        // q(i) = Π_{j≠i} (i − j), the Lagrange denominator.
        let mut qi = Scalar::zero();
        for k in (0..n).rev() {
            qi = qi.mul_ref(&node).add_ref(&q[k]);
        }
        let w = v.mul_ref(&qi.inv()?);
        for k in 0..n {
            out[k] = out[k].add_ref(&q[k].mul_ref(&w));
        }
    }
    Ok(out)
}

/// Implicit equation of a parametrized curve: the resultant in t of
/// (x − x(t), y − y(t)) with components as stored polynomials, recovered by
/// evaluation on an integer grid and interpolation, normalized so the
/// graded-least term has coefficient 1, and jet-truncated to `degree_bound`.
pub fn implicitize(gamma: &CurveParam, degree_bound: u32) -> Result<BiSeries> {
    let mut xt = gamma.comp_x().poly_coeffs();
    let mut yt = gamma.comp_y().poly_coeffs();
    // The resultant vanishes on the whole affine image of the polynomial
    // parametrization. A nonzero parameter value at which both components
    // vanish would graft a second branch through the origin onto it,
    // inflating orders. Kill such values with a tail term above the
    // truncation, which leaves the germ untouched: first give an identically
    // zero component the tail outright, then adjust x(t) until the
    // components share no nonzero root.
    let probe = gamma.trunc() as usize + 1;
    let tail = |height: i64| {
        let mut v = vec![Scalar::zero(); probe + 1];
        v[probe] = Scalar::from_int(height);
        v
    };
    if poly_deg(&xt).is_none() {
        xt = tail(1);
    }
    if poly_deg(&yt).is_none() {
        yt = tail(1);
    }
    if has_nonzero_common_root(&xt, &yt)? {
        let mut separated = false;
        for height in 1..=64 {
            let mut cand = xt.clone();
            cand.resize(cand.len().max(probe + 1), Scalar::zero());
            cand[probe] = Scalar::from_int(height);
            if !has_nonzero_common_root(&cand, &yt)? {
                xt = cand;
                separated = true;
                break;
            }
        }
        if !separated {
            return Err(Error::Internal(
                "failed to separate shared parameter roots of a curve".into(),
            ));
        }
    }
    // deg_x f ≤ deg_t y(t), deg_y f ≤ deg_t x(t).
    let dx_bound = poly_deg(&yt).unwrap_or(0);
    let dy_bound = poly_deg(&xt).unwrap_or(0);

    // Values of the resultant on the grid {0..dx_bound} × {0..dy_bound}.
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(dy_bound + 1);
    for y0 in 0..=dy_bound {
        let mut row = Vec::with_capacity(dx_bound + 1);
        for x0 in 0..=dx_bound {
            let mut p: Vec<Scalar> = xt.iter().map(Scalar::neg_ref).collect();
            if p.is_empty() {
                p.push(Scalar::zero());
            }
            p[0] = p[0].add_ref(&Scalar::from_int(x0 as i64));
            let mut q: Vec<Scalar> = yt.iter().map(Scalar::neg_ref).collect();
            if q.is_empty() {
                q.push(Scalar::zero());
            }
            q[0] = q[0].add_ref(&Scalar::from_int(y0 as i64));
            row.push(poly_resultant(p, q)?);
        }
        rows.push(row);
    }

    // Interpolate along x within each row, then along y per x-power.
    let mut x_coeffs: Vec<Vec<Scalar>> = Vec::with_capacity(rows.len());
    for row in &rows {
        x_coeffs.push(interpolate_at_integers(row)?);
    }
    let mut terms = Vec::new();
    for i in 0..=dx_bound {
        let column: Vec<Scalar> = x_coeffs.iter().map(|r| r[i].clone()).collect();
        for (j, c) in interpolate_at_integers(&column)?.into_iter().enumerate() {
            if !c.is_zero() {
                terms.push(((i as u32, j as u32), c));
            }
        }
    }
    let full = BiSeries::from_terms(terms, degree_bound.max((dx_bound + dy_bound) as u32));
    let f = full.jet(degree_bound).truncate_to(degree_bound);
    let lead = f
        .terms()
        .map(|(&(i, j), c)| ((i + j, i, j), c.clone()))
        .min_by(|(k1, _), (k2, _)| k1.cmp(k2));
    match lead {
        None => Err(Error::InsufficientTruncation {
            trunc: degree_bound,
            needed: "degree bound is below the curve's implicit-equation order".into(),
        }),
        Some((_, c)) => Ok(f.scale(&c.inv()?)),
    }
}

/// Intersection number of two curve germs at the origin, as the vanishing
/// order of one curve's implicit equation along the other's parametrization.
pub fn intersect_order(alpha: &CurveParam, beta: &CurveParam) -> Result<OrderResult> {
    let bound = alpha.trunc().min(beta.trunc());
    let f = implicitize(beta, bound)?;
    let along = f.substitute(alpha.comp_x(), alpha.comp_y())?;
    Ok(along.order())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn curve(xs: &[(u32, i64)], ys: &[(u32, i64)], n: u32) -> CurveParam {
        CurveParam::new(
            UniSeries::from_terms(xs.iter().map(|&(k, c)| (k, s(c))), n),
            UniSeries::from_terms(ys.iter().map(|&(k, c)| (k, s(c))), n),
        )
        .unwrap()
    }

    fn proportional(f: &BiSeries, g: &BiSeries, through: u32) -> bool {
        // f = c·g for some nonzero scalar c, compared through a degree.
        let lead = g.terms().next().map(|(&(i, j), _)| (i, j));
        let Some((i, j)) = lead else { return f.is_zero() };
        let c = f.coeff(i, j);
        if c.is_zero() {
            return false;
        }
        f.eq_through(&g.scale(&c), through)
    }

    #[test]
    fn validation_rules() {
        let n = 8;
        assert_eq!(
            CurveParam::new(UniSeries::zero(n), UniSeries::zero(n)).unwrap_err(),
            Error::ZeroCurve
        );
        assert_eq!(
            CurveParam::new(
                UniSeries::from_terms([(0, s(1)), (1, s(1))], n),
                UniSeries::zero(n)
            )
            .unwrap_err(),
            Error::ConstantTermInCurve
        );
        assert_eq!(
            CurveParam::new(
                UniSeries::monomial(2, s(1), n),
                UniSeries::monomial(4, s(1), n)
            )
            .unwrap_err(),
            Error::NotPrimitive { gcd: 2 }
        );
        // The cusp is primitive: exponents 2 and 3.
        assert!(CurveParam::new(
            UniSeries::monomial(2, s(1), n),
            UniSeries::monomial(3, s(1), n)
        )
        .is_ok());
    }

    #[test]
    fn multiplicity_examples() {
        let n = 10;
        assert_eq!(curve(&[(1, 1)], &[(2, 1)], n).multiplicity(), OrderResult::Exact(1));
        assert_eq!(curve(&[(2, 1)], &[(3, 1)], n).multiplicity(), OrderResult::Exact(2));
        assert_eq!(curve(&[(3, 1)], &[(5, 1)], n).multiplicity(), OrderResult::Exact(3));
    }

    #[test]
    fn tangent_examples() {
        let n = 8;
        // (t, t²) and the cusp are tangent to {y = 0}.
        let horizontal = curve(&[(1, 1)], &[(2, 1)], n).tangent_direction();
        assert!(horizontal.coeff_x().is_zero());
        assert!(horizontal.coeff_y().is_one());
        assert_eq!(horizontal.to_string(), "y = 0");
        let cusp = curve(&[(2, 1)], &[(3, 1)], n).tangent_direction();
        assert_eq!(cusp, horizontal);
        // (t, −t) is tangent to {x + y = 0}.
        let diag = curve(&[(1, 1)], &[(1, -1)], n).tangent_direction();
        assert!(diag.coeff_x().is_one());
        assert!(diag.coeff_y().is_one());
        assert_eq!(diag.to_string(), "x + y = 0");
        // (0, t) is the vertical axis.
        let vertical = curve(&[], &[(1, 1)], n).tangent_direction();
        assert!(vertical.is_vertical());
    }

    #[test]
    fn implicit_equations() {
        let n = 10;
        let parabola = curve(&[(1, 1)], &[(2, 1)], n);
        let f = implicitize(&parabola, 8).unwrap();
        let want = BiSeries::from_terms([((0, 1), s(1)), ((2, 0), s(-1))], 8);
        assert!(proportional(&f, &want, 8));

        let cusp = curve(&[(2, 1)], &[(3, 1)], n);
        let g = implicitize(&cusp, 8).unwrap();
        let want = BiSeries::from_terms([((0, 2), s(1)), ((3, 0), s(-1))], 8);
        assert!(proportional(&g, &want, 8));
        assert_eq!(g.order(), OrderResult::Exact(2));

        let line = curve(&[(1, 1)], &[], n);
        let h = implicitize(&line, 8).unwrap();
        assert!(proportional(&h, &BiSeries::var_y(8), 8));
    }

    #[test]
    fn implicit_equation_vanishes_on_curve() {
        let n = 12;
        for gamma in [
            curve(&[(2, 1)], &[(3, 1), (4, -2)], n),
            curve(&[(1, 2), (3, 1)], &[(2, 1)], n),
            curve(&[(3, 1)], &[(4, 1), (5, 1)], n),
        ] {
            let f = implicitize(&gamma, n).unwrap();
            let along = f.substitute(gamma.comp_x(), gamma.comp_y()).unwrap();
            assert!(along.is_zero(), "implicit equation fails to vanish on {gamma}");
            assert_eq!(
                f.order().lower_bound(),
                gamma.multiplicity_value(),
                "order of the equation is the multiplicity for {gamma}"
            );
        }
    }

    #[test]
    fn implicitize_rejects_tiny_degree_bound() {
        let n = 8;
        let cusp = curve(&[(2, 1)], &[(3, 1)], n);
        assert!(matches!(
            implicitize(&cusp, 1),
            Err(Error::InsufficientTruncation { .. })
        ));
    }

    #[test]
    fn intersection_numbers() {
        let n = 12;
        let a = curve(&[(1, 1)], &[(2, 1)], n);
        let b = curve(&[(1, 1)], &[(3, 1)], n);
        assert_eq!(intersect_order(&a, &b).unwrap(), OrderResult::Exact(2));

        let cusp = curve(&[(2, 1)], &[(3, 1)], n);
        let line = curve(&[(1, 1)], &[], n);
        assert_eq!(intersect_order(&cusp, &line).unwrap(), OrderResult::Exact(3));

        // Self-intersection is unbounded: only a lower bound is reported.
        let self_i = intersect_order(&a, &a).unwrap();
        assert!(!self_i.is_exact());
        assert!(self_i.lower_bound() > n);
    }

    #[test]
    fn intersection_is_symmetric_on_exact_cases() {
        let n = 12;
        let pairs = [
            (curve(&[(1, 1)], &[(2, 1)], n), curve(&[(1, 1)], &[(3, 1)], n)),
            (curve(&[(2, 1)], &[(3, 1)], n), curve(&[(1, 1)], &[], n)),
            (curve(&[(2, 1)], &[(3, 1), (4, 1)], n), curve(&[(1, 1)], &[(1, 1), (2, -1)], n)),
        ];
        for (a, b) in pairs {
            let ab = intersect_order(&a, &b).unwrap();
            let ba = intersect_order(&b, &a).unwrap();
            assert!(ab.is_exact() && ba.is_exact());
            assert_eq!(ab, ba, "symmetry fails for {a} vs {b}");
        }
    }

    #[test]
    fn action_examples() {
        let n = 10;
        let line = curve(&[(1, 1)], &[], n);
        let cubic_shear = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((3, 0), s(1))], n),
        )
        .unwrap();
        let moved = line.act(&cubic_shear).unwrap();
        assert!(moved.comp_x().eq_through(&UniSeries::var_t(n), n));
        assert!(moved.comp_y().eq_through(&UniSeries::monomial(3, s(1), n), n));

        let cusp = curve(&[(2, 1)], &[(3, 1)], n);
        assert_eq!(cusp.act(&FormalDiffeo::identity(n)).unwrap(), cusp);

        let scale2 =
            FormalDiffeo::new(BiSeries::var_x(n).scale(&s(2)), BiSeries::var_y(n)).unwrap();
        let scaled = cusp.act(&scale2).unwrap();
        assert_eq!(scaled.comp_x().coeff(2), s(2));
        assert_eq!(scaled.comp_y().coeff(3), s(1));
    }

    #[test]
    fn action_preserves_multiplicity_and_intersections() {
        let n = 12;
        let phi = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(1)), ((0, 1), s(1)), ((2, 0), s(1))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((1, 1), s(-1))], n),
        )
        .unwrap();
        let a = curve(&[(2, 1)], &[(3, 1)], n);
        let b = curve(&[(1, 1)], &[(2, 1), (3, 1)], n);
        assert_eq!(a.act(&phi).unwrap().multiplicity(), a.multiplicity());
        assert_eq!(b.act(&phi).unwrap().multiplicity(), b.multiplicity());
        let before = intersect_order(&a, &b).unwrap();
        let after = intersect_order(&a.act(&phi).unwrap(), &b.act(&phi).unwrap()).unwrap();
        assert!(before.is_exact());
        assert_eq!(before, after);
    }

    #[test]
    fn shift_family_intersection_reads_off_shift_order() {
        // For φ = (x, y + f(x)) and γ = (t, g(t)): the intersection number of
        // φ(γ) with γ is the vanishing order of f.
        let n = 14;
        let gamma = curve(&[(1, 1)], &[(2, 1)], n);
        let f_shift = BiSeries::from_terms([((3, 0), s(1)), ((4, 0), s(-2))], n);
        let phi =
            FormalDiffeo::new(BiSeries::var_x(n), BiSeries::var_y(n).add_ref(&f_shift)).unwrap();
        let moved = gamma.act(&phi).unwrap();
        assert_eq!(intersect_order(&moved, &gamma).unwrap(), OrderResult::Exact(3));
    }
}
