//! Formal diffeomorphisms of the plane fixing the origin.
//!
//! A diffeomorphism is a pair of truncated series with vanishing constant
//! terms and invertible linear part. Composition substitutes components and
//! is exact through the shared truncation: the degree-k jet of a composite
//! depends only on the degree-k jets of the factors, so truncated data
//! composes without error. Inverses are solved degree by degree against the
//! linear part.

use std::fmt;

use crate::scalar::Scalar;
use crate::series::BiSeries;
use crate::{Error, Result};

/// Coarse conjugacy type of the linear part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffeoClass {
    /// Linear part has some eigenvalue different from 1.
    General,
    /// Both eigenvalues are 1 but the linear part is not the identity.
    Unipotent,
    /// Linear part is the identity matrix.
    TangentToIdentity,
}

/// An exact 2x2 matrix of scalars, used for linear parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearPart(pub [[Scalar; 2]; 2]);

impl LinearPart {
    pub fn identity() -> Self {
        LinearPart([
            [Scalar::one(), Scalar::zero()],
            [Scalar::zero(), Scalar::one()],
        ])
    }

    pub fn det(&self) -> Scalar {
        let m = &self.0;
        m[0][0].mul_ref(&m[1][1]).sub_ref(&m[0][1].mul_ref(&m[1][0]))
    }

    pub fn trace(&self) -> Scalar {
        self.0[0][0].add_ref(&self.0[1][1])
    }

    pub fn inverse(&self) -> Result<LinearPart> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::NonInvertibleLinearPart);
        }
        let inv = det.inv()?;
        let m = &self.0;
        Ok(LinearPart([
            [m[1][1].mul_ref(&inv), m[0][1].neg_ref().mul_ref(&inv)],
            [m[1][0].neg_ref().mul_ref(&inv), m[0][0].mul_ref(&inv)],
        ]))
    }

    pub fn is_identity(&self) -> bool {
        let m = &self.0;
        m[0][0].is_one() && m[0][1].is_zero() && m[1][0].is_zero() && m[1][1].is_one()
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: (&Scalar, &Scalar)) -> (Scalar, Scalar) {
        let m = &self.0;
        (
            m[0][0].mul_ref(v.0).add_ref(&m[0][1].mul_ref(v.1)),
            m[1][0].mul_ref(v.0).add_ref(&m[1][1].mul_ref(v.1)),
        )
    }
}

/// A formal diffeomorphism `(x, y) -> (comp_x(x,y), comp_y(x,y))` fixing the
/// origin, with invertible linear part; both components share a truncation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalDiffeo {
    comp_x: BiSeries,
    comp_y: BiSeries,
}

impl FormalDiffeo {
    pub fn new(comp_x: BiSeries, comp_y: BiSeries) -> Result<Self> {
        if !comp_x.coeff(0, 0).is_zero() || !comp_y.coeff(0, 0).is_zero() {
            return Err(Error::ConstantTermInDiffeo);
        }
        let trunc = comp_x.trunc().min(comp_y.trunc());
        let d = FormalDiffeo {
            comp_x: comp_x.truncate_to(trunc),
            comp_y: comp_y.truncate_to(trunc),
        };
        if d.linear_part().det().is_zero() {
            return Err(Error::NonInvertibleLinearPart);
        }
        Ok(d)
    }

    pub fn identity(trunc: u32) -> Self {
        FormalDiffeo {
            comp_x: BiSeries::var_x(trunc),
            comp_y: BiSeries::var_y(trunc),
        }
    }

    /// The linear diffeomorphism with the given invertible matrix.
    pub fn linear(m: &LinearPart, trunc: u32) -> Result<Self> {
        let comp_x = BiSeries::from_terms(
            [((1, 0), m.0[0][0].clone()), ((0, 1), m.0[0][1].clone())],
            trunc,
        );
        let comp_y = BiSeries::from_terms(
            [((1, 0), m.0[1][0].clone()), ((0, 1), m.0[1][1].clone())],
            trunc,
        );
        FormalDiffeo::new(comp_x, comp_y)
    }

    pub fn comp_x(&self) -> &BiSeries {
        &self.comp_x
    }

    pub fn comp_y(&self) -> &BiSeries {
        &self.comp_y
    }

    pub fn trunc(&self) -> u32 {
        self.comp_x.trunc().min(self.comp_y.trunc())
    }

    /// Matrix of the degree-1 jet, rows = components.
    pub fn linear_part(&self) -> LinearPart {
        LinearPart([
            [self.comp_x.coeff(1, 0), self.comp_x.coeff(0, 1)],
            [self.comp_y.coeff(1, 0), self.comp_y.coeff(0, 1)],
        ])
    }

    pub fn classify(&self) -> DiffeoClass {
        let j = self.linear_part();
        if j.is_identity() {
            DiffeoClass::TangentToIdentity
        } else if j.trace() == Scalar::from_int(2) && j.det().is_one() {
            DiffeoClass::Unipotent
        } else {
            DiffeoClass::General
        }
    }

    /// True when both components equal the coordinate functions through the
    /// stored truncation.
    pub fn is_identity(&self) -> bool {
        let t = self.trunc();
        self.comp_x.eq_through(&BiSeries::var_x(t), t)
            && self.comp_y.eq_through(&BiSeries::var_y(t), t)
    }

    /// True when the degree-k jet is the identity.
    pub fn jet_is_identity(&self, k: u32) -> bool {
        debug_assert!(k <= self.trunc());
        self.comp_x.eq_through(&BiSeries::var_x(self.comp_x.trunc()), k)
            && self.comp_y.eq_through(&BiSeries::var_y(self.comp_y.trunc()), k)
    }

    /// Composition `self ∘ rhs` (apply `rhs` first).
    pub fn compose(&self, rhs: &FormalDiffeo) -> Result<FormalDiffeo> {
        let comp_x = self.comp_x.compose(rhs.comp_x(), rhs.comp_y())?;
        let comp_y = self.comp_y.compose(rhs.comp_x(), rhs.comp_y())?;
        FormalDiffeo::new(comp_x, comp_y)
    }

    /// Pull a series back along this diffeomorphism: `f ∘ self`.
    pub fn pullback(&self, f: &BiSeries) -> Result<BiSeries> {
        f.compose(&self.comp_x, &self.comp_y)
    }

    /// Compositional inverse, solved degree by degree.
    pub fn invert(&self) -> Result<FormalDiffeo> {
        let n = self.trunc();
        let j_inv = self.linear_part().inverse()?;
        let mut psi = FormalDiffeo::linear(&j_inv, n)?;
        for m in 2..=n {
            // Compose capped at degree m; the error there is homogeneous of
            // degree m and is cancelled through the linear part.
            let capped = FormalDiffeo {
                comp_x: self.comp_x.truncate_to(m),
                comp_y: self.comp_y.truncate_to(m),
            };
            let psi_capped = FormalDiffeo {
                comp_x: psi.comp_x.truncate_to(m),
                comp_y: psi.comp_y.truncate_to(m),
            };
            let comp = capped.compose(&psi_capped)?;
            let err_x = comp.comp_x.sub_ref(&BiSeries::var_x(m));
            let err_y = comp.comp_y.sub_ref(&BiSeries::var_y(m));
            let mut dx = BiSeries::zero(n);
            let mut dy = BiSeries::zero(n);
            let mut any = false;
            for (&(i, j), _) in err_x.terms() {
                debug_assert!(i + j >= m, "inverse error dropped below current degree");
                if i + j == m {
                    any = true;
                }
            }
            for (&(i, j), _) in err_y.terms() {
                debug_assert!(i + j >= m);
                if i + j == m {
                    any = true;
                }
            }
            if !any {
                continue;
            }
            // delta = -J^{-1} · (degree-m part of err)
            for d in 0..=m {
                let i = m - d;
                let j = d;
                let ex = err_x.coeff(i, j);
                let ey = err_y.coeff(i, j);
                if ex.is_zero() && ey.is_zero() {
                    continue;
                }
                let (cx, cy) = j_inv.apply((&ex, &ey));
                dx = dx.add_ref(&BiSeries::monomial(i, j, cx.neg_ref(), n));
                dy = dy.add_ref(&BiSeries::monomial(i, j, cy.neg_ref(), n));
            }
            psi = FormalDiffeo {
                comp_x: psi.comp_x.add_ref(&dx),
                comp_y: psi.comp_y.add_ref(&dy),
            };
        }
        Ok(psi)
    }

    /// Group commutator `self ∘ rhs ∘ self⁻¹ ∘ rhs⁻¹`.
    pub fn commutator(&self, rhs: &FormalDiffeo) -> Result<FormalDiffeo> {
        self.compose(rhs)?
            .compose(&self.invert()?)?
            .compose(&rhs.invert()?)
    }
}

impl fmt::Display for FormalDiffeo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.comp_x, self.comp_y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn diffeo(terms_x: &[((u32, u32), i64)], terms_y: &[((u32, u32), i64)], n: u32) -> FormalDiffeo {
        let x = BiSeries::from_terms(terms_x.iter().map(|&(k, c)| (k, s(c))), n);
        let y = BiSeries::from_terms(terms_y.iter().map(|&(k, c)| (k, s(c))), n);
        FormalDiffeo::new(x, y).unwrap()
    }

    #[test]
    fn composition_of_shears() {
        // (x, y+x^2) ∘ (x, y+e·x) = (x, y + e·x + x^2)
        let n = 12;
        let phi = diffeo(&[((1, 0), 1)], &[((0, 1), 1), ((2, 0), 1)], n);
        let eta = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((1, 0), Scalar::epsilon())], n),
        )
        .unwrap();
        let comp = phi.compose(&eta).unwrap();
        assert_eq!(comp.comp_x(), &BiSeries::var_x(n));
        let expected = BiSeries::from_terms(
            [((0, 1), s(1)), ((1, 0), Scalar::epsilon()), ((2, 0), s(1))],
            n,
        );
        assert_eq!(comp.comp_y(), &expected);
    }

    #[test]
    fn inverse_of_translation_in_y_squared() {
        // (x + y^2, y) inverts to (x - y^2, y).
        let n = 10;
        let phi = diffeo(&[((1, 0), 1), ((0, 2), 1)], &[((0, 1), 1)], n);
        let inv = phi.invert().unwrap();
        let expected = diffeo(&[((1, 0), 1), ((0, 2), -1)], &[((0, 1), 1)], n);
        assert_eq!(inv, expected);
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn inverse_of_generic_diffeo_roundtrips() {
        let n = 10;
        let phi = diffeo(
            &[((1, 0), 2), ((0, 1), 1), ((2, 0), 3), ((1, 1), -1)],
            &[((0, 1), 1), ((1, 0), 1), ((0, 2), 5), ((3, 0), 2)],
            n,
        );
        let inv = phi.invert().unwrap();
        assert!(phi.compose(&inv).unwrap().is_identity());
        assert!(inv.compose(&phi).unwrap().is_identity());
    }

    #[test]
    fn classification() {
        let n = 6;
        assert_eq!(
            diffeo(&[((1, 0), 1)], &[((0, 1), 1), ((2, 0), 1)], n).classify(),
            DiffeoClass::TangentToIdentity
        );
        assert_eq!(
            diffeo(&[((1, 0), 1), ((0, 1), 1)], &[((0, 1), 1)], n).classify(),
            DiffeoClass::Unipotent
        );
        assert_eq!(
            diffeo(&[((1, 0), 2)], &[((0, 1), 1)], n).classify(),
            DiffeoClass::General
        );
    }

    #[test]
    fn commutator_of_scaling_and_shear() {
        // [(2x, y), (x, y+x^2)] = (x, y - (3/4)x^2); oracle: the four explicit
        // compositions give y - x^2 + x^2/4 in the last component.
        let n = 8;
        let h = diffeo(&[((1, 0), 2)], &[((0, 1), 1)], n);
        let l = diffeo(&[((1, 0), 1)], &[((0, 1), 1), ((2, 0), 1)], n);
        let c = h.commutator(&l).unwrap();
        assert_eq!(c.comp_x(), &BiSeries::var_x(n));
        let expected = BiSeries::from_terms([((0, 1), s(1)), ((2, 0), Scalar::from_ratio(-3, 4))], n);
        assert_eq!(c.comp_y(), &expected);
    }

    #[test]
    fn commutator_with_self_is_identity() {
        let n = 8;
        let phi = diffeo(
            &[((1, 0), 1), ((0, 2), 2)],
            &[((0, 1), 1), ((2, 0), -3)],
            n,
        );
        assert!(phi.commutator(&phi).unwrap().is_identity());
    }

    #[test]
    fn pullback_is_contravariant() {
        let n = 8;
        let phi = diffeo(&[((1, 0), 1), ((0, 2), 1)], &[((0, 1), 1)], n);
        let eta = diffeo(&[((1, 0), 1)], &[((0, 1), 1), ((2, 0), 1)], n);
        let f = BiSeries::from_terms([((0, 1), s(1)), ((1, 1), s(2))], n);
        let lhs = phi.compose(&eta).unwrap().pullback(&f).unwrap();
        let rhs = eta.pullback(&phi.pullback(&f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_example() {
        let n = 8;
        let phi = diffeo(&[((1, 0), 1)], &[((0, 1), 1), ((2, 0), 1)], n);
        let y = BiSeries::var_y(n);
        let pulled = phi.pullback(&y).unwrap();
        let expected = BiSeries::from_terms([((0, 1), s(1)), ((2, 0), s(1))], n);
        assert_eq!(pulled, expected);
    }

    #[test]
    fn near_identity_commutator_jet_law() {
        // For phi with identity degree-k jet and eta tangent to the identity
        // (higher jets arbitrary), the commutator has identity jet at degree
        // k+1.
        let n = 10;
        for k in 1..=4u32 {
            let mut terms_x = vec![((1u32, 0u32), 1i64)];
            let mut terms_y = vec![((0u32, 1u32), 1i64)];
            terms_x.push(((k + 1, 0), 2));
            terms_y.push(((0, k + 1), -1));
            let phi = diffeo(&terms_x, &terms_y, n);
            assert!(phi.jet_is_identity(k));
            let eta = diffeo(
                &[((1, 0), 1), ((2, 0), 1), ((0, 2), -2)],
                &[((0, 1), 1), ((1, 1), 3)],
                n,
            );
            assert!(eta.jet_is_identity(1));
            let c = phi.commutator(&eta).unwrap();
            assert!(c.jet_is_identity(k + 1), "k={k}");
        }
    }

    #[test]
    fn constant_term_rejected() {
        let n = 4;
        let bad = BiSeries::from_terms([((0, 0), s(1)), ((1, 0), s(1))], n);
        assert_eq!(
            FormalDiffeo::new(bad, BiSeries::var_y(n)).unwrap_err(),
            Error::ConstantTermInDiffeo
        );
    }

    #[test]
    fn degenerate_linear_part_rejected() {
        let n = 4;
        // Both components proportional to x.
        let x1 = BiSeries::var_x(n);
        let x2 = BiSeries::var_x(n).scale(&s(2));
        assert_eq!(
            FormalDiffeo::new(x1, x2).unwrap_err(),
            Error::NonInvertibleLinearPart
        );
    }
}
