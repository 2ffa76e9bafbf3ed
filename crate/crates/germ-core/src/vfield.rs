//! Formal vector fields a ∂x + b ∂y singular at the origin.
//!
//! A vector field acts on series as a derivation. Fields with nilpotent
//! linear part exponentiate to unipotent diffeomorphisms through the Lie
//! series Σ Xᵐ(z)/m!, which is a finite sum at every truncation because the
//! induced jet-space operator is nilpotent. Conversely a unipotent
//! diffeomorphism has a logarithm — its infinitesimal generator — obtained
//! here from the jet-matrix logarithm at working truncation, reading off the
//! derivation's action on the two coordinate functions.

use std::fmt;

use crate::curve::CurveParam;
use crate::diffeo::{DiffeoClass, FormalDiffeo};
use crate::jetspace;
use crate::scalar::Scalar;
use crate::series::{BiSeries, OrderResult};
use crate::{Error, Result};

/// Outcome of a vanishing test performed at finite truncation: either the
/// expression is zero through every computable degree, or a witness degree
/// exhibits the first nonzero term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VanishingCheck {
    YesUpToTruncation,
    No { witness_degree: u32 },
}

impl VanishingCheck {
    pub fn holds(&self) -> bool {
        matches!(self, VanishingCheck::YesUpToTruncation)
    }
}

/// A formal vector field a ∂x + b ∂y with a, b vanishing at the origin.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalVectorField {
    a: BiSeries,
    b: BiSeries,
}

impl FormalVectorField {
    /// Build from coefficient series, which must vanish at the origin.
    /// Components are aligned to the smaller truncation.
    pub fn new(a: BiSeries, b: BiSeries) -> Result<Self> {
        if !a.coeff(0, 0).is_zero() || !b.coeff(0, 0).is_zero() {
            return Err(Error::ConstantTermInVectorField);
        }
        let t = a.trunc().min(b.trunc());
        Ok(FormalVectorField { a: a.truncate_to(t), b: b.truncate_to(t) })
    }

    pub fn zero(trunc: u32) -> Self {
        FormalVectorField { a: BiSeries::zero(trunc), b: BiSeries::zero(trunc) }
    }

    pub fn comp_x(&self) -> &BiSeries {
        &self.a
    }

    pub fn comp_y(&self) -> &BiSeries {
        &self.b
    }

    pub fn trunc(&self) -> u32 {
        self.a.trunc()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn truncate_to(&self, t: u32) -> FormalVectorField {
        FormalVectorField { a: self.a.truncate_to(t), b: self.b.truncate_to(t) }
    }

    pub fn add_ref(&self, rhs: &FormalVectorField) -> FormalVectorField {
        FormalVectorField { a: self.a.add_ref(&rhs.a), b: self.b.add_ref(&rhs.b) }
    }

    pub fn sub_ref(&self, rhs: &FormalVectorField) -> FormalVectorField {
        FormalVectorField { a: self.a.sub_ref(&rhs.a), b: self.b.sub_ref(&rhs.b) }
    }

    pub fn scale(&self, c: &Scalar) -> FormalVectorField {
        FormalVectorField { a: self.a.scale(c), b: self.b.scale(c) }
    }

    /// Entries of the linear part [[∂a/∂x, ∂a/∂y], [∂b/∂x, ∂b/∂y]] at 0.
    pub fn linear_entries(&self) -> [[Scalar; 2]; 2] {
        [
            [self.a.coeff(1, 0), self.a.coeff(0, 1)],
            [self.b.coeff(1, 0), self.b.coeff(0, 1)],
        ]
    }

    /// Whether the linear part is nilpotent (trace and determinant both
    /// vanish — exact test on a 2×2 matrix).
    pub fn is_nilpotent(&self) -> bool {
        let m = self.linear_entries();
        let trace = m[0][0].add_ref(&m[1][1]);
        let det = m[0][0].mul_ref(&m[1][1]).sub_ref(&m[0][1].mul_ref(&m[1][0]));
        trace.is_zero() && det.is_zero()
    }

    /// Derivation action: a·∂f/∂x + b·∂f/∂y.
    pub fn apply(&self, f: &BiSeries) -> BiSeries {
        self.a
            .mul_ref(&f.partial_x())
            .add_ref(&self.b.mul_ref(&f.partial_y()))
    }

    /// Lie bracket [X, Y] = (X(Y_a) − Y(X_a)) ∂x + (X(Y_b) − Y(X_b)) ∂y.
    pub fn bracket(&self, rhs: &FormalVectorField) -> FormalVectorField {
        FormalVectorField {
            a: self.apply(&rhs.a).sub_ref(&rhs.apply(&self.a)),
            b: self.apply(&rhs.b).sub_ref(&rhs.apply(&self.b)),
        }
    }

    /// Whether f is constant along the field: X(f) = 0 through truncation.
    pub fn is_first_integral(&self, f: &BiSeries) -> VanishingCheck {
        let g = self.apply(f);
        match g.order() {
            OrderResult::Exact(d) => VanishingCheck::No { witness_degree: d },
            OrderResult::AtLeast(_) => VanishingCheck::YesUpToTruncation,
        }
    }

    /// Whether the field is tangent to a parametrized curve:
    /// a(γ(t))·y′(t) − b(γ(t))·x′(t) = 0 through truncation.
    pub fn is_invariant_curve(&self, gamma: &CurveParam) -> Result<VanishingCheck> {
        let xt = gamma.comp_x();
        let yt = gamma.comp_y();
        let a_on = self.a.substitute(xt, yt)?;
        let b_on = self.b.substitute(xt, yt)?;
        let tangency = a_on
            .mul_ref(&yt.derivative())
            .sub_ref(&b_on.mul_ref(&xt.derivative()));
        Ok(match tangency.order() {
            OrderResult::Exact(d) => VanishingCheck::No { witness_degree: d },
            OrderResult::AtLeast(_) => VanishingCheck::YesUpToTruncation,
        })
    }
}

/// Time-one flow of a vector field with nilpotent linear part: components
/// Σ Xᵐ(x)/m! and Σ Xᵐ(y)/m!, each a finite sum at truncation.
pub fn exp_vf(xf: &FormalVectorField) -> Result<FormalDiffeo> {
    if !xf.is_nilpotent() {
        return Err(Error::NonNilpotentLinearPart);
    }
    let n = xf.trunc();
    let budget = jetspace::jet_dim(n) + 2;
    let mut comps = Vec::with_capacity(2);
    for z in [BiSeries::var_x(n), BiSeries::var_y(n)] {
        let mut acc = z.clone();
        let mut term = z;
        let mut m = 0i64;
        loop {
            m += 1;
            if m as usize > budget {
                return Err(Error::Internal(
                    "flow series failed to terminate for a nilpotent field".into(),
                ));
            }
            term = xf.apply(&term).scale(&Scalar::from_ratio(1, m)).truncate_to(n);
            if term.is_zero() {
                break;
            }
            acc = acc.add_ref(&term);
        }
        comps.push(acc.truncate_to(n));
    }
    let cy = comps.pop().unwrap();
    let cx = comps.pop().unwrap();
    FormalDiffeo::new(cx, cy)
}

/// Infinitesimal generator of a unipotent diffeomorphism: the unique
/// nilpotent field X with exp(X) = φ at truncation. Computed from the
/// jet-matrix logarithm at level = working truncation, restricted to the
/// columns of the coordinate functions.
pub fn log_diffeo(phi: &FormalDiffeo) -> Result<FormalVectorField> {
    match phi.classify() {
        DiffeoClass::TangentToIdentity | DiffeoClass::Unipotent => {}
        DiffeoClass::General => return Err(Error::NotUnipotentDiffeo),
    }
    let n = phi.trunc();
    let auto = jetspace::project_diffeo(phi, n)?;
    let cols = auto.log_columns(&[jetspace::jet_index(1, 0), jetspace::jet_index(0, 1)])?;
    let a = jetspace::coords_to_series(&cols[0], n, n);
    let b = jetspace::coords_to_series(&cols[1], n, n);
    FormalVectorField::new(a, b)
}

impl fmt::Display for FormalVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let wrap = |s: &BiSeries| {
            let text = s.to_string();
            if s.terms().count() > 1 || text.starts_with('-') {
                format!("({text})")
            } else {
                text
            }
        };
        let mut parts = Vec::new();
        if !self.a.is_zero() {
            parts.push(format!("{} dx", wrap(&self.a)));
        }
        if !self.b.is_zero() {
            parts.push(format!("{} dy", wrap(&self.b)));
        }
        write!(f, "{}", parts.join(" + "))
    }
}
