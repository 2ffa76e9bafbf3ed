//! Blowing up the origin: infinitely near points, strict transforms,
//! Noether's intersection formula, and lifts of maps and fields.
//!
//! The blow-up is covered by two charts. The first, with π(x, t) = (x, xt),
//! sees every direction except the vertical one; the second, with
//! π(s, y) = (sy, y), is used only for the direction {x = 0}, so every
//! exceptional point has one canonical description and point equality is
//! plain scalar equality. Iterating strict transforms yields the sequence of
//! infinitely near points of a curve; two curves' intersection number is the
//! sum of products of multiplicities along their shared prefix of near
//! points. All sums here are truncation-honest: when the data cannot certify
//! another step, results degrade to explicit lower bounds, never to guesses.

use std::fmt;

use crate::curve::{CurveParam, TangentDirection};
use crate::diffeo::{FormalDiffeo, LinearPart};
use crate::scalar::Scalar;
use crate::series::{BiSeries, OrderResult, UniSeries};
use crate::vfield::FormalVectorField;
use crate::{Error, Result};

/// Which chart of the blow-up a point is described in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// (x, t) with π(x, t) = (x, xt); covers all non-vertical directions.
    First,
    /// (s, y) with π(s, y) = (sy, y); reserved for the vertical direction.
    Second,
}

/// A point on the exceptional line, in canonical chart form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NearPoint {
    chart: Chart,
    coord: Scalar,
}

impl NearPoint {
    pub fn chart(&self) -> Chart {
        self.chart
    }

    pub fn coord(&self) -> &Scalar {
        &self.coord
    }
}

impl fmt::Display for NearPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.chart {
            Chart::First => write!(f, "chart 1, t = {}", self.coord),
            Chart::Second => write!(f, "chart 2, s = {}", self.coord),
        }
    }
}

/// The first `depth` steps of a curve's resolution: near points p₁, …, p_d,
/// multiplicities m₀, …, m_{d−1}, and strict transforms γ₁, …, γ_d.
#[derive(Debug, Clone)]
pub struct NearPointSeq {
    points: Vec<NearPoint>,
    mults: Vec<u32>,
    transforms: Vec<CurveParam>,
}

impl NearPointSeq {
    pub fn depth(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[NearPoint] {
        &self.points
    }

    /// Multiplicity of the k-th strict transform (index 0 = the curve).
    pub fn mults(&self) -> &[u32] {
        &self.mults
    }

    pub fn transforms(&self) -> &[CurveParam] {
        &self.transforms
    }
}

/// Exact quotient of univariate series; requires ord(num) ≥ ord(den) with
/// the denominator's order certifiable.
fn div_series(num: &UniSeries, den: &UniSeries) -> Result<UniSeries> {
    let m = match den.order() {
        OrderResult::Exact(m) => m,
        OrderResult::AtLeast(_) => {
            return Err(Error::DepthLimit(
                "denominator order is not certifiable at this truncation".into(),
            ))
        }
    };
    let unit = den.shift_down(m)?;
    num.mul_ref(&unit.reciprocal()?).shift_down(m)
}

/// Chart for the next blow-up of a curve: first chart unless the tangent
/// direction is vertical. Errors when truncation cannot certify the choice.
fn choose_chart(gamma: &CurveParam) -> Result<Chart> {
    let first = match (gamma.comp_x().order(), gamma.comp_y().order()) {
        (OrderResult::Exact(a), OrderResult::Exact(b)) => b >= a,
        (OrderResult::Exact(a), OrderResult::AtLeast(b)) => {
            if b >= a {
                true
            } else {
                return Err(Error::DepthLimit(
                    "cannot certify the tangent direction at this truncation".into(),
                ));
            }
        }
        (OrderResult::AtLeast(a), OrderResult::Exact(b)) => {
            if b < a {
                false
            } else {
                return Err(Error::DepthLimit(
                    "cannot certify the tangent direction at this truncation".into(),
                ));
            }
        }
        (OrderResult::AtLeast(_), OrderResult::AtLeast(_)) => {
            return Err(Error::DepthLimit("curve data exhausted by truncation".into()))
        }
    };
    Ok(if first { Chart::First } else { Chart::Second })
}

/// One blow-up step: the near point hit by the curve and its strict
/// transform, recentered at that point.
pub fn strict_transform(gamma: &CurveParam) -> Result<(NearPoint, CurveParam)> {
    let (point, tx, ty) = match choose_chart(gamma)? {
        Chart::First => {
            let q = div_series(gamma.comp_y(), gamma.comp_x())?;
            let c = q.coeff(0);
            let recentered = q.sub_ref(&UniSeries::monomial(0, c.clone(), q.trunc()));
            (NearPoint { chart: Chart::First, coord: c }, gamma.comp_x().clone(), recentered)
        }
        Chart::Second => {
            let q = div_series(gamma.comp_x(), gamma.comp_y())?;
            (NearPoint { chart: Chart::Second, coord: Scalar::zero() }, q, gamma.comp_y().clone())
        }
    };
    if tx.trunc().min(ty.trunc()) < 1 {
        return Err(Error::DepthLimit("truncation exhausted by repeated blow-ups".into()));
    }
    Ok((point, CurveParam::from_components_unchecked(tx, ty)))
}

/// Iterate `depth` strict transforms, recording points, multiplicities, and
/// transforms. Errors when the truncation cannot support `depth` steps.
pub fn near_points(gamma: &CurveParam, depth: u32) -> Result<NearPointSeq> {
    let mut seq = NearPointSeq { points: Vec::new(), mults: Vec::new(), transforms: Vec::new() };
    let mut cur = gamma.clone();
    for _ in 0..depth {
        let m = match cur.multiplicity() {
            OrderResult::Exact(m) => m,
            OrderResult::AtLeast(_) => {
                return Err(Error::DepthLimit(
                    "multiplicity is not certifiable at this truncation".into(),
                ))
            }
        };
        let (p, next) = strict_transform(&cur)?;
        seq.mults.push(m);
        seq.points.push(p);
        seq.transforms.push(next.clone());
        cur = next;
    }
    Ok(seq)
}

/// Length of the shared prefix of infinitely near points, capped at `depth`:
/// the largest s ≤ depth with p_k(α) = p_k(β) for all 1 ≤ k ≤ s.
pub fn shared_prefix(alpha: &CurveParam, beta: &CurveParam, depth: u32) -> Result<u32> {
    let mut a = alpha.clone();
    let mut b = beta.clone();
    for k in 1..=depth {
        let (pa, na) = strict_transform(&a)?;
        let (pb, nb) = strict_transform(&b)?;
        if pa != pb {
            return Ok(k - 1);
        }
        a = na;
        b = nb;
    }
    Ok(depth)
}

/// Intersection number by the near-point formula: m₀(α)m₀(β) plus the sum of
/// m_k(α)m_k(β) over the shared prefix. Exact when the prefix provably ends
/// within `depth`; otherwise (prefix still alive, or truncation exhausted) an
/// explicit lower bound.
pub fn intersect_noether(alpha: &CurveParam, beta: &CurveParam, depth: u32) -> Result<OrderResult> {
    let exact_mult = |c: &CurveParam| match c.multiplicity() {
        OrderResult::Exact(m) => Some(m),
        OrderResult::AtLeast(_) => None,
    };
    let (ma, mb) = match (exact_mult(alpha), exact_mult(beta)) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::DepthLimit(
                "multiplicity is not certifiable at this truncation".into(),
            ))
        }
    };
    let mut sum = ma * mb;
    let mut a = alpha.clone();
    let mut b = beta.clone();
    for _ in 1..=depth {
        let stepped = (|| -> Result<_> {
            let (pa, na) = strict_transform(&a)?;
            let (pb, nb) = strict_transform(&b)?;
            Ok((pa, na, pb, nb))
        })();
        let (pa, na, pb, nb) = match stepped {
            Ok(v) => v,
            Err(Error::DepthLimit(_)) => return Ok(OrderResult::AtLeast(sum)),
            Err(e) => return Err(e),
        };
        if pa != pb {
            return Ok(OrderResult::Exact(sum));
        }
        let (mka, mkb) = match (exact_mult(&na), exact_mult(&nb)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Ok(OrderResult::AtLeast(sum)),
        };
        sum += mka * mkb;
        a = na;
        b = nb;
    }
    Ok(OrderResult::AtLeast(sum))
}

/// Linear change of coordinates sending the line ℓ to {y = 0}, with its
/// inverse. The identity when ℓ already is {y = 0}.
fn rotation_to_horizontal(line: &TangentDirection) -> Result<(LinearPart, LinearPart)> {
    if line.is_vertical() {
        let swap = LinearPart([
            [Scalar::zero(), Scalar::one()],
            [Scalar::one(), Scalar::zero()],
        ]);
        return Ok((swap.clone(), swap));
    }
    // ℓ = {ax + by = 0}, b ≠ 0: direction vector (b, −a) is sent to e₁.
    let (u, v) = line.direction_vector();
    let inverse = LinearPart([[u, Scalar::zero()], [v, Scalar::one()]]);
    let forward = inverse.inverse()?;
    Ok((forward, inverse))
}

/// Substitution series for a linear map applied to the variables.
fn linear_vars(m: &LinearPart, trunc: u32) -> (BiSeries, BiSeries) {
    let u = BiSeries::from_terms(
        [((1, 0), m.0[0][0].clone()), ((0, 1), m.0[0][1].clone())],
        trunc,
    );
    let v = BiSeries::from_terms(
        [((1, 0), m.0[1][0].clone()), ((0, 1), m.0[1][1].clone())],
        trunc,
    );
    (u, v)
}

/// Compose a series with the first-chart projection π(x, t) = (x, xt).
fn pullback_chart1(f: &BiSeries) -> Result<BiSeries> {
    let n = f.trunc();
    f.compose(&BiSeries::var_x(n), &BiSeries::monomial(1, 1, Scalar::one(), n))
}

/// Lift of a diffeomorphism fixing the tangent direction ℓ to the first
/// blow-up chart adapted to ℓ: with components (a, b) in rotated coordinates,
/// the lift is (a(x, xt), b(x, xt)/a(x, xt)).
pub fn lift_diffeo(phi: &FormalDiffeo, line: &TangentDirection) -> Result<FormalDiffeo> {
    let n = phi.trunc();
    let (fwd, bwd) = rotation_to_horizontal(line)?;
    let rotated = FormalDiffeo::linear(&fwd, n)?
        .compose(phi)?
        .compose(&FormalDiffeo::linear(&bwd, n)?)?;
    // j¹ fixes {y = 0} exactly when the second component has no x-term.
    if !rotated.comp_y().coeff(1, 0).is_zero() {
        return Err(Error::DirectionNotInvariant);
    }
    let a_up = pullback_chart1(rotated.comp_x())?;
    let b_up = pullback_chart1(rotated.comp_y())?;
    let t_comp = b_up.div_x()?.mul_ref(&a_up.div_x()?.reciprocal()?);
    FormalDiffeo::new(a_up, t_comp)
}

/// Lift of a vector field whose linear part leaves ℓ invariant: in the first
/// chart adapted to ℓ, a ∂x + b ∂y becomes a∘π ∂x + (b∘π − t·a∘π)/x ∂t.
pub fn lift_vfield(xf: &FormalVectorField, line: &TangentDirection) -> Result<FormalVectorField> {
    let n = xf.trunc();
    let (fwd, bwd) = rotation_to_horizontal(line)?;
    let (u, v) = linear_vars(&bwd, n);
    let a_back = xf.comp_x().compose(&u, &v)?;
    let b_back = xf.comp_y().compose(&u, &v)?;
    let a_rot = a_back.scale(&fwd.0[0][0]).add_ref(&b_back.scale(&fwd.0[0][1]));
    let b_rot = a_back.scale(&fwd.0[1][0]).add_ref(&b_back.scale(&fwd.0[1][1]));
    if !b_rot.coeff(1, 0).is_zero() {
        return Err(Error::DirectionNotInvariant);
    }
    let a_up = pullback_chart1(&a_rot)?;
    let b_up = pullback_chart1(&b_rot)?;
    let t_times_a = a_up.mul_ref(&BiSeries::var_y(a_up.trunc()));
    let t_comp = b_up.sub_ref(&t_times_a).div_x()?;
    FormalVectorField::new(a_up, t_comp)
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

    fn horizontal() -> TangentDirection {
        TangentDirection::new(Scalar::zero(), Scalar::one()).unwrap()
    }

    #[test]
    fn single_transforms() {
        let n = 12;
        // Cusp: y/x = t, point at 0, transform (t², t).
        let (p, c1) = strict_transform(&curve(&[(2, 1)], &[(3, 1)], n)).unwrap();
        assert_eq!(p.chart(), Chart::First);
        assert!(p.coord().is_zero());
        assert!(c1.comp_x().eq_through(&UniSeries::monomial(2, s(1), 8), 8));
        assert!(c1.comp_y().eq_through(&UniSeries::var_t(8), 8));

        // Parabola: transform (t, t).
        let (p, c1) = strict_transform(&curve(&[(1, 1)], &[(2, 1)], n)).unwrap();
        assert!(p.coord().is_zero());
        assert!(c1.comp_y().eq_through(&UniSeries::var_t(8), 8));

        // (t, −t + t²): hits the exceptional line at −1, transform (t, t).
        let (p, c1) = strict_transform(&curve(&[(1, 1)], &[(1, -1), (2, 1)], n)).unwrap();
        assert_eq!(p.coord(), &s(-1));
        assert!(c1.comp_y().eq_through(&UniSeries::var_t(8), 8));

        // Vertical tangent goes to the second chart.
        let (p, c1) = strict_transform(&curve(&[(2, 1)], &[(1, 1)], n)).unwrap();
        assert_eq!(p.chart(), Chart::Second);
        assert!(p.coord().is_zero());
        assert!(c1.comp_x().eq_through(&UniSeries::var_t(8), 8));
    }

    #[test]
    fn near_point_tables() {
        let n = 16;
        let seq = near_points(&curve(&[(2, 1)], &[(3, 1)], n), 2).unwrap();
        assert_eq!(seq.mults(), &[2, 1]);
        assert_eq!(seq.points().len(), 2);
        // After two steps the cusp leaves the first-chart origin: the second
        // point sits in the second chart (transversal crossing).
        assert_eq!(seq.points()[0].chart(), Chart::First);
        assert_eq!(seq.points()[1].chart(), Chart::Second);

        let seq = near_points(&curve(&[(1, 1)], &[], n), 3).unwrap();
        assert_eq!(seq.mults(), &[1, 1, 1]);
        assert!(seq.points().iter().all(|p| p.coord().is_zero()));

        // (t, t³) divides down to (t, t²), then (t, t), which meets the
        // exceptional line away from the center: points 0, 0, then 1.
        let seq = near_points(&curve(&[(1, 1)], &[(3, 1)], n), 3).unwrap();
        assert_eq!(seq.mults(), &[1, 1, 1]);
        assert!(seq.points()[0].coord().is_zero());
        assert!(seq.points()[1].coord().is_zero());
        assert_eq!(seq.points()[2].coord(), &s(1));
        assert!(seq.transforms()[1].comp_y().eq_through(&UniSeries::var_t(8), 8));
    }

    #[test]
    fn shared_prefixes() {
        let n = 14;
        let a = curve(&[(1, 1)], &[(2, 1)], n);
        let b = curve(&[(1, 1)], &[(3, 1)], n);
        assert_eq!(shared_prefix(&a, &b, 6).unwrap(), 1);

        let diag = curve(&[(1, 1)], &[(1, -1)], n);
        assert_eq!(shared_prefix(&a, &diag, 6).unwrap(), 0);

        assert_eq!(shared_prefix(&a, &a, 5).unwrap(), 5);
    }

    #[test]
    fn equality_up_to_depth() {
        let n = 14;
        let a = curve(&[(1, 1)], &[(2, 1)], n);
        let b = curve(&[(1, 1)], &[(3, 1)], n);
        assert!(a.equal_up_to(&a, 4).unwrap());
        assert!(!a.equal_up_to(&b, 2).unwrap());
        assert!(a.equal_up_to(&b, 1).unwrap());
        let diag = curve(&[(1, 1)], &[(1, -1)], n);
        assert!(!a.equal_up_to(&diag, 1).unwrap());
    }

    #[test]
    fn noether_formula_matches_hand_values() {
        let n = 16;
        let cusp = curve(&[(2, 1)], &[(3, 1)], n);
        let line = curve(&[(1, 1)], &[], n);
        assert_eq!(intersect_noether(&cusp, &line, 8).unwrap(), OrderResult::Exact(3));

        let a = curve(&[(1, 1)], &[(2, 1)], n);
        let b = curve(&[(1, 1)], &[(3, 1)], n);
        assert_eq!(intersect_noether(&a, &b, 8).unwrap(), OrderResult::Exact(2));

        // Self-intersection: the walk never separates, so only a lower bound.
        let same = intersect_noether(&a, &a, 6).unwrap();
        assert_eq!(same, OrderResult::AtLeast(1 + 6));
    }

    #[test]
    fn noether_agrees_with_order_method() {
        let n = 16;
        let pairs = [
            (curve(&[(2, 1)], &[(3, 1)], n), curve(&[(1, 1)], &[(2, 1)], n)),
            (curve(&[(2, 1)], &[(3, 1), (4, 1)], n), curve(&[(2, 1)], &[(3, 1)], n)),
            (curve(&[(1, 1)], &[(2, 1), (3, -1)], n), curve(&[(1, 1), (2, 1)], &[(2, 1)], n)),
            (curve(&[(3, 1)], &[(4, 1)], n), curve(&[(2, 1)], &[(5, 1)], n)),
        ];
        for (a, b) in pairs {
            let by_order = crate::curve::intersect_order(&a, &b).unwrap();
            let by_points = intersect_noether(&a, &b, 10).unwrap();
            assert!(by_order.is_exact() && by_points.is_exact(), "{a} vs {b}");
            assert_eq!(by_order, by_points, "{a} vs {b}");
        }
    }

    #[test]
    fn lift_of_quadratic_shear() {
        let n = 12;
        let phi = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((2, 0), s(1))], n),
        )
        .unwrap();
        let lifted = lift_diffeo(&phi, &horizontal()).unwrap();
        // (x, y + x²) lifts to (x, t + x).
        assert!(lifted.comp_x().eq_through(&BiSeries::var_x(2), 2));
        let want = BiSeries::from_terms([((0, 1), s(1)), ((1, 0), s(1))], 2);
        assert!(lifted.comp_y().eq_through(&want, 2));

        let id = FormalDiffeo::identity(n);
        let lifted_id = lift_diffeo(&id, &horizontal()).unwrap();
        assert!(lifted_id.is_identity());
    }

    #[test]
    fn lift_is_a_homomorphism() {
        let n = 12;
        let phi = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(1)), ((2, 0), s(1))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((1, 1), s(1))], n),
        )
        .unwrap();
        let eta = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(2)), ((0, 1), s(1))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((2, 0), s(-1))], n),
        )
        .unwrap();
        let lhs = lift_diffeo(&phi.compose(&eta).unwrap(), &horizontal()).unwrap();
        let rhs = lift_diffeo(&phi, &horizontal())
            .unwrap()
            .compose(&lift_diffeo(&eta, &horizontal()).unwrap())
            .unwrap();
        let through = lhs.trunc().min(rhs.trunc());
        assert!(lhs.comp_x().eq_through(rhs.comp_x(), through));
        assert!(lhs.comp_y().eq_through(rhs.comp_y(), through));
    }

    #[test]
    fn lift_rejects_moved_direction() {
        let n = 8;
        // (x + y, y) moves the horizontal direction? No — it fixes it; use
        // (x, y + x) which sends (1, 0) to (1, 1).
        let shear = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((1, 0), s(1))], n),
        )
        .unwrap();
        assert_eq!(
            lift_diffeo(&shear, &horizontal()).unwrap_err(),
            Error::DirectionNotInvariant
        );
    }

    #[test]
    fn lift_jet_relations() {
        // When j^k φ = Id, the lift satisfies j^k(first component) = x and
        // j^{k−1}(second component) = t.
        let n = 12;
        let k = 2;
        let phi = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(1)), ((3, 0), s(1))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((3, 0), s(1)), ((2, 1), s(-2))], n),
        )
        .unwrap();
        assert!(phi.jet_is_identity(k));
        let lifted = lift_diffeo(&phi, &horizontal()).unwrap();
        assert!(lifted.comp_x().eq_through(&BiSeries::var_x(k), k));
        assert!(lifted.comp_y().eq_through(&BiSeries::var_y(k - 1), k - 1));
    }

    #[test]
    fn lift_on_rotated_direction() {
        let n = 12;
        // Conjugate the quadratic shear so it fixes {x + y = 0} instead.
        let line = TangentDirection::new(s(1), s(1)).unwrap();
        // R sends ℓ to {y=0}: direction (1, −1) ↦ e₁. Build φ fixing ℓ by
        // conjugating (x, y + x²) back with the inverse rotation.
        let (fwd, bwd) = super::rotation_to_horizontal(&line).unwrap();
        let shear = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((2, 0), s(1))], n),
        )
        .unwrap();
        let phi = FormalDiffeo::linear(&bwd, n)
            .unwrap()
            .compose(&shear)
            .unwrap()
            .compose(&FormalDiffeo::linear(&fwd, n).unwrap())
            .unwrap();
        // The conjugate fixes ℓ, and its lift matches the shear's lift.
        let lifted = lift_diffeo(&phi, &line).unwrap();
        let direct = lift_diffeo(&shear, &horizontal()).unwrap();
        let through = lifted.trunc().min(direct.trunc());
        assert!(lifted.comp_x().eq_through(direct.comp_x(), through));
        assert!(lifted.comp_y().eq_through(direct.comp_y(), through));
    }

    #[test]
    fn vector_field_lifts() {
        let n = 12;
        // x² ∂y lifts to x ∂t.
        let xf = FormalVectorField::new(
            BiSeries::zero(n),
            BiSeries::monomial(2, 0, s(1), n),
        )
        .unwrap();
        let lifted = lift_vfield(&xf, &horizontal()).unwrap();
        assert!(lifted.comp_x().is_zero());
        assert!(lifted.comp_y().eq_through(&BiSeries::var_x(n - 1), n - 1));

        // The radial field lifts to x ∂x: the t-component vanishes.
        let radial =
            FormalVectorField::new(BiSeries::var_x(n), BiSeries::var_y(n)).unwrap();
        let lifted = lift_vfield(&radial, &horizontal()).unwrap();
        assert!(lifted.comp_x().eq_through(&BiSeries::var_x(n - 1), n - 1));
        assert!(lifted.comp_y().is_zero());
    }

    #[test]
    fn lift_commutes_with_bracket() {
        let n = 12;
        let x1 = FormalVectorField::new(
            BiSeries::from_terms([((2, 0), s(1)), ((1, 1), s(1))], n),
            BiSeries::from_terms([((0, 2), s(1)), ((2, 0), s(-1))], n),
        )
        .unwrap();
        let x2 = FormalVectorField::new(
            BiSeries::from_terms([((1, 0), s(1)), ((0, 1), s(2))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((3, 0), s(1))], n),
        )
        .unwrap();
        let lhs = lift_vfield(&x1.bracket(&x2), &horizontal()).unwrap();
        let rhs = lift_vfield(&x1, &horizontal())
            .unwrap()
            .bracket(&lift_vfield(&x2, &horizontal()).unwrap());
        let through = lhs.trunc().min(rhs.trunc()).min(n - 3);
        assert!(lhs.comp_x().eq_through(rhs.comp_x(), through));
        assert!(lhs.comp_y().eq_through(rhs.comp_y(), through));
    }

    #[test]
    fn lift_commutes_with_exponential() {
        let n = 12;
        let xf = FormalVectorField::new(
            BiSeries::from_terms([((2, 0), s(1))], n),
            BiSeries::from_terms([((1, 1), s(1)), ((3, 0), s(-1))], n),
        )
        .unwrap();
        assert!(xf.is_nilpotent());
        let lhs = lift_diffeo(&crate::vfield::exp_vf(&xf).unwrap(), &horizontal()).unwrap();
        let rhs = crate::vfield::exp_vf(&lift_vfield(&xf, &horizontal()).unwrap()).unwrap();
        let through = lhs.trunc().min(rhs.trunc());
        assert!(lhs.comp_x().eq_through(rhs.comp_x(), through));
        assert!(lhs.comp_y().eq_through(rhs.comp_y(), through));
    }

    #[test]
    fn blowup_recursion_for_moved_curves() {
        // Intersection of φ(γ) with γ: m₀(γ)² plus the same quantity one
        // level up, for φ fixing γ's tangent direction.
        let n = 16;
        let gamma = curve(&[(1, 1)], &[(2, 1)], n);
        let phi = FormalDiffeo::new(
            BiSeries::var_x(n),
            BiSeries::from_terms([((0, 1), s(1)), ((3, 0), s(1))], n),
        )
        .unwrap();
        let moved = gamma.act(&phi).unwrap();
        let total = crate::curve::intersect_order(&moved, &gamma).unwrap();

        let (_, gamma1) = strict_transform(&gamma).unwrap();
        let lifted = lift_diffeo(&phi, &gamma.tangent_direction()).unwrap();
        let moved1 = gamma1.act(&lifted).unwrap();
        let upstairs = crate::curve::intersect_order(&moved1, &gamma1).unwrap();

        let m0 = gamma.multiplicity_value();
        assert!(total.is_exact() && upstairs.is_exact());
        assert_eq!(
            total.exact_value().unwrap(),
            m0 * m0 + upstairs.exact_value().unwrap()
        );
    }

    #[test]
    fn multiplicity_sequences_are_action_invariant() {
        let n = 16;
        let gamma = curve(&[(2, 1)], &[(3, 1), (5, 1)], n);
        let phi = FormalDiffeo::new(
            BiSeries::from_terms([((1, 0), s(1)), ((0, 1), s(2)), ((2, 0), s(1))], n),
            BiSeries::from_terms([((0, 1), s(1)), ((1, 1), s(1))], n),
        )
        .unwrap();
        let moved = gamma.act(&phi).unwrap();
        let a = near_points(&gamma, 4).unwrap();
        let b = near_points(&moved, 4).unwrap();
        assert_eq!(a.mults(), b.mults());
    }
}
