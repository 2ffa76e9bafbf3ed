//! Finite-dimensional jet spaces at the origin.
//!
//! The space of k-jets of functions vanishing at the origin has the monomial
//! basis x^i y^j, 1 ≤ i+j ≤ k, in graded order (x before y within each
//! degree); its dimension is k(k+3)/2. A diffeomorphism acts on it by
//! pullback followed by jet truncation, giving a multiplicative matrix
//! (an algebra automorphism of the truncated local ring); a vector field
//! acts as a derivation. Exponential and logarithm connect nilpotent
//! derivations with unipotent automorphisms through finite sums — every
//! series involved terminates because the matrices are nilpotent.
//!
//! The full-matrix exponential/logarithm here are meant for small jet levels
//! (the matrices are dense); the series-level exponential of a vector field
//! lives in [`crate::vfield`] and never builds these matrices.

use std::fmt;

use crate::diffeo::FormalDiffeo;
use crate::scalar::Scalar;
use crate::series::BiSeries;
use crate::vfield::FormalVectorField;
use crate::{Error, Result};

/// Dimension of the k-jet space of the maximal ideal: k(k+3)/2.
pub fn jet_dim(k: u32) -> usize {
    (k as usize) * (k as usize + 3) / 2
}

/// Basis monomials (i, j) for exponents of x^i y^j, graded, x first.
pub fn jet_monomials(k: u32) -> Vec<(u32, u32)> {
    let mut arr = Vec::with_capacity(jet_dim(k));
    for d in 1..=k {
        for j in 0..=d {
            arr.push((d - j, j));
        }
    }
    arr
}

/// Index of x^i y^j in the graded basis.
pub fn jet_index(i: u32, j: u32) -> usize {
    debug_assert!(i + j >= 1);
    let d = i + j;
    let offset = ((d - 1) * (d + 2) / 2) as usize;
    offset + j as usize
}

/// Coordinates of a series (vanishing at the origin) in the k-jet basis.
pub fn series_to_coords(f: &BiSeries, k: u32) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); jet_dim(k)];
    for (&(i, j), c) in f.terms() {
        if i + j >= 1 && i + j <= k {
            v[jet_index(i, j)] = c.clone();
        }
    }
    v
}

/// Series with the given jet coordinates (and truncation `trunc >= k`).
pub fn coords_to_series(v: &[Scalar], k: u32, trunc: u32) -> BiSeries {
    let monos = jet_monomials(k);
    debug_assert_eq!(v.len(), monos.len());
    BiSeries::from_terms(
        monos.into_iter().zip(v.iter().cloned()).map(|((i, j), c)| ((i, j), c)),
        trunc,
    )
}

/// Dense square matrix over the scalar field, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct SquareMat {
    n: usize,
    a: Vec<Scalar>,
}

impl SquareMat {
    fn zero(n: usize) -> Self {
        SquareMat { n, a: vec![Scalar::zero(); n * n] }
    }

    fn identity(n: usize) -> Self {
        let mut m = SquareMat::zero(n);
        for r in 0..n {
            m.a[r * n + r] = Scalar::one();
        }
        m
    }

    fn entry(&self, r: usize, c: usize) -> &Scalar {
        &self.a[r * self.n + c]
    }

    fn entry_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.a[r * self.n + c]
    }

    fn is_zero(&self) -> bool {
        self.a.iter().all(Scalar::is_zero)
    }

    fn add(&self, rhs: &SquareMat) -> SquareMat {
        debug_assert_eq!(self.n, rhs.n);
        SquareMat {
            n: self.n,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x.add_ref(y)).collect(),
        }
    }

    fn sub(&self, rhs: &SquareMat) -> SquareMat {
        debug_assert_eq!(self.n, rhs.n);
        SquareMat {
            n: self.n,
            a: self.a.iter().zip(&rhs.a).map(|(x, y)| x.sub_ref(y)).collect(),
        }
    }

    fn scale(&self, c: &Scalar) -> SquareMat {
        SquareMat { n: self.n, a: self.a.iter().map(|x| x.mul_ref(c)).collect() }
    }

    fn mul(&self, rhs: &SquareMat) -> SquareMat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = SquareMat::zero(n);
        for r in 0..n {
            for k in 0..n {
                let lhs = self.entry(r, k);
                if lhs.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let rv = rhs.entry(k, c);
                    if rv.is_zero() {
                        continue;
                    }
                    let cur = out.entry(r, c).add_ref(&lhs.mul_ref(rv));
                    *out.entry_mut(r, c) = cur;
                }
            }
        }
        out
    }

    fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        debug_assert_eq!(self.n, v.len());
        let mut out = vec![Scalar::zero(); self.n];
        for r in 0..self.n {
            let mut acc = Scalar::zero();
            for c in 0..self.n {
                let m = self.entry(r, c);
                if m.is_zero() || v[c].is_zero() {
                    continue;
                }
                acc = acc.add_ref(&m.mul_ref(&v[c]));
            }
            out[r] = acc;
        }
        out
    }

    fn sub_block(&self, m: usize) -> SquareMat {
        debug_assert!(m <= self.n);
        let mut out = SquareMat::zero(m);
        for r in 0..m {
            for c in 0..m {
                *out.entry_mut(r, c) = self.entry(r, c).clone();
            }
        }
        out
    }
}

/// The action of a diffeomorphism on k-jets: a multiplicative matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetAutomorphism {
    level: u32,
    mat: SquareMat,
}

/// The action of a vector field on k-jets: a derivation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JetDerivation {
    level: u32,
    mat: SquareMat,
}

impl JetAutomorphism {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.mat.n
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        self.mat.entry(r, c)
    }

    pub fn is_identity(&self) -> bool {
        self.mat == SquareMat::identity(self.mat.n)
    }

    /// Matrix product (jet of a composite map; note the pullback action makes
    /// projection contravariant).
    pub fn matmul(&self, rhs: &JetAutomorphism) -> Result<JetAutomorphism> {
        if self.level != rhs.level {
            return Err(Error::JetLevelMismatch(self.level, rhs.level));
        }
        Ok(JetAutomorphism { level: self.level, mat: self.mat.mul(&rhs.mat) })
    }

    /// Apply to jet coordinates.
    pub fn apply(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.mat.mul_vec(coords)
    }

    /// Restrict to a lower jet level (the leading sub-block in the graded
    /// basis, which is exactly jet truncation of the action).
    pub fn truncate_level(&self, l: u32) -> Result<JetAutomorphism> {
        if l > self.level || l < 1 {
            return Err(Error::JetLevelExceedsTruncation { level: l, trunc: self.level });
        }
        Ok(JetAutomorphism { level: l, mat: self.mat.sub_block(jet_dim(l)) })
    }

    /// Requested columns of log(self), via iterated products of (A - I)
    /// against basis vectors. Requires unipotency, which the caller certifies;
    /// non-termination within the dimension bound reports the violation.
    pub fn log_columns(&self, cols: &[usize]) -> Result<Vec<Vec<Scalar>>> {
        let n = self.mat.n;
        let nmat = self.mat.sub(&SquareMat::identity(n));
        let mut out = Vec::with_capacity(cols.len());
        for &col in cols {
            let mut v: Vec<Scalar> = (0..n).map(|r| nmat.entry(r, col).clone()).collect();
            let mut acc = vec![Scalar::zero(); n];
            let mut m = 1i64;
            while v.iter().any(|c| !c.is_zero()) {
                if m as usize > n + 1 {
                    return Err(Error::NotUnipotent);
                }
                let coef = Scalar::from_ratio(if m % 2 == 1 { 1 } else { -1 }, m);
                for (a, b) in acc.iter_mut().zip(&v) {
                    *a = a.add_ref(&b.mul_ref(&coef));
                }
                v = nmat.mul_vec(&v);
                m += 1;
            }
            out.push(acc);
        }
        Ok(out)
    }
}

impl JetDerivation {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.mat.n
    }

    pub fn entry(&self, r: usize, c: usize) -> &Scalar {
        self.mat.entry(r, c)
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn truncate_level(&self, l: u32) -> Result<JetDerivation> {
        if l > self.level || l < 1 {
            return Err(Error::JetLevelExceedsTruncation { level: l, trunc: self.level });
        }
        Ok(JetDerivation { level: l, mat: self.mat.sub_block(jet_dim(l)) })
    }

    pub fn apply(&self, coords: &[Scalar]) -> Vec<Scalar> {
        self.mat.mul_vec(coords)
    }
}

/// Jet of the pullback action of a diffeomorphism: column of x^i y^j holds
/// the k-jet of comp_x^i · comp_y^j.
pub fn project_diffeo(phi: &FormalDiffeo, k: u32) -> Result<JetAutomorphism> {
    if k < 1 || k > phi.trunc() {
        return Err(Error::JetLevelExceedsTruncation { level: k, trunc: phi.trunc() });
    }
    let n = jet_dim(k);
    let mut mat = SquareMat::zero(n);
    // Power tables capped at degree k.
    let one = BiSeries::constant(Scalar::one(), k);
    let px0 = phi.comp_x().truncate_to(k);
    let py0 = phi.comp_y().truncate_to(k);
    let mut px: Vec<BiSeries> = vec![one.clone()];
    let mut py: Vec<BiSeries> = vec![one];
    for (i, j) in jet_monomials(k) {
        while px.len() <= i as usize {
            px.push(px.last().unwrap().mul_ref(&px0).truncate_to(k));
        }
        while py.len() <= j as usize {
            py.push(py.last().unwrap().mul_ref(&py0).truncate_to(k));
        }
        let image = px[i as usize].mul_ref(&py[j as usize]).truncate_to(k);
        let col = jet_index(i, j);
        for (&(a, b), c) in image.terms() {
            if a + b >= 1 {
                *mat.entry_mut(jet_index(a, b), col) = c.clone();
            }
        }
    }
    Ok(JetAutomorphism { level: k, mat })
}

/// Jet of the derivation action of a vector field: column of x^i y^j holds
/// the k-jet of a·∂(x^i y^j)/∂x + b·∂(x^i y^j)/∂y.
pub fn project_vfield(xf: &FormalVectorField, k: u32) -> Result<JetDerivation> {
    if k < 1 || k > xf.trunc() {
        return Err(Error::JetLevelExceedsTruncation { level: k, trunc: xf.trunc() });
    }
    let n = jet_dim(k);
    let mut mat = SquareMat::zero(n);
    let a = xf.comp_x().truncate_to(k);
    let b = xf.comp_y().truncate_to(k);
    for (i, j) in jet_monomials(k) {
        let col = jet_index(i, j);
        let mut image = BiSeries::zero(k);
        if i >= 1 {
            let m = BiSeries::monomial(i - 1, j, Scalar::from_int(i as i64), k);
            image = image.add_ref(&a.mul_ref(&m).truncate_to(k));
        }
        if j >= 1 {
            let m = BiSeries::monomial(i, j - 1, Scalar::from_int(j as i64), k);
            image = image.add_ref(&b.mul_ref(&m).truncate_to(k));
        }
        for (&(p, q), c) in image.terms() {
            if p + q >= 1 {
                *mat.entry_mut(jet_index(p, q), col) = c.clone();
            }
        }
    }
    Ok(JetDerivation { level: k, mat })
}

/// Exponential of a nilpotent derivation: sum of D^m/m!, a finite sum.
/// Non-nilpotent inputs are detected when the sum fails to terminate within
/// the dimension bound.
pub fn exp_jet(d: &JetDerivation) -> Result<JetAutomorphism> {
    let n = d.mat.n;
    let mut acc = SquareMat::identity(n);
    let mut term = d.mat.clone();
    let mut m = 1i64;
    while !term.is_zero() {
        if m as usize > n + 1 {
            return Err(Error::NotNilpotent);
        }
        acc = acc.add(&term);
        m += 1;
        term = term.mul(&d.mat).scale(&Scalar::from_ratio(1, m));
    }
    Ok(JetAutomorphism { level: d.level, mat: acc })
}

/// Logarithm of a unipotent automorphism: alternating sum of (A-I)^m/m.
/// Non-unipotent inputs are detected when the sum fails to terminate.
pub fn log_jet(a: &JetAutomorphism) -> Result<JetDerivation> {
    let n = a.mat.n;
    let nil = a.mat.sub(&SquareMat::identity(n));
    let mut acc = SquareMat::zero(n);
    let mut power = nil.clone();
    let mut m = 1i64;
    while !power.is_zero() {
        if m as usize > n + 1 {
            return Err(Error::NotUnipotent);
        }
        let coef = Scalar::from_ratio(if m % 2 == 1 { 1 } else { -1 }, m);
        acc = acc.add(&power.scale(&coef));
        power = power.mul(&nil);
        m += 1;
    }
    Ok(JetDerivation { level: a.level, mat: acc })
}

fn fmt_matrix(f: &mut fmt::Formatter<'_>, mat: &SquareMat) -> fmt::Result {
    for r in 0..mat.n {
        let row: Vec<String> = (0..mat.n).map(|c| mat.entry(r, c).to_string()).collect();
        writeln!(f, "[{}]", row.join(", "))?;
    }
    Ok(())
}

impl fmt::Display for JetAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(f, &self.mat)
    }
}

impl fmt::Display for JetDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_matrix(f, &self.mat)
    }
}
