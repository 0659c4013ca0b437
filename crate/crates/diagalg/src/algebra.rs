//! The scaled diagram basis, sparse algebra elements, the left regular
//! representation, trace forms, dual bases and the Schur inner product.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use rug::Rational;

use crate::diagram::{enumerate_basis, AlgebraType, Diagram, Family, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::par;
use crate::scalar::{DParam, Scalar};

/// Whether basis vectors are the diagrams themselves or `d^{(n−cc(D))/2} D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scaling {
    Scaled,
    Unscaled,
}

/// One entry of the multiplication table: `a_i a_j = (√d)^t_exp · a_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Product {
    pub index: usize,
    pub t_exp: i32,
    /// Closed components removed while stacking the two diagrams.
    pub removed: usize,
}

/// An enumerated diagram basis with lookup and a lazily built product table.
#[derive(Debug)]
pub struct Basis {
    ty: AlgebraType,
    scaling: Scaling,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
    cc: Vec<usize>,
    table: OnceLock<Vec<Product>>,
}

impl Basis {
    pub fn new(ty: AlgebraType, scaling: Scaling) -> Result<Arc<Self>> {
        Self::with_cap(ty, scaling, DEFAULT_CAP)
    }

    pub fn with_cap(ty: AlgebraType, scaling: Scaling, cap: usize) -> Result<Arc<Self>> {
        let diagrams = enumerate_basis(ty, cap)?;
        Ok(Arc::new(Self::from_diagrams(ty, scaling, diagrams)))
    }

    /// Builds a basis from an explicit diagram order (used to check that
    /// results do not depend on the enumeration order).
    pub fn from_diagrams(ty: AlgebraType, scaling: Scaling, diagrams: Vec<Diagram>) -> Self {
        let index = diagrams.iter().enumerate().map(|(i, d)| (d.clone(), i)).collect();
        let cc = diagrams.iter().map(Diagram::cc).collect();
        Basis { ty, scaling, diagrams, index, cc, table: OnceLock::new() }
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn scaling(&self) -> Scaling {
        self.scaling
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn diagram(&self, i: usize) -> &Diagram {
        &self.diagrams[i]
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn cc(&self, i: usize) -> usize {
        self.cc[i]
    }

    /// Exponent of `√d` in `basis_i = (√d)^k · D_i`.
    pub fn scale_exp(&self, i: usize) -> i32 {
        match self.scaling {
            Scaling::Scaled => self.ty.n as i32 - self.cc[i] as i32,
            Scaling::Unscaled => 0,
        }
    }

    /// Product of two basis elements.
    pub fn product(&self, i: usize, j: usize) -> Product {
        self.table()[i * self.len() + j]
    }

    fn table(&self) -> &[Product] {
        self.table.get_or_init(|| {
            let m = self.len();
            let rows = par::map_range(m, |i| {
                (0..m).map(|j| self.compute_product(i, j)).collect::<Vec<_>>()
            });
            rows.into_iter().flatten().collect()
        })
    }

    fn compute_product(&self, i: usize, j: usize) -> Product {
        let c = self.diagrams[i].compose_unchecked(&self.diagrams[j]);
        let index = self.index[&c.diagram];
        let t_exp = 2 * c.removed as i32 + self.scale_exp(i) + self.scale_exp(j) - self.scale_exp(index);
        Product { index, t_exp, removed: c.removed }
    }

    /// Exponent of `√d` in the Schur inner product of two basis elements.
    pub fn schur_exp(&self, i: usize, j: usize) -> i32 {
        let join = self.diagrams[i].join_cc(&self.diagrams[j]) as i32;
        2 * join + self.scale_exp(i) + self.scale_exp(j)
    }
}

/// A sparse linear combination of basis elements.
#[derive(Clone, Debug)]
pub struct Element<T: Scalar> {
    basis: Arc<Basis>,
    coeffs: BTreeMap<usize, T>,
}

impl<T: Scalar> PartialEq for Element<T> {
    fn eq(&self, other: &Self) -> bool {
        self.basis.ty() == other.basis.ty() && self.coeffs == other.coeffs
    }
}

impl<T: Scalar> Element<T> {
    pub fn zero(basis: &Arc<Basis>) -> Self {
        Element { basis: basis.clone(), coeffs: BTreeMap::new() }
    }

    pub fn basis_element(basis: &Arc<Basis>, i: usize) -> Self {
        let mut e = Self::zero(basis);
        e.coeffs.insert(i, T::one());
        e
    }

    pub fn from_dense(basis: &Arc<Basis>, v: &[T]) -> Self {
        assert_eq!(v.len(), basis.len());
        let coeffs = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Element { basis: basis.clone(), coeffs }
    }

    /// The element `D` for a diagram (unscaled), expressed in the basis.
    pub fn from_diagram(alg: &Algebra<T>, d: &Diagram) -> Result<Self> {
        let i = alg
            .basis
            .index_of(d)
            .ok_or_else(|| Error::Mismatch(format!("diagram {d} is not in {}", alg.basis.ty())))?;
        let mut e = Self::zero(&alg.basis);
        e.coeffs.insert(i, alg.param.t_pow(-alg.basis.scale_exp(i))?);
        Ok(e)
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &T)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(&i).cloned().unwrap_or_else(T::zero)
    }

    pub fn to_dense(&self) -> Vec<T> {
        let mut v = vec![T::zero(); self.basis.len()];
        for (&i, c) in &self.coeffs {
            v[i] = c.clone();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn push(&mut self, i: usize, c: T) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(i).or_insert_with(T::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&i);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.basis, &other.basis) && self.basis.ty() != other.basis.ty() {
            return Err(Error::Mismatch("elements of different algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.push(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero(&self.basis);
        for (&i, c) in &self.coeffs {
            out.push(i, c.clone() * s);
        }
        out
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let keys: std::collections::BTreeSet<usize> =
            self.coeffs.keys().chain(other.coeffs.keys()).copied().collect();
        keys.into_iter()
            .map(|i| (self.coeff(i) - &other.coeff(i)).to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Semisimplicity thresholds: integer values of `d` for which the algebra
/// fails to be semisimple are rejected.
pub fn check_admissible(ty: AlgebraType, d: &Rational) -> Result<()> {
    if *d <= 0 {
        return Err(Error::Inadmissible(format!("d = {d} must be positive")));
    }
    let n = ty.n as i64;
    let max_bad = match ty.family {
        Family::Partition | Family::Half => 2 * n - 2,
        Family::Brauer => n,
        Family::Walled => n - 2,
        Family::Symmetric => -1,
    };
    if d.denom() == &1 && *d <= max_bad {
        return Err(Error::Inadmissible(format!("{ty} is not semisimple at d = {d}")));
    }
    Ok(())
}

/// A diagram algebra at a fixed parameter value.
#[derive(Clone, Debug)]
pub struct Algebra<T: Scalar> {
    basis: Arc<Basis>,
    param: DParam<T>,
}

impl<T: Scalar> Algebra<T> {
    pub fn new(basis: Arc<Basis>, param: DParam<T>) -> Self {
        Algebra { basis, param }
    }

    /// Builds the scaled-basis algebra after checking semisimplicity.
    pub fn build(ty: AlgebraType, d: &Rational) -> Result<Self> {
        check_admissible(ty, d)?;
        Ok(Algebra::new(Basis::new(ty, Scaling::Scaled)?, DParam::new(d)?))
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn param(&self) -> &DParam<T> {
        &self.param
    }

    pub fn ty(&self) -> AlgebraType {
        self.basis.ty()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn d(&self) -> &T {
        &self.param.d
    }

    /// `(√d)^k`.
    pub fn t_pow(&self, k: i32) -> Result<T> {
        self.param.t_pow(k)
    }

    /// Scalar factor of the basis product `a_i a_j`.
    pub fn product_coeff(&self, p: &Product) -> Result<T> {
        self.t_pow(p.t_exp)
    }

    pub fn one(&self) -> Result<Element<T>> {
        Element::from_diagram(self, &Diagram::identity(self.ty()))
    }

    pub fn mul(&self, x: &Element<T>, y: &Element<T>) -> Result<Element<T>> {
        x.check(y)?;
        let mut out = Element::zero(&self.basis);
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let p = self.basis.product(i, j);
                out.push(p.index, a.clone() * b * &self.product_coeff(&p)?);
            }
        }
        Ok(out)
    }

    /// Matrix of `y ↦ a_i y` in the basis.
    pub fn left_regular_basis(&self, i: usize) -> Result<Mat<T>> {
        let m = self.dim();
        let mut out = Mat::zeros(m, m);
        for j in 0..m {
            let p = self.basis.product(i, j);
            out[(p.index, j)] = self.product_coeff(&p)?;
        }
        Ok(out)
    }

    pub fn left_regular(&self, x: &Element<T>) -> Result<Mat<T>> {
        let m = self.dim();
        let mut out = Mat::zeros(m, m);
        for (i, a) in x.terms() {
            for j in 0..m {
                let p = self.basis.product(i, j);
                out[(p.index, j)] += a.clone() * &self.product_coeff(&p)?;
            }
        }
        Ok(out)
    }

    /// `τ_L(a_i)` for every basis element.
    pub fn trace_values(&self) -> Result<Vec<T>> {
        let m = self.dim();
        par::try_map_range(m, |i| {
            let mut t = T::zero();
            for j in 0..m {
                let p = self.basis.product(i, j);
                if p.index == j {
                    t += self.product_coeff(&p)?;
                }
            }
            Ok(t)
        })
    }

    pub fn trace(&self, x: &Element<T>) -> Result<T> {
        let tv = self.trace_values()?;
        Ok(x.terms().fold(T::zero(), |mut acc, (i, c)| {
            acc.mul_add_assign(c, &tv[i]);
            acc
        }))
    }

    /// `⟨x, y⟩_L = τ_L(xy)`.
    pub fn bilinear_l(&self, x: &Element<T>, y: &Element<T>) -> Result<T> {
        self.trace(&self.mul(x, y)?)
    }

    /// Gram matrix of the regular trace form on the basis.
    pub fn gram_l(&self) -> Result<Mat<T>> {
        let tv = self.trace_values()?;
        let m = self.dim();
        let rows = par::try_map_range(m, |i| {
            (0..m)
                .map(|j| {
                    let p = self.basis.product(i, j);
                    Ok(self.product_coeff(&p)? * &tv[p.index])
                })
                .collect::<Result<Vec<T>>>()
        })?;
        Ok(Mat::from_rows(rows))
    }

    /// Coefficients of the dual basis: row `i` holds `a_i*` in the basis.
    pub fn dual_basis_matrix(&self) -> Result<Mat<T>> {
        self.gram_l()?.inverse().map_err(|e| match e {
            Error::Singular => Error::Inadmissible(format!(
                "trace-form Gram matrix of {} is singular at d = {}",
                self.ty(),
                self.param.rational
            )),
            other => other,
        })
    }

    pub fn dual_basis(&self) -> Result<Vec<Element<T>>> {
        let inv = self.dual_basis_matrix()?;
        Ok((0..self.dim()).map(|i| Element::from_dense(&self.basis, inv.row(i))).collect())
    }

    /// Schur inner product of two basis elements.
    pub fn schur_basis(&self, i: usize, j: usize) -> Result<T> {
        self.t_pow(self.basis.schur_exp(i, j))
    }

    /// Bilinear extension of the Schur inner product (all values are real).
    pub fn schur_inner(&self, x: &Element<T>, y: &Element<T>) -> Result<T> {
        x.check(y)?;
        let mut acc = T::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                acc += a.clone() * b * &self.schur_basis(i, j)?;
            }
        }
        Ok(acc)
    }

    pub fn schur_gram(&self) -> Result<Mat<T>> {
        let m = self.dim();
        let rows = par::try_map_range(m, |i| (0..m).map(|j| self.schur_basis(i, j)).collect::<Result<Vec<T>>>())?;
        Ok(Mat::from_rows(rows))
    }
}

/// Explicit `d^n × d^n` Schur matrix of a diagram: entry `(I, J)` is 1 when
/// the labelling `I` on the top row and `J` on the bottom row is constant on
/// every block. Indices are base-`d` digit strings.
pub fn schur_matrix(d: &Diagram, dim: usize) -> Mat<crate::scalar::Exact> {
    use crate::scalar::Exact;
    let n = d.n();
    let size = dim.pow(n as u32);
    let labels = d.labels();
    Mat::from_fn(size, size, |row, col| {
        let mut value = vec![usize::MAX; 2 * n];
        let digits = |mut x: usize| {
            let mut out = vec![0; n];
            for k in (0..n).rev() {
                out[k] = x % dim;
                x /= dim;
            }
            out
        };
        let (top, bottom) = (digits(row), digits(col));
        for v in 0..2 * n {
            let lab = if v < n { top[v] } else { bottom[v - n] };
            let b = labels[v] as usize;
            if value[b] == usize::MAX {
                value[b] = lab;
            } else if value[b] != lab {
                return Exact::zero();
            }
        }
        Exact::one()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{generator, Gen};
    use crate::scalar::Exact;

    fn p1_unscaled(d: i64) -> Algebra<Exact> {
        Algebra::new(
            Arc::new(Basis::from_diagrams(
                AlgebraType::partition(1),
                Scaling::Unscaled,
                enumerate_basis(AlgebraType::partition(1), 10).unwrap(),
            )),
            DParam::from_i64(d).unwrap(),
        )
    }

    #[test]
    fn p1_gram_and_dual() {
        let alg = p1_unscaled(7);
        // Basis order: I = {{1,2}} then P = {{1},{2}}.
        let g = alg.gram_l().unwrap();
        let expect = Mat::from_rows(vec![
            vec![Exact::from_i64(2), Exact::from_i64(7)],
            vec![Exact::from_i64(7), Exact::from_i64(49)],
        ]);
        assert_eq!(g, expect);
        let dual = alg.dual_basis_matrix().unwrap();
        assert_eq!(dual[(0, 0)], Exact::one());
        assert_eq!(dual[(0, 1)], Exact::new(-1, 7));
        assert_eq!(dual[(1, 0)], Exact::new(-1, 7));
        assert_eq!(dual[(1, 1)], Exact::new(2, 49));
    }

    #[test]
    fn contraction_squares_to_d() {
        let alg = Algebra::<Exact>::build(AlgebraType::brauer(2), &Rational::from(9)).unwrap();
        let e1 = generator(alg.ty(), Gen::e(1)).unwrap();
        let x = Element::from_diagram(&alg, &e1).unwrap();
        let sq = alg.mul(&x, &x).unwrap();
        assert_eq!(sq, x.scale(&Exact::from_i64(9)));
    }

    #[test]
    fn regular_trace_of_identity_is_dimension() {
        let alg = Algebra::<Exact>::build(AlgebraType::partition(2), &Rational::from(16)).unwrap();
        let one = alg.one().unwrap();
        assert_eq!(alg.trace(&one).unwrap(), Exact::from_i64(15));
        assert_eq!(alg.left_regular(&one).unwrap(), Mat::identity(15));
    }

    #[test]
    fn inadmissible_values_rejected() {
        assert!(check_admissible(AlgebraType::partition(2), &Rational::from(2)).is_err());
        assert!(check_admissible(AlgebraType::partition(2), &Rational::from(3)).is_ok());
        assert!(check_admissible(AlgebraType::brauer(3), &Rational::from(3)).is_err());
        assert!(check_admissible(AlgebraType::brauer(3), &Rational::from((7, 2))).is_ok());
    }

    #[test]
    fn schur_diagonal_is_d_to_the_n() {
        let alg = Algebra::<Exact>::build(AlgebraType::partition(2), &Rational::from(4)).unwrap();
        for i in 0..alg.dim() {
            assert_eq!(alg.schur_basis(i, i).unwrap(), Exact::from_i64(16));
        }
    }
}
