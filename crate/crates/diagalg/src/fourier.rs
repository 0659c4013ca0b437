//! Fourier basis elements, the normalized transform `FT_A` and its
//! approximation `F̃T_A`, niceness, norm and concentration measurements.
//!
//! For an irrep `ρ` and Bratteli paths `P, Q` ending at `ρ`,
//! `E^ρ_{PQ} = d_ρ Σ_a ρ(a*)_{QP} a`, where `a*` runs over the dual basis of
//! the regular trace form. Norms and `FT_A` use the computational inner
//! product, for which the (scaled) diagram basis is orthonormal.

use std::sync::Arc;

use rug::Rational;
use serde::Serialize;

use crate::algebra::{check_admissible, Algebra, Basis, Element, Scaling};
use crate::diagram::{AlgebraType, Diagram};
use crate::error::{Error, Result};
use crate::forms::{generators_of, FormBasis, IrrepSystem};
use crate::irreps::{schur_multiplicity, Label, Path};
use crate::linalg::Mat;
use crate::par;
use crate::scalar::{DParam, Real, Scalar};

/// Index triple `(ρ, P, Q)`: `irrep` indexes the top-level labels, `p` and
/// `q` index the paths ending there.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FourierLabel {
    pub irrep: usize,
    pub p: usize,
    pub q: usize,
}

/// Which transform matrix to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `FT_A`: rows are the normalized Fourier elements.
    Exact,
    /// `F̃T_A |a⟩ = Σ ‖E^ρ_{PQ}‖ ρ(a)_{PQ} |ρ,P,Q⟩`.
    Tilde,
}

impl Variant {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Variant::Exact),
            "tilde" => Ok(Variant::Tilde),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// All Fourier data of one algebra at one value of `d`.
#[derive(Clone, Debug)]
pub struct Fourier<T: Scalar> {
    alg: Algebra<T>,
    sys: IrrepSystem<T>,
    labels: Vec<FourierLabel>,
    /// `rho[k][j] = ρ_k(a_j)`.
    rho: Vec<Vec<Mat<T>>>,
    /// Row `ℓ` holds the basis coefficients of `E_ℓ`.
    coeffs: Mat<T>,
    norms_sq: Vec<T>,
}

impl<T: Scalar> Fourier<T> {
    /// Fourier data on the scaled diagram basis, orthogonal irrep form.
    pub fn build(ty: AlgebraType, d: &Rational) -> Result<Self> {
        Self::build_with(ty, d, Scaling::Scaled, FormBasis::Orthogonal)
    }

    pub fn build_with(ty: AlgebraType, d: &Rational, scaling: Scaling, form: FormBasis) -> Result<Self> {
        Self::from_basis(Basis::new(ty, scaling)?, d, form)
    }

    /// Fourier data for an explicitly ordered basis.
    pub fn from_basis(basis: Arc<Basis>, d: &Rational, form: FormBasis) -> Result<Self> {
        let ty = basis.ty();
        check_admissible(ty, d)?;
        let alg = Algebra::new(basis, DParam::new(d)?);
        let sys = IrrepSystem::<T>::build(ty, d, form)?;
        let rho = sys.of_basis(alg.basis())?;
        let mut labels = Vec::new();
        for (k, f) in sys.forms().iter().enumerate() {
            for p in 0..f.dim() {
                for q in 0..f.dim() {
                    labels.push(FourierLabel { irrep: k, p, q });
                }
            }
        }
        let m = alg.dim();
        if labels.len() != m {
            return Err(Error::Invariant(format!("{} Fourier labels for an algebra of dimension {m}", labels.len())));
        }
        // coeffsᵀ = D⁻¹ · V · diag(d_ρ) with V[j, (ρ,P,Q)] = ρ(a_j)_{QP}.
        let dual = alg.dual_basis_matrix()?;
        let v = Mat::from_fn(m, m, |j, l| {
            let lab = labels[l];
            rho[lab.irrep][j][(lab.q, lab.p)].clone()
        });
        let dims: Vec<T> = labels.iter().map(|l| T::from_i64(sys.forms()[l.irrep].dim() as i64)).collect();
        let ct = dual.mul(&v);
        let coeffs = Mat::from_fn(m, m, |l, i| ct[(i, l)].clone() * &dims[l]);
        let norms_sq = (0..m)
            .map(|l| {
                let mut s = T::zero();
                for x in coeffs.row(l) {
                    s.mul_add_assign(x, x);
                }
                s
            })
            .collect();
        Ok(Fourier { alg, sys, labels, rho, coeffs, norms_sq })
    }

    pub fn algebra(&self) -> &Algebra<T> {
        &self.alg
    }

    pub fn ty(&self) -> AlgebraType {
        self.alg.ty()
    }

    pub fn irreps(&self) -> &IrrepSystem<T> {
        &self.sys
    }

    pub fn labels(&self) -> &[FourierLabel] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn irrep_label(&self, l: FourierLabel) -> &Label {
        &self.sys.forms()[l.irrep].label
    }

    pub fn paths(&self, l: FourierLabel) -> (&Path, &Path) {
        let f = &self.sys.forms()[l.irrep];
        (&f.paths[l.p], &f.paths[l.q])
    }

    pub fn index_of(&self, l: FourierLabel) -> Option<usize> {
        self.labels.binary_search(&l).ok()
    }

    /// `ρ_k(a_j)`.
    pub fn rho(&self, k: usize, j: usize) -> &Mat<T> {
        &self.rho[k][j]
    }

    /// Coefficient matrix: row `ℓ` is `E_ℓ` in the basis.
    pub fn coefficients(&self) -> &Mat<T> {
        &self.coeffs
    }

    pub fn element(&self, l: usize) -> Element<T> {
        Element::from_dense(self.alg.basis(), self.coeffs.row(l))
    }

    /// `‖E_ℓ‖²` under the computational inner product.
    pub fn norms_sq(&self) -> &[T] {
        &self.norms_sq
    }

    pub fn norm(&self, l: usize) -> Result<T> {
        self.norms_sq[l].sqrt()
    }

    /// The transform matrix, rows indexed by Fourier labels and columns by
    /// basis elements.
    pub fn ft_matrix(&self, variant: Variant) -> Result<Mat<T>> {
        let m = self.dim();
        let norms: Vec<T> = (0..m).map(|l| self.norm(l)).collect::<Result<_>>()?;
        Ok(match variant {
            Variant::Exact => Mat::from_fn(m, m, |l, j| self.coeffs[(l, j)].clone() / &norms[l]),
            Variant::Tilde => Mat::from_fn(m, m, |l, j| {
                let lab = self.labels[l];
                self.rho[lab.irrep][j][(lab.p, lab.q)].clone() * &norms[l]
            }),
        })
    }

    /// Gram matrix of the normalized Fourier elements under `⟨·,·⟩_0`.
    pub fn niceness_gram(&self) -> Result<Mat<T>> {
        let f = self.ft_matrix(Variant::Exact)?;
        Ok(f.mul(&f.transpose()))
    }

    /// `‖G − I‖_∞` (largest singular value).
    pub fn niceness_delta(&self) -> Result<Real> {
        let g = self.niceness_gram()?;
        Ok(g.sub(&Mat::identity(g.rows())).op_norm())
    }

    /// `‖FT_A − F̃T_A‖_∞`.
    pub fn ft_distance(&self) -> Result<Real> {
        Ok(self.ft_matrix(Variant::Exact)?.sub(&self.ft_matrix(Variant::Tilde)?).op_norm())
    }

    /// Schur multiplicity of each irrep.
    pub fn multiplicities(&self) -> Result<Vec<Rational>> {
        let d = &self.alg.param().rational;
        self.sys.forms().iter().map(|f| schur_multiplicity(self.ty(), &f.label, d)).collect()
    }

    /// `‖E_ℓ‖² · d^n / m_ρ` for every label. The Schur form satisfies
    /// `⟨E,E⟩_S = m_ρ` and `⟨·,·⟩_S ≈ d^n ⟨·,·⟩_0` on the scaled basis, so
    /// these ratios tend to 1.
    pub fn norm_ratios(&self) -> Result<Vec<T>> {
        let ms = self.multiplicities()?;
        let dn = self.alg.d().powi(self.ty().n as i32);
        Ok(self
            .labels
            .iter()
            .zip(&self.norms_sq)
            .map(|(l, n2)| n2.clone() * &dn / &T::from_rational(&ms[l.irrep]))
            .collect())
    }

    /// `max_ℓ |‖E_ℓ‖² d^n / m_ρ − 1|`.
    pub fn norm_deviation(&self) -> Result<f64> {
        Ok(self.norm_ratios()?.iter().map(|r| (r.clone() - &T::one()).to_f64().abs()).fold(0.0, f64::max))
    }

    /// The product `‖E_ℓ‖² · m_ρ / d^n` taken literally; it tends to
    /// `m_ρ² / d^{2n}` rather than 1 and is reported for comparison only.
    pub fn literal_norm_products(&self) -> Result<Vec<T>> {
        let ms = self.multiplicities()?;
        let dn = self.alg.d().powi(self.ty().n as i32);
        Ok(self
            .labels
            .iter()
            .zip(&self.norms_sq)
            .map(|(l, n2)| n2.clone() * &T::from_rational(&ms[l.irrep]) / &dn)
            .collect())
    }

    /// Concentration of `F̃T_A |a_j⟩` on labels with `|ρ| = pn(D_j)`.
    pub fn concentration(&self) -> Result<Vec<Concentration>> {
        let tilde = self.ft_matrix(Variant::Tilde)?;
        let basis = self.alg.basis();
        Ok((0..self.dim())
            .map(|j| {
                let pn = basis.diagram(j).propagating_number();
                let (mut total, mut on, mut above) = (T::zero(), T::zero(), T::zero());
                for (l, lab) in self.labels.iter().enumerate() {
                    let x = &tilde[(l, j)];
                    let sq = x.clone() * x;
                    let size = self.irrep_label(*lab).size();
                    if size == pn {
                        on += &sq;
                    } else if size > pn {
                        above += &sq;
                    }
                    total += sq;
                }
                Concentration { pn, defect: (total - on).to_f64(), above: above.to_f64() }
            })
            .collect())
    }

    /// `max |d_ρ Σ_a ρ(a*)_{QP} σ(a)_{RS} − δ_{ρσ}δ_{PR}δ_{QS}|`, i.e. every
    /// irrep sends each Fourier element to the matching matrix unit.
    pub fn schur_orthogonality_residual(&self) -> f64 {
        let m = self.dim();
        let rows = par::map_range(m, |l| {
            let mut worst = 0f64;
            for (l2, lab) in self.labels.iter().enumerate() {
                let mut acc = T::zero();
                for j in 0..m {
                    let c = &self.coeffs[(l, j)];
                    if !c.is_zero() {
                        acc.mul_add_assign(c, &self.rho[lab.irrep][j][(lab.p, lab.q)]);
                    }
                }
                if l == l2 {
                    acc -= &T::one();
                }
                worst = worst.max(acc.to_f64().abs());
            }
            worst
        });
        rows.into_iter().fold(0.0, f64::max)
    }

    /// `max |E^ρ_{PQ} E^σ_{RS} − δ_{ρσ} δ_{QR} E^ρ_{PS}|` using the algebra's
    /// own multiplication (independent of the irrep matrices).
    pub fn matrix_unit_residual(&self) -> Result<f64> {
        let m = self.dim();
        let elems: Vec<Element<T>> = (0..m).map(|l| self.element(l)).collect();
        let rows = par::try_map_range(m, |a| {
            let mut worst = 0f64;
            let la = self.labels[a];
            for (b, lb) in self.labels.iter().enumerate() {
                let prod = self.alg.mul(&elems[a], &elems[b])?;
                let expect = if la.irrep == lb.irrep && la.q == lb.p {
                    let idx = self
                        .index_of(FourierLabel { irrep: la.irrep, p: la.p, q: lb.q })
                        .ok_or_else(|| Error::Invariant("missing Fourier label".into()))?;
                    elems[idx].clone()
                } else {
                    Element::zero(self.alg.basis())
                };
                worst = worst.max(prod.max_abs_diff(&expect));
            }
            Ok::<_, Error>(worst)
        })?;
        Ok(rows.into_iter().fold(0.0, f64::max))
    }

    /// `max |a E^ρ_{PQ} − Σ_R ρ(a)_{RP} E^ρ_{RQ}|` over the generators `a`.
    pub fn left_covariance_residual(&self) -> Result<f64> {
        let ty = self.ty();
        let mut worst = 0f64;
        for g in generators_of(ty) {
            let diagram = crate::diagram::generator(ty, g)?;
            let a = Element::from_diagram(&self.alg, &diagram)?;
            let rho_a: Vec<Mat<T>> = (0..self.sys.forms().len())
                .map(|k| self.sys.of_diagram(k, &diagram))
                .collect::<Result<_>>()?;
            for (l, lab) in self.labels.iter().enumerate() {
                let lhs = self.alg.mul(&a, &self.element(l))?;
                let mut rhs = Element::zero(self.alg.basis());
                for r in 0..self.sys.forms()[lab.irrep].dim() {
                    let c = &rho_a[lab.irrep][(r, lab.p)];
                    if c.is_zero() {
                        continue;
                    }
                    let idx = self.index_of(FourierLabel { irrep: lab.irrep, p: r, q: lab.q }).expect("label exists");
                    rhs = rhs.add(&self.element(idx).scale(c))?;
                }
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok(worst)
    }

    /// `max |⟨E_ℓ, E_ℓ'⟩_S / m_ρ − δ_{ℓℓ'}|`.
    pub fn schur_inner_residual(&self) -> Result<f64> {
        let sg = self.alg.schur_gram()?;
        let g = self.coeffs.mul(&sg).mul(&self.coeffs.transpose());
        let ms = self.multiplicities()?;
        let mut worst = 0f64;
        for (l, lab) in self.labels.iter().enumerate() {
            let m = T::from_rational(&ms[lab.irrep]);
            for l2 in 0..self.dim() {
                let mut v = g[(l, l2)].clone() / &m;
                if l == l2 {
                    v -= &T::one();
                }
                worst = worst.max(v.to_f64().abs());
            }
        }
        Ok(worst)
    }

    /// Fourier coefficients obtained by inverting the map
    /// `a ↦ ⊕_ρ ρ(a)` directly: a second route to the same elements.
    pub fn coefficients_by_inversion(&self) -> Result<Mat<T>> {
        let m = self.dim();
        let big = Mat::from_fn(m, m, |l, j| {
            let lab = self.labels[l];
            self.rho[lab.irrep][j][(lab.p, lab.q)].clone()
        });
        Ok(big.inverse()?.transpose())
    }

    /// Fourier data of the same algebra with another diagram order must give
    /// the same elements; returns the largest coefficient difference.
    pub fn reordered_residual(&self, order: &[usize]) -> Result<f64> {
        let diagrams: Vec<Diagram> = order.iter().map(|&i| self.alg.basis().diagram(i).clone()).collect();
        let basis = Arc::new(Basis::from_diagrams(self.ty(), self.alg.basis().scaling(), diagrams));
        let other = Fourier::<T>::from_basis(basis, &self.alg.param().rational, self.sys.basis())?;
        let mut worst = 0f64;
        for l in 0..self.dim() {
            for (new_j, &old_j) in order.iter().enumerate() {
                let diff = other.coeffs[(l, new_j)].clone() - &self.coeffs[(l, old_j)];
                worst = worst.max(diff.to_f64().abs());
            }
        }
        Ok(worst)
    }
}

/// Weight of `F̃T_A|a⟩` off the labels with `|ρ| = pn(D)`.
#[derive(Clone, Debug, Serialize)]
pub struct Concentration {
    pub pn: usize,
    /// `⟨ã,ã⟩ − ⟨ã|Π_pn|ã⟩`.
    pub defect: f64,
    /// Weight on labels with `|ρ| > pn(D)`; zero in theory.
    pub above: f64,
}

/// Residual of the restriction rule: a subalgebra Fourier element, pushed
/// into the algebra, equals the sum of the algebra's Fourier elements
/// `E^ρ_{P∘ρ, Q∘ρ}` over the parents `ρ` of its irrep.
pub fn restriction_residual<T: Scalar>(sub: &Fourier<T>, full: &Fourier<T>) -> Result<f64> {
    let chain = full.irreps().chain();
    let top = chain.top();
    if top == 0 || chain.level_type(top - 1) != sub.ty() {
        return Err(Error::Mismatch(format!("{} is not the next subalgebra below {}", sub.ty(), full.ty())));
    }
    let fty = full.ty();
    let fbasis = full.algebra().basis();
    let sbasis = sub.algebra().basis();
    // Column map: each subalgebra diagram (with an identity column added)
    // and the ratio of scaled-basis factors.
    let mut cols = Vec::with_capacity(sbasis.len());
    for j in 0..sbasis.len() {
        let d = sbasis.diagram(j);
        let big = if d.n() == fty.n { d.retag(fty)? } else { d.extend_identity(fty) };
        let idx = fbasis.index_of(&big).ok_or_else(|| Error::Invariant(format!("{big} missing from {fty}")))?;
        let t = fbasis.scale_exp(idx) - sbasis.scale_exp(j);
        cols.push((idx, full.algebra().t_pow(-t)?));
    }
    let mut worst = 0f64;
    for (l, lab) in sub.labels().iter().enumerate() {
        let (p, q) = sub.paths(*lab);
        let mut embedded = vec![T::zero(); full.dim()];
        for (j, (idx, f)) in cols.iter().enumerate() {
            embedded[*idx] += sub.coefficients()[(l, j)].clone() * f;
        }
        let mut sum = vec![T::zero(); full.dim()];
        for (l2, lab2) in full.labels().iter().enumerate() {
            let (p2, q2) = full.paths(*lab2);
            if p2[..top] == p[..] && q2[..top] == q[..] {
                for (s, c) in sum.iter_mut().zip(full.coefficients().row(l2)) {
                    *s += c;
                }
            }
        }
        for (a, b) in embedded.iter().zip(&sum) {
            worst = worst.max((a.clone() - b).to_f64().abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Family;
    use crate::scalar::{set_precision_bits, Exact};

    fn q(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn p1_unscaled_worked_example() {
        let d = q(1_000_000);
        let f = Fourier::<Exact>::build_with(AlgebraType::partition(1), &d, Scaling::Unscaled, FormBasis::Orthogonal).unwrap();
        // Labels: ∅ then □; basis: identity then the point diagram.
        let basis = f.algebra().basis();
        let id = basis.index_of(&Diagram::identity(f.ty())).unwrap();
        let pt = 1 - id;
        let c = f.coefficients();
        assert_eq!(c[(0, id)], Exact::zero());
        assert_eq!(c[(0, pt)], Exact(Rational::from((1, 1_000_000))));
        assert_eq!(c[(1, id)], Exact::one());
        assert_eq!(c[(1, pt)], Exact(Rational::from((-1, 1_000_000))));
        assert_eq!(f.norms_sq()[1], Exact((d.clone() * &d + 1u32) / (d.clone() * &d)));
    }

    #[test]
    fn symmetric_is_unitary_and_normed() {
        set_precision_bits(256);
        let f = Fourier::<Real>::build(AlgebraType::symmetric(3), &q(10_000)).unwrap();
        assert!(f.niceness_delta().unwrap().to_f64() < 1e-40);
        for (l, n2) in f.norms_sq().iter().enumerate() {
            let dim = f.irreps().forms()[f.labels()[l].irrep].dim() as f64;
            assert!((n2.to_f64() - dim / 6.0).abs() < 1e-30);
        }
        assert!(f.ft_distance().unwrap().to_f64() < 1e-30);
    }

    #[test]
    fn two_routes_agree_on_b2() {
        set_precision_bits(256);
        let f = Fourier::<Real>::build(AlgebraType::brauer(2), &q(10_000)).unwrap();
        let other = f.coefficients_by_inversion().unwrap();
        assert!(f.coefficients().max_abs_diff(&other) < 1e-40);
        assert!(f.schur_orthogonality_residual() < 1e-40);
        assert!(f.matrix_unit_residual().unwrap() < 1e-40);
        assert!(f.left_covariance_residual().unwrap() < 1e-40);
        assert!(f.schur_inner_residual().unwrap() < 1e-30);
        let order: Vec<usize> = (0..f.dim()).rev().collect();
        assert!(f.reordered_residual(&order).unwrap() < 1e-40);
    }

    #[test]
    fn restriction_b2_in_b3() {
        set_precision_bits(256);
        let d = q(10_000);
        let sub = Fourier::<Real>::build(AlgebraType::brauer(2), &d).unwrap();
        let full = Fourier::<Real>::build(AlgebraType::brauer(3), &d).unwrap();
        assert!(restriction_residual(&sub, &full).unwrap() < 1e-30);
        assert_eq!(full.ty().family, Family::Brauer);
    }

    #[test]
    fn concentration_zero_above_pn() {
        set_precision_bits(256);
        let f = Fourier::<Real>::build(AlgebraType::partition(2), &q(10_000)).unwrap();
        for c in f.concentration().unwrap() {
            assert!(c.above < 1e-40, "{c:?}");
            assert!(c.defect < 1e-2);
        }
    }
}
