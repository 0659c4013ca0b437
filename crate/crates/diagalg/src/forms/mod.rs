//! Irrep matrices of generators in the seminormal and orthogonal bases, and
//! evaluation of `ρ(D)` for arbitrary diagrams and algebra elements.
//!
//! Rows and columns of every matrix are indexed by the Bratteli paths of
//! [`Chain::paths_to`], in that order.

pub mod brauer;
pub mod check;
pub mod partition;
pub mod solve;
pub mod words;

use std::collections::BTreeMap;
use std::sync::Arc;

use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::algebra::{Basis, Element};
use crate::diagram::{AlgebraType, Diagram, Family, Gen};
use crate::error::{Error, Result};
use crate::irreps::{Chain, Label, Path};
use crate::linalg::Mat;
use crate::par;
use crate::scalar::{DParam, Exact, Scalar};

pub use words::{evaluate_word, factor_to_generators, generators_of, Factorization, WordTable};

/// Which basis of the irrep space a matrix is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormBasis {
    Seminormal,
    Orthogonal,
}

impl FormBasis {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "seminormal" => Ok(FormBasis::Seminormal),
            "orthogonal" => Ok(FormBasis::Orthogonal),
            other => Err(Error::Parse(format!("unknown basis {other:?}"))),
        }
    }
}

/// Generator matrices of one irrep.
#[derive(Clone, Debug)]
pub struct IrrepForm<T: Scalar> {
    pub label: Label,
    pub paths: Vec<Path>,
    pub basis: FormBasis,
    pub gens: BTreeMap<Gen, Mat<T>>,
    /// Squared path norms `⟨P,P⟩` (partition family only).
    pub norms: Option<Vec<Rational>>,
}

impl<T: Scalar> IrrepForm<T> {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn generator(&self, g: Gen) -> Result<&Mat<T>> {
        self.gens.get(&g).ok_or_else(|| Error::OutOfRange(format!("generator {g} for irrep {}", self.label)))
    }

    /// `ρ(D)` from a factorization: the word's product divided by `d^removed`.
    pub fn eval(&self, f: &Factorization, d: &T) -> Result<Mat<T>> {
        let mut acc = Mat::identity(self.dim());
        for g in &f.word {
            acc = acc.mul(self.generator(*g)?);
        }
        Ok(acc.scale(&d.powi(-(f.removed as i32))))
    }
}

fn convert<T: Scalar>(m: &Mat<Exact>) -> Mat<T> {
    Mat::from_fn(m.rows(), m.cols(), |r, c| T::from_rational(&m[(r, c)].0))
}

/// Rescales a seminormal matrix to the orthogonal basis: entry `(Q, P)` is
/// multiplied by `√(⟨Q,Q⟩/⟨P,P⟩)`.
fn orthogonalize<T: Scalar>(m: &Mat<Exact>, norms: &[Rational]) -> Result<Mat<T>> {
    let mut out = Mat::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if m[(r, c)].is_zero() {
                continue;
            }
            let ratio = Rational::from(&norms[r] / &norms[c]);
            if ratio <= 0 {
                return Err(Error::NegativeRadicand(ratio.to_f64()));
            }
            let f = T::from_rational(&ratio).sqrt()?;
            out[(r, c)] = T::from_rational(&m[(r, c)].0) * &f;
        }
    }
    Ok(out)
}

fn partition_form<T: Scalar>(label: &Label, paths: Vec<Path>, d: &Rational, basis: FormBasis) -> Result<IrrepForm<T>> {
    let shapes: Vec<partition::Shapes> = paths.iter().map(partition::shapes).collect();
    let semi = partition::seminormal(&shapes, d)?;
    let conv = |m: &Mat<Exact>| -> Result<Mat<T>> {
        match basis {
            FormBasis::Seminormal => Ok(convert(m)),
            FormBasis::Orthogonal => orthogonalize(m, &semi.norms),
        }
    };
    let mut gens = BTreeMap::new();
    for (i, m) in &semi.b {
        gens.insert(Gen::b(*i), conv(m)?);
    }
    for (i, m) in &semi.p {
        gens.insert(Gen::p(*i), conv(m)?);
    }
    for (i, m) in &semi.s {
        gens.insert(Gen::s(*i), conv(m)?);
    }
    Ok(IrrepForm { label: label.clone(), paths, basis, gens, norms: Some(semi.norms) })
}

/// Restricts a form to the rows/columns listed in `keep`, relabelling paths.
fn restrict<T: Scalar>(form: &IrrepForm<T>, keep: &[usize], label: &Label, paths: Vec<Path>, gens: &[Gen]) -> Result<IrrepForm<T>> {
    let mut out = BTreeMap::new();
    for g in gens {
        let m = form.generator(*g)?;
        out.insert(*g, Mat::from_fn(keep.len(), keep.len(), |r, c| m[(keep[r], keep[c])].clone()));
    }
    let norms = form.norms.as_ref().map(|n| keep.iter().map(|&k| n[k].clone()).collect());
    Ok(IrrepForm { label: label.clone(), paths, basis: form.basis, gens: out, norms })
}

/// Generator matrices of the irrep `label` of the chain's top algebra.
pub fn irrep_form<T: Scalar>(chain: &Chain, label: &Label, d: &Rational, basis: FormBasis) -> Result<IrrepForm<T>> {
    let ty = chain.ty();
    let paths = chain.paths_to(label).to_vec();
    if paths.is_empty() {
        return Err(Error::Mismatch(format!("{label} is not an irrep of {ty}")));
    }
    let orthogonal_only = |fam: &str| {
        if basis == FormBasis::Seminormal {
            Err(Error::Unsupported(format!("seminormal basis for the {fam} family")))
        } else {
            Ok(())
        }
    };
    match ty.family {
        Family::Partition => partition_form(label, paths, d, basis),
        Family::Half => {
            // Restriction of the smallest parent irrep of P_n.
            let full = Chain::new(AlgebraType::partition(ty.n))?;
            let top = chain.top();
            let parent = full.parents(top, label).into_iter().next().ok_or_else(|| {
                Error::Invariant(format!("{label} has no parent in {}", full.ty()))
            })?;
            let form = partition_form::<T>(&parent, full.paths_to(&parent).to_vec(), d, basis)?;
            let keep: Vec<usize> =
                (0..form.dim()).filter(|&k| &form.paths[k][top] == label).collect();
            let sub_paths: Vec<Path> = keep.iter().map(|&k| form.paths[k][..=top].to_vec()).collect();
            if sub_paths != paths {
                return Err(Error::Invariant("restricted paths out of order".into()));
            }
            restrict(&form, &keep, label, paths, &generators_of(ty))
        }
        Family::Brauer => {
            orthogonal_only("Brauer")?;
            let gens = brauer::brauer(&paths, ty.n, d)?;
            Ok(IrrepForm { label: label.clone(), paths, basis, gens, norms: None })
        }
        Family::Symmetric => {
            let gens = brauer::symmetric(&paths, ty.n, basis == FormBasis::Seminormal)?;
            Ok(IrrepForm { label: label.clone(), paths, basis, gens, norms: None })
        }
        Family::Walled => {
            orthogonal_only("walled Brauer")?;
            let (r, s) = ty.wall.ok_or_else(|| Error::Mismatch("walled type without wall".into()))?;
            if r <= s {
                let gens = brauer::walled_native(&paths, r, s, d)?;
                return Ok(IrrepForm { label: label.clone(), paths, basis, gens, norms: None });
            }
            // Mirror columns j ↦ n+1−j: B_{r,s} ≅ B_{s,r}, labels (λ,μ) ↦ (μ,λ).
            let mirror = Chain::new(AlgebraType::walled(s, r))?;
            let mlabel = label.mirrored();
            let mpaths = mirror.paths_to(&mlabel);
            let mgens = brauer::walled_native::<T>(mpaths, s, r, d)?;
            let perm: Vec<usize> = paths
                .iter()
                .map(|p| {
                    let mp = brauer::mirror_path(p);
                    mpaths.iter().position(|x| *x == mp).ok_or_else(|| Error::Invariant("mirrored path missing".into()))
                })
                .collect::<Result<_>>()?;
            let n = ty.n;
            let mut gens = BTreeMap::new();
            for g in generators_of(ty) {
                let mg = Gen { kind: g.kind, i: n - g.i };
                let m = mgens.get(&mg).ok_or_else(|| Error::Invariant(format!("mirror generator {mg} missing")))?;
                gens.insert(g, Mat::from_fn(perm.len(), perm.len(), |a, b| m[(perm[a], perm[b])].clone()));
            }
            Ok(IrrepForm { label: label.clone(), paths, basis, gens, norms: None })
        }
    }
}

/// Unit vector spanning the `+1` eigenspace of `λ(b_i)` on the class of
/// paths agreeing with `paths[p]` away from level `2i` (orthogonal basis).
/// Returns the class members and the nonnegative coefficients.
pub fn bridge_plus_eigenvector<T: Scalar>(form: &IrrepForm<T>, i: usize, p: usize) -> Result<(Vec<usize>, Vec<T>)> {
    if form.basis != FormBasis::Orthogonal {
        return Err(Error::Unsupported("the +1 eigenvector is defined in the orthogonal basis".into()));
    }
    let path = &form.paths[p];
    if path[2 * i - 1] != path[2 * i + 1] {
        return Err(Error::ZeroEigenspace(format!("b_{i} vanishes on the class of path {p}")));
    }
    let b = form.generator(Gen::b(i))?;
    let class: Vec<usize> = (0..form.dim())
        .filter(|&k| form.paths[k].iter().zip(path).enumerate().all(|(l, (x, y))| l == 2 * i || x == y))
        .collect();
    let coeffs = class.iter().map(|&k| b[(k, k)].sqrt()).collect::<Result<Vec<T>>>()?;
    Ok((class, coeffs))
}

/// All irreps of an algebra with their generator matrices and the word table
/// used to evaluate arbitrary diagrams.
#[derive(Clone, Debug)]
pub struct IrrepSystem<T: Scalar> {
    chain: Chain,
    param: DParam<T>,
    basis: FormBasis,
    forms: Vec<IrrepForm<T>>,
    table: Arc<WordTable>,
}

impl<T: Scalar> IrrepSystem<T> {
    pub fn build(ty: AlgebraType, d: &Rational, basis: FormBasis) -> Result<Self> {
        let chain = Chain::new(ty)?;
        let labels = chain.labels().to_vec();
        let forms = par::try_map_range(labels.len(), |k| irrep_form::<T>(&chain, &labels[k], d, basis))?;
        let table = WordTable::cached(ty)?;
        Ok(IrrepSystem { chain, param: DParam::new(d)?, basis, forms, table })
    }

    pub fn ty(&self) -> AlgebraType {
        self.chain.ty()
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn param(&self) -> &DParam<T> {
        &self.param
    }

    pub fn basis(&self) -> FormBasis {
        self.basis
    }

    pub fn forms(&self) -> &[IrrepForm<T>] {
        &self.forms
    }

    pub fn form(&self, label: &Label) -> Option<&IrrepForm<T>> {
        self.forms.iter().find(|f| &f.label == label)
    }

    pub fn table(&self) -> &WordTable {
        &self.table
    }

    /// `ρ_k(D)` for every node of the word table, in table order.
    pub fn node_matrices(&self, k: usize) -> Result<Vec<Mat<T>>> {
        let form = &self.forms[k];
        let d = &self.param.d;
        let mut out: Vec<Mat<T>> = Vec::with_capacity(self.table.nodes().len());
        for node in self.table.nodes() {
            let m = match node.parent {
                None => Mat::identity(form.dim()),
                Some((parent, g)) => {
                    let prod = out[parent].mul(form.generator(g)?);
                    if node.step_removed == 0 {
                        prod
                    } else {
                        prod.scale(&d.powi(-(node.step_removed as i32)))
                    }
                }
            };
            out.push(m);
        }
        Ok(out)
    }

    /// `ρ_k(D)` for a single diagram.
    pub fn of_diagram(&self, k: usize, d: &Diagram) -> Result<Mat<T>> {
        self.forms[k].eval(&self.table.factorization(d)?, &self.param.d)
    }

    /// `ρ(â_j)` for every irrep `k` and every basis element `j` (scaled or
    /// unscaled according to the basis): `out[k][j]`.
    pub fn of_basis(&self, basis: &Basis) -> Result<Vec<Vec<Mat<T>>>> {
        if basis.ty() != self.ty() {
            return Err(Error::Mismatch(format!("basis of {} used with irreps of {}", basis.ty(), self.ty())));
        }
        let nodes = self.table.nodes();
        let lookup: Vec<usize> = basis
            .diagrams()
            .iter()
            .map(|d| self.table.index_of(d).ok_or_else(|| Error::Mismatch(format!("unknown diagram {d}"))))
            .collect::<Result<_>>()?;
        let scales: Vec<T> = (0..basis.len()).map(|j| self.param.t_pow(basis.scale_exp(j))).collect::<Result<_>>()?;
        par::try_map_range(self.forms.len(), |k| {
            let mats = self.node_matrices(k)?;
            debug_assert_eq!(mats.len(), nodes.len());
            Ok((0..basis.len()).map(|j| mats[lookup[j]].scale(&scales[j])).collect())
        })
    }

    /// `ρ_k(x)` for an algebra element.
    pub fn of_element(&self, k: usize, x: &Element<T>) -> Result<Mat<T>> {
        let basis = x.basis();
        let dim = self.forms[k].dim();
        let mut acc = Mat::zeros(dim, dim);
        for (j, c) in x.terms() {
            let m = self.of_diagram(k, basis.diagram(j))?;
            let s = self.param.t_pow(basis.scale_exp(j))? * c;
            acc.add_scaled_assign(&m, &s);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{set_precision_bits, Real};

    fn real(s: &str) -> Real {
        Real(rug::Float::with_val(256, rug::Float::parse(s).unwrap()))
    }

    #[test]
    fn p2_orthogonal_matches_explicit_matrices() {
        set_precision_bits(256);
        let d = Rational::from(100);
        let sys = IrrepSystem::<Real>::build(AlgebraType::partition(2), &d, FormBasis::Orthogonal).unwrap();
        let box1 = Label::Single(crate::irreps::Young::new(vec![1]).unwrap());
        let f = sys.form(&box1).unwrap();
        let s1 = f.generator(Gen::s(1)).unwrap();
        let r = |x: &str| real(x);
        let sq99 = r("99.0").0.sqrt();
        let sq98 = r("98.0").0.sqrt();
        let expect = [
            [Real::zero(), Real(Float::with_val(256, 1) / &sq99), Real(Float::with_val(256, &sq98 / &sq99))],
            [Real(Float::with_val(256, 1) / &sq99), Real::from_rational(&Rational::from((98, 99))), Real(-Float::with_val(256, &sq98 / 99u32))],
            [Real(Float::with_val(256, &sq98 / &sq99)), Real(-Float::with_val(256, &sq98 / 99u32)), Real::from_rational(&Rational::from((1, 99)))],
        ];
        for a in 0..3 {
            for b in 0..3 {
                assert!((s1[(a, b)].clone() - &expect[a][b]).to_f64().abs() < 1e-25, "({a},{b})");
            }
        }
    }

    use rug::Float;

    #[test]
    fn p1_orthogonal_is_exact() {
        let d = Rational::from(1_000_000);
        let sys = IrrepSystem::<Exact>::build(AlgebraType::partition(1), &d, FormBasis::Orthogonal).unwrap();
        let p = sys.forms()[0].generator(Gen::p(1)).unwrap();
        assert_eq!(p[(0, 0)], Exact(d.clone()));
        assert!(sys.forms()[1].generator(Gen::p(1)).unwrap().is_zero());
    }
}
