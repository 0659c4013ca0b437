//! Residual measurements for the defining relations, the homomorphism
//! property and the transpose symmetry of the orthogonal form.

use serde::Serialize;

use super::{evaluate_word, generators_of, IrrepSystem};
use crate::diagram::{AlgebraType, Family, Gen, GenKind};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::par;
use crate::scalar::Scalar;

/// A relation `lhs = rhs` between generator words (each side evaluated with
/// its own `d`-power removed).
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<Gen>,
    pub rhs: Vec<Gen>,
}

fn rel(name: impl Into<String>, lhs: Vec<Gen>, rhs: Vec<Gen>) -> Relation {
    Relation { name: name.into(), lhs, rhs }
}

/// The relation suite of an algebra: involutions, braids, idempotents and
/// the mixed point/bridge/swap relations, restricted to available generators.
pub fn relations(ty: AlgebraType) -> Vec<Relation> {
    let gens = generators_of(ty);
    let has = |g: Gen| gens.contains(&g);
    let mut out = Vec::new();
    for &g in &gens {
        match g.kind {
            GenKind::S => out.push(rel(format!("{g}^2 = 1"), vec![g, g], vec![])),
            GenKind::B => out.push(rel(format!("{g}^2 = {g}"), vec![g, g], vec![g])),
            GenKind::P | GenKind::E | GenKind::F => out.push(rel(format!("{g}^2 = d {g}"), vec![g, g], vec![g])),
        }
    }
    let n = ty.n;
    for i in 1..n {
        let (s, t) = (Gen::s(i), Gen::s(i + 1));
        if has(s) && has(t) {
            out.push(rel(format!("braid {i}"), vec![s, t, s], vec![t, s, t]));
        }
        if has(Gen::b(i)) && has(Gen::p(i)) {
            out.push(rel(format!("b{i} p{i} b{i} = b{i}"), vec![Gen::b(i), Gen::p(i), Gen::b(i)], vec![Gen::b(i)]));
        }
        if has(s) && has(Gen::p(i)) && has(Gen::p(i + 1)) {
            out.push(rel(format!("s{i} p{i} s{i} = p{}", i + 1), vec![s, Gen::p(i), s], vec![Gen::p(i + 1)]));
        }
        if ty.family == Family::Brauer && has(s) && has(Gen::e(i)) {
            out.push(rel(format!("s{i} e{i} = e{i}"), vec![s, Gen::e(i)], vec![Gen::e(i)]));
            if has(Gen::e(i + 1)) {
                out.push(rel(
                    format!("e{i} e{} e{i} = e{i}", i + 1),
                    vec![Gen::e(i), Gen::e(i + 1), Gen::e(i)],
                    vec![Gen::e(i)],
                ));
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationResidual {
    pub name: String,
    pub residual: f64,
}

fn word_matrix<T: Scalar>(sys: &IrrepSystem<T>, k: usize, word: &[Gen], removed: usize) -> Result<Mat<T>> {
    let form = &sys.forms()[k];
    let mut acc = Mat::identity(form.dim());
    for g in word {
        acc = acc.mul(form.generator(*g)?);
    }
    Ok(acc.scale(&sys.param().d.powi(-(removed as i32))))
}

/// Largest residual of every relation over all irreps. Each relation is
/// first confirmed at diagram level with the composition oracle.
pub fn relation_residuals<T: Scalar>(sys: &IrrepSystem<T>) -> Result<Vec<RelationResidual>> {
    let ty = sys.ty();
    relations(ty)
        .into_iter()
        .map(|r| {
            let (dl, cl) = evaluate_word(ty, &r.lhs)?;
            let (dr, cr) = evaluate_word(ty, &r.rhs)?;
            if dl != dr {
                return Err(Error::Invariant(format!("{} fails at diagram level", r.name)));
            }
            let mut worst = 0f64;
            for k in 0..sys.forms().len() {
                let a = word_matrix(sys, k, &r.lhs, cl)?;
                let b = word_matrix(sys, k, &r.rhs, cr)?;
                worst = worst.max(a.max_abs_diff(&b));
            }
            Ok(RelationResidual { name: r.name, residual: worst })
        })
        .collect()
}

/// `max |ρ(D₁)ρ(D₂) − d^c ρ(D₁∘D₂)|` over all pairs and irreps.
pub fn homomorphism_residual<T: Scalar>(sys: &IrrepSystem<T>) -> Result<f64> {
    let nodes = sys.table().nodes();
    let d = &sys.param().d;
    let per_irrep = par::try_map_range(sys.forms().len(), |k| {
        let mats = sys.node_matrices(k)?;
        let mut worst = 0f64;
        for (a, na) in nodes.iter().enumerate() {
            for (b, nb) in nodes.iter().enumerate() {
                let c = na.diagram.compose(&nb.diagram)?;
                let idx = sys.table().index_of(&c.diagram).ok_or_else(|| Error::Invariant("product left the basis".into()))?;
                let lhs = mats[a].mul(&mats[b]);
                let rhs = mats[idx].scale(&d.powi(c.removed as i32));
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        Ok::<_, Error>(worst)
    })?;
    Ok(per_irrep.into_iter().fold(0.0, f64::max))
}

/// `max |ρ(D^op) − ρ(D)ᵀ|` over all diagrams and irreps.
pub fn transpose_residual<T: Scalar>(sys: &IrrepSystem<T>) -> Result<f64> {
    let nodes = sys.table().nodes();
    let per_irrep = par::try_map_range(sys.forms().len(), |k| {
        let mats = sys.node_matrices(k)?;
        let mut worst = 0f64;
        for (a, na) in nodes.iter().enumerate() {
            let op = sys.table().index_of(&na.diagram.involution()).ok_or_else(|| Error::Invariant("involution left the basis".into()))?;
            worst = worst.max(mats[op].max_abs_diff(&mats[a].transpose()));
        }
        Ok::<_, Error>(worst)
    })?;
    Ok(per_irrep.into_iter().fold(0.0, f64::max))
}

/// `max |ρ(D)|` over diagrams with `pn(D) < |ρ|`; the theory says these
/// vanish identically.
pub fn low_propagation_residual<T: Scalar>(sys: &IrrepSystem<T>) -> Result<f64> {
    let nodes = sys.table().nodes();
    let mut worst = 0f64;
    for (k, form) in sys.forms().iter().enumerate() {
        let size = form.label.size();
        let mats = sys.node_matrices(k)?;
        for (a, na) in nodes.iter().enumerate() {
            if na.diagram.propagating_number() < size {
                worst = worst.max(mats[a].max_abs());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::FormBasis;
    use crate::scalar::{set_precision_bits, Real};
    use rug::Rational;

    fn sweep(ty: AlgebraType, basis: FormBasis) {
        set_precision_bits(256);
        let d = Rational::from(10_000);
        let sys = IrrepSystem::<Real>::build(ty, &d, basis).unwrap();
        for r in relation_residuals(&sys).unwrap() {
            assert!(r.residual < 1e-20, "{ty}: {} residual {}", r.name, r.residual);
        }
        let h = homomorphism_residual(&sys).unwrap();
        assert!(h < 1e-20, "{ty}: homomorphism residual {h}");
        let z = low_propagation_residual(&sys).unwrap();
        assert!(z < 1e-20, "{ty}: low propagation residual {z}");
        if basis == FormBasis::Orthogonal {
            let t = transpose_residual(&sys).unwrap();
            assert!(t < 1e-20, "{ty}: transpose residual {t}");
        }
    }

    #[test]
    fn partition_small() {
        sweep(AlgebraType::partition(1), FormBasis::Orthogonal);
        sweep(AlgebraType::partition(2), FormBasis::Orthogonal);
        sweep(AlgebraType::partition(2), FormBasis::Seminormal);
    }

    #[test]
    fn half_partition() {
        sweep(AlgebraType::half(1), FormBasis::Orthogonal);
        sweep(AlgebraType::half(2), FormBasis::Orthogonal);
        sweep(AlgebraType::half(3), FormBasis::Orthogonal);
    }

    #[test]
    fn brauer() {
        for n in 1..=4 {
            sweep(AlgebraType::brauer(n), FormBasis::Orthogonal);
        }
    }

    #[test]
    fn walled() {
        for (r, s) in [(0, 2), (1, 1), (1, 2), (2, 1), (1, 3), (3, 1)] {
            sweep(AlgebraType::walled(r, s), FormBasis::Orthogonal);
        }
    }

    #[test]
    fn symmetric() {
        sweep(AlgebraType::symmetric(3), FormBasis::Orthogonal);
        sweep(AlgebraType::symmetric(3), FormBasis::Seminormal);
        sweep(AlgebraType::symmetric(4), FormBasis::Orthogonal);
    }
}

#[cfg(test)]
mod slow {
    use super::*;
    use crate::forms::FormBasis;
    use crate::scalar::Real;

    #[test]
    fn partition_three() {
        let d = rug::Rational::from(10_000);
        let sys = IrrepSystem::<Real>::build(AlgebraType::partition(3), &d, FormBasis::Orthogonal).unwrap();
        for r in relation_residuals(&sys).unwrap() {
            assert!(r.residual < 1e-20, "{} residual {}", r.name, r.residual);
        }
        assert!(homomorphism_residual(&sys).unwrap() < 1e-20);
        assert!(transpose_residual(&sys).unwrap() < 1e-20);
    }
}
