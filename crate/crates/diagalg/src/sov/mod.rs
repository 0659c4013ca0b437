//! Separation-of-variables Fourier transform, simulated at the level of
//! ideal isometries acting on Fourier coefficients.
//!
//! The recursion descends the chain `A ⊃ B ⊃ …` to a one-dimensional
//! algebra. For each basis diagram `D` of `A` the last possible
//! factorization `D = w₁ D_b w₂` is taken, the transversal is written into a
//! control register, the subalgebra transform of `D_b` is applied
//! recursively, and Accumulate folds the register back into `⊥`. The result
//! is an isometry `U_alg`, compared entrywise against `F̃T_A` and `FT_A`.

pub mod factor;
pub mod ops;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rug::Rational;
use serde::Serialize;

use crate::diagram::{algebra_dimension, enumerate_basis, AlgebraType, Diagram, Family};
use crate::error::{Error, Result};
use crate::forms::{FormBasis, IrrepSystem};
use crate::fourier::{Fourier, Variant};
use crate::linalg::Mat;
use crate::par;
use crate::scalar::{precision_bits, Real, Scalar};

pub use factor::{audit, Case, FactorAudit, Factorization, Transversal, TransversalTable};
pub use ops::{Iso, Key, LabelSpace, OpKind, Pay, SimState, StepOps, BOT};

/// The algebras visited by the recursion, top first, ending at a
/// one-dimensional algebra.
pub fn recursion_types(ty: AlgebraType) -> Result<Vec<AlgebraType>> {
    let mut out = vec![ty];
    let mut cur = ty;
    while algebra_dimension(cur) > 1 {
        cur = factor::sub_step(cur)?.0;
        out.push(cur);
    }
    Ok(out)
}

/// `B_{r,s}` with `r > s` is run as `B_{s,r}` and relabeled.
fn mirror_target(ty: AlgebraType) -> Option<AlgebraType> {
    match (ty.family, ty.wall) {
        (Family::Walled, Some((r, s))) if r > s => Some(AlgebraType::walled(s, r)),
        _ => None,
    }
}

/// Reflects a diagram left to right (column `j ↦ n+1−j`).
pub fn mirror_diagram(d: &Diagram, target: AlgebraType) -> Diagram {
    let n = d.n();
    let lab = d.labels();
    let raw: Vec<usize> = (0..n).map(|j| lab[n - 1 - j] as usize).chain((0..n).map(|j| lab[2 * n - 1 - j] as usize)).collect();
    Diagram::from_labels(target, &raw)
}

/// Per-level outcome of the recursion.
#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub algebra: String,
    pub transversals: usize,
    /// `‖U_level − F̃T_level‖_∞`.
    pub alg_vs_tilde: f64,
    /// Largest isometry defect of the extension maps used at this level.
    pub extension_isometry: f64,
}

/// Trace of one basis diagram of the top algebra.
#[derive(Clone, Debug, Serialize)]
pub struct DiagramTrace {
    pub diagram: String,
    pub case: String,
    pub transversal: String,
    pub operator: String,
    pub d_power: usize,
    /// `‖U_alg|a⟩ − F̃T_A|a⟩‖₂`.
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SovNorms {
    pub alg_vs_tilde: f64,
    pub alg_vs_exact: f64,
    /// `max |U†U − I|`.
    pub unitarity: f64,
}

/// Error report of one simulated run.
#[derive(Clone, Debug, Serialize)]
pub struct SovReport {
    pub family: String,
    pub algebra: String,
    pub n: usize,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub d: String,
    pub precision_bits: u32,
    /// Set when the run went through the left-right mirror image.
    pub mirrored_from: Option<String>,
    /// Extension images are renormalized to unit length.
    pub embedding_normalization: String,
    pub norms: SovNorms,
    pub levels: Vec<LevelReport>,
    pub per_diagram: Vec<DiagramTrace>,
}

/// One point of a decay sweep.
#[derive(Clone, Debug, Serialize)]
pub struct DecayPoint {
    pub d: String,
    pub alg_vs_tilde: f64,
    pub alg_vs_exact: f64,
    pub unitarity: f64,
}

/// Successive ratios `e_{k+1}/e_k`.
pub fn decay_ratios(points: &[DecayPoint]) -> Vec<f64> {
    points.windows(2).map(|w| w[1].alg_vs_tilde / w[0].alg_vs_tilde).collect()
}

/// Columns of `U` for one algebra of the recursion, keyed by diagram.
type Columns = HashMap<Diagram, SimState>;

struct LevelRun {
    ops: StepOps,
    cols: Columns,
    traces: HashMap<Diagram, (usize, usize)>,
}

fn run_level(level: usize, ty: AlgebraType, below: &Columns, d: &Rational) -> Result<LevelRun> {
    let table = TransversalTable::new(ty)?;
    let sys = IrrepSystem::<Real>::build(ty, d, FormBasis::Orthogonal)?;
    let ops = StepOps::new(level, table, &sys, d)?;
    let basis = enumerate_basis(ty, usize::MAX)?;
    let rows = par::try_map_range(basis.len(), |j| {
        let dia = &basis[j];
        let f = ops.table.last_possible_factorization(dia)?;
        let sub = below.get(&f.sub).ok_or_else(|| Error::Invariant(format!("no column for {}", f.sub)))?;
        let tagged = sub.map_keys(|k| {
            let mut anc = k.anc.clone();
            anc.push(f.transversal as u16);
            Key { anc, pay: k.pay }
        });
        let out = ops.accumulate(tagged)?;
        Ok::<_, Error>((out, f.transversal, f.d_power))
    })?;
    let mut cols = HashMap::new();
    let mut traces = HashMap::new();
    for (dia, (st, t, dp)) in basis.into_iter().zip(rows) {
        traces.insert(dia.clone(), (t, dp));
        cols.insert(dia, st);
    }
    Ok(LevelRun { ops, cols, traces })
}

/// Ideal columns `F̃T|a_j⟩` (or `FT|a_j⟩`) with every control at `⊥`.
fn ideal_columns(f: &Fourier<Real>, variant: Variant, depth: usize) -> Result<Vec<SimState>> {
    let m = f.ft_matrix(variant)?;
    let ty = f.ty();
    Ok((0..f.dim())
        .map(|j| {
            let mut s = SimState::new();
            for (l, lab) in f.labels().iter().enumerate() {
                let v = &m[(l, j)];
                if !v.is_zero() {
                    let pay = Pay { ty, k: lab.irrep as u16, p: lab.p as u32, q: lab.q as u32 };
                    s.add(Key { anc: vec![BOT; depth], pay }, v.clone());
                }
            }
            s
        })
        .collect())
}

/// `‖U − V‖_∞` over the union of keys and the per-column ℓ2 distances.
fn distance(u: &[SimState], v: &[SimState]) -> (Real, Vec<f64>) {
    let keys: BTreeSet<&Key> = u.iter().chain(v).flat_map(|s| s.iter().map(|(k, _)| k)).collect();
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let mut m = Mat::<Real>::zeros(index.len(), u.len());
    for (j, (a, b)) in u.iter().zip(v).enumerate() {
        for (k, x) in a.iter() {
            m[(index[k], j)] += x;
        }
        for (k, x) in b.iter() {
            m[(index[k], j)] -= x;
        }
    }
    let per_col = (0..u.len())
        .map(|j| {
            let mut s = Real::zero();
            for i in 0..m.rows() {
                s.mul_add_assign(&m[(i, j)], &m[(i, j)]);
            }
            s.to_f64().sqrt()
        })
        .collect();
    (m.op_norm(), per_col)
}

fn unitarity(u: &[SimState]) -> f64 {
    let n = u.len();
    let rows = par::map_range(n, |i| {
        (0..n)
            .map(|j| {
                let g = u[i].dot(&u[j]).to_f64();
                (g - if i == j { 1.0 } else { 0.0 }).abs()
            })
            .fold(0.0, f64::max)
    });
    rows.into_iter().fold(0.0, f64::max)
}

/// Relabels a column of `B_{s,r}` into `B_{r,s}` coordinates.
fn relabel_mirror(col: &SimState, from: &LabelSpace, to: &LabelSpace) -> Result<SimState> {
    let mut out = SimState::new();
    for (k, v) in col.iter() {
        if k.pay.ty != from.ty() {
            out.add(k.clone(), v.clone());
            continue;
        }
        let (_, p, q) = from.unpack(&k.pay);
        let pm: Vec<_> = p.iter().map(|l| l.mirrored()).collect();
        let qm: Vec<_> = q.iter().map(|l| l.mirrored()).collect();
        out.add(Key { anc: k.anc.clone(), pay: to.pack(&pm, &qm)? }, v.clone());
    }
    Ok(out)
}

/// Simulates the recursive transform of `ty` at `d` and reports its errors.
pub fn sov_qft(ty: AlgebraType, d: &Rational) -> Result<SovReport> {
    if ty.family == Family::Half {
        return Err(Error::Unsupported("separation of variables for the half-partition family".into()));
    }
    let run_ty = mirror_target(ty).unwrap_or(ty);
    let types = recursion_types(run_ty)?;
    let depth = types.len() - 1;
    let base = *types.last().expect("nonempty");
    let base_basis = enumerate_basis(base, usize::MAX)?;
    let mut below: Columns = HashMap::new();
    below.insert(
        base_basis[0].clone(),
        SimState::single(Key { anc: vec![], pay: Pay { ty: base, k: 0, p: 0, q: 0 } }),
    );
    let mut levels = Vec::new();
    let mut last: Option<LevelRun> = None;
    for (level, &lt) in types.iter().rev().skip(1).enumerate() {
        let run = run_level(level, lt, &below, d)?;
        let f = Fourier::<Real>::build(lt, d)?;
        let basis = f.algebra().basis().diagrams();
        let u: Vec<SimState> = basis.iter().map(|b| run.cols[b].clone()).collect();
        let (dist, _) = distance(&u, &ideal_columns(&f, Variant::Tilde, level + 1)?);
        let iso = run.ops.isos().map(|(_, i)| i.isometry_residual()).fold(0.0, f64::max);
        levels.push(LevelReport {
            algebra: lt.to_string(),
            transversals: run.ops.table.len(),
            alg_vs_tilde: dist.to_f64(),
            extension_isometry: iso,
        });
        below = run.cols.clone();
        last = Some(run);
    }
    let run = last.ok_or_else(|| Error::OutOfRange(format!("{ty} is one-dimensional; nothing to recurse over")))?;

    let f = Fourier::<Real>::build(ty, d)?;
    let basis = f.algebra().basis().diagrams().to_vec();
    let (from, to) = (LabelSpace::new(run_ty)?, LabelSpace::new(ty)?);
    let run_diagram = |b: &Diagram| if run_ty == ty { b.clone() } else { mirror_diagram(b, run_ty) };
    let u = basis
        .iter()
        .map(|b| {
            let col = &run.cols[&run_diagram(b)];
            if run_ty == ty {
                Ok(col.clone())
            } else {
                relabel_mirror(col, &from, &to)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let (tilde, per_col) = distance(&u, &ideal_columns(&f, Variant::Tilde, depth)?);
    let (exact, _) = distance(&u, &ideal_columns(&f, Variant::Exact, depth)?);
    let per_diagram = basis
        .iter()
        .zip(per_col)
        .map(|(b, residual)| {
            let (t, d_power) = run.traces[&run_diagram(b)];
            let tr = &run.ops.table.entries()[t];
            DiagramTrace {
                diagram: b.to_string(),
                case: tr.case.to_string(),
                transversal: tr.to_string(),
                operator: run.ops.kind(t).name(),
                d_power,
                residual,
            }
        })
        .collect();
    Ok(SovReport {
        family: ty.family.to_string(),
        algebra: ty.to_string(),
        n: ty.n,
        r: ty.wall.map(|w| w.0),
        s: ty.wall.map(|w| w.1),
        d: d.to_string(),
        precision_bits: precision_bits(),
        mirrored_from: (run_ty != ty).then(|| run_ty.to_string()),
        embedding_normalization: "renormalized to unit length".into(),
        norms: SovNorms { alg_vs_tilde: tilde.to_f64(), alg_vs_exact: exact.to_f64(), unitarity: unitarity(&u) },
        levels,
        per_diagram,
    })
}

/// Runs [`sov_qft`] at each `d`.
pub fn decay_series(ty: AlgebraType, ds: &[Rational]) -> Result<Vec<DecayPoint>> {
    ds.iter()
        .map(|d| {
            let r = sov_qft(ty, d)?;
            Ok(DecayPoint { d: d.to_string(), alg_vs_tilde: r.norms.alg_vs_tilde, alg_vs_exact: r.norms.alg_vs_exact, unitarity: r.norms.unitarity })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::set_precision_bits;

    #[test]
    fn recursion_bottoms_out() {
        let t = recursion_types(AlgebraType::brauer(4)).unwrap();
        assert_eq!(t, vec![AlgebraType::brauer(4), AlgebraType::brauer(2), AlgebraType::brauer(0)]);
        let t = recursion_types(AlgebraType::walled(1, 2)).unwrap();
        assert_eq!(t.last(), Some(&AlgebraType::walled(0, 0)));
    }

    #[test]
    fn mirror_is_an_involution() {
        let ty = AlgebraType::walled(2, 1);
        for dia in enumerate_basis(ty, usize::MAX).unwrap() {
            let m = mirror_diagram(&dia, AlgebraType::walled(1, 2));
            m.check_family().unwrap();
            assert_eq!(mirror_diagram(&m, ty), dia);
        }
    }

    #[test]
    fn symmetric_three_is_exact() {
        set_precision_bits(256);
        let r = sov_qft(AlgebraType::symmetric(3), &Rational::from(10_000)).unwrap();
        assert!(r.norms.alg_vs_exact < 1e-20, "{:?}", r.norms);
        assert!(r.norms.unitarity < 1e-20);
    }

    #[test]
    fn brauer_three_is_isometric() {
        set_precision_bits(256);
        let r = sov_qft(AlgebraType::brauer(3), &Rational::from(10_000)).unwrap();
        assert!(r.norms.unitarity < 1e-20, "{:?}", r.norms);
        assert!(r.norms.alg_vs_tilde < 0.5, "{:?}", r.norms);
    }
}
