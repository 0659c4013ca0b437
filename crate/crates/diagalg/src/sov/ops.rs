//! Sparse isometries on Fourier labels and the Accumulate step.
//!
//! Payloads are Fourier labels `(ρ, P, Q)` of some algebra, stored by index.
//! Every operator here is either an exact isometry between label spaces or
//! a Hermitian unitary built from one.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rug::Rational;

use super::factor::{Case, TransversalTable};
use crate::diagram::{AlgebraType, Family};
use crate::error::{Error, Result};
use crate::forms::{bridge_plus_eigenvector, FormBasis, IrrepSystem};
use crate::irreps::{formula_dimension, schur_multiplicity, Chain, Label, Path, Young};
use crate::linalg::Mat;
use crate::scalar::{precision_bits, Real, Scalar};

/// The empty control register value `⊥`.
pub const BOT: u16 = u16::MAX;

/// A Fourier label of the algebra `ty`: irrep index in chain label order and
/// the two path indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pay {
    pub ty: AlgebraType,
    pub k: u16,
    pub p: u32,
    pub q: u32,
}

/// Control registers (index = recursion level from the bottom) and payload.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key {
    pub anc: Vec<u16>,
    pub pay: Pay,
}

/// A sparse real vector over [`Key`]s.
#[derive(Clone, Debug, Default)]
pub struct SimState(BTreeMap<Key, Real>);

impl SimState {
    pub fn new() -> Self {
        SimState(BTreeMap::new())
    }

    pub fn single(key: Key) -> Self {
        let mut s = SimState::new();
        s.0.insert(key, Real::one());
        s
    }

    pub fn add(&mut self, key: Key, v: Real) {
        match self.0.get_mut(&key) {
            Some(x) => *x += v,
            None => {
                self.0.insert(key, v);
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &Real)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, key: &Key) -> Option<&Real> {
        self.0.get(key)
    }

    pub fn norm_sq(&self) -> Real {
        let mut s = Real::zero();
        for v in self.0.values() {
            s.mul_add_assign(v, v);
        }
        s
    }

    /// Drops entries below the arithmetic noise floor.
    pub fn prune(&mut self) {
        let floor = 2f64.powi(-(precision_bits() as i32) + 24);
        self.0.retain(|_, v| v.to_f64().abs() > floor);
    }

    /// Applies a payload map to the selected entries, fixing the rest.
    pub fn apply(&self, sel: impl Fn(&Key) -> bool, f: impl Fn(&Pay) -> Result<Vec<(Pay, Real)>>) -> Result<SimState> {
        let mut out = SimState::new();
        for (key, c) in &self.0 {
            if sel(key) {
                for (pay, v) in f(&key.pay)? {
                    out.add(Key { anc: key.anc.clone(), pay }, v * c);
                }
            } else {
                out.add(key.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Relabels keys one to one.
    pub fn map_keys(&self, f: impl Fn(&Key) -> Key) -> SimState {
        SimState(self.0.iter().map(|(k, v)| (f(k), v.clone())).collect())
    }

    /// `Σ_k self[k]·other[k]`.
    pub fn dot(&self, other: &SimState) -> Real {
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut s = Real::zero();
        for (k, v) in &small.0 {
            if let Some(w) = big.0.get(k) {
                s.mul_add_assign(v, w);
            }
        }
        s
    }
}

/// Labels and paths of one algebra, addressed by index.
#[derive(Clone, Debug)]
pub struct LabelSpace {
    ty: AlgebraType,
    chain: Chain,
}

impl LabelSpace {
    pub fn new(ty: AlgebraType) -> Result<Self> {
        Ok(LabelSpace { ty, chain: Chain::new(ty)? })
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn label(&self, k: u16) -> &Label {
        &self.chain.labels()[k as usize]
    }

    pub fn path(&self, k: u16, p: u32) -> &Path {
        &self.chain.paths_to(self.label(k))[p as usize]
    }

    /// `(label, P, Q)` of a payload.
    pub fn unpack(&self, pay: &Pay) -> (&Label, &Path, &Path) {
        (self.label(pay.k), self.path(pay.k, pay.p), self.path(pay.k, pay.q))
    }

    pub fn pack(&self, p: &[Label], q: &[Label]) -> Result<Pay> {
        let label = p.last().ok_or_else(|| Error::Invariant("empty path".into()))?;
        if q.last() != Some(label) {
            return Err(Error::Invariant("row and column paths end at different irreps".into()));
        }
        let k = self
            .chain
            .labels()
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::Invariant(format!("{label} is not an irrep of {}", self.ty)))?;
        let find = |x: &[Label]| {
            self.chain.path_index(x).ok_or_else(|| Error::Invariant(format!("path {x:?} is not a Bratteli path of {}", self.ty)))
        };
        Ok(Pay { ty: self.ty, k: k as u16, p: find(p)? as u32, q: find(q)? as u32 })
    }

    /// Every payload, in Fourier label order.
    pub fn all(&self) -> Vec<Pay> {
        let mut out = Vec::new();
        for (k, l) in self.chain.labels().iter().enumerate() {
            let m = self.chain.dim(l) as u32;
            for p in 0..m {
                for q in 0..m {
                    out.push(Pay { ty: self.ty, k: k as u16, p, q });
                }
            }
        }
        out
    }
}

/// A sparse isometry from part of one label space into another, with its
/// reverse index for the adjoint.
#[derive(Clone, Debug, Default)]
pub struct Iso {
    cols: HashMap<Pay, Vec<(Pay, Real)>>,
    rev: HashMap<Pay, Vec<(Pay, Real)>>,
}

impl Iso {
    fn from_cols(cols: HashMap<Pay, Vec<(Pay, Real)>>) -> Self {
        let mut rev: HashMap<Pay, Vec<(Pay, Real)>> = HashMap::new();
        for (x, col) in &cols {
            for (y, v) in col {
                rev.entry(*y).or_default().push((*x, v.clone()));
            }
        }
        for list in rev.values_mut() {
            list.sort_by_key(|a| a.0);
        }
        Iso { cols, rev }
    }

    pub fn domain_len(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, x: &Pay) -> Option<&[(Pay, Real)]> {
        self.cols.get(x).map(Vec::as_slice)
    }

    /// `max |⟨Ũx, Ũy⟩ − δ_xy|` over the domain.
    pub fn isometry_residual(&self) -> f64 {
        let mut gram: HashMap<(Pay, Pay), Real> = HashMap::new();
        for list in self.rev.values() {
            for (x, v) in list {
                for (y, w) in list {
                    let e = gram.entry((*x, *y)).or_insert_with(Real::zero);
                    e.mul_add_assign(v, w);
                }
            }
        }
        let mut worst = 0f64;
        for x in self.cols.keys() {
            let diag = gram.get(&(*x, *x)).map_or(0.0, Scalar::to_f64);
            worst = worst.max((diag - 1.0).abs());
        }
        for ((x, y), v) in &gram {
            if x != y {
                worst = worst.max(v.to_f64().abs());
            }
        }
        worst
    }

    /// The Hermitian unitary `W = Ũ + Ũ† + (I − ŨŨ† − Π_dom)` on one basis
    /// vector.
    pub fn swap_apply(&self, x: &Pay) -> Vec<(Pay, Real)> {
        if let Some(col) = self.cols.get(x) {
            return col.clone();
        }
        let Some(back) = self.rev.get(x) else {
            return vec![(*x, Real::one())];
        };
        let mut acc: BTreeMap<Pay, Real> = BTreeMap::new();
        acc.insert(*x, Real::one());
        for (b, v) in back {
            *acc.entry(*b).or_insert_with(Real::zero) += v;
            for (y, w) in &self.cols[b] {
                let e = acc.entry(*y).or_insert_with(Real::zero);
                *e -= w.clone() * v;
            }
        }
        acc.into_iter().collect()
    }
}

/// Which extension map a transversal uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    /// Plain embedding `Ẽ`.
    Embed,
    /// Brauer / walled contraction extension `F̃`.
    Contract,
    /// Partition point extensions `F̃₁ … F̃₄`.
    Point(u8),
    /// Partition bridge extensions `G̃₁`, `G̃₂`.
    Bridge(u8),
}

impl OpKind {
    pub fn of(case: Case, bridge_left: bool, bridge_right: bool) -> OpKind {
        if case.prop_zero() {
            return match case {
                Case::PartitionNoPropagation(_) => OpKind::Point(match (bridge_left, bridge_right) {
                    (false, false) => 1,
                    (true, false) => 2,
                    (false, true) => 3,
                    (true, true) => 4,
                }),
                _ => OpKind::Contract,
            };
        }
        match (bridge_left, bridge_right) {
            (true, _) => OpKind::Bridge(1),
            (false, true) => OpKind::Bridge(2),
            _ => OpKind::Embed,
        }
    }

    pub fn name(self) -> String {
        match self {
            OpKind::Embed => "E".into(),
            OpKind::Contract => "F".into(),
            OpKind::Point(i) => format!("F{i}"),
            OpKind::Bridge(i) => format!("G{i}"),
        }
    }
}

fn label_weight(ty: AlgebraType, label: &Label, d: &Rational) -> Result<Real> {
    let w = if ty.family == Family::Symmetric {
        Rational::from(formula_dimension(ty, label))
    } else {
        schur_multiplicity(ty, label, d)?
    };
    if w <= 0 {
        return Err(Error::Inadmissible(format!("multiplicity of {label} in {ty} is {w} at d = {d}")));
    }
    Real::from_rational(&w).sqrt()
}

type Weighted = Vec<(Path, Path, Real)>;

/// Embedding of one chain step `l → l+1`, renormalized to unit length:
/// `|σ,P,Q⟩ ↦ Σ_ρ √r_{ρσ} |ρ,P∘ρ,Q∘ρ⟩`.
fn embed_step(chain: &Chain, l: usize, p: &Path, q: &Path, d: &Rational) -> Result<Weighted> {
    let sigma = p.last().ok_or_else(|| Error::Invariant("empty path".into()))?;
    let ty = chain.level_type(l + 1);
    let parents = chain.parents(l, sigma);
    let weights = parents.iter().map(|r| label_weight(ty, r, d)).collect::<Result<Vec<_>>>()?;
    let mut total = Real::zero();
    for w in &weights {
        total.mul_add_assign(w, w);
    }
    let total = total.sqrt()?;
    Ok(parents
        .into_iter()
        .zip(weights)
        .map(|(r, w)| {
            let mut pp = p.clone();
            pp.push(r.clone());
            let mut qq = q.clone();
            qq.push(r);
            (pp, qq, w / &total)
        })
        .collect())
}

fn embed_to_top(chain: &Chain, p: &Path, q: &Path, d: &Rational) -> Result<Weighted> {
    let mut cur: Weighted = vec![(p.clone(), q.clone(), Real::one())];
    for l in p.len() - 1..chain.top() {
        let mut next = Vec::new();
        for (pp, qq, c) in cur {
            for (a, b, w) in embed_step(chain, l, &pp, &qq, d)? {
                next.push((a, b, w * &c));
            }
        }
        cur = next;
    }
    Ok(cur)
}

fn single(ys: &[usize]) -> Label {
    Label::Single(Young::new(ys.to_vec()).expect("a partition"))
}

fn with_tail(p: &Path, keep: usize, tail: &[Label]) -> Path {
    p[..keep].iter().cloned().chain(tail.iter().cloned()).collect()
}

/// Builds the isometry `kind` from `B` into `A`.
pub fn build_iso(kind: OpKind, a: &LabelSpace, b: &LabelSpace, d: &Rational) -> Result<Iso> {
    let chain = a.chain();
    let ty = a.ty();
    let mut cols: HashMap<Pay, Vec<(Pay, Real)>> = HashMap::new();
    let empty = Label::empty(ty.family);
    let pack_all = |w: Weighted| -> Result<Vec<(Pay, Real)>> { w.into_iter().map(|(p, q, v)| Ok((a.pack(&p, &q)?, v))).collect() };
    match kind {
        OpKind::Embed => {
            for x in b.all() {
                let (_, p, q) = b.unpack(&x);
                cols.insert(x, pack_all(embed_to_top(chain, p, q, d)?)?);
            }
        }
        OpKind::Contract | OpKind::Point(_) => {
            let n = ty.n;
            for x in b.all() {
                let (lab, p, q) = b.unpack(&x);
                if *lab != empty {
                    continue;
                }
                let (pp, qq) = match (ty.family, kind) {
                    (Family::Brauer, _) => {
                        let t = [single(&[1]), empty.clone()];
                        (with_tail(p, p.len(), &t), with_tail(q, q.len(), &t))
                    }
                    (Family::Walled, _) => {
                        let t = [Label::Pair(Young::new(vec![1])?, Young::empty()), empty.clone()];
                        (with_tail(p, p.len(), &t), with_tail(q, q.len(), &t))
                    }
                    (Family::Partition, OpKind::Point(i)) => {
                        // Levels 2n−3 … 2n; a box at 2n−2 marks a bridge.
                        let plain = [empty.clone(), empty.clone(), empty.clone(), empty.clone()];
                        let boxed = [empty.clone(), single(&[1]), empty.clone(), empty.clone()];
                        let keep = (2 * n).saturating_sub(3);
                        let cut = |path: &Path, bridged: bool| {
                            if n == 1 {
                                with_tail(path, path.len(), &plain[2..])
                            } else {
                                with_tail(path, keep, if bridged { &boxed } else { &plain })
                            }
                        };
                        (cut(p, i == 2 || i == 4), cut(q, i == 3 || i == 4))
                    }
                    _ => return Err(Error::Invariant(format!("{} has no contraction extension", ty))),
                };
                cols.insert(x, vec![(a.pack(&pp, &qq)?, Real::one())]);
            }
        }
        OpKind::Bridge(side) => {
            let n = ty.n;
            if ty.family != Family::Partition || n < 2 {
                return Err(Error::Invariant(format!("{ty} has no bridge extension")));
            }
            let half_ty = chain.level_type(2 * n - 1);
            let half = LabelSpace::new(half_ty)?;
            let sys = IrrepSystem::<Real>::build(half_ty, d, FormBasis::Orthogonal)?;
            for x in b.all() {
                let (_, p, q) = b.unpack(&x);
                // The bridged side is the row for G₁ and the column for G₂.
                let (bp, other) = if side == 1 { (p, q) } else { (q, p) };
                let tau = bp[2 * n - 3].clone();
                let form = sys.form(&tau).ok_or_else(|| Error::Invariant(format!("{tau} is not an irrep of {half_ty}")))?;
                let ext = with_tail(bp, bp.len(), std::slice::from_ref(&tau));
                let idx = form.paths.iter().position(|r| *r == ext).ok_or_else(|| Error::Invariant("bridge path missing".into()))?;
                let (class, alpha) = bridge_plus_eigenvector(form, n - 1, idx)?;
                let other_ext = with_tail(other, other.len(), std::slice::from_ref(&tau));
                let mut col: BTreeMap<Pay, Real> = BTreeMap::new();
                for (c, al) in class.into_iter().zip(alpha) {
                    let r = &form.paths[c];
                    let (hp, hq) = if side == 1 { (r.clone(), other_ext.clone()) } else { (other_ext.clone(), r.clone()) };
                    half.pack(&hp, &hq)?;
                    for (pp, qq, w) in embed_to_top(chain, &hp, &hq, d)? {
                        *col.entry(a.pack(&pp, &qq)?).or_insert_with(Real::zero) += w * &al;
                    }
                }
                cols.insert(x, col.into_iter().collect());
            }
        }
    }
    Ok(Iso::from_cols(cols))
}

/// Irrep matrices of the two permutations of one transversal, per irrep.
type RhoPair = (Vec<Mat<Real>>, Vec<Mat<Real>>);

/// Everything the accumulation step needs for one algebra of the recursion.
#[derive(Debug)]
pub struct StepOps {
    pub level: usize,
    pub a: LabelSpace,
    pub b: LabelSpace,
    pub table: TransversalTable,
    /// `ρ_k(π₁)`, `ρ_k(π₂)` per transversal.
    rho: Vec<RhoPair>,
    kinds: Vec<OpKind>,
    isos: HashMap<OpKind, Arc<Iso>>,
}

impl StepOps {
    pub fn new(level: usize, table: TransversalTable, sys: &IrrepSystem<Real>, d: &Rational) -> Result<Self> {
        let a = LabelSpace::new(table.ty())?;
        let b = LabelSpace::new(table.sub())?;
        if sys.chain().labels() != a.chain().labels() {
            return Err(Error::Invariant("irrep order differs from the chain order".into()));
        }
        let forms = sys.forms().len();
        let rho = crate::par::try_map_range(table.len(), |t| {
            let td = table.diagrams(t);
            let r1 = (0..forms).map(|k| sys.of_diagram(k, &td.pi1)).collect::<Result<Vec<_>>>()?;
            let r2 = (0..forms).map(|k| sys.of_diagram(k, &td.pi2)).collect::<Result<Vec<_>>>()?;
            Ok::<_, Error>((r1, r2))
        })?;
        let kinds: Vec<OpKind> = table.entries().iter().map(|t| OpKind::of(t.case, t.bridge_left(), t.bridge_right())).collect();
        let mut isos = HashMap::new();
        for &k in &kinds {
            if let std::collections::hash_map::Entry::Vacant(e) = isos.entry(k) {
                e.insert(Arc::new(build_iso(k, &a, &b, d)?));
            }
        }
        Ok(StepOps { level, a, b, table, rho, kinds, isos })
    }

    pub fn kind(&self, t: usize) -> OpKind {
        self.kinds[t]
    }

    pub fn iso(&self, kind: OpKind) -> Option<&Iso> {
        self.isos.get(&kind).map(Arc::as_ref)
    }

    pub fn isos(&self) -> impl Iterator<Item = (OpKind, &Iso)> {
        self.isos.iter().map(|(k, v)| (*k, v.as_ref()))
    }

    /// `ρ(π₁)` on the row and `ρ(π₂)` on the column, or their inverses.
    fn permute(&self, t: usize, pay: &Pay, inverse: bool) -> Vec<(Pay, Real)> {
        let (m1, m2) = (&self.rho[t].0[pay.k as usize], &self.rho[t].1[pay.k as usize]);
        let dim = m1.rows();
        let (r, s) = (pay.p as usize, pay.q as usize);
        let mut out = Vec::new();
        for p in 0..dim {
            // Row: Σ_P ρ(π₁)[P,R]; inverse uses the transpose.
            let a = if inverse { &m1[(r, p)] } else { &m1[(p, r)] };
            if a.is_zero() {
                continue;
            }
            for q in 0..dim {
                // Column: Σ_Q ρ(π₂)[S,Q]; inverse uses the transpose.
                let b = if inverse { &m2[(q, s)] } else { &m2[(s, q)] };
                if b.is_zero() {
                    continue;
                }
                out.push((Pay { ty: pay.ty, k: pay.k, p: p as u32, q: q as u32 }, a.clone() * b));
            }
        }
        out
    }

    /// Runs the accumulation step over every transversal in ascending order.
    pub fn accumulate(&self, mut state: SimState) -> Result<SimState> {
        let lv = self.level;
        let (ta, tb) = (self.a.ty(), self.b.ty());
        for t in 0..self.table.len() {
            let iso = &self.isos[&self.kinds[t]];
            let bot = |k: &Key| k.anc[lv] == BOT;
            let bot_a = |k: &Key| k.anc[lv] == BOT && k.pay.ty == ta;
            if state.iter().any(|(k, _)| bot(k)) {
                state = state.apply(bot_a, |p| Ok(self.permute(t, p, true)))?;
                state = state.apply(bot, |p| Ok(iso.swap_apply(p)))?;
            }
            let tag = t as u16;
            state = state.map_keys(|k| {
                if k.pay.ty != tb {
                    return k.clone();
                }
                let mut k2 = k.clone();
                if k.anc[lv] == BOT {
                    k2.anc[lv] = tag;
                } else if k.anc[lv] == tag {
                    k2.anc[lv] = BOT;
                }
                k2
            });
            if state.iter().any(|(k, _)| bot(k)) {
                state = state.apply(bot, |p| Ok(iso.swap_apply(p)))?;
                state = state.apply(bot_a, |p| Ok(self.permute(t, p, false)))?;
            }
            state.prune();
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::set_precision_bits;

    fn iso_check(ty: AlgebraType) {
        set_precision_bits(256);
        let d = Rational::from(10_000);
        let table = TransversalTable::new(ty).unwrap();
        let sys = IrrepSystem::<Real>::build(ty, &d, FormBasis::Orthogonal).unwrap();
        let ops = StepOps::new(0, table, &sys, &d).unwrap();
        for (kind, iso) in ops.isos() {
            let r = iso.isometry_residual();
            assert!(r < 1e-40, "{ty} {}: isometry residual {r}", kind.name());
        }
    }

    #[test]
    fn extension_maps_are_isometries() {
        for ty in [
            AlgebraType::brauer(2),
            AlgebraType::brauer(3),
            AlgebraType::brauer(4),
            AlgebraType::partition(1),
            AlgebraType::partition(2),
            AlgebraType::walled(1, 1),
            AlgebraType::walled(1, 2),
            AlgebraType::symmetric(3),
        ] {
            iso_check(ty);
        }
    }

    #[test]
    fn swap_is_an_involution() {
        set_precision_bits(256);
        let d = Rational::from(10_000);
        let a = LabelSpace::new(AlgebraType::brauer(3)).unwrap();
        let b = LabelSpace::new(AlgebraType::brauer(2)).unwrap();
        let iso = build_iso(OpKind::Embed, &a, &b, &d).unwrap();
        for x in a.all().into_iter().chain(b.all()) {
            let once = SimState::single(Key { anc: vec![], pay: x });
            let twice = once.apply(|_| true, |p| Ok(iso.swap_apply(p))).unwrap().apply(|_| true, |p| Ok(iso.swap_apply(p))).unwrap();
            for (k, v) in twice.iter() {
                let want = if k.pay == x { 1.0 } else { 0.0 };
                assert!((v.to_f64() - want).abs() < 1e-40);
            }
        }
    }
}
