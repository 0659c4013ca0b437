//! Partition algebra irreps in the seminormal basis.
//!
//! Bridge and point generators come from closed formulas in `Ψ`, contents
//! and sizes. The swap generators are obtained by solving the defining
//! relations of the algebra for the unique matrix supported on paths that
//! differ only at levels `2i−1, 2i, 2i+1` (see [`solve_swap`]); the printed
//! `σ` factorization is kept as a diagnostic in [`sigma_literal`].

use std::collections::BTreeMap;

use rug::Rational;

use super::solve::{solve, Equation};
use crate::error::{Error, Result};
use crate::irreps::{Cell, Label, Path, Young};
use crate::linalg::Mat;
use crate::scalar::{Exact, Scalar};

type Q = Rational;

fn q(v: i64) -> Q {
    Q::from(v)
}

fn content(c: Cell) -> i64 {
    Young::content(c)
}

fn size(y: &Young) -> i64 {
    y.size() as i64
}

fn checked_div(num: Q, den: &Q, what: &str) -> Result<Q> {
    if *den == 0 {
        return Err(Error::Invariant(format!("zero denominator in {what}")));
    }
    Ok(num / den)
}

/// `Ψ_{λ→μ}` for `μ = λ ∪ {a}`.
pub fn psi(lambda: &Young, mu: &Young) -> Q {
    let a = lambda.added_cell(mu).expect("Ψ needs μ = λ plus one box");
    let mut num = q(1);
    let mut den = q(1);
    for b in lambda.removable() {
        if b.0 < a.0 {
            num *= content(a) - content(b);
        }
    }
    for b in lambda.addable() {
        if b.0 < a.0 {
            den *= content(a) - content(b);
        }
    }
    num / den
}

/// `Ψ` taken in the adding direction between two adjacent shapes, or 1 when
/// they coincide.
fn psi_step(x: &Young, y: &Young) -> Q {
    if y.size() == x.size() + 1 {
        psi(x, y)
    } else if x.size() == y.size() + 1 {
        psi(y, x)
    } else {
        q(1)
    }
}

/// Shapes of one path, level by level.
pub type Shapes<'a> = Vec<&'a Young>;

pub fn shapes(path: &Path) -> Shapes<'_> {
    path.iter().map(Label::single).collect()
}

fn agree_except(p: &[&Young], q: &[&Young], levels: &[usize]) -> bool {
    p.iter().zip(q).enumerate().all(|(j, (a, b))| levels.contains(&j) || a == b)
}

/// Diagonal entry of the bridge `b_i`.
pub fn bridge_diag(p: &[&Young], i: usize, d: &Q) -> Q {
    let (a, b, c) = (p[2 * i - 1], p[2 * i], p[2 * i + 1]);
    if a != c {
        return q(0);
    }
    if a == b {
        let mut num = q(1);
        let mut den = q(1);
        for x in b.removable() {
            num *= Q::from(d - (content(x) + size(b)));
        }
        for x in b.addable() {
            den *= Q::from(d - (content(x) + size(b)));
        }
        return num / den;
    }
    // P(2i) is P(2i±1) plus the box a.
    let lambda = a;
    let box_a = lambda.added_cell(b).expect("odd-to-even step adds a box");
    let ca = content(box_a);
    let top = Q::from(d - (ca + size(lambda) + 1));
    let bottom = Q::from(d - (ca + size(lambda)));
    let mut num = q(1);
    let mut den = q(1);
    for x in lambda.removable() {
        num *= ca - content(x);
    }
    for x in lambda.addable() {
        if x != box_a {
            den *= ca - content(x);
        }
    }
    top / bottom * num / den
}

/// Diagonal entry of the point generator `p_i`.
pub fn point_diag(p: &[&Young], i: usize, d: &Q) -> Q {
    let (a, b, c) = (p[2 * i - 2], p[2 * i - 1], p[2 * i]);
    if a != c {
        return q(0);
    }
    if a == b {
        let mut num = q(1);
        let mut den = q(1);
        for x in b.addable() {
            num *= Q::from(d - (content(x) + size(b)));
        }
        for x in b.removable() {
            den *= Q::from(d - (content(x) + size(b)));
        }
        return num / den;
    }
    // P(2i−1) is μ = P(2i−2) = P(2i) minus the box a.
    let mu = a;
    let box_a = b.added_cell(mu).expect("even-to-odd step removes a box");
    let ca = content(box_a);
    let top = Q::from(d - (ca + size(mu) - 1));
    let bottom = Q::from(d - (ca + size(mu)));
    let mut num = q(1);
    let mut den = q(1);
    for x in mu.addable() {
        num *= content(x) - ca;
    }
    for x in mu.removable() {
        if x != box_a {
            den *= content(x) - ca;
        }
    }
    -(top / bottom) * num / den
}

/// Seminormal matrix of `b_i`.
pub fn bridge_matrix(paths: &[Shapes], i: usize, d: &Q) -> Mat<Exact> {
    let m = paths.len();
    let diag: Vec<Q> = paths.iter().map(|p| bridge_diag(p, i, d)).collect();
    Mat::from_fn(m, m, |r, c| {
        if r == c {
            return Exact(diag[c].clone());
        }
        let (pp, qq) = (&paths[c], &paths[r]);
        if !agree_except(pp, qq, &[2 * i]) || (diag[c] == 0 && diag[r] == 0) {
            return Exact::zero();
        }
        let (x, y) = (pp[2 * i], qq[2 * i]);
        let v = if y.size() == x.size() + 1 {
            psi(x, y).recip()
        } else if x.size() == y.size() + 1 {
            Q::from(&diag[c] * &diag[r]) * psi(y, x)
        } else {
            Q::from(&diag[c] * psi_step(pp[2 * i + 1], pp[2 * i])) / psi_step(qq[2 * i + 1], qq[2 * i])
        };
        Exact(v)
    })
}

/// Seminormal matrix of `p_i`.
pub fn point_matrix(paths: &[Shapes], i: usize, d: &Q) -> Mat<Exact> {
    let m = paths.len();
    let diag: Vec<Q> = paths.iter().map(|p| point_diag(p, i, d)).collect();
    Mat::from_fn(m, m, |r, c| {
        if r == c {
            return Exact(diag[c].clone());
        }
        let (pp, qq) = (&paths[c], &paths[r]);
        if !agree_except(pp, qq, &[2 * i - 1]) || (diag[c] == 0 && diag[r] == 0) {
            return Exact::zero();
        }
        let (x, y) = (pp[2 * i - 1], qq[2 * i - 1]);
        let v = if y.size() + 1 == x.size() {
            psi(y, x)
        } else if y.size() == x.size() + 1 {
            Q::from(&diag[c] * &diag[r]) / psi(x, y)
        } else {
            Q::from(&diag[c] * psi_step(qq[2 * i], qq[2 * i - 1])) / psi_step(pp[2 * i], pp[2 * i - 1])
        };
        Exact(v)
    })
}

/// The level statistic `c_P(k)`.
pub fn level_stat(p: &[&Young], k: usize, d: &Q) -> Q {
    let (prev, cur) = (p[k - 1], p[k]);
    if k.is_multiple_of(2) {
        if cur == prev {
            Q::from(d - size(cur))
        } else {
            q(content(prev.added_cell(cur).expect("even step adds")))
        }
    } else if cur == prev {
        q(size(cur))
    } else {
        Q::from(d - content(cur.added_cell(prev).expect("odd step removes")))
    }
}

/// Seminormal data of one irrep: generator matrices and squared path norms.
#[derive(Clone, Debug)]
pub struct Seminormal {
    pub b: BTreeMap<usize, Mat<Exact>>,
    pub p: BTreeMap<usize, Mat<Exact>>,
    pub s: BTreeMap<usize, Mat<Exact>>,
    /// `⟨P,P⟩` for every path, normalised to 1 on the first path of each
    /// connected block.
    pub norms: Vec<Q>,
}

/// Connected components of the graph with an edge wherever some matrix has
/// a nonzero entry.
fn components(m: usize, mats: &[&Mat<Exact>]) -> Vec<usize> {
    let mut comp = vec![usize::MAX; m];
    let mut next = 0;
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        comp[s] = next;
        let mut stack = vec![s];
        while let Some(p) = stack.pop() {
            for mat in mats {
                for r in 0..m {
                    if comp[r] == usize::MAX && !mat[(r, p)].is_zero() {
                        comp[r] = next;
                        stack.push(r);
                    }
                }
            }
        }
        next += 1;
    }
    comp
}

/// Squared norms making every matrix in `mats` symmetric after rescaling:
/// `n_Q² = n_P² · M_PQ / M_QP` along nonzero entries.
fn derived_norms(m: usize, mats: &[&Mat<Exact>]) -> Result<Vec<Q>> {
    let mut nn: Vec<Option<Q>> = vec![None; m];
    for s in 0..m {
        if nn[s].is_some() {
            continue;
        }
        nn[s] = Some(q(1));
        let mut stack = vec![s];
        while let Some(p) = stack.pop() {
            for mat in mats {
                for r in 0..m {
                    if r == p || mat[(r, p)].is_zero() || nn[r].is_some() {
                        continue;
                    }
                    let back = &mat[(p, r)].0;
                    if *back == 0 {
                        return Err(Error::Invariant(format!("one-sided entry ({r},{p}) in a seminormal matrix")));
                    }
                    let v = Q::from(nn[p].as_ref().unwrap() * back) / &mat[(r, p)].0;
                    nn[r] = Some(v);
                    stack.push(r);
                }
            }
        }
    }
    Ok(nn.into_iter().map(Option::unwrap).collect())
}

struct SwapSystem<'a> {
    m: usize,
    unknowns: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
    equations: Vec<Equation>,
    _paths: &'a [Shapes<'a>],
}

impl SwapSystem<'_> {
    fn push(&mut self, terms: &[((usize, usize), Q)], rhs: Q) {
        let mut eq = Equation { rhs, ..Default::default() };
        for (u, c) in terms {
            if let Some(&k) = self.index.get(u) {
                eq.add_term(k, c);
            }
        }
        self.equations.push(eq);
    }

    /// Equations `X A − C X = R`.
    fn xa_minus_cx(&mut self, a: Option<&Mat<Exact>>, c: Option<&Mat<Exact>>, rhs: Option<&Mat<Exact>>) {
        let m = self.m;
        for r in 0..m {
            for col in 0..m {
                let mut terms = Vec::new();
                if let Some(a) = a {
                    for k in 0..m {
                        if !a[(k, col)].is_zero() && self.index.contains_key(&(r, k)) {
                            terms.push(((r, k), a[(k, col)].0.clone()));
                        }
                    }
                }
                if let Some(c) = c {
                    for k in 0..m {
                        if !c[(r, k)].is_zero() && self.index.contains_key(&(k, col)) {
                            terms.push(((k, col), -c[(r, k)].0.clone()));
                        }
                    }
                }
                let target = rhs.map_or_else(Q::new, |x| x[(r, col)].0.clone());
                if terms.is_empty() && target == 0 {
                    continue;
                }
                self.push(&terms, target);
            }
        }
    }
}

/// Per-step inputs to [`solve_swap`].
struct SwapInputs<'a> {
    paths: &'a [Shapes<'a>],
    i: usize,
    d: &'a Q,
    b: &'a BTreeMap<usize, Mat<Exact>>,
    p: &'a BTreeMap<usize, Mat<Exact>>,
    s: &'a BTreeMap<usize, Mat<Exact>>,
    norms: &'a [Q],
    comp: &'a [usize],
}

/// Solves for `λ(s_i)` given the bridges, points and the swaps `s_j`, `j < i`.
///
/// Constraints: `s_i` commutes with the generators it must commute with,
/// `s_i b_i = b_i s_i = b_i`, `s_i p_i = p_{i+1} s_i`, `s_i b_{i−1} s_i =
/// s_{i−1} b_i s_{i−1}`, and `s_i` is symmetric for the current path norms
/// inside each connected block. Diagonal entries the relations leave free
/// are fixed to `1/(Δ_even Δ_odd)`, the product of the two `σ` eigenvalues;
/// entries coupling different blocks follow the usual seminormal choice
/// `1 − 1/Δ²` above and `1` below in path order.
fn solve_swap(inp: &SwapInputs, diag_rule: &[usize], partner: &[(usize, Q)]) -> Result<(SwapSystemOut, Vec<(usize, usize)>)> {
    let SwapInputs { paths, i, d, b, p, s, norms, comp } = *inp;
    let m = paths.len();
    let mut unknowns = Vec::new();
    for c in 0..m {
        for r in 0..m {
            if agree_except(&paths[c], &paths[r], &[2 * i - 1, 2 * i, 2 * i + 1]) {
                unknowns.push((r, c));
            }
        }
    }
    let index = unknowns.iter().enumerate().map(|(k, &u)| (u, k)).collect();
    let mut sys = SwapSystem { m, unknowns, index, equations: Vec::new(), _paths: paths };
    for (&j, mat) in b {
        if j + 1 != i && j != i && j != i + 1 {
            sys.xa_minus_cx(Some(mat), Some(mat), None);
        }
    }
    for (&j, mat) in p {
        if j != i && j != i + 1 {
            sys.xa_minus_cx(Some(mat), Some(mat), None);
        }
    }
    for (&j, mat) in s {
        if j + 2 <= i {
            sys.xa_minus_cx(Some(mat), Some(mat), None);
        }
    }
    let bi = &b[&i];
    sys.xa_minus_cx(Some(bi), None, Some(bi));
    let neg_bi = bi.scale(&Exact::from_i64(-1));
    sys.xa_minus_cx(None, Some(&neg_bi), Some(bi));
    sys.xa_minus_cx(Some(&p[&i]), Some(&p[&(i + 1)]), None);
    sys.xa_minus_cx(Some(&p[&(i + 1)]), Some(&p[&i]), None);
    if i >= 2 {
        let prev = &s[&(i - 1)];
        let t = prev.mul(bi).mul(prev);
        let bprev = &b[&(i - 1)];
        sys.xa_minus_cx(Some(bprev), Some(&t), None);
        sys.xa_minus_cx(Some(&t), Some(bprev), None);
    }
    for k in 0..sys.unknowns.len() {
        let (r, c) = sys.unknowns[k];
        if r < c && comp[r] == comp[c] {
            sys.push(&[((r, c), norms[r].clone()), ((c, r), -norms[c].clone())], Q::new());
        }
    }
    for &k in diag_rule {
        let pk = &paths[k];
        let even = level_stat(pk, 2 * i + 2, d) - level_stat(pk, 2 * i, d);
        let odd = level_stat(pk, 2 * i + 1, d) - level_stat(pk, 2 * i - 1, d);
        let den = Q::from(&even * &odd);
        let v = checked_div(q(1), &den, "swap diagonal rule")?;
        sys.push(&[((k, k), q(1))], v);
    }
    for (var, v) in partner {
        let u = sys.unknowns[*var];
        sys.push(&[(u, q(1))], v.clone());
    }
    let nvars = sys.unknowns.len();
    let sol = solve(std::mem::take(&mut sys.equations), nvars)?;
    let free: Vec<(usize, usize)> = sol.free.iter().map(|&k| sys.unknowns[k]).collect();
    let x = sol.particular(nvars);
    let mut mat = Mat::zeros(m, m);
    for (k, &(r, c)) in sys.unknowns.iter().enumerate() {
        mat[(r, c)] = Exact(x[k].clone());
    }
    Ok((SwapSystemOut { mat, free_vars: sol.free, unknowns: sys.unknowns }, free))
}

struct SwapSystemOut {
    mat: Mat<Exact>,
    free_vars: Vec<usize>,
    unknowns: Vec<(usize, usize)>,
}

/// Builds the full seminormal irrep of `P_n(d)` on the given paths
/// (levels `0..=2n`). `n` is inferred from the path length.
pub fn seminormal(paths: &[Shapes], d: &Q) -> Result<Seminormal> {
    let m = paths.len();
    let top = paths[0].len() - 1;
    let n = top / 2;
    let mut b = BTreeMap::new();
    let mut p = BTreeMap::new();
    for i in 1..n {
        b.insert(i, bridge_matrix(paths, i, d));
    }
    for i in 1..=n {
        p.insert(i, point_matrix(paths, i, d));
    }
    let bp: Vec<&Mat<Exact>> = b.values().chain(p.values()).collect();
    let mut comp = components(m, &bp);
    let mut norms = derived_norms(m, &bp)?;
    let mut s: BTreeMap<usize, Mat<Exact>> = BTreeMap::new();
    for i in 1..n {
        let inputs = SwapInputs { paths, i, d, b: &b, p: &p, s: &s, norms: &norms, comp: &comp };
        let (mut out, _) = solve_swap(&inputs, &[], &[])?;
        let diag: Vec<usize> = out
            .free_vars
            .iter()
            .map(|&k| out.unknowns[k])
            .filter(|(r, c)| r == c)
            .map(|(r, _)| r)
            .collect();
        if !diag.is_empty() {
            out = solve_swap(&inputs, &diag, &[])?.0;
        }
        if !out.free_vars.is_empty() {
            let mut partner = Vec::new();
            for &k in &out.free_vars {
                let (r, c) = out.unknowns[k];
                if r != c && comp[r] != comp[c] {
                    let delta = level_stat(&paths[c], 2 * i + 2, d) - level_stat(&paths[c], 2 * i, d);
                    let v = if paths_after(&paths[r], &paths[c]) {
                        q(1) - checked_div(q(1), &Q::from(&delta * &delta), "partner entry")?
                    } else {
                        q(1)
                    };
                    partner.push((k, v));
                }
            }
            out = solve_swap(&inputs, &diag, &partner)?.0;
        }
        if !out.free_vars.is_empty() {
            return Err(Error::Invariant(format!("s_{i} is not determined by the relations")));
        }
        let x = out.mat;
        // Merge blocks coupled by the new swap.
        for r in 0..m {
            for c in 0..m {
                if x[(r, c)].is_zero() || comp[r] == comp[c] {
                    continue;
                }
                if x[(c, r)].is_zero() {
                    return Err(Error::Invariant(format!("one-sided swap entry ({r},{c})")));
                }
                let ratio = Q::from(&norms[c] * &x[(c, r)].0) / &x[(r, c)].0 / &norms[r];
                let (from, to) = (comp[r], comp[c]);
                for k in 0..m {
                    if comp[k] == from {
                        norms[k] *= &ratio;
                        comp[k] = to;
                    }
                }
            }
        }
        for r in 0..m {
            for c in 0..m {
                if !x[(r, c)].is_zero() && Q::from(&x[(r, c)].0 * &norms[r]) != Q::from(&x[(c, r)].0 * &norms[c]) {
                    return Err(Error::Invariant(format!("s_{i} is not symmetric for the path norms")));
                }
            }
        }
        s.insert(i, x);
    }
    Ok(Seminormal { b, p, s, norms })
}

/// Strict path order: `Q ≻ P`.
fn paths_after(qq: &[&Young], pp: &[&Young]) -> bool {
    qq.iter().map(|y| (y.size(), y.parts())).cmp(pp.iter().map(|y| (y.size(), y.parts()))).is_gt()
}

/// The norm table read literally as a telescoping product over levels.
/// Kept for comparison with the derived norms of [`seminormal`].
pub fn literal_path_norm(p: &[&Young], d: &Q) -> Q {
    let mut acc = q(1);
    for r in 0..p.len() - 1 {
        let (cur, next) = (p[r], p[r + 1]);
        if next == cur {
            continue;
        }
        if next.size() == cur.size() + 1 {
            acc *= psi(cur, next);
        } else if r % 2 == 0 {
            acc *= bridge_diag(p, r / 2, d) * psi(next, cur);
        } else {
            acc *= point_diag(p, r.div_ceil(2), d) * psi(next, cur);
        }
    }
    acc
}

/// `σ_{2i}` (`odd = false`) or `σ_{2i+1}` (`odd = true`) evaluated from the
/// five printed cases with the given path norms. Errors when no case applies
/// or a denominator vanishes.
pub fn sigma_literal(paths: &[Shapes], i: usize, d: &Q, norms: &[Q], odd: bool) -> Result<Mat<Exact>> {
    let m = paths.len();
    let b = bridge_matrix(paths, i, d);
    let p_i = point_matrix(paths, i, d);
    let p_next = if odd { Some(point_matrix(paths, i + 1, d)) } else { None };
    let c = |k: usize, l: usize| level_stat(&paths[k], l, d);
    let mut out: Vec<Vec<Option<Q>>> = vec![vec![Some(q(0)); m]; m];
    let find = |target: &[&Young]| paths.iter().position(|x| x.as_slice() == target);
    let (lo, hi) = if odd { (2 * i, 2 * i + 1) } else { (2 * i - 1, 2 * i) };
    for pc in 0..m {
        let pp = &paths[pc];
        let nbrs: Vec<usize> = (0..m).filter(|&r| r != pc && agree_except(pp, &paths[r], &[lo, hi])).collect();
        if !odd {
            let c1 = pp[2 * i - 1] == pp[2 * i + 1];
            let c2 = pp[2 * i - 2] == pp[2 * i];
            if c1 && c2 {
                out[pc][pc] = Some(checked_div(c(pc, 2 * i), &p_i[(pc, pc)].0, "σ case 1")?);
                for &r in &nbrs {
                    if !b[(r, pc)].is_zero() {
                        let num = Q::from(d - c(r, 2 * i)) - c(pc, 2 * i - 1) - &p_i[(pc, pc)].0;
                        let den = c(r, 2 * i + 1) - c(pc, 2 * i - 1);
                        out[r][pc] = Some(checked_div(num, &den, "σ case 1")? * &b[(r, pc)].0);
                    }
                }
            } else if !c1 && c2 {
                let mut v = pp.clone();
                v[2 * i - 1] = pp[2 * i + 1];
                let vi = find(&v).ok_or_else(|| Error::Invariant("σ case 2 partner path missing".into()))?;
                for r in std::iter::once(pc).chain(nbrs.iter().copied()) {
                    if r == vi {
                        continue;
                    }
                    let delta = if r == pc { q(1) } else { q(0) };
                    let num = delta - Q::from(&p_i[(vi, pc)].0 * &b[(r, vi)].0);
                    let den = c(r, 2 * i + 1) - c(pc, 2 * i - 1);
                    out[r][pc] = Some(checked_div(num, &den, "σ case 2")?);
                }
                out[vi][pc] = Some(c(pc, 2 * i) * &p_i[(vi, pc)].0);
            } else if c1 && !c2 {
                for r in std::iter::once(pc).chain(nbrs.iter().copied()) {
                    if paths[r][2 * i] != pp[2 * i - 2] {
                        let delta = if r == pc { q(1) } else { q(0) };
                        let num = delta + (Q::from(d - c(pc, 2 * i - 1)) - c(r, 2 * i)) * &b[(r, pc)].0;
                        let den = c(r, 2 * i + 1) - c(pc, 2 * i - 1);
                        out[r][pc] = Some(checked_div(num, &den, "σ case 3")?);
                    } else {
                        out[r][pc] = None;
                    }
                }
            } else {
                let delta = c(pc, 2 * i + 1) - c(pc, 2 * i - 1);
                out[pc][pc] = Some(checked_div(q(1), &delta, "σ case 4/5")?);
                for &r in &nbrs {
                    let qq = &paths[r];
                    if qq[2 * i - 2] == pp[2 * i - 2] && qq[2 * i + 1] == pp[2 * i + 1] {
                        out[r][pc] = Some(if paths_after(qq, pp) {
                            q(1) - checked_div(q(1), &Q::from(&delta * &delta), "σ case 5")?
                        } else {
                            q(1)
                        });
                    }
                }
            }
        } else {
            let pn = p_next.as_ref().expect("σ_{2i+1} needs p_{i+1}");
            let a = pp[2 * i - 1] == pp[2 * i + 1];
            let bq = pp[2 * i] == pp[2 * i + 2];
            if a && bq && pp[2 * i - 1] == pp[2 * i] {
                out[pc][pc] = Some(checked_div(c(pc, 2 * i), &b[(pc, pc)].0, "σ case 1")?);
                for &r in &nbrs {
                    if !b[(r, pc)].is_zero() {
                        let num = -Q::from(&b[(pc, pc)].0 * &b[(r, pc)].0);
                        let den = c(r, 2 * i + 2) - c(pc, 2 * i);
                        out[r][pc] = Some(checked_div(num, &den, "σ case 1")?);
                    }
                }
            } else if a && !bq {
                let mut v = pp.clone();
                v[2 * i] = pp[2 * i + 2];
                let vi = find(&v).ok_or_else(|| Error::Invariant("σ case 2 partner path missing".into()))?;
                for r in std::iter::once(pc).chain(nbrs.iter().copied()) {
                    if r == vi {
                        continue;
                    }
                    let delta = if r == pc { q(1) } else { q(0) };
                    let num = delta - Q::from(&b[(vi, pc)].0 * &pn[(r, vi)].0)
                        + (c(vi, 2 * i) - c(pc, 2 * i)) * &b[(r, pc)].0;
                    let den = c(r, 2 * i + 2) - c(pc, 2 * i);
                    out[r][pc] = Some(checked_div(num, &den, "σ case 2")?);
                }
                out[vi][pc] = Some(c(pc, 2 * i) * &b[(vi, pc)].0);
            } else if bq && !a {
                for r in std::iter::once(pc).chain(nbrs.iter().copied()) {
                    if paths[r][2 * i + 1] != pp[2 * i - 1] {
                        if r == pc {
                            let den = c(pc, 2 * i + 2) - c(pc, 2 * i);
                            out[r][pc] = Some(checked_div(q(1), &den, "σ case 3")?);
                        }
                    } else {
                        out[r][pc] = None;
                    }
                }
            } else if a && bq {
                return Err(Error::Invariant(format!("no σ_{} case matches path {pc}", 2 * i + 1)));
            } else {
                let delta = c(pc, 2 * i + 2) - c(pc, 2 * i);
                out[pc][pc] = Some(checked_div(q(1), &delta, "σ case 4/5")?);
                for &r in &nbrs {
                    out[r][pc] = Some(if paths_after(&paths[r], pp) {
                        q(1) - checked_div(q(1), &Q::from(&delta * &delta), "σ case 5")?
                    } else {
                        q(1)
                    });
                }
            }
        }
    }
    let mut mat = Mat::zeros(m, m);
    for r in 0..m {
        for c in 0..m {
            mat[(r, c)] = match &out[r][c] {
                Some(v) => Exact(v.clone()),
                None => {
                    let mirror = out[c][r].clone().ok_or_else(|| Error::Invariant("σ entries defined by each other".into()))?;
                    Exact(checked_div(mirror * &norms[c], &norms[r], "σ case 3 mirror")?)
                }
            };
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::AlgebraType;
    use crate::irreps::Chain;

    fn d() -> Q {
        Q::from((10007, 3))
    }

    fn irreps(n: usize) -> Vec<(Label, Vec<Path>)> {
        let chain = Chain::new(AlgebraType::partition(n)).unwrap();
        chain.labels().iter().map(|l| (l.clone(), chain.paths_to(l).to_vec())).collect()
    }

    fn check_relations(n: usize) {
        for (label, paths) in irreps(n) {
            let sh: Vec<Shapes> = paths.iter().map(shapes).collect();
            let f = seminormal(&sh, &d()).unwrap();
            let m = sh.len();
            let id = Mat::<Exact>::identity(m);
            let dd = Exact(d());
            for (i, s) in &f.s {
                assert_eq!(s.mul(s), id, "{label} s{i}²");
                assert_eq!(s.mul(&f.b[i]), f.b[i], "{label} s{i} b{i}");
                assert_eq!(s.mul(&f.p[i]).mul(s), f.p[&(i + 1)], "{label} s p s");
                if let Some(t) = f.s.get(&(i + 1)) {
                    assert_eq!(s.mul(t).mul(s), t.mul(s).mul(t), "{label} braid {i}");
                }
            }
            for (i, b) in &f.b {
                assert_eq!(b.mul(b), *b, "{label} b{i}²");
                assert_eq!(b.mul(&f.p[i]).mul(b), *b, "{label} b p b");
            }
            for (i, p) in &f.p {
                assert_eq!(p.mul(p), p.scale(&dd), "{label} p{i}²");
            }
        }
    }

    #[test]
    fn relations_hold_on_p2_and_p3() {
        check_relations(2);
        check_relations(3);
    }

    #[test]
    fn p2_empty_bridge_is_seminormal_projector() {
        let (_, paths) = irreps(2).into_iter().next().unwrap();
        let sh: Vec<Shapes> = paths.iter().map(shapes).collect();
        let dd = Q::from(100);
        let f = seminormal(&sh, &dd).unwrap();
        assert_eq!(f.b[&1][(0, 0)].0, Q::from((1, 100)));
        assert_eq!(f.b[&1][(1, 1)].0, Q::from((99, 100)));
        assert_eq!(f.norms[0], 1);
    }

    #[test]
    fn literal_sigma_route_breaks_on_p2() {
        // The printed σ cases divide by zero or violate s² = I already on P_2.
        let mut broken = false;
        for (_, paths) in irreps(2) {
            let sh: Vec<Shapes> = paths.iter().map(shapes).collect();
            let f = seminormal(&sh, &d()).unwrap();
            let e = sigma_literal(&sh, 1, &d(), &f.norms, false);
            let o = sigma_literal(&sh, 1, &d(), &f.norms, true);
            match (e, o) {
                (Ok(a), Ok(b)) => {
                    let s = a.mul(&b);
                    broken |= s.mul(&s) != Mat::identity(sh.len());
                }
                _ => broken = true,
            }
        }
        assert!(broken);
    }
}
