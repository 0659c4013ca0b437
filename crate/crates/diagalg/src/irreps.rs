//! Young diagrams, irrep labels, dimensions, Schur multiplicities, branching
//! rules and Bratteli graphs for every supported chain.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::diagram::{AlgebraType, Family};
use crate::error::{Error, Result};

/// A Young diagram given by weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Young(Vec<usize>);

/// A box `(row, col)`, 0-based.
pub type Cell = (usize, usize);

impl Young {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        Ok(Young(parts))
    }

    pub fn empty() -> Self {
        Young(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Row length, zero beyond the last row.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Young {
        let cols = self.part(0);
        Young((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn content((row, col): Cell) -> i64 {
        col as i64 - row as i64
    }

    pub fn addable(&self) -> Vec<Cell> {
        (0..=self.len())
            .filter(|&i| i == 0 || self.part(i - 1) > self.part(i))
            .map(|i| (i, self.part(i)))
            .collect()
    }

    pub fn removable(&self) -> Vec<Cell> {
        (0..self.len())
            .filter(|&i| self.part(i) > self.part(i + 1))
            .map(|i| (i, self.part(i) - 1))
            .collect()
    }

    pub fn add(&self, (row, _): Cell) -> Young {
        let mut parts = self.0.clone();
        if row == parts.len() {
            parts.push(1);
        } else {
            parts[row] += 1;
        }
        Young(parts)
    }

    pub fn remove(&self, (row, _): Cell) -> Young {
        let mut parts = self.0.clone();
        parts[row] -= 1;
        if parts[row] == 0 {
            parts.pop();
        }
        Young(parts)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }

    pub fn hook(&self, (row, col): Cell) -> usize {
        let arm = self.part(row) - col - 1;
        let leg = self.0.iter().skip(row + 1).filter(|&&p| p > col).count();
        arm + leg + 1
    }

    /// Number of standard tableaux, `|λ|! / ∏ hooks`.
    pub fn hook_dim(&self) -> u128 {
        let mut num = Integer::from(1);
        for k in 1..=self.size() {
            num *= k as u32;
        }
        for c in self.cells() {
            num /= self.hook(c) as u32;
        }
        num.to_u128().expect("dimension fits in u128")
    }

    /// If `other` is `self` plus one box, that box.
    pub fn added_cell(&self, other: &Young) -> Option<Cell> {
        self.addable().into_iter().find(|&c| self.add(c) == *other)
    }

    /// All Young diagrams with exactly `k` boxes, in label order.
    pub fn all_of_size(k: usize) -> Vec<Young> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Young>) {
            if rest == 0 {
                out.push(Young(cur.clone()));
                return;
            }
            for p in 1..=rest.min(max) {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Young {
    /// `(|λ|, parts ascending lexicographically)`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Young {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Young {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// An irrep label: one Young diagram, or a pair for the walled family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    Single(Young),
    Pair(Young, Young),
}

impl Label {
    pub fn empty(family: Family) -> Label {
        match family {
            Family::Walled => Label::Pair(Young::empty(), Young::empty()),
            _ => Label::Single(Young::empty()),
        }
    }

    /// Total number of boxes `|ρ|`.
    pub fn size(&self) -> usize {
        match self {
            Label::Single(l) => l.size(),
            Label::Pair(l, m) => l.size() + m.size(),
        }
    }

    pub fn single(&self) -> &Young {
        match self {
            Label::Single(l) => l,
            Label::Pair(..) => panic!("pair label used as a single Young diagram"),
        }
    }

    pub fn pair(&self) -> (&Young, &Young) {
        match self {
            Label::Pair(l, m) => (l, m),
            Label::Single(_) => panic!("single label used as a pair"),
        }
    }

    pub fn mirrored(&self) -> Label {
        match self {
            Label::Pair(l, m) => Label::Pair(m.clone(), l.clone()),
            other => other.clone(),
        }
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Label::Single(a), Label::Single(b)) => a.cmp(b),
            (Label::Pair(a, b), Label::Pair(c, e)) => (a.size() + b.size())
                .cmp(&(c.size() + e.size()))
                .then_with(|| a.cmp(c))
                .then_with(|| b.cmp(e)),
            (Label::Single(_), Label::Pair(..)) => Ordering::Less,
            (Label::Pair(..), Label::Single(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Single(l) => write!(f, "{l}"),
            Label::Pair(l, m) => {
                let show = |y: &Young| if y.is_empty() { String::new() } else { y.to_string() };
                write!(f, "({}|{})", show(l), show(m))
            }
        }
    }
}

/// A Bratteli path: one label per level of the chain.
pub type Path = Vec<Label>;

pub fn path_string(p: &[Label]) -> String {
    let parts: Vec<String> = p.iter().map(ToString::to_string).collect();
    parts.join(" → ")
}

/// Which way a walled chain step moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WalledStep {
    Left,
    Right,
}

/// Per-level description of a chain.
#[derive(Clone, Debug)]
pub struct Level {
    /// The subalgebra at this level.
    pub ty: AlgebraType,
    /// Labels valid at this level, in label order.
    pub labels: Vec<Label>,
}

/// The subalgebra chain of an algebra with its Bratteli graph and paths.
#[derive(Clone, Debug)]
pub struct Chain {
    ty: AlgebraType,
    levels: Vec<Level>,
    walled_steps: Vec<WalledStep>,
    paths: BTreeMap<Label, Vec<Path>>,
    path_index: HashMap<Path, usize>,
}

fn stirling2(n: usize, k: usize) -> u128 {
    let mut t = vec![vec![0u128; n + 2]; n + 2];
    t[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            t[i][j] = j as u128 * t[i - 1][j] + t[i - 1][j - 1];
        }
    }
    t[n][k]
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn double_factorial(k: i64) -> u128 {
    // k!! for odd k ≥ −1.
    let mut acc = 1u128;
    let mut x = k;
    while x > 1 {
        acc *= x as u128;
        x -= 2;
    }
    acc
}

fn factorial(k: usize) -> u128 {
    (1..=k).map(|j| j as u128).product()
}

fn partitions_up_to(k: usize) -> Vec<Young> {
    (0..=k).flat_map(Young::all_of_size).collect()
}

/// Closed-form irrep dimension.
pub fn formula_dimension(ty: AlgebraType, label: &Label) -> u128 {
    let n = ty.n;
    match (ty.family, label) {
        (Family::Partition, Label::Single(l)) => {
            let k = l.size();
            l.hook_dim() * (k..=n).map(|j| stirling2(n, j) * binom(j, k)).sum::<u128>()
        }
        (Family::Half, Label::Single(l)) => {
            let k = l.size();
            l.hook_dim() * (k..n).map(|j| stirling2(n, j + 1) * binom(j, k)).sum::<u128>()
        }
        (Family::Brauer, Label::Single(l)) => {
            let k = l.size();
            l.hook_dim() * binom(n, k) * double_factorial(n as i64 - k as i64 - 1)
        }
        (Family::Symmetric, Label::Single(l)) => l.hook_dim(),
        (Family::Walled, Label::Pair(l, m)) => {
            let (r, s) = ty.wall.expect("walled type has a wall");
            let k = r - l.size();
            factorial(k) * binom(r, k) * binom(s, k) * l.hook_dim() * m.hook_dim()
        }
        _ => 0,
    }
}

/// Irrep labels of an algebra with their closed-form dimensions.
pub fn irrep_set(ty: AlgebraType) -> Vec<(Label, u128)> {
    labels_of(ty).into_iter().map(|l| {
        let d = formula_dimension(ty, &l);
        (l, d)
    }).collect()
}

/// Labels of irreps of `ty`, in label order.
pub fn labels_of(ty: AlgebraType) -> Vec<Label> {
    let n = ty.n;
    let mut out: Vec<Label> = match ty.family {
        Family::Partition => partitions_up_to(n).into_iter().map(Label::Single).collect(),
        Family::Half => partitions_up_to(n.saturating_sub(1)).into_iter().map(Label::Single).collect(),
        Family::Brauer => partitions_up_to(n)
            .into_iter()
            .filter(|l| (n - l.size()).is_multiple_of(2))
            .map(Label::Single)
            .collect(),
        Family::Symmetric => Young::all_of_size(n).into_iter().map(Label::Single).collect(),
        Family::Walled => {
            let (r, s) = ty.wall.expect("walled type has a wall");
            let mut v = Vec::new();
            for k in 0..=r.min(s) {
                for l in Young::all_of_size(r - k) {
                    for m in Young::all_of_size(s - k) {
                        v.push(Label::Pair(l.clone(), m));
                    }
                }
            }
            v
        }
    };
    out.sort();
    out
}

/// Schur multiplicity `m_ρ(d)`: the multiplicity of `ρ` in the Schur
/// representation on `(ℂ^d)^{⊗n}`. Errors if some factor is nonpositive.
pub fn schur_multiplicity(ty: AlgebraType, label: &Label, d: &Rational) -> Result<Rational> {
    let nonpos = |what: &str| Error::Inadmissible(format!("multiplicity factor {what} ≤ 0 at d = {d}"));
    match (ty.family, label) {
        (Family::Partition | Family::Half, Label::Single(l)) => {
            let k = l.size();
            let shift: i64 = if ty.family == Family::Half { 1 } else { 0 };
            let mut m = Rational::from(l.hook_dim());
            for j in 1..=k {
                m /= j as u32;
            }
            for j in 1..=k {
                let f = d - Rational::from(shift + k as i64 + l.part(j - 1) as i64 - j as i64);
                if f <= 0 {
                    return Err(nonpos("d − |ρ| − ρ_j + j"));
                }
                m *= f;
            }
            if ty.family == Family::Half {
                m *= d;
            }
            Ok(m)
        }
        (Family::Brauer, Label::Single(l)) => {
            let k = l.size();
            let conj = l.conjugate();
            let mut m = Rational::from(l.hook_dim());
            for j in 1..=k {
                m /= j as u32;
            }
            for (i0, j0) in l.cells() {
                let (i, j) = (i0 as i64 + 1, j0 as i64 + 1);
                let b = if i <= j {
                    l.part(i0) as i64 + l.part(j0) as i64 - i - j + 1
                } else {
                    -(conj.part(i0) as i64) - conj.part(j0) as i64 + i + j - 1
                };
                let f = d - Rational::from(1 - b);
                if f <= 0 {
                    return Err(nonpos("d − 1 + b(i,j)"));
                }
                m *= f;
            }
            Ok(m)
        }
        (Family::Symmetric, Label::Single(l)) => {
            // GL_d irrep dimension ∏ (d + cont)/hook.
            let mut m = Rational::from(1);
            for c in l.cells() {
                let f = Rational::from(d + Young::content(c));
                if f <= 0 {
                    return Err(nonpos("d + cont"));
                }
                m *= f;
                m /= l.hook(c) as u32;
            }
            Ok(m)
        }
        (Family::Walled, Label::Pair(l, mu)) => {
            let (r, s) = ty.wall.expect("walled type has a wall");
            walled_multiplicity(l, mu, r, s, d).ok_or_else(|| nonpos("walled factor"))
        }
        _ => Err(Error::Mismatch(format!("label {label} does not belong to {ty}"))),
    }
}

/// GL_d dimension of the mixed weight `(λ_1,…,λ_r,0,…,0,−μ_s,…,−μ_1)`,
/// written with `O(n²)` factors (ratios of rising factorials).
fn walled_multiplicity(l: &Young, mu: &Young, r: usize, s: usize, d: &Rational) -> Option<Rational> {
    let mut m = Rational::from(1);
    let ri = |y: &Young, i: usize| y.part(i - 1) as i64;
    for (y, len) in [(l, r), (mu, s)] {
        for i in 1..=len {
            for j in i + 1..=len {
                m *= Rational::from((ri(y, i) - ri(y, j) + j as i64 - i as i64, (j - i) as i64));
            }
        }
    }
    for i in 1..=r {
        for j in 1..=s {
            let num = Rational::from(d + (ri(l, i) + ri(mu, j) - i as i64 - j as i64 + 1));
            let den = Rational::from(d - (i as i64 + j as i64 - 1));
            if num <= 0 || den <= 0 {
                return None;
            }
            m *= num / den;
        }
    }
    let gap = Rational::from(d - (r + s) as i64);
    for (y, len) in [(l, r), (mu, s)] {
        for i in 1..=len {
            for q in 0..ri(y, i) {
                let base = (len - i + 1) as i64 + q;
                let num = Rational::from(&gap + base);
                if num <= 0 {
                    return None;
                }
                m *= num / Rational::from(base);
            }
        }
    }
    Some(m)
}

impl Chain {
    pub fn new(ty: AlgebraType) -> Result<Self> {
        let (levels, walled_steps) = build_levels(ty)?;
        let mut chain = Chain { ty, levels, walled_steps, paths: BTreeMap::new(), path_index: HashMap::new() };
        chain.build_paths();
        Ok(chain)
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Index of the top level.
    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn labels(&self) -> &[Label] {
        &self.levels[self.top()].labels
    }

    /// Walled step kind taking level `l` to `l + 1`.
    pub fn walled_step(&self, l: usize) -> WalledStep {
        self.walled_steps[l]
    }

    /// Labels at level `l + 1` that restrict to `child` at level `l`.
    pub fn parents(&self, l: usize, child: &Label) -> Vec<Label> {
        let next = &self.levels[l + 1].labels;
        let mut out: Vec<Label> = step_up(self.ty.family, l, self.walled_steps.get(l).copied(), child)
            .into_iter()
            .filter(|p| next.contains(p))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Labels at level `l − 1` appearing in the restriction of `parent`.
    pub fn children(&self, l: usize, parent: &Label) -> Vec<Label> {
        assert!(l > 0, "level 0 has no children");
        self.levels[l - 1]
            .labels
            .iter()
            .filter(|c| self.parents(l - 1, c).contains(parent))
            .cloned()
            .collect()
    }

    fn build_paths(&mut self) {
        let mut frontier: Vec<Path> = vec![vec![Label::empty(self.ty.family)]];
        for l in 0..self.top() {
            let mut next = Vec::new();
            for p in &frontier {
                for q in self.parents(l, p.last().unwrap()) {
                    let mut np = p.clone();
                    np.push(q);
                    next.push(np);
                }
            }
            frontier = next;
        }
        frontier.sort_by(|a, b| a.cmp_lex(b));
        let mut map: BTreeMap<Label, Vec<Path>> = BTreeMap::new();
        for p in frontier {
            map.entry(p.last().unwrap().clone()).or_default().push(p);
        }
        for paths in map.values() {
            for (i, p) in paths.iter().enumerate() {
                self.path_index.insert(p.clone(), i);
            }
        }
        self.paths = map;
    }

    /// Paths ending at `label`, lexicographically ordered.
    pub fn paths_to(&self, label: &Label) -> &[Path] {
        self.paths.get(label).map_or(&[], Vec::as_slice)
    }

    pub fn path_index(&self, p: &[Label]) -> Option<usize> {
        self.path_index.get(p).copied()
    }

    pub fn dim(&self, label: &Label) -> usize {
        self.paths_to(label).len()
    }

    /// Labels at the top level together with their path counts.
    pub fn irreps(&self) -> Vec<(Label, usize)> {
        self.labels().iter().map(|l| (l.clone(), self.dim(l))).collect()
    }

    /// The subalgebra type at level `l`.
    pub fn level_type(&self, l: usize) -> AlgebraType {
        self.levels[l].ty
    }

    /// The chain of the subalgebra at level `l`.
    pub fn prefix(&self, l: usize) -> Result<Chain> {
        Chain::new(self.levels[l].ty)
    }

    /// DOT rendering: one rank per level.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph bratteli {\n  rankdir=TB;\n  node [shape=box];\n");
        let id = |l: usize, lab: &Label| format!("\"{l}:{lab}\"");
        for (l, level) in self.levels.iter().enumerate() {
            s.push_str("  { rank=same;");
            for lab in &level.labels {
                s.push_str(&format!(" {} [label=\"{}\"];", id(l, lab), dot_label(lab)));
            }
            s.push_str(" }\n");
        }
        for l in 0..self.top() {
            for child in &self.levels[l].labels {
                for parent in self.parents(l, child) {
                    s.push_str(&format!("  {} -- {};\n", id(l, child), id(l + 1, &parent)));
                }
            }
        }
        s.push_str("}\n");
        s
    }
}

fn dot_label(l: &Label) -> String {
    match l {
        Label::Single(y) if y.is_empty() => "∅".into(),
        Label::Single(y) => y.parts().iter().map(ToString::to_string).collect::<Vec<_>>().join(","),
        Label::Pair(..) => l.to_string(),
    }
}

trait LexPath {
    fn cmp_lex(&self, other: &Self) -> Ordering;
}

impl LexPath for Path {
    fn cmp_lex(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

fn grow(l: &Young) -> Vec<Young> {
    l.addable().into_iter().map(|c| l.add(c)).collect()
}

fn shrink(l: &Young) -> Vec<Young> {
    l.removable().into_iter().map(|c| l.remove(c)).collect()
}

/// Candidate parents of `child` one level up.
fn step_up(family: Family, l: usize, walled: Option<WalledStep>, child: &Label) -> Vec<Label> {
    match (family, child) {
        (Family::Partition | Family::Half, Label::Single(y)) => {
            let mut out = vec![Label::Single(y.clone())];
            let moved = if l.is_multiple_of(2) { shrink(y) } else { grow(y) };
            out.extend(moved.into_iter().map(Label::Single));
            out
        }
        (Family::Brauer, Label::Single(y)) => {
            grow(y).into_iter().chain(shrink(y)).map(Label::Single).collect()
        }
        (Family::Symmetric, Label::Single(y)) => grow(y).into_iter().map(Label::Single).collect(),
        (Family::Walled, Label::Pair(a, b)) => {
            let (grow_side, shrink_side) = match walled.expect("walled chains record their steps") {
                WalledStep::Left => (true, false),
                WalledStep::Right => (false, true),
            };
            let mut out = Vec::new();
            if grow_side {
                out.extend(grow(a).into_iter().map(|x| Label::Pair(x, b.clone())));
                out.extend(shrink(b).into_iter().map(|x| Label::Pair(a.clone(), x)));
            }
            if shrink_side {
                out.extend(shrink(a).into_iter().map(|x| Label::Pair(x, b.clone())));
                out.extend(grow(b).into_iter().map(|x| Label::Pair(a.clone(), x)));
            }
            out
        }
        _ => Vec::new(),
    }
}

fn build_levels(ty: AlgebraType) -> Result<(Vec<Level>, Vec<WalledStep>)> {
    let n = ty.n;
    let mut levels = Vec::new();
    let mut steps = Vec::new();
    match ty.family {
        Family::Partition | Family::Half => {
            let top = if ty.family == Family::Partition { 2 * n } else { 2 * n - 1 };
            for l in 0..=top {
                let sub = if l % 2 == 0 { AlgebraType::partition(l / 2) } else { AlgebraType::half(l / 2 + 1) };
                levels.push(Level { ty: sub, labels: labels_of(sub) });
            }
        }
        Family::Brauer => {
            for k in 0..=n {
                let sub = AlgebraType::brauer(k);
                levels.push(Level { ty: sub, labels: labels_of(sub) });
            }
        }
        Family::Symmetric => {
            for k in 0..=n {
                let sub = AlgebraType::symmetric(k);
                levels.push(Level { ty: sub, labels: labels_of(sub) });
            }
        }
        Family::Walled => {
            let (r, s) = ty.wall.ok_or_else(|| Error::Mismatch("walled type without wall".into()))?;
            let (mut a, mut b) = (0, 0);
            levels.push(Level { ty: AlgebraType::walled(0, 0), labels: labels_of(AlgebraType::walled(0, 0)) });
            while (a, b) != (r, s) {
                // Alternate starting on the smaller side, then finish the larger side.
                let step = if r <= s {
                    if a < r && a == b { WalledStep::Left } else { WalledStep::Right }
                } else if b < s && a == b {
                    WalledStep::Right
                } else {
                    WalledStep::Left
                };
                match step {
                    WalledStep::Left => a += 1,
                    WalledStep::Right => b += 1,
                }
                steps.push(step);
                let sub = AlgebraType::walled(a, b);
                levels.push(Level { ty: sub, labels: labels_of(sub) });
            }
        }
    }
    Ok((levels, steps))
}

/// Number of basis diagrams with each propagating number, computed from the
/// closed-form irrep dimensions: `Σ_{|ρ| = k} d_ρ²`.
pub fn dims_squared_by_size(ty: AlgebraType) -> BTreeMap<usize, u128> {
    let mut out = BTreeMap::new();
    for (l, d) in irrep_set(ty) {
        *out.entry(l.size()).or_insert(0) += d * d;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(p: &[usize]) -> Young {
        Young::new(p.to_vec()).unwrap()
    }

    #[test]
    fn hook_dims() {
        assert_eq!(Young::empty().hook_dim(), 1);
        assert_eq!(y(&[2, 1]).hook_dim(), 2);
        let s: u128 = Young::all_of_size(4).iter().map(|l| l.hook_dim().pow(2)).sum();
        assert_eq!(s, 24);
    }

    #[test]
    fn addable_exceeds_removable_by_one() {
        for k in 0..6 {
            for l in Young::all_of_size(k) {
                assert_eq!(l.addable().len(), l.removable().len() + 1);
            }
        }
    }

    #[test]
    fn label_order() {
        assert!(y(&[1, 1]) < y(&[2]));
        assert!(y(&[2]) < y(&[1, 1, 1]));
    }

    #[test]
    fn p2_paths() {
        let c = Chain::new(AlgebraType::partition(2)).unwrap();
        let box1 = Label::Single(y(&[1]));
        let e = Label::Single(Young::empty());
        let paths = c.paths_to(&box1);
        assert_eq!(paths.len(), 3);
        assert_eq!(paths[0], vec![e.clone(), e.clone(), e.clone(), e.clone(), box1.clone()]);
        assert_eq!(paths[1], vec![e.clone(), e.clone(), box1.clone(), e.clone(), box1.clone()]);
        assert_eq!(paths[2], vec![e.clone(), e.clone(), box1.clone(), box1.clone(), box1.clone()]);
        assert_eq!(c.dim(&e), 2);
    }

    #[test]
    fn brauer_one_single_path() {
        let c = Chain::new(AlgebraType::brauer(1)).unwrap();
        let irreps = c.irreps();
        assert_eq!(irreps.len(), 1);
        assert_eq!(irreps[0].1, 1);
    }

    #[test]
    fn walled_32_total() {
        let ty = AlgebraType::walled(3, 2);
        let c = Chain::new(ty).unwrap();
        let total: usize = c.irreps().iter().map(|(_, d)| d * d).sum();
        assert_eq!(total, 120);
        for (l, d) in c.irreps() {
            assert_eq!(d as u128, formula_dimension(ty, &l));
        }
    }

    #[test]
    fn multiplicities_sum_to_tensor_dimension() {
        let d = Rational::from(17);
        for ty in [
            AlgebraType::partition(1),
            AlgebraType::partition(2),
            AlgebraType::partition(3),
            AlgebraType::half(2),
            AlgebraType::half(3),
            AlgebraType::brauer(3),
            AlgebraType::brauer(4),
            AlgebraType::walled(2, 1),
            AlgebraType::walled(2, 2),
            AlgebraType::symmetric(3),
        ] {
            let mut total = Rational::new();
            for (l, dim) in irrep_set(ty) {
                total += schur_multiplicity(ty, &l, &d).unwrap() * Rational::from(dim);
            }
            assert_eq!(total, Rational::from(17u32).pow_u(ty.n), "{ty}");
        }
    }

    trait PowU {
        fn pow_u(self, k: usize) -> Rational;
    }
    impl PowU for Rational {
        fn pow_u(self, k: usize) -> Rational {
            (0..k).fold(Rational::from(1), |acc, _| acc * &self)
        }
    }
}
