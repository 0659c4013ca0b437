//! Partition diagrams on `2n` vertices and their composition.
//!
//! Vertices are numbered `1..=2n` in the public API: `1..=n` is the top row
//! and `n+1..=2n` the bottom row (`j′ ↦ n + j`). Internally a diagram is
//! stored as a restricted-growth string over `0..2n`, which is the canonical
//! form "blocks sorted by their minimum element".

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Partition,
    Half,
    Brauer,
    Walled,
    Symmetric,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Partition => "partition",
            Family::Half => "half",
            Family::Brauer => "brauer",
            Family::Walled => "walled",
            Family::Symmetric => "symmetric",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "partition" => Ok(Family::Partition),
            "half" | "half-partition" => Ok(Family::Half),
            "brauer" => Ok(Family::Brauer),
            "walled" | "walled-brauer" => Ok(Family::Walled),
            "symmetric" => Ok(Family::Symmetric),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which algebra a diagram lives in: family, column count and wall.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraType {
    pub family: Family,
    pub n: usize,
    pub wall: Option<(usize, usize)>,
}

impl AlgebraType {
    pub fn new(family: Family, n: usize, wall: Option<(usize, usize)>) -> Result<Self> {
        match (family, wall) {
            (Family::Walled, Some((r, s))) if r + s == n => {}
            (Family::Walled, Some((r, s))) => {
                return Err(Error::Mismatch(format!("wall ({r},{s}) does not split n = {n}")))
            }
            (Family::Walled, None) => return Err(Error::Mismatch("walled family needs a wall".into())),
            (_, Some(_)) => return Err(Error::Mismatch(format!("{family} diagrams have no wall"))),
            _ => {}
        }
        if family == Family::Half && n == 0 {
            return Err(Error::OutOfRange("half-partition algebra needs n ≥ 1".into()));
        }
        Ok(AlgebraType { family, n, wall })
    }

    pub fn partition(n: usize) -> Self {
        AlgebraType { family: Family::Partition, n, wall: None }
    }

    /// `P_{n−1/2}`, realised on `n` columns.
    pub fn half(n: usize) -> Self {
        AlgebraType { family: Family::Half, n, wall: None }
    }

    pub fn brauer(n: usize) -> Self {
        AlgebraType { family: Family::Brauer, n, wall: None }
    }

    pub fn walled(r: usize, s: usize) -> Self {
        AlgebraType { family: Family::Walled, n: r + s, wall: Some((r, s)) }
    }

    pub fn symmetric(n: usize) -> Self {
        AlgebraType { family: Family::Symmetric, n, wall: None }
    }

    /// `r`, the number of columns left of the wall (`n` if there is no wall).
    pub fn left(&self) -> usize {
        self.wall.map_or(self.n, |(r, _)| r)
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.wall) {
            (Family::Walled, Some((r, s))) => write!(f, "B_{{{r},{s}}}"),
            (Family::Half, _) => write!(f, "P_{{{}.5}}", self.n - 1),
            (Family::Partition, _) => write!(f, "P_{}", self.n),
            (Family::Brauer, _) => write!(f, "B_{}", self.n),
            (Family::Symmetric, _) => write!(f, "S_{}", self.n),
            (Family::Walled, None) => write!(f, "B_?"),
        }
    }
}

/// A canonical set partition of the `2n` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    ty: AlgebraType,
    labels: Vec<u8>,
}

/// Result of stacking two diagrams: the product is `d^removed · diagram`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub diagram: Diagram,
    pub removed: usize,
}

/// Relabels block ids in first-occurrence order.
fn canonical(raw: &[usize]) -> Vec<u8> {
    let mut map: Vec<Option<u8>> = vec![None; raw.len().max(1) * 3 + 1];
    let mut next = 0u8;
    raw.iter()
        .map(|&b| {
            if b >= map.len() {
                map.resize(b + 1, None);
            }
            *map[b].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            })
        })
        .collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

impl Diagram {
    /// Builds a diagram from 1-based blocks and checks the family constraint.
    pub fn new(ty: AlgebraType, blocks: &[Vec<usize>]) -> Result<Self> {
        let n2 = 2 * ty.n;
        let mut owner = vec![usize::MAX; n2];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidDiagram("empty block".into()));
            }
            for &v in block {
                if v == 0 || v > n2 {
                    return Err(Error::InvalidDiagram(format!("vertex {v} outside 1..={n2}")));
                }
                if owner[v - 1] != usize::MAX {
                    return Err(Error::InvalidDiagram(format!("vertex {v} appears twice")));
                }
                owner[v - 1] = b;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidDiagram(format!("vertex {} is missing", v + 1)));
        }
        let d = Diagram { ty, labels: canonical(&owner) };
        d.check_family()?;
        Ok(d)
    }

    /// Builds from a 0-based block-label vector without family checks.
    pub fn from_labels(ty: AlgebraType, raw: &[usize]) -> Self {
        assert_eq!(raw.len(), 2 * ty.n);
        Diagram { ty, labels: canonical(raw) }
    }

    pub fn identity(ty: AlgebraType) -> Self {
        let raw: Vec<usize> = (0..2 * ty.n).map(|v| v % ty.n.max(1)).collect();
        Diagram::from_labels(ty, &raw)
    }

    /// The permutation diagram joining top `x` to bottom `perm[x]` (0-based).
    pub fn permutation(ty: AlgebraType, perm: &[usize]) -> Self {
        let n = ty.n;
        assert_eq!(perm.len(), n);
        let mut raw = vec![0; 2 * n];
        for (x, &y) in perm.iter().enumerate() {
            raw[x] = x;
            raw[n + y] = x;
        }
        Diagram::from_labels(ty, &raw)
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn family(&self) -> Family {
        self.ty.family
    }

    pub fn n(&self) -> usize {
        self.ty.n
    }

    pub fn wall(&self) -> Option<(usize, usize)> {
        self.ty.wall
    }

    /// Block id of each 0-based vertex.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Re-tags the diagram with another algebra of the same column count.
    pub fn retag(&self, ty: AlgebraType) -> Result<Self> {
        if ty.n != self.ty.n {
            return Err(Error::Mismatch("retag must keep the column count".into()));
        }
        let d = Diagram { ty, labels: self.labels.clone() };
        d.check_family()?;
        Ok(d)
    }

    /// Blocks as sorted lists of 1-based vertices, sorted by minimum.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); self.cc()];
        for (v, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(v + 1);
        }
        out
    }

    /// Number of connected components (blocks).
    pub fn cc(&self) -> usize {
        self.labels.iter().map(|&b| b as usize + 1).max().unwrap_or(0)
    }

    /// Number of blocks meeting both rows; for the half-partition family the
    /// block containing `n` and `n′` is not counted.
    pub fn propagating_number(&self) -> usize {
        let n = self.ty.n;
        let k = self.cc();
        let mut top = vec![false; k];
        let mut bottom = vec![false; k];
        for v in 0..n {
            top[self.labels[v] as usize] = true;
            bottom[self.labels[n + v] as usize] = true;
        }
        let mut count = (0..k).filter(|&b| top[b] && bottom[b]).count();
        if self.ty.family == Family::Half && n > 0 {
            count -= 1;
        }
        count
    }

    pub fn same_block(&self, u: usize, v: usize) -> bool {
        self.labels[u] == self.labels[v]
    }

    fn ensure_compatible(&self, other: &Diagram) -> Result<()> {
        if self.ty != other.ty {
            return Err(Error::Mismatch(format!("cannot combine {} with {}", self.ty, other.ty)));
        }
        Ok(())
    }

    /// Stacks `self` on top of `other` and removes closed middle components.
    pub fn compose(&self, other: &Diagram) -> Result<Composition> {
        self.ensure_compatible(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> Composition {
        let n = self.ty.n;
        // 0..n top of self, n..2n middle, 2n..3n bottom of other.
        let mut uf = UnionFind::new(3 * n);
        let mut first = vec![usize::MAX; 2 * n + 2];
        for (v, &b) in self.labels.iter().enumerate() {
            let b = b as usize;
            if first[b] == usize::MAX {
                first[b] = v;
            } else {
                uf.union(first[b], v);
            }
        }
        first.iter_mut().for_each(|x| *x = usize::MAX);
        for (v, &b) in other.labels.iter().enumerate() {
            let b = b as usize;
            let w = n + v;
            if first[b] == usize::MAX {
                first[b] = w;
            } else {
                uf.union(first[b], w);
            }
        }
        let mut touches_outer = vec![false; 3 * n];
        for v in (0..n).chain(2 * n..3 * n) {
            let r = uf.find(v);
            touches_outer[r] = true;
        }
        let mut removed = 0;
        for v in n..2 * n {
            let r = uf.find(v);
            if r == v && !touches_outer[r] {
                removed += 1;
            }
        }
        let raw: Vec<usize> = (0..n).chain(2 * n..3 * n).map(|v| uf.find(v)).collect();
        Composition { diagram: Diagram { ty: self.ty, labels: canonical(&raw) }, removed }
    }

    /// Finest set partition coarsening both diagrams (tagged as a partition diagram).
    pub fn join(&self, other: &Diagram) -> Result<Diagram> {
        if self.ty.n != other.ty.n {
            return Err(Error::Mismatch("join of diagrams with different n".into()));
        }
        let n2 = 2 * self.ty.n;
        let mut uf = UnionFind::new(n2);
        for d in [self, other] {
            let mut first = vec![usize::MAX; n2 + 1];
            for (v, &b) in d.labels.iter().enumerate() {
                let b = b as usize;
                if first[b] == usize::MAX {
                    first[b] = v;
                } else {
                    uf.union(first[b], v);
                }
            }
        }
        let raw: Vec<usize> = (0..n2).map(|v| uf.find(v)).collect();
        Ok(Diagram { ty: AlgebraType::partition(self.ty.n), labels: canonical(&raw) })
    }

    /// Number of blocks of the join, without building a diagram.
    pub fn join_cc(&self, other: &Diagram) -> usize {
        self.join(other).map(|j| j.cc()).unwrap_or(0)
    }

    /// Swaps the two rows (`D ↦ D^op`).
    pub fn involution(&self) -> Diagram {
        let n = self.ty.n;
        let raw: Vec<usize> = (0..2 * n).map(|v| self.labels[(v + n) % (2 * n)] as usize).collect();
        Diagram { ty: self.ty, labels: canonical(&raw) }
    }

    /// If every block is `{x, y′}`, returns `perm` with `perm[x] = y`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.ty.n;
        let mut perm = vec![usize::MAX; n];
        for block in self.blocks() {
            match block.as_slice() {
                [a, b] if *a <= n && *b > n => perm[a - 1] = b - n - 1,
                _ => return None,
            }
        }
        Some(perm)
    }

    /// Checks the structural constraint of the tagged family.
    pub fn check_family(&self) -> Result<()> {
        let n = self.ty.n;
        let blocks = self.blocks();
        let fam = self.ty.family;
        let err = |msg: String| Err(Error::FamilyConstraint(format!("{fam}: {msg}")));
        match fam {
            Family::Partition => Ok(()),
            Family::Half => {
                if n > 0 && !self.same_block(n - 1, 2 * n - 1) {
                    return err(format!("vertices {n} and {} must share a block", 2 * n));
                }
                Ok(())
            }
            Family::Brauer | Family::Walled | Family::Symmetric => {
                for b in &blocks {
                    if b.len() != 2 {
                        return err(format!("block {b:?} does not have size 2"));
                    }
                    if fam == Family::Symmetric && !(b[0] <= n && b[1] > n) {
                        return err(format!("block {b:?} does not join the two rows"));
                    }
                }
                if fam == Family::Walled {
                    let r = self.ty.left();
                    let side = |v: usize| ((v - 1) % n) < r;
                    let row_top = |v: usize| v <= n;
                    for b in &blocks {
                        let same_side = side(b[0]) == side(b[1]);
                        let same_row = row_top(b[0]) == row_top(b[1]);
                        if same_side == same_row {
                            return err(format!("block {b:?} violates the wall rule"));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Adds an identity column at the right end (`D ↦ D ⊗ id`).
    pub fn extend_identity(&self, ty: AlgebraType) -> Diagram {
        let n = self.ty.n;
        assert_eq!(ty.n, n + 1);
        let mut raw = vec![0usize; 2 * n + 2];
        for v in 0..n {
            raw[v] = self.labels[v] as usize;
            raw[n + 1 + v] = self.labels[n + v] as usize;
        }
        raw[n] = 2 * n + 1;
        raw[2 * n + 1] = 2 * n + 1;
        Diagram::from_labels(ty, &raw)
    }

    /// Places `self` on the columns `cols` (0-based, increasing) of a larger
    /// diagram and fills every other column with an identity strand.
    pub fn embed_columns(&self, ty: AlgebraType, cols: &[usize]) -> Diagram {
        let n = self.ty.n;
        let m = ty.n;
        assert_eq!(cols.len(), n);
        let mut raw = vec![usize::MAX; 2 * m];
        for (i, &c) in cols.iter().enumerate() {
            raw[c] = self.labels[i] as usize;
            raw[m + c] = self.labels[n + i] as usize;
        }
        let mut next = 2 * n + 1;
        for c in 0..m {
            if raw[c] == usize::MAX {
                raw[c] = next;
                raw[m + c] = next;
                next += 1;
            }
        }
        Diagram::from_labels(ty, &raw)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let inner: Vec<String> = b.iter().map(ToString::to_string).collect();
                format!("{{{}}}", inner.join(","))
            })
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Generator kinds: swaps `s`, points `p`, bridges `b`, contractions `e` and
/// walled contractions `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GenKind {
    S,
    P,
    B,
    E,
    F,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            GenKind::S => "s",
            GenKind::P => "p",
            GenKind::B => "b",
            GenKind::E => "e",
            GenKind::F => "f",
        };
        f.write_str(c)
    }
}

/// A generator with its 1-based index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Gen {
    pub kind: GenKind,
    pub i: usize,
}

impl Gen {
    pub fn s(i: usize) -> Gen {
        Gen { kind: GenKind::S, i }
    }
    pub fn p(i: usize) -> Gen {
        Gen { kind: GenKind::P, i }
    }
    pub fn b(i: usize) -> Gen {
        Gen { kind: GenKind::B, i }
    }
    pub fn e(i: usize) -> Gen {
        Gen { kind: GenKind::E, i }
    }
    pub fn f(i: usize) -> Gen {
        Gen { kind: GenKind::F, i }
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.i)
    }
}

/// The standard generator diagram of kind `kind` and 1-based index `i`.
pub fn generator(ty: AlgebraType, g: Gen) -> Result<Diagram> {
    let n = ty.n;
    let i = g.i;
    let range_err = || Error::OutOfRange(format!("{g} in {ty}"));
    if i == 0 {
        return Err(range_err());
    }
    let mut raw: Vec<usize> = (0..2 * n).map(|v| v % n).collect();
    let (a, b) = (i - 1, i);
    match g.kind {
        GenKind::S => {
            if i >= n {
                return Err(range_err());
            }
            raw[n + a] = b;
            raw[n + b] = a;
        }
        GenKind::P => {
            if i > n {
                return Err(range_err());
            }
            raw[a] = 2 * n;
            raw[n + a] = 2 * n + 1;
        }
        GenKind::B => {
            if i >= n {
                return Err(range_err());
            }
            raw[b] = a;
            raw[n + b] = a;
        }
        GenKind::E => {
            if i >= n {
                return Err(range_err());
            }
            raw[a] = a;
            raw[b] = a;
            raw[n + a] = b;
            raw[n + b] = b;
        }
        GenKind::F => {
            let (r, s) = ty
                .wall
                .ok_or_else(|| Error::Mismatch("f generators need a walled algebra".into()))?;
            if i > r || s + i > n || s + i <= r {
                return Err(range_err());
            }
            let c = s + i - 1;
            raw[a] = a;
            raw[c] = a;
            raw[n + a] = c;
            raw[n + c] = c;
        }
    }
    let d = Diagram::from_labels(ty, &raw);
    d.check_family()?;
    Ok(d)
}

/// Multiplies a word of diagrams left to right; returns the diagram and the
/// total number of removed components.
pub fn compose_all<'a>(ty: AlgebraType, word: impl IntoIterator<Item = &'a Diagram>) -> Result<Composition> {
    let mut acc = Composition { diagram: Diagram::identity(ty), removed: 0 };
    for d in word {
        let c = acc.diagram.compose(d)?;
        acc = Composition { diagram: c.diagram, removed: acc.removed + c.removed };
    }
    Ok(acc)
}

/// Default cap on the number of enumerated basis diagrams.
pub const DEFAULT_CAP: usize = 100_000;

/// Bell numbers `B_m` for `m ≤ 2n`.
pub fn bell(m: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..m {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = *next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

fn double_factorial_odd(k: usize) -> u128 {
    // (2k − 1)!!
    (1..=k).map(|j| (2 * j - 1) as u128).product()
}

fn factorial(k: usize) -> u128 {
    (1..=k).map(|j| j as u128).product()
}

/// Dimension of the algebra without enumerating it.
pub fn algebra_dimension(ty: AlgebraType) -> u128 {
    match ty.family {
        Family::Partition => bell(2 * ty.n),
        Family::Half => bell(2 * ty.n - 1),
        Family::Brauer => double_factorial_odd(ty.n),
        Family::Walled | Family::Symmetric => factorial(ty.n),
    }
}

/// All diagrams of the algebra in canonical (restricted-growth-string) order.
pub fn enumerate_basis(ty: AlgebraType, cap: usize) -> Result<Vec<Diagram>> {
    let size = algebra_dimension(ty);
    if size > cap as u128 {
        return Err(Error::CapExceeded { size: size.min(usize::MAX as u128) as usize, cap });
    }
    let n = ty.n;
    let mut out = Vec::with_capacity(size as usize);
    match ty.family {
        Family::Partition | Family::Half => {
            let mut rgs = vec![0usize; 2 * n];
            set_partitions(&mut rgs, 0, 0, &mut |labels| {
                let d = Diagram::from_labels(ty, labels);
                if d.check_family().is_ok() {
                    out.push(d);
                }
            });
        }
        Family::Brauer | Family::Walled | Family::Symmetric => {
            let mut mate = vec![usize::MAX; 2 * n];
            matchings(&mut mate, &mut |m| {
                let raw: Vec<usize> = (0..2 * n).map(|v| v.min(m[v])).collect();
                let d = Diagram::from_labels(ty, &raw);
                if d.check_family().is_ok() {
                    out.push(d);
                }
            });
            out.sort();
        }
    }
    out.sort();
    Ok(out)
}

fn set_partitions(rgs: &mut Vec<usize>, pos: usize, blocks: usize, visit: &mut impl FnMut(&[usize])) {
    if pos == rgs.len() {
        visit(rgs);
        return;
    }
    for b in 0..=blocks {
        rgs[pos] = b;
        set_partitions(rgs, pos + 1, blocks.max(b + 1), visit);
    }
}

fn matchings(mate: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    let Some(first) = mate.iter().position(|&m| m == usize::MAX) else {
        visit(mate);
        return;
    };
    for other in first + 1..mate.len() {
        if mate[other] == usize::MAX {
            mate[first] = other;
            mate[other] = first;
            matchings(mate, visit);
            mate[first] = usize::MAX;
            mate[other] = usize::MAX;
        }
    }
}

/// Serialised form `{"family", "n", "wall"?, "blocks"}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub family: Family,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall: Option<[usize; 2]>,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&Diagram> for DiagramJson {
    fn from(d: &Diagram) -> Self {
        DiagramJson {
            family: d.family(),
            n: d.n(),
            wall: d.wall().map(|(r, s)| [r, s]),
            blocks: d.blocks(),
        }
    }
}

impl TryFrom<&DiagramJson> for Diagram {
    type Error = Error;
    fn try_from(j: &DiagramJson) -> Result<Diagram> {
        let ty = AlgebraType::new(j.family, j.n, j.wall.map(|[r, s]| (r, s)))?;
        Diagram::new(ty, &j.blocks)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DiagramJson::deserialize(d)?;
        Diagram::try_from(&j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1() -> AlgebraType {
        AlgebraType::partition(1)
    }

    #[test]
    fn point_diagram_squares_to_d() {
        let p = Diagram::new(p1(), &[vec![1], vec![2]]).unwrap();
        let c = p.compose(&p).unwrap();
        assert_eq!(c.diagram, p);
        assert_eq!(c.removed, 1);
    }

    #[test]
    fn identity_is_neutral() {
        let ty = AlgebraType::partition(2);
        let id = Diagram::identity(ty);
        for d in enumerate_basis(ty, DEFAULT_CAP).unwrap() {
            assert_eq!(id.compose(&d).unwrap(), Composition { diagram: d.clone(), removed: 0 });
            assert_eq!(d.compose(&id).unwrap(), Composition { diagram: d.clone(), removed: 0 });
        }
    }

    #[test]
    fn bridge_is_idempotent() {
        let b1 = generator(AlgebraType::partition(2), Gen::b(1)).unwrap();
        let c = b1.compose(&b1).unwrap();
        assert_eq!((c.diagram, c.removed), (b1, 0));
    }

    #[test]
    fn generator_shapes() {
        let ty = AlgebraType::partition(2);
        assert_eq!(generator(ty, Gen::s(1)).unwrap().blocks(), vec![vec![1, 4], vec![2, 3]]);
        assert_eq!(generator(ty, Gen::p(2)).unwrap().blocks(), vec![vec![1, 3], vec![2], vec![4]]);
        assert!(generator(ty, Gen::s(2)).is_err());
        assert!(generator(ty, Gen::f(1)).is_err());
    }

    #[test]
    fn brauer_rejects_large_block() {
        let err = Diagram::new(AlgebraType::brauer(2), &[vec![1, 2, 3, 4]]);
        assert!(matches!(err, Err(Error::FamilyConstraint(_))));
    }

    #[test]
    fn invalid_vertex_sets() {
        let ty = AlgebraType::partition(1);
        assert!(Diagram::new(ty, &[vec![1, 2], vec![2]]).is_err());
        assert!(Diagram::new(ty, &[vec![1]]).is_err());
        assert!(Diagram::new(ty, &[vec![1, 3]]).is_err());
    }

    #[test]
    fn contraction_from_bridges_and_points() {
        let ty = AlgebraType::partition(2);
        let g = |x| generator(ty, x).unwrap();
        let word = [g(Gen::b(1)), g(Gen::p(1)), g(Gen::p(2)), g(Gen::b(1))];
        let c = compose_all(ty, word.iter()).unwrap();
        assert_eq!(c.diagram, g(Gen::e(1)));
        assert_eq!(c.removed, 0);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(enumerate_basis(AlgebraType::partition(1), DEFAULT_CAP).unwrap().len(), 2);
        assert_eq!(enumerate_basis(AlgebraType::partition(2), DEFAULT_CAP).unwrap().len(), 15);
        assert_eq!(enumerate_basis(AlgebraType::half(2), DEFAULT_CAP).unwrap().len(), 5);
        assert_eq!(enumerate_basis(AlgebraType::brauer(3), DEFAULT_CAP).unwrap().len(), 15);
        assert_eq!(enumerate_basis(AlgebraType::walled(2, 2), DEFAULT_CAP).unwrap().len(), 24);
        assert_eq!(enumerate_basis(AlgebraType::symmetric(3), DEFAULT_CAP).unwrap().len(), 6);
        assert!(matches!(
            enumerate_basis(AlgebraType::partition(5), DEFAULT_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn counts_for_example_diagram() {
        // Three components, two of them propagating.
        let ty = AlgebraType::partition(3);
        let d = Diagram::new(ty, &[vec![1, 2, 4], vec![3, 6], vec![5]]).unwrap();
        assert_eq!(d.cc(), 3);
        assert_eq!(d.propagating_number(), 2);
        let p2 = generator(ty, Gen::p(2)).unwrap();
        assert_eq!((p2.cc(), p2.propagating_number()), (4, 2));
    }

    #[test]
    fn walled_generators() {
        let ty = AlgebraType::walled(2, 2);
        assert!(generator(ty, Gen::s(2)).is_err());
        let e2 = generator(ty, Gen::e(2)).unwrap();
        assert_eq!(e2.blocks(), vec![vec![1, 5], vec![2, 3], vec![4, 8], vec![6, 7]]);
        let f1 = generator(ty, Gen::f(1)).unwrap();
        assert_eq!(f1.blocks(), vec![vec![1, 3], vec![2, 6], vec![4, 8], vec![5, 7]]);
        assert!(generator(ty, Gen::e(1)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let d = generator(AlgebraType::walled(1, 2), Gen::e(1)).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        let back: Diagram = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }
}
