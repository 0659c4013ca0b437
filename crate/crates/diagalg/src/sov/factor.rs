//! Transversal tables and the last possible factorization `D = w₁ D_b w₂`.
//!
//! Each transversal is stored as `w₁ = π₁ r₁`, `w₂ = r₂ π₂` with `π₁, π₂`
//! permutations and `r₁, r₂` short words in the non-invertible
//! generators. The table is sorted ascending under the factorization order;
//! the factorization picks the greatest entry that admits a subalgebra
//! diagram.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::diagram::{compose_all, enumerate_basis, generator, AlgebraType, Diagram, Family, Gen};
use crate::error::{Error, Result};

/// Which factorization case a transversal belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case {
    BrauerNoPropagation,
    Brauer1,
    Brauer2,
    WalledNoPropagation,
    Walled1,
    Walled2,
    /// Partition, no propagation, sub-case 1–4.
    PartitionNoPropagation(u8),
    /// Partition with a propagating block, sub-case 1–3.
    Partition(u8),
    Symmetric,
}

impl Case {
    /// Whether the right word carries `e_{n−1}`, `f_r` or `p_n`.
    pub fn prop_zero(self) -> bool {
        matches!(self, Case::BrauerNoPropagation | Case::WalledNoPropagation | Case::PartitionNoPropagation(_))
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::BrauerNoPropagation => f.write_str("Brauer, No Propagation"),
            Case::Brauer1 => f.write_str("Brauer 1"),
            Case::Brauer2 => f.write_str("Brauer 2"),
            Case::WalledNoPropagation => f.write_str("Walled Brauer, No Propagation"),
            Case::Walled1 => f.write_str("Walled Brauer 1"),
            Case::Walled2 => f.write_str("Walled Brauer 2"),
            Case::PartitionNoPropagation(k) => write!(f, "Partition, No Propagation {k}"),
            Case::Partition(k) => write!(f, "Partition {k}"),
            Case::Symmetric => f.write_str("Symmetric"),
        }
    }
}

/// One transversal pair `(w₁, w₂)`.
#[derive(Clone, Debug, Serialize)]
pub struct Transversal {
    pub case: Case,
    /// Position of the case block in the order (smaller blocks come first).
    pub rank: u8,
    /// Index tuple compared lexicographically inside a block.
    pub key: Vec<usize>,
    /// `π₁` in one-line form: top strand `x` meets bottom `left_perm[x−1]`
    /// (1-based).
    pub left_perm: Vec<usize>,
    pub left_rest: Vec<Gen>,
    pub right_rest: Vec<Gen>,
    pub right_perm: Vec<usize>,
}

impl Transversal {
    pub fn order_cmp(&self, other: &Self) -> Ordering {
        self.rank.cmp(&other.rank).then_with(|| self.key.cmp(&other.key))
    }

    /// Whether `b_{n−1}` occurs in `r₁` / `r₂`.
    pub fn bridge_left(&self) -> bool {
        self.left_rest.iter().any(|g| g.kind == crate::diagram::GenKind::B)
    }

    pub fn bridge_right(&self) -> bool {
        self.right_rest.iter().any(|g| g.kind == crate::diagram::GenKind::B)
    }
}

/// Cycle notation without fixed points.
fn cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start + 1 {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push((x + 1).to_string());
            x = perm[x] - 1;
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    out
}

fn word(perm: &[usize], rest: &[Gen], perm_first: bool) -> String {
    let p = cycles(perm);
    let r: String = rest.iter().map(ToString::to_string).collect();
    let s = if perm_first { format!("{p}{r}") } else { format!("{r}{p}") };
    if s.is_empty() {
        "I".into()
    } else {
        s
    }
}

impl fmt::Display for Transversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", word(&self.left_perm, &self.left_rest, true), word(&self.right_perm, &self.right_rest, false))
    }
}

/// The four diagrams of a transversal, ready for composition.
#[derive(Clone, Debug)]
pub struct TransversalDiagrams {
    pub pi1: Diagram,
    pub r1: Diagram,
    pub r2: Diagram,
    pub pi2: Diagram,
}

/// Result of the last possible factorization.
#[derive(Clone, Debug)]
pub struct Factorization {
    /// Index into the ascending transversal table.
    pub transversal: usize,
    pub sub: Diagram,
    /// `w₁ · D_b · w₂ = d^{d_power} · D`.
    pub d_power: usize,
}

/// All transversals of `A` over its chain subalgebra `B`, ascending.
#[derive(Clone, Debug)]
pub struct TransversalTable {
    ty: AlgebraType,
    sub: AlgebraType,
    /// Columns of `A` occupied by `B` (0-based, increasing).
    sub_cols: Vec<usize>,
    entries: Vec<Transversal>,
    diagrams: Vec<TransversalDiagrams>,
}

/// One-line form of the transposition `(a b)`.
fn transp(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (1..=n).collect();
    p.swap(a - 1, b - 1);
    p
}

/// The permutation sending strand `a` to `k`, strand `b` to `l` and the
/// remaining strands, in increasing order, onto the remaining positions.
fn pair_coset(n: usize, (a, k): (usize, usize), (b, l): (usize, usize)) -> Vec<usize> {
    let mut rest = (1..=n).filter(|&v| v != k && v != l);
    (1..=n)
        .map(|x| match x {
            _ if x == a => k,
            _ if x == b => l,
            _ => rest.next().expect("a bijection"),
        })
        .collect()
}

fn ident(n: usize) -> Vec<usize> {
    (1..=n).collect()
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        q[y - 1] = x + 1;
    }
    q
}

fn perm_diagram(ty: AlgebraType, p: &[usize]) -> Diagram {
    let zero: Vec<usize> = p.iter().map(|&y| y - 1).collect();
    Diagram::permutation(ty, &zero)
}

fn word_diagram(ty: AlgebraType, gens: &[Gen]) -> Result<Diagram> {
    let ds = gens.iter().map(|&g| generator(ty, g)).collect::<Result<Vec<_>>>()?;
    let c = compose_all(ty, ds.iter())?;
    if c.removed != 0 {
        return Err(Error::Invariant("transversal word closes a loop".into()));
    }
    Ok(c.diagram)
}

struct Builder {
    out: Vec<Transversal>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        case: Case,
        rank: u8,
        key: Vec<usize>,
        left_perm: Vec<usize>,
        left_rest: Vec<Gen>,
        right_rest: Vec<Gen>,
        right_perm: Vec<usize>,
    ) {
        self.out.push(Transversal { case, rank, key, left_perm, left_rest, right_rest, right_perm });
    }
}

/// The chain subalgebra used by one recursion step and its columns.
pub fn sub_step(ty: AlgebraType) -> Result<(AlgebraType, Vec<usize>)> {
    let n = ty.n;
    if n == 0 {
        return Err(Error::OutOfRange(format!("{ty} has no proper chain subalgebra")));
    }
    Ok(match ty.family {
        Family::Brauer if n % 2 == 1 => (AlgebraType::brauer(n - 1), (0..n - 1).collect()),
        Family::Brauer => (AlgebraType::brauer(n - 2), (0..n - 2).collect()),
        Family::Partition => (AlgebraType::partition(n - 1), (0..n - 1).collect()),
        Family::Symmetric => (AlgebraType::symmetric(n - 1), (0..n - 1).collect()),
        Family::Walled => {
            let (r, s) = ty.wall.ok_or_else(|| Error::Mismatch("walled type without wall".into()))?;
            if r > s {
                return Err(Error::Unsupported(format!("{ty}: factor the mirrored algebra B_{{{s},{r}}}")));
            }
            if s > r {
                (AlgebraType::walled(r, s - 1), (0..n - 1).collect())
            } else {
                (AlgebraType::walled(r - 1, r - 1), (0..r - 1).chain(r..n - 1).collect())
            }
        }
        Family::Half => return Err(Error::Unsupported("separation of variables for the half-partition family".into())),
    })
}

fn enumerate(ty: AlgebraType) -> Result<Vec<Transversal>> {
    let n = ty.n;
    let mut b = Builder { out: Vec::new() };
    match ty.family {
        Family::Brauer if n % 2 == 1 => {
            for i in 1..=n {
                for k in 1..=n {
                    b.push(Case::Brauer2, 0, vec![i, k], transp(n, i, n), vec![], vec![], transp(n, k, n));
                }
            }
        }
        Family::Brauer => {
            for i in 1..n {
                for k in 1..n {
                    b.push(Case::BrauerNoPropagation, 0, vec![i, k], transp(n, i, n - 1), vec![], vec![Gen::e(n - 1)], transp(n, k, n - 1));
                }
            }
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in 1..=n {
                        // Ordered pairs on the right: with k < l as well, odd
                        // permutations of the last two strands are unreachable.
                        for l in (1..=n).filter(|&l| l != k) {
                            b.push(
                                Case::Brauer1,
                                1,
                                vec![i, j, k, l],
                                inverse(&pair_coset(n, (n - 1, i), (n, j))),
                                vec![],
                                vec![],
                                pair_coset(n, (n - 1, k), (n, l)),
                            );
                        }
                    }
                }
            }
        }
        Family::Symmetric => {
            for i in 1..=n {
                for k in 1..=n {
                    b.push(Case::Symmetric, 0, vec![i, k], transp(n, i, n), vec![], vec![], transp(n, k, n));
                }
            }
        }
        Family::Walled => {
            let (r, s) = ty.wall.expect("walled type has a wall");
            if s > r {
                for j in r + 1..=n {
                    for l in r + 1..=n {
                        b.push(Case::Walled1, 0, vec![j, l], transp(n, j, n), vec![], vec![], transp(n, l, n));
                    }
                }
            } else {
                for i in 1..=r {
                    for k in 1..=r {
                        b.push(Case::WalledNoPropagation, 0, vec![i, k], transp(n, i, r), vec![], vec![Gen::f(r)], transp(n, k, r));
                    }
                }
                for i in 1..=r {
                    for j in r + 1..=n {
                        for k in 1..=r {
                            for l in r + 1..=n {
                                b.push(
                                    Case::Walled2,
                                    1,
                                    vec![i, j, k, l],
                                    inverse(&pair_coset(n, (r, i), (n, j))),
                                    vec![],
                                    vec![],
                                    pair_coset(n, (r, k), (n, l)),
                                );
                            }
                        }
                    }
                }
            }
        }
        Family::Partition => {
            // W_{0,4} < W_{0,3} < W_{0,2} < W_{0,1} < W_{+,3} < W_{+,2} < W_{+,1}.
            let m = n.saturating_sub(1);
            if n >= 2 {
                for i in 1..=m {
                    for j in 1..=m {
                        b.push(
                            Case::PartitionNoPropagation(4),
                            0,
                            vec![i, j],
                            transp(n, i, m),
                            vec![Gen::b(m)],
                            vec![Gen::p(n), Gen::b(m)],
                            transp(n, j, m),
                        );
                    }
                }
                for i in 1..=m {
                    b.push(Case::PartitionNoPropagation(3), 1, vec![i], transp(n, i, m), vec![Gen::b(m)], vec![Gen::p(n)], ident(n));
                }
                for i in 1..=m {
                    b.push(Case::PartitionNoPropagation(2), 2, vec![i], ident(n), vec![], vec![Gen::p(n), Gen::b(m)], transp(n, i, m));
                }
            }
            b.push(Case::PartitionNoPropagation(1), 3, vec![], ident(n), vec![], vec![Gen::p(n)], ident(n));
            if n >= 2 {
                for i in 1..=n {
                    for k in 1..=n {
                        for l in k + 1..=n {
                            b.push(Case::Partition(3), 4, vec![i, k, l], transp(n, i, n), vec![], vec![Gen::b(m)], pair_coset(n, (m, k), (n, l)));
                        }
                    }
                }
                for i in 1..=n {
                    for j in i + 1..=n {
                        for k in 1..=n {
                            b.push(Case::Partition(2), 5, vec![i, j, k], inverse(&pair_coset(n, (m, i), (n, j))), vec![Gen::b(m)], vec![], transp(n, k, n));
                        }
                    }
                }
            }
            for i in 1..=n {
                for k in 1..=n {
                    b.push(Case::Partition(1), 6, vec![i, k], transp(n, i, n), vec![], vec![], transp(n, k, n));
                }
            }
        }
        Family::Half => return Err(Error::Unsupported("half-partition transversals".into())),
    }
    let mut out = b.out;
    out.sort_by(Transversal::order_cmp);
    Ok(out)
}

/// Restricts a diagram to the columns `cols`, keeping the block structure
/// induced on those vertices. `None` if the result violates `sub`'s family.
pub fn restrict_columns(d: &Diagram, sub: AlgebraType, cols: &[usize]) -> Option<Diagram> {
    let n = d.n();
    let m = sub.n;
    let lab = d.labels();
    let raw: Vec<usize> = cols.iter().map(|&c| lab[c] as usize).chain(cols.iter().map(|&c| lab[n + c] as usize)).collect();
    debug_assert_eq!(raw.len(), 2 * m);
    let r = Diagram::from_labels(sub, &raw);
    r.check_family().ok().map(|_| r)
}

impl TransversalTable {
    pub fn new(ty: AlgebraType) -> Result<Self> {
        let (sub, sub_cols) = sub_step(ty)?;
        let entries = enumerate(ty)?;
        let diagrams = entries
            .iter()
            .map(|t| {
                Ok(TransversalDiagrams {
                    pi1: perm_diagram(ty, &t.left_perm),
                    r1: word_diagram(ty, &t.left_rest)?,
                    r2: word_diagram(ty, &t.right_rest)?,
                    pi2: perm_diagram(ty, &t.right_perm),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(TransversalTable { ty, sub, sub_cols, entries, diagrams })
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn sub(&self) -> AlgebraType {
        self.sub
    }

    pub fn sub_cols(&self) -> &[usize] {
        &self.sub_cols
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Transversal] {
        &self.entries
    }

    pub fn diagrams(&self, t: usize) -> &TransversalDiagrams {
        &self.diagrams[t]
    }

    /// `D_b` placed on the subalgebra columns of `A`.
    pub fn embed(&self, sub: &Diagram) -> Diagram {
        sub.embed_columns(self.ty, &self.sub_cols)
    }

    /// `w₁ · D_b · w₂` with its removed-loop count.
    pub fn recompose(&self, t: usize, sub: &Diagram) -> Result<(Diagram, usize)> {
        let td = &self.diagrams[t];
        let mid = self.embed(sub);
        let c = compose_all(self.ty, [&td.pi1, &td.r1, &mid, &td.r2, &td.pi2])?;
        Ok((c.diagram, c.removed))
    }

    /// Whether `D = w₁ D_b w₂` for some `D_b`, found by undoing the
    /// permutations and restricting to the subalgebra columns.
    pub fn try_factor(&self, t: usize, d: &Diagram) -> Result<Option<(Diagram, usize)>> {
        let td = &self.diagrams[t];
        let core = compose_all(self.ty, [&td.pi1.involution(), d, &td.pi2.involution()])?.diagram;
        let Some(cand) = restrict_columns(&core, self.sub, &self.sub_cols) else {
            return Ok(None);
        };
        let (back, removed) = self.recompose(t, &cand)?;
        Ok((back == *d).then_some((cand, removed)))
    }

    /// The last possible factorization of `d`.
    pub fn last_possible_factorization(&self, d: &Diagram) -> Result<Factorization> {
        if d.ty() != self.ty {
            return Err(Error::Mismatch(format!("{} is not a diagram of {}", d, self.ty)));
        }
        for t in (0..self.entries.len()).rev() {
            if let Some((sub, d_power)) = self.try_factor(t, d)? {
                return Ok(Factorization { transversal: t, sub, d_power });
            }
        }
        Err(Error::Invariant(format!("{d} has no factorization over {}", self.sub)))
    }

    /// Every transversal admitting some subalgebra diagram, found by trying
    /// all of `D(B)`.
    pub fn brute_force_valid(&self, d: &Diagram, sub_basis: &[Diagram]) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for t in 0..self.entries.len() {
            for b in sub_basis {
                if self.recompose(t, b)?.0 == *d {
                    out.push(t);
                    break;
                }
            }
        }
        Ok(out)
    }
}

/// Outcome of the exhaustive factorization audit of one algebra.
#[derive(Clone, Debug, Serialize)]
pub struct FactorAudit {
    pub algebra: String,
    pub diagrams: usize,
    pub transversals: usize,
    pub round_trip_failures: usize,
    pub maximality_failures: usize,
    pub nonzero_d_power: usize,
    /// Propagating number zero exactly when the chosen case is a no-propagation case.
    pub prop_zero_mismatches: usize,
}

impl FactorAudit {
    pub fn passed(&self) -> bool {
        self.round_trip_failures == 0 && self.maximality_failures == 0 && self.prop_zero_mismatches == 0
    }
}

/// Round trip plus brute-force maximality over every diagram of `ty`.
pub fn audit(ty: AlgebraType) -> Result<FactorAudit> {
    let table = TransversalTable::new(ty)?;
    let basis = enumerate_basis(ty, usize::MAX)?;
    let sub_basis = enumerate_basis(table.sub, usize::MAX)?;
    let rows = crate::par::try_map_range(basis.len(), |j| {
        let d = &basis[j];
        let f = table.last_possible_factorization(d)?;
        let (back, removed) = table.recompose(f.transversal, &f.sub)?;
        let round_trip = back == *d && removed == f.d_power;
        let valid = table.brute_force_valid(d, &sub_basis)?;
        let maximal = valid.last() == Some(&f.transversal);
        let pz = table.entries[f.transversal].case.prop_zero() == (d.propagating_number() == 0);
        Ok::<_, Error>((round_trip, maximal, f.d_power != 0, pz))
    })?;
    Ok(FactorAudit {
        algebra: ty.to_string(),
        diagrams: basis.len(),
        transversals: table.len(),
        round_trip_failures: rows.iter().filter(|r| !r.0).count(),
        maximality_failures: rows.iter().filter(|r| !r.1).count(),
        nonzero_d_power: rows.iter().filter(|r| r.2).count(),
        prop_zero_mismatches: rows.iter().filter(|r| !r.3).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_of_b3() {
        let ty = AlgebraType::brauer(3);
        let table = TransversalTable::new(ty).unwrap();
        let f = table.last_possible_factorization(&Diagram::identity(ty)).unwrap();
        let t = &table.entries()[f.transversal];
        assert_eq!(t.left_perm, vec![1, 2, 3]);
        assert_eq!(t.right_perm, vec![1, 2, 3]);
        assert_eq!(t.to_string(), "(I, I)");
        assert_eq!(f.sub, Diagram::identity(AlgebraType::brauer(2)));
    }

    #[test]
    fn contraction_uses_no_propagation_case() {
        let ty = AlgebraType::brauer(4);
        let table = TransversalTable::new(ty).unwrap();
        let e = generator(ty, Gen::e(3)).unwrap();
        let e1 = generator(ty, Gen::e(1)).unwrap();
        let d = e.compose(&e1).unwrap().diagram;
        assert_eq!(d.propagating_number(), 0);
        let f = table.last_possible_factorization(&d).unwrap();
        assert_eq!(table.entries()[f.transversal].case, Case::BrauerNoPropagation);
    }

    #[test]
    fn small_audits() {
        for ty in [
            AlgebraType::brauer(2),
            AlgebraType::brauer(3),
            AlgebraType::partition(1),
            AlgebraType::partition(2),
            AlgebraType::walled(1, 1),
            AlgebraType::walled(1, 2),
            AlgebraType::symmetric(3),
        ] {
            let a = audit(ty).unwrap();
            assert!(a.passed(), "{a:?}");
        }
    }

    #[test]
    fn acceptance_sizes() {
        for ty in [AlgebraType::partition(3), AlgebraType::brauer(4), AlgebraType::walled(2, 2)] {
            let a = audit(ty).unwrap();
            assert!(a.passed(), "{a:?}");
        }
    }
}
