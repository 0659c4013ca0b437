//! Generator words for every basis diagram.
//!
//! A breadth-first search over the diagram monoid starting at the identity
//! and multiplying by generators on the right yields, for each diagram `D`,
//! a shortest word `w` and the number `c` of closed components removed along
//! the way, so that `w = d^c · D`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::diagram::{algebra_dimension, generator, AlgebraType, Diagram, Family, Gen};
use crate::error::{Error, Result};

/// A word with its accumulated `d`-power: `product(word) = d^removed · D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub word: Vec<Gen>,
    pub removed: usize,
}

/// One node of the search tree.
#[derive(Clone, Debug)]
pub struct WordNode {
    pub diagram: Diagram,
    /// Parent node and the generator appended to reach this node.
    pub parent: Option<(usize, Gen)>,
    /// Components removed by that last multiplication.
    pub step_removed: usize,
    pub removed: usize,
    pub depth: usize,
}

/// All diagrams of an algebra in breadth-first order with their words.
#[derive(Debug)]
pub struct WordTable {
    ty: AlgebraType,
    nodes: Vec<WordNode>,
    index: HashMap<Diagram, usize>,
}

/// The standard generating set of each algebra.
pub fn generators_of(ty: AlgebraType) -> Vec<Gen> {
    let n = ty.n;
    let mut out = Vec::new();
    match ty.family {
        Family::Partition => {
            out.extend((1..n).map(Gen::s));
            out.extend((1..n).map(Gen::b));
            out.extend((1..=n).map(Gen::p));
        }
        Family::Half => {
            out.extend((1..n.saturating_sub(1)).map(Gen::s));
            out.extend((1..n).map(Gen::b));
            out.extend((1..n).map(Gen::p));
        }
        Family::Brauer => {
            out.extend((1..n).map(Gen::s));
            out.extend((1..n).map(Gen::e));
        }
        Family::Walled => {
            let r = ty.left();
            out.extend((1..n).filter(|&i| i != r).map(Gen::s));
            if r >= 1 && r < n {
                out.push(Gen::e(r));
            }
        }
        Family::Symmetric => out.extend((1..n).map(Gen::s)),
    }
    out
}

impl WordTable {
    pub fn build(ty: AlgebraType) -> Result<Self> {
        let gens: Vec<(Gen, Diagram)> =
            generators_of(ty).into_iter().map(|g| generator(ty, g).map(|d| (g, d))).collect::<Result<_>>()?;
        let id = Diagram::identity(ty);
        let mut nodes = vec![WordNode { diagram: id.clone(), parent: None, step_removed: 0, removed: 0, depth: 0 }];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut head = 0;
        while head < nodes.len() {
            for (g, gd) in &gens {
                let c = nodes[head].diagram.compose(gd)?;
                if index.contains_key(&c.diagram) {
                    continue;
                }
                let node = WordNode {
                    diagram: c.diagram.clone(),
                    parent: Some((head, *g)),
                    step_removed: c.removed,
                    removed: nodes[head].removed + c.removed,
                    depth: nodes[head].depth + 1,
                };
                index.insert(c.diagram, nodes.len());
                nodes.push(node);
            }
            head += 1;
        }
        let expected = algebra_dimension(ty);
        if nodes.len() as u128 != expected {
            return Err(Error::Invariant(format!(
                "generators of {ty} reach {} of {expected} diagrams",
                nodes.len()
            )));
        }
        Ok(WordTable { ty, nodes, index })
    }

    /// Shared, lazily built table for `ty`.
    pub fn cached(ty: AlgebraType) -> Result<Arc<WordTable>> {
        static CACHE: OnceLock<Mutex<HashMap<AlgebraType, Arc<WordTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().expect("word cache poisoned").get(&ty) {
            return Ok(t.clone());
        }
        let table = Arc::new(WordTable::build(ty)?);
        cache.lock().expect("word cache poisoned").insert(ty, table.clone());
        Ok(table)
    }

    pub fn ty(&self) -> AlgebraType {
        self.ty
    }

    pub fn nodes(&self) -> &[WordNode] {
        &self.nodes
    }

    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }

    pub fn factorization(&self, d: &Diagram) -> Result<Factorization> {
        let mut k = self.index_of(d).ok_or_else(|| Error::Mismatch(format!("{d} is not a diagram of {}", self.ty)))?;
        let removed = self.nodes[k].removed;
        let mut word = Vec::new();
        while let Some((parent, g)) = self.nodes[k].parent {
            word.push(g);
            k = parent;
        }
        word.reverse();
        Ok(Factorization { word, removed })
    }
}

/// Factors `d` into generators: the product of the word equals
/// `d^removed · D`.
pub fn factor_to_generators(d: &Diagram) -> Result<Factorization> {
    WordTable::cached(d.ty())?.factorization(d)
}

/// Multiplies out a word, returning the diagram and removed-component count.
pub fn evaluate_word(ty: AlgebraType, word: &[Gen]) -> Result<(Diagram, usize)> {
    let mut acc = Diagram::identity(ty);
    let mut removed = 0;
    for g in word {
        let c = acc.compose(&generator(ty, *g)?)?;
        acc = c.diagram;
        removed += c.removed;
    }
    Ok((acc, removed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_basis;

    #[test]
    fn all_families_generated() {
        for ty in [
            AlgebraType::partition(2),
            AlgebraType::half(2),
            AlgebraType::half(3),
            AlgebraType::brauer(3),
            AlgebraType::walled(2, 1),
            AlgebraType::walled(1, 2),
            AlgebraType::symmetric(3),
        ] {
            let table = WordTable::build(ty).unwrap();
            for d in enumerate_basis(ty, 1000).unwrap() {
                let f = table.factorization(&d).unwrap();
                assert_eq!(evaluate_word(ty, &f.word).unwrap(), (d, f.removed), "{ty}");
            }
        }
    }

    #[test]
    fn identity_is_empty_word() {
        let ty = AlgebraType::brauer(3);
        let f = factor_to_generators(&Diagram::identity(ty)).unwrap();
        assert!(f.word.is_empty());
        assert_eq!(f.removed, 0);
    }
}
