//! Sparse exact Gauss-Jordan elimination over the rationals.

use std::collections::BTreeMap;

use rug::Rational;

use crate::error::{Error, Result};

/// One linear equation `Σ coeffs[k] x_k = rhs`.
#[derive(Clone, Debug, Default)]
pub struct Equation {
    pub coeffs: BTreeMap<usize, Rational>,
    pub rhs: Rational,
}

impl Equation {
    pub fn add_term(&mut self, var: usize, c: &Rational) {
        if *c == 0 {
            return;
        }
        let e = self.coeffs.entry(var).or_default();
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&var);
        }
    }
}

/// Reduced row echelon form of a consistent system.
#[derive(Clone, Debug)]
pub struct Solution {
    /// `(pivot variable, remaining row with the pivot removed, rhs)`.
    pivots: Vec<(usize, BTreeMap<usize, Rational>, Rational)>,
    pub free: Vec<usize>,
}

impl Solution {
    /// Values of all variables with the free ones set to zero.
    pub fn particular(&self, nvars: usize) -> Vec<Rational> {
        let mut x = vec![Rational::new(); nvars];
        for (p, _, rhs) in &self.pivots {
            x[*p] = rhs.clone();
        }
        x
    }
}

/// Solves the system; errors with [`Error::Invariant`] when it is inconsistent.
pub fn solve(equations: Vec<Equation>, nvars: usize) -> Result<Solution> {
    let mut pivots: Vec<(usize, BTreeMap<usize, Rational>, Rational)> = Vec::new();
    let mut pivot_of: BTreeMap<usize, usize> = BTreeMap::new();
    for eq in equations {
        let (mut row, mut rhs) = (eq.coeffs, eq.rhs);
        // Eliminate existing pivots; the pivot rows are fully reduced, so one
        // pass over the row's support suffices.
        let hits: Vec<usize> = row.keys().filter(|k| pivot_of.contains_key(k)).copied().collect();
        for col in hits {
            let Some(f) = row.get(&col).cloned() else { continue };
            let (_, prow, prhs) = &pivots[pivot_of[&col]];
            row.remove(&col);
            for (k, v) in prow {
                let e = row.entry(*k).or_insert_with(Rational::new);
                *e -= Rational::from(&f * v);
                if *e == 0 {
                    row.remove(k);
                }
            }
            rhs -= Rational::from(&f * prhs);
        }
        let Some((&col, lead)) = row.iter().next() else {
            if rhs != 0 {
                return Err(Error::Invariant("inconsistent linear system".into()));
            }
            continue;
        };
        let inv = Rational::from(lead.recip_ref());
        row.remove(&col);
        for v in row.values_mut() {
            *v *= &inv;
        }
        rhs *= &inv;
        // Back-substitute into earlier pivot rows.
        for (_, prow, prhs) in pivots.iter_mut() {
            if let Some(g) = prow.remove(&col) {
                for (k, v) in &row {
                    let e = prow.entry(*k).or_insert_with(Rational::new);
                    *e -= Rational::from(&g * v);
                    if *e == 0 {
                        prow.remove(k);
                    }
                }
                *prhs -= Rational::from(&g * &rhs);
            }
        }
        pivot_of.insert(col, pivots.len());
        pivots.push((col, row, rhs));
    }
    let free = (0..nvars).filter(|k| !pivot_of.contains_key(k)).collect();
    Ok(Solution { pivots, free })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(terms: &[(usize, i64)], rhs: i64) -> Equation {
        let mut e = Equation { rhs: Rational::from(rhs), ..Default::default() };
        for &(k, c) in terms {
            e.add_term(k, &Rational::from(c));
        }
        e
    }

    #[test]
    fn two_by_two() {
        let s = solve(vec![eq(&[(0, 1), (1, 1)], 3), eq(&[(0, 1), (1, -1)], 1)], 2).unwrap();
        assert!(s.free.is_empty());
        assert_eq!(s.particular(2), vec![Rational::from(2), Rational::from(1)]);
    }

    #[test]
    fn free_variable_and_inconsistency() {
        let s = solve(vec![eq(&[(0, 1), (2, 1)], 1)], 3).unwrap();
        assert_eq!(s.free, vec![1, 2]);
        assert!(solve(vec![eq(&[(0, 1)], 1), eq(&[(0, 2)], 3)], 1).is_err());
    }
}
