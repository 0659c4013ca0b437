//! Orthogonal forms of the Brauer, walled Brauer and symmetric group
//! algebras. Diagonal data is computed exactly; square roots are taken in the
//! target scalar domain (so exact mode succeeds only when they are rational).

use std::collections::BTreeMap;

use rug::Rational;

use crate::diagram::Gen;
use crate::error::{Error, Result};
use crate::irreps::{Label, Path, Young};
use crate::linalg::Mat;
use crate::scalar::Scalar;

type Q = Rational;

fn agree_except(p: &Path, q: &Path, level: usize) -> bool {
    p.iter().zip(q).enumerate().all(|(j, (a, b))| j == level || a == b)
}

fn sqrt_checked<T: Scalar>(v: &Q, what: &str) -> Result<T> {
    if *v < 0 {
        return Err(Error::NegativeRadicand(v.to_f64()));
    }
    T::from_rational(v).sqrt().map_err(|e| match e {
        Error::NotASquare(s) => Error::NotASquare(format!("{s} ({what})")),
        other => other,
    })
}

/// Young-type swap block: `1/Δ` on the diagonal and `√(1 − 1/Δ²)` between
/// the two paths of a pair (or the seminormal `1 − 1/Δ²` / `1` split).
fn young_swap<T: Scalar>(paths: &[Path], level: usize, delta: impl Fn(&Path) -> Q, seminormal: bool) -> Result<Mat<T>> {
    let m = paths.len();
    let mut mat = Mat::zeros(m, m);
    for c in 0..m {
        let dl = delta(&paths[c]);
        if dl == 0 {
            return Err(Error::Invariant("vanishing axial distance".into()));
        }
        let inv = Q::from(dl.recip_ref());
        mat[(c, c)] = T::from_rational(&inv);
        for r in 0..m {
            if r == c || !agree_except(&paths[c], &paths[r], level) {
                continue;
            }
            let off = Q::from(1) - Q::from(&inv * &inv);
            mat[(r, c)] = if seminormal {
                if paths[r] > paths[c] {
                    T::from_rational(&off)
                } else {
                    T::one()
                }
            } else {
                sqrt_checked(&off, "swap off-diagonal")?
            };
        }
    }
    Ok(mat)
}

/// Step statistic of the Brauer chain: `±((d−1)/2 + cont(a))`.
fn brauer_x(p: &Path, i: usize, half: &Q) -> Q {
    let (prev, cur) = (p[i - 1].single(), p[i].single());
    if cur.size() > prev.size() {
        Q::from(half + Young::content(prev.added_cell(cur).unwrap()))
    } else {
        -Q::from(half + Young::content(cur.added_cell(prev).unwrap()))
    }
}

/// `λ(e_i)_{PP}` for a path with `P(i−1) = P(i+1)`.
fn brauer_e_diag(p: &Path, i: usize, half: &Q) -> Q {
    let x = brauer_x(p, i, half);
    let base = p[i - 1].single();
    let mut prod = Q::from(1);
    let cs = base
        .addable()
        .into_iter()
        .map(|a| Q::from(half + Young::content(a)))
        .chain(base.removable().into_iter().map(|a| -Q::from(half + Young::content(a))));
    for c in cs {
        if c != x {
            prod *= Q::from(&x + &c) / Q::from(&x - &c);
        }
    }
    if x == (-1, 2) {
        -prod
    } else {
        (Q::from(2 * &x) + 1) * prod
    }
}

/// Orthogonal generators of a Brauer irrep: `s_i`, `e_i` for `i < n`.
pub fn brauer<T: Scalar>(paths: &[Path], n: usize, d: &Q) -> Result<BTreeMap<Gen, Mat<T>>> {
    let half = Q::from(d - 1u32) / 2u32;
    let m = paths.len();
    let mut out = BTreeMap::new();
    for i in 1..n {
        let ediag: Vec<Q> = paths
            .iter()
            .map(|p| if p[i - 1] == p[i + 1] { brauer_e_diag(p, i, &half) } else { Q::new() })
            .collect();
        let mut e = Mat::<T>::zeros(m, m);
        for c in 0..m {
            if paths[c][i - 1] != paths[c][i + 1] {
                continue;
            }
            for r in 0..m {
                if agree_except(&paths[c], &paths[r], i) {
                    e[(r, c)] = sqrt_checked(&Q::from(&ediag[c] * &ediag[r]), "contraction entry")?;
                }
            }
        }
        let mut s = Mat::<T>::zeros(m, m);
        let contracting: Vec<usize> = (0..m).filter(|&c| paths[c][i - 1] == paths[c][i + 1]).collect();
        let young: Vec<usize> = (0..m).filter(|&c| paths[c][i - 1] != paths[c][i + 1]).collect();
        for &c in &contracting {
            for &r in &contracting {
                if !agree_except(&paths[c], &paths[r], i) {
                    continue;
                }
                let den = brauer_x(&paths[c], i, &half) + brauer_x(&paths[r], i, &half);
                if den == 0 {
                    return Err(Error::Invariant("x_i(P) + x_i(Q) = 0".into()));
                }
                let mut v = e[(r, c)].clone();
                if r == c {
                    v -= &T::one();
                }
                s[(r, c)] = v / T::from_rational(&den);
            }
        }
        let sub: Vec<Path> = young.iter().map(|&c| paths[c].clone()).collect();
        let block: Mat<T> =
            young_swap(&sub, i, |p| brauer_x(p, i + 1, &half) - brauer_x(p, i, &half), false)?;
        for (a, &c) in young.iter().enumerate() {
            for (b, &r) in young.iter().enumerate() {
                s[(r, c)] = block[(b, a)].clone();
            }
        }
        out.insert(Gen::s(i), s);
        out.insert(Gen::e(i), e);
    }
    Ok(out)
}

/// Young's form for the symmetric group.
pub fn symmetric<T: Scalar>(paths: &[Path], n: usize, seminormal: bool) -> Result<BTreeMap<Gen, Mat<T>>> {
    let cont = |p: &Path, i: usize| {
        let (prev, cur) = (p[i - 1].single(), p[i].single());
        Young::content(prev.added_cell(cur).unwrap())
    };
    let mut out = BTreeMap::new();
    for i in 1..n {
        out.insert(Gen::s(i), young_swap(paths, i, |p| Q::from(cont(p, i + 1) - cont(p, i)), seminormal)?);
    }
    Ok(out)
}

/// Step statistic of the walled chain `B_{0,0} ⊂ B_{1,0} ⊂ … ⊂ B_{r,0} ⊂
/// B_{r,1} ⊂ …` (native when `r ≤ 1`).
fn walled_x(p: &Path, i: usize, r: usize, d: &Q) -> Q {
    let (l0, m0) = p[i - 1].pair();
    let (l1, m1) = p[i].pair();
    if i <= r {
        Q::from(Young::content(l0.added_cell(l1).expect("left steps add to λ")))
    } else if m1.size() > m0.size() {
        Q::from(d + Young::content(m0.added_cell(m1).unwrap()))
    } else {
        Q::from(-Young::content(l1.added_cell(l0).expect("right steps remove from λ")))
    }
}

/// `K(Q)²` for the wall contraction; the added box is excluded from the
/// addable product.
fn walled_k2(p: &Path, r: usize, d: &Q) -> Q {
    let (l0, _) = p[r - 1].pair();
    let (l1, _) = p[r].pair();
    let a = l0.added_cell(l1).expect("step r adds to λ");
    let c = Young::content(a);
    let mut v = Q::from(d + c);
    for b in l0.removable() {
        v *= c - Young::content(b);
    }
    for b in l0.addable() {
        if b != a {
            v /= c - Young::content(b);
        }
    }
    v
}

/// Orthogonal generators of a walled Brauer irrep of `B_{r,s}` with
/// `r ≤ s` and `r ≤ 1`: `s_i` for `i ≠ r` and the wall contraction `e_r`.
pub fn walled_native<T: Scalar>(paths: &[Path], r: usize, s: usize, d: &Q) -> Result<BTreeMap<Gen, Mat<T>>> {
    if r > 1 || r > s {
        return Err(Error::Unsupported(format!("walled orthogonal form for B_{{{r},{s}}}")));
    }
    let n = r + s;
    let m = paths.len();
    let mut out = BTreeMap::new();
    for i in 1..n {
        if i == r {
            continue;
        }
        let x = |p: &Path| walled_x(p, i + 1, r, d) - walled_x(p, i, r, d);
        out.insert(Gen::s(i), young_swap(paths, i, x, false)?);
    }
    if r == 1 && s >= 1 {
        let mut e = Mat::<T>::zeros(m, m);
        let k: Vec<Option<T>> = paths
            .iter()
            .map(|p| if p[r - 1] == p[r + 1] { sqrt_checked(&walled_k2(p, r, d), "wall contraction").map(Some) } else { Ok(None) })
            .collect::<Result<_>>()?;
        for c in 0..m {
            for rr in 0..m {
                if let (Some(kc), Some(kr)) = (&k[c], &k[rr]) {
                    if agree_except(&paths[c], &paths[rr], r) {
                        e[(rr, c)] = kc.clone() * kr;
                    }
                }
            }
        }
        out.insert(Gen::e(r), e);
    }
    Ok(out)
}

/// Mirrored label sequence of a path.
pub fn mirror_path(p: &Path) -> Path {
    p.iter().map(Label::mirrored).collect()
}
