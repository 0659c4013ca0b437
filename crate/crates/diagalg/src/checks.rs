//! Named invariant suites shared by the command line and the acceptance
//! tests. Each suite measures residuals, compares them with a threshold
//! and records one [`CheckResult`] per measurement.

use rug::ops::Pow;
use rug::Rational;
use serde::Serialize;

use crate::diagram::{algebra_dimension, enumerate_basis, AlgebraType};
use crate::error::{Error, Result};
use crate::forms::check::{homomorphism_residual, relation_residuals, transpose_residual};
use crate::forms::{FormBasis, IrrepSystem};
use crate::fourier::Fourier;
use crate::irreps::{dims_squared_by_size, irrep_set, schur_multiplicity};
use crate::scalar::{Real, Scalar};
use crate::sov;

/// Residual threshold for identities evaluated at 256 bits.
pub const RESIDUAL_TOL: f64 = 1e-20;
/// Accepted window for the ratio of successive errors when `d` grows ×4.
pub const HALVING_WINDOW: (f64, f64) = (0.35, 0.65);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Relations,
    SchurOrthogonality,
    NicenessDecay,
    Concentration,
    Counting,
    SovDecay,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Relations,
        Suite::SchurOrthogonality,
        Suite::NicenessDecay,
        Suite::Concentration,
        Suite::Counting,
        Suite::SovDecay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Relations => "relations",
            Suite::SchurOrthogonality => "schur-orthogonality",
            Suite::NicenessDecay => "niceness-decay",
            Suite::Concentration => "concentration",
            Suite::Counting => "counting",
            Suite::SovDecay => "sov-decay",
        }
    }

    pub fn parse(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }

    /// Whether the suite sweeps several values of `d` rather than one.
    pub fn is_sweep(self) -> bool {
        matches!(self, Suite::NicenessDecay | Suite::Concentration | Suite::SovDecay)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub measured: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, pass: bool, measured: impl Into<String>) -> Self {
        CheckResult { name: name.into(), pass, measured: measured.into() }
    }

    fn below(name: impl Into<String>, value: f64, tol: f64) -> Self {
        CheckResult::new(name, value <= tol, format!("{value:.3e} (tolerance {tol:.0e})"))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub results: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

/// Ratios of successive entries.
pub fn ratios(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] / w[0]).collect()
}

/// True when every successive ratio lies in [`HALVING_WINDOW`].
pub fn halves(values: &[f64]) -> bool {
    let r = ratios(values);
    !r.is_empty() && r.iter().all(|x| x.is_finite() && *x >= HALVING_WINDOW.0 && *x <= HALVING_WINDOW.1)
}

fn halving_result(name: &str, values: &[f64]) -> CheckResult {
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.4e}")).collect::<Vec<_>>().join(", ");
    CheckResult::new(name, halves(values), format!("values [{}], ratios [{}]", fmt(values), fmt(&ratios(values))))
}

/// Runs a suite. Single-point suites use `ds[0]`; sweeps use all of `ds`.
pub fn run(suite: Suite, ty: AlgebraType, ds: &[Rational]) -> Result<SuiteReport> {
    let first = ds.first().ok_or_else(|| Error::Parse("no value of d given".into()))?;
    let results = match suite {
        Suite::Relations => relations(ty, first)?,
        Suite::SchurOrthogonality => schur_orthogonality(ty, first)?,
        Suite::NicenessDecay => niceness_decay(ty, ds)?,
        Suite::Concentration => concentration(ty, ds)?,
        Suite::Counting => counting(ty)?,
        Suite::SovDecay => sov_decay(ty, ds)?,
    };
    Ok(SuiteReport { suite: suite.name().into(), algebra: ty.to_string(), results })
}

/// Generator relations, the transpose rule and the homomorphism property
/// on every pair of basis diagrams.
pub fn relations(ty: AlgebraType, d: &Rational) -> Result<Vec<CheckResult>> {
    let sys = IrrepSystem::<Real>::build(ty, d, FormBasis::Orthogonal)?;
    let mut out: Vec<CheckResult> = relation_residuals(&sys)?
        .into_iter()
        .map(|r| CheckResult::below(format!("relation {}", r.name), r.residual, RESIDUAL_TOL))
        .collect();
    out.push(CheckResult::below("rho(D^op) = rho(D)^T", transpose_residual(&sys)?, RESIDUAL_TOL));
    out.push(CheckResult::below("homomorphism on all pairs", homomorphism_residual(&sys)?, RESIDUAL_TOL));
    Ok(out)
}

/// Fourier elements map to matrix units, checked through the irreps and
/// through the algebra multiplication separately.
pub fn schur_orthogonality(ty: AlgebraType, d: &Rational) -> Result<Vec<CheckResult>> {
    let f = Fourier::<Real>::build(ty, d)?;
    Ok(vec![
        CheckResult::below("schur orthogonality", f.schur_orthogonality_residual(), RESIDUAL_TOL),
        CheckResult::below("matrix-unit rule", f.matrix_unit_residual()?, RESIDUAL_TOL),
    ])
}

/// Niceness `‖G − I‖` and the norm formula deviation across a sweep.
pub fn niceness_decay(ty: AlgebraType, ds: &[Rational]) -> Result<Vec<CheckResult>> {
    let mut delta = Vec::new();
    let mut norm = Vec::new();
    for d in ds {
        let f = Fourier::<Real>::build(ty, d)?;
        delta.push(f.niceness_delta()?.to_f64());
        norm.push(f.norm_deviation()?);
    }
    Ok(vec![halving_result("niceness delta halves per x4 in d", &delta), halving_result("norm formula deviation halves per x4 in d", &norm)])
}

/// Largest concentration defect per `d` and the exact vanishing above `pn`.
pub fn concentration(ty: AlgebraType, ds: &[Rational]) -> Result<Vec<CheckResult>> {
    let mut defects = Vec::new();
    let mut above = 0f64;
    for d in ds {
        let f = Fourier::<Real>::build(ty, d)?;
        let c = f.concentration()?;
        defects.push(c.iter().map(|x| x.defect).fold(0.0, f64::max));
        above = c.iter().map(|x| x.above).fold(above, f64::max);
    }
    Ok(vec![
        halving_result("concentration defect halves per x4 in d", &defects),
        CheckResult::below("weight above pn(D)", above, RESIDUAL_TOL),
    ])
}

/// `Σ d_ρ² = |A|`, the per-propagating-number counts and, where the family
/// has a Schur representation at `d = 17`, `Σ m_ρ d_ρ = d^n`.
pub fn counting(ty: AlgebraType) -> Result<Vec<CheckResult>> {
    let basis = enumerate_basis(ty, usize::MAX)?;
    let irreps = irrep_set(ty);
    let sum_sq: u128 = irreps.iter().map(|(_, d)| d * d).sum();
    let closed = algebra_dimension(ty);
    let mut out = vec![CheckResult::new(
        "sum of squared irrep dimensions",
        sum_sq == basis.len() as u128 && closed == sum_sq,
        format!("sum d^2 = {sum_sq}, enumerated {}, closed form {closed}", basis.len()),
    )];
    let mut by_pn = std::collections::BTreeMap::<usize, u128>::new();
    for d in &basis {
        *by_pn.entry(d.propagating_number()).or_insert(0) += 1;
    }
    let expected = dims_squared_by_size(ty);
    let mismatch: Vec<String> = expected
        .keys()
        .chain(by_pn.keys())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .filter(|k| expected.get(k).copied().unwrap_or(0) != by_pn.get(k).copied().unwrap_or(0))
        .map(|k| format!("pn {k}"))
        .collect();
    out.push(CheckResult::new(
        "per propagating number counts",
        mismatch.is_empty(),
        if mismatch.is_empty() { format!("{by_pn:?}") } else { format!("mismatch at {}", mismatch.join(", ")) },
    ));
    let d = Rational::from(17);
    let mut total = Rational::new();
    for (label, dim) in &irreps {
        total += schur_multiplicity(ty, label, &d)? * Rational::from(*dim);
    }
    let dn = Rational::from(rug::Integer::from(17u32).pow(ty.n as u32));
    out.push(CheckResult::new("schur-weyl dimension at d = 17", total == dn, format!("sum m d = {total}, d^n = {dn}")));
    Ok(out)
}

/// Isometry and the decay of `‖U_alg − F̃T_A‖` for the recursive transform.
pub fn sov_decay(ty: AlgebraType, ds: &[Rational]) -> Result<Vec<CheckResult>> {
    let points = sov::decay_series(ty, ds)?;
    let unit = points.iter().map(|p| p.unitarity).fold(0.0, f64::max);
    let errors: Vec<f64> = points.iter().map(|p| p.alg_vs_tilde).collect();
    Ok(vec![CheckResult::below("U_alg isometric", unit, RESIDUAL_TOL), halving_result("U_alg - FT~ halves per x4 in d", &errors)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("nope").is_err());
    }

    #[test]
    fn halving_window() {
        assert!(halves(&[1.0, 0.5, 0.25]));
        assert!(!halves(&[1.0, 0.25]));
        assert!(!halves(&[1.0]));
    }

    #[test]
    fn counting_walled_three_two() {
        let r = counting(AlgebraType::walled(3, 2)).unwrap();
        assert!(r.iter().all(|c| c.pass), "{r:?}");
        assert!(r[0].measured.starts_with("sum d^2 = 120"));
    }
}
