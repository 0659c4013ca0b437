//! JSON, CSV and DOT output. Everything here is deterministic: entries
//! follow basis and label order, exact values print as `p/q` and floating
//! values as round-half-even decimals at the digit count of the working
//! precision.

use std::io::Write;
use std::path::Path as FsPath;

use serde::Serialize;

use crate::diagram::{AlgebraType, Diagram};
use crate::error::Result;
use crate::fourier::{Fourier, Variant};
use crate::irreps::{path_string, Chain, Label};
use crate::linalg::Mat;
use crate::scalar::{precision_bits, Real, Scalar};
use crate::sov::{DecayPoint, SovReport};

/// Row-major matrix with row and column metadata.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub precision_bits: u32,
    pub rows: usize,
    pub cols: usize,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn new<T: Scalar>(m: &Mat<T>, row_labels: Vec<String>, col_labels: Vec<String>) -> Self {
        MatrixJson {
            precision_bits: precision_bits(),
            rows: m.rows(),
            cols: m.cols(),
            row_labels,
            col_labels,
            entries: (0..m.rows()).map(|r| m.row(r).iter().map(Scalar::to_report_string).collect()).collect(),
        }
    }

    /// CSV with a `# precision_bits=…` header line, then a header row of
    /// column labels, then one row per matrix row led by its label.
    pub fn to_csv(&self) -> String {
        let mut s = format!("# precision_bits={}\n", self.precision_bits);
        let quote = |x: &str| {
            if x.contains([',', '"', '\n']) {
                format!("\"{}\"", x.replace('"', "\"\""))
            } else {
                x.to_string()
            }
        };
        s.push_str("label");
        for c in &self.col_labels {
            s.push(',');
            s.push_str(&quote(c));
        }
        s.push('\n');
        for (r, row) in self.entries.iter().enumerate() {
            s.push_str(&quote(self.row_labels.get(r).map(String::as_str).unwrap_or("")));
            for e in row {
                s.push(',');
                s.push_str(e);
            }
            s.push('\n');
        }
        s
    }
}

/// Diagram list written by `basis`.
#[derive(Clone, Debug, Serialize)]
pub struct BasisReport {
    pub algebra: String,
    pub count: usize,
    /// Count per propagating number.
    pub by_propagating_number: Vec<(usize, usize)>,
    pub diagrams: Vec<Diagram>,
}

impl BasisReport {
    pub fn new(ty: AlgebraType, diagrams: Vec<Diagram>) -> Self {
        let mut by = std::collections::BTreeMap::new();
        for d in &diagrams {
            *by.entry(d.propagating_number()).or_insert(0usize) += 1;
        }
        BasisReport { algebra: ty.to_string(), count: diagrams.len(), by_propagating_number: by.into_iter().collect(), diagrams }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelNorm {
    pub label: String,
    pub irrep: String,
    pub p: String,
    pub q: String,
    pub norm_sq: String,
    /// `‖E‖² d^n / m_ρ`.
    pub norm_ratio: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramConcentration {
    pub diagram: String,
    pub pn: usize,
    pub defect: f64,
    pub above: f64,
}

/// Contents of `ft.json`.
#[derive(Clone, Debug, Serialize)]
pub struct FtReport {
    pub algebra: String,
    pub d: String,
    pub mode: String,
    pub basis: String,
    pub variant: String,
    pub precision_bits: u32,
    /// `‖FT_A − F̃T_A‖_∞`.
    pub ft_distance: String,
    /// `‖G − I‖_∞` for the normalized Fourier elements.
    pub niceness_delta: String,
    pub norm_deviation: f64,
    pub norms: Vec<LabelNorm>,
    pub concentration: Vec<DiagramConcentration>,
    /// Fourier coefficients, rows = labels, columns = basis diagrams.
    pub coefficients: MatrixJson,
    /// The selected transform, same layout.
    pub transform: MatrixJson,
}

fn label_name<T: Scalar>(f: &Fourier<T>, l: usize) -> String {
    let lab = f.labels()[l];
    let (p, q) = f.paths(lab);
    format!("{} [{}] [{}]", f.irrep_label(lab), path_string(p), path_string(q))
}

/// Builds the report. Exact-mode transforms contain square roots that are
/// rarely rational, so the matrix norms and the transform itself come from
/// `float`, a floating build of the same algebra; `exact` contributes the
/// coefficients and squared norms when present.
pub fn ft_report(
    exact: Option<&Fourier<crate::scalar::Exact>>,
    float: &Fourier<Real>,
    variant: Variant,
    basis_name: &str,
) -> Result<FtReport> {
    let labels: Vec<String> = (0..float.dim()).map(|l| label_name(float, l)).collect();
    let diagrams: Vec<String> = float.algebra().basis().diagrams().iter().map(ToString::to_string).collect();
    let coefficients = match exact {
        Some(e) => MatrixJson::new(e.coefficients(), labels.clone(), diagrams.clone()),
        None => MatrixJson::new(float.coefficients(), labels.clone(), diagrams.clone()),
    };
    let ratios = float.norm_ratios()?;
    let norms = float
        .labels()
        .iter()
        .enumerate()
        .map(|(l, lab)| {
            let (p, q) = float.paths(*lab);
            LabelNorm {
                label: labels[l].clone(),
                irrep: float.irrep_label(*lab).to_string(),
                p: path_string(p),
                q: path_string(q),
                norm_sq: match exact {
                    Some(e) => e.norms_sq()[l].to_report_string(),
                    None => float.norms_sq()[l].to_report_string(),
                },
                norm_ratio: ratios[l].to_report_string(),
            }
        })
        .collect();
    let concentration = float
        .concentration()?
        .into_iter()
        .zip(&diagrams)
        .map(|(c, d)| DiagramConcentration { diagram: d.clone(), pn: c.pn, defect: c.defect, above: c.above })
        .collect();
    Ok(FtReport {
        algebra: float.ty().to_string(),
        d: float.algebra().param().rational.to_string(),
        mode: if exact.is_some() { "exact" } else { "float" }.into(),
        basis: basis_name.into(),
        variant: variant_name(variant).into(),
        precision_bits: precision_bits(),
        ft_distance: float.ft_distance()?.to_report_string(),
        niceness_delta: float.niceness_delta()?.to_report_string(),
        norm_deviation: float.norm_deviation()?,
        norms,
        concentration,
        coefficients,
        transform: MatrixJson::new(&float.ft_matrix(variant)?, labels, diagrams),
    })
}

pub fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Exact => "exact",
        Variant::Tilde => "tilde",
    }
}

/// Contents of `sov-report.json`.
#[derive(Clone, Debug, Serialize)]
pub struct SovOutput {
    #[serde(flatten)]
    pub report: SovReport,
    pub decay_series: Vec<DecayPoint>,
    pub decay_ratios: Vec<f64>,
}

/// Bratteli graph as JSON: labels per level and the paths to each top label.
#[derive(Clone, Debug, Serialize)]
pub struct BratteliJson {
    pub algebra: String,
    pub levels: Vec<BratteliLevel>,
    pub paths: Vec<LabelPaths>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BratteliLevel {
    pub algebra: String,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelPaths {
    pub label: String,
    pub dimension: usize,
    pub paths: Vec<Vec<String>>,
}

impl BratteliJson {
    pub fn new(chain: &Chain) -> Self {
        let show = |ls: &[Label]| ls.iter().map(ToString::to_string).collect::<Vec<_>>();
        BratteliJson {
            algebra: chain.ty().to_string(),
            levels: chain
                .levels()
                .iter()
                .map(|l| BratteliLevel { algebra: l.ty.to_string(), labels: show(&l.labels) })
                .collect(),
            paths: chain
                .labels()
                .iter()
                .map(|lab| LabelPaths {
                    label: lab.to_string(),
                    dimension: chain.dim(lab),
                    paths: chain.paths_to(lab).iter().map(|p| show(p)).collect(),
                })
                .collect(),
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<S: Serialize>(value: &S) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Writes `text` to `path`, or to stdout when `path` is `None` or `-`.
pub fn emit(path: Option<&FsPath>, text: &str) -> Result<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::write(p, text)?,
        _ => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;
    use rug::Rational;

    #[test]
    fn exact_matrix_prints_fractions() {
        let m = Mat::from_rows(vec![vec![Exact(Rational::from((1, 3))), Exact::from_i64(-2)]]);
        let j = MatrixJson::new(&m, vec!["r".into()], vec!["a".into(), "b,c".into()]);
        assert_eq!(j.entries[0], vec!["1/3".to_string(), "-2".to_string()]);
        let csv = j.to_csv();
        assert!(csv.starts_with("# precision_bits="));
        assert!(csv.contains("label,a,\"b,c\"\nr,1/3,-2\n"));
    }

    #[test]
    fn bratteli_json_counts_paths() {
        let chain = Chain::new(AlgebraType::brauer(2)).unwrap();
        let j = BratteliJson::new(&chain);
        let total: usize = j.paths.iter().map(|p| p.dimension * p.dimension).sum();
        assert_eq!(total, 3);
    }
}
