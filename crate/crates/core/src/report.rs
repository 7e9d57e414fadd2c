//! Stable JSON shapes for reports. Key order follows struct field order, so
//! identical inputs serialise to identical bytes.

use serde::Serialize;

use crate::factor::Factorization;
use crate::field::FieldDesc;
use crate::poly::Poly;
use crate::upoly::UPoly;
use crate::zeta::{DivisibilityReport, Part, SearchOutcome};

fn field_modulus(f: &FieldDesc) -> Option<String> {
    f.modulus_poly().map(|m| m.to_string_var('y'))
}

fn residues(p: &Poly) -> Vec<u32> {
    p.coeffs().iter().map(|c| c.index()).collect()
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub q: u64,
    pub field_modulus: Option<String>,
    pub f: String,
    pub m: String,
    pub part: Part,
    pub verdict: bool,
    pub witness_n: Option<u64>,
    /// Coefficients over `F_p`, ascending in `u`.
    pub reduced_zeta: Vec<u32>,
    pub note: Option<String>,
    pub elapsed_ms: Option<u64>,
}

impl ReportJson {
    /// `elapsed_ms` is only filled when `timing` is set, keeping default
    /// output reproducible byte for byte.
    pub fn new(r: &DivisibilityReport, timing: bool) -> Self {
        ReportJson {
            q: r.q,
            field_modulus: field_modulus(&r.field),
            f: r.f.to_string_var('u'),
            m: r.m.poly().to_string(),
            part: r.part,
            verdict: r.verdict,
            witness_n: r.witness_n,
            reduced_zeta: residues(&r.reduced_zeta.poly),
            note: r.note.clone(),
            elapsed_ms: timing.then_some(r.elapsed.as_millis() as u64),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FactorJson {
    pub poly: String,
    pub factorization: String,
    pub unit: String,
    pub factors: Vec<FactorEntry>,
}

#[derive(Debug, Serialize)]
pub struct FactorEntry {
    pub factor: String,
    pub multiplicity: u32,
}

impl FactorJson {
    pub fn new(poly: &Poly, fac: &Factorization) -> Self {
        FactorJson {
            poly: poly.to_string(),
            factorization: fac.to_string(),
            unit: fac.field.format(fac.unit),
            factors: fac
                .factors
                .iter()
                .map(|(g, e)| FactorEntry { factor: g.to_string(), multiplicity: *e })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BnJson {
    pub q: u64,
    pub field_modulus: Option<String>,
    pub n: u64,
    /// `B_n(u)` coefficients ascending in `u`.
    pub b_poly: Vec<String>,
    pub b_poly_text: String,
    pub scalar: String,
}

impl BnJson {
    pub fn new(fq: &FieldDesc, n: u64, b: &UPoly, scalar: &Poly) -> Self {
        BnJson {
            q: fq.cardinality(),
            field_modulus: field_modulus(fq),
            n,
            b_poly: b.to_json(),
            b_poly_text: b.to_string(),
            scalar: scalar.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BalphaJson {
    pub q: u64,
    pub field_modulus: Option<String>,
    pub f: String,
    pub n: u64,
    pub b_alpha: String,
    pub factorization: FactorJson,
}

impl BalphaJson {
    pub fn new(fq: &FieldDesc, f: &Poly, n: u64, b: &Poly, fac: &Factorization) -> Self {
        BalphaJson {
            q: fq.cardinality(),
            field_modulus: field_modulus(fq),
            f: f.to_string_var('u'),
            n,
            b_alpha: b.to_string(),
            factorization: FactorJson::new(b, fac),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ZetabarJson {
    pub q: u64,
    pub field_modulus: Option<String>,
    pub m: String,
    pub part: Part,
    pub reduced_zeta: Vec<u32>,
    pub text: String,
}

impl ZetabarJson {
    pub fn new(fq: &FieldDesc, m: &Poly, part: Part, z: &Poly) -> Self {
        ZetabarJson {
            q: fq.cardinality(),
            field_modulus: field_modulus(fq),
            m: m.to_string(),
            part,
            reduced_zeta: residues(z),
            text: z.to_string_var('u'),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SearchJson {
    pub q: u64,
    pub field_modulus: Option<String>,
    pub f: String,
    pub part: Part,
    pub d: usize,
    pub exponent: u64,
    pub n: u64,
    pub b_alpha: String,
    pub factorization: String,
    pub m: String,
    pub b: u64,
    pub trace: Vec<String>,
    pub report: ReportJson,
}

impl SearchJson {
    pub fn new(out: &SearchOutcome, d: usize, timing: bool) -> Self {
        let r = &out.report;
        SearchJson {
            q: r.q,
            field_modulus: field_modulus(&r.field),
            f: r.f.to_string_var('u'),
            part: r.part,
            d,
            exponent: out.exponent,
            n: out.n,
            b_alpha: out.b_alpha.to_string(),
            factorization: out.factorization.to_string(),
            m: out.m.poly().to_string(),
            b: out.b,
            trace: out.trace.clone(),
            report: ReportJson::new(r, timing),
        }
    }
}

/// Aligned text table for a batch of reports.
pub fn report_table(rows: &[DivisibilityReport]) -> String {
    let header = ["m", "part", "verdict", "witness_n", "Zbar(u)"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                r.m.poly().to_string(),
                r.part.to_string(),
                r.verdict.to_string(),
                r.witness_n.map_or("-".to_string(), |n| n.to_string()),
                r.reduced_zeta.poly.to_string_var('u'),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: [&str; 5]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(header)];
    for row in &body {
        out.push(line([&row[0], &row[1], &row[2], &row[3], &row[4]]));
    }
    out.join("\n")
}
