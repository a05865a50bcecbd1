//! File formats: algebra files (bialgebras and Lie algebras by sparse
//! structure-constant triples with exact "p/q" scalars), element files, and
//! machine-readable reports with canonical, byte-stable serialization.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bialgebra::{Bialgebra, Check};
use crate::error::{CotwistError, Result};
use crate::lie::LieAlgebra;
use crate::linalg::{Matrix, Vector};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use crate::tensor::TensorElement;

pub const SCHEMA_VERSION: u32 = 1;

/// (i, j, k, "p/q"): a sparse structure-constant entry.
pub type Triple = (usize, usize, usize, String);

#[derive(Serialize, Deserialize, Clone, Debug, Default)]
pub struct AlgebraFile {
    pub schema_version: u32,
    /// "bialgebra" or "lie_algebra".
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// e_i·e_j = Σ c·e_k as (i, j, k, c).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    /// Δ(e_i) = Σ c·e_j⊗e_k as (i, j, k, c).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comult: Option<Vec<Triple>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counit: Option<Vec<String>>,
    /// S(e_j) = Σ c·e_i as (i, j, c).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<(usize, usize, String)>>,
    /// [e_i, e_j] = Σ c·e_k as (i, j, k, c) with i < j.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bracket: Option<Vec<Triple>>,
}

fn parse_s(text: &str) -> Result<Scalar> {
    parse_scalar(text)
        .ok_or_else(|| CotwistError::Format(format!("bad scalar literal {text:?}")))
}

fn parse_vec(texts: &[String], dim: usize) -> Result<Vector> {
    if texts.len() != dim {
        return Err(CotwistError::Format(format!(
            "vector length {} != dim {dim}",
            texts.len()
        )));
    }
    texts.iter().map(|t| parse_s(t)).collect()
}

fn parse_triples(ts: &[Triple]) -> Result<Vec<(usize, usize, usize, Scalar)>> {
    ts.iter()
        .map(|(i, j, k, c)| Ok((*i, *j, *k, parse_s(c)?)))
        .collect()
}

fn emit_triples(ts: &[(usize, usize, usize, Scalar)]) -> Vec<Triple> {
    ts.iter()
        .map(|(i, j, k, c)| (*i, *j, *k, format_scalar(c)))
        .collect()
}

pub fn bialgebra_to_file(b: &Bialgebra, name: Option<String>) -> AlgebraFile {
    AlgebraFile {
        schema_version: SCHEMA_VERSION,
        kind: "bialgebra".into(),
        name,
        description: None,
        dim: b.dim,
        basis_names: b.basis_names.clone(),
        mult: Some(emit_triples(&b.mult_triples())),
        unit: Some(b.unit.iter().map(format_scalar).collect()),
        comult: Some(emit_triples(&b.comult_triples())),
        counit: Some(b.counit.iter().map(format_scalar).collect()),
        antipode: b.antipode.as_ref().map(|s| {
            let mut out = Vec::new();
            for i in 0..s.rows {
                for (&j, c) in s.row(i) {
                    out.push((i, j, format_scalar(c)));
                }
            }
            out
        }),
        bracket: None,
    }
}

pub fn lie_to_file(l: &LieAlgebra, name: Option<String>) -> AlgebraFile {
    AlgebraFile {
        schema_version: SCHEMA_VERSION,
        kind: "lie_algebra".into(),
        name,
        description: None,
        dim: l.dim,
        basis_names: l.basis_names.clone(),
        mult: None,
        unit: None,
        comult: None,
        counit: None,
        antipode: None,
        bracket: Some(emit_triples(&l.triples())),
    }
}

pub fn file_to_bialgebra(f: &AlgebraFile) -> Result<Bialgebra> {
    if f.kind != "bialgebra" {
        return Err(CotwistError::Format(format!(
            "expected kind \"bialgebra\", got {:?}",
            f.kind
        )));
    }
    let mult = parse_triples(f.mult.as_deref().unwrap_or_default().as_ref())?;
    let comult = parse_triples(f.comult.as_deref().unwrap_or_default().as_ref())?;
    let unit = parse_vec(
        f.unit
            .as_ref()
            .ok_or_else(|| CotwistError::Format("missing unit".into()))?,
        f.dim,
    )?;
    let counit = parse_vec(
        f.counit
            .as_ref()
            .ok_or_else(|| CotwistError::Format("missing counit".into()))?,
        f.dim,
    )?;
    let antipode = match &f.antipode {
        None => None,
        Some(entries) => {
            let mut m = Matrix::zero(f.dim, f.dim);
            for (i, j, c) in entries {
                if *i >= f.dim || *j >= f.dim {
                    return Err(CotwistError::Format(format!(
                        "antipode index ({i},{j}) out of range"
                    )));
                }
                m.set(*i, *j, parse_s(c)?);
            }
            Some(m)
        }
    };
    Bialgebra::from_parts(
        f.dim,
        f.basis_names.clone(),
        &mult,
        unit,
        &comult,
        counit,
        antipode,
    )
}

pub fn file_to_lie(f: &AlgebraFile) -> Result<LieAlgebra> {
    if f.kind != "lie_algebra" {
        return Err(CotwistError::Format(format!(
            "expected kind \"lie_algebra\", got {:?}",
            f.kind
        )));
    }
    let triples = parse_triples(f.bracket.as_deref().unwrap_or_default().as_ref())?;
    LieAlgebra::from_triples(f.dim, f.basis_names.clone(), &triples)
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let f: AlgebraFile =
        serde_json::from_str(text).map_err(|e| CotwistError::Format(e.to_string()))?;
    if f.schema_version != SCHEMA_VERSION {
        return Err(CotwistError::Format(format!(
            "unsupported schema_version {}",
            f.schema_version
        )));
    }
    if f.basis_names.len() != f.dim {
        return Err(CotwistError::Format("basis_names length != dim".into()));
    }
    Ok(f)
}

pub fn emit_algebra(f: &AlgebraFile) -> String {
    let mut s = serde_json::to_string_pretty(f).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ElementFile {
    pub schema_version: u32,
    pub dim: usize,
    pub degree: usize,
    /// Sparse terms: multi-index (0-based) and exact coefficient.
    pub terms: Vec<(Vec<usize>, String)>,
}

pub fn element_to_file(t: &TensorElement) -> ElementFile {
    ElementFile {
        schema_version: SCHEMA_VERSION,
        dim: t.dim,
        degree: t.degree,
        terms: t
            .iter()
            .map(|(idx, c)| (idx.clone(), format_scalar(c)))
            .collect(),
    }
}

pub fn file_to_element(f: &ElementFile) -> Result<TensorElement> {
    if f.schema_version != SCHEMA_VERSION {
        return Err(CotwistError::Format(format!(
            "unsupported schema_version {}",
            f.schema_version
        )));
    }
    let mut t = TensorElement::zero(f.dim, f.degree);
    for (idx, c) in &f.terms {
        if idx.len() != f.degree || idx.iter().any(|&i| i >= f.dim) {
            return Err(CotwistError::Format(format!("bad multi-index {idx:?}")));
        }
        t.add_to(idx, &parse_s(c)?);
    }
    Ok(t)
}

pub fn parse_element(text: &str) -> Result<TensorElement> {
    let f: ElementFile =
        serde_json::from_str(text).map_err(|e| CotwistError::Format(e.to_string()))?;
    file_to_element(&f)
}

pub fn emit_element(t: &TensorElement) -> String {
    let mut s = serde_json::to_string_pretty(&element_to_file(t)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct ReportCheck {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Check> for ReportCheck {
    fn from(c: &Check) -> Self {
        ReportCheck {
            name: c.name.clone(),
            pass: c.pass,
            witness: c.witness.clone(),
        }
    }
}

/// Machine-readable result of one CLI invocation. Key order and rational
/// formatting are canonical, so identical inputs produce identical bytes.
#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct Report {
    pub schema_version: u32,
    pub command: Vec<String>,
    pub input_digest: String,
    pub pass: bool,
    pub checks: Vec<ReportCheck>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub numbers: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vectors: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, Vec<(Vec<usize>, String)>>,
}

impl Report {
    pub fn new(command: Vec<String>, input: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            input_digest: digest(input),
            pass: true,
            checks: Vec::new(),
            numbers: BTreeMap::new(),
            vectors: BTreeMap::new(),
            elements: BTreeMap::new(),
        }
    }

    pub fn push_checks(&mut self, checks: &[Check]) {
        for c in checks {
            if !c.pass {
                self.pass = false;
            }
            self.checks.push(c.into());
        }
    }

    pub fn set_number(&mut self, key: &str, v: i64) {
        self.numbers.insert(key.to_string(), v);
    }

    pub fn set_vector(&mut self, key: &str, v: &[Scalar]) {
        self.vectors
            .insert(key.to_string(), v.iter().map(format_scalar).collect());
    }

    pub fn set_element(&mut self, key: &str, t: &TensorElement) {
        self.elements.insert(
            key.to_string(),
            t.iter()
                .map(|(idx, c)| (idx.clone(), format_scalar(c)))
                .collect(),
        );
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} — {}\n",
            self.command.join(" "),
            if self.pass { "PASS" } else { "FAIL" }
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "  [{}] {}{}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.name,
                c.witness
                    .as_ref()
                    .map(|w| format!(" — witness: {w}"))
                    .unwrap_or_default()
            ));
        }
        for (k, v) in &self.numbers {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        for (k, v) in &self.vectors {
            out.push_str(&format!("  {k} = [{}]\n", v.join(", ")));
        }
        for (k, terms) in &self.elements {
            let body = terms
                .iter()
                .map(|(idx, c)| format!("{c}·{idx:?}"))
                .collect::<Vec<_>>()
                .join(" + ");
            out.push_str(&format!("  {k} = {body}\n"));
        }
        out
    }
}

pub fn digest(input: &str) -> String {
    let mut h = Sha256::new();
    h.update(input.as_bytes());
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn bialgebra_round_trip() {
        for (name, b) in [
            ("h4_sweedler", catalog::h4_sweedler()),
            ("group_S3", catalog::group_s3()),
        ] {
            let f = bialgebra_to_file(&b, Some(name.into()));
            let text = emit_algebra(&f);
            let parsed = parse_algebra(&text).unwrap();
            let b2 = file_to_bialgebra(&parsed).unwrap();
            assert!(b2.verify().all_pass());
            // emit ∘ parse ∘ emit is byte-identical
            assert_eq!(text, emit_algebra(&parsed));
            assert_eq!(b.mult_triples(), b2.mult_triples());
            assert_eq!(b.comult_triples(), b2.comult_triples());
        }
    }

    #[test]
    fn lie_round_trip() {
        for l in catalog::all_lie_algebras() {
            let f = lie_to_file(&l, None);
            let text = emit_algebra(&f);
            let l2 = file_to_lie(&parse_algebra(&text).unwrap()).unwrap();
            assert_eq!(l.triples(), l2.triples());
            assert_eq!(text, emit_algebra(&parse_algebra(&text).unwrap()));
        }
    }

    #[test]
    fn element_round_trip() {
        let b = catalog::h4_sweedler();
        let mut t = TensorElement::zero(b.dim, 2);
        t.set(vec![2, 3], crate::scalar::s_frac(-7, 3));
        let text = emit_element(&t);
        let t2 = parse_element(&text).unwrap();
        assert_eq!(t, t2);
    }

    #[test]
    fn bad_inputs_rejected() {
        assert!(parse_algebra("{").is_err());
        assert!(parse_algebra("{\"schema_version\":9,\"kind\":\"bialgebra\",\"dim\":0,\"basis_names\":[]}").is_err());
        let f = AlgebraFile {
            schema_version: SCHEMA_VERSION,
            kind: "bialgebra".into(),
            dim: 1,
            basis_names: vec!["1".into()],
            mult: Some(vec![(0, 0, 5, "1".into())]),
            unit: Some(vec!["1".into()]),
            comult: Some(vec![]),
            counit: Some(vec!["1".into()]),
            ..Default::default()
        };
        assert!(file_to_bialgebra(&f).is_err());
        // bad scalar literal
        let f2 = AlgebraFile {
            mult: Some(vec![(0, 0, 0, "1.5".into())]),
            ..f.clone()
        };
        assert!(file_to_bialgebra(&f2).is_err());
    }

    #[test]
    fn report_is_canonical() {
        let mut r = Report::new(vec!["verify".into(), "-".into()], "input");
        r.set_number("dim", 4);
        r.set_number("a", 1);
        let j1 = r.to_json();
        let j2 = r.to_json();
        assert_eq!(j1, j2);
        // keys come out sorted
        assert!(j1.find("\"a\"").unwrap() < j1.find("\"dim\"").unwrap());
        assert_eq!(r.input_digest.len(), 64);
    }
}
