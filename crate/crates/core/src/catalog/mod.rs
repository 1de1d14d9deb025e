//! Compiled-in catalog of the six-dimensional nilpotent Lie algebras with
//! per-algebra splitting and frame data, and drivers that re-verify it.

mod data;

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exterior::{basis, parse_form_list, ExteriorError, KForm, Subspace};
use crate::liealg::{LieAlgebra, LieError};
use crate::obstruction::{classify_with, lemma4_verify, Lemma4Certificate, ObstructionError, Verdict};
use crate::splitting::{generator_space, CoherentSplitting};
use crate::su3::{forms_from_frame, is_half_flat, Frame, HalfFlatCertificate, Su3Error};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("invalid catalog JSON: {0}")]
    Json(String),
    #[error("entry {notation}: {message}")]
    Entry { notation: String, message: String },
    #[error("duplicate notation {0}")]
    Duplicate(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub notation: String,
    pub half_flat: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frame: Option<Vec<String>>,
    #[serde(default, rename = "lambda20", skip_serializing_if = "Option::is_none")]
    pub lambda20_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b2: Option<usize>,
    #[serde(default, rename = "e1_02", skip_serializing_if = "Option::is_none")]
    pub e1_02_basis: Option<Vec<String>>,
}

fn split_list(s: &str) -> Vec<String> {
    crate::exterior::split_top_level(s).into_iter().map(|t| t.trim().to_string()).collect()
}

fn parse_forms(list: &[String]) -> Result<Vec<KForm>, ExteriorError> {
    parse_form_list(&list.join(","), 6)
}

impl CatalogEntry {
    pub fn algebra(&self) -> Result<LieAlgebra, LieError> {
        LieAlgebra::parse(&self.notation)
    }

    pub fn parsed_frame(&self) -> Option<Result<Frame, Su3Error>> {
        self.frame.as_ref().map(|f| Frame::new(parse_forms(f)?))
    }

    pub fn lambda20(&self) -> Option<Result<Vec<KForm>, ExteriorError>> {
        self.lambda20_basis.as_ref().map(|l| parse_forms(l))
    }

    pub fn e1_02(&self) -> Option<Result<Vec<KForm>, ExteriorError>> {
        self.e1_02_basis.as_ref().map(|l| parse_forms(l))
    }

    fn validate(&self) -> Result<LieAlgebra, CatalogError> {
        let err = |message: String| CatalogError::Entry { notation: self.notation.clone(), message };
        let g = self.algebra().map_err(|e| err(e.to_string()))?;
        if g.dim() != 6 {
            return Err(err(format!("dimension {}", g.dim())));
        }
        if let Some(Err(e)) = self.parsed_frame() {
            return Err(err(format!("frame: {e}")));
        }
        if let Some(Err(e)) = self.lambda20() {
            return Err(err(format!("lambda20: {e}")));
        }
        if let Some(Err(e)) = self.e1_02() {
            return Err(err(format!("e1_02: {e}")));
        }
        Ok(g)
    }
}

#[derive(Clone, Debug)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
    algebras: Vec<LieAlgebra>,
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

fn builtin_entries() -> Vec<CatalogEntry> {
    let mut out = Vec::with_capacity(34);
    for &(notation, frame, lambda) in data::HALF_FLAT {
        let lambda = match lambda {
            Some(l) => split_list(l),
            None => basis(6, 2).into_iter().map(|s| format!("e{}", s.indices().map(|i| i.to_string()).collect::<String>())).collect(),
        };
        out.push(CatalogEntry {
            notation: notation.into(),
            half_flat: true,
            frame: Some(split_list(frame)),
            lambda20_basis: Some(lambda),
            b1: None,
            b2: None,
            e1_02_basis: None,
        });
    }
    for &(notation, b1, b2, e1) in data::OBSTRUCTED {
        out.push(CatalogEntry {
            notation: notation.into(),
            half_flat: false,
            frame: None,
            lambda20_basis: None,
            b1: Some(b1),
            b2: Some(b2),
            e1_02_basis: (!e1.is_empty()).then(|| split_list(e1)),
        });
    }
    out
}

/// SHA-256 of the JSON export of the built-in catalog.
pub const BUILTIN_CHECKSUM: &str = "c331ed77c968ead2f024943f94e8eef3304ab227e6816fb214832942e896be85";

impl Catalog {
    pub fn new(entries: Vec<CatalogEntry>) -> Result<Self, CatalogError> {
        let mut algebras = Vec::with_capacity(entries.len());
        for (i, e) in entries.iter().enumerate() {
            if entries[..i].iter().any(|p| p.notation == e.notation) {
                return Err(CatalogError::Duplicate(e.notation.clone()));
            }
            algebras.push(e.validate()?);
        }
        Ok(Catalog { entries, algebras })
    }

    pub fn builtin() -> &'static Catalog {
        static CELL: OnceLock<Catalog> = OnceLock::new();
        CELL.get_or_init(|| Catalog::new(builtin_entries()).expect("built-in catalog is valid"))
    }

    pub fn from_json(text: &str) -> Result<Self, CatalogError> {
        let entries: Vec<CatalogEntry> = serde_json::from_str(text).map_err(|e| CatalogError::Json(e.to_string()))?;
        Catalog::new(entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("entries serialize")
    }

    pub fn checksum(&self) -> String {
        Sha256::digest(self.to_json().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry whose structure equations coincide with those of `g`.
    pub fn find(&self, g: &LieAlgebra) -> Option<&CatalogEntry> {
        self.algebras.iter().position(|a| a == g).map(|i| &self.entries[i])
    }

    pub fn algebra(&self, i: usize) -> &LieAlgebra {
        &self.algebras[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub notation: String,
    pub frame_is_basis: bool,
    pub half_flat: Option<HalfFlatCertificate>,
    pub generator_space_dim: usize,
    pub lambda20_matches: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table2Row {
    pub notation: String,
    pub b1: usize,
    pub b2: usize,
    pub betti_match: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h03: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h04: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub e1_02_matches: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma4: Option<Lemma4Certificate>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table1: Vec<Table1Row>,
    pub table2: Vec<Table2Row>,
    pub passed: usize,
    pub total: usize,
}

impl TableReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

fn verify_table1_row(e: &CatalogEntry, g: &LieAlgebra) -> Table1Row {
    let mut discrepancies = Vec::new();
    let (frame_is_basis, half_flat) = match e.parsed_frame() {
        Some(Ok(f)) => {
            let cert = is_half_flat(g, &forms_from_frame(&f));
            if !cert.half_flat {
                discrepancies.push(format!(
                    "frame {} is not half-flat: dω∧ω = {}, dψ⁺ = {}",
                    e.frame.as_ref().map(|f| f.join(",")).unwrap_or_default(),
                    cert.d_omega_wedge_omega,
                    cert.d_psi_plus
                ));
            }
            (true, Some(cert))
        }
        Some(Err(err)) => {
            discrepancies.push(format!("frame: {err}"));
            (false, None)
        }
        None => {
            discrepancies.push("no frame".into());
            (false, None)
        }
    };
    let gs = generator_space(g);
    let lambda20_matches = match e.lambda20() {
        Some(Ok(forms)) => Subspace::span(6, 2, &forms).map(|s| s == gs).unwrap_or(false),
        _ => false,
    };
    if !lambda20_matches {
        discrepancies.push(format!("Λ^{{2,0}} column differs from the solution space (dim {})", gs.dim()));
    }
    let pass = frame_is_basis && half_flat.as_ref().is_some_and(|c| c.half_flat) && lambda20_matches;
    Table1Row {
        notation: e.notation.clone(),
        frame_is_basis,
        half_flat,
        generator_space_dim: gs.dim(),
        lambda20_matches,
        pass,
        discrepancies,
    }
}

fn verify_table2_row(e: &CatalogEntry, g: &LieAlgebra) -> Table2Row {
    let mut discrepancies = Vec::new();
    let cohom = g.cohomology().expect("catalog algebras satisfy Jacobi");
    let (b1, b2) = (cohom.b(1), cohom.b(2));
    let betti_match = e.b1 == Some(b1) && e.b2 == Some(b2);
    if !betti_match {
        discrepancies.push(format!("Betti numbers ({b1},{b2}) vs listed ({:?},{:?})", e.b1, e.b2));
    }
    let mut row = Table2Row {
        notation: e.notation.clone(),
        b1,
        b2,
        betti_match,
        h03: None,
        h04: None,
        e1_02_matches: None,
        lemma4: None,
        pass: false,
        discrepancies: Vec::new(),
    };
    let ok = match e.e1_02() {
        Some(listed) => {
            let e12 = KForm::monomial(6, &[1, 2]).expect("e12");
            match CoherentSplitting::from_generator(g, &e12) {
                Ok(s) => {
                    let t = s.hpq();
                    row.h03 = Some(t.get(0, 3));
                    row.h04 = Some(t.get(0, 4));
                    let matches = match (s.e1_term(), listed) {
                        (Ok(e1), Ok(forms)) => Subspace::span(6, 2, &forms).is_ok_and(|l| l == e1.basis_02),
                        (Err(err), _) => {
                            discrepancies.push(format!("E1: {err}"));
                            false
                        }
                        (_, Err(err)) => {
                            discrepancies.push(format!("E1 column: {err}"));
                            false
                        }
                    };
                    if !matches {
                        discrepancies.push("E_1^{0,2} column differs".into());
                    }
                    row.e1_02_matches = Some(matches);
                    let vanish = t.get(0, 3) == 0 && t.get(0, 4) == 0;
                    if !vanish {
                        discrepancies.push(format!("h^{{0,3}} = {}, h^{{0,4}} = {}", t.get(0, 3), t.get(0, 4)));
                    }
                    matches && vanish
                }
                Err(err) => {
                    discrepancies.push(format!("e^{{12}} splitting: {err}"));
                    false
                }
            }
        }
        None => match lemma4_verify(g) {
            Ok(c) => {
                row.lemma4 = Some(c);
                true
            }
            Err(err) => {
                discrepancies.push(err.to_string());
                false
            }
        },
    };
    row.pass = betti_match && ok;
    row.discrepancies = discrepancies;
    row
}

pub fn verify_table1(c: &Catalog) -> Vec<Table1Row> {
    let idx: Vec<usize> = (0..c.len()).filter(|&i| c.entries[i].half_flat).collect();
    idx.par_iter().map(|&i| verify_table1_row(&c.entries[i], &c.algebras[i])).collect()
}

pub fn verify_table2(c: &Catalog) -> Vec<Table2Row> {
    let idx: Vec<usize> = (0..c.len()).filter(|&i| !c.entries[i].half_flat).collect();
    idx.par_iter().map(|&i| verify_table2_row(&c.entries[i], &c.algebras[i])).collect()
}

pub fn verify_tables(c: &Catalog) -> TableReport {
    let (table1, table2) = rayon::join(|| verify_table1(c), || verify_table2(c));
    let passed = table1.iter().filter(|r| r.pass).count() + table2.iter().filter(|r| r.pass).count();
    TableReport { total: table1.len() + table2.len(), table1, table2, passed }
}

/// Verdicts in catalog order.
pub fn classify_all(c: &Catalog) -> Vec<Result<Verdict, ObstructionError>> {
    c.algebras.par_iter().map(|g| classify_with(g, c)).collect()
}
