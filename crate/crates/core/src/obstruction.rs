//! Non-existence certificates for half-flat structures and the decision
//! procedure for six-dimensional nilpotent Lie algebras.

use serde::Serialize;
use thiserror::Error;

use crate::catalog::Catalog;
use crate::exterior::{KForm, Scalar, Subspace};
use crate::liealg::{LieAlgebra, LieError};
use crate::splitting::{candidate_generators, coordinate_splittings, CoherentSplitting, SplittingError};
use crate::su3::{forms_from_frame, is_half_flat, HalfFlatCertificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("expected a six-dimensional Lie algebra, got dimension {0}")]
    NotSixDimensional(usize),
    #[error("splitting does not belong to this Lie algebra")]
    ForeignSplitting,
    #[error("lemma 4 certificate refused at clause ({clause}): {detail}")]
    Lemma4 { clause: char, detail: String },
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Splitting(#[from] SplittingError),
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// `h^{0,3} = h^{0,4} = 0` for `s`.
pub fn theorem1_obstructed(g: &LieAlgebra, s: &CoherentSplitting) -> Result<bool, ObstructionError> {
    let adapted = g.in_basis(s.basis_change())?;
    if &adapted != s.adapted_algebra() {
        return Err(ObstructionError::ForeignSplitting);
    }
    let t = s.hpq();
    Ok(s.dim() >= 4 && t.get(0, 3) == 0 && t.get(0, 4) == 0)
}

/// Nonzero value of `α∧(v⌟ψ)∧φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrilinearWitness {
    pub alpha: KForm,
    pub v: Vec<Scalar>,
    pub psi: KForm,
    pub phi: KForm,
}

/// First `(α, v, ψ, φ)` with `α∧(v⌟ψ)∧φ ≠ 0`, `α` in a basis of `v1`, `v` among
/// `directions`, `ψ, φ` in a basis of `Z³`.
pub fn trilinear_violation(g: &LieAlgebra, v1: &Subspace, directions: &[Vec<Scalar>]) -> Option<TrilinearWitness> {
    let z3 = g.closed(3).basis();
    for alpha in v1.basis() {
        for v in directions {
            for psi in &z3 {
                let left = &alpha ^ &psi.contract_vector(v).expect("degree 3");
                if left.is_zero() {
                    continue;
                }
                if let Some(phi) = z3.iter().find(|phi| !(&left ^ *phi).is_zero()) {
                    return Some(TrilinearWitness { alpha, v: v.clone(), psi: psi.clone(), phi: phi.clone() });
                }
            }
        }
    }
    None
}

/// Trilinear vanishing for `α ∈ v1` against the whole annihilator of `v1`.
pub fn trilinear_vanishing(g: &LieAlgebra, v1: &Subspace) -> bool {
    trilinear_violation(g, v1, &v1.annihilator_vectors()).is_none()
}

/// Trilinear vanishing against the given directions only.
pub fn trilinear_vanishing_along(g: &LieAlgebra, v1: &Subspace, directions: &[Vec<Scalar>]) -> bool {
    trilinear_violation(g, v1, directions).is_none()
}

fn unit(n: usize, k: usize) -> Vec<Scalar> {
    (1..=n).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect()
}

fn mono(n: usize, idx: &[usize]) -> KForm {
    KForm::monomial(n, idx).expect("valid indices")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma4Certificate {
    pub derived_length: usize,
    pub z4_dim: usize,
    pub z3_dim: usize,
    /// forms shown to be exact
    pub exact: Vec<String>,
    /// contraction directions `e_k`
    pub directions: Vec<usize>,
}

/// Checks the four clauses for the sporadic argument; errors name the first failing clause.
pub fn lemma4_verify(g: &LieAlgebra) -> Result<Lemma4Certificate, ObstructionError> {
    let n = g.dim();
    if n != 6 {
        return Err(ObstructionError::NotSixDimensional(n));
    }
    g.require_jacobi()?;
    let refuse = |clause, detail: String| ObstructionError::Lemma4 { clause, detail };
    if !g.is_nilpotent() {
        return Err(refuse('a', "not nilpotent".into()));
    }
    let len = g.derived_length()?;
    if len < 3 {
        return Err(refuse('a', format!("derived length {len}")));
    }
    if !crate::splitting::generator_space(g).is_zero() {
        return Err(refuse('a', "Λ²ker d has solutions α∧de^i = 0".into()));
    }
    let z4 = g.closed(4).basis();
    for sigma in &z4 {
        for plane in [[1, 2], [1, 3]] {
            let w = sigma ^ &mono(n, &plane);
            if !w.is_zero() {
                return Err(refuse('b', format!("({sigma})∧e^{{{}{}}} = {w}", plane[0], plane[1])));
            }
        }
    }
    let b3 = g.exact(3);
    let five = [[1, 2, 3], [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 5]];
    let mut exact = Vec::new();
    for idx in five {
        let f = mono(n, &idx);
        if !b3.contains(&f) {
            return Err(refuse('c', format!("{f} is not exact")));
        }
        exact.push(f.to_string());
    }
    let v1 = Subspace::span(n, 1, &[g.generator(1)]).expect("one-form");
    let directions = [4, 5, 6];
    let dirs: Vec<Vec<Scalar>> = directions.iter().map(|&k| unit(n, k)).collect();
    if let Some(w) = trilinear_violation(g, &v1, &dirs) {
        return Err(refuse('d', format!("{}∧(v⌟({}))∧({}) ≠ 0", w.alpha, w.psi, w.phi)));
    }
    Ok(Lemma4Certificate {
        derived_length: len,
        z4_dim: z4.len(),
        z3_dim: g.closed(3).dim(),
        exact,
        directions: directions.to_vec(),
    })
}

/// `Λ²𝔤* → Hom(B², Λ⁴𝔤*)` is not injective.
pub fn corollary_cond1(g: &LieAlgebra) -> bool {
    let b2 = g.exact(2).basis();
    !Subspace::kernel_of_map(g.dim(), 2, |a| b2.iter().map(|b| a ^ b).collect()).is_zero()
}

/// `Λ²𝔤* → Hom(Z³, Λ⁵𝔤*)` is injective.
pub fn corollary_cond2(g: &LieAlgebra) -> bool {
    let z3 = g.closed(3).basis();
    Subspace::kernel_of_map(g.dim(), 2, |a| z3.iter().map(|p| a ^ p).collect()).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    HalfFlat,
    Obstructed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    /// verified adapted frame
    WitnessFrame,
    /// both corollary conditions, no frame at hand
    Corollary,
    Theorem1,
    Lemma4,
    CorollaryCond1Failed,
    CorollaryCond2Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Certificate {
    pub generator: String,
    pub h03: usize,
    pub h04: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cond1: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cond2: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub half_flat: Option<HalfFlatCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem1: Option<Theorem1Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma4: Option<Lemma4Certificate>,
    /// `h^{0,3}` of every tested coherent splitting
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tested_h03: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub algebra: String,
    pub status: Status,
    pub reason: Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_frame: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_generator: Option<String>,
    pub certificate: Certificate,
}

/// Coherent splittings tried by [`classify`]: generators from the finite witness
/// set, plus coordinate planes when `g` is not nilpotent.
pub fn tested_splittings(g: &LieAlgebra, nilpotent: bool) -> Vec<CoherentSplitting> {
    let mut out: Vec<CoherentSplitting> = candidate_generators(g)
        .iter()
        .filter_map(|a| CoherentSplitting::from_generator(g, a).ok())
        .collect();
    if !nilpotent {
        for s in coordinate_splittings(g) {
            if !out.iter().any(|t| t.v1() == s.v1()) {
                out.push(s);
            }
        }
    }
    out
}

/// [`classify_with`] against the built-in catalog.
pub fn classify(g: &LieAlgebra) -> Result<Verdict, ObstructionError> {
    classify_with(g, Catalog::builtin())
}

/// Decides existence of a half-flat structure. Nilpotent algebras are decided by
/// the corollary conditions and cross-checked against every certificate found;
/// other algebras only receive obstruction verdicts.
pub fn classify_with(g: &LieAlgebra, catalog: &Catalog) -> Result<Verdict, ObstructionError> {
    if g.dim() != 6 {
        return Err(ObstructionError::NotSixDimensional(g.dim()));
    }
    g.require_jacobi()?;
    let nilpotent = g.is_nilpotent();
    let entry = catalog.find(g);

    let mut cert = Certificate::default();
    let mut frame = None;
    if let Some(f) = entry.and_then(|e| e.parsed_frame().transpose().ok().flatten()) {
        let hf = is_half_flat(g, &forms_from_frame(&f));
        if hf.half_flat {
            frame = Some(f);
        }
        cert.half_flat = Some(hf);
    }

    let splittings = tested_splittings(g, nilpotent);
    let mut theorem1 = None;
    for s in &splittings {
        let t = s.hpq();
        cert.tested_h03.push(t.get(0, 3));
        if theorem1.is_none() && t.get(0, 3) == 0 && t.get(0, 4) == 0 {
            theorem1 = Some(Theorem1Certificate { generator: s.generator().to_string(), h03: 0, h04: 0 });
        }
    }
    let lemma4 = if theorem1.is_none() { lemma4_verify(g).ok() } else { None };
    let obstructed = theorem1.is_some() || lemma4.is_some();

    if frame.is_some() && obstructed {
        return Err(ObstructionError::Consistency(format!(
            "{} has both a half-flat frame and an obstruction certificate",
            g.notation()
        )));
    }

    let (status, reason) = if nilpotent {
        let (c1, c2) = (corollary_cond1(g), corollary_cond2(g));
        cert.cond1 = Some(c1);
        cert.cond2 = Some(c2);
        if c1 && c2 {
            if obstructed {
                return Err(ObstructionError::Consistency(format!(
                    "{}: corollary conditions hold but an obstruction certificate exists",
                    g.notation()
                )));
            }
            // the other formulation: a coherent splitting exists and none has h^{0,3} = 0
            if splittings.is_empty() || cert.tested_h03.contains(&0) {
                return Err(ObstructionError::Consistency(format!(
                    "{}: corollary and splitting formulations disagree",
                    g.notation()
                )));
            }
            let reason = if frame.is_some() { Reason::WitnessFrame } else { Reason::Corollary };
            (Status::HalfFlat, reason)
        } else if frame.is_some() {
            return Err(ObstructionError::Consistency(format!(
                "{}: verified frame but a corollary condition fails",
                g.notation()
            )));
        } else if theorem1.is_some() {
            (Status::Obstructed, Reason::Theorem1)
        } else if lemma4.is_some() {
            (Status::Obstructed, Reason::Lemma4)
        } else if !c1 {
            (Status::Obstructed, Reason::CorollaryCond1Failed)
        } else {
            (Status::Obstructed, Reason::CorollaryCond2Failed)
        }
    } else if frame.is_some() {
        (Status::HalfFlat, Reason::WitnessFrame)
    } else if theorem1.is_some() {
        (Status::Obstructed, Reason::Theorem1)
    } else if lemma4.is_some() {
        (Status::Obstructed, Reason::Lemma4)
    } else {
        return Err(ObstructionError::Undecided(format!(
            "{} is not nilpotent and no obstruction certificate was found",
            g.notation()
        )));
    };

    let witness_generator = theorem1.as_ref().map(|t| t.generator.clone());
    cert.theorem1 = theorem1;
    cert.lemma4 = lemma4;
    Ok(Verdict {
        algebra: g.notation(),
        status,
        reason,
        witness_frame: frame.map(|f| f.to_strings()),
        witness_generator,
        certificate: cert,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::e;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::parse(s).unwrap()
    }

    fn from_gen(g: &LieAlgebra, a: &str) -> CoherentSplitting {
        CoherentSplitting::from_generator(g, &e(6, a)).unwrap()
    }

    #[test]
    fn theorem1_examples() {
        let g = alg("0,0,0,12,14,24");
        assert!(theorem1_obstructed(&g, &from_gen(&g, "12")).unwrap());
        let g = alg("0,0,0,0,12,13");
        assert!(!theorem1_obstructed(&g, &from_gen(&g, "12")).unwrap());
        let g = alg("0,12,13,14,15,16");
        assert!(theorem1_obstructed(&g, &from_gen(&g, "12")).unwrap());
        let other = alg("0,0,0,0,12,13");
        assert_eq!(
            theorem1_obstructed(&other, &from_gen(&g, "12")),
            Err(ObstructionError::ForeignSplitting)
        );
    }

    #[test]
    fn trilinear_examples() {
        let g = alg("0,0,12,13,14,34+52");
        let v1 = Subspace::span(6, 1, &[e(6, "1")]).unwrap();
        let dirs: Vec<_> = [4, 5, 6].iter().map(|&k| unit(6, k)).collect();
        assert!(trilinear_vanishing_along(&g, &v1, &dirs));

        let ab = LieAlgebra::abelian(6);
        let w = trilinear_violation(&ab, &v1, &v1.annihilator_vectors()).unwrap();
        let val = &(&w.alpha ^ &w.psi.contract_vector(&w.v).unwrap()) ^ &w.phi;
        assert!(!val.is_zero());
        assert!(!trilinear_vanishing(&ab, &v1));
        let direct = &(&e(6, "1") ^ &e(6, "234").contract(2).unwrap()) ^ &e(6, "256");
        assert!(!direct.is_zero());
    }

    #[test]
    fn lemma4_examples() {
        for s in ["0,0,12,13,14,34+52", "0,0,12,13,14+23,34+52"] {
            let c = lemma4_verify(&alg(s)).unwrap();
            assert_eq!(c.derived_length, 3);
            assert_eq!(c.exact.len(), 5);
        }
        match lemma4_verify(&alg("0,0,0,12,13,23")) {
            Err(ObstructionError::Lemma4 { clause, .. }) => assert_eq!(clause, 'a'),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn corollary_examples() {
        let ab = LieAlgebra::abelian(6);
        assert!(corollary_cond1(&ab) && corollary_cond2(&ab));
        assert!(!corollary_cond2(&alg("0,0,0,12,14,24")));
        let g = alg("0,0,12,13,23,14");
        assert!(corollary_cond1(&g) && corollary_cond2(&g));
    }

    /// `(λe^{12} + β)∧ψ ≠ 0` for every λ.
    fn nonzero_for_all_lambda(beta: &KForm, psi: &KForm) -> bool {
        let a = &e(6, "12") ^ psi;
        let b = beta ^ psi;
        !b.is_zero() && (a.is_zero() || Subspace::span(6, 5, &[a, b]).unwrap().dim() == 2)
    }

    #[test]
    fn case_ii_witnesses() {
        let cases = [
            ("0,0,0,12,14,15+23", "13", "245"),
            ("0,0,0,12,14-23,15+34", "13", "245"),
            ("0,0,0,12,14,15", "13", "245"),
            ("0,0,0,12,23,14+35", "13", "245"),
            ("0,0,0,12,23,14-35", "13", "245"),
            ("0,0,0,12,13,24", "23", "145"),
        ];
        for (s, beta, psi) in cases {
            let g = alg(s);
            let psi = e(6, psi);
            assert!(g.d(&psi).is_zero(), "{s}");
            assert!(nonzero_for_all_lambda(&e(6, beta), &psi), "{s}");
            assert!(corollary_cond2(&g), "{s}");
        }
    }

    #[test]
    fn classify_examples() {
        let v = classify(&alg("0,0,12,13,23,14")).unwrap();
        assert_eq!((v.status, v.reason), (Status::HalfFlat, Reason::WitnessFrame));
        assert_eq!(v.witness_frame.unwrap().join(","), "e^{1},e^{5},e^{2},e^{4},e^{3},e^{6}");
        let v = classify(&alg("0,0,0,0,12,15")).unwrap();
        assert_eq!((v.status, v.reason), (Status::Obstructed, Reason::Theorem1));
        assert_eq!(v.witness_generator.as_deref(), Some("e^{12}"));
        let v = classify(&alg("0,0,12,13,14+23,34+52")).unwrap();
        assert_eq!((v.status, v.reason), (Status::Obstructed, Reason::Lemma4));
    }

    #[test]
    fn classify_non_nilpotent() {
        let v = classify(&alg("0,12,13,14,15,16")).unwrap();
        assert_eq!((v.status, v.reason), (Status::Obstructed, Reason::Theorem1));
        let r = classify(&alg("23,-13,12,0,0,0"));
        assert!(matches!(r, Err(ObstructionError::Undecided(_))));
        assert_eq!(classify(&alg("0,0,12,13")), Err(ObstructionError::NotSixDimensional(4)));
    }

    #[test]
    fn verdict_json() {
        let v = classify(&alg("0,0,0,0,12,15")).unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["status"], "obstructed");
        assert_eq!(j["reason"], "theorem1");
        assert_eq!(j["witness_generator"], "e^{12}");
        assert!(j.get("witness_frame").is_none());
    }
}
