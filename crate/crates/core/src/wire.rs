//! JSON interchange for elements, concrete polynomials and generator polynomials.

use serde::{Deserialize, Serialize};

use crate::coeffring::{format_coeff, Coeff, Ring};
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::msf::{AlphaIndex, Ambient, MsfElement};
use crate::polyring::NPoly;
use crate::rewrite::SymbolPoly;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AmbientField {
    Finite(u32),
    Named(String),
}

impl From<Ambient> for AmbientField {
    fn from(a: Ambient) -> Self {
        match a {
            Ambient::Finite(n) => AmbientField::Finite(n),
            Ambient::Infinite => AmbientField::Named("inf".into()),
        }
    }
}

impl TryFrom<&AmbientField> for Ambient {
    type Error = Error;

    fn try_from(a: &AmbientField) -> Result<Ambient> {
        match a {
            AmbientField::Finite(n) => Ok(Ambient::Finite(*n)),
            AmbientField::Named(s) if s == "inf" => Ok(Ambient::Infinite),
            AmbientField::Named(s) => Err(Error::Parse(format!("bad ambient `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaEntry {
    pub mono: Vec<u32>,
    pub mult: u32,
}

pub fn alpha_entries(idx: &AlphaIndex) -> Vec<AlphaEntry> {
    idx.support()
        .iter()
        .map(|(mu, k)| AlphaEntry {
            mono: mu.exponents().to_vec(),
            mult: *k,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermFile {
    pub alpha: Vec<AlphaEntry>,
    pub coeff: String,
}

/// The on-disk form of an [`MsfElement`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub n: AmbientField,
    pub m: usize,
    pub ring: String,
    pub terms: Vec<TermFile>,
}

impl From<&MsfElement> for ElementFile {
    fn from(x: &MsfElement) -> Self {
        ElementFile {
            n: x.ambient().into(),
            m: x.m(),
            ring: x.ring().to_string(),
            terms: x
                .terms()
                .iter()
                .map(|(idx, c)| TermFile {
                    alpha: alpha_entries(idx),
                    coeff: format_coeff(c),
                })
                .collect(),
        }
    }
}

impl TryFrom<&ElementFile> for MsfElement {
    type Error = Error;

    fn try_from(file: &ElementFile) -> Result<MsfElement> {
        let ring: Ring = file.ring.parse()?;
        let ambient = Ambient::try_from(&file.n)?;
        let mut terms = Vec::with_capacity(file.terms.len());
        for t in &file.terms {
            let idx = AlphaIndex::new(
                file.m,
                t.alpha
                    .iter()
                    .map(|e| (Monomial::new(e.mono.clone()), e.mult)),
            )?;
            terms.push((idx, ring.parse_coeff(&t.coeff)?));
        }
        MsfElement::from_terms(ambient, file.m, ring, terms)
    }
}

pub fn element_to_json(x: &MsfElement) -> String {
    serde_json::to_string_pretty(&ElementFile::from(x)).expect("plain data serializes")
}

pub fn element_from_json(s: &str) -> Result<MsfElement> {
    let file: ElementFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    MsfElement::try_from(&file)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NTerm {
    pub exponents: Vec<u32>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NPolyFile {
    pub n: usize,
    pub m: usize,
    pub ring: String,
    pub text: String,
    pub terms: Vec<NTerm>,
}

pub fn npoly_to_json(p: &NPoly) -> String {
    let file = NPolyFile {
        n: p.n(),
        m: p.m(),
        ring: p.ring().to_string(),
        text: p.to_string(),
        terms: p
            .terms()
            .iter()
            .rev()
            .map(|(mono, c)| NTerm {
                exponents: mono.exponents().to_vec(),
                coeff: format_coeff(c),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("plain data serializes")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factor {
    pub i: u32,
    pub mu: Vec<u32>,
    pub exp: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymTerm {
    pub factors: Vec<Factor>,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolPolyFile {
    pub n: AmbientField,
    pub m: usize,
    pub ring: String,
    pub text: String,
    pub terms: Vec<SymTerm>,
}

pub fn symbol_poly_file(p: &SymbolPoly, ambient: Ambient) -> SymbolPolyFile {
    SymbolPolyFile {
        n: ambient.into(),
        m: p.m(),
        ring: p.ring().to_string(),
        text: p.to_string(),
        terms: p
            .terms()
            .iter()
            .map(|(mono, c): (_, &Coeff)| SymTerm {
                factors: mono
                    .iter()
                    .map(|(s, e)| Factor {
                        i: s.i,
                        mu: s.mu.exponents().to_vec(),
                        exp: *e,
                    })
                    .collect(),
                coeff: format_coeff(c),
            })
            .collect(),
    }
}

pub fn symbol_poly_to_json(p: &SymbolPoly, ambient: Ambient) -> String {
    serde_json::to_string_pretty(&symbol_poly_file(p, ambient)).expect("plain data serializes")
}
