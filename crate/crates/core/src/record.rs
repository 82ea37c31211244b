//! JSON records printed by the CLI.
//!
//! A path record is
//! `{"moduli":[..], "from":[..], "to":[..], "word": <nested string | flat array>, "verified": bool, "length": int}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::Generator;
use crate::walk::{CycleWitness, Defect, PathCertificate};
use crate::word::Word;

/// A word either in nested text form or as flat 0-based generator indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordRepr {
    Nested(String),
    Flat(Vec<usize>),
}

impl WordRepr {
    pub fn nested(word: &Word<Generator>) -> Self {
        WordRepr::Nested(word.to_string())
    }

    pub fn flat(word: &Word<Generator>) -> Self {
        WordRepr::Flat(word.to_flat())
    }

    pub fn to_word(&self) -> Result<Word<Generator>> {
        match self {
            WordRepr::Nested(s) => s.parse(),
            WordRepr::Flat(v) => Ok(Word::from_flat(v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub moduli: Vec<u64>,
    pub from: Vec<u64>,
    pub to: Vec<u64>,
    pub word: WordRepr,
    pub verified: bool,
    pub length: u64,
    #[serde(default, skip_deserializing, skip_serializing_if = "Option::is_none")]
    pub defect: Option<Defect>,
}

impl PathRecord {
    pub fn from_certificate(cert: &PathCertificate, flat: bool) -> Self {
        PathRecord {
            moduli: cert.spec().moduli().to_vec(),
            from: cert.start().coords().to_vec(),
            to: cert.target().coords().to_vec(),
            word: if flat {
                WordRepr::flat(cert.word())
            } else {
                WordRepr::nested(cert.word())
            },
            verified: cert.is_verified(),
            length: cert.length(),
            defect: cert.defect().cloned(),
        }
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse {
            position: e.column().saturating_sub(1),
            message: format!("bad path record: {e}"),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub moduli: Vec<u64>,
    pub word: WordRepr,
    pub length: u64,
}

impl From<&CycleWitness> for CycleRecord {
    fn from(c: &CycleWitness) -> Self {
        CycleRecord {
            moduli: c.spec().moduli().to_vec(),
            word: WordRepr::nested(c.word()),
            length: c.len() as u64,
        }
    }
}
