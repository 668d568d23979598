//! Generator alphabet B = {v, xi_i, del_i} shared by the Lie-side data and the
//! free conformal algebra.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeneratorSymbol {
    V,
    Xi(usize),
    Del(usize),
}

impl GeneratorSymbol {
    pub fn parity(self) -> u8 {
        match self {
            GeneratorSymbol::V => 0,
            _ => 1,
        }
    }

    pub fn index(self) -> Option<usize> {
        match self {
            GeneratorSymbol::V => None,
            GeneratorSymbol::Xi(i) | GeneratorSymbol::Del(i) => Some(i),
        }
    }

    pub fn check_rank(self, rank: usize) -> Result<()> {
        match self.index() {
            Some(i) if i == 0 || i > rank => Err(Error::IndexOutOfRange { index: i, rank }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for GeneratorSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSymbol::V => write!(f, "v"),
            GeneratorSymbol::Xi(i) => write!(f, "xi{i}"),
            GeneratorSymbol::Del(i) => write!(f, "del{i}"),
        }
    }
}

/// v, xi_1..xi_n, del_1..del_n in that order.
pub fn generators(rank: usize) -> Vec<GeneratorSymbol> {
    let mut out = vec![GeneratorSymbol::V];
    out.extend((1..=rank).map(GeneratorSymbol::Xi));
    out.extend((1..=rank).map(GeneratorSymbol::Del));
    out
}

/// Which of the two embeddings of W_n into the Cend model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EmbeddingKind {
    /// v -> v - D, xi_i -> (v - D) xi_i, del_i -> del_i
    Phi1,
    /// v -> v, xi_i -> v xi_i, del_i -> del_i
    Phi2,
}

impl EmbeddingKind {
    pub fn name(self) -> &'static str {
        match self {
            EmbeddingKind::Phi1 => "phi1",
            EmbeddingKind::Phi2 => "phi2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "phi1" | "1" => Some(EmbeddingKind::Phi1),
            "phi2" | "2" => Some(EmbeddingKind::Phi2),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub kind: EmbeddingKind,
    pub rank: usize,
}

impl Embedding {
    pub fn new(kind: EmbeddingKind, rank: usize) -> Self {
        Embedding { kind, rank }
    }

    pub fn phi1(rank: usize) -> Self {
        Self::new(EmbeddingKind::Phi1, rank)
    }

    pub fn phi2(rank: usize) -> Self {
        Self::new(EmbeddingKind::Phi2, rank)
    }
}
