//! Exact symbolic kernel for conformal superalgebras in the model k[D] (x) A_n[v].

pub mod cend;
pub mod error;
pub mod free;
pub mod grassmann;
pub mod linalg;
pub mod scalar;
pub mod symbol;
pub mod syntax;
pub mod verify;
pub mod wk;

pub use cend::{CendElement, CendKey, Identity, IndexedSum};
pub use error::{Error, Result};
pub use grassmann::{AnElement, AnGen, Monomial};
pub use scalar::Scalar;
pub use symbol::{Embedding, EmbeddingKind, GeneratorSymbol};
