//! Exact arithmetic with real algebraic numbers.

pub mod cyclo;
pub mod element;
pub mod factor;
pub mod field;
pub mod interval;
pub mod modp;
pub mod poly;
pub mod qlinalg;
pub mod subfield;

pub use cyclo::{cos_pi_over, totient};
pub use element::{adjoin_sqrt, AlgebraicNumber};
pub use field::{compositum, fields_equal, quadratic_field, rationals, Field, NumberField};
pub use subfield::{subfield_generated, Subfield};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("division by zero")]
    ZeroDivision,
    #[error("square root of a negative number requested")]
    NegativeRadicand,
    #[error("field degree {0} exceeds the configured cap")]
    DegreeCap(usize),
    #[error("element does not lie in the target field")]
    NotContained,
    #[error("internal error: {0}")]
    Internal(String),
}

/// A real embedding of a field: θ is sent to the real root with this index.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub field: Field,
    pub root_index: usize,
}

impl Embedding {
    pub fn is_identity(&self) -> bool {
        self.root_index == self.field.designated()
    }

    pub fn sign(&self, x: &AlgebraicNumber) -> i32 {
        let x = x.coerce_to(&self.field).expect("element of the embedded field");
        x.sign_under(self.root_index)
    }
}

/// One embedding per real root of the minimal polynomial.
pub fn embeddings(f: &Field) -> Vec<Embedding> {
    (0..f.real_root_count()).map(|i| Embedding { field: f.clone(), root_index: i }).collect()
}
