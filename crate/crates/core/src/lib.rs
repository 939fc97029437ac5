pub mod bounds;
pub mod classify;
pub mod dynamics;
pub mod error;
pub mod ext;
pub mod ff;
pub mod fpoly;
pub mod scan;

pub use error::{Error, Result};
pub use ff::{make_field, FieldElement, FieldSpec};
pub use fpoly::{Factorization, Poly};
