//! Exact arithmetic toolkit for foliations on projective space over finite
//! fields: polynomial differential forms, Groebner-basis dimension counts,
//! p-curvature and the Cartier operator, classification tests and censuses.

pub mod classify;
pub mod error;
pub mod extalg;
pub mod field;
pub mod foliation;
pub mod frobenius;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod random;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
