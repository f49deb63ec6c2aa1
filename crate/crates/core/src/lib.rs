//! Exact sl2-equivariant calculus for the dotted Temperley–Lieb category and
//! truncated sl2-module decompositions of the B⁴ and B²×S² lasagna modules.

pub mod acceptance;
pub mod dtl;
pub mod error;
pub mod karoubi;
pub mod lasagna;
pub mod kirby;
pub mod linalg;
pub mod rep;
pub mod ring;
pub mod sl2core;
pub mod statespace;

pub use error::{Error, Result};
