//! Exact and numeric computation with theta series of even positive-definite
//! quadratic forms: insertion thetas `Σ ⟨v,m⟩ᵏ q^Q(m)`, their generating
//! functions in `X`, the E₂-corrected Ψ-forms, and numeric checks of the
//! modular transformation laws they satisfy.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod arith;
mod error;
pub mod jacobi_like;
pub mod lattice;
pub mod modforms;
pub mod qseries;
pub mod verify;

pub use error::{Error, FormError};
pub use num_complex::Complex64;
