//! Exact arithmetic for weighted Dedekind symbols and Hecke operators acting on them.
//!
//! The crate is organised bottom-up:
//!
//! - [`exact`]: rationals, Bernoulli numbers/polynomials/functions, divisor power sums and
//!   Apostol's generalized Dedekind sums.
//! - [`unimodular`]: enumeration of the `SL2(Z)/±1` representatives that make up the
//!   finite sums `I_{w,n}`.
//! - [`symbols`]: the symbol abstraction and every concrete family (`G_w`, `F_w`,
//!   `E_{w,n}`, the Eisenstein odd symbol) plus the reciprocity polynomials `S_{w,n}`.
//! - [`hecke`]: the Hecke operator on symbols, eigenvalue extraction and the generalized
//!   tau functions by the operator route and by closed forms.
//! - [`qoracle`]: truncated q-expansions used as independent ground truth.
//! - [`verify`]: the executable identity suite.
//!
//! Everything is exact; there is no floating point anywhere.

pub mod error;
pub mod exact;
pub mod hecke;
mod par;
pub mod qoracle;
pub mod symbols;
pub mod unimodular;
pub mod verify;

pub use error::{Error, Result};
pub use exact::Rational;
pub use hecke::CuspSpace;
pub use symbols::{DedekindSymbol, Parity, SymbolFamilyParams, SymbolPoint};
