//! Exact arithmetic in rings of multisymmetric functions.
//!
//! The invariant ring `A_R(n,m)^{S_n}` of the symmetric group permuting `n`
//! slots of `m` variables has the orbit sums `e_alpha` as an `R`-basis. This
//! crate multiplies in that basis, rewrites basis elements into the free
//! generators `e_i(nu)` with `nu` primitive, extracts the relations that hold
//! in a finite ambient, and checks everything against a brute-force model of
//! the polynomial ring `A_R(n,m)` itself.

pub mod algebra;
pub mod checks;
pub mod coeffring;
pub mod error;
pub mod linalg;
pub mod monomial;
pub mod msf;
pub mod oracle;
pub mod polyring;
pub mod relations;
pub mod rewrite;
pub mod symfun;
pub mod wire;

pub use algebra::Algebra;
pub use coeffring::{Coeff, Ring, RingKind};
pub use error::{Error, Result};
pub use monomial::{Monomial, Multidegree};
pub use msf::{AlphaIndex, Ambient, MarginTable, MsfElement};
pub use polyring::{MPoly, NPoly, Perm};
pub use rewrite::{GenPoly, Rewriter, Symbol, SymbolPoly};
pub use symfun::{EMonomial, EPoly};
