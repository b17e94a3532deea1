//! Exact computer algebra for finite-colength submodules of free modules
//! over multivariate polynomial rings.
//!
//! The library is organised bottom-up:
//!
//! - [`scalar`]: exact coefficients (arbitrary-precision rationals or a prime field),
//! - [`monomial`]: monomials, monomial terms and global term orders,
//! - [`vector`]: sparse elements of the free module `R^r`,
//! - [`ring`]: ring contexts (variables, rank, field, optional deformation parameter),
//! - [`parse`]: the text grammar for vectors and ring headers,
//! - [`groebner`]: normal forms, Buchberger completion, colength, minimal generators,
//! - [`syzygy`]: generating sets of first syzygy modules,
//! - [`modops`]: intersections, colon modules, kernels of maps to finite quotients,
//! - [`linalg`]: exact dense linear algebra (ranks, nullspaces, minimal polynomials),
//! - [`quotient`]: standard-monomial bases, socles and multiplication tables,
//! - [`tangent`]: tangent spaces of Quot-scheme points, weight gradings, TNT tests,
//! - [`nested`]: tangent spaces of nested Hilbert-scheme points,
//! - [`support`]: support decomposition of finite quotients,
//! - [`enumerate`]: exhaustive enumeration of staircases and monomial submodules,
//! - [`deform`]: socle-supported deformations and module constructions.

pub mod deform;
pub mod enumerate;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod modops;
pub mod monomial;
pub mod nested;
pub mod parse;
pub mod quotient;
pub mod ring;
pub mod scalar;
pub mod support;
pub mod syzygy;
pub mod tangent;
pub mod vector;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
