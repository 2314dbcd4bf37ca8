//! Exact polynomial algebra for comparing embedded hypersurfaces.
//!
//! Everything is computed over the rationals with arbitrary precision:
//! Gröbner bases, zero-dimensional zero counts, Jacobian-minor (elementary
//! ideal) invariants, and replayable isomorphism certificates between
//! presentations `K[x]/<f>`.

pub mod error;
pub mod groebner;
pub mod invariants;
pub mod polyring;
pub mod presentations;
pub mod textio;
pub mod zerodim;

pub use error::{Error, Result, SourceSpan};
pub use groebner::{Ideal, MonomialOrder, OrderKind};
pub use invariants::{
    compare_invariants, elementary_ideal, jacobian, quasi_singular, InvariantVerdict, JacobianMatrix,
    QuasiSingularReport,
};
pub use polyring::{Monomial, Polynomial, Rational, RationalPoint, VarSet};
pub use presentations::{parse_certificate, verify_certificate, Certificate, Presentation, VerificationReport};
pub use textio::{parse_polynomial, parse_system, render, RenderStyle, SystemFile};
pub use zerodim::{count_distinct_zeros, ZeroCount};
