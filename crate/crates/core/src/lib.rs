//! Exact construction and classification of coframe wedge maps.
//!
//! The objects live on spaces `Omega_l^{n,k}` spanned by pairs of strictly
//! increasing multi-indices: a lower index of length `n` drawn from
//! `{1..N-l}` and an upper index of length `k` drawn from `{1..N}`. The map
//! of interest wedges an element `s` times with a fixed coframe and lands in
//! the `(n+s, k+s)` space.
//!
//! Everything is computed over arbitrary-precision rationals — there are no
//! floating-point tolerances anywhere. Two independent routes answer every
//! classification question:
//!
//! * [`classify`] evaluates the closed-form criterion
//!   (surjective ⟺ `n+k ≥ N-s`, injective ⟺ `n+k ≤ N-l-s`);
//! * [`oracle`] row-reduces the explicitly built matrix ([`wedge`]) with
//!   fraction-free elimination and reads the rank off.
//!
//! The two routes are kept deliberately separate so each can certify the
//! other; the CLI's `verify` sweep and the acceptance suite cross-check them
//! on every valid parameter tuple in range.
//!
//! Supporting modules: [`indexkit`] (multi-index normalization, subsets,
//! merge signs, binomials), [`space`] (space signatures, elements,
//! coframes), [`systems`] (subset incidence systems and their combinatorial
//! one-sided inverses), and [`classify`] (predicate, duality, kernel and
//! cokernel witnesses).

pub mod classify;
pub mod indexkit;
pub mod oracle;
pub mod rational;
pub mod space;
pub mod systems;
pub mod wedge;

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Parameters outside the domain where an operation is defined
    /// (bounds violated, map parameters inconsistent, shape mismatch).
    #[error("domain error: {0}")]
    Domain(String),
    /// A stated precondition does not hold (e.g. asking for a kernel
    /// witness of an injective map).
    #[error("precondition not met: {0}")]
    Precondition(String),
    /// The operation is well-posed but deliberately not provided
    /// (e.g. dimension-criterion classification at positive codimension).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed textual input (rationals, JSON payload contents).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Convenience constructor for [`Error::Domain`].
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    /// Convenience constructor for [`Error::Precondition`].
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    /// Convenience constructor for [`Error::Parse`].
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
