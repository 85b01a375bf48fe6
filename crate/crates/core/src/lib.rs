//! Positive expansivity of one-dimensional linear cellular automata over
//! `(Z/mZ)^n` and additive cellular automata over finite abelian groups.
//!
//! The decision procedure works on the Laurent matrix `A = sum_i A_i X^-i`
//! of a linear rule: the automaton is positively expansive exactly when, for
//! every prime `p | m`, the characteristic polynomial of `A mod p` is
//! expansive (see [`expansivity`]). Additive rules are embedded into a linear
//! rule per primary component (see [`additive`]).
//!
//! Two independent routes back every verdict: a brute-force dynamical
//! [`oracle`] and the invariant factors of `tI - A` computed by a Smith normal
//! form over `F_p(X)[t]` (see [`matpoly::smith`]).

pub mod additive;
pub mod decider;
pub mod error;
pub mod expansivity;
pub mod job;
pub mod laurent;
pub mod matpoly;
pub mod modarith;
pub mod oracle;
pub mod ratfunc;
pub mod ring;

pub use additive::{AdditiveRule, AdditiveVerdict, GroupConfig, GroupSpec, PrimaryComponent};
pub use decider::{decide_lca, LcaRule, Verdict};
pub use error::{Error, Result};
pub use expansivity::{is_expansive_matrix, is_expansive_poly, Expansivity, Violation};
pub use laurent::{ExtDegree, LaurentPoly};
pub use matpoly::{invariant_factors, InvariantFactors, LaMatrix, TPoly};
pub use modarith::{factor, Modulus, PrimePower, Residue};
pub use oracle::{FiniteConfig, OracleResult, Side};
pub use ratfunc::RatFunc;
