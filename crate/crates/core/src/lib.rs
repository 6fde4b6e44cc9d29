//! Subgroups of finite abelian groups `Z_m × Z_n × Z_r`.
//!
//! * [`rank3`] enumerates every subgroup through a unique triangular basis
//!   and counts subgroups in total, by order, and cyclic ones.
//! * [`rank2`] does the same for `Z_m × Z_n`.
//! * [`typecounts`] turns the counts for `p`-groups into exact polynomials
//!   in `p`.
//! * [`oracle`] is an independent brute-force lattice used for checking.
//! * [`asymptotics`] evaluates the average order of `s(n) = s(n, n, n)`.
//!
//! Integer work is done in `u64`/`u128`; polynomials and the real-valued
//! helpers are generic over their scalar with the aliases below as the
//! default instantiations.

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod group;
pub mod oracle;
pub mod poly;
pub mod rank2;
pub mod rank3;
pub mod tables;
pub mod typecounts;
pub mod verify;

pub use error::{Error, Result};
pub use group::Group3;

/// Polynomials in `p` with 128-bit coefficients.
pub type IntPoly = poly::Polynomial<i128>;

/// Real scalar used for the asymptotic comparison.
pub type Real = f64;

/// Values of multiplicative functions.
pub type Value = i128;

/// Congruence solutions over the signed scalar used internally.
pub type Congruence = arith::CongruenceSolution<i128>;
