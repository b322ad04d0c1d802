//! Exact multivariate Laurent polynomials and rational functions over Q.
//!
//! Variables live in fixed slots: `v` (= q_F^{1/2}), `u` (= mu(varpi)),
//! `x1..x6`, `y1..y6`, `z1..z6` and `X` (= q^{-s}), ordered in that sequence.
//! Monomials are compared by graded lexicographic order over the slots.

pub mod coeff;
pub mod error;
pub mod gcd;
pub mod identity;
pub mod matrix;
pub mod modular;
pub mod mono;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use coeff::Q;
pub use error::AlgebraError;
pub use gcd::gcd;
pub use identity::{rf_identity_equal, IdentityReport, Mode};
pub use matrix::{det_one_minus, rf_det, RFMatrix};
pub use modular::PRIME;
pub use mono::{x, y, z, Mono, NV, U, V, XS};
pub use parse::parse_ratfunc;
pub use poly::{LaurentPoly, Poly};
pub use ratfunc::{rf_eval_mod, rf_normalize, RatFunc};

/// The variable v = q_F^{1/2}.
pub fn v() -> RatFunc {
    RatFunc::var(V)
}

/// v^k
pub fn vpow(k: i32) -> RatFunc {
    RatFunc::monomial(Q::one(), Mono::var(V, k as i16))
}
