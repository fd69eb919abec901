//! Exact arithmetic and counting for polynomial functions over dual numbers
//! of finite commutative rings.
//!
//! The crate realizes rings R of the shapes Z_{p^n}, GF(p^e) and direct sums
//! of these, the dual-number extensions R[a_1,...,a_k] with a_i a_j = 0,
//! polynomials and their induced functions, null-ideal and permutation
//! criteria, and the counting identities tying them together. Every counting
//! fast path is paired with an exhaustive enumeration oracle at desk scale.

pub mod counting;
pub mod dual;
pub mod error;
pub mod exhaust;
pub mod null;
pub mod perm;
pub mod poly;
pub mod ring;

mod linalg;

pub use error::{Error, Result};
pub use exhaust::EnumLimits;
pub use ring::{FiniteRing, Ring, RingSpec};
