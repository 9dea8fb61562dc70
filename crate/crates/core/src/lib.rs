//! Exact computations with numerical semigroup rings `K[[H]]`: semigroup
//! invariants, fractional ideals in `K((t))`, trace ideals, and the finite
//! dimensional counterparts over Artinian quotients.

pub mod arith;
pub mod semigroup;
pub mod series;
pub mod trace;
pub mod artin;
