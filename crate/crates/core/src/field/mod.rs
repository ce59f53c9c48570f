//! Exact arithmetic in GF(8) and in GF(3ⁿ) for odd n.

mod gf3n;
mod gf8;

pub use gf3n::{F3n, Gf3n, MAX_DEGREE};
pub use gf8::F8;
