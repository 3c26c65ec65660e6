//! Exact rational and cyclotomic arithmetic, the value domain of every
//! class function and inner product in this crate.

mod cyclotomic;
mod rational;

pub use cyclotomic::{solve_linear, Cyclotomic};
pub use rational::{rat, rat_frac, Rational};
