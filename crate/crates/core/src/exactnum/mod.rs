//! Exact rational scalars and dense linear-system solving.

mod matrix;
mod rational;

pub use matrix::{solve_exact, LinearSolution, RationalMatrix, SolveStatus};
pub use rational::{rat_arith, ArithOp, Rational};

use num_bigint::BigInt;

/// Binomial coefficient `C(n, k)` as an exact big integer (zero when `k > n`).
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, j| acc * BigInt::from(j))
}
