//! Exact Bernoulli numbers, Bernoulli polynomials and power sums, together
//! with an exact verifier for families of three-weight symmetry identities
//! built from them.
//!
//! Everything is computed over the rationals: identity sides are compared as
//! polynomials in the `y` variables, and generating-function quotients as
//! truncated power series.

pub mod bernoulli;
pub mod exact;
pub mod identities;
pub mod series;

/// Positive integer weights `(w1, w2, w3)`.
pub type Weights = [u64; 3];

/// The six rearrangements of `w`, identity first, in the order
/// `123, 132, 213, 231, 312, 321`.
pub fn weight_permutations(w: Weights) -> [Weights; 6] {
    let [a, b, c] = w;
    [[a, b, c], [a, c, b], [b, a, c], [b, c, a], [c, a, b], [c, b, a]]
}
