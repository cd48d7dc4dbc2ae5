//! Bernoulli numbers (with `B_1 = -1/2`), Bernoulli polynomials and power
//! sums `S_k(n) = 0^k + 1^k + ... + n^k`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::exact::{binomial, Rational, UniPoly};

/// Grow-on-demand table of `B_i` and `B_i(x)`.
#[derive(Debug, Clone)]
pub struct BernoulliCache {
    numbers: Vec<Rational>,
    polys: Vec<UniPoly>,
}

impl Default for BernoulliCache {
    fn default() -> Self {
        BernoulliCache::new()
    }
}

impl BernoulliCache {
    pub fn new() -> Self {
        BernoulliCache {
            numbers: vec![Rational::one()],
            polys: vec![UniPoly::constant(Rational::one())],
        }
    }

    /// Cache already filled through index `n`.
    pub fn up_to(n: usize) -> Self {
        let mut cache = BernoulliCache::new();
        cache.ensure_polynomials(n);
        cache
    }

    fn ensure_numbers(&mut self, n: usize) {
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        while self.numbers.len() <= n {
            let m = self.numbers.len();
            let s = self.numbers.iter().enumerate().fold(Rational::zero(), |acc, (k, b)| {
                acc + Rational::from_integer(binomial(m + 1, k)) * b
            });
            let b_m = -s / Rational::from_integer(BigInt::from(m + 1));
            self.numbers.push(b_m);
        }
    }

    fn ensure_polynomials(&mut self, n: usize) {
        self.ensure_numbers(n);
        while self.polys.len() <= n {
            let m = self.polys.len();
            // B_m(x) = sum_k C(m, k) B_k x^(m-k)
            let coeffs = (0..=m)
                .map(|i| Rational::from_integer(binomial(m, m - i)) * &self.numbers[m - i])
                .collect();
            self.polys.push(UniPoly::new(coeffs));
        }
    }

    pub fn number(&mut self, n: usize) -> &Rational {
        self.ensure_numbers(n);
        &self.numbers[n]
    }

    pub fn polynomial(&mut self, n: usize) -> &UniPoly {
        self.ensure_polynomials(n);
        &self.polys[n]
    }

    /// Number of polynomials currently stored.
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

pub fn bernoulli_number(n: usize) -> Rational {
    BernoulliCache::new().number(n).clone()
}

pub fn bernoulli_polynomial(n: usize) -> UniPoly {
    BernoulliCache::new().polynomial(n).clone()
}

/// `S_k(n)` by direct summation, with `0^0 = 1`.
pub fn power_sum(k: u32, n: u64) -> Rational {
    let total = (0..=n).fold(BigInt::zero(), |acc, i| acc + Pow::pow(BigInt::from(i), k));
    Rational::from_integer(total)
}

/// `S_k(n)` via `(B_{k+1}(n+1) - B_{k+1}) / (k+1)`.
pub fn power_sum_oracle(k: u32, n: u64) -> Rational {
    let mut cache = BernoulliCache::new();
    let idx = k as usize + 1;
    let at = Rational::from_integer(BigInt::from(n) + 1);
    let b_at = cache.polynomial(idx).eval(&at);
    (b_at - cache.number(idx)) / Rational::from_integer(BigInt::from(idx))
}

/// Lazily filled `S_k(n)` values.
#[derive(Debug, Clone, Default)]
pub struct PowerSumTable {
    values: BTreeMap<(u32, u64), Rational>,
}

impl PowerSumTable {
    pub fn new() -> Self {
        PowerSumTable::default()
    }

    pub fn get(&mut self, k: u32, n: u64) -> &Rational {
        self.values.entry((k, n)).or_insert_with(|| power_sum(k, n))
    }

    /// `S_k(w - 1)`, the form in which power sums appear next to a weight `w`.
    pub fn for_weight(&mut self, k: u32, w: u64) -> &Rational {
        assert!(w >= 1, "weights are positive");
        self.get(k, w - 1)
    }
}
