//! Truncated power series in `t` over the rationals, the symmetric quotients
//! of exponential generating functions, and the coefficient-level checks
//! that tie those quotients to finite Bernoulli / power-sum formulas.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::bernoulli::{BernoulliCache, PowerSumTable};
use crate::exact::{binomial, factorial, int, multinomial, rational_pow, Rational};
use crate::{weight_permutations, Weights};

/// Default truncation order used by the checks.
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("a series needs at least one coefficient")]
    Empty,
    #[error("invalid quotient spec: {0}")]
    InvalidSpec(String),
}

/// `sum_{i=0}^{N} coeffs[i] t^i`, with `N` fixed for the lifetime of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    pub fn new(coeffs: Vec<Rational>) -> Result<Self, SeriesError> {
        if coeffs.is_empty() {
            return Err(SeriesError::Empty);
        }
        Ok(TruncSeries { coeffs })
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> Rational) -> Self {
        TruncSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = c;
        TruncSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        TruncSeries::constant(Rational::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coefficient(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    fn same_order(&self, rhs: &TruncSeries) -> Result<(), SeriesError> {
        if self.order() == rhs.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch(self.order(), rhs.order()))
        }
    }

    pub fn add(&self, rhs: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.same_order(rhs)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, rhs: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.same_order(rhs)?;
        Ok(TruncSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, rhs: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        self.same_order(rhs)?;
        let n = self.order();
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, j| {
                    if self.coeffs[j].is_zero() {
                        acc
                    } else {
                        acc + &self.coeffs[j] * &rhs.coeffs[k - j]
                    }
                })
            })
            .collect();
        Ok(TruncSeries { coeffs })
    }

    pub fn div(&self, rhs: &TruncSeries) -> Result<TruncSeries, SeriesError> {
        series_div(self, rhs)
    }

    pub fn pow(&self, e: u32) -> Result<TruncSeries, SeriesError> {
        (0..e).try_fold(TruncSeries::one(self.order()), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: &Rational) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// The series of `f(a t)`: coefficient `k` is multiplied by `a^k`.
    pub fn rescale_variable(&self, a: &Rational) -> TruncSeries {
        let mut p = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let v = c * &p;
                p *= a;
                v
            })
            .collect();
        TruncSeries { coeffs }
    }

    /// `k! * coeffs[k]`, i.e. the coefficient against `t^k / k!`.
    pub fn egf_coefficient(&self, k: usize) -> Rational {
        &self.coeffs[k] * Rational::from_integer(factorial(k))
    }

    /// First index where the two series differ.
    pub fn first_difference(&self, rhs: &TruncSeries) -> Option<usize> {
        self.coeffs.iter().zip(&rhs.coeffs).position(|(a, b)| a != b)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.order() + 1)
    }
}

/// `e^{a t}`
pub fn exp_linear(a: &Rational, order: usize) -> TruncSeries {
    let mut term = Rational::one();
    TruncSeries::from_fn(order, |n| {
        if n > 0 {
            term = &term * a / int(n as i64);
        }
        term.clone()
    })
}

/// `(e^{a t} - 1) / t`, coefficient `n` equal to `a^{n+1} / (n+1)!`.
pub fn expm1_over_t(a: &Rational, order: usize) -> TruncSeries {
    let mut term = Rational::one();
    TruncSeries::from_fn(order, |n| {
        term = &term * a / int(n as i64 + 1);
        term.clone()
    })
}

/// Quotient `q` with `q * den = num` through the common order.
pub fn series_div(num: &TruncSeries, den: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    num.same_order(den)?;
    let d0 = &den.coeffs[0];
    if d0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let mut q: Vec<Rational> = Vec::with_capacity(num.coeffs.len());
    for n in 0..num.coeffs.len() {
        let mut acc = num.coeffs[n].clone();
        for j in 1..=n {
            if !den.coeffs[j].is_zero() {
                acc -= &den.coeffs[j] * &q[n - j];
            }
        }
        q.push(acc / d0);
    }
    Ok(TruncSeries { coeffs: q })
}

/// `t / (e^t - 1)`
pub fn gen_bernoulli(order: usize) -> TruncSeries {
    series_div(&TruncSeries::one(order), &expm1_over_t(&Rational::one(), order))
        .expect("expm1_over_t has unit constant term")
}

/// `sum_{i=0}^{w-1} e^{i t}`
pub fn gen_power_sum(w: u64, order: usize) -> TruncSeries {
    (0..w).fold(TruncSeries::constant(Rational::zero(), order), |acc, i| {
        acc.add(&exp_linear(&int(i as i64), order)).expect("equal orders")
    })
}

/// `a t / (e^{a t} - 1) = sum_n B_n a^n t^n / n!`, built from Bernoulli numbers
/// rather than by division.
pub fn bernoulli_exp(a: &Rational, order: usize, cache: &mut BernoulliCache) -> TruncSeries {
    TruncSeries::from_fn(order, |n| {
        cache.number(n) * rational_pow(a, n as i64).expect("non-negative exponent")
            / Rational::from_integer(factorial(n))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LambdaFamily {
    /// Exponents `w2w3, w1w3, w1w2` in the numerator.
    L23,
    /// Exponents `w1, w2, w3` in the numerator, shift by `w1w2w3`.
    L13,
    /// Exponents `w1, w2, w3`; index 0 carries a single `y`, index 1 is the
    /// ratio against the `L23` exponents.
    L12,
}

impl LambdaFamily {
    pub fn indices(self) -> std::ops::RangeInclusive<u8> {
        match self {
            LambdaFamily::L23 | LambdaFamily::L13 => 0..=3,
            LambdaFamily::L12 => 0..=1,
        }
    }

    /// Number of `y` values the family takes at index `i`.
    pub fn ys_len(self, i: u8) -> usize {
        match self {
            LambdaFamily::L23 | LambdaFamily::L13 => 3 - i as usize,
            LambdaFamily::L12 => usize::from(i == 0),
        }
    }
}

impl fmt::Display for LambdaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaFamily::L23 => "L23",
            LambdaFamily::L13 => "L13",
            LambdaFamily::L12 => "L12",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSpec {
    pub family: LambdaFamily,
    pub index: u8,
    pub weights: Weights,
    pub ys: Vec<Rational>,
}

impl LambdaSpec {
    pub fn new(family: LambdaFamily, index: u8, weights: Weights, ys: Vec<Rational>) -> Result<Self, SeriesError> {
        let spec = LambdaSpec {
            family,
            index,
            weights,
            ys,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SeriesError> {
        if !self.family.indices().contains(&self.index) {
            return Err(SeriesError::InvalidSpec(format!(
                "{}^{} has no such index",
                self.family, self.index
            )));
        }
        if self.weights.contains(&0) {
            return Err(SeriesError::InvalidSpec(format!(
                "weights {:?} must be positive",
                self.weights
            )));
        }
        let want = self.family.ys_len(self.index);
        if self.ys.len() != want {
            return Err(SeriesError::InvalidSpec(format!(
                "{}^{} takes {want} y values, got {}",
                self.family,
                self.index,
                self.ys.len()
            )));
        }
        Ok(())
    }

    pub fn with_weights(&self, weights: Weights) -> LambdaSpec {
        LambdaSpec {
            weights,
            ..self.clone()
        }
    }
}

fn w_rat(w: u64) -> Rational {
    Rational::from_integer(BigInt::from(w))
}

/// Closed form of the chosen quotient. Every factor `e^{a t} - 1` is written
/// as `t * expm1_over_t(a)` and the powers of `t` cancel before dividing, so
/// each division is by a series with nonzero constant term.
pub fn quotient_lambda(spec: &LambdaSpec, order: usize) -> Result<TruncSeries, SeriesError> {
    spec.validate()?;
    let [w1, w2, w3] = spec.weights;
    let prod = w_rat(w1 * w2 * w3);
    let e = |a: u64| expm1_over_t(&w_rat(a), order);
    let y_sum: Rational = spec.ys.iter().sum();
    let i = i64::from(spec.index);

    let (scalar, numerator, denominator) = match spec.family {
        LambdaFamily::L23 => {
            let num = exp_linear(&(&prod * &y_sum), order).mul(&e(w1 * w2 * w3).pow(spec.index as u32)?)?;
            let den = e(w2 * w3).mul(&e(w1 * w3))?.mul(&e(w1 * w2))?;
            (rational_pow(&prod, 2 - i).expect("positive weights"), num, den)
        }
        LambdaFamily::L13 => {
            let num = exp_linear(&(&prod * &y_sum), order).mul(&e(w1 * w2 * w3).pow(spec.index as u32)?)?;
            let den = e(w1).mul(&e(w2))?.mul(&e(w3))?;
            (rational_pow(&prod, 1 - i).expect("positive weights"), num, den)
        }
        LambdaFamily::L12 if spec.index == 0 => {
            let sigma2 = w_rat(w2 * w3 + w1 * w3 + w1 * w2);
            let num = exp_linear(&(sigma2 * &y_sum), order);
            let den = e(w1).mul(&e(w2))?.mul(&e(w3))?;
            (prod.clone(), num, den)
        }
        LambdaFamily::L12 => {
            let num = e(w2 * w3).mul(&e(w1 * w3))?.mul(&e(w1 * w2))?;
            let den = e(w1).mul(&e(w2))?.mul(&e(w3))?;
            (prod.recip(), num, den)
        }
    };
    Ok(series_div(&numerator, &denominator)?.scale(&scalar))
}

/// The same quotient assembled as a product of `a t / (e^{a t} - 1)` factors
/// (from Bernoulli numbers) and exponentials: the integral representation
/// rather than its closed form.
pub fn quotient_lambda_integral_form(spec: &LambdaSpec, order: usize) -> Result<TruncSeries, SeriesError> {
    spec.validate()?;
    let [w1, w2, w3] = spec.weights;
    let prod = w1 * w2 * w3;
    let mut cache = BernoulliCache::new();
    let mut v = |a: u64| bernoulli_exp(&w_rat(a), order, &mut cache);
    let y_sum: Rational = spec.ys.iter().sum();
    let shift = exp_linear(&(w_rat(prod) * &y_sum), order);
    let series = match (spec.family, spec.index) {
        (LambdaFamily::L23, i) => {
            let num = v(w2 * w3).mul(&v(w1 * w3))?.mul(&v(w1 * w2))?.mul(&shift)?;
            num.div(&v(prod).pow(i as u32)?)?
        }
        (LambdaFamily::L13, i) => {
            let num = v(w1).mul(&v(w2))?.mul(&v(w3))?.mul(&shift)?;
            num.div(&v(prod).pow(i as u32)?)?
        }
        (LambdaFamily::L12, 0) => {
            let sigma2 = w_rat(w2 * w3 + w1 * w3 + w1 * w2);
            v(w1)
                .mul(&v(w2))?
                .mul(&v(w3))?
                .mul(&exp_linear(&(sigma2 * &y_sum), order))?
        }
        (LambdaFamily::L12, _) => {
            let num = v(w1).mul(&v(w2))?.mul(&v(w3))?;
            num.div(&v(w2 * w3).mul(&v(w1 * w3))?.mul(&v(w1 * w2))?)?
        }
    };
    Ok(series)
}

/// The finite-sum formulas for `n!` times the `t^n` coefficient of the
/// quotients, one per way of splitting the quotient into generating
/// functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerivationLabel {
    /// `L23^0`: triple sum of `B_k(w1y1) B_l(w2y2) B_m(w3y3)`.
    BernTriple,
    /// `L23^1`: triple sum of `B_k(w1y1) B_l(w2y2) S_m(w3-1)`.
    BernBernPowerSum,
    /// `L23^1`: single sum with `B_{n-k}` averaged over shifts `w2 i / w3`.
    BernShiftedBern,
    /// `L23^2`: triple sum of `B_k(w1y1) S_l(w2-1) S_m(w3-1)`.
    BernPowerSumPowerSum,
    /// `L23^2`: single sum with `B_k` averaged over shifts `w1 i / w2`.
    ShiftedBernPowerSum,
    /// `L23^2`: `B_n` averaged over the double shift `w1 i / w2 + w1 j / w3`.
    DoubleShiftedBern,
    /// `L23^3`: triple sum of power sums.
    PowerSumTriple,
    /// `L12^0`: triple sum of `B_k(w2y) B_l(w3y) B_m(w1y)`.
    CyclicBernTriple,
    /// `L12^1`: triple sum of cyclically arranged power sums.
    CyclicPowerSumTriple,
}

impl DerivationLabel {
    pub const ALL: [DerivationLabel; 9] = [
        DerivationLabel::BernTriple,
        DerivationLabel::BernBernPowerSum,
        DerivationLabel::BernShiftedBern,
        DerivationLabel::BernPowerSumPowerSum,
        DerivationLabel::ShiftedBernPowerSum,
        DerivationLabel::DoubleShiftedBern,
        DerivationLabel::PowerSumTriple,
        DerivationLabel::CyclicBernTriple,
        DerivationLabel::CyclicPowerSumTriple,
    ];

    /// The quotient whose coefficients this formula produces.
    pub fn quotient(self) -> (LambdaFamily, u8) {
        use DerivationLabel::*;
        match self {
            BernTriple => (LambdaFamily::L23, 0),
            BernBernPowerSum | BernShiftedBern => (LambdaFamily::L23, 1),
            BernPowerSumPowerSum | ShiftedBernPowerSum | DoubleShiftedBern => (LambdaFamily::L23, 2),
            PowerSumTriple => (LambdaFamily::L23, 3),
            CyclicBernTriple => (LambdaFamily::L12, 0),
            CyclicPowerSumTriple => (LambdaFamily::L12, 1),
        }
    }

    pub fn name(self) -> &'static str {
        use DerivationLabel::*;
        match self {
            BernTriple => "bern-triple",
            BernBernPowerSum => "bern-bern-powersum",
            BernShiftedBern => "bern-shifted-bern",
            BernPowerSumPowerSum => "bern-powersum-powersum",
            ShiftedBernPowerSum => "shifted-bern-powersum",
            DoubleShiftedBern => "double-shifted-bern",
            PowerSumTriple => "powersum-triple",
            CyclicBernTriple => "cyclic-bern-triple",
            CyclicPowerSumTriple => "cyclic-powersum-triple",
        }
    }

    pub fn ys_len(self) -> usize {
        let (family, i) = self.quotient();
        family.ys_len(i)
    }
}

impl fmt::Display for DerivationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rational-valued evaluation of the finite formulas.
struct FormulaContext {
    bern: BernoulliCache,
    sums: PowerSumTable,
    w: [Rational; 3],
    raw: Weights,
}

impl FormulaContext {
    fn new(weights: Weights) -> Self {
        FormulaContext {
            bern: BernoulliCache::new(),
            sums: PowerSumTable::new(),
            w: weights.map(w_rat),
            raw: weights,
        }
    }

    fn b(&mut self, k: usize, x: &Rational) -> Rational {
        self.bern.polynomial(k).eval(x)
    }

    /// `S_k(w_j - 1)` for weight slot `j`.
    fn s(&mut self, k: usize, j: usize) -> Rational {
        self.sums.for_weight(k as u32, self.raw[j]).clone()
    }

    fn pw(&self, j: usize, e: i64) -> Rational {
        rational_pow(&self.w[j], e).expect("positive weights")
    }

    fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize, Rational)> {
        (0..=n).flat_map(move |k| {
            (0..=n - k).map(move |l| {
                let m = n - k - l;
                (
                    k,
                    l,
                    m,
                    Rational::from_integer(multinomial(n, k, l, m).expect("k+l+m=n")),
                )
            })
        })
    }

    fn eval(&mut self, label: DerivationLabel, n: usize, ys: &[Rational]) -> Rational {
        use DerivationLabel::*;
        let [w1, w2, w3] = self.w.clone();
        let ni = n as i64;
        let mut total = Rational::zero();
        match label {
            BernTriple => {
                let (x1, x2, x3) = (&w1 * &ys[0], &w2 * &ys[1], &w3 * &ys[2]);
                for (k, l, m, c) in Self::triples(n) {
                    let (ki, li, mi) = (k as i64, l as i64, m as i64);
                    total += c
                        * self.b(k, &x1)
                        * self.b(l, &x2)
                        * self.b(m, &x3)
                        * self.pw(0, li + mi)
                        * self.pw(1, ki + mi)
                        * self.pw(2, ki + li);
                }
            }
            BernBernPowerSum => {
                let (x1, x2) = (&w1 * &ys[0], &w2 * &ys[1]);
                for (k, l, m, c) in Self::triples(n) {
                    let (ki, li, mi) = (k as i64, l as i64, m as i64);
                    total += c
                        * self.b(k, &x1)
                        * self.b(l, &x2)
                        * self.s(m, 2)
                        * self.pw(0, li + mi)
                        * self.pw(1, ki + mi)
                        * self.pw(2, ki + li - 1);
                }
            }
            BernShiftedBern => {
                let x1 = &w1 * &ys[0];
                for k in 0..=n {
                    let c = Rational::from_integer(binomial(n, k));
                    let mut inner = Rational::zero();
                    for i in 0..self.raw[2] {
                        let x = &w2 * &ys[1] + &w2 * int(i as i64) / &w3;
                        inner += self.b(n - k, &x);
                    }
                    let ki = k as i64;
                    total += c * self.b(k, &x1) * inner * self.pw(0, ni - ki) * self.pw(1, ki);
                }
                total *= self.pw(2, ni - 1);
            }
            BernPowerSumPowerSum => {
                let x1 = &w1 * &ys[0];
                for (k, l, m, c) in Self::triples(n) {
                    let (ki, li, mi) = (k as i64, l as i64, m as i64);
                    total += c
                        * self.b(k, &x1)
                        * self.s(l, 1)
                        * self.s(m, 2)
                        * self.pw(0, li + mi)
                        * self.pw(1, ki + mi - 1)
                        * self.pw(2, ki + li - 1);
                }
            }
            ShiftedBernPowerSum => {
                for k in 0..=n {
                    let c = Rational::from_integer(binomial(n, k));
                    let mut inner = Rational::zero();
                    for i in 0..self.raw[1] {
                        let x = &w1 * &ys[0] + &w1 * int(i as i64) / &w2;
                        inner += self.b(k, &x);
                    }
                    let ki = k as i64;
                    total += c * inner * self.s(n - k, 2) * self.pw(0, ni - ki) * self.pw(2, ki - 1);
                }
                total *= self.pw(1, ni - 1);
            }
            DoubleShiftedBern => {
                for i in 0..self.raw[1] {
                    for j in 0..self.raw[2] {
                        let x = &w1 * &ys[0] + &w1 * int(i as i64) / &w2 + &w1 * int(j as i64) / &w3;
                        total += self.b(n, &x);
                    }
                }
                total *= rational_pow(&(&w2 * &w3), ni - 1).expect("positive weights");
            }
            PowerSumTriple => {
                for (k, l, m, c) in Self::triples(n) {
                    let (ki, li, mi) = (k as i64, l as i64, m as i64);
                    total += c
                        * self.s(k, 0)
                        * self.s(l, 1)
                        * self.s(m, 2)
                        * self.pw(0, li + mi - 1)
                        * self.pw(1, ki + mi - 1)
                        * self.pw(2, ki + li - 1);
                }
            }
            CyclicBernTriple => {
                let y = &ys[0];
                let (x1, x2, x3) = (&w2 * y, &w3 * y, &w1 * y);
                for (k, l, m, c) in Self::triples(n) {
                    total += c
                        * self.b(k, &x1)
                        * self.b(l, &x2)
                        * self.b(m, &x3)
                        * self.pw(0, k as i64)
                        * self.pw(1, l as i64)
                        * self.pw(2, m as i64);
                }
            }
            CyclicPowerSumTriple => {
                for (k, l, m, c) in Self::triples(n) {
                    total += c
                        * self.s(k, 1)
                        * self.s(l, 2)
                        * self.s(m, 0)
                        * self.pw(0, k as i64 - 1)
                        * self.pw(1, l as i64 - 1)
                        * self.pw(2, m as i64 - 1);
                }
            }
        }
        total
    }
}

/// Evaluates a derivation formula at one `n` (exposed for tests and the CLI).
pub fn derivation_value(label: DerivationLabel, n: usize, weights: Weights, ys: &[Rational]) -> Rational {
    FormulaContext::new(weights).eval(label, n, ys)
}

/// Where two computations first disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesWitness {
    pub order: usize,
    pub left: Rational,
    pub right: Rational,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(SeriesWitness),
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }
}

fn compare(left: &TruncSeries, right: &TruncSeries, detail: impl FnOnce() -> String) -> CheckOutcome {
    match left.first_difference(right) {
        None => CheckOutcome::Pass,
        Some(order) => CheckOutcome::Fail(SeriesWitness {
            order,
            left: left.coefficient(order).clone(),
            right: right.coefficient(order).clone(),
            detail: detail(),
        }),
    }
}

/// Runs the series checks at a fixed order. `tamper` adds 1 to the given
/// coefficient of the left-hand series before comparing; it exists so that
/// the checks can be shown to fail.
#[derive(Clone, Copy, Debug)]
pub struct SeriesChecker {
    pub order: usize,
    pub tamper: Option<usize>,
}

impl SeriesChecker {
    pub fn new(order: usize) -> Self {
        SeriesChecker { order, tamper: None }
    }

    fn tampered(&self, mut s: TruncSeries) -> TruncSeries {
        if let Some(k) = self.tamper {
            if k < s.coeffs.len() {
                s.coeffs[k] += Rational::one();
            }
        }
        s
    }

    pub fn s3_invariance(
        &self,
        family: LambdaFamily,
        index: u8,
        weights: Weights,
        ys: &[Rational],
    ) -> Result<CheckOutcome, SeriesError> {
        let spec = LambdaSpec::new(family, index, weights, ys.to_vec())?;
        let base = self.tampered(quotient_lambda(&spec, self.order)?);
        for perm in weight_permutations(weights).into_iter().skip(1) {
            let other = quotient_lambda(&spec.with_weights(perm), self.order)?;
            let outcome = compare(&base, &other, || {
                format!("{family}^{index} w={weights:?} vs w={perm:?}")
            });
            if !outcome.passed() {
                return Ok(outcome);
            }
        }
        Ok(CheckOutcome::Pass)
    }

    pub fn coefficient_formula(
        &self,
        label: DerivationLabel,
        weights: Weights,
        ys: &[Rational],
    ) -> Result<CheckOutcome, SeriesError> {
        let (family, index) = label.quotient();
        let spec = LambdaSpec::new(family, index, weights, ys.to_vec())?;
        let series = self.tampered(quotient_lambda(&spec, self.order)?);
        let mut ctx = FormulaContext::new(weights);
        for n in 0..=self.order {
            let from_series = series.egf_coefficient(n);
            let from_formula = ctx.eval(label, n, ys);
            if from_series != from_formula {
                return Ok(CheckOutcome::Fail(SeriesWitness {
                    order: n,
                    left: from_series,
                    right: from_formula,
                    detail: format!("{label} w={weights:?}"),
                }));
            }
        }
        Ok(CheckOutcome::Pass)
    }

    /// `L23^i` at weights `(w2w3, w1w3, w1w2)` against `L13^i` at `w` with
    /// `t` replaced by `w1w2w3 t`.
    pub fn lambda13_substitution(
        &self,
        index: u8,
        weights: Weights,
        ys: &[Rational],
    ) -> Result<CheckOutcome, SeriesError> {
        let [w1, w2, w3] = weights;
        let spec23 = LambdaSpec::new(LambdaFamily::L23, index, [w2 * w3, w1 * w3, w1 * w2], ys.to_vec())?;
        let spec13 = LambdaSpec::new(LambdaFamily::L13, index, weights, ys.to_vec())?;
        let left = self.tampered(quotient_lambda(&spec23, self.order)?);
        let right = quotient_lambda(&spec13, self.order)?.rescale_variable(&w_rat(w1 * w2 * w3));
        Ok(compare(&left, &right, || format!("index {index} w={weights:?}")))
    }
}

pub fn s3_invariance_check(
    family: LambdaFamily,
    index: u8,
    weights: Weights,
    ys: &[Rational],
    order: usize,
) -> Result<CheckOutcome, SeriesError> {
    SeriesChecker::new(order).s3_invariance(family, index, weights, ys)
}

pub fn coefficient_formula_check(
    label: DerivationLabel,
    weights: Weights,
    ys: &[Rational],
    n_max: usize,
) -> Result<CheckOutcome, SeriesError> {
    SeriesChecker::new(n_max).coefficient_formula(label, weights, ys)
}

pub fn lambda13_substitution_check(
    index: u8,
    weights: Weights,
    ys: &[Rational],
    order: usize,
) -> Result<CheckOutcome, SeriesError> {
    SeriesChecker::new(order).lambda13_substitution(index, weights, ys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernoulli::{bernoulli_number, power_sum};
    use crate::exact::rat;

    fn coeffs(s: &TruncSeries) -> Vec<Rational> {
        s.coeffs().to_vec()
    }

    #[test]
    fn exp_linear_examples() {
        assert_eq!(
            coeffs(&exp_linear(&int(0), 5)),
            vec![int(1), int(0), int(0), int(0), int(0), int(0)]
        );
        assert_eq!(coeffs(&exp_linear(&int(1), 2)), vec![int(1), int(1), rat(1, 2)]);
        assert_eq!(coeffs(&exp_linear(&int(2), 2)), vec![int(1), int(2), int(2)]);
    }

    #[test]
    fn expm1_over_t_examples() {
        assert_eq!(coeffs(&expm1_over_t(&int(1), 2)), vec![int(1), rat(1, 2), rat(1, 6)]);
        assert_eq!(coeffs(&expm1_over_t(&int(0), 2)), vec![int(0), int(0), int(0)]);
        assert_eq!(coeffs(&expm1_over_t(&int(2), 1)), vec![int(2), int(2)]);
    }

    #[test]
    fn series_div_examples() {
        let den = TruncSeries::new(vec![int(1), int(-1), int(0), int(0)]).unwrap();
        let q = series_div(&TruncSeries::one(3), &den).unwrap();
        assert_eq!(coeffs(&q), vec![int(1); 4]);
        assert_eq!(series_div(&den, &den).unwrap(), TruncSeries::one(3));
    }

    #[test]
    fn series_div_rejects_zero_constant_term() {
        let den = TruncSeries::new(vec![int(0), int(1)]).unwrap();
        assert_eq!(
            series_div(&TruncSeries::one(1), &den),
            Err(SeriesError::ZeroConstantTerm)
        );
    }

    #[test]
    fn orders_must_match() {
        let a = TruncSeries::one(2);
        let b = TruncSeries::one(3);
        assert_eq!(a.mul(&b), Err(SeriesError::OrderMismatch(2, 3)));
        assert_eq!(a.add(&b), Err(SeriesError::OrderMismatch(2, 3)));
        assert_eq!(TruncSeries::new(vec![]), Err(SeriesError::Empty));
    }

    #[test]
    fn gen_bernoulli_examples() {
        assert_eq!(coeffs(&gen_bernoulli(0)), vec![int(1)]);
        let g = gen_bernoulli(12);
        assert_eq!(g.coefficient(1), &rat(-1, 2));
        assert_eq!(g.coefficient(2), &rat(1, 12));
        assert_eq!(g.egf_coefficient(12), rat(-691, 2730));
    }

    #[test]
    fn gen_bernoulli_inverts_expm1() {
        for n in 0..=32 {
            let p = gen_bernoulli(n).mul(&expm1_over_t(&int(1), n)).unwrap();
            assert_eq!(p, TruncSeries::one(n));
        }
    }

    #[test]
    fn gen_bernoulli_matches_recurrence() {
        let g = gen_bernoulli(24);
        for n in 0..=24 {
            assert_eq!(g.egf_coefficient(n), bernoulli_number(n), "B_{n}");
        }
    }

    #[test]
    fn gen_power_sum_examples() {
        assert_eq!(coeffs(&gen_power_sum(1, 3)), vec![int(1), int(0), int(0), int(0)]);
        assert_eq!(coeffs(&gen_power_sum(2, 2)), vec![int(2), int(1), rat(1, 2)]);
    }

    #[test]
    fn power_sum_series_three_ways() {
        for w in 1..=6u64 {
            for order in [0usize, 5, 20] {
                let direct = gen_power_sum(w, order);
                let quotient = series_div(&expm1_over_t(&int(w as i64), order), &expm1_over_t(&int(1), order)).unwrap();
                assert_eq!(direct, quotient);
                for k in 0..=order {
                    assert_eq!(direct.egf_coefficient(k), power_sum(k as u32, w - 1));
                }
            }
        }
    }

    #[test]
    fn rescale_variable_scales_coefficients() {
        let s = exp_linear(&int(1), 3).rescale_variable(&int(2));
        assert_eq!(s, exp_linear(&int(2), 3));
    }

    #[test]
    fn lambda_spec_validation() {
        assert!(LambdaSpec::new(LambdaFamily::L23, 4, [1, 1, 1], vec![]).is_err());
        assert!(LambdaSpec::new(LambdaFamily::L12, 2, [1, 1, 1], vec![]).is_err());
        assert!(LambdaSpec::new(LambdaFamily::L23, 1, [1, 0, 1], vec![int(0), int(0)]).is_err());
        assert!(LambdaSpec::new(LambdaFamily::L23, 1, [1, 1, 1], vec![int(0)]).is_err());
        assert!(LambdaSpec::new(LambdaFamily::L12, 0, [1, 2, 3], vec![rat(1, 2)]).is_ok());
        let bad = LambdaSpec {
            family: LambdaFamily::L13,
            index: 0,
            weights: [1, 1, 1],
            ys: vec![],
        };
        assert!(matches!(quotient_lambda(&bad, 3), Err(SeriesError::InvalidSpec(_))));
    }

    #[test]
    fn quotient_examples() {
        let l12 = LambdaSpec::new(LambdaFamily::L12, 1, [1, 1, 1], vec![]).unwrap();
        assert_eq!(quotient_lambda(&l12, 6).unwrap(), TruncSeries::one(6));
        let l23 = LambdaSpec::new(LambdaFamily::L23, 3, [1, 1, 1], vec![]).unwrap();
        assert_eq!(quotient_lambda(&l23, 6).unwrap(), TruncSeries::one(6));

        // (t/(e^t-1))^3 = 1 - 3/2 t + t^2 + ...
        let l0 = LambdaSpec::new(LambdaFamily::L23, 0, [1, 1, 1], vec![int(0); 3]).unwrap();
        let q = quotient_lambda(&l0, 2).unwrap();
        let cube = gen_bernoulli(2).pow(3).unwrap();
        assert_eq!(q, cube);
        assert_eq!(coeffs(&q), vec![int(1), rat(-3, 2), int(1)]);
        assert_eq!(
            derivation_value(DerivationLabel::BernTriple, 2, [1, 1, 1], &[int(0), int(0), int(0)]),
            int(2)
        );
    }

    #[test]
    fn closed_forms_match_integral_forms() {
        let ys_for = |family: LambdaFamily, i: u8| vec![rat(1, 2), rat(-1, 3), int(2)][..family.ys_len(i)].to_vec();
        for family in [LambdaFamily::L23, LambdaFamily::L13, LambdaFamily::L12] {
            for i in family.indices() {
                for w in [[1, 1, 1], [2, 3, 5], [1, 2, 2]] {
                    let spec = LambdaSpec::new(family, i, w, ys_for(family, i)).unwrap();
                    assert_eq!(
                        quotient_lambda(&spec, 10).unwrap(),
                        quotient_lambda_integral_form(&spec, 10).unwrap(),
                        "{family}^{i} {w:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn s3_examples() {
        assert!(
            s3_invariance_check(LambdaFamily::L23, 0, [2, 2, 2], &[int(1), int(2), int(3)], 8)
                .unwrap()
                .passed()
        );
        assert!(
            s3_invariance_check(LambdaFamily::L23, 1, [2, 3, 5], &[int(0), int(0)], 12)
                .unwrap()
                .passed()
        );
        assert!(s3_invariance_check(LambdaFamily::L12, 0, [1, 2, 3], &[rat(1, 2)], 10)
            .unwrap()
            .passed());
    }

    #[test]
    fn coefficient_formula_examples() {
        for n in 0..6 {
            let v = derivation_value(DerivationLabel::PowerSumTriple, n, [1, 1, 1], &[]);
            assert_eq!(v, if n == 0 { int(1) } else { int(0) });
        }
        assert!(
            coefficient_formula_check(DerivationLabel::PowerSumTriple, [1, 1, 1], &[], 6)
                .unwrap()
                .passed()
        );
        assert!(
            coefficient_formula_check(DerivationLabel::BernTriple, [1, 1, 1], &vec![int(0); 3], 2)
                .unwrap()
                .passed()
        );
        assert!(
            coefficient_formula_check(DerivationLabel::CyclicPowerSumTriple, [2, 3, 1], &[], 10)
                .unwrap()
                .passed()
        );
    }

    #[test]
    fn lambda13_examples() {
        for i in 0..=3u8 {
            let ys = vec![int(0); 3 - i as usize];
            assert!(lambda13_substitution_check(i, [1, 1, 1], &ys, 6).unwrap().passed());
        }
        assert!(lambda13_substitution_check(0, [2, 3, 5], &vec![int(0); 3], 10)
            .unwrap()
            .passed());
        assert!(lambda13_substitution_check(2, [1, 2, 1], &[rat(1, 2)], 8)
            .unwrap()
            .passed());
    }

    #[test]
    fn tampering_is_detected_at_its_order() {
        let checker = SeriesChecker {
            order: 8,
            tamper: Some(5),
        };
        let outcome = checker.lambda13_substitution(1, [2, 1, 3], &[int(0), int(0)]).unwrap();
        match outcome {
            CheckOutcome::Fail(w) => assert_eq!(w.order, 5),
            CheckOutcome::Pass => panic!("tampered check passed"),
        }
        let outcome = checker
            .coefficient_formula(DerivationLabel::BernTriple, [1, 2, 3], &vec![int(0); 3])
            .unwrap();
        assert!(matches!(outcome, CheckOutcome::Fail(SeriesWitness { order: 5, .. })));
        let outcome = checker
            .s3_invariance(LambdaFamily::L13, 2, [1, 2, 3], &[int(1)])
            .unwrap();
        assert!(matches!(outcome, CheckOutcome::Fail(SeriesWitness { order: 5, .. })));
    }
}
