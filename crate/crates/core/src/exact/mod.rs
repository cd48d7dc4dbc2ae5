//! Exact arithmetic: rationals, binomial and multinomial coefficients, and
//! the univariate / multivariate polynomial types used by every other module.

mod multivariate;
mod univariate;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use multivariate::{Monomial, MultiPoly, Var};
pub use univariate::UniPoly;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Size of the shared factorial table.
pub const DEFAULT_FACTORIAL_MAX: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero raised to negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("exponent {0} out of range")]
    ExponentOutOfRange(i64),
    #[error("multinomial indices {k}+{l}+{m} do not sum to {n}")]
    MultinomialMismatch { n: usize, k: usize, l: usize, m: usize },
}

/// Shorthand for the integer `n` as a [`Rational`].
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num/den`; panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
        Some((p, q)) => {
            let p = p.trim().parse::<BigInt>().ok()?;
            let q = q.trim().parse::<BigInt>().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
    }
}

/// `base^exp` for any signed exponent.
pub fn rational_pow(base: &Rational, exp: i64) -> Result<Rational, ExactError> {
    if exp == 0 {
        return Ok(Rational::one());
    }
    if exp < 0 && base.is_zero() {
        return Err(ExactError::ZeroToNegativePower(exp));
    }
    let e = i32::try_from(exp).map_err(|_| ExactError::ExponentOutOfRange(exp))?;
    Ok(base.pow(e))
}

/// Memoized `0!, 1!, ..., n_max!`. Larger arguments are computed on demand
/// without being stored.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigInt>,
}

impl FactorialTable {
    pub fn new(n_max: usize) -> Self {
        let mut table = Vec::with_capacity(n_max + 1);
        table.push(BigInt::one());
        for i in 1..=n_max {
            let next = &table[i - 1] * BigInt::from(i);
            table.push(next);
        }
        FactorialTable { table }
    }

    pub fn n_max(&self) -> usize {
        self.table.len() - 1
    }

    pub fn factorial(&self, n: usize) -> BigInt {
        match self.table.get(n) {
            Some(v) => v.clone(),
            None => {
                let mut acc = self.table.last().cloned().unwrap_or_else(BigInt::one);
                for i in self.table.len()..=n {
                    acc *= BigInt::from(i);
                }
                acc
            }
        }
    }

    pub fn binomial(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            return BigInt::zero();
        }
        self.factorial(n) / (self.factorial(k) * self.factorial(n - k))
    }

    pub fn multinomial(&self, n: usize, k: usize, l: usize, m: usize) -> Result<BigInt, ExactError> {
        if k + l + m != n {
            return Err(ExactError::MultinomialMismatch { n, k, l, m });
        }
        Ok(self.factorial(n) / (self.factorial(k) * self.factorial(l) * self.factorial(m)))
    }
}

fn shared_factorials() -> &'static FactorialTable {
    static TABLE: OnceLock<FactorialTable> = OnceLock::new();
    TABLE.get_or_init(|| FactorialTable::new(DEFAULT_FACTORIAL_MAX))
}

pub fn factorial(n: usize) -> BigInt {
    shared_factorials().factorial(n)
}

/// `n choose k`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    shared_factorials().binomial(n, k)
}

/// `n! / (k! l! m!)`; requires `k + l + m == n`.
pub fn multinomial(n: usize, k: usize, l: usize, m: usize) -> Result<BigInt, ExactError> {
    shared_factorials().multinomial(n, k, l, m)
}

/// Expands `p(scale * var + shift)` as a polynomial in the single variable `var`.
pub fn substitute_affine(p: &UniPoly, scale: &Rational, shift: &Rational, var: Var) -> MultiPoly {
    MultiPoly::from_univariate(&p.compose_affine(scale, shift), var)
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

#[cfg(test)]
pub(crate) fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
pub(crate) fn is_nonnegative(r: &Rational) -> bool {
    *r >= Rational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pow_examples() {
        assert_eq!(rational_pow(&int(2), -1).unwrap(), rat(1, 2));
        assert_eq!(rational_pow(&rat(3, 2), 2).unwrap(), rat(9, 4));
        assert_eq!(rational_pow(&int(5), 0).unwrap(), int(1));
        assert_eq!(rational_pow(&int(0), 0).unwrap(), int(1));
        assert_eq!(rational_pow(&rat(-2, 3), -3).unwrap(), rat(-27, 8));
    }

    #[test]
    fn zero_to_negative_power_is_domain_error() {
        assert_eq!(rational_pow(&int(0), -2), Err(ExactError::ZeroToNegativePower(-2)));
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        for n in 0..10 {
            assert_eq!(binomial(n, 0), BigInt::one());
        }
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial(3, 1, 1, 1).unwrap(), BigInt::from(6));
        assert_eq!(multinomial(5, 5, 0, 0).unwrap(), BigInt::one());
        assert_eq!(multinomial(4, 2, 1, 1).unwrap(), BigInt::from(12));
        assert!(matches!(
            multinomial(4, 2, 2, 1),
            Err(ExactError::MultinomialMismatch { .. })
        ));
    }

    #[test]
    fn factorial_beyond_table() {
        let small = FactorialTable::new(3);
        let big = FactorialTable::new(30);
        assert_eq!(small.n_max(), 3);
        for n in 0..=30 {
            assert_eq!(small.factorial(n), big.factorial(n));
        }
        assert_eq!(small.binomial(20, 7), BigInt::from(77520));
    }

    #[test]
    fn multinomial_factors_through_binomials() {
        for n in 0..=30usize {
            for k in 0..=n {
                for l in 0..=n - k {
                    let m = n - k - l;
                    assert_eq!(multinomial(n, k, l, m).unwrap(), binomial(n, k) * binomial(n - k, l));
                }
            }
        }
    }

    #[test]
    fn canonical_form_on_construction() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        let z = rat(0, -7);
        assert_eq!(z.numer(), &BigInt::zero());
        assert_eq!(z.denom(), &BigInt::one());
        assert_eq!(fmt_rational(&rat(-691, 2730)), "-691/2730");
        assert_eq!(fmt_rational(&int(14)), "14");
    }

    #[test]
    fn parse_roundtrip_examples() {
        assert_eq!(parse_rational("-1/3"), Some(rat(-1, 3)));
        assert_eq!(parse_rational("4/2"), Some(int(2)));
        assert_eq!(parse_rational("x"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn substitute_affine_examples() {
        let x2 = UniPoly::monomial(int(1), 2);
        let p = substitute_affine(&x2, &int(2), &int(0), Var::Y1);
        assert_eq!(p, MultiPoly::monomial(int(4), Var::Y1, 2));

        let shifted = UniPoly::new(vec![rat(-1, 2), int(1)]);
        let p = substitute_affine(&shifted, &int(1), &rat(1, 2), Var::Y1);
        assert_eq!(p, MultiPoly::monomial(int(1), Var::Y1, 1));

        let one = UniPoly::constant(int(1));
        let p = substitute_affine(&one, &rat(7, 3), &rat(-5, 2), Var::Y2);
        assert_eq!(p, MultiPoly::constant(int(1)).embed(&[Var::Y2]));
    }

    fn small_rat() -> impl Strategy<Value = Rational> {
        (-50i64..50, 1i64..20).prop_map(|(p, q)| rat(p, q))
    }

    proptest! {
        #[test]
        fn add_then_sub_is_identity(a in small_rat(), b in small_rat()) {
            let c = &a + &b - &b;
            prop_assert_eq!(c.numer(), a.numer());
            prop_assert_eq!(c.denom(), a.denom());
        }

        #[test]
        fn parse_inverts_display(a in small_rat()) {
            prop_assert_eq!(parse_rational(&fmt_rational(&a)), Some(a));
        }

        #[test]
        fn identity_substitution_keeps_coefficients(
            coeffs in proptest::collection::vec(small_rat(), 0..8)
        ) {
            let p = UniPoly::new(coeffs);
            let q = substitute_affine(&p, &int(1), &int(0), Var::Y3);
            for (i, c) in p.coeffs().iter().enumerate() {
                prop_assert_eq!(&q.coefficient(&[i as u32]), c);
            }
            prop_assert_eq!(q.total_degree(), p.degree());
        }

        #[test]
        fn affine_substitution_agrees_with_evaluation(
            coeffs in proptest::collection::vec(small_rat(), 0..7),
            scale in small_rat(),
            shift in small_rat(),
            at in small_rat(),
        ) {
            let p = UniPoly::new(coeffs);
            let q = substitute_affine(&p, &scale, &shift, Var::Y1);
            let direct = p.eval(&(&scale * &at + &shift));
            prop_assert_eq!(q.eval(&[(Var::Y1, at)]), direct);
        }
    }
}
