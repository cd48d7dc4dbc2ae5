use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{rational_pow, Rational, UniPoly};

/// One of the three symbolic variables an identity side may depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Y1,
    Y2,
    Y3,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Y1, Var::Y2, Var::Y3];

    pub fn name(self) -> &'static str {
        match self {
            Var::Y1 => "y1",
            Var::Y2 => "y2",
            Var::Y3 => "y3",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// An exponent vector together with the variables it refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub vars: Vec<Var>,
    pub exponents: Vec<u32>,
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &e)| e > 0)
            .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

/// Sparse polynomial over the rationals in an ordered subset of
/// `{y1, y2, y3}`. Zero coefficients are never stored, so derived equality
/// is equality of polynomials over the same variable set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut out: Vec<Var> = a.iter().chain(b).copied().collect();
    out.sort();
    out.dedup();
    out
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn one() -> Self {
        MultiPoly::constant(Rational::one())
    }

    /// `c * var^exp`
    pub fn monomial(c: Rational, var: Var, exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![exp], c);
        }
        MultiPoly { vars: vec![var], terms }
    }

    pub fn from_univariate(p: &UniPoly, var: Var) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (vec![i as u32], c.clone()))
            .collect();
        MultiPoly { vars: vec![var], terms }
    }

    pub fn variables(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the monomial with the given exponents (in the order of
    /// [`MultiPoly::variables`]).
    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<usize> {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max()
    }

    /// Re-expresses `self` over `vars`, which must contain every variable of `self`.
    pub fn embed(&self, vars: &[Var]) -> MultiPoly {
        let mut target: Vec<Var> = vars.to_vec();
        target.sort();
        target.dedup();
        if target == self.vars {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .iter()
                    .position(|t| t == v)
                    .unwrap_or_else(|| panic!("cannot embed polynomial in {v} into {target:?}"))
            })
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; target.len()];
                for (&pos, &x) in positions.iter().zip(e) {
                    out[pos] = x;
                }
                (out, c.clone())
            })
            .collect();
        MultiPoly { vars: target, terms }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let vars = union_vars(&self.vars, &other.vars);
        if vars != self.vars {
            *self = self.embed(&vars);
        }
        let other = other.embed(&vars);
        for (e, a) in other.terms {
            let add = a * c;
            match self.terms.get_mut(&e) {
                Some(v) => {
                    *v += add;
                    if v.is_zero() {
                        self.terms.remove(&e);
                    }
                }
                None => {
                    self.terms.insert(e, add);
                }
            }
        }
    }

    /// Evaluates at a point; every variable of `self` must be assigned.
    pub fn eval(&self, point: &[(Var, Rational)]) -> Rational {
        let values: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(p, _)| p == v)
                    .map(|(_, r)| r)
                    .unwrap_or_else(|| panic!("no value supplied for {v}"))
            })
            .collect();
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let term = e.iter().zip(&values).fold(c.clone(), |t, (&x, val)| {
                t * rational_pow(val, i64::from(x)).expect("non-negative exponent")
            });
            acc + term
        })
    }

    /// Substitutes `v -> scale_v * target` for every variable, producing a
    /// polynomial in `target` alone.
    pub fn collapse(&self, target: Var, scales: &[(Var, Rational)]) -> MultiPoly {
        let factors: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                scales
                    .iter()
                    .find(|(p, _)| p == v)
                    .map(|(_, r)| r)
                    .unwrap_or_else(|| panic!("no scale supplied for {v}"))
            })
            .collect();
        let mut out = MultiPoly {
            vars: vec![target],
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for (&x, s) in e.iter().zip(&factors) {
                coeff *= rational_pow(s, i64::from(x)).expect("non-negative exponent");
            }
            let degree: u32 = e.iter().sum();
            out.add_scaled(&MultiPoly::monomial(Rational::one(), target, degree), &coeff);
        }
        out
    }

    /// First monomial (in exponent order over the union of variables) whose
    /// coefficients differ, with the coefficients of `self` and `other`.
    pub fn first_difference(&self, other: &MultiPoly) -> Option<(Monomial, Rational, Rational)> {
        let vars = union_vars(&self.vars, &other.vars);
        let a = self.embed(&vars);
        let b = other.embed(&vars);
        let mut keys: Vec<&Vec<u32>> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|e| {
            let ca = a.coefficient(e);
            let cb = b.coefficient(e);
            (ca != cb).then(|| {
                (
                    Monomial {
                        vars: vars.clone(),
                        exponents: e.clone(),
                    },
                    ca,
                    cb,
                )
            })
        })
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let vars = union_vars(&self.vars, &rhs.vars);
        let a = self.embed(&vars);
        let b = rhs.embed(&vars);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MultiPoly { vars, terms }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m = Monomial {
                    vars: self.vars.clone(),
                    exponents: e.clone(),
                };
                if e.iter().all(|&x| x == 0) {
                    format!("{c}")
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
