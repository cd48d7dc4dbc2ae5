//! Registry and exact verifier for the three-weight symmetry identities.
//!
//! Each side of each family is a [`SideTemplate`] expanded into a
//! [`MultiPoly`] in the `y` variables. A family holds at fixed `(n, weights)`
//! exactly when all of its sides are equal as polynomials.

mod registry;
pub mod template;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::bernoulli::{BernoulliCache, PowerSumTable};
use crate::exact::{binomial, int, multinomial, rational_pow, substitute_affine, Monomial, MultiPoly, Rational, Var};
use crate::Weights;

pub use template::{Counter, Factor, Indices, Lin, Shape, SideTemplate, Wt};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdentityError {
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("{corollary} is not a specialization of {theorem}")]
    NotASpecialization { theorem: FamilyId, corollary: FamilyId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    T1,
    T2,
    T5,
    T8,
    T11,
    T14,
    T16,
    T17,
    C3,
    C4,
    C6,
    C7,
    C9,
    C10,
    C12,
    C13,
    C15,
    C18,
    Intro,
}

impl FamilyId {
    pub const ALL: [FamilyId; 19] = [
        FamilyId::T1,
        FamilyId::T2,
        FamilyId::T5,
        FamilyId::T8,
        FamilyId::T11,
        FamilyId::T14,
        FamilyId::T16,
        FamilyId::T17,
        FamilyId::C3,
        FamilyId::C4,
        FamilyId::C6,
        FamilyId::C7,
        FamilyId::C9,
        FamilyId::C10,
        FamilyId::C12,
        FamilyId::C13,
        FamilyId::C15,
        FamilyId::C18,
        FamilyId::Intro,
    ];

    /// The eight families with three free weights.
    pub const THEOREMS: [FamilyId; 8] = [
        FamilyId::T1,
        FamilyId::T2,
        FamilyId::T5,
        FamilyId::T8,
        FamilyId::T11,
        FamilyId::T14,
        FamilyId::T16,
        FamilyId::T17,
    ];

    pub fn as_str(self) -> &'static str {
        use FamilyId::*;
        match self {
            T1 => "T1",
            T2 => "T2",
            T5 => "T5",
            T8 => "T8",
            T11 => "T11",
            T14 => "T14",
            T16 => "T16",
            T17 => "T17",
            C3 => "C3",
            C4 => "C4",
            C6 => "C6",
            C7 => "C7",
            C9 => "C9",
            C10 => "C10",
            C12 => "C12",
            C13 => "C13",
            C15 => "C15",
            C18 => "C18",
            Intro => "INTRO",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyId {
    type Err = IdentityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim();
        FamilyId::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(wanted))
            .ok_or_else(|| IdentityError::UnknownFamily(wanted.to_string()))
    }
}

/// Which third side to use for T14.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T14Variant {
    /// Both shifts of the third side carry `w2/w3`.
    Literal,
    /// The `j` shift carries `w2/w1`, following the first two sides.
    PatternCompleted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityFamily {
    pub id: FamilyId,
    pub sides: Vec<SideTemplate>,
    pub y_vars: Vec<Var>,
    /// Number of leading weights that are free; the rest are fixed to 1.
    pub weight_arity: u8,
}

impl IdentityFamily {
    pub fn get(id: FamilyId) -> IdentityFamily {
        registry::lookup(id)
    }

    /// `weights` with every fixed slot set to 1.
    pub fn normalize(&self, weights: Weights) -> Weights {
        let mut w = weights;
        for slot in w.iter_mut().skip(self.weight_arity as usize) {
            *slot = 1;
        }
        w
    }
}

pub fn family(id: FamilyId) -> IdentityFamily {
    IdentityFamily::get(id)
}

pub fn t14_family(variant: T14Variant) -> IdentityFamily {
    registry::t14(variant)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// The first disagreement found: two side indices, the first monomial whose
/// coefficients differ, and both coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityWitness {
    pub sides: (usize, usize),
    pub monomial: Monomial,
    pub left: Rational,
    pub right: Rational,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub label: String,
    pub n: usize,
    pub weights: Weights,
    pub status: Status,
    pub witness: Option<IdentityWitness>,
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn finish(label: String, n: usize, weights: Weights, witness: Option<IdentityWitness>, start: Instant) -> Self {
        IdentityReport {
            label,
            n,
            weights,
            status: if witness.is_some() { Status::Fail } else { Status::Pass },
            witness,
            elapsed: start.elapsed(),
        }
    }
}

fn witness(
    a: usize,
    b: usize,
    left: &MultiPoly,
    right: &MultiPoly,
    detail: impl FnOnce() -> String,
) -> Option<IdentityWitness> {
    left.first_difference(right).map(|(monomial, l, r)| IdentityWitness {
        sides: (a, b),
        monomial,
        left: l,
        right: r,
        detail: detail(),
    })
}

/// Expands templates. Holds the Bernoulli and power-sum tables and every
/// substituted polynomial `B_k(scale * y + shift)` seen so far.
#[derive(Debug, Default)]
pub struct Evaluator {
    bernoulli: BernoulliCache,
    power_sums: PowerSumTable,
    substituted: HashMap<(usize, Rational, Rational, Var), MultiPoly>,
}

impl Evaluator {
    pub fn new() -> Self {
        Evaluator::default()
    }

    fn substituted(&mut self, k: usize, scale: Rational, shift: Rational, var: Var) -> &MultiPoly {
        let bernoulli = &mut self.bernoulli;
        self.substituted
            .entry((k, scale, shift, var))
            .or_insert_with_key(|(k, scale, shift, var)| {
                substitute_affine(bernoulli.polynomial(*k), scale, shift, *var)
            })
    }

    pub fn side(&mut self, t: &SideTemplate, n: usize, w: &Weights) -> MultiPoly {
        let mut acc = MultiPoly::zero().embed(&t.variables());
        let one = Rational::one();
        for idx in t.indices(n) {
            let term = self.term(t, idx, w);
            acc.add_scaled(&term, &one);
        }
        acc
    }

    /// One summand of the outer sum, inner counter sums included.
    pub fn term(&mut self, t: &SideTemplate, idx: Indices, w: &Weights) -> MultiPoly {
        let mut coeff = match t.shape {
            Shape::Multinomial => {
                Rational::from_integer(multinomial(idx.n, idx.k, idx.l, idx.m).expect("indices sum to n"))
            }
            Shape::Binomial => Rational::from_integer(binomial(idx.n, idx.k)),
            Shape::Single => Rational::one(),
        };
        for (base, exp) in &t.powers {
            let b = int(base.value(w) as i64);
            coeff *= rational_pow(&b, exp.eval(idx)).expect("weights are positive");
        }

        let mut fixed = MultiPoly::one();
        let mut moving = Vec::new();
        for f in &t.factors {
            match f {
                Factor::PowerSum { index, weight } => {
                    let k = u32::try_from(index.eval(idx)).expect("non-negative power-sum index");
                    coeff *= self.power_sums.for_weight(k, weight.value(w));
                }
                Factor::Bernoulli { index, arg } => {
                    let k = usize::try_from(index.eval(idx)).expect("non-negative Bernoulli index");
                    if arg.shifts.is_empty() {
                        let scale = int(arg.scale.value(w) as i64);
                        let p = self.substituted(k, scale, Rational::zero(), arg.var);
                        fixed = &fixed * p;
                    } else {
                        moving.push((k, arg));
                    }
                }
            }
        }
        if coeff.is_zero() {
            return MultiPoly::zero().embed(&t.variables());
        }

        let ranges: Vec<(Counter, u64)> = t.inner.iter().map(|(c, wt)| (*c, wt.value(w))).collect();
        let mut inner = MultiPoly::zero();
        let one = Rational::one();
        for assignment in counter_assignments(&ranges) {
            let mut prod = MultiPoly::one();
            for (k, arg) in &moving {
                let scale = int(arg.scale.value(w) as i64);
                let shift = arg.shifts.iter().fold(Rational::zero(), |acc, s| {
                    let at = assignment.iter().find(|(c, _)| *c == s.counter).map_or(0, |(_, v)| *v);
                    acc + Rational::new((s.num.value(w) * at).into(), s.den.value(w).into())
                });
                let p = self.substituted(*k, scale, shift, arg.var);
                prod = &prod * p;
            }
            inner.add_scaled(&prod, &one);
        }
        (&fixed * &inner).scale(&coeff)
    }
}

fn counter_assignments(ranges: &[(Counter, u64)]) -> Vec<Vec<(Counter, u64)>> {
    let mut out = vec![Vec::new()];
    for &(c, r) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..r).map(move |v| {
                    let mut next = prefix.clone();
                    next.push((c, v));
                    next
                })
            })
            .collect();
    }
    out
}

/// Side `side` of `family` at `n`; fixed weight slots are forced to 1.
pub fn eval_side(family: &IdentityFamily, side: usize, n: usize, weights: Weights) -> MultiPoly {
    let w = family.normalize(weights);
    Evaluator::new().side(&family.sides[side], n, &w).embed(&family.y_vars)
}

/// Summand of side `side` at explicit indices.
pub fn eval_term(family: &IdentityFamily, side: usize, idx: Indices, weights: Weights) -> MultiPoly {
    let w = family.normalize(weights);
    Evaluator::new()
        .term(&family.sides[side], idx, &w)
        .embed(&family.y_vars)
}

fn eval_sides(ev: &mut Evaluator, family: &IdentityFamily, n: usize, w: &Weights) -> Vec<MultiPoly> {
    family
        .sides
        .iter()
        .map(|s| ev.side(s, n, w).embed(&family.y_vars))
        .collect()
}

/// Perturbation added by [`verify_family_with`]: `y^(n+1)` in the first
/// variable, or the constant 1 when the family has no variables.
pub fn corruption(family: &IdentityFamily, n: usize) -> MultiPoly {
    match family.y_vars.first() {
        Some(&v) => MultiPoly::monomial(Rational::one(), v, n as u32 + 1).embed(&family.y_vars),
        None => MultiPoly::one(),
    }
}

pub fn verify_family(family: &IdentityFamily, n: usize, weights: Weights) -> IdentityReport {
    verify_family_with(family, n, weights, None)
}

/// As [`verify_family`], optionally perturbing one side first.
pub fn verify_family_with(
    family: &IdentityFamily,
    n: usize,
    weights: Weights,
    corrupt: Option<usize>,
) -> IdentityReport {
    let start = Instant::now();
    let w = family.normalize(weights);
    let mut sides = eval_sides(&mut Evaluator::new(), family, n, &w);
    if let Some(side) = corrupt.filter(|&s| s < sides.len()) {
        sides[side] = &sides[side] + &corruption(family, n);
    }
    let found = (1..sides.len()).find_map(|j| witness(0, j, &sides[0], &sides[j], || format!("side 0 vs side {j}")));
    IdentityReport::finish(family.id.to_string(), n, w, found, start)
}

/// All eight expressions of the combined single-variable chain, with
/// `w3 = 1`.
pub fn verify_intro_chain(n: usize, weights: (u64, u64)) -> IdentityReport {
    verify_family(&family(FamilyId::Intro), n, [weights.0, weights.1, 1])
}

/// A corollary obtained from a theorem by fixing weights to 1. Corollary side
/// `j` is theorem side `side_map[j]`, multiplied by `w1 w2` when `scaled`.
#[derive(Clone, Copy, Debug)]
pub struct Specialization {
    pub theorem: FamilyId,
    pub corollary: FamilyId,
    pub side_map: &'static [usize],
    pub scaled: bool,
}

pub const SPECIALIZATIONS: [Specialization; 10] = [
    Specialization {
        theorem: FamilyId::T2,
        corollary: FamilyId::C3,
        side_map: &[0, 2, 4, 3, 5, 1],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T2,
        corollary: FamilyId::C4,
        side_map: &[0, 2, 3],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T5,
        corollary: FamilyId::C6,
        side_map: &[5, 4, 0, 1, 2, 3],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T5,
        corollary: FamilyId::C7,
        side_map: &[4, 5, 0],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T8,
        corollary: FamilyId::C9,
        side_map: &[0, 1, 2],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T8,
        corollary: FamilyId::C10,
        side_map: &[0, 1],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T11,
        corollary: FamilyId::C12,
        side_map: &[0, 2, 5, 4, 1, 3],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T11,
        corollary: FamilyId::C13,
        side_map: &[2, 0, 3],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T14,
        corollary: FamilyId::C15,
        side_map: &[2, 1, 0],
        scaled: false,
    },
    Specialization {
        theorem: FamilyId::T17,
        corollary: FamilyId::C18,
        side_map: &[0, 1],
        scaled: true,
    },
];

pub fn specialization(theorem: FamilyId, corollary: FamilyId) -> Option<&'static Specialization> {
    SPECIALIZATIONS
        .iter()
        .find(|s| s.theorem == theorem && s.corollary == corollary)
}

/// Evaluates the theorem at the corollary's weights and compares each mapped
/// side with the corollary side it should reproduce.
pub fn corollary_specialization_check(
    theorem: FamilyId,
    corollary: FamilyId,
    n: usize,
    weights: Weights,
) -> Result<IdentityReport, IdentityError> {
    let start = Instant::now();
    let spec = specialization(theorem, corollary).ok_or(IdentityError::NotASpecialization { theorem, corollary })?;
    let thm = family(theorem);
    let cor = family(corollary);
    let w = cor.normalize(weights);
    let factor = if spec.scaled {
        int((w[0] * w[1]) as i64)
    } else {
        Rational::one()
    };
    let mut ev = Evaluator::new();
    let mut found = None;
    for (j, &t) in spec.side_map.iter().enumerate() {
        let from_theorem = ev.side(&thm.sides[t], n, &w).embed(&cor.y_vars).scale(&factor);
        let stated = ev.side(&cor.sides[j], n, &w).embed(&cor.y_vars);
        found = witness(t, j, &from_theorem, &stated, || {
            format!("{theorem} side {t} vs {corollary} side {j}")
        });
        if found.is_some() {
            break;
        }
    }
    Ok(IdentityReport::finish(
        format!("{theorem}>{corollary}"),
        n,
        w,
        found,
        start,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relabel {
    /// `(k, l, m) -> (k, m, l)`
    SwapLM,
    /// `(k, l, m) -> (l, m, k)`
    Rotate,
    /// `(k, l, m) -> (m, k, l)`
    RotateBack,
}

impl Relabel {
    fn apply(self, i: Indices) -> Indices {
        let (k, l, m) = match self {
            Relabel::SwapLM => (i.k, i.m, i.l),
            Relabel::Rotate => (i.l, i.m, i.k),
            Relabel::RotateBack => (i.m, i.k, i.l),
        };
        Indices { k, l, m, n: i.n }
    }
}

/// The raw expressions obtained by permuting weights in T8 and T17 that the
/// theorems do not list separately, each equal to a listed side after
/// renaming summation indices. Checked both as whole sums and term by term
/// under the renaming.
pub fn permutation_collapse_check(n: usize, weights: Weights) -> IdentityReport {
    let start = Instant::now();
    let t8 = family(FamilyId::T8);
    let t17 = family(FamilyId::T17);
    let raw8 = registry::parse_all(&registry::T8_RELABELED);
    let raw17 = registry::parse_all(&registry::T17_RELABELED);
    let cases: [(&SideTemplate, &IdentityFamily, usize, Relabel); 7] = [
        (&raw8[0], &t8, 0, Relabel::SwapLM),
        (&raw8[1], &t8, 1, Relabel::SwapLM),
        (&raw8[2], &t8, 2, Relabel::SwapLM),
        (&raw17[0], &t17, 0, Relabel::Rotate),
        (&raw17[1], &t17, 0, Relabel::RotateBack),
        (&raw17[2], &t17, 1, Relabel::Rotate),
        (&raw17[3], &t17, 1, Relabel::RotateBack),
    ];
    let mut ev = Evaluator::new();
    let mut found = None;
    for (d, (raw, target, side, relabel)) in cases.into_iter().enumerate() {
        let vars = &target.y_vars;
        let want = ev.side(&target.sides[side], n, &weights).embed(vars);
        let got = ev.side(raw, n, &weights).embed(vars);
        found = witness(d, side, &got, &want, || {
            format!("raw display {d} vs {} side {side}", target.id)
        });
        if found.is_some() {
            break;
        }
        for idx in target.sides[side].indices(n) {
            let want = ev.term(&target.sides[side], idx, &weights).embed(vars);
            let got = ev.term(raw, relabel.apply(idx), &weights).embed(vars);
            found = witness(d, side, &got, &want, || {
                format!(
                    "raw display {d} vs {} side {side} at (k,l,m)=({},{},{})",
                    target.id, idx.k, idx.l, idx.m
                )
            });
            if found.is_some() {
                break;
            }
        }
        if found.is_some() {
            break;
        }
    }
    IdentityReport::finish("COLLAPSE".to_string(), n, weights, found, start)
}
