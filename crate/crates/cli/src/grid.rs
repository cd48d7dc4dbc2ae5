//! Task enumeration and the parallel runner. Tasks are listed in report
//! order up front; the pool maps them and results are collected back in that
//! same order, so output never depends on scheduling.

use std::time::Instant;

use bernsym_core::exact::{fmt_rational, Rational};
use bernsym_core::identities::{
    corollary_specialization_check, family, permutation_collapse_check, t14_family, verify_family_with, FamilyId,
    IdentityFamily, T14Variant,
};
use bernsym_core::series::{DerivationLabel, LambdaFamily, SeriesChecker, SeriesError};
use bernsym_core::Weights;
use rayon::prelude::*;

use crate::config::{RunConfig, Selection};
use crate::report::Row;
use crate::CliError;

/// Weight tuples `{1..=range}^arity`, padded with 1.
pub fn weight_grid(range: u64, arity: u8) -> Vec<Weights> {
    let axis = |free: bool| if free { 1..=range } else { 1..=1 };
    let mut out = Vec::new();
    for a in axis(arity >= 1) {
        for b in axis(arity >= 2) {
            for c in axis(arity >= 3) {
                out.push([a, b, c]);
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
enum VerifyTask {
    Family {
        id: FamilyId,
        n: usize,
        weights: Weights,
        corrupt: Option<usize>,
    },
    Specialization {
        theorem: FamilyId,
        corollary: FamilyId,
        n: usize,
        weights: Weights,
    },
    Collapse {
        n: usize,
        weights: Weights,
    },
}

pub struct VerifyOptions {
    pub corrupt: Option<(FamilyId, usize)>,
    pub t14: T14Variant,
}

fn verify_tasks(cfg: &RunConfig, opts: &VerifyOptions) -> Vec<VerifyTask> {
    let mut tasks = Vec::new();
    for sel in &cfg.families {
        let arity = match sel {
            Selection::Family(id) => family(*id).weight_arity,
            Selection::Specialization(_, c) => family(*c).weight_arity,
            Selection::Collapse => 3,
        };
        let grid = weight_grid(cfg.weight_range, arity);
        for n in 0..=cfg.max_n {
            for &weights in &grid {
                tasks.push(match *sel {
                    Selection::Family(id) => VerifyTask::Family {
                        id,
                        n,
                        weights,
                        corrupt: opts.corrupt.filter(|(f, _)| *f == id).map(|(_, s)| s),
                    },
                    Selection::Specialization(theorem, corollary) => VerifyTask::Specialization {
                        theorem,
                        corollary,
                        n,
                        weights,
                    },
                    Selection::Collapse => VerifyTask::Collapse { n, weights },
                });
            }
        }
    }
    tasks
}

fn family_for(id: FamilyId, t14: T14Variant) -> IdentityFamily {
    if id == FamilyId::T14 {
        t14_family(t14)
    } else {
        family(id)
    }
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))
}

pub fn run_verify(cfg: &RunConfig, opts: &VerifyOptions) -> Result<Vec<Row>, CliError> {
    let tasks = verify_tasks(cfg, opts);
    let timing = cfg.timing;
    let t14 = opts.t14;
    let rows = pool(cfg.parallelism)?.install(|| {
        tasks
            .par_iter()
            .map(|task| {
                let report = match task {
                    VerifyTask::Family {
                        id,
                        n,
                        weights,
                        corrupt,
                    } => verify_family_with(&family_for(*id, t14), *n, *weights, *corrupt),
                    VerifyTask::Specialization {
                        theorem,
                        corollary,
                        n,
                        weights,
                    } => corollary_specialization_check(*theorem, *corollary, *n, *weights)
                        .map_err(|e| CliError::Config(e.to_string()))?,
                    VerifyTask::Collapse { n, weights } => permutation_collapse_check(*n, *weights),
                };
                Ok(Row::from_identity(report, timing))
            })
            .collect::<Result<Vec<Row>, CliError>>()
    })?;
    Ok(rows)
}

#[derive(Clone, Debug)]
enum SeriesTask {
    Formula(DerivationLabel),
    Symmetry(LambdaFamily, u8),
    Substitution(u8),
}

impl SeriesTask {
    fn all() -> Vec<SeriesTask> {
        let mut out: Vec<SeriesTask> = DerivationLabel::ALL.into_iter().map(SeriesTask::Formula).collect();
        for fam in [LambdaFamily::L23, LambdaFamily::L13, LambdaFamily::L12] {
            out.extend(fam.indices().map(|i| SeriesTask::Symmetry(fam, i)));
        }
        out.extend((0..=3).map(SeriesTask::Substitution));
        out
    }

    fn ys_len(&self) -> usize {
        match self {
            SeriesTask::Formula(label) => label.ys_len(),
            SeriesTask::Symmetry(fam, i) => fam.ys_len(*i),
            SeriesTask::Substitution(i) => LambdaFamily::L23.ys_len(*i),
        }
    }

    fn label(&self, y: &Rational) -> String {
        let y = fmt_rational(y);
        match self {
            SeriesTask::Formula(label) => format!("formula:{label}@y={y}"),
            SeriesTask::Symmetry(fam, i) => format!("s3:{fam}^{i}@y={y}"),
            SeriesTask::Substitution(i) => format!("subst:{i}@y={y}"),
        }
    }
}

pub fn run_series(cfg: &RunConfig, ys: &[Rational], tamper: Option<usize>) -> Result<Vec<Row>, CliError> {
    let grid = weight_grid(cfg.weight_range, 3);
    let mut tasks = Vec::new();
    for task in SeriesTask::all() {
        for y in ys {
            for &w in &grid {
                tasks.push((task.clone(), y.clone(), w));
            }
        }
    }
    let checker = SeriesChecker {
        order: cfg.series_order,
        tamper,
    };
    let timing = cfg.timing;
    let rows = pool(cfg.parallelism)?.install(|| {
        tasks
            .par_iter()
            .map(|(task, y, w)| {
                let start = Instant::now();
                let yv = vec![y.clone(); task.ys_len()];
                let outcome = match task {
                    SeriesTask::Formula(label) => checker.coefficient_formula(*label, *w, &yv),
                    SeriesTask::Symmetry(fam, i) => checker.s3_invariance(*fam, *i, *w, &yv),
                    SeriesTask::Substitution(i) => checker.lambda13_substitution(*i, *w, &yv),
                }?;
                let millis = if timing { start.elapsed().as_millis() as u64 } else { 0 };
                Ok(Row::from_series(task.label(y), cfg.series_order, *w, outcome, millis))
            })
            .collect::<Result<Vec<Row>, SeriesError>>()
    })?;
    Ok(rows)
}
