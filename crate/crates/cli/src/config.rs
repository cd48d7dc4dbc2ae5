use std::path::PathBuf;
use std::str::FromStr;

use bernsym_core::exact::{parse_rational, Rational};
use bernsym_core::identities::FamilyId;
use clap::ValueEnum;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

/// One entry of `--families`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Selection {
    Family(FamilyId),
    /// `THEOREM>COROLLARY`
    Specialization(FamilyId, FamilyId),
    Collapse,
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("collapse") {
            return Ok(Selection::Collapse);
        }
        if let Some((t, c)) = s.split_once('>') {
            let t = t.parse::<FamilyId>().map_err(|e| e.to_string())?;
            let c = c.parse::<FamilyId>().map_err(|e| e.to_string())?;
            return Ok(Selection::Specialization(t, c));
        }
        s.parse::<FamilyId>().map(Selection::Family).map_err(|e| e.to_string())
    }
}

/// Everything `verify` runs: all families, every stated specialization and
/// the index-relabeling check.
pub fn all_selections() -> Vec<Selection> {
    let mut out: Vec<Selection> = FamilyId::ALL.into_iter().map(Selection::Family).collect();
    out.extend(
        bernsym_core::identities::SPECIALIZATIONS
            .iter()
            .map(|s| Selection::Specialization(s.theorem, s.corollary)),
    );
    out.push(Selection::Collapse);
    out
}

pub fn parse_selections(list: &str) -> Result<Vec<Selection>, CliError> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(all_selections());
    }
    let mut out = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.parse::<Selection>().map_err(CliError::Config))
        .collect::<Result<Vec<_>, _>>()?;
    if out.is_empty() {
        return Err(CliError::Config("no families selected".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

pub fn parse_ys(list: &str) -> Result<Vec<Rational>, CliError> {
    list.split(',')
        .map(|s| parse_rational(s).ok_or_else(|| CliError::Config(format!("bad rational `{s}`"))))
        .collect()
}

/// `FAMILY:SIDE`
pub fn parse_corruption(s: &str) -> Result<(FamilyId, usize), CliError> {
    let bad = || CliError::Config(format!("bad --corrupt value `{s}`, expected FAMILY:SIDE"));
    let (fam, side) = s.split_once(':').ok_or_else(bad)?;
    let fam = fam.parse::<FamilyId>().map_err(|_| bad())?;
    let side = side.trim().parse::<usize>().map_err(|_| bad())?;
    Ok((fam, side))
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub max_n: usize,
    pub weight_range: u64,
    pub families: Vec<Selection>,
    pub series_order: usize,
    pub output_format: Format,
    pub output_path: Option<PathBuf>,
    pub parallelism: usize,
    pub timing: bool,
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.weight_range < 1 {
            return Err(CliError::Config("--weights must be at least 1".into()));
        }
        if self.parallelism < 1 {
            return Err(CliError::Config("--jobs must be at least 1".into()));
        }
        if self.families.is_empty() {
            return Err(CliError::Config("no families selected".into()));
        }
        Ok(())
    }
}
