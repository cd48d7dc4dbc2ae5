use std::io::Write;

use bernsym_core::exact::fmt_rational;
use bernsym_core::identities::IdentityReport;
use bernsym_core::series::CheckOutcome;
use bernsym_core::Weights;
use serde::Serialize;

use crate::config::Format;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sides: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub left: String,
    pub right: String,
    pub detail: String,
}

impl Witness {
    fn summary(&self) -> String {
        let at = match (&self.monomial, self.order) {
            (Some(m), _) => format!("at {m}"),
            (None, Some(o)) => format!("at order {o}"),
            (None, None) => String::new(),
        };
        format!("{}: {} left={} right={}", self.detail, at, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Row {
    pub family: String,
    pub n: usize,
    pub weights: Weights,
    pub status: &'static str,
    pub witness: Option<Witness>,
    pub millis: u64,
}

impl Row {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn from_identity(r: IdentityReport, timing: bool) -> Row {
        Row {
            family: r.label,
            n: r.n,
            weights: r.weights,
            status: if r.status == bernsym_core::identities::Status::Pass {
                "pass"
            } else {
                "fail"
            },
            witness: r.witness.map(|w| Witness {
                sides: Some([w.sides.0, w.sides.1]),
                monomial: Some(w.monomial.to_string()),
                order: None,
                left: fmt_rational(&w.left),
                right: fmt_rational(&w.right),
                detail: w.detail,
            }),
            millis: if timing { r.elapsed.as_millis() as u64 } else { 0 },
        }
    }

    pub fn from_series(label: String, order: usize, weights: Weights, outcome: CheckOutcome, millis: u64) -> Row {
        let witness = match outcome {
            CheckOutcome::Pass => None,
            CheckOutcome::Fail(w) => Some(Witness {
                sides: None,
                monomial: None,
                order: Some(w.order),
                left: fmt_rational(&w.left),
                right: fmt_rational(&w.right),
                detail: w.detail,
            }),
        };
        Row {
            family: label,
            n: order,
            weights,
            status: if witness.is_none() { "pass" } else { "fail" },
            witness,
            millis,
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    family: &'a str,
    n: usize,
    w1: u64,
    w2: u64,
    w3: u64,
    status: &'a str,
    witness: String,
    millis: u64,
}

pub fn write_rows(out: &mut dyn Write, rows: &[Row], format: Format) -> Result<(), CliError> {
    match format {
        Format::Plain => {
            for r in rows {
                let [a, b, c] = r.weights;
                write!(out, "{:<4} {:<8} n={:<2} w=({a},{b},{c})", r.status, r.family, r.n)?;
                if r.millis > 0 {
                    write!(out, " {}ms", r.millis)?;
                }
                if let Some(w) = &r.witness {
                    write!(out, "  {}", w.summary())?;
                }
                writeln!(out)?;
            }
            let failed = rows.iter().filter(|r| !r.passed()).count();
            writeln!(out, "{} rows, {} failed", rows.len(), failed)?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            for r in rows {
                w.serialize(CsvRow {
                    family: &r.family,
                    n: r.n,
                    w1: r.weights[0],
                    w2: r.weights[1],
                    w3: r.weights[2],
                    status: r.status,
                    witness: r.witness.as_ref().map(Witness::summary).unwrap_or_default(),
                    millis: r.millis,
                })?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}
