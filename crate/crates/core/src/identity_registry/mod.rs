//! Catalogue of identities, each checked exactly cell by cell over a
//! parameter box with the two sides computed along different routes.

mod catalog;

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cauchy_sequences::SequenceError;
use crate::exact_math::ExactValue;
use crate::permutation_lab::LabError;
use crate::special_numbers::SpecialError;

pub use catalog::catalog;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("unknown identity `{id}`; known identities: {}", known.join(", "))]
    UnknownIdentity { id: String, known: Vec<String> },
    #[error(transparent)]
    Lab(#[from] LabError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    /// Must hold on its whole box.
    Required,
    /// Evaluated and reported; never fails a run.
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Profile {
    #[default]
    Quick,
    Full,
}

/// One parameter cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Cell {
    pub n: usize,
    pub k: i64,
    pub r: Option<usize>,
    pub alpha: Option<usize>,
    pub bound: Option<usize>,
}

impl Cell {
    /// `k` for identities whose box never goes negative.
    pub fn ku(&self) -> usize {
        usize::try_from(self.k).expect("box keeps k non-negative")
    }

    pub fn params(&self) -> BTreeMap<String, i64> {
        let mut m = BTreeMap::new();
        m.insert("n".to_string(), self.n as i64);
        m.insert("k".to_string(), self.k);
        if let Some(r) = self.r {
            m.insert("r".to_string(), r as i64);
        }
        if let Some(a) = self.alpha {
            m.insert("alpha".to_string(), a as i64);
        }
        if let Some(b) = self.bound {
            m.insert("bound".to_string(), b as i64);
        }
        m
    }
}

/// Ranges of a parameter box; all inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamBox {
    pub n: (usize, usize),
    pub k: (i64, i64),
    /// Cap on `n + k`.
    pub sum_max: Option<i64>,
    /// Sweep `r` over `0..=n`.
    pub with_r: bool,
    pub alpha: Option<(usize, usize)>,
    pub bound: Option<(usize, usize)>,
    /// Restrict to `k <= n`.
    pub k_le_n: bool,
}

impl ParamBox {
    pub const fn nk(n_max: usize, k_max: i64) -> Self {
        ParamBox { n: (0, n_max), k: (0, k_max), sum_max: None, with_r: false, alpha: None, bound: None, k_le_n: false }
    }

    pub const fn n_from(mut self, lo: usize) -> Self {
        self.n.0 = lo;
        self
    }

    pub const fn k_from(mut self, lo: i64) -> Self {
        self.k.0 = lo;
        self
    }

    pub const fn sum_at_most(mut self, s: i64) -> Self {
        self.sum_max = Some(s);
        self
    }

    pub const fn with_r(mut self) -> Self {
        self.with_r = true;
        self
    }

    pub const fn alpha(mut self, lo: usize, hi: usize) -> Self {
        self.alpha = Some((lo, hi));
        self
    }

    pub const fn bound(mut self, lo: usize, hi: usize) -> Self {
        self.bound = Some((lo, hi));
        self
    }

    pub const fn k_le_n(mut self) -> Self {
        self.k_le_n = true;
        self
    }

    /// Replaces the upper ends of the `n` and `k` ranges. A cap on `n + k`
    /// grows so that the new corners stay reachable.
    pub fn apply(mut self, o: &BoxOverride) -> Self {
        if let Some(n) = o.n_max {
            self.n.1 = n;
            self.sum_max = self.sum_max.map(|s| s.max(n as i64));
        }
        if let Some(k) = o.k_max {
            self.k.1 = k;
            self.sum_max = self.sum_max.map(|s| s.max(k));
        }
        self
    }

    /// Cells in lexicographic order of `(n, k, r, alpha, bound)`.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for n in self.n.0..=self.n.1 {
            for k in self.k.0..=self.k.1 {
                if self.sum_max.is_some_and(|s| n as i64 + k > s) || (self.k_le_n && k > n as i64) {
                    continue;
                }
                let rs: Vec<Option<usize>> = if self.with_r { (0..=n).map(Some).collect() } else { vec![None] };
                let alphas: Vec<Option<usize>> = match self.alpha {
                    Some((lo, hi)) => (lo..=hi).map(Some).collect(),
                    None => vec![None],
                };
                let bounds: Vec<Option<usize>> = match self.bound {
                    Some((lo, hi)) => (lo..=hi).map(Some).collect(),
                    None => vec![None],
                };
                for &r in &rs {
                    for &alpha in &alphas {
                        for &bound in &bounds {
                            out.push(Cell { n, k, r, alpha, bound });
                        }
                    }
                }
            }
        }
        out
    }
}

/// Caps supplied on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoxOverride {
    pub n_max: Option<usize>,
    pub k_max: Option<i64>,
    pub profile: Profile,
}

pub type Evaluator = fn(&Cell) -> Result<ExactValue, RegistryError>;
/// Extra per-cell assertion, e.g. integrality of a rational result.
pub type CellCheck = fn(&Cell, &ExactValue, &ExactValue) -> Option<String>;

pub enum Sides {
    Equation {
        lhs: Evaluator,
        rhs: Evaluator,
        check: Option<CellCheck>,
    },
    /// Named variants of a sum claimed to vanish; the first is the literal
    /// reading.
    Vanishing {
        variants: &'static [(&'static str, Evaluator)],
    },
}

pub struct Identity {
    pub id: &'static str,
    pub convention: &'static str,
    pub status: Status,
    /// The route each side takes.
    pub lhs_route: &'static str,
    pub rhs_route: &'static str,
    pub quick: ParamBox,
    pub full: ParamBox,
    pub sides: Sides,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportStatus {
    Pass,
    Fail,
    Probe,
}

/// Per-variant tally of a probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeVariant {
    pub variant: String,
    pub vanishing_cells: usize,
    pub nonzero_cells: usize,
    pub identically_zero: bool,
    /// `n,k:value` for every cell, in cell order.
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub convention: String,
    pub cells: usize,
    pub failures: Vec<Failure>,
    pub status: ReportStatus,
    pub millis: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variants: Option<Vec<ProbeVariant>>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status != ReportStatus::Fail
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// Compares exactly; an integer equals a rational of the same value.
pub fn values_equal(a: &ExactValue, b: &ExactValue) -> bool {
    use ExactValue::*;
    match (a, b) {
        (Int(x), Rational(y)) | (Rational(y), Int(x)) => BigRational::from_integer(x.clone()) == *y,
        _ => a == b,
    }
}

pub fn known_ids() -> Vec<String> {
    catalog().iter().map(|i| i.id.to_string()).collect()
}

pub fn find(id: &str) -> Result<&'static Identity, RegistryError> {
    catalog()
        .iter()
        .find(|i| i.id == id)
        .ok_or_else(|| RegistryError::UnknownIdentity { id: id.to_string(), known: known_ids() })
}

/// Checks one identity on its box for the requested profile, narrowed by
/// any caps in `over`.
pub fn verify(id: &str, over: Option<BoxOverride>) -> Result<IdentityReport, RegistryError> {
    let identity = find(id)?;
    let over = over.unwrap_or_default();
    let base = match over.profile {
        Profile::Quick => identity.quick,
        Profile::Full => identity.full,
    };
    run(identity, &base.apply(&over))
}

/// Runs every catalogue entry on its default (quick) or extended (full) box.
pub fn verify_all(profile: Profile) -> Result<Vec<IdentityReport>, RegistryError> {
    let over = BoxOverride { profile, ..BoxOverride::default() };
    catalog().iter().map(|i| verify(i.id, Some(over))).collect()
}

/// True iff no required identity failed.
pub fn all_required_pass(reports: &[IdentityReport]) -> bool {
    reports.iter().all(IdentityReport::passed)
}

fn run(identity: &Identity, pbox: &ParamBox) -> Result<IdentityReport, RegistryError> {
    let start = Instant::now();
    let cells = pbox.cells();
    let (failures, variants) = match &identity.sides {
        Sides::Equation { lhs, rhs, check } => {
            let outcomes: Vec<Option<Failure>> = cells
                .par_iter()
                .map(|cell| -> Result<Option<Failure>, RegistryError> {
                    let l = lhs(cell)?;
                    let r = rhs(cell)?;
                    let mismatch = if !values_equal(&l, &r) {
                        Some((l.to_string(), r.to_string()))
                    } else {
                        check.and_then(|f| f(cell, &l, &r)).map(|msg| (format!("{l} ({msg})"), r.to_string()))
                    };
                    Ok(mismatch.map(|(lhs, rhs)| Failure { params: cell.params(), lhs, rhs }))
                })
                .collect::<Result<_, _>>()?;
            (outcomes.into_iter().flatten().collect::<Vec<_>>(), None)
        }
        Sides::Vanishing { variants } => {
            let mut failures = Vec::new();
            let mut tallies = Vec::new();
            for (vi, (name, eval)) in variants.iter().enumerate() {
                let values: Vec<ExactValue> = cells.par_iter().map(eval).collect::<Result<_, _>>()?;
                let nonzero = values.iter().filter(|v| !v.is_zero()).count();
                if vi == 0 {
                    for (cell, v) in cells.iter().zip(&values) {
                        if !v.is_zero() {
                            failures.push(Failure { params: cell.params(), lhs: v.to_string(), rhs: "0".into() });
                        }
                    }
                }
                tallies.push(ProbeVariant {
                    variant: name.to_string(),
                    vanishing_cells: values.len() - nonzero,
                    nonzero_cells: nonzero,
                    identically_zero: nonzero == 0,
                    values: cells.iter().zip(&values).map(|(c, v)| format!("{},{}:{v}", c.n, c.k)).collect(),
                });
            }
            (failures, Some(tallies))
        }
    };
    let status = match identity.status {
        Status::Probe => ReportStatus::Probe,
        Status::Required if failures.is_empty() => ReportStatus::Pass,
        Status::Required => ReportStatus::Fail,
    };
    Ok(IdentityReport {
        identity: identity.id.to_string(),
        convention: identity.convention.to_string(),
        cells: cells.len(),
        failures,
        status,
        millis: start.elapsed().as_millis() as u64,
        variants,
    })
}
