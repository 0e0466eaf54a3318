//! Exhaustive small-n extremal search for the spectral radius under minor
//! and subgraph constraints.

mod audit;
mod enumerate;

pub use audit::{edge_bound_audit, AuditEntry, AuditReport, SlopeFit};
pub use enumerate::enumerate_connected;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{construct, FamilySpec};
use crate::graph::canon::SmallGraph;
use crate::graph::{canonical_code, Graph};
use crate::minor::{fs_subgraph_witness, has_fs_minor, has_qt_minor, qt_subgraph_witness, MinorAnswer, QtAnswer};
use crate::spectral::{rho_closed_form, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};

/// Two spectral radii closer than this are the same maximum.
pub const TIE_TOLERANCE: f64 = 1e-9;

const LIMITATION: &str = "extremal statements of this kind are asserted only for sufficiently large n; \
    a small-n report can confirm feasibility of the predicted graph but cannot confirm or refute extremality";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    FsMinorFree(usize),
    QtMinorFree(usize),
    FsSubgraphFree(usize),
    QtSubgraphFree(usize),
}

/// Result of testing one graph against a constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Undecided,
}

impl Constraint {
    pub fn param(&self) -> usize {
        match *self {
            Constraint::FsMinorFree(k)
            | Constraint::QtMinorFree(k)
            | Constraint::FsSubgraphFree(k)
            | Constraint::QtSubgraphFree(k) => k,
        }
    }

    fn is_fs(&self) -> bool {
        matches!(self, Constraint::FsMinorFree(_) | Constraint::FsSubgraphFree(_))
    }

    /// `K_s ∨ I_{n−s}` for friendship constraints, `K_t ∨ M_{n−t}` otherwise.
    pub fn predicted_family(&self, n: usize) -> FamilySpec {
        let k = self.param();
        if self.is_fs() {
            FamilySpec::KsJoinIndependent { s: k, n }
        } else {
            FamilySpec::KtJoinMatching { t: k, n }
        }
    }

    pub fn test(&self, g: &Graph, node_budget: u64) -> Result<Verdict> {
        let minor = |a: MinorAnswer| match a {
            MinorAnswer::NotFound => Verdict::Pass,
            MinorAnswer::Found(_) => Verdict::Fail,
            MinorAnswer::Exhausted { .. } => Verdict::Undecided,
        };
        Ok(match *self {
            Constraint::FsMinorFree(s) => minor(has_fs_minor(g, s, node_budget)?),
            Constraint::QtMinorFree(t) => minor(has_qt_minor(g, t, node_budget)?),
            Constraint::FsSubgraphFree(s) => {
                if fs_subgraph_witness(g, s).is_some() {
                    Verdict::Fail
                } else {
                    Verdict::Pass
                }
            }
            Constraint::QtSubgraphFree(t) => match qt_subgraph_witness(g, t, node_budget) {
                QtAnswer::NotFound => Verdict::Pass,
                QtAnswer::Found { .. } => Verdict::Fail,
                QtAnswer::Exhausted { .. } => Verdict::Undecided,
            },
        })
    }

    fn validate(&self) -> Result<()> {
        if self.param() == 0 {
            return Err(Error::InvalidSpec(format!("{self}: parameter must be at least 1")));
        }
        Ok(())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Constraint::FsMinorFree(s) => write!(f, "fs-minor-free:s={s}"),
            Constraint::QtMinorFree(t) => write!(f, "qt-minor-free:t={t}"),
            Constraint::FsSubgraphFree(s) => write!(f, "fs-subgraph-free:s={s}"),
            Constraint::QtSubgraphFree(t) => write!(f, "qt-subgraph-free:t={t}"),
        }
    }
}

/// Parses `value`, `s=value` or `t=value`, with the letter matching `key`.
fn parse_param(text: &str, key: char, full: &str) -> Result<usize> {
    let raw = match text.split_once('=') {
        Some((k, v)) if k.trim().len() == 1 && k.trim().starts_with(key) => v,
        Some(_) => return Err(Error::InvalidSpec(format!("{full}: expected parameter {key}"))),
        None => text,
    };
    raw.trim().parse().map_err(|_| Error::InvalidSpec(format!("{full}: bad parameter '{raw}'")))
}

impl FromStr for Constraint {
    type Err = Error;

    /// Accepts `fs-minor:s=2`, `fs-minor-free:s=2`, `qt-subgraph:t=1`, ...
    fn from_str(text: &str) -> Result<Self> {
        let (kind, param) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("{text}: expected kind:param")))?;
        let kind = kind.trim().trim_end_matches("-free");
        let c = match kind {
            "fs-minor" => Constraint::FsMinorFree(parse_param(param, 's', text)?),
            "qt-minor" => Constraint::QtMinorFree(parse_param(param, 't', text)?),
            "fs-subgraph" => Constraint::FsSubgraphFree(parse_param(param, 's', text)?),
            "qt-subgraph" => Constraint::QtSubgraphFree(parse_param(param, 't', text)?),
            other => return Err(Error::InvalidSpec(format!("unknown constraint '{other}'"))),
        };
        c.validate()?;
        Ok(c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// 0 means the machine's available parallelism.
    pub workers: usize,
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: crate::minor::DEFAULT_NODE_BUDGET,
            workers: 0,
            tolerance: DEFAULT_TOLERANCE,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl SearchOptions {
    fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| Error::PreconditionFailed(format!("worker pool: {e}")))?;
        Ok(pool.install(job))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub constraint: String,
    /// Isomorphism classes of connected graphs visited.
    pub enumerated: usize,
    pub feasible: usize,
    /// `None` when nothing is feasible.
    pub best_rho: Option<f64>,
    /// Canonical graph6 of every feasible graph within the tie tolerance
    /// of `best_rho`, sorted.
    pub maximizers: Vec<String>,
    /// Canonical graph6 of the predicted extremal graph.
    pub predicted_g6: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub exhausted_count: usize,
    /// Wall-clock seconds; the only field that varies between runs.
    pub elapsed: f64,
    pub note: String,
}

impl SearchReport {
    pub const CSV_HEADER: &'static str = "n,constraint,enumerated,feasible,best_rho,maximizers,match,exhausted_count,elapsed";

    pub fn csv_row(&self) -> String {
        let rho = self.best_rho.map(|r| format!("{r:.12}")).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{:.3}",
            self.n,
            self.constraint,
            self.enumerated,
            self.feasible,
            rho,
            self.maximizers.join(" "),
            self.matches,
            self.exhausted_count,
            self.elapsed
        )
    }
}

enum Outcome {
    Infeasible,
    Undecided,
    Feasible(f64),
}

/// Maximizes ρ over all connected graphs on `n` vertices satisfying
/// `constraint`, and compares the maximizers against the predicted graph.
pub fn extremal_search(n: usize, constraint: Constraint, opts: &SearchOptions) -> Result<SearchReport> {
    constraint.validate()?;
    let start = Instant::now();
    let predicted = construct(&constraint.predicted_family(n))?.0;
    let predicted_g6 = canonical_code(&predicted)?;

    let outcomes: Vec<(SmallGraph, Outcome)> = opts.install(|| -> Result<_> {
        let graphs = enumerate::connected_small(n)?;
        graphs
            .into_par_iter()
            .map(|sg| {
                let g = sg.to_graph();
                let outcome = match constraint.test(&g, opts.node_budget)? {
                    Verdict::Fail => Outcome::Infeasible,
                    Verdict::Undecided => Outcome::Undecided,
                    Verdict::Pass => Outcome::Feasible(spectral_radius(&g, opts.tolerance, opts.max_iter)?.rho),
                };
                Ok((sg, outcome))
            })
            .collect()
    })??;

    let enumerated = outcomes.len();
    let exhausted_count = outcomes.iter().filter(|(_, o)| matches!(o, Outcome::Undecided)).count();
    let feasible: Vec<(SmallGraph, f64)> = outcomes
        .into_iter()
        .filter_map(|(g, o)| match o {
            Outcome::Feasible(r) => Some((g, r)),
            _ => None,
        })
        .collect();
    let best_rho = feasible.iter().map(|&(_, r)| r).reduce(f64::max);
    let mut maximizers = Vec::new();
    if let Some(best) = best_rho {
        for (g, r) in &feasible {
            if *r >= best - TIE_TOLERANCE {
                maximizers.push(canonical_code(&g.to_graph())?);
            }
        }
    }
    maximizers.sort();
    maximizers.dedup();
    let matches = exhausted_count == 0 && maximizers.contains(&predicted_g6);
    Ok(SearchReport {
        n,
        constraint: constraint.to_string(),
        enumerated,
        feasible: feasible.len(),
        best_rho,
        maximizers,
        predicted_g6,
        matches,
        exhausted_count,
        elapsed: start.elapsed().as_secs_f64(),
        note: LIMITATION.to_string(),
    })
}

/// Which extremal statement to test at small n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TheoremMode {
    Fs(usize),
    Qt(usize),
    QtSubgraph(usize),
}

impl TheoremMode {
    pub fn constraint(&self) -> Constraint {
        match *self {
            TheoremMode::Fs(s) => Constraint::FsMinorFree(s),
            TheoremMode::Qt(t) => Constraint::QtMinorFree(t),
            TheoremMode::QtSubgraph(t) => Constraint::QtSubgraphFree(t),
        }
    }
}

impl fmt::Display for TheoremMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            TheoremMode::Fs(s) => write!(f, "fs:s={s}"),
            TheoremMode::Qt(t) => write!(f, "qt:t={t}"),
            TheoremMode::QtSubgraph(t) => write!(f, "qt-subgraph:t={t}"),
        }
    }
}

impl FromStr for TheoremMode {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (kind, param) = text
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(format!("{text}: expected kind:param")))?;
        let mode = match kind.trim() {
            "fs" => TheoremMode::Fs(parse_param(param, 's', text)?),
            "qt" => TheoremMode::Qt(parse_param(param, 't', text)?),
            "qt-subgraph" => TheoremMode::QtSubgraph(parse_param(param, 't', text)?),
            other => return Err(Error::InvalidSpec(format!("unknown mode '{other}'"))),
        };
        mode.constraint().validate()?;
        Ok(mode)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremCheck {
    pub n: usize,
    pub report: SearchReport,
    /// The predicted graph satisfies its own constraint.
    pub predicted_free: bool,
    pub predicted_rho: f64,
    pub closed_form_rho: f64,
    pub closed_form_delta: f64,
    /// `predicted_free` and the closed form agrees to the tie tolerance.
    pub checks_pass: bool,
}

/// One search per n. Never asserts extremality; only the predicted graph's
/// feasibility and its closed-form ρ are checked, the match flag is recorded.
pub fn verify_theorem_small_n(
    mode: TheoremMode,
    n_range: RangeInclusive<usize>,
    opts: &SearchOptions,
) -> Result<Vec<TheoremCheck>> {
    let constraint = mode.constraint();
    n_range
        .map(|n| {
            let report = extremal_search(n, constraint, opts)?;
            let family = constraint.predicted_family(n);
            let predicted = construct(&family)?.0;
            let predicted_free = constraint.test(&predicted, opts.node_budget)? == Verdict::Pass;
            let predicted_rho = spectral_radius(&predicted, opts.tolerance, opts.max_iter)?.rho;
            let closed_form_rho = rho_closed_form(&family)?;
            let closed_form_delta = (predicted_rho - closed_form_rho).abs();
            Ok(TheoremCheck {
                n,
                report,
                predicted_free,
                predicted_rho,
                closed_form_rho,
                closed_form_delta,
                checks_pass: predicted_free && closed_form_delta <= TIE_TOLERANCE,
            })
        })
        .collect()
}
