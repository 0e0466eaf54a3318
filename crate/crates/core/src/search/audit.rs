use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Result;
use crate::family::{choose2, construct, efgg_edge_bound, FamilySpec};
use crate::minor::HubPattern;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditEntry {
    pub family: String,
    pub n: usize,
    pub edges: usize,
    /// Closed-form edge count, where the family has one.
    pub expected_edges: Option<usize>,
    pub formula_ok: Option<bool>,
    /// `⌊n²/4⌋ + s² − s` (odd s) or `⌊n²/4⌋ + s² − 3s/2` (even s).
    pub turan_bound: Option<usize>,
    pub turan_equality: Option<bool>,
    /// `s·n` for `K_s ∨ I_{n−s}`.
    pub linear_bound: Option<usize>,
    pub linear_ok: Option<bool>,
    /// `C·a + k·n − e` for complete bipartite members, given C.
    pub bipartite_slack: Option<f64>,
    pub bipartite_ok: Option<bool>,
}

impl AuditEntry {
    fn checks(&self) -> impl Iterator<Item = bool> {
        [self.formula_ok, self.turan_equality, self.linear_ok, self.bipartite_ok].into_iter().flatten()
    }
}

/// Least-squares line `e ≈ slope·n + intercept` over members of one family
/// that differ only in n.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SlopeFit {
    pub family: String,
    pub points: Vec<(usize, usize)>,
    pub slope: f64,
    pub intercept: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub mode: String,
    #[serde(rename = "C")]
    pub c: Option<f64>,
    pub entries: Vec<AuditEntry>,
    pub slopes: Vec<SlopeFit>,
    pub all_ok: bool,
}

fn expected_edges(spec: &FamilySpec) -> Option<usize> {
    use FamilySpec::*;
    Some(match *spec {
        Complete { n } => choose2(n),
        Independent { .. } => 0,
        CompleteBipartite { a, b } => a * b,
        Path { n } => n.saturating_sub(1),
        Cycle { n } => n,
        Matching { n } => n / 2,
        Friendship { s } => 3 * s,
        IntersectingC4 { t } => 4 * t,
        KsJoinIndependent { s, n } => choose2(s) + s * (n - s),
        KtJoinMatching { t, n } => choose2(t) + t * (n - t) + (n - t) / 2,
        EfggExtremal { s, n } | ZlxExtremal { s, n } => efgg_edge_bound(s, n),
        _ => return None,
    })
}

/// Checks edge counts of constructions against the closed-form counts and
/// the linear and bipartite edge bounds. `mode` supplies k = s or t for the
/// bipartite bound `e ≤ C·a + k·n`, evaluated only when `c` is given.
pub fn edge_bound_audit(specs: &[FamilySpec], mode: HubPattern, c: Option<f64>) -> Result<AuditReport> {
    let k = mode.param();
    let mut entries = Vec::with_capacity(specs.len());
    let mut groups: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    for spec in specs {
        let (g, _) = construct(spec)?;
        let (n, edges) = (g.n(), g.edge_count());
        let expected = expected_edges(spec);
        let turan_bound = match *spec {
            FamilySpec::EfggExtremal { s, n } | FamilySpec::ZlxExtremal { s, n } => Some(efgg_edge_bound(s, n)),
            _ => None,
        };
        let linear_bound = match *spec {
            FamilySpec::KsJoinIndependent { s, n } => Some(s * n),
            _ => None,
        };
        let bipartite_slack = match (*spec, c) {
            (FamilySpec::CompleteBipartite { a, .. }, Some(c)) => Some(c * a as f64 + (k * n) as f64 - edges as f64),
            _ => None,
        };
        entries.push(AuditEntry {
            family: spec.to_string(),
            n,
            edges,
            expected_edges: expected,
            formula_ok: expected.map(|e| e == edges),
            turan_bound,
            turan_equality: turan_bound.map(|b| b == edges),
            linear_bound,
            linear_ok: linear_bound.map(|b| edges <= b),
            bipartite_slack,
            bipartite_ok: bipartite_slack.map(|s| s >= 0.0),
        });
        let key = spec.to_string();
        if key.contains("n=") {
            let stripped: Vec<&str> = key.split([':', ',']).filter(|p| !p.starts_with("n=")).collect();
            groups.entry(stripped.join(",")).or_default().push((n, edges));
        }
    }
    let slopes = groups.into_iter().filter_map(|(family, points)| fit(family, points)).collect();
    let all_ok = entries.iter().all(|e| e.checks().all(|ok| ok));
    Ok(AuditReport { mode: mode.to_string(), c, entries, slopes, all_ok })
}

fn fit(family: String, mut points: Vec<(usize, usize)>) -> Option<SlopeFit> {
    points.sort_unstable();
    points.dedup();
    if points.len() < 2 {
        return None;
    }
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0 as f64).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1 as f64).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 as f64 - mx) * (p.1 as f64 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 as f64 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    Some(SlopeFit { family, points, slope, intercept: my - slope * mx })
}
