//! Spectral radius and Perron vector.
//!
//! Power iteration runs on `A + I` for each connected component, starting
//! from the all-ones vector, with Rayleigh-quotient estimates of ρ. The
//! shift keeps bipartite components from oscillating between the Perron
//! vector and its signed twin; it leaves the eigenvectors unchanged.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::FamilySpec;
use crate::graph::Graph;

pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    /// Perron vector of the maximizing component, max entry exactly 1,
    /// zero on every other component.
    pub vector: Vec<f64>,
    /// `max_u |(A·x)_u − ρ·x_u|`.
    pub residual: f64,
    /// Iterations summed over all components.
    pub iterations: usize,
}

pub fn spectral_radius(g: &Graph, tol: f64, max_iter: usize) -> Result<SpectralResult> {
    if g.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    if !(tol > 0.0) {
        return Err(Error::PreconditionFailed(format!("tolerance must be positive, got {tol}")));
    }
    let adj = g.adjacency_lists();
    let mut best: Option<(Vec<usize>, ComponentResult)> = None;
    let mut iterations = 0;
    for comp in g.components() {
        let r = component_radius(&adj, &comp, tol, max_iter)?;
        iterations += r.iterations;
        if best.as_ref().is_none_or(|(_, b)| r.rho > b.rho) {
            best = Some((comp, r));
        }
    }
    let (comp, r) = best.expect("nonempty graph has a component");
    let mut vector = vec![0.0; g.n()];
    for (&v, &x) in comp.iter().zip(&r.x) {
        vector[v] = x;
    }
    Ok(SpectralResult { rho: r.rho, vector, residual: r.residual, iterations })
}

/// [`spectral_radius`] with the default tolerance and iteration cap.
pub fn rho(g: &Graph) -> Result<f64> {
    spectral_radius(g, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).map(|r| r.rho)
}

struct ComponentResult {
    rho: f64,
    x: Vec<f64>,
    residual: f64,
    iterations: usize,
}

fn component_radius(adj: &[Vec<usize>], comp: &[usize], tol: f64, max_iter: usize) -> Result<ComponentResult> {
    let k = comp.len();
    if k == 1 {
        return Ok(ComponentResult { rho: 0.0, x: vec![1.0], residual: 0.0, iterations: 0 });
    }
    let mut local = std::collections::HashMap::with_capacity(k);
    for (i, &v) in comp.iter().enumerate() {
        local.insert(v, i);
    }
    let nbrs: Vec<Vec<usize>> = comp.iter().map(|&v| adj[v].iter().map(|u| local[u]).collect()).collect();

    let mut x = vec![1.0; k];
    let mut ax = vec![0.0; k];
    let mut residual = f64::INFINITY;
    for it in 0..=max_iter {
        for (i, out) in ax.iter_mut().enumerate() {
            *out = nbrs[i].iter().map(|&j| x[j]).sum();
        }
        let num: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let den: f64 = x.iter().map(|a| a * a).sum();
        let rho = num / den;
        residual = x.iter().zip(&ax).map(|(xi, axi)| (axi - rho * xi).abs()).fold(0.0, f64::max);
        if residual <= tol {
            return Ok(ComponentResult { rho, x, residual, iterations: it });
        }
        if it == max_iter {
            break;
        }
        let mut top = 0.0f64;
        for (xi, axi) in x.iter_mut().zip(&ax) {
            *xi += axi;
            top = top.max(*xi);
        }
        for xi in x.iter_mut() {
            *xi /= top;
        }
    }
    Err(Error::ConvergenceFailure { iterations: max_iter, residual })
}

/// Exact ρ for families with an equitable partition into at most three cells.
pub fn rho_closed_form(spec: &FamilySpec) -> Result<f64> {
    spec.validate()?;
    use FamilySpec::*;
    let f = |v: usize| v as f64;
    Ok(match *spec {
        CompleteBipartite { a, b } => (f(a) * f(b)).sqrt(),
        Complete { n } => f(n) - 1.0,
        Cycle { .. } => 2.0,
        // cells: clique (s), independent (n−s)
        KsJoinIndependent { s, n } => quotient_rho(&[vec![f(s) - 1.0, f(n - s)], vec![f(s), 0.0]]),
        KtJoinMatching { t, n } => join_matching_rho(t, n),
        Friendship { s } => join_matching_rho(1, 2 * s + 1),
        _ => return Err(Error::UnsupportedFamily(spec.to_string())),
    })
}

/// ρ(K_t ∨ M_{n−t}) from the quotient over {clique, matched, isolated}.
fn join_matching_rho(t: usize, n: usize) -> f64 {
    let f = |v: usize| v as f64;
    let m = n - t;
    let matched = m - m % 2;
    let mut cells: Vec<Vec<f64>> = Vec::new();
    // row i lists the neighbours a vertex of cell i has in each cell
    match (matched > 0, m % 2 == 1) {
        (true, false) => {
            cells.push(vec![f(t) - 1.0, f(matched)]);
            cells.push(vec![f(t), 1.0]);
        }
        (true, true) => {
            cells.push(vec![f(t) - 1.0, f(matched), 1.0]);
            cells.push(vec![f(t), 1.0, 0.0]);
            cells.push(vec![f(t), 0.0, 0.0]);
        }
        (false, _) => {
            cells.push(vec![f(t) - 1.0, 1.0]);
            cells.push(vec![f(t), 0.0]);
        }
    }
    quotient_rho(&cells)
}

/// Largest eigenvalue of a 1×1, 2×2 or 3×3 quotient matrix of an
/// equitable partition (its eigenvalues are real).
pub fn quotient_rho(q: &[Vec<f64>]) -> f64 {
    match q.len() {
        1 => q[0][0],
        2 => {
            let tr = q[0][0] + q[1][1];
            let det = q[0][0] * q[1][1] - q[0][1] * q[1][0];
            (tr + (tr * tr - 4.0 * det).max(0.0).sqrt()) / 2.0
        }
        3 => {
            let tr = q[0][0] + q[1][1] + q[2][2];
            let minors = q[0][0] * q[1][1] - q[0][1] * q[1][0] + q[0][0] * q[2][2] - q[0][2] * q[2][0]
                + q[1][1] * q[2][2]
                - q[1][2] * q[2][1];
            let det = q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1])
                - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0])
                + q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
            largest_real_cubic_root(-tr, minors, -det)
        }
        k => panic!("quotient of size {k} not supported"),
    }
}

/// Largest root of x³ + a x² + b x + c, assuming all three roots are real.
fn largest_real_cubic_root(a: f64, b: f64, c: f64) -> f64 {
    // x = y − a/3 gives y³ + p y + q
    let p = b - a * a / 3.0;
    let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let shift = -a / 3.0;
    let mut x = if p.abs() < 1e-300 {
        (-q).cbrt() + shift
    } else {
        let r = (-p / 3.0).max(0.0).sqrt();
        let arg = if r == 0.0 { 0.0 } else { (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0) };
        2.0 * r * (arg.acos() / 3.0).cos() + shift
    };
    for _ in 0..3 {
        let fx = ((x + a) * x + b) * x + c;
        let dfx = (3.0 * x + 2.0 * a) * x + b;
        if dfx.abs() < 1e-300 {
            break;
        }
        x -= fx / dfx;
    }
    x
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerronBoundReport {
    pub rho: f64,
    pub bound: f64,
    pub min_entry: f64,
    pub min_vertex: usize,
    /// `min_entry − 1/ρ`; negative means the bound fails at `min_vertex`.
    pub margin: f64,
    pub satisfied: bool,
}

/// Compares the smallest Perron entry with 1/ρ. Diagnostic only: the
/// bound is guaranteed for spectral maximizers of minor-closed families,
/// not for arbitrary graphs.
pub fn verify_perron_bound(g: &Graph, result: &SpectralResult, tol: f64) -> Result<PerronBoundReport> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if result.vector.len() != g.n() {
        return Err(Error::PreconditionFailed("spectral result belongs to another graph".into()));
    }
    let (min_vertex, min_entry) = result
        .vector
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::EmptyGraph)?;
    let bound = if result.rho > 0.0 { 1.0 / result.rho } else { f64::INFINITY };
    let margin = min_entry - bound;
    Ok(PerronBoundReport {
        rho: result.rho,
        bound,
        min_entry,
        min_vertex,
        margin,
        satisfied: margin >= -tol,
    })
}
