//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any criterion fails.

mod common;

use std::time::Instant;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use speclab::family::efgg_extremal;
use speclab::minor::{
    clique_closure_check, find_minor_model, fs_subgraph_witness, has_fs_minor, has_qt_minor, verify_model, HubPattern,
    MinorAnswer, DEFAULT_NODE_BUDGET,
};
use speclab::search::{enumerate_connected, verify_theorem_small_n, SearchOptions, TheoremMode};
use speclab::spectral::{rho_closed_form, spectral_radius, verify_perron_bound, DEFAULT_MAX_ITER, DEFAULT_TOLERANCE};
use speclab::{canonical_code, FamilySpec, Graph, VertexSet};

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rho(g: &Graph) -> f64 {
    spectral_radius(g, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap().rho
}

fn dense_rho(g: &Graph) -> f64 {
    let n = g.n();
    let m = nalgebra::DMatrix::from_fn(n, n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 });
    m.symmetric_eigen().eigenvalues.iter().copied().fold(f64::MIN, f64::max)
}

fn closed_forms() -> Verdict {
    let mut worst = 0.0f64;
    let mut checks = 0;
    let mut record = |what: String, power: f64, exact: f64| -> Result<(), String> {
        let d = (power - exact).abs();
        worst = worst.max(d);
        checks += 1;
        ensure(d <= 1e-9, || format!("{what}: power {power} vs {exact}"))
    };
    for s in 1..=4usize {
        for n in [20usize, 50, 100, 200] {
            let g = family(&format!("ks-join-independent:s={s},n={n}"));
            let (sf, nf) = (s as f64, n as f64);
            let b = sf - 1.0;
            let root = (b + (b * b + 4.0 * sf * (nf - sf)).sqrt()) / 2.0;
            record(format!("K_{s} v I_{}", n - s), rho(&g), root)?;

            let kab = family(&format!("complete-bipartite:a={s},b={}", n - s));
            record(format!("K_{{{s},{}}}", n - s), rho(&kab), (sf * (nf - sf)).sqrt())?;
        }
        for n in [20usize, 21, 50, 51, 100, 101, 200, 201] {
            let spec = FamilySpec::KtJoinMatching { t: s, n };
            let g = speclab::construct(&spec).unwrap().0;
            let power = rho(&g);
            record(format!("K_{s} v M_{} (dense)", n - s), power, dense_rho(&g))?;
            record(format!("K_{s} v M_{} (quotient)", n - s), power, rho_closed_form(&spec).unwrap())?;
        }
    }
    Ok(format!("{checks} comparisons, max |delta| = {worst:.1e}"))
}

fn turan_equality() -> Verdict {
    let (g, _) = efgg_extremal(3, 450).unwrap();
    let bound = 450 * 450 / 4 + 3 * 3 - 3;
    ensure(g.edge_count() == bound && bound == 50631, || format!("efgg(3,450) has {} edges", g.edge_count()))?;
    ensure(fs_subgraph_witness(&g, 3).is_none(), || "efgg(3,450) contains F_3".into())?;
    let (h, _) = efgg_extremal(2, 12).unwrap();
    ensure(h.edge_count() == 36 + 1 && h.edge_count() == 37, || format!("efgg(2,12) has {} edges", h.edge_count()))?;
    ensure(fs_subgraph_witness(&h, 2).is_none(), || "efgg(2,12) contains F_2".into())?;
    Ok("efgg(3,450): 50631 edges, F_3-free; efgg(2,12): 37 edges, F_2-free".into())
}

fn construction_minor_freeness() -> Verdict {
    let mut runs = 0;
    for s in 1..=2 {
        for n in 6..=12 {
            let g = family(&format!("ks-join-independent:s={s},n={n}"));
            let a = has_fs_minor(&g, s, DEFAULT_NODE_BUDGET).unwrap();
            ensure(a.is_not_found(), || format!("K_{s} v I_{}: {}", n - s, a.status()))?;
            runs += 1;
        }
    }
    for n in 5..=12 {
        let g = family(&format!("kt-join-matching:t=1,n={n}"));
        let a = has_qt_minor(&g, 1, DEFAULT_NODE_BUDGET).unwrap();
        ensure(a.is_not_found(), || format!("K_1 v M_{}: {}", n - 1, a.status()))?;
        runs += 1;
    }
    Ok(format!("{runs} searches, all NotFound"))
}

fn small_n_search() -> Verdict {
    let checks = verify_theorem_small_n(TheoremMode::Fs(1), 4..=9, &SearchOptions::default()).unwrap();
    let mut classes = 0;
    for c in &checks {
        let n = c.n;
        let star = canonical_code(&family(&format!("complete-bipartite:a=1,b={}", n - 1))).unwrap();
        let r = &c.report;
        classes += r.enumerated;
        ensure(r.matches, || format!("n = {n}: match = false"))?;
        ensure(r.maximizers == vec![star.clone()], || format!("n = {n}: maximizers {:?}, star {star}", r.maximizers))?;
        let best = r.best_rho.unwrap_or(f64::NAN);
        ensure((best - ((n - 1) as f64).sqrt()).abs() <= 1e-9, || format!("n = {n}: best_rho {best}"))?;
        ensure(c.checks_pass, || format!("n = {n}: predicted graph checks failed"))?;
    }
    ensure(checks.last().map(|c| c.report.enumerated) == Some(261080), || "n = 9 class count".into())?;
    Ok(format!("n = 4..9 all match, {classes} classes"))
}

fn oracle_equivalence() -> Verdict {
    for n in 1..=6 {
        let pairs = n * (n - 1) / 2;
        let mut classes = std::collections::HashSet::new();
        for mask in 0..1u64 << pairs {
            let g = from_mask(n, mask);
            if brute_connected(&g) {
                classes.insert(brute_canonical(&g));
            }
        }
        let got = enumerate_connected(n).unwrap().len();
        ensure(got == classes.len(), || format!("n = {n}: {got} classes, labeled filter {}", classes.len()))?;
    }
    let mut graphs = 0;
    for n in 1..=7 {
        let all = enumerate_connected(n).unwrap();
        if n == 7 {
            ensure(all.len() == 853, || format!("n = 7: {} classes", all.len()))?;
        }
        for g in &all {
            let f1 = has_fs_minor(g, 1, DEFAULT_NODE_BUDGET).unwrap();
            ensure(!f1.is_exhausted() && f1.is_found() == has_cycle(g), || format!("F_1 disagreement on {g:?}"))?;
            let q1 = has_qt_minor(g, 1, DEFAULT_NODE_BUDGET).unwrap();
            ensure(!q1.is_exhausted() && q1.is_found() == has_long_cycle(g, 4), || format!("Q_1 disagreement on {g:?}"))?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} classes, zero disagreements"))
}

fn certificate_fuzz() -> Verdict {
    let patterns = [(HubPattern::Fs(1), family("friendship:s=1")), (HubPattern::Fs(2), family("friendship:s=2")), (HubPattern::Qt(1), family("intersecting-c4:t=1"))];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut found, mut not_found) = (0, 0);
    for q in 0..10_000 {
        let n = rng.gen_range(1..=10);
        let p: f64 = rng.gen_range(0.05..0.7);
        let mut edges = Vec::new();
        for v in 0..n {
            for u in 0..v {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let host = graph(n, &edges);
        let (hub, pattern) = &patterns[rng.gen_range(0..patterns.len())];
        match hub.has_minor(&host, DEFAULT_NODE_BUDGET).unwrap() {
            MinorAnswer::Found(model) => {
                ensure(verify_model(&host, &model).unwrap(), || format!("query {q}: certificate fails on {host:?}"))?;
                found += 1;
            }
            MinorAnswer::NotFound => {
                let other = find_minor_model(&host, pattern, DEFAULT_NODE_BUDGET).unwrap();
                ensure(other.is_not_found(), || format!("query {q}: {hub} NotFound but generic search says {}", other.status()))?;
                not_found += 1;
            }
            MinorAnswer::Exhausted { .. } => return Err(format!("query {q}: exhausted on {host:?}")),
        }
    }
    Ok(format!("{found} Found verified, {not_found} NotFound confirmed"))
}

fn counterexample() -> Verdict {
    let k32 = family("complete-bipartite:a=3,b=2");
    let f2 = has_fs_minor(&k32, 2, DEFAULT_NODE_BUDGET).unwrap();
    ensure(f2.is_not_found(), || format!("F_2 on K_3,2: {}", f2.status()))?;
    let self_minor = find_minor_model(&k32, &k32, DEFAULT_NODE_BUDGET).unwrap();
    ensure(self_minor.is_found(), || format!("K_3,2 in K_3,2: {}", self_minor.status()))?;
    Ok("K_3,2 is F_2-minor-free and has a K_3,2 minor".into())
}

fn perron_bound() -> Verdict {
    let mut worst = f64::INFINITY;
    let mut graphs = 0;
    for k in 1..=3usize {
        for n in (k + 2)..=100 {
            for spec in [FamilySpec::KsJoinIndependent { s: k, n }, FamilySpec::KtJoinMatching { t: k, n }] {
                let g = speclab::construct(&spec).unwrap().0;
                let r = spectral_radius(&g, DEFAULT_TOLERANCE, DEFAULT_MAX_ITER).unwrap();
                let report = verify_perron_bound(&g, &r, 1e-8).unwrap();
                worst = worst.min(report.margin);
                ensure(report.min_entry >= 1.0 / r.rho - 1e-8, || format!("{spec}: min entry {} < 1/rho {}", report.min_entry, 1.0 / r.rho))?;
                graphs += 1;
            }
        }
    }
    Ok(format!("{graphs} graphs, smallest margin {worst:.3e}"))
}

/// Attaches `extra` new vertices, each to one earlier vertex.
fn with_pendant_trees(g: &Graph, extra: usize, rng: &mut ChaCha8Rng) -> Graph {
    let n = g.n();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for v in n..n + extra {
        edges.push((rng.gen_range(0..v), v));
    }
    Graph::from_edges(n + extra, edges).unwrap()
}

fn clique_closure() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..50 {
        let s = rng.gen_range(1..=2);
        let m = rng.gen_range(2 * s..=10);
        let base = family(&format!("complete-bipartite:a={s},b={m}"));
        let extra = rng.gen_range(1..=6);
        let host = with_pendant_trees(&base, extra, &mut rng);
        let a = VertexSet::range(host.n(), 0..s).unwrap();
        let r = clique_closure_check(&host, &a, HubPattern::Fs(s), DEFAULT_NODE_BUDGET).map_err(|e| format!("F_{s} host {i}: {e}"))?;
        ensure(r.before.is_not_found() && r.after.is_not_found(), || format!("F_{s} host {i} {host:?}: ({}, {})", r.before.status(), r.after.status()))?;
    }
    for i in 0..50 {
        let m = rng.gen_range(3..=10);
        let mut edges: Vec<(usize, usize)> = (1..=m).map(|v| (0, v)).collect();
        // a random partial matching inside B keeps the hub graph Q_1-minor-free
        let mut v = 1;
        while v < m {
            if rng.gen_bool(0.5) {
                edges.push((v, v + 1));
                v += 2;
            } else {
                v += 1;
            }
        }
        let base = graph(m + 1, &edges);
        let extra = rng.gen_range(1..=6);
        let host = with_pendant_trees(&base, extra, &mut rng);
        let a = VertexSet::range(host.n(), 0..1).unwrap();
        let r = clique_closure_check(&host, &a, HubPattern::Qt(1), DEFAULT_NODE_BUDGET).map_err(|e| format!("Q_1 host {i}: {e}"))?;
        ensure(r.before.is_not_found() && r.after.is_not_found(), || format!("Q_1 host {i} {host:?}: ({}, {})", r.before.status(), r.after.status()))?;
    }
    Ok("50 F_s hosts and 50 Q_1 hosts give (NotFound, NotFound)".into())
}

fn main() {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        ("closed-form agreement", closed_forms),
        ("edge bound equality", turan_equality),
        ("construction minor-freeness", construction_minor_freeness),
        ("small-n extremal search, s = 1", small_n_search),
        ("oracle equivalence, n <= 7", oracle_equivalence),
        ("certificate soundness fuzz", certificate_fuzz),
        ("K_3,2 counterexample regression", counterexample),
        ("Perron entry lower bound", perron_bound),
        ("clique-closure instances", clique_closure),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS  {} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {} {name}: {detail} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
