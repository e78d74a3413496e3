// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use krcore::enumeration::naive_component;
use krcore::generate::{planted_communities, random_instance, PlantedConfig};
use krcore::maximum::{ub_kcore, ub_kkcore, upper_bound};
use krcore::ordering::Chooser;
use krcore::oracle::max_core_size_within;
use krcore::search::NodeBudget;
use krcore::{
    advanced_enum, brute_force_maximum, brute_force_mkrc, clique_based_enum, find_maximum, fixtures, naive_enum,
    preprocess, AttributedGraph, BoundKind, Branch, CliqueConfig, EnumConfig, KrCore, MaxConfig, OrderStrategy,
    Query, SearchStats,
};

const SEEDS_PER_SETTING: u64 = 24;
const VERTICES: usize = 14;
const EDGE_DENSITY: f64 = 0.3;
const DISSIMILAR_DENSITIES: [f64; 3] = [0.0, 0.05, 0.15];
const DEGREES: [usize; 3] = [2, 3, 4];
const ORACLE_CAP: usize = 20;
const MIN_SAMPLED_STATES: usize = 10_000;
const STATES_PER_INSTANCE: usize = 100;
const COMPLETE_TREE_MAX: usize = 12;
const SCALE_K: usize = 5;
const SCALE_LIMIT: Duration = Duration::from_secs(600);

struct Instance {
    label: String,
    graph: AttributedGraph,
    query: Query,
}

fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for (di, &rho) in DISSIMILAR_DENSITIES.iter().enumerate() {
        for &k in &DEGREES {
            for s in 0..SEEDS_PER_SETTING {
                let seed = 1_000 * di as u64 + 100 * k as u64 + s;
                let (graph, sim) = random_instance(seed, VERTICES, EDGE_DENSITY, rho);
                out.push(Instance {
                    label: format!("seed={seed} rho={rho} k={k}"),
                    graph,
                    query: Query::new(k, sim).unwrap(),
                });
            }
        }
    }
    out
}

fn orders() -> Vec<OrderStrategy> {
    vec![
        OrderStrategy::D1ThenD2,
        OrderStrategy::LambdaScore(5.0),
        OrderStrategy::LambdaScore(0.0),
        OrderStrategy::DegreeGreedy,
        OrderStrategy::Random(7),
    ]
}

struct Report {
    failures: usize,
}

impl Report {
    fn line(&mut self, id: u32, name: &str, ok: bool, detail: String) {
        if !ok {
            self.failures += 1;
        }
        println!("criterion {id} {name}: {} ({detail})", if ok { "PASS" } else { "FAIL" });
    }
}

fn enum_cfg(order: OrderStrategy) -> EnumConfig {
    EnumConfig {
        order,
        verify_invariants: true,
        threads: Some(1),
        ..EnumConfig::default()
    }
}

fn show(cores: &[KrCore]) -> Vec<Vec<u32>> {
    cores.iter().map(|c| c.vertices().to_vec()).collect()
}

/// Random descent from each component root, recording every live state.
fn sample_states(inst: &Instance, seed: u64, want: usize) -> Vec<(krcore::Component, krcore::SearchState)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let comps = preprocess(&inst.graph, &inst.query).unwrap();
    let mut out = Vec::new();
    if comps.is_empty() {
        return out;
    }
    let mut stats = SearchStats::default();
    let mut attempts = 0;
    while out.len() < want && attempts < want * 4 {
        attempts += 1;
        let comp = &comps[rng.random_range(0..comps.len())];
        let mut s = comp.root_state();
        loop {
            out.push((comp.clone(), s.clone()));
            let c = s.c().to_vec();
            if c.is_empty() || out.len() >= want {
                break;
            }
            let u = c[rng.random_range(0..c.len())];
            let b = if rng.random_bool(0.5) { Branch::Expand } else { Branch::Shrink };
            match s.refine(comp, u, b, &mut stats).unwrap().alive() {
                Some(next) => s = next,
                None => break,
            }
        }
    }
    out
}

fn main() -> ExitCode {
    let mut report = Report { failures: 0 };
    let insts = instances();
    let started = Instant::now();

    // 1 and 5: enumeration against the oracle, invariants at every node
    let mut mismatches = Vec::new();
    let mut violations = 0u64;
    let mut nodes = 0u64;
    let mut oracle_cores = Vec::with_capacity(insts.len());
    let mut advanced_cores = Vec::with_capacity(insts.len());
    for inst in &insts {
        let want = brute_force_mkrc(&inst.graph, &inst.query, ORACLE_CAP).unwrap();
        let got = advanced_enum(&inst.graph, &inst.query, &enum_cfg(OrderStrategy::D1ThenD2)).unwrap();
        for c in &got.cores {
            KrCore::validated(&inst.graph, &inst.query, c.vertices().to_vec()).unwrap();
        }
        violations += got.stats.invariant_violations;
        nodes += got.stats.nodes_visited;
        if got.cores != want {
            mismatches.push(format!("{}: got {:?} want {:?}", inst.label, show(&got.cores), show(&want)));
        }
        oracle_cores.push(want);
        advanced_cores.push(got.cores);
    }
    let nonempty = oracle_cores.iter().filter(|c| !c.is_empty()).count();
    report.line(
        1,
        "oracle equivalence (enumeration)",
        mismatches.is_empty() && insts.len() >= 200,
        format!(
            "{} instances, {} with cores, {} mismatches, {:.1}s{}",
            insts.len(),
            nonempty,
            mismatches.len(),
            started.elapsed().as_secs_f64(),
            mismatches.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );

    // 2: maximum against the oracle, every bound
    let mut bad = Vec::new();
    for inst in &insts {
        let want = brute_force_maximum(&inst.graph, &inst.query, ORACLE_CAP).unwrap().map_or(0, |c| c.len());
        for bound in BoundKind::ALL {
            let cfg = MaxConfig {
                bound,
                ..MaxConfig::default()
            };
            let got = find_maximum(&inst.graph, &inst.query, &cfg).unwrap();
            if let Some(best) = &got.best {
                KrCore::validated(&inst.graph, &inst.query, best.vertices().to_vec()).unwrap();
            }
            if got.size() != want {
                bad.push(format!("{} {bound}: {} vs {want}", inst.label, got.size()));
            }
        }
    }
    report.line(
        2,
        "oracle equivalence (maximum, all bounds)",
        bad.is_empty(),
        format!(
            "{} runs, {} mismatches{}",
            insts.len() * 4,
            bad.len(),
            bad.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );

    // 3: clique baseline against the advanced search
    let mut bad = Vec::new();
    for (inst, adv) in insts.iter().zip(&advanced_cores) {
        let got = clique_based_enum(&inst.graph, &inst.query, &CliqueConfig::default()).unwrap();
        if &got.cores != adv {
            bad.push(inst.label.clone());
        }
    }
    report.line(
        3,
        "clique baseline equivalence",
        bad.is_empty(),
        format!("{} instances, {} mismatches", insts.len(), bad.len()),
    );

    // 4: bound soundness and dominance on sampled states, plus the gap witness
    let mut sampled = 0usize;
    let mut unsound = Vec::new();
    let mut not_dominated = 0usize;
    let mut strictly_tighter = 0usize;
    for (i, inst) in insts.iter().enumerate() {
        for (comp, s) in sample_states(inst, 9_000 + i as u64, STATES_PER_INSTANCE) {
            sampled += 1;
            let span: Vec<u32> = s.span().iter().map(|u| comp.global(u)).collect();
            let truth = max_core_size_within(&inst.graph, &inst.query, &span).unwrap();
            for bound in BoundKind::ALL {
                let b = upper_bound(bound, &comp, &s);
                if b < truth {
                    unsound.push(format!("{} {bound}: {b} < {truth}", inst.label));
                }
            }
            let (kk, kc) = (ub_kkcore(&comp, &s), ub_kcore(&comp, &s));
            if kk > kc {
                not_dominated += 1;
            }
            if kk < kc {
                strictly_tighter += 1;
            }
        }
    }
    let (g, sim) = fixtures::bound_gap();
    let q = Query::new(3, sim).unwrap();
    let comp = preprocess(&g, &q).unwrap().remove(0);
    let root = comp.root_state();
    let (wk, wkk) = (ub_kcore(&comp, &root), ub_kkcore(&comp, &root));
    let wmax = brute_force_maximum(&g, &q, ORACLE_CAP).unwrap().map_or(0, |c| c.len());
    let witness_ok = wk == 5 && wkk == 4 && wmax == 4;
    report.line(
        4,
        "bound soundness and dominance",
        unsound.is_empty() && not_dominated == 0 && sampled >= MIN_SAMPLED_STATES && witness_ok,
        format!(
            "{sampled} states, {} unsound, {not_dominated} kkcore > kcore, {strictly_tighter} strictly tighter; \
             witness kcore={wk} kkcore={wkk} max={wmax}{}",
            unsound.len(),
            unsound.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );

    report.line(
        5,
        "node invariants",
        violations == 0,
        format!("{nodes} nodes checked, {violations} violations"),
    );

    // 6: search-space monotonicity
    let mut node_bad = Vec::new();
    let mut cut_bad = Vec::new();
    let (mut adv_nodes, mut basic_nodes) = (0u64, 0u64);
    let mut cuts_total = [0u64; 3];
    let mut bound_nodes = [0u64; 3];
    for inst in &insts {
        let cfg = enum_cfg(OrderStrategy::D1ThenD2);
        let adv = advanced_enum(&inst.graph, &inst.query, &cfg).unwrap();
        let basic = naive_enum(&inst.graph, &inst.query, true, &cfg).unwrap();
        adv_nodes += adv.stats.nodes_visited;
        basic_nodes += basic.stats.nodes_visited;
        if adv.stats.nodes_visited > basic.stats.nodes_visited {
            node_bad.push(format!(
                "{}: {} > {}",
                inst.label, adv.stats.nodes_visited, basic.stats.nodes_visited
            ));
        }
        let runs: Vec<SearchStats> = [BoundKind::Naive, BoundKind::KCore, BoundKind::KKCore]
            .into_iter()
            .map(|bound| {
                let cfg = MaxConfig {
                    bound,
                    ..MaxConfig::default()
                };
                find_maximum(&inst.graph, &inst.query, &cfg).unwrap().stats
            })
            .collect();
        let cuts: Vec<u64> = runs.iter().map(|s| s.bound_cutoffs).collect();
        for (i, s) in runs.iter().enumerate() {
            cuts_total[i] += s.bound_cutoffs;
            bound_nodes[i] += s.nodes_visited;
        }
        if !(cuts[2] >= cuts[1] && cuts[1] >= cuts[0]) {
            cut_bad.push(format!("{}: naive={} kcore={} kkcore={}", inst.label, cuts[0], cuts[1], cuts[2]));
        }
    }
    report.line(
        6,
        "search-space monotonicity",
        node_bad.is_empty() && cut_bad.is_empty(),
        format!(
            "nodes advanced={adv_nodes} basic={basic_nodes}, {} node violations; \
             cutoffs naive={} kcore={} kkcore={}, {} ordering violations; \
             maximum-search nodes naive={} kcore={} kkcore={}{}{}",
            node_bad.len(),
            cuts_total[0],
            cuts_total[1],
            cuts_total[2],
            cut_bad.len(),
            bound_nodes[0],
            bound_nodes[1],
            bound_nodes[2],
            node_bad.first().map(|m| format!("; first node: {m}")).unwrap_or_default(),
            cut_bad.first().map(|m| format!("; first cutoff: {m}")).unwrap_or_default()
        ),
    );

    // 7: the unpruned tree has exactly 2^|S| leaves per component
    let mut checked = 0usize;
    let mut bad = Vec::new();
    let budget = NodeBudget::default();
    for inst in &insts {
        for comp in preprocess(&inst.graph, &inst.query).unwrap() {
            if comp.len() > COMPLETE_TREE_MAX {
                continue;
            }
            let mut stats = SearchStats::default();
            let mut chooser = Chooser::new(OrderStrategy::D1ThenD2);
            naive_component(&comp, false, &mut chooser, &budget, &mut stats).unwrap();
            checked += 1;
            if stats.leaves != 1u64 << comp.len() {
                bad.push(format!("{}: {} leaves for {} vertices", inst.label, stats.leaves, comp.len()));
            }
        }
    }
    report.line(
        7,
        "complete naive tree",
        bad.is_empty() && checked > 0,
        format!("{checked} components of at most {COMPLETE_TREE_MAX} vertices, {} mismatches", bad.len()),
    );

    // 8: order invariance
    let mut bad = Vec::new();
    for (inst, reference) in insts.iter().zip(&advanced_cores) {
        let want = reference.iter().map(KrCore::len).max().unwrap_or(0);
        for order in orders() {
            let e = advanced_enum(&inst.graph, &inst.query, &enum_cfg(order)).unwrap();
            if &e.cores != reference {
                bad.push(format!("{} {order:?} enumeration", inst.label));
            }
            let cfg = MaxConfig {
                order,
                ..MaxConfig::default()
            };
            let m = find_maximum(&inst.graph, &inst.query, &cfg).unwrap();
            if m.size() != want {
                bad.push(format!("{} {order:?} maximum {} vs {want}", inst.label, m.size()));
            }
        }
    }
    report.line(
        8,
        "order invariance",
        bad.is_empty(),
        format!(
            "{} instances x {} orders, {} mismatches{}",
            insts.len(),
            orders().len(),
            bad.len(),
            bad.first().map(|m| format!("; first: {m}")).unwrap_or_default()
        ),
    );

    // 9: planted-community scale run, twice
    let cfg = PlantedConfig::default();
    let (g, sim) = planted_communities(2024, &cfg);
    let q = Query::new(SCALE_K, sim).unwrap();
    let mut runs = Vec::new();
    let t = Instant::now();
    for _ in 0..2 {
        let t = Instant::now();
        let r = advanced_enum(&g, &q, &EnumConfig::default());
        runs.push((r, t.elapsed()));
    }
    let detail;
    let ok = match (&runs[0], &runs[1]) {
        ((Ok(a), ta), (Ok(b), tb)) => {
            let distinct: HashSet<&KrCore> = a.cores.iter().collect();
            detail = format!(
                "n={} m={} k={SCALE_K}: {} cores (max size {}, {} distinct), {} nodes, runs {:.1}s and {:.1}s, identical={}",
                g.vertex_count(),
                g.edge_count(),
                a.cores.len(),
                a.max_size(),
                distinct.len(),
                a.stats.nodes_visited,
                ta.as_secs_f64(),
                tb.as_secs_f64(),
                a.cores == b.cores
            );
            !a.cores.is_empty() && a.cores == b.cores && *ta < SCALE_LIMIT && *tb < SCALE_LIMIT
        }
        ((Err(e), _), _) | (_, (Err(e), _)) => {
            detail = format!("run failed: {e}");
            false
        }
    };
    report.line(9, "planted-community scale run", ok && t.elapsed() < 2 * SCALE_LIMIT, detail);

    println!(
        "acceptance: {} of 9 criteria passed in {:.1}s",
        9 - report.failures,
        started.elapsed().as_secs_f64()
    );
    if report.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
