//! Property suites over seeded random networks, checked against brute force.
//!
//! Each suite draws `count` networks, checks every property on each of them
//! and aggregates the results by network index, so a report depends only on
//! the configuration and never on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dynamics::{self, Caps, Semantics, StateSet};
use crate::error::{Error, Result};
use crate::extension::{cuttable_extension, full_extension, Extension};
use crate::implicants::{find_map, geodesic_from_map, ImplicantMap, Strength};
use crate::netio::{self, export_report, PropertyRecord, Report};
use crate::network::BooleanNetwork;
use crate::random::{random_network, random_thresholds};
use crate::refinement::make_refinement;
use crate::space::{hull, partition, same, ComponentSet, State, Subspace};
use crate::structure::{
    find_linear_cut, interaction_graph, is_independent, verify_linear_cut, InteractionGraph,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Core,
    Netio,
    Structure,
    Dynamics,
    Implicants,
    Extension,
    Refinement,
    Cuts,
    All,
}

impl Suite {
    pub const EACH: [Suite; 8] = [
        Suite::Core,
        Suite::Netio,
        Suite::Structure,
        Suite::Dynamics,
        Suite::Implicants,
        Suite::Extension,
        Suite::Refinement,
        Suite::Cuts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Netio => "netio",
            Suite::Structure => "structure",
            Suite::Dynamics => "dynamics",
            Suite::Implicants => "implicants",
            Suite::Extension => "extension",
            Suite::Refinement => "refinement",
            Suite::Cuts => "cuts",
            Suite::All => "all",
        }
    }

    fn salt(self) -> u64 {
        self as u64 + 1
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .chain([&Suite::All])
            .find(|suite| suite.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HarnessConfig {
    pub seed: u64,
    pub count: usize,
    /// Largest number of components of a drawn network.
    pub n: usize,
    /// Smallest number of components of a drawn network.
    pub min_n: usize,
    pub max_indegree: usize,
    pub max_threshold: u32,
    /// Largest cuttable extension explored state by state.
    pub max_extended: usize,
    /// Largest full extension whose trap spaces are enumerated.
    pub max_full_extended: usize,
    /// Largest cuttable extension used by the linear-cut suite.
    pub max_cut_n: usize,
    pub caps: Caps,
}

impl HarnessConfig {
    pub fn new(seed: u64, count: usize, n: usize) -> Self {
        HarnessConfig {
            seed,
            count,
            n,
            min_n: n,
            max_indegree: 3,
            max_threshold: 3,
            max_extended: 12,
            max_full_extended: 16,
            max_cut_n: 8,
            caps: Caps {
                state_space: 20,
                subspaces: 16,
            },
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.min_n == 0 || self.min_n > self.n {
            return Err(Error::InvalidArgument(format!(
                "need 1 <= min_n <= n, got min_n {} and n {}",
                self.min_n, self.n
            )));
        }
        if self.max_indegree == 0 {
            return Err(Error::InvalidArgument(
                "max_indegree must be at least 1".into(),
            ));
        }
        self.caps.check_permissive(self.n)
    }
}

#[derive(Debug, Clone, Default)]
struct Prop {
    checks: u64,
    violations: u64,
    informational: bool,
    failures: Vec<String>,
}

/// Per-network property counters.
#[derive(Debug, Default)]
struct Tally {
    props: BTreeMap<&'static str, Prop>,
}

const FAILURES_KEPT: usize = 5;

impl Tally {
    fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let p = self.props.entry(name).or_default();
        p.checks += 1;
        if !ok {
            p.violations += 1;
            if p.failures.len() < FAILURES_KEPT {
                p.failures.push(detail());
            }
        }
    }

    fn informational(&mut self, name: &'static str) {
        self.props.entry(name).or_default().informational = true;
    }

    fn failed(&self) -> bool {
        self.props
            .values()
            .any(|p| p.violations > 0 && !p.informational)
    }
}

/// A drawn network that violated some property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingNetwork {
    pub suite: Suite,
    pub index: usize,
    pub seed: u64,
    pub network: BooleanNetwork,
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub report: Report,
    pub failing: Vec<FailingNetwork>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        matches!(self.report, Report::Verify { passed: true, .. })
    }

    pub fn to_json(&self) -> String {
        export_report(&self.report)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn derive_seed(parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(0x6c69_6e63_7574, |acc, &p| splitmix(acc ^ splitmix(p)))
}

const MAX_ATTEMPTS: u64 = 100_000;

/// Draws the `k`-th network of a suite, redrawing until `accept` holds.
fn draw(
    cfg: &HarnessConfig,
    suite: Suite,
    stream: u64,
    k: usize,
    sizes: (usize, usize),
    accept: impl Fn(&BooleanNetwork) -> bool,
) -> Result<(u64, BooleanNetwork)> {
    for attempt in 0..MAX_ATTEMPTS {
        let seed = derive_seed(&[cfg.seed, suite.salt(), stream, k as u64, attempt]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let size = rng.random_range(sizes.0..=sizes.1);
        let net = random_network(seed, size, cfg.max_indegree.min(size))?;
        if accept(&net) {
            return Ok((seed, net));
        }
    }
    Err(Error::InvalidArgument(format!(
        "no acceptable network for suite {suite} after {MAX_ATTEMPTS} draws"
    )))
}

fn all_states(n: usize) -> impl Iterator<Item = State> {
    (0..1u64 << n).map(move |b| State::from_bits(b, n))
}

fn sizes(cfg: &HarnessConfig) -> (usize, usize) {
    (cfg.min_n, cfg.n)
}

type Checker<'a> = dyn Fn(&BooleanNetwork, u64, &mut Tally) -> Result<()> + Sync + 'a;

fn run_instances(
    cfg: &HarnessConfig,
    suite: Suite,
    stream: u64,
    count: usize,
    size_range: (usize, usize),
    accept: &(dyn Fn(&BooleanNetwork) -> bool + Sync),
    check: &Checker<'_>,
) -> Result<Vec<(usize, u64, BooleanNetwork, Tally)>> {
    (0..count)
        .into_par_iter()
        .map(|k| {
            let (seed, net) = draw(cfg, suite, stream, k, size_range, accept)?;
            let mut tally = Tally::default();
            check(&net, seed, &mut tally)?;
            Ok((k, seed, net, tally))
        })
        .collect::<Vec<Result<_>>>()
        .into_iter()
        .collect()
}

fn merge(
    suite: Suite,
    prefix: &str,
    results: Vec<(usize, u64, BooleanNetwork, Tally)>,
    props: &mut BTreeMap<String, Prop>,
    failing: &mut Vec<FailingNetwork>,
) {
    for (k, seed, net, tally) in results {
        let failed = tally.failed();
        for (name, p) in tally.props {
            let agg = props.entry(format!("{prefix}{name}")).or_default();
            agg.checks += p.checks;
            agg.violations += p.violations;
            agg.informational |= p.informational;
            for f in p.failures {
                if agg.failures.len() < 2 * FAILURES_KEPT {
                    agg.failures.push(format!("network {k}: {f}"));
                }
            }
        }
        if failed {
            failing.push(FailingNetwork {
                suite,
                index: k,
                seed,
                network: net,
            });
        }
    }
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &HarnessConfig) -> Result<SuiteOutcome> {
    cfg.validate()?;
    let mut props = BTreeMap::new();
    let mut failing = Vec::new();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        let prefix = format!("{}/", s.name());
        for results in run_one(s, cfg)? {
            merge(s, &prefix, results, &mut props, &mut failing);
        }
    }
    let passed = props.values().all(|p| p.violations == 0 || p.informational);
    let properties = props
        .into_iter()
        .map(|(name, p)| PropertyRecord {
            name,
            checks: p.checks,
            violations: p.violations,
            informational: p.informational,
            failures: p.failures,
        })
        .collect();
    Ok(SuiteOutcome {
        report: Report::Verify {
            suite: suite.name().to_string(),
            seed: cfg.seed,
            count: cfg.count,
            n: cfg.n,
            passed,
            properties,
        },
        failing,
    })
}

type Batch = Vec<(usize, u64, BooleanNetwork, Tally)>;

fn run_one(suite: Suite, cfg: &HarnessConfig) -> Result<Vec<Batch>> {
    let any = |_: &BooleanNetwork| true;
    let caps = cfg.caps;
    Ok(match suite {
        Suite::Core => vec![run_instances(
            cfg,
            suite,
            0,
            cfg.count,
            sizes(cfg),
            &any,
            &|net, seed, t| {
                check_core(net, seed, t);
                Ok(())
            },
        )?],
        Suite::Netio => vec![run_instances(
            cfg,
            suite,
            0,
            cfg.count,
            sizes(cfg),
            &any,
            &|net, _, t| check_netio(net, &caps, t),
        )?],
        Suite::Structure => vec![run_instances(
            cfg,
            suite,
            0,
            cfg.count,
            sizes(cfg),
            &any,
            &|net, _, t| {
                check_structure(net, t);
                Ok(())
            },
        )?],
        Suite::Dynamics => vec![run_instances(
            cfg,
            suite,
            0,
            cfg.count,
            sizes(cfg),
            &any,
            &|net, _, t| check_dynamics(net, &caps, t),
        )?],
        Suite::Implicants => vec![run_instances(
            cfg,
            suite,
            0,
            cfg.count,
            sizes(cfg),
            &any,
            &|net, seed, t| check_implicants(net, seed, &caps, t),
        )?],
        Suite::Extension => {
            let (max_cut, max_full) = (cfg.max_extended, cfg.max_full_extended);
            let accept = move |net: &BooleanNetwork| {
                full_extension(net).extended().n() <= max_full
                    && cuttable_extension(net).extended().n() <= max_cut
            };
            vec![run_instances(
                cfg,
                suite,
                0,
                cfg.count,
                sizes(cfg),
                &accept,
                &|net, _, t| check_extension(net, &caps, t),
            )?]
        }
        Suite::Refinement => {
            let max_t = cfg.max_threshold;
            let small = (cfg.min_n.min(4), cfg.n.min(4));
            vec![
                run_instances(
                    cfg,
                    suite,
                    0,
                    cfg.count,
                    sizes(cfg),
                    &any,
                    &|net, seed, t| check_refinement(net, seed, max_t, &caps, t),
                )?,
                run_instances(
                    cfg,
                    suite,
                    1,
                    cfg.count.div_ceil(2),
                    small,
                    &any,
                    &|net, seed, t| check_full_extension_simulation(net, seed, max_t, &caps, t),
                )?,
            ]
        }
        Suite::Cuts => {
            let max_cut = cfg.max_cut_n;
            let accept =
                move |net: &BooleanNetwork| cuttable_extension(net).extended().n() <= max_cut;
            vec![run_instances(
                cfg,
                suite,
                0,
                cfg.count,
                sizes(cfg),
                &accept,
                &|net, _, t| {
                    let ext = cuttable_extension(net);
                    check_cut_theorems(ext.extended(), &caps, t)
                },
            )?]
        }
        Suite::All => unreachable!(),
    })
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> State {
    State::from_bits(rng.random::<u64>() & ComponentSet::full(n).bits(), n)
}

fn random_subspace(rng: &mut ChaCha8Rng, n: usize) -> Subspace {
    let mask = ComponentSet::full(n).bits();
    Subspace::from_masks(rng.random::<u64>() & mask, rng.random::<u64>() & mask, n)
}

fn check_core(net: &BooleanNetwork, seed: u64, t: &mut Tally) {
    let n = net.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0e);
    let full = ComponentSet::full(n);
    for _ in 0..16 {
        let x = random_state(&mut rng, n);
        let s = random_subspace(&mut rng, n);
        let p = partition(x, s);
        let disjoint = p.delta.intersection(p.same).is_empty()
            && p.delta.intersection(p.free).is_empty()
            && p.same.intersection(p.free).is_empty();
        t.check(
            "partition_covers",
            disjoint && p.delta.union(p.same).union(p.free) == full,
            || format!("partition of {x} against {s}"),
        );
        t.check(
            "partition_membership",
            p.delta.is_empty() == s.contains_state(x),
            || format!("{x} in {s}"),
        );

        let j = ComponentSet::from_bits(rng.random::<u64>() & full.bits());
        t.check(
            "flip_involution",
            x.flip(j).flip(j) == x && x.flip(j).diff(x) == j,
            || format!("flip {x} on {j}"),
        );

        let size = rng.random_range(1..=4);
        let a: Vec<State> = (0..size).map(|_| random_state(&mut rng, n)).collect();
        let h = hull(a.iter().copied()).expect("nonempty");
        let contains_all = a.iter().all(|&y| h.contains_state(y));
        let minimal = h.free().iter().all(|k| {
            [false, true]
                .iter()
                .all(|&v| a.iter().any(|&y| !h.with_fixed(k, v).contains_state(y)))
        });
        t.check("hull_minimal", contains_all && minimal, || {
            format!("hull {h} of {a:?}")
        });
    }

    let g = interaction_graph(net);
    for i in 0..n {
        for v in [false, true] {
            let primes = net.prime_implicants(i, v);
            let covers = all_states(n).all(|y| {
                (net.eval_component(i, y) == v) == primes.iter().any(|p| p.contains_state(y))
            });
            t.check("prime_implicants_cover", covers, || {
                format!("component {} value {}", i + 1, v as u8)
            });
            let f = net.function(i);
            let maximal = primes.iter().all(|&p| {
                f.constant_on(p) == Some(v)
                    && p.fixed()
                        .iter()
                        .all(|k| f.constant_on(p.with_free(k)) != Some(v))
            });
            let antichain = primes
                .iter()
                .all(|&p| primes.iter().all(|&q| p == q || !p.contains(q)));
            t.check("prime_implicants_maximal", maximal && antichain, || {
                format!("component {} value {}", i + 1, v as u8)
            });
            t.check(
                "prime_implicants_fix_regulators",
                primes.iter().all(|p| p.fixed().is_subset(g.regulators(i))),
                || format!("component {}", i + 1),
            );
        }
    }
}

fn same_tables(a: &BooleanNetwork, b: &BooleanNetwork) -> bool {
    a.n() == b.n() && (0..a.n()).all(|i| a.function(i) == b.function(i))
}

fn check_netio(net: &BooleanNetwork, caps: &Caps, t: &mut Tally) -> Result<()> {
    let text = netio::serialize_bnet(net);
    let back = netio::parse_bnet(&text)?;
    t.check(
        "round_trip",
        same_tables(net, &back) && back.names() == net.names(),
        || format!("serialized as {text:?}"),
    );
    let again = netio::parse_bnet(&netio::serialize_bnet(&back))?;
    t.check("round_trip_expressions", same_tables(net, &again), || {
        "expression form does not round-trip".into()
    });

    let g = interaction_graph(net);
    let dot = netio::interaction_dot(&g, net.names(), ComponentSet::empty());
    t.check(
        "dot_edges",
        dot.matches(" -> ").count() == g.edge_count(),
        || dot.clone(),
    );
    if net.n() <= caps.state_space.min(10) {
        let edges = dynamics::transitions(net, Semantics::Asynchronous, caps)?;
        let dot = netio::transitions_dot(net.n(), &edges);
        let nodes = dot
            .lines()
            .filter(|l| l.ends_with("\";") && !l.contains(" -> "))
            .count();
        t.check(
            "dot_transitions",
            nodes == 1 << net.n() && dot.matches(" -> ").count() == edges.len(),
            || format!("{} transitions", edges.len()),
        );
        let fps = dynamics::fixed_points(net, caps)?;
        let a = export_report(&Report::fixed_points(&fps));
        let value: serde_json::Value = serde_json::from_str(&a).expect("reports are JSON");
        t.check(
            "report_stable",
            a == export_report(&Report::fixed_points(&fps)) && value["kind"] == "fixed_points",
            || a.clone(),
        );
    }
    Ok(())
}

/// Edges and signs by flipping each component in every state.
fn oracle_graph(net: &BooleanNetwork) -> BTreeMap<(usize, usize), (bool, bool)> {
    let n = net.n();
    let mut out: BTreeMap<(usize, usize), (bool, bool)> = BTreeMap::new();
    for x in all_states(n) {
        for j in 0..n {
            if x.get(j) {
                continue;
            }
            let y = x.flip_one(j);
            for i in 0..n {
                let (a, b) = (net.eval_component(i, x), net.eval_component(i, y));
                if a != b {
                    let e = out.entry((j, i)).or_default();
                    if b {
                        e.0 = true;
                    } else {
                        e.1 = true;
                    }
                }
            }
        }
    }
    out
}

fn check_cut_search(g: &InteractionGraph, label: &str, t: &mut Tally) {
    let found = find_linear_cut(g, true);
    let linear = g.linear_components();
    if linear.len() <= 12 {
        let any = linear
            .subsets()
            .any(|l| verify_linear_cut(g, l).expect("in range").is_none());
        t.check(
            "cuttability_decided_by_linear_set",
            any == found.is_ok(),
            || format!("{label}: brute force says {any}"),
        );
    }
    match found {
        Ok(cut) => {
            let l = cut.members();
            t.check(
                "cut_verifies",
                verify_linear_cut(g, l).unwrap().is_none(),
                || format!("{label}: {l}"),
            );
            t.check("cut_independent", is_independent(g, l), || {
                format!("{label}: {l}")
            });
            let minimal = l
                .iter()
                .all(|m| verify_linear_cut(g, l.without(m)).unwrap().is_some());
            t.check("cut_inclusion_minimal", minimal, || format!("{label}: {l}"));
        }
        Err(_) => {
            t.check(
                "uncuttable_has_witness",
                verify_linear_cut(g, linear).unwrap().is_some(),
                || format!("{label}: linear components {linear} verify"),
            );
        }
    }
}

fn check_structure(net: &BooleanNetwork, t: &mut Tally) {
    let g = interaction_graph(net);
    let oracle = oracle_graph(net);
    let listed: BTreeMap<(usize, usize), (bool, bool)> = g
        .edges()
        .map(|(e, s)| (e, (s.positive, s.negative)))
        .collect();
    t.check("interaction_graph_oracle", listed == oracle, || {
        format!("listed {listed:?}, oracle {oracle:?}")
    });
    for i in 0..net.n() {
        let regs: ComponentSet = net.regulators(i).iter().copied().collect();
        t.check("regulators_are_essential", regs == g.regulators(i), || {
            format!("component {}", i + 1)
        });
    }
    check_cut_search(&g, "base", t);
    let ext = cuttable_extension(net);
    let eg = interaction_graph(ext.extended());
    check_cut_search(&eg, "cuttable extension", t);
    t.check(
        "cuttable_extension_is_cut",
        verify_linear_cut(&eg, ext.extender_set())
            .unwrap()
            .is_none(),
        || format!("extended edges {:?}", ext.edges()),
    );
}

fn naive_trap_spaces(net: &BooleanNetwork) -> Vec<Subspace> {
    let n = net.n();
    let mut out = Vec::new();
    for code in 0..3usize.pow(n as u32) {
        let mut s = Subspace::full(n);
        let mut c = code;
        for i in 0..n {
            match c % 3 {
                0 => s = s.with_fixed(i, false),
                1 => s = s.with_fixed(i, true),
                _ => {}
            }
            c /= 3;
        }
        if s.states().all(|x| s.contains_state(net.eval(x))) {
            out.push(s);
        }
    }
    out.sort();
    out
}

fn check_attractors(
    net: &BooleanNetwork,
    sem: Semantics,
    reach: &[StateSet],
    traps: &[Subspace],
    caps: &Caps,
    t: &mut Tally,
) -> Result<()> {
    let n = net.n();
    let attractors = dynamics::attractors(net, sem, caps)?;
    let mut owner = vec![usize::MAX; 1 << n];
    let mut disjoint = true;
    for (k, a) in attractors.iter().enumerate() {
        for s in a.states() {
            let slot = &mut owner[s.bits() as usize];
            disjoint &= *slot == usize::MAX;
            *slot = k;
        }
    }
    t.check("attractors_disjoint", disjoint, || format!("{sem}"));
    for a in &attractors {
        let first = a.states()[0];
        let closed = a
            .states()
            .iter()
            .all(|&s| reach[s.bits() as usize].iter().all(|y| a.contains(y)));
        let connected = reach[first.bits() as usize].len() == a.states().len();
        t.check(
            "attractors_terminal_components",
            closed && connected,
            || format!("{sem} attractor {:?}", a.states()),
        );
    }
    for x in all_states(n) {
        let hits = reach[x.bits() as usize]
            .iter()
            .any(|y| owner[y.bits() as usize] != usize::MAX);
        t.check("every_state_reaches_an_attractor", hits, || {
            format!("{sem} from {x}")
        });
    }
    let fixed: Vec<State> = all_states(n).filter(|&x| net.is_fixed_point(x)).collect();
    let mut singletons: Vec<State> = attractors
        .iter()
        .filter(|a| a.is_fixed_point())
        .map(|a| a.states()[0])
        .collect();
    singletons.sort_by_key(|s| s.bits());
    t.check(
        "fixed_points_are_point_attractors",
        fixed == singletons,
        || format!("{sem}: {fixed:?} vs {singletons:?}"),
    );
    for &s in traps {
        let inside = attractors
            .iter()
            .any(|a| a.states().iter().all(|&y| s.contains_state(y)));
        t.check("trap_spaces_contain_attractors", inside, || {
            format!("{sem} trap space {s}")
        });
    }
    Ok(())
}

fn check_dynamics(net: &BooleanNetwork, caps: &Caps, t: &mut Tally) -> Result<()> {
    let n = net.n();
    let mut async_reach = Vec::with_capacity(1 << n);
    let mut gen_reach = Vec::with_capacity(1 << n);
    for x in all_states(n) {
        let a = dynamics::reach_set(net, x, Semantics::Asynchronous, caps)?;
        let g = dynamics::reach_set(net, x, Semantics::Generalized, caps)?;
        let first = dynamics::permissive_first_visits(net, x, caps)?;
        let mut p = StateSet::new(n);
        let mut longest = 0;
        for (b, d) in first.iter().enumerate() {
            if let Some(d) = *d {
                p.insert(State::from_bits(b as u64, n));
                longest = longest.max(d);
            }
        }
        t.check("async_within_generalized", a.is_subset(&g), || {
            format!("from {x}")
        });
        t.check("generalized_within_permissive", g.is_subset(&p), || {
            format!("from {x}")
        });
        t.check(
            "permissive_first_visits_within_2n",
            longest <= 2 * n,
            || format!("from {x}: distance {longest}"),
        );
        let mt = dynamics::min_trap_space_containing(net, x);
        let ends = dynamics::maximal_geodesic_ends(net, x, Semantics::Permissive, caps)?;
        t.check(
            "maximal_permissive_geodesics_span_min_trap_space",
            ends == [x.flip(mt.free())],
            || format!("from {x}: ends {ends:?}, minimal trap space {mt}"),
        );
        async_reach.push(a);
        gen_reach.push(g);
    }

    if n <= caps.subspaces {
        let traps = dynamics::trap_spaces(net, caps)?;
        if n <= 8 {
            t.check(
                "trap_spaces_match_enumeration",
                traps == naive_trap_spaces(net),
                || "backtracking differs from enumeration".into(),
            );
        }
        let closed = traps.iter().all(|&a| {
            traps.iter().all(|&b| {
                a.intersect(b)
                    .is_none_or(|c| traps.binary_search(&c).is_ok())
            })
        });
        t.check("trap_spaces_closed_under_intersection", closed, String::new);
        for x in all_states(n) {
            let containing: Vec<Subspace> = traps
                .iter()
                .copied()
                .filter(|s| s.contains_state(x))
                .collect();
            let smallest = containing
                .iter()
                .copied()
                .find(|&s| containing.iter().all(|&o| o.contains(s)));
            let mt = dynamics::min_trap_space_containing(net, x);
            t.check(
                "min_trap_space_matches_enumeration",
                smallest == Some(mt),
                || format!("{x}: percolation {mt}, enumeration {smallest:?}"),
            );
        }
        check_attractors(net, Semantics::Asynchronous, &async_reach, &traps, caps, t)?;
        check_attractors(net, Semantics::Generalized, &gen_reach, &traps, caps, t)?;
    }
    Ok(())
}

fn ancestors(g: &InteractionGraph, i: usize) -> ComponentSet {
    let mut found = ComponentSet::empty();
    let mut stack = vec![i];
    while let Some(k) = stack.pop() {
        for j in g.regulators(k).iter() {
            if !found.contains(j) {
                found.insert(j);
                stack.push(j);
            }
        }
    }
    found
}

fn undirected_component(g: &InteractionGraph, i: usize) -> ComponentSet {
    let mut found = ComponentSet::singleton(i);
    let mut stack = vec![i];
    while let Some(k) = stack.pop() {
        for j in g.regulators(k).union(g.targets(k)).iter() {
            if !found.contains(j) {
                found.insert(j);
                stack.push(j);
            }
        }
    }
    found
}

fn path_is_geodesic(net: &BooleanNetwork, path: &[State], j: ComponentSet, sem: Semantics) -> bool {
    let x = path[0];
    path.len() == j.len() + 1
        && path.last() == Some(&x.flip(j))
        && path.windows(2).all(|w| {
            let d = w[0].diff(w[1]);
            d.len() == 1 && {
                let i = d.iter().next().unwrap();
                j.contains(i)
                    && !x.diff(w[0]).contains(i)
                    && dynamics::geodesic_step_enabled(net, x, w[0], i, sem)
            }
        })
}

/// Widens implicants at random while they stay implicants.
fn generalize(
    net: &BooleanNetwork,
    map: &ImplicantMap,
    rng: &mut ChaCha8Rng,
) -> Result<ImplicantMap> {
    let x = map.state();
    let mut out = Vec::new();
    for (i, mut s) in map.iter() {
        let mut fixed: Vec<usize> = s.fixed().iter().collect();
        fixed.shuffle(rng);
        for k in fixed {
            let wider = s.with_free(k);
            if rng.random::<bool>() && net.function(i).constant_on(wider) == Some(!x.get(i)) {
                s = wider;
            }
        }
        out.push((i, s));
    }
    ImplicantMap::new(net, x, out)
}

fn check_implicants(net: &BooleanNetwork, seed: u64, caps: &Caps, t: &mut Tally) -> Result<()> {
    let n = net.n();
    let g = interaction_graph(net);
    let anc: Vec<ComponentSet> = (0..n).map(|i| ancestors(&g, i)).collect();
    let comp: Vec<ComponentSet> = (0..n).map(|i| undirected_component(&g, i)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1a9);
    for x in all_states(n) {
        for j in ComponentSet::full(n).subsets() {
            for strength in [Strength::Consistent, Strength::Strong] {
                let sem = strength.semantics();
                let map = find_map(net, x, j, strength)?;
                let geo = dynamics::geodesic(net, x, j, sem, caps)?;
                let name = match strength {
                    Strength::Consistent => "consistent_map_iff_permissive_geodesic",
                    Strength::Strong => "strong_map_iff_async_geodesic",
                };
                t.check(name, map.is_some() == geo.is_some(), || {
                    format!(
                        "x={x} J={j}: map {}, geodesic {}",
                        map.is_some(),
                        geo.is_some()
                    )
                });
                let Some(map) = map else { continue };
                let path = geodesic_from_map(net, &map, strength)?;
                t.check(
                    "certificate_is_a_geodesic",
                    path_is_geodesic(net, &path, j, sem),
                    || format!("x={x} J={j} {strength:?}: {path:?}"),
                );
                for (i, s) in map.iter() {
                    let direct = map.direct_requirements(i)?;
                    let blockers = same(x, s).without(i);
                    let edges_ok = direct
                        .iter()
                        .chain(blockers.iter())
                        .all(|k| g.has_edge(k, i));
                    t.check("prime_map_requirements_are_interactions", edges_ok, || {
                        format!("x={x} J={j} component {} implicant {s}", i + 1)
                    });
                    let lifted =
                        map.required(i)?.is_subset(anc[i]) && map.erequired(i)?.is_subset(comp[i]);
                    t.check("full_requirements_follow_graph_paths", lifted, || {
                        format!("x={x} J={j} component {}", i + 1)
                    });
                }
            }
        }
    }
    // maps read off asynchronous geodesics, then widened
    for _ in 0..8 {
        let x = random_state(&mut rng, n);
        let j = ComponentSet::from_bits(rng.random::<u64>() & ComponentSet::full(n).bits());
        let Some(path) = dynamics::geodesic(net, x, j, Semantics::Asynchronous, caps)? else {
            continue;
        };
        let assignment = path
            .windows(2)
            .map(|w| (w[0].diff(w[1]).iter().next().unwrap(), Subspace::from(w[0])));
        let map = ImplicantMap::new(net, x, assignment)?;
        t.check(
            "geodesic_map_strongly_consistent",
            map.is_strongly_consistent(),
            || format!("x={x} J={j}"),
        );
        let wide = generalize(net, &map, &mut rng)?;
        t.check(
            "generalization_keeps_consistency",
            wide.is_strongly_consistent() && wide.is_consistent(),
            || format!("x={x} J={j}"),
        );
    }
    Ok(())
}

fn check_transport(ext: &Extension, label: &'static str, caps: &Caps, t: &mut Tally) -> Result<()> {
    let base = ext.base();
    let n = base.n();
    for x in all_states(n) {
        let y = ext.embed(x);
        let ok = ext.project(y) == x && (0..n).all(|i| ext.project_for(y, i) == x);
        t.check("projection_inverts_embedding", ok, || {
            format!("{label}: {x}")
        });
        let lifted = ext.embed_subspace(dynamics::min_trap_space_containing(base, x));
        let direct = dynamics::min_trap_space_containing(ext.extended(), y);
        t.check("min_trap_space_lifts", lifted == direct, || {
            format!("{label}: {x} lifts to {lifted}, extension gives {direct}")
        });
    }
    let base_traps = dynamics::trap_spaces(base, caps)?;
    let ext_traps = dynamics::trap_spaces(ext.extended(), caps)?;
    for &s in &base_traps {
        t.check("lift_is_trap_space", ext.lift_trap_space(s).is_ok(), || {
            format!("{label}: {s}")
        });
    }
    for &s in &ext_traps {
        t.check(
            "projection_is_trap_space",
            ext.project_trap_space(s).is_ok(),
            || format!("{label}: {s}"),
        );
    }
    let mut lifted_min: Vec<Subspace> = dynamics::minimal_elements(&base_traps)
        .into_iter()
        .map(|s| ext.embed_subspace(s))
        .collect();
    lifted_min.sort();
    let ext_min = dynamics::minimal_elements(&ext_traps);
    t.check(
        "minimal_trap_spaces_correspond",
        lifted_min == ext_min,
        || format!("{label}: lifted {lifted_min:?}, extension {ext_min:?}"),
    );
    Ok(())
}

fn check_extension(net: &BooleanNetwork, caps: &Caps, t: &mut Tally) -> Result<()> {
    let full = full_extension(net);
    let cut = cuttable_extension(net);
    check_transport(&full, "full", caps, t)?;
    check_transport(&cut, "cuttable", caps, t)?;

    let n = net.n();
    let base_traps = dynamics::trap_spaces(net, caps)?;
    let base_min = dynamics::minimal_elements(&base_traps);
    let full_ok = full.extended().n() <= caps.state_space;
    for x in all_states(n) {
        let reach = cut.l_reach_set(x, caps)?;
        let asy = dynamics::reach_set(net, x, Semantics::Asynchronous, caps)?;
        let gen = dynamics::reach_set(net, x, Semantics::Generalized, caps)?;
        let perm = dynamics::reach_set(net, x, Semantics::Permissive, caps)?;
        t.check("async_within_generalized", asy.is_subset(&gen), || {
            format!("from {x}")
        });
        t.check("generalized_within_l_reach", gen.is_subset(&reach), || {
            format!("from {x}")
        });
        t.check("l_reach_within_permissive", reach.is_subset(&perm), || {
            format!("from {x}")
        });
        for j in net.unstable(x).subsets().skip(1) {
            t.check(
                "generalized_steps_l_reachable",
                reach.contains(x.flip(j)),
                || format!("{x} -> {}", x.flip(j)),
            );
        }
        let mt = dynamics::min_trap_space_containing(net, x);
        for &s in base_traps.iter().filter(|&&s| mt.contains(s)) {
            let hit = reach.iter().any(|y| s.contains_state(y));
            t.check("trap_spaces_l_reachable", hit, || format!("{x} to {s}"));
        }
        if full_ok {
            let wider = full.l_reach_set(x, caps)?;
            t.check("l_reachability_monotone", reach.is_subset(&wider), || {
                format!("from {x}")
            });
        }
    }
    let ext_min = dynamics::minimal_trap_spaces(cut.extended(), caps)?;
    let attractors = dynamics::attractors(cut.extended(), Semantics::Asynchronous, caps)?;
    let mut hulls: Vec<Subspace> = attractors.iter().map(|a| a.hull()).collect();
    hulls.sort();
    hulls.dedup();
    t.check(
        "attractors_match_minimal_trap_spaces",
        hulls.len() == attractors.len() && hulls == ext_min && hulls.len() == base_min.len(),
        || format!("hulls {hulls:?}, minimal trap spaces {base_min:?}"),
    );
    Ok(())
}

fn check_refinement(
    net: &BooleanNetwork,
    seed: u64,
    max_threshold: u32,
    caps: &Caps,
    t: &mut Tally,
) -> Result<()> {
    let thresholds = random_thresholds(net, seed ^ 0x7e5, max_threshold)?;
    let r = make_refinement(net, &thresholds);
    let g = interaction_graph(net);
    let n = net.n();
    for i in 0..n {
        let expected = g
            .targets(i)
            .iter()
            .map(|j| thresholds.get(i, j).unwrap())
            .chain([1])
            .max()
            .unwrap();
        t.check(
            "maxima_follow_thresholds",
            r.maxima()[i] == expected,
            || format!("component {}", i + 1),
        );
    }
    for x in r.all_levels(caps)? {
        let extreme = (0..n).all(|i| {
            let v = r.target(&x, i);
            v == 0 || v == r.maxima()[i]
        });
        t.check("targets_are_extreme_levels", extreme, || format!("{x:?}"));
    }
    let full = full_extension(net);
    let mut reach = Vec::with_capacity(1 << n);
    for x in all_states(n) {
        let image = r.mvtobuf(&full, &r.booltostr(x))?;
        t.check(
            "mvtobuf_of_booltostr_is_embedding",
            image.as_state() == Some(full.embed(x)),
            || format!("{x}: {image}"),
        );
        reach.push(r.reach_set(&r.booltostr(x), caps)?);
    }
    for x in all_states(n) {
        for i in net.unstable(x).iter() {
            let y = x.flip_one(i);
            if net.unstable(y).contains(i) {
                continue;
            }
            t.check(
                "irreversible_steps_simulated",
                reach[x.bits() as usize].contains(&r.booltostr(y)),
                || {
                    format!(
                        "{x} -> {y} with thresholds {:?}",
                        thresholds.iter().collect::<Vec<_>>()
                    )
                },
            );
        }
    }
    if !g.has_negative_loop() {
        for x in all_states(n) {
            let boolean = dynamics::reach_set(net, x, Semantics::Asynchronous, caps)?;
            for y in boolean.iter() {
                t.check(
                    "reachability_lifts_without_negative_loops",
                    reach[x.bits() as usize].contains(&r.booltostr(y)),
                    || {
                        format!(
                            "{x} -> {y} with thresholds {:?}",
                            thresholds.iter().collect::<Vec<_>>()
                        )
                    },
                );
            }
        }
    }
    Ok(())
}

fn check_full_extension_simulation(
    net: &BooleanNetwork,
    seed: u64,
    max_threshold: u32,
    caps: &Caps,
    t: &mut Tally,
) -> Result<()> {
    let thresholds = random_thresholds(net, seed ^ 0x7e5, max_threshold)?;
    let r = make_refinement(net, &thresholds);
    let full = full_extension(net);
    let cut = cuttable_extension(net);
    t.informational("cuttable_extension_simulation");
    for x in r.all_levels(caps)? {
        for y in r.successors(&x) {
            let from = r.mvtobuf(&full, &x)?;
            let to = r.mvtobuf(&full, &y)?;
            for z in from.states() {
                let ok =
                    dynamics::geodesic_into(full.extended(), z, to, Semantics::Asynchronous, caps)?
                        .is_some();
                t.check("full_extension_simulates_refinement", ok, || {
                    format!("{x:?} -> {y:?} from {z}")
                });
            }
            let from = r.extension_subspace(&cut, &x)?;
            let to = r.extension_subspace(&cut, &y)?;
            for z in from.states() {
                let ok =
                    dynamics::geodesic_into(cut.extended(), z, to, Semantics::Asynchronous, caps)?
                        .is_some();
                t.check("cuttable_extension_simulation", ok, || {
                    format!("{x:?} -> {y:?} from {z}")
                });
            }
        }
    }
    let n = net.n();
    for x in all_states(n) {
        let refined = r.reach_set(&r.booltostr(x), caps)?;
        let e_reach = full.l_reach_set(x, caps)?;
        for y in all_states(n) {
            if refined.contains(&r.booltostr(y)) {
                t.check(
                    "refined_reachability_implies_e_reachability",
                    e_reach.contains(y),
                    || format!("{x} -> {y}"),
                );
            }
        }
    }
    Ok(())
}

/// Linear-cut consequences on a network with a linear cut, from every state
/// in which the cut components are stable.
pub fn check_cut_theorems_report(net: &BooleanNetwork, caps: &Caps) -> Result<Vec<PropertyRecord>> {
    let mut t = Tally::default();
    check_cut_theorems(net, caps, &mut t)?;
    Ok(t.props
        .into_iter()
        .map(|(name, p)| PropertyRecord {
            name: name.to_string(),
            checks: p.checks,
            violations: p.violations,
            informational: p.informational,
            failures: p.failures,
        })
        .collect())
}

fn check_cut_theorems(net: &BooleanNetwork, caps: &Caps, t: &mut Tally) -> Result<()> {
    let n = net.n();
    let g = interaction_graph(net);
    let cut = match find_linear_cut(&g, true) {
        Ok(c) => c.members(),
        Err(v) => {
            t.check("linear_cut_found", false, || v.describe(net.names()));
            return Ok(());
        }
    };
    t.check("linear_cut_found", true, String::new);
    t.informational("maximal_async_only_geodesics_delimit_min_trap_space");
    let traps = dynamics::trap_spaces(net, caps)?;
    let minimal = dynamics::minimal_elements(&traps);
    let canonical: Vec<State> = all_states(n)
        .filter(|&x| net.unstable(x).intersection(cut).is_empty())
        .collect();
    for &x in &canonical {
        let mt = dynamics::min_trap_space_containing(net, x);
        let y = x.flip(mt.free());
        let ends = dynamics::maximal_geodesic_ends(net, x, Semantics::Permissive, caps)?;
        t.check(
            "maximal_geodesics_delimit_min_trap_space",
            ends == [y],
            || format!("from {x}: ends {ends:?}, minimal trap space {mt}"),
        );
        let stuck = dynamics::maximal_geodesic_ends(net, x, Semantics::Asynchronous, caps)?;
        t.check(
            "maximal_async_only_geodesics_delimit_min_trap_space",
            stuck == [y],
            || format!("from {x}: ends {stuck:?}, minimal trap space {mt}"),
        );
        let perm = dynamics::geodesic_reach(net, x, Semantics::Permissive, caps)?;
        let asy = dynamics::geodesic_reach(net, x, Semantics::Asynchronous, caps)?;
        t.check("permissive_geodesics_are_asynchronous", perm == asy, || {
            format!("from {x}")
        });

        let dist = dynamics::distances(net, x, Semantics::Asynchronous, caps)?;
        for j in net.unstable(x).subsets().skip(1) {
            t.check(
                "generalized_successors_reachable",
                dist[x.flip(j).bits() as usize].is_some(),
                || format!("{x} -> {}", x.flip(j)),
            );
        }
        for &s in traps.iter().filter(|&&s| mt.contains(s)) {
            let best = s.states().filter_map(|y| dist[y.bits() as usize]).min();
            t.check(
                "trap_spaces_reached_within_2n",
                best.is_some_and(|d| d <= 2 * n),
                || format!("{x} to {s}: {best:?}"),
            );
        }
        let reached = (0..1u64 << n)
            .filter(|&b| dist[b as usize].is_some())
            .map(|b| State::from_bits(b, n));
        let reach_hull = hull(reached).expect("x reaches itself");
        t.check(
            "reachable_hull_is_trap_space",
            dynamics::is_trap_space(net, reach_hull),
            || format!("from {x}: {reach_hull}"),
        );

        let mut targets = vec![net.unstable(x), mt.free()];
        targets.extend((0..n).map(ComponentSet::singleton));
        for j in targets {
            let Some(map) = find_map(net, x, j, Strength::Consistent)? else {
                continue;
            };
            let unblocked = j
                .intersection(cut)
                .iter()
                .all(|i| same(x, map.get(i).unwrap()).is_empty());
            t.check("cut_components_have_no_blockers", unblocked, || {
                format!("x={x} J={j}")
            });
            t.check(
                "consistent_maps_strengthen",
                find_map(net, x, j, Strength::Strong)?.is_some(),
                || format!("x={x} J={j}"),
            );
        }
    }

    let attractors = dynamics::attractors(net, Semantics::Asynchronous, caps)?;
    let mut hulls: Vec<Subspace> = attractors.iter().map(|a| a.hull()).collect();
    for (a, &h) in attractors.iter().zip(&hulls) {
        t.check(
            "attractor_hull_is_minimal_trap_space",
            minimal.contains(&h),
            || format!("attractor {:?} hull {h}", a.states()),
        );
        for z in h.states() {
            let geo = dynamics::geodesic_reach(net, z, Semantics::Asynchronous, caps)?;
            t.check(
                "geodesic_into_attractor",
                geo.iter().any(|y| a.contains(y)),
                || format!("{z} to attractor {:?}", a.states()),
            );
        }
    }
    hulls.sort();
    hulls.dedup();
    t.check(
        "attractors_match_minimal_trap_spaces",
        hulls.len() == attractors.len() && hulls.len() == minimal.len(),
        || {
            format!(
                "{} attractors, {} minimal trap spaces",
                attractors.len(),
                minimal.len()
            )
        },
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([&Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_runs_pass_and_repeat() {
        let mut cfg = HarnessConfig::new(5, 4, 4);
        cfg.min_n = 2;
        for suite in Suite::EACH {
            let a = run_suite(suite, &cfg).unwrap();
            assert!(a.passed(), "{suite}: {}", a.to_json());
            let b = run_suite(suite, &cfg).unwrap();
            assert_eq!(a.to_json(), b.to_json());
        }
    }

    #[test]
    fn cut_theorems_on_fixtures() {
        for net in [
            fixtures::n_five(),
            fixtures::neg_cycle(),
            fixtures::n_swap(),
        ] {
            let props = check_cut_theorems_report(&net, &Caps::default()).unwrap();
            assert!(props.iter().all(|p| p.violations == 0), "{props:?}");
        }
    }

    #[test]
    fn non_canonical_states_break_the_cut_theorems() {
        // the swap network is cuttable, but 01 is not canonical and cannot reach 10
        let swap = fixtures::n_swap();
        let caps = Caps::default();
        let x: State = "01".parse().unwrap();
        let dist = dynamics::distances(&swap, x, Semantics::Asynchronous, &caps).unwrap();
        assert_eq!(dist["10".parse::<State>().unwrap().bits() as usize], None);
    }

    #[test]
    fn invalid_configurations() {
        assert!(run_suite(Suite::Core, &HarnessConfig::new(1, 1, 0)).is_err());
        assert!(run_suite(Suite::Core, &HarnessConfig::new(1, 1, 11)).is_err());
    }
}
