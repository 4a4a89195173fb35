//! Transition semantics, reachability, geodesics, attractors and trap spaces.
//!
//! Explicit-state throughout: every exploration enumerates concrete states,
//! so each entry point checks the component count against [`Caps`].

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::space::{span, ComponentSet, State, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Semantics {
    Synchronous,
    Asynchronous,
    Generalized,
    Permissive,
}

impl Semantics {
    pub fn name(self) -> &'static str {
        match self {
            Semantics::Synchronous => "synchronous",
            Semantics::Asynchronous => "asynchronous",
            Semantics::Generalized => "generalized",
            Semantics::Permissive => "permissive",
        }
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Semantics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sync" | "synchronous" => Ok(Semantics::Synchronous),
            "async" | "asynchronous" => Ok(Semantics::Asynchronous),
            "general" | "generalized" => Ok(Semantics::Generalized),
            "permissive" => Ok(Semantics::Permissive),
            _ => Err(Error::InvalidArgument(format!("unknown semantics `{s}`"))),
        }
    }
}

/// Size limits for explicit enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest component count for 2^n state exploration. Permissive
    /// exploration works on 4^n configurations and needs 2n within this cap.
    pub state_space: usize,
    /// Largest component count for trap-space enumeration.
    pub subspaces: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            state_space: 20,
            subspaces: 12,
        }
    }
}

impl Caps {
    pub fn unbounded() -> Self {
        Caps {
            state_space: 40,
            subspaces: 64,
        }
    }

    pub fn check_states(&self, n: usize) -> Result<()> {
        if n > self.state_space || n > 40 {
            return Err(Error::CapExceeded {
                n,
                cap: self.state_space.min(40),
            });
        }
        Ok(())
    }

    pub fn check_permissive(&self, n: usize) -> Result<()> {
        if 2 * n > self.state_space || n > 20 {
            return Err(Error::CapExceeded {
                n,
                cap: (self.state_space / 2).min(20),
            });
        }
        Ok(())
    }

    pub fn check_subspaces(&self, n: usize) -> Result<()> {
        if n > self.subspaces {
            return Err(Error::CapExceeded {
                n,
                cap: self.subspaces,
            });
        }
        Ok(())
    }
}

/// Dense set of states of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSet {
    n: usize,
    words: Vec<u64>,
    count: usize,
}

impl StateSet {
    pub fn new(n: usize) -> Self {
        let size = 1usize << n;
        StateSet {
            n,
            words: vec![0; size.div_ceil(64)],
            count: 0,
        }
    }

    /// Inserts, returning true when the state was not present.
    pub fn insert(&mut self, x: State) -> bool {
        let b = x.bits() as usize;
        let (w, m) = (b / 64, 1u64 << (b % 64));
        if self.words[w] & m == 0 {
            self.words[w] |= m;
            self.count += 1;
            true
        } else {
            false
        }
    }

    pub fn contains(&self, x: State) -> bool {
        let b = x.bits() as usize;
        self.words[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = State> + '_ {
        let n = self.n;
        self.words.iter().enumerate().flat_map(move |(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as u64;
                rest &= rest - 1;
                Some(State::from_bits(w as u64 * 64 + b, n))
            })
        })
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

/// Successors of `x` in a classical semantics, in ascending order of the
/// flipped set.
pub fn successors(net: &BooleanNetwork, x: State, sem: Semantics) -> Result<Vec<State>> {
    let unstable = net.unstable(x);
    Ok(match sem {
        Semantics::Synchronous => {
            if unstable.is_empty() {
                Vec::new()
            } else {
                vec![x.flip(unstable)]
            }
        }
        Semantics::Asynchronous => unstable.iter().map(|i| x.flip_one(i)).collect(),
        Semantics::Generalized => unstable.subsets().skip(1).map(|j| x.flip(j)).collect(),
        Semantics::Permissive => return Err(Error::UnsupportedSemantics("permissive")),
    })
}

fn push_successors(net: &BooleanNetwork, x: State, sem: Semantics, out: &mut Vec<State>) {
    let unstable = net.unstable(x);
    match sem {
        Semantics::Synchronous => {
            if !unstable.is_empty() {
                out.push(x.flip(unstable));
            }
        }
        Semantics::Asynchronous => out.extend(unstable.iter().map(|i| x.flip_one(i))),
        Semantics::Generalized => out.extend(unstable.subsets().skip(1).map(|j| x.flip(j))),
        Semantics::Permissive => unreachable!("permissive successors are configuration based"),
    }
}

/// Position in a permissive trajectory: the current state and the components
/// changed at least once so far. The prefix hull is the start state with the
/// varied components freed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PermissiveConfig {
    pub current: State,
    pub varied: ComponentSet,
}

impl PermissiveConfig {
    pub fn initial(start: State) -> Self {
        PermissiveConfig {
            current: start,
            varied: ComponentSet::empty(),
        }
    }

    pub fn hull(self, start: State) -> Subspace {
        Subspace::from(start).freeing(self.varied)
    }
}

/// Caches, per varied set, which values each update function takes on the
/// prefix hull of a fixed start state.
struct HullValues<'a> {
    net: &'a BooleanNetwork,
    start: State,
    cache: HashMap<u64, (u64, u64)>,
}

impl<'a> HullValues<'a> {
    fn new(net: &'a BooleanNetwork, start: State) -> Self {
        HullValues {
            net,
            start,
            cache: HashMap::new(),
        }
    }

    /// (components taking 0 somewhere on the hull, components taking 1 somewhere)
    fn masks(&mut self, varied: ComponentSet) -> (u64, u64) {
        let net = self.net;
        let start = self.start;
        *self.cache.entry(varied.bits()).or_insert_with(|| {
            let hull = Subspace::from(start).freeing(varied);
            let (mut zeros, mut ones) = (0u64, 0u64);
            for i in 0..net.n() {
                let (z, o) = net.function(i).values_on(hull);
                zeros |= (z as u64) << i;
                ones |= (o as u64) << i;
            }
            (zeros, ones)
        })
    }

    /// Components whose flip is enabled in the configuration.
    fn enabled(&mut self, cfg: PermissiveConfig) -> ComponentSet {
        let (zeros, ones) = self.masks(cfg.varied);
        let cur = cfg.current.bits();
        let n_mask = ComponentSet::full(self.net.n()).bits();
        ComponentSet::from_bits(((cur & zeros) | (!cur & ones)) & n_mask)
    }
}

/// Successor configurations of a permissive trajectory started in `start`.
pub fn permissive_successors(
    net: &BooleanNetwork,
    start: State,
    cfg: PermissiveConfig,
) -> Vec<PermissiveConfig> {
    let mut hv = HullValues::new(net, start);
    hv.enabled(cfg)
        .iter()
        .map(|i| PermissiveConfig {
            current: cfg.current.flip_one(i),
            varied: cfg.varied.with(i),
        })
        .collect()
}

fn rebuild_path(parent: &HashMap<State, State>, start: State, end: State) -> Vec<State> {
    let mut path = vec![end];
    let mut cur = end;
    while cur != start {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// Shortest path from `x` to a state satisfying `target`, or `None`.
pub fn reachable(
    net: &BooleanNetwork,
    x: State,
    sem: Semantics,
    target: impl Fn(State) -> bool,
    caps: &Caps,
) -> Result<Option<Vec<State>>> {
    if sem == Semantics::Permissive {
        return permissive_reachable(net, x, target, caps);
    }
    caps.check_states(net.n())?;
    if target(x) {
        return Ok(Some(vec![x]));
    }
    let mut seen = StateSet::new(net.n());
    let mut parent = HashMap::new();
    let mut queue = VecDeque::from([x]);
    seen.insert(x);
    let mut buf = Vec::new();
    while let Some(s) = queue.pop_front() {
        buf.clear();
        push_successors(net, s, sem, &mut buf);
        for &t in &buf {
            if seen.insert(t) {
                parent.insert(t, s);
                if target(t) {
                    return Ok(Some(rebuild_path(&parent, x, t)));
                }
                queue.push_back(t);
            }
        }
    }
    Ok(None)
}

fn config_index(cfg: PermissiveConfig, n: usize) -> usize {
    ((cfg.current.bits() << n) | cfg.varied.bits()) as usize
}

fn permissive_reachable(
    net: &BooleanNetwork,
    x: State,
    target: impl Fn(State) -> bool,
    caps: &Caps,
) -> Result<Option<Vec<State>>> {
    let n = net.n();
    caps.check_permissive(n)?;
    if target(x) {
        return Ok(Some(vec![x]));
    }
    let mut hv = HullValues::new(net, x);
    let mut seen = vec![false; 1usize << (2 * n)];
    let mut parent: HashMap<PermissiveConfig, PermissiveConfig> = HashMap::new();
    let init = PermissiveConfig::initial(x);
    seen[config_index(init, n)] = true;
    let mut queue = VecDeque::from([init]);
    while let Some(cfg) = queue.pop_front() {
        for i in hv.enabled(cfg).iter() {
            let next = PermissiveConfig {
                current: cfg.current.flip_one(i),
                varied: cfg.varied.with(i),
            };
            let idx = config_index(next, n);
            if !seen[idx] {
                seen[idx] = true;
                parent.insert(next, cfg);
                if target(next.current) {
                    let mut path = vec![next.current];
                    let mut cur = next;
                    while cur != init {
                        cur = parent[&cur];
                        path.push(cur.current);
                    }
                    path.reverse();
                    return Ok(Some(path));
                }
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// All states reachable from `x` (including `x`).
pub fn reach_set(net: &BooleanNetwork, x: State, sem: Semantics, caps: &Caps) -> Result<StateSet> {
    if sem == Semantics::Permissive {
        let visits = permissive_first_visits(net, x, caps)?;
        let mut set = StateSet::new(net.n());
        for (b, d) in visits.iter().enumerate() {
            if d.is_some() {
                set.insert(State::from_bits(b as u64, net.n()));
            }
        }
        return Ok(set);
    }
    caps.check_states(net.n())?;
    let mut seen = StateSet::new(net.n());
    seen.insert(x);
    let mut stack = vec![x];
    let mut buf = Vec::new();
    while let Some(s) = stack.pop() {
        buf.clear();
        push_successors(net, s, sem, &mut buf);
        for &t in &buf {
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    Ok(seen)
}

/// Breadth-first distances from `x` in a classical semantics; entry `b`
/// holds the distance to the state with bits `b`.
pub fn distances(
    net: &BooleanNetwork,
    x: State,
    sem: Semantics,
    caps: &Caps,
) -> Result<Vec<Option<usize>>> {
    if sem == Semantics::Permissive {
        return permissive_first_visits(net, x, caps);
    }
    caps.check_states(net.n())?;
    let mut dist = vec![None; 1usize << net.n()];
    dist[x.bits() as usize] = Some(0);
    let mut queue = VecDeque::from([(x, 0usize)]);
    let mut buf = Vec::new();
    while let Some((s, d)) = queue.pop_front() {
        buf.clear();
        push_successors(net, s, sem, &mut buf);
        for &t in &buf {
            let slot = &mut dist[t.bits() as usize];
            if slot.is_none() {
                *slot = Some(d + 1);
                queue.push_back((t, d + 1));
            }
        }
    }
    Ok(dist)
}

/// Breadth-first search over permissive configurations from `x`; entry `b`
/// holds the first-visit distance of the state with bits `b`.
pub fn permissive_first_visits(
    net: &BooleanNetwork,
    x: State,
    caps: &Caps,
) -> Result<Vec<Option<usize>>> {
    let n = net.n();
    caps.check_permissive(n)?;
    let mut hv = HullValues::new(net, x);
    let mut first = vec![None; 1usize << n];
    let mut seen = vec![false; 1usize << (2 * n)];
    let init = PermissiveConfig::initial(x);
    seen[config_index(init, n)] = true;
    first[x.bits() as usize] = Some(0);
    let mut queue = VecDeque::from([(init, 0usize)]);
    while let Some((cfg, d)) = queue.pop_front() {
        for i in hv.enabled(cfg).iter() {
            let next = PermissiveConfig {
                current: cfg.current.flip_one(i),
                varied: cfg.varied.with(i),
            };
            let idx = config_index(next, n);
            if !seen[idx] {
                seen[idx] = true;
                let slot = &mut first[next.current.bits() as usize];
                if slot.is_none() {
                    *slot = Some(d + 1);
                }
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(first)
}

/// Whether a geodesic from `x`, currently at `z`, may flip the unused
/// component `i` under an asynchronous or permissive semantics.
pub fn geodesic_step_enabled(
    net: &BooleanNetwork,
    x: State,
    z: State,
    i: usize,
    sem: Semantics,
) -> bool {
    match sem {
        Semantics::Asynchronous => net.eval_component(i, z) != z.get(i),
        Semantics::Permissive => {
            let (zero, one) = net.function(i).values_on(span(x, z));
            if x.get(i) {
                zero
            } else {
                one
            }
        }
        _ => false,
    }
}

fn check_geodesic_semantics(sem: Semantics) -> Result<()> {
    match sem {
        Semantics::Asynchronous | Semantics::Permissive => Ok(()),
        other => Err(Error::UnsupportedSemantics(other.name())),
    }
}

/// A geodesic from `x` to x̄^J (each component of `j` flipped exactly once),
/// asynchronous or permissive.
pub fn geodesic(
    net: &BooleanNetwork,
    x: State,
    j: ComponentSet,
    sem: Semantics,
    caps: &Caps,
) -> Result<Option<Vec<State>>> {
    check_geodesic_semantics(sem)?;
    caps.check_states(j.len())?;
    let goal = x.flip(j);
    if j.is_empty() {
        return Ok(Some(vec![x]));
    }
    let mut parent = HashMap::new();
    let mut seen = HashSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(z) = queue.pop_front() {
        let unused = j.difference(x.diff(z));
        for i in unused.iter() {
            if geodesic_step_enabled(net, x, z, i, sem) {
                let w = z.flip_one(i);
                if seen.insert(w) {
                    parent.insert(w, z);
                    if w == goal {
                        return Ok(Some(rebuild_path(&parent, x, w)));
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(None)
}

/// A geodesic from `x` to some state of `t`. Components fixed in `t` at
/// their value in `x` are never flipped, since a geodesic cannot undo a flip.
pub fn geodesic_into(
    net: &BooleanNetwork,
    x: State,
    t: Subspace,
    sem: Semantics,
    caps: &Caps,
) -> Result<Option<Vec<State>>> {
    check_geodesic_semantics(sem)?;
    let movable = crate::space::delta(x.into(), t).union(t.free());
    caps.check_states(movable.len())?;
    if t.contains_state(x) {
        return Ok(Some(vec![x]));
    }
    let mut parent = HashMap::new();
    let mut seen = HashSet::from([x]);
    let mut queue = VecDeque::from([x]);
    while let Some(z) = queue.pop_front() {
        for i in movable.difference(x.diff(z)).iter() {
            if geodesic_step_enabled(net, x, z, i, sem) {
                let w = z.flip_one(i);
                if seen.insert(w) {
                    parent.insert(w, z);
                    if t.contains_state(w) {
                        return Ok(Some(rebuild_path(&parent, x, w)));
                    }
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(None)
}

/// Every state reachable from `x` by a geodesic, as a set.
pub fn geodesic_reach(
    net: &BooleanNetwork,
    x: State,
    sem: Semantics,
    caps: &Caps,
) -> Result<StateSet> {
    check_geodesic_semantics(sem)?;
    caps.check_states(net.n())?;
    let all = ComponentSet::full(net.n());
    let mut seen = StateSet::new(net.n());
    seen.insert(x);
    let mut stack = vec![x];
    while let Some(z) = stack.pop() {
        for i in all.difference(x.diff(z)).iter() {
            if geodesic_step_enabled(net, x, z, i, sem) {
                let w = z.flip_one(i);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
    }
    Ok(seen)
}

/// End states of maximal geodesics from `x`, sorted.
pub fn maximal_geodesic_ends(
    net: &BooleanNetwork,
    x: State,
    sem: Semantics,
    caps: &Caps,
) -> Result<Vec<State>> {
    let reach = geodesic_reach(net, x, sem, caps)?;
    let all = ComponentSet::full(net.n());
    let mut ends: Vec<State> = reach
        .iter()
        .filter(|&z| {
            !all.difference(x.diff(z))
                .iter()
                .any(|i| geodesic_step_enabled(net, x, z, i, sem))
        })
        .collect();
    ends.sort();
    Ok(ends)
}

/// A terminal strongly connected component of a transition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attractor {
    states: Vec<State>,
}

impl Attractor {
    pub fn new(mut states: Vec<State>) -> Self {
        states.sort();
        Attractor { states }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn is_fixed_point(&self) -> bool {
        self.states.len() == 1
    }

    pub fn contains(&self, x: State) -> bool {
        self.states.binary_search(&x).is_ok()
    }

    pub fn hull(&self) -> Subspace {
        crate::space::hull(self.states.iter().copied()).expect("attractors are nonempty")
    }
}

/// Terminal SCCs of an implicit graph on `0..size` (iterative Tarjan).
pub fn terminal_sccs(size: usize, succ: impl Fn(usize, &mut Vec<usize>)) -> Vec<Vec<usize>> {
    const UNSEEN: u32 = u32::MAX;
    let mut index = vec![UNSEEN; size];
    let mut low = vec![0u32; size];
    let mut on_stack = vec![false; size];
    let mut comp = vec![UNSEEN; size];
    let mut stack: Vec<usize> = Vec::new();
    let mut sccs: Vec<Vec<usize>> = Vec::new();
    let mut counter = 0u32;
    let mut frames: Vec<(usize, Vec<usize>, usize)> = Vec::new();

    for root in 0..size {
        if index[root] != UNSEEN {
            continue;
        }
        let mut out = Vec::new();
        succ(root, &mut out);
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, out, 0));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    let mut out = Vec::new();
                    succ(w, &mut out);
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, out, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let id = sccs.len() as u32;
                    let mut members = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = id;
                        members.push(w);
                        if w == v {
                            break;
                        }
                    }
                    sccs.push(members);
                }
            }
        }
    }

    let mut buf = Vec::new();
    sccs.into_iter()
        .enumerate()
        .filter(|(id, members)| {
            members.iter().all(|&v| {
                buf.clear();
                succ(v, &mut buf);
                buf.iter().all(|&w| comp[w] == *id as u32)
            })
        })
        .map(|(_, members)| members)
        .collect()
}

/// Attractors of a classical semantics, sorted by their smallest state.
pub fn attractors(net: &BooleanNetwork, sem: Semantics, caps: &Caps) -> Result<Vec<Attractor>> {
    if sem == Semantics::Permissive {
        return Err(Error::UnsupportedSemantics("permissive"));
    }
    let n = net.n();
    caps.check_states(n)?;
    let sccs = terminal_sccs(1usize << n, |v, out| {
        let mut states = Vec::new();
        push_successors(net, State::from_bits(v as u64, n), sem, &mut states);
        out.extend(states.iter().map(|s| s.bits() as usize));
    });
    let mut result: Vec<Attractor> = sccs
        .into_iter()
        .map(|m| {
            Attractor::new(
                m.into_iter()
                    .map(|b| State::from_bits(b as u64, n))
                    .collect(),
            )
        })
        .collect();
    result.sort_by(|a, b| a.states[0].cmp(&b.states[0]));
    Ok(result)
}

/// Fixed points, sorted.
pub fn fixed_points(net: &BooleanNetwork, caps: &Caps) -> Result<Vec<State>> {
    caps.check_states(net.n())?;
    let n = net.n();
    Ok((0..1u64 << n)
        .map(|b| State::from_bits(b, n))
        .filter(|&x| net.is_fixed_point(x))
        .collect())
}

/// Every fixed coordinate `i` of `t` has `f_i` constantly `t_i` on `t`.
pub fn is_trap_space(net: &BooleanNetwork, t: Subspace) -> bool {
    t.fixed()
        .iter()
        .all(|i| net.function(i).constant_on(t) == t.get(i))
}

/// The smallest trap space containing `t`, by repeatedly freeing fixed
/// coordinates whose update function can disagree inside the current subspace.
pub fn trap_closure(net: &BooleanNetwork, t: Subspace) -> Subspace {
    let mut t = t;
    loop {
        let unstable: ComponentSet = t
            .fixed()
            .iter()
            .filter(|&i| net.function(i).constant_on(t) != t.get(i))
            .collect();
        if unstable.is_empty() {
            return t;
        }
        t = t.freeing(unstable);
    }
}

pub fn min_trap_space_containing(net: &BooleanNetwork, x: State) -> Subspace {
    trap_closure(net, Subspace::from(x))
}

/// Variable order for trap-space backtracking: greedily completes as many
/// constancy constraints as early as possible.
fn trap_search_order(net: &BooleanNetwork) -> Vec<usize> {
    let n = net.n();
    let deps: Vec<ComponentSet> = (0..n)
        .map(|i| {
            net.regulators(i)
                .iter()
                .copied()
                .collect::<ComponentSet>()
                .with(i)
        })
        .collect();
    let mut placed = ComponentSet::empty();
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&c| !placed.contains(c))
            .max_by_key(|&c| {
                let after = placed.with(c);
                let completed = deps
                    .iter()
                    .filter(|d| d.contains(c) && d.is_subset(after))
                    .count();
                let touched = deps
                    .iter()
                    .filter(|d| d.contains(c))
                    .map(|d| d.intersection(after).len())
                    .sum::<usize>();
                (completed, touched, std::cmp::Reverse(c))
            })
            .unwrap();
        placed.insert(best);
        order.push(best);
    }
    order
}

/// All trap spaces, sorted textually (`0 < 1 < *`).
pub fn trap_spaces(net: &BooleanNetwork, caps: &Caps) -> Result<Vec<Subspace>> {
    let n = net.n();
    caps.check_subspaces(n)?;
    let order = trap_search_order(net);
    let mut position = vec![0usize; n];
    for (k, &c) in order.iter().enumerate() {
        position[c] = k;
    }
    // checks[k]: components whose constraint becomes decidable after placing order[k]
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        let ready = net
            .regulators(i)
            .iter()
            .map(|&j| position[j])
            .chain([position[i]])
            .max()
            .unwrap();
        checks[ready].push(i);
    }
    let mut out = Vec::new();
    let mut t = Subspace::full(n);
    backtrack_traps(net, &order, &checks, 0, &mut t, &mut out);
    out.sort();
    Ok(out)
}

fn backtrack_traps(
    net: &BooleanNetwork,
    order: &[usize],
    checks: &[Vec<usize>],
    depth: usize,
    t: &mut Subspace,
    out: &mut Vec<Subspace>,
) {
    if depth == order.len() {
        out.push(*t);
        return;
    }
    let c = order[depth];
    for choice in [Some(false), Some(true), None] {
        let saved = *t;
        *t = match choice {
            Some(v) => t.with_fixed(c, v),
            None => t.with_free(c),
        };
        let ok = checks[depth].iter().all(|&i| match t.get(i) {
            None => true,
            Some(v) => net.function(i).constant_on(*t) == Some(v),
        });
        if ok {
            backtrack_traps(net, order, checks, depth + 1, t, out);
        }
        *t = saved;
    }
}

/// Inclusion-minimal members of a list of subspaces.
pub fn minimal_elements(spaces: &[Subspace]) -> Vec<Subspace> {
    spaces
        .iter()
        .filter(|&&t| !spaces.iter().any(|&s| s != t && t.contains(s)))
        .copied()
        .collect()
}

pub fn minimal_trap_spaces(net: &BooleanNetwork, caps: &Caps) -> Result<Vec<Subspace>> {
    Ok(minimal_elements(&trap_spaces(net, caps)?))
}

/// All transitions of a classical semantics as `(source, target)` pairs.
pub fn transitions(
    net: &BooleanNetwork,
    sem: Semantics,
    caps: &Caps,
) -> Result<Vec<(State, State)>> {
    if sem == Semantics::Permissive {
        return Err(Error::UnsupportedSemantics("permissive"));
    }
    caps.check_states(net.n())?;
    let n = net.n();
    let mut edges = Vec::new();
    let mut buf = Vec::new();
    for b in 0..1u64 << n {
        let x = State::from_bits(b, n);
        buf.clear();
        push_successors(net, x, sem, &mut buf);
        edges.extend(buf.iter().map(|&y| (x, y)));
    }
    edges.sort();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    fn sub(s: &str) -> Subspace {
        s.parse().unwrap()
    }

    fn strs<T: ToString>(v: &[T]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn set(items: &[usize]) -> ComponentSet {
        items.iter().map(|i| i - 1).collect()
    }

    /// Every subspace, checked one by one.
    fn naive_trap_spaces(net: &BooleanNetwork) -> Vec<Subspace> {
        let n = net.n();
        let mut out = Vec::new();
        for code in 0..3usize.pow(n as u32) {
            let mut t = Subspace::full(n);
            let mut c = code;
            for i in 0..n {
                match c % 3 {
                    0 => t = t.with_fixed(i, false),
                    1 => t = t.with_fixed(i, true),
                    _ => {}
                }
                c /= 3;
            }
            if t.states().all(|x| t.contains_state(net.eval(x))) {
                out.push(t);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn successor_examples() {
        let swap = fixtures::n_swap();
        let mut s = successors(&swap, st("01"), Semantics::Asynchronous).unwrap();
        s.sort();
        assert_eq!(strs(&s), ["00", "11"]);
        let mut g = successors(&swap, st("01"), Semantics::Generalized).unwrap();
        g.sort();
        assert_eq!(strs(&g), ["00", "10", "11"]);
        let five = fixtures::n_five();
        for sem in [
            Semantics::Synchronous,
            Semantics::Asynchronous,
            Semantics::Generalized,
        ] {
            assert!(successors(&five, st("00000"), sem).unwrap().is_empty());
        }
        assert!(successors(&five, st("00000"), Semantics::Permissive).is_err());
    }

    #[test]
    fn permissive_successor_examples() {
        let swap = fixtures::n_swap();
        let start = st("01");
        let mut s: Vec<_> = permissive_successors(&swap, start, PermissiveConfig::initial(start))
            .into_iter()
            .map(|c| (c.current.to_string(), c.varied))
            .collect();
        s.sort();
        assert_eq!(
            s,
            vec![("00".to_string(), set(&[2])), ("11".to_string(), set(&[1]))]
        );

        let five = fixtures::n_five();
        let fp = st("10110");
        assert!(permissive_successors(&five, fp, PermissiveConfig::initial(fp)).is_empty());

        let cfg = PermissiveConfig {
            current: st("00"),
            varied: set(&[2]),
        };
        let s = permissive_successors(&swap, start, cfg);
        assert_eq!(
            s,
            vec![PermissiveConfig {
                current: st("10"),
                varied: set(&[1, 2])
            }]
        );
    }

    #[test]
    fn reachability_examples() {
        let five = fixtures::n_five();
        let caps = Caps::default();
        let path = reachable(
            &five,
            st("11011"),
            Semantics::Asynchronous,
            |s| s == st("00000"),
            &caps,
        )
        .unwrap()
        .unwrap();
        assert_eq!(path.len(), 5);
        assert_eq!(path[0], st("11011"));
        assert_eq!(*path.last().unwrap(), st("00000"));
        for w in path.windows(2) {
            assert!(successors(&five, w[0], Semantics::Asynchronous)
                .unwrap()
                .contains(&w[1]));
        }
        assert_eq!(
            reachable(
                &five,
                st("11011"),
                Semantics::Asynchronous,
                |s| s == st("10110"),
                &caps
            )
            .unwrap(),
            None
        );
        let swap = fixtures::n_swap();
        assert_eq!(
            reachable(
                &swap,
                st("01"),
                Semantics::Asynchronous,
                |s| s == st("10"),
                &caps
            )
            .unwrap(),
            None
        );
        let p = reachable(
            &swap,
            st("01"),
            Semantics::Permissive,
            |s| s == st("10"),
            &caps,
        )
        .unwrap()
        .unwrap();
        assert_eq!(p.len(), 3);
    }

    #[test]
    fn five_component_path_is_a_valid_trajectory() {
        let five = fixtures::n_five();
        let path = ["11011", "01011", "01001", "00001", "00000"].map(st);
        for w in path.windows(2) {
            let succ = successors(&five, w[0], Semantics::Asynchronous).unwrap();
            assert!(succ.contains(&w[1]), "{} -> {}", w[0], w[1]);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let caps = Caps {
            state_space: 4,
            subspaces: 3,
        };
        let five = fixtures::n_five();
        assert!(matches!(
            reachable(
                &five,
                st("00000"),
                Semantics::Asynchronous,
                |_| false,
                &caps
            ),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            trap_spaces(&five, &caps),
            Err(Error::CapExceeded { .. })
        ));
        assert!(matches!(
            attractors(&five, Semantics::Asynchronous, &caps),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn geodesic_examples() {
        let swap = fixtures::n_swap();
        let caps = Caps::default();
        let both = set(&[1, 2]);
        assert_eq!(
            geodesic(&swap, st("01"), both, Semantics::Asynchronous, &caps).unwrap(),
            None
        );
        let p = geodesic(&swap, st("01"), both, Semantics::Permissive, &caps)
            .unwrap()
            .unwrap();
        assert_eq!(p.first(), Some(&st("01")));
        assert_eq!(p.last(), Some(&st("10")));
        assert_eq!(p.len(), 3);
        assert_eq!(
            geodesic(
                &swap,
                st("01"),
                ComponentSet::empty(),
                Semantics::Asynchronous,
                &caps
            )
            .unwrap(),
            Some(vec![st("01")])
        );
    }

    #[test]
    fn geodesic_into_subspace() {
        let caps = Caps::default();
        let five = fixtures::n_five();
        let p = geodesic_into(
            &five,
            st("11011"),
            sub("0***0"),
            Semantics::Asynchronous,
            &caps,
        )
        .unwrap()
        .unwrap();
        assert_eq!(p, ["11011", "01011", "01001", "00001", "00000"].map(st));
        let swap = fixtures::n_swap();
        assert_eq!(
            geodesic_into(&swap, st("01"), sub("10"), Semantics::Asynchronous, &caps).unwrap(),
            None
        );
        let d = distances(&five, st("11011"), Semantics::Asynchronous, &caps).unwrap();
        assert_eq!(d[st("00000").bits() as usize], Some(4));
        assert_eq!(d[st("10110").bits() as usize], None);
    }

    #[test]
    fn attractor_examples() {
        let caps = Caps::default();
        let swap = attractors(&fixtures::n_swap(), Semantics::Asynchronous, &caps).unwrap();
        let listed: Vec<Vec<String>> = swap.iter().map(|a| strs(a.states())).collect();
        assert_eq!(listed, vec![vec!["00"], vec!["11"]]);

        let five = attractors(&fixtures::n_five(), Semantics::Asynchronous, &caps).unwrap();
        let listed: Vec<Vec<String>> = five.iter().map(|a| strs(a.states())).collect();
        assert_eq!(listed, vec![vec!["00000"], vec!["10110"], vec!["11111"]]);

        let cyc = attractors(&fixtures::neg_cycle(), Semantics::Asynchronous, &caps).unwrap();
        assert_eq!(cyc.len(), 1);
        assert_eq!(cyc[0].states().len(), 4);
        assert!(!cyc[0].is_fixed_point());
    }

    #[test]
    fn fixed_point_examples() {
        let fps = fixed_points(&fixtures::n_five(), &Caps::default()).unwrap();
        assert_eq!(strs(&fps), ["00000", "10110", "11111"]);
    }

    #[test]
    fn trap_space_examples() {
        let caps = Caps::default();
        let swap = fixtures::n_swap();
        assert_eq!(
            strs(&trap_spaces(&swap, &caps).unwrap()),
            ["00", "11", "**"]
        );
        assert_eq!(
            strs(&minimal_trap_spaces(&swap, &caps).unwrap()),
            ["00", "11"]
        );
        assert_eq!(
            strs(&minimal_trap_spaces(&fixtures::n_five(), &caps).unwrap()),
            ["00000", "10110", "11111"]
        );
        let c = fixtures::constant(&[true, false]);
        assert_eq!(strs(&minimal_trap_spaces(&c, &caps).unwrap()), ["10"]);
    }

    #[test]
    fn backtracking_matches_naive_enumeration() {
        for net in [
            fixtures::n_swap(),
            fixtures::n_five(),
            fixtures::n_id(),
            fixtures::n_neg(),
            fixtures::neg_cycle(),
            fixtures::constant(&[false, true, true]),
        ] {
            assert_eq!(
                trap_spaces(&net, &Caps::default()).unwrap(),
                naive_trap_spaces(&net)
            );
        }
    }

    #[test]
    fn min_trap_space_examples() {
        let five = fixtures::n_five();
        assert_eq!(min_trap_space_containing(&five, st("11011")), sub("*****"));
        assert_eq!(min_trap_space_containing(&five, st("00000")), sub("00000"));
        assert_eq!(
            min_trap_space_containing(&fixtures::n_swap(), st("01")),
            sub("**")
        );
    }

    #[test]
    fn maximal_permissive_geodesics_end_at_min_trap_corner() {
        let five = fixtures::n_five();
        let caps = Caps::default();
        for b in 0..32u64 {
            let x = State::from_bits(b, 5);
            let ends = maximal_geodesic_ends(&five, x, Semantics::Permissive, &caps).unwrap();
            let t = min_trap_space_containing(&five, x);
            assert_eq!(ends, vec![x.flip(t.free())]);
        }
    }

    #[test]
    fn tarjan_on_explicit_graph() {
        // 0 -> 1 -> 2 -> 1, 3 -> 3, 4 -> 0
        let adj = [vec![1], vec![2], vec![1], vec![3], vec![0]];
        let mut t = terminal_sccs(5, |v, out| out.extend(&adj[v]));
        for c in &mut t {
            c.sort();
        }
        t.sort();
        assert_eq!(t, vec![vec![1, 2], vec![3]]);
    }
}
