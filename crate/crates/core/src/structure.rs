//! Signed interaction graphs and linear cuts.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::space::ComponentSet;

/// Signs observed on an interaction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct SignSet {
    pub positive: bool,
    pub negative: bool,
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.positive, self.negative) {
            (true, true) => f.write_str("+-"),
            (true, false) => f.write_str("+"),
            (false, true) => f.write_str("-"),
            (false, false) => f.write_str("0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteractionGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), SignSet>,
    regulators: Vec<ComponentSet>,
    targets: Vec<ComponentSet>,
}

impl InteractionGraph {
    /// A graph from explicit `(source, target)` edges. Signs default to `+`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let signed = edges.into_iter().map(|e| {
            (
                e,
                SignSet {
                    positive: true,
                    negative: false,
                },
            )
        });
        Self::from_signed_edges(n, signed)
    }

    pub fn from_signed_edges(
        n: usize,
        edges: impl IntoIterator<Item = ((usize, usize), SignSet)>,
    ) -> Result<Self> {
        let mut g = InteractionGraph {
            n,
            edges: BTreeMap::new(),
            regulators: vec![ComponentSet::empty(); n],
            targets: vec![ComponentSet::empty(); n],
        };
        for ((j, i), s) in edges {
            if j >= n || i >= n {
                return Err(Error::UnknownComponent(j.max(i)));
            }
            g.edges.insert((j, i), s);
            g.regulators[i].insert(j);
            g.targets[j].insert(i);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges `(source, target)` in lexicographic order with their signs.
    pub fn edges(&self) -> impl Iterator<Item = ((usize, usize), SignSet)> + '_ {
        self.edges.iter().map(|(&e, &s)| (e, s))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, source: usize, target: usize) -> bool {
        self.edges.contains_key(&(source, target))
    }

    pub fn sign(&self, source: usize, target: usize) -> Option<SignSet> {
        self.edges.get(&(source, target)).copied()
    }

    pub fn regulators(&self, i: usize) -> ComponentSet {
        self.regulators[i]
    }

    pub fn targets(&self, i: usize) -> ComponentSet {
        self.targets[i]
    }

    pub fn is_linear(&self, i: usize) -> bool {
        self.regulators[i].len() == 1 && self.targets[i].len() == 1
    }

    pub fn linear_components(&self) -> ComponentSet {
        (0..self.n).filter(|&i| self.is_linear(i)).collect()
    }

    /// True when some self-loop carries a negative sign.
    pub fn has_negative_loop(&self) -> bool {
        (0..self.n).any(|i| self.sign(i, i).is_some_and(|s| s.negative))
    }
}

/// The interaction graph of a network, by exhaustive sensitivity over each
/// regulator-local table.
pub fn interaction_graph(net: &BooleanNetwork) -> InteractionGraph {
    let mut edges = Vec::new();
    for i in 0..net.n() {
        let f = net.function(i);
        for (p, &j) in f.regulators().iter().enumerate() {
            let (positive, negative) = f.signs_of(p);
            if positive || negative {
                edges.push(((j, i), SignSet { positive, negative }));
            }
        }
    }
    InteractionGraph::from_signed_edges(net.n(), edges).expect("regulators are in range")
}

/// Why a set of components is not a linear cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CutViolation {
    /// A member without exactly one regulator and one target.
    NotLinear(usize),
    /// A cycle avoiding the set, listed from its first vertex (not repeated).
    Cycle(Vec<usize>),
    /// A path from a multi-target to a multi-regulator component avoiding the set.
    Path(Vec<usize>),
}

impl CutViolation {
    /// The edges of the witness, in order.
    pub fn witness_edges(&self) -> Vec<(usize, usize)> {
        match self {
            CutViolation::NotLinear(_) => Vec::new(),
            CutViolation::Cycle(c) => (0..c.len()).map(|k| (c[k], c[(k + 1) % c.len()])).collect(),
            CutViolation::Path(p) => p.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }

    pub fn describe(&self, names: &[String]) -> String {
        let join = |vs: &[usize], sep: &str| {
            vs.iter()
                .map(|&v| names[v].as_str())
                .collect::<Vec<_>>()
                .join(sep)
        };
        match self {
            CutViolation::NotLinear(i) => format!("component {} is not linear", names[*i]),
            CutViolation::Cycle(c) => {
                format!(
                    "cycle {} -> {} avoids the cut",
                    join(c, " -> "),
                    names[c[0]]
                )
            }
            CutViolation::Path(p) => format!("path {} avoids the cut", join(p, " -> ")),
        }
    }
}

/// A verified linear cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinearCut(pub ComponentSet);

impl LinearCut {
    pub fn members(self) -> ComponentSet {
        self.0
    }
}

/// Checks that `l` is a linear cut of `g`. `Ok(None)` means it is.
pub fn verify_linear_cut(g: &InteractionGraph, l: ComponentSet) -> Result<Option<CutViolation>> {
    if !l.is_subset(ComponentSet::full(g.n)) {
        let bad = l.difference(ComponentSet::full(g.n)).iter().next().unwrap();
        return Err(Error::UnknownComponent(bad));
    }
    if let Some(i) = l.iter().find(|&i| !g.is_linear(i)) {
        return Ok(Some(CutViolation::NotLinear(i)));
    }
    if let Some(cycle) = find_cycle_avoiding(g, l) {
        return Ok(Some(CutViolation::Cycle(cycle)));
    }
    if let Some(path) = find_path_avoiding(g, l) {
        return Ok(Some(CutViolation::Path(path)));
    }
    Ok(None)
}

/// A cycle of the subgraph induced by the complement of `l`, if any.
fn find_cycle_avoiding(g: &InteractionGraph, l: ComponentSet) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = g.n;
    let mut mark = vec![Mark::New; n];
    for root in (0..n).filter(|&v| !l.contains(v)) {
        if mark[root] != Mark::New {
            continue;
        }
        // (vertex, remaining targets)
        let mut stack: Vec<(usize, ComponentSet)> = vec![(root, g.targets[root].difference(l))];
        mark[root] = Mark::Open;
        while let Some(top) = stack.last_mut() {
            let (v, rest) = *top;
            match rest.iter().next() {
                None => {
                    mark[v] = Mark::Done;
                    stack.pop();
                }
                Some(w) => {
                    top.1.remove(w);
                    match mark[w] {
                        Mark::Open => {
                            let start = stack.iter().position(|&(u, _)| u == w).unwrap();
                            return Some(stack[start..].iter().map(|&(u, _)| u).collect());
                        }
                        Mark::New => {
                            mark[w] = Mark::Open;
                            stack.push((w, g.targets[w].difference(l)));
                        }
                        Mark::Done => {}
                    }
                }
            }
        }
    }
    None
}

/// A path of positive length from a multi-target to a multi-regulator
/// component through components outside `l`, if any.
fn find_path_avoiding(g: &InteractionGraph, l: ComponentSet) -> Option<Vec<usize>> {
    let n = g.n;
    for u in (0..n).filter(|&u| !l.contains(u) && g.targets[u].len() > 1) {
        let mut parent = vec![usize::MAX; n];
        let mut seen = ComponentSet::empty();
        let mut queue = VecDeque::new();
        for w in g.targets[u].difference(l).iter() {
            if !seen.contains(w) {
                seen.insert(w);
                parent[w] = u;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if g.regulators[v].len() > 1 {
                let mut path = vec![v];
                let mut cur = v;
                loop {
                    let p = parent[cur];
                    path.push(p);
                    if p == u {
                        break;
                    }
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for w in g.targets[v].difference(l).iter() {
                if !seen.contains(w) {
                    seen.insert(w);
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
    }
    None
}

/// Decides cuttability by testing the set of all linear components; with
/// `minimize`, members are dropped in ascending order while the set stays a
/// cut, which yields an inclusion-minimal cut.
pub fn find_linear_cut(
    g: &InteractionGraph,
    minimize: bool,
) -> std::result::Result<LinearCut, CutViolation> {
    let mut l = g.linear_components();
    if let Some(v) = verify_linear_cut(g, l).expect("linear components are in range") {
        return Err(v);
    }
    if minimize {
        for i in l.iter().collect::<Vec<_>>() {
            let candidate = l.without(i);
            if verify_linear_cut(g, candidate).unwrap().is_none() {
                l = candidate;
            }
        }
    }
    Ok(LinearCut(l))
}

/// True when `l` has no edge between two distinct members.
pub fn is_independent(g: &InteractionGraph, l: ComponentSet) -> bool {
    g.edges()
        .all(|((j, i), _)| j == i || !(l.contains(j) && l.contains(i)))
}
