//! Multi-valued refinements induced by one activation threshold per interaction.

use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::dynamics::Caps;
use crate::error::{Error, Result};
use crate::extension::Extension;
use crate::network::BooleanNetwork;
use crate::space::{State, Subspace};
use crate::structure::interaction_graph;

/// Activation level of each interaction `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThresholdMap {
    thresholds: BTreeMap<(usize, usize), u32>,
}

impl ThresholdMap {
    /// Requires exactly one threshold of at least 1 per interaction.
    pub fn new(
        net: &BooleanNetwork,
        entries: impl IntoIterator<Item = ((usize, usize), u32)>,
    ) -> Result<Self> {
        let g = interaction_graph(net);
        let mut thresholds = BTreeMap::new();
        for ((j, i), t) in entries {
            if !g.has_edge(j, i) {
                return Err(Error::NotAnEdge(j, i));
            }
            if t == 0 {
                return Err(Error::InvalidThresholds(format!(
                    "threshold of {} -> {} must be at least 1",
                    net.name(j),
                    net.name(i)
                )));
            }
            if thresholds.insert((j, i), t).is_some() {
                return Err(Error::InvalidThresholds(format!(
                    "threshold of {} -> {} given twice",
                    net.name(j),
                    net.name(i)
                )));
            }
        }
        if let Some(((j, i), _)) = g.edges().find(|(e, _)| !thresholds.contains_key(e)) {
            return Err(Error::InvalidThresholds(format!(
                "missing threshold for {} -> {}",
                net.name(j),
                net.name(i)
            )));
        }
        Ok(ThresholdMap { thresholds })
    }

    /// Every interaction at level 1.
    pub fn unit(net: &BooleanNetwork) -> Self {
        let g = interaction_graph(net);
        ThresholdMap {
            thresholds: g.edges().map(|(e, _)| (e, 1)).collect(),
        }
    }

    pub fn get(&self, source: usize, target: usize) -> Option<u32> {
        self.thresholds.get(&(source, target)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.thresholds.iter().map(|(&e, &t)| (e, t))
    }
}

/// Reads `source, target, threshold` lines (names or 1-based indices).
/// Interactions left out get threshold 1.
pub fn parse_thresholds(text: &str, net: &BooleanNetwork) -> Result<ThresholdMap> {
    let component = |s: &str, line: usize| -> Result<usize> {
        if let Some(i) = net.index_of(s) {
            return Ok(i);
        }
        match s.parse::<usize>() {
            Ok(k) if (1..=net.n()).contains(&k) => Ok(k - 1),
            _ => Err(Error::Syntax {
                line,
                column: 1,
                message: format!("unknown component `{s}`"),
            }),
        }
    };
    let mut given = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let parts: Vec<&str> = content.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Syntax {
                line,
                column: 1,
                message: "expected `source, target, threshold`".into(),
            });
        }
        let j = component(parts[0], line)?;
        let i = component(parts[1], line)?;
        let t: u32 = parts[2].parse().map_err(|_| Error::Syntax {
            line,
            column: 1,
            message: format!("invalid threshold `{}`", parts[2]),
        })?;
        if given.insert((j, i), t).is_some() {
            return Err(Error::InvalidThresholds(format!(
                "line {line}: duplicate interaction"
            )));
        }
    }
    let mut entries = ThresholdMap::unit(net).thresholds;
    for (&e, &t) in &given {
        if !entries.contains_key(&e) {
            return Err(Error::NotAnEdge(e.0, e.1));
        }
        entries.insert(e, t);
    }
    ThresholdMap::new(net, entries)
}

pub type Levels = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinedNetwork {
    net: BooleanNetwork,
    thresholds: ThresholdMap,
    maxima: Vec<u32>,
}

pub fn make_refinement(net: &BooleanNetwork, thresholds: &ThresholdMap) -> RefinedNetwork {
    let n = net.n();
    let mut maxima = vec![1u32; n];
    for ((j, _), t) in thresholds.iter() {
        maxima[j] = maxima[j].max(t);
    }
    for ((j, _), t) in thresholds.iter() {
        assert!(t <= maxima[j]);
    }
    RefinedNetwork {
        net: net.clone(),
        thresholds: thresholds.clone(),
        maxima,
    }
}

impl RefinedNetwork {
    pub fn network(&self) -> &BooleanNetwork {
        &self.net
    }

    pub fn thresholds(&self) -> &ThresholdMap {
        &self.thresholds
    }

    pub fn maxima(&self) -> &[u32] {
        &self.maxima
    }

    pub fn n(&self) -> usize {
        self.net.n()
    }

    pub fn check_levels(&self, x: &[u32]) -> Result<()> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        if let Some(i) = (0..x.len()).find(|&i| x[i] > self.maxima[i]) {
            return Err(Error::InvalidArgument(format!(
                "level {} of component {} exceeds its maximum {}",
                x[i],
                self.net.name(i),
                self.maxima[i]
            )));
        }
        Ok(())
    }

    /// The Boolean state read by component `i`: regulator `j` is active iff
    /// its level reaches the threshold of `j -> i`.
    pub fn boolean_view(&self, x: &[u32], i: usize) -> State {
        let mut s = State::zeros(self.n());
        for &j in self.net.regulators(i) {
            let t = self
                .thresholds
                .get(j, i)
                .expect("regulators are interactions");
            s = s.with(j, x[j] >= t);
        }
        s
    }

    pub fn target(&self, x: &[u32], i: usize) -> u32 {
        if self.net.eval_component(i, self.boolean_view(x, i)) {
            self.maxima[i]
        } else {
            0
        }
    }

    /// Unit steps toward the target of each component not at its target.
    pub fn successors(&self, x: &[u32]) -> Vec<Levels> {
        (0..self.n())
            .filter_map(|i| {
                let t = self.target(x, i);
                (t != x[i]).then(|| {
                    let mut y = x.to_vec();
                    y[i] = if t > x[i] { x[i] + 1 } else { x[i] - 1 };
                    y
                })
            })
            .collect()
    }

    /// Boolean values scaled to the extreme levels.
    pub fn booltostr(&self, x: State) -> Levels {
        (0..self.n())
            .map(|i| if x.get(i) { self.maxima[i] } else { 0 })
            .collect()
    }

    /// The subspace of the full extension represented by a level vector: a core
    /// component is free at intermediate levels, an extender `(j, k)` holds
    /// whether `j` reaches the threshold of `j -> k`.
    pub fn mvtobuf(&self, ext: &Extension, x: &[u32]) -> Result<Subspace> {
        let g = interaction_graph(&self.net);
        let all: Vec<(usize, usize)> = g.edges().map(|(e, _)| e).collect();
        if ext.base().functions() != self.net.functions() || ext.edges() != all.as_slice() {
            return Err(Error::InvalidArgument(
                "the extension must be the full extension of the refined network".into(),
            ));
        }
        self.extension_subspace(ext, x)
    }

    /// The same reading for any extension of the refined network. Only
    /// meaningful as an experiment beyond the full extension.
    pub fn extension_subspace(&self, ext: &Extension, x: &[u32]) -> Result<Subspace> {
        if ext.base().functions() != self.net.functions() {
            return Err(Error::InvalidArgument(
                "the extension must extend the refined network".into(),
            ));
        }
        self.check_levels(x)?;
        let n = self.n();
        let mut t = Subspace::full(ext.extended().n());
        for (i, (&v, &m)) in x.iter().zip(&self.maxima).enumerate() {
            if v == 0 {
                t = t.with_fixed(i, false);
            } else if v == m {
                t = t.with_fixed(i, true);
            }
        }
        for (k, &(j, i)) in ext.edges().iter().enumerate() {
            t = t.with_fixed(n + k, x[j] >= self.thresholds.get(j, i).unwrap());
        }
        Ok(t)
    }

    /// Number of level vectors, if it fits the cap on explicit states.
    fn space_size(&self, caps: &Caps) -> Result<usize> {
        let limit = 1u128 << caps.state_space.min(40);
        let mut size = 1u128;
        for &m in &self.maxima {
            size *= m as u128 + 1;
            if size > limit {
                return Err(Error::CapExceeded {
                    n: self.n(),
                    cap: caps.state_space,
                });
            }
        }
        Ok(size as usize)
    }

    fn encode(&self, x: &[u32]) -> usize {
        x.iter()
            .zip(&self.maxima)
            .rev()
            .fold(0usize, |acc, (&v, &m)| acc * (m as usize + 1) + v as usize)
    }

    /// Shortest path of unit steps from `x` to `y`.
    pub fn reachable(&self, x: &[u32], y: &[u32], caps: &Caps) -> Result<Option<Vec<Levels>>> {
        self.check_levels(x)?;
        self.check_levels(y)?;
        self.space_size(caps)?;
        if x == y {
            return Ok(Some(vec![x.to_vec()]));
        }
        let mut parent: HashMap<Levels, Levels> = HashMap::new();
        parent.insert(x.to_vec(), x.to_vec());
        let mut queue = VecDeque::from([x.to_vec()]);
        while let Some(s) = queue.pop_front() {
            for t in self.successors(&s) {
                if parent.contains_key(&t) {
                    continue;
                }
                parent.insert(t.clone(), s.clone());
                if t == y {
                    let mut path = vec![t];
                    while path.last().unwrap().as_slice() != x {
                        let prev = parent[path.last().unwrap()].clone();
                        path.push(prev);
                    }
                    path.reverse();
                    return Ok(Some(path));
                }
                queue.push_back(t);
            }
        }
        Ok(None)
    }

    /// Reachable level vectors from `x`, as a membership test.
    pub fn reach_set(&self, x: &[u32], caps: &Caps) -> Result<MvReach> {
        self.check_levels(x)?;
        let size = self.space_size(caps)?;
        let mut seen = vec![false; size];
        seen[self.encode(x)] = true;
        let mut stack = vec![x.to_vec()];
        while let Some(s) = stack.pop() {
            for t in self.successors(&s) {
                let code = self.encode(&t);
                if !seen[code] {
                    seen[code] = true;
                    stack.push(t);
                }
            }
        }
        Ok(MvReach {
            maxima: self.maxima.clone(),
            seen,
        })
    }

    /// Every level vector, in encoding order.
    pub fn all_levels(&self, caps: &Caps) -> Result<Vec<Levels>> {
        let size = self.space_size(caps)?;
        let mut out = Vec::with_capacity(size);
        let mut cur = vec![0u32; self.n()];
        for _ in 0..size {
            out.push(cur.clone());
            for (v, &m) in cur.iter_mut().zip(&self.maxima) {
                if *v < m {
                    *v += 1;
                    break;
                }
                *v = 0;
            }
        }
        Ok(out)
    }
}

pub struct MvReach {
    maxima: Vec<u32>,
    seen: Vec<bool>,
}

impl MvReach {
    pub fn contains(&self, x: &[u32]) -> bool {
        let code = x
            .iter()
            .zip(&self.maxima)
            .rev()
            .fold(0usize, |acc, (&v, &m)| acc * (m as usize + 1) + v as usize);
        self.seen[code]
    }
}

/// Parses a level vector such as `2,0,1` or, when every level is a single
/// digit, `201`.
pub fn parse_levels(s: &str) -> Result<Levels> {
    let bad = || Error::InvalidArgument(format!("invalid level vector `{s}`"));
    if s.contains(',') {
        s.split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect()
    } else {
        s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect()
    }
}

pub fn format_levels(x: &[u32]) -> String {
    if x.iter().all(|&v| v < 10) {
        x.iter().map(|v| v.to_string()).collect()
    } else {
        x.iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::full_extension;
    use crate::fixtures;

    fn neg_refinement() -> RefinedNetwork {
        let net = fixtures::n_neg();
        let t = ThresholdMap::new(&net, [((0, 0), 1), ((0, 1), 2)]).unwrap();
        make_refinement(&net, &t)
    }

    #[test]
    fn neg_maxima_and_targets() {
        let r = neg_refinement();
        assert_eq!(r.maxima(), [2, 1]);
        let targets = |x: [u32; 2]| [r.target(&x, 0), r.target(&x, 1)];
        assert_eq!(targets([0, 0]), [2, 0]);
        assert_eq!(targets([0, 1]), [2, 0]);
        assert_eq!(targets([1, 0]), [0, 0]);
        assert_eq!(targets([1, 1]), [0, 0]);
        assert_eq!(targets([2, 0]), [0, 1]);
        assert_eq!(targets([2, 1]), [0, 1]);
    }

    #[test]
    fn neg_dynamics() {
        let r = neg_refinement();
        assert_eq!(r.successors(&[0, 0]), vec![vec![1, 0]]);
        assert_eq!(r.successors(&[1, 0]), vec![vec![0, 0]]);
        let caps = Caps::default();
        assert_eq!(r.reachable(&[0, 0], &[2, 0], &caps).unwrap(), None);
        assert_eq!(
            r.reachable(&[0, 0], &[1, 0], &caps).unwrap(),
            Some(vec![vec![0, 0], vec![1, 0]])
        );
        assert_eq!(
            r.reachable(&[1, 1], &[1, 1], &caps).unwrap(),
            Some(vec![vec![1, 1]])
        );
        assert_eq!(r.booltostr("10".parse().unwrap()), [2, 0]);
    }

    #[test]
    fn fixed_level_has_no_successor() {
        let net = fixtures::n_five();
        let r = make_refinement(&net, &ThresholdMap::unit(&net));
        assert!(r.successors(&[0, 0, 0, 0, 0]).is_empty());
    }

    #[test]
    fn unit_thresholds_match_the_boolean_network() {
        let net = fixtures::n_five();
        let r = make_refinement(&net, &ThresholdMap::unit(&net));
        assert!(r.maxima().iter().all(|&m| m == 1));
        for b in 0..32u64 {
            let x = State::from_bits(b, 5);
            let lv = r.booltostr(x);
            let mut expect: Vec<Levels> =
                crate::dynamics::successors(&net, x, crate::Semantics::Asynchronous)
                    .unwrap()
                    .into_iter()
                    .map(|y| r.booltostr(y))
                    .collect();
            expect.sort();
            let mut got = r.successors(&lv);
            got.sort();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn components_without_targets_have_maximum_one() {
        let r = neg_refinement();
        assert_eq!(r.maxima()[1], 1);
    }

    #[test]
    fn threshold_validation() {
        let net = fixtures::n_neg();
        assert!(matches!(
            ThresholdMap::new(&net, [((0, 0), 0), ((0, 1), 1)]),
            Err(Error::InvalidThresholds(_))
        ));
        assert_eq!(
            ThresholdMap::new(&net, [((0, 0), 1), ((0, 1), 1), ((1, 0), 1)]),
            Err(Error::NotAnEdge(1, 0))
        );
        assert!(matches!(
            ThresholdMap::new(&net, [((0, 0), 1)]),
            Err(Error::InvalidThresholds(_))
        ));
    }

    #[test]
    fn sidecar_parsing() {
        let net = fixtures::n_neg();
        let t = parse_thresholds("# levels\nx1, x2, 2\n", &net).unwrap();
        assert_eq!(t.get(0, 1), Some(2));
        assert_eq!(t.get(0, 0), Some(1));
        let t = parse_thresholds("1, 2, 3\n", &net).unwrap();
        assert_eq!(t.get(0, 1), Some(3));
        assert!(parse_thresholds("x2, x1, 2\n", &net).is_err());
        assert!(parse_thresholds("x1, x2\n", &net).is_err());
        assert!(parse_thresholds("x1, x2, 0\n", &net).is_err());
    }

    #[test]
    fn mvtobuf_examples() {
        let r = neg_refinement();
        let ext = full_extension(r.network());
        // extenders: (1,1) then (1,2)
        assert_eq!(r.mvtobuf(&ext, &[1, 0]).unwrap(), "*010".parse().unwrap());
        assert_eq!(r.mvtobuf(&ext, &[2, 1]).unwrap(), "1111".parse().unwrap());
        for b in 0..4u64 {
            let x = State::from_bits(b, 2);
            let t = r.mvtobuf(&ext, &r.booltostr(x)).unwrap();
            assert_eq!(t.as_state(), Some(ext.embed(x)));
        }
        let partial = crate::extension::extend(r.network(), [(0, 0)]).unwrap();
        assert!(r.mvtobuf(&partial, &[0, 0]).is_err());
    }

    #[test]
    fn reach_set_and_levels() {
        let r = neg_refinement();
        let caps = Caps::default();
        assert_eq!(r.all_levels(&caps).unwrap().len(), 6);
        let reach = r.reach_set(&[0, 0], &caps).unwrap();
        assert!(reach.contains(&[1, 0]));
        assert!(!reach.contains(&[2, 0]));
        assert_eq!(parse_levels("2,0").unwrap(), [2, 0]);
        assert_eq!(parse_levels("20").unwrap(), [2, 0]);
        assert!(parse_levels("2a").is_err());
        assert_eq!(format_levels(&[2, 0]), "20");
    }
}
