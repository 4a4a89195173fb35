//! Implicant maps, requirement graphs and geodesic certificates.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use crate::dynamics::{geodesic_step_enabled, Semantics};
use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::space::{delta, same, ComponentSet, State, Subspace};

/// Which requirement graph must be acyclic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strength {
    /// Acyclic G: certifies a permissive geodesic.
    Consistent,
    /// Acyclic G⁺: certifies an asynchronous geodesic.
    Strong,
}

impl Strength {
    pub fn semantics(self) -> Semantics {
        match self {
            Strength::Consistent => Semantics::Permissive,
            Strength::Strong => Semantics::Asynchronous,
        }
    }
}

/// An assignment of subspaces to components, each subspace lying where the
/// component's update function disagrees with its value in `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicantMap {
    x: State,
    assignment: BTreeMap<usize, Subspace>,
}

impl ImplicantMap {
    pub fn new(
        net: &BooleanNetwork,
        x: State,
        assignment: impl IntoIterator<Item = (usize, Subspace)>,
    ) -> Result<Self> {
        if x.len() != net.n() {
            return Err(Error::LengthMismatch {
                expected: net.n(),
                found: x.len(),
            });
        }
        let assignment: BTreeMap<usize, Subspace> = assignment.into_iter().collect();
        for (&i, &t) in &assignment {
            if i >= net.n() {
                return Err(Error::UnknownComponent(i));
            }
            if t.len() != net.n() {
                return Err(Error::LengthMismatch {
                    expected: net.n(),
                    found: t.len(),
                });
            }
            if net.function(i).constant_on(t) != Some(!x.get(i)) {
                return Err(Error::NotImplicantMap(format!(
                    "the function of component {} takes the value {} somewhere in {t}",
                    i + 1,
                    x.get(i) as u8
                )));
            }
        }
        Ok(ImplicantMap { x, assignment })
    }

    pub fn state(&self) -> State {
        self.x
    }

    pub fn domain(&self) -> ComponentSet {
        self.assignment.keys().copied().collect()
    }

    pub fn get(&self, i: usize) -> Option<Subspace> {
        self.assignment.get(&i).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Subspace)> + '_ {
        self.assignment.iter().map(|(&i, &t)| (i, t))
    }

    fn implicant(&self, i: usize) -> Result<Subspace> {
        self.get(i).ok_or(Error::NotInDomain(i))
    }

    /// Δ(x, I(i))
    pub fn direct_requirements(&self, i: usize) -> Result<ComponentSet> {
        Ok(delta(self.x.into(), self.implicant(i)?))
    }

    /// Same(x, I(i)) without `i`.
    pub fn blockers(&self, i: usize) -> Result<ComponentSet> {
        Ok(same(self.x, self.implicant(i)?).without(i))
    }

    /// Direct requirements of `i` plus the components that `i` blocks.
    pub fn strong_requirements(&self, i: usize) -> Result<ComponentSet> {
        let direct = self.direct_requirements(i)?;
        let blocked: ComponentSet = self
            .assignment
            .iter()
            .filter(|&(&j, &t)| j != i && same(self.x, t).contains(i))
            .map(|(&j, _)| j)
            .collect();
        Ok(direct.union(blocked))
    }

    /// Components with a path of positive length to `i` in G.
    pub fn required(&self, i: usize) -> Result<ComponentSet> {
        self.implicant(i)?;
        Ok(self.ancestors(i, |k| self.direct_requirements(k).unwrap_or_default()))
    }

    /// Components with a path of positive length to `i` in G⁺.
    pub fn erequired(&self, i: usize) -> Result<ComponentSet> {
        self.implicant(i)?;
        Ok(self.ancestors(i, |k| self.strong_requirements(k).unwrap_or_default()))
    }

    fn ancestors(&self, i: usize, preds: impl Fn(usize) -> ComponentSet) -> ComponentSet {
        let mut found = ComponentSet::empty();
        let mut stack = vec![i];
        while let Some(k) = stack.pop() {
            if self.assignment.contains_key(&k) {
                for j in preds(k).iter() {
                    if !found.contains(j) {
                        found.insert(j);
                        stack.push(j);
                    }
                }
            }
        }
        found
    }

    /// Every full requirement of every `i` lies in J∖{i}.
    pub fn is_consistent(&self) -> bool {
        self.check(|i| self.required(i))
    }

    /// Every strong full requirement of every `i` lies in J∖{i}.
    pub fn is_strongly_consistent(&self) -> bool {
        self.check(|i| self.erequired(i))
    }

    pub fn satisfies(&self, strength: Strength) -> bool {
        match strength {
            Strength::Consistent => self.is_consistent(),
            Strength::Strong => self.is_strongly_consistent(),
        }
    }

    fn check(&self, closure: impl Fn(usize) -> Result<ComponentSet>) -> bool {
        let domain = self.domain();
        domain
            .iter()
            .all(|i| closure(i).unwrap().is_subset(domain.without(i)))
    }

    /// Component name → subspace text, for reports.
    pub fn to_named(&self, names: &[String]) -> BTreeMap<String, String> {
        self.iter()
            .map(|(i, t)| (names[i].clone(), t.to_string()))
            .collect()
    }
}

/// An implicant with the requirement edges it adds.
type Candidate = (Subspace, Vec<(usize, usize)>);

/// Depth-first search over prime implicant maps of `j` for `x`. Components are
/// assigned in ascending order and candidates tried in prime-implicant order,
/// so the first witness found is deterministic.
pub fn find_map(
    net: &BooleanNetwork,
    x: State,
    j: ComponentSet,
    strength: Strength,
) -> Result<Option<ImplicantMap>> {
    if x.len() != net.n() {
        return Err(Error::LengthMismatch {
            expected: net.n(),
            found: x.len(),
        });
    }
    if let Some(bad) = j.iter().find(|&i| i >= net.n()) {
        return Err(Error::UnknownComponent(bad));
    }
    let order: Vec<usize> = j.iter().collect();
    let candidates: Vec<Vec<Candidate>> = order
        .iter()
        .map(|&i| {
            net.prime_implicants(i, !x.get(i))
                .into_iter()
                .filter_map(|t| {
                    let req = delta(x.into(), t);
                    if !req.is_subset(j) {
                        return None;
                    }
                    let mut edges: Vec<(usize, usize)> = req.iter().map(|r| (r, i)).collect();
                    if strength == Strength::Strong {
                        edges.extend(same(x, t).without(i).intersection(j).iter().map(|b| (i, b)));
                    }
                    Some((t, edges))
                })
                .collect()
        })
        .collect();
    let mut succ = vec![ComponentSet::empty(); net.n()];
    let mut chosen = Vec::with_capacity(order.len());
    if search(&candidates, 0, &mut succ, &mut chosen) {
        let map = ImplicantMap {
            x,
            assignment: order.into_iter().zip(chosen).collect(),
        };
        debug_assert!(map.satisfies(strength));
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn reaches(succ: &[ComponentSet], from: usize, to: usize) -> bool {
    let mut seen = ComponentSet::singleton(from);
    let mut stack = vec![from];
    while let Some(v) = stack.pop() {
        if v == to {
            return true;
        }
        for w in succ[v].difference(seen).iter() {
            seen.insert(w);
            stack.push(w);
        }
    }
    false
}

fn search(
    candidates: &[Vec<Candidate>],
    depth: usize,
    succ: &mut Vec<ComponentSet>,
    chosen: &mut Vec<Subspace>,
) -> bool {
    if depth == candidates.len() {
        return true;
    }
    for (t, edges) in &candidates[depth] {
        let saved = succ.clone();
        let mut acyclic = true;
        for &(a, b) in edges {
            if reaches(succ, b, a) {
                acyclic = false;
                break;
            }
            succ[a].insert(b);
        }
        if acyclic {
            chosen.push(*t);
            if search(candidates, depth + 1, succ, chosen) {
                return true;
            }
            chosen.pop();
        }
        *succ = saved;
    }
    false
}

/// The geodesic given by a topological order of G⁺ (strong) or G
/// (consistent), smallest available component first. Each step is checked
/// against the corresponding semantics.
pub fn geodesic_from_map(
    net: &BooleanNetwork,
    map: &ImplicantMap,
    strength: Strength,
) -> Result<Vec<State>> {
    if !map.satisfies(strength) {
        return Err(Error::InconsistentMap(match strength {
            Strength::Consistent => "consistent",
            Strength::Strong => "strongly consistent",
        }));
    }
    let domain = map.domain();
    let preds: BTreeMap<usize, ComponentSet> = domain
        .iter()
        .map(|i| {
            let p = match strength {
                Strength::Consistent => map.direct_requirements(i),
                Strength::Strong => map.strong_requirements(i),
            };
            (i, p.unwrap().intersection(domain))
        })
        .collect();
    let mut done = ComponentSet::empty();
    let mut heap: BinaryHeap<Reverse<usize>> = preds
        .iter()
        .filter(|(_, p)| p.is_empty())
        .map(|(&i, _)| Reverse(i))
        .collect();
    let x = map.state();
    let mut path = vec![x];
    let mut current = x;
    let sem = strength.semantics();
    while let Some(Reverse(i)) = heap.pop() {
        if !geodesic_step_enabled(net, x, current, i, sem) {
            return Err(Error::InconsistentMap("executable"));
        }
        done.insert(i);
        current = current.flip_one(i);
        path.push(current);
        for (&k, p) in &preds {
            if !done.contains(k) && p.contains(i) && p.is_subset(done) {
                heap.push(Reverse(k));
            }
        }
    }
    debug_assert_eq!(done, domain);
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{self, Caps};
    use crate::fixtures;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    fn sub(s: &str) -> Subspace {
        s.parse().unwrap()
    }

    fn set(items: &[usize]) -> ComponentSet {
        items.iter().map(|i| i - 1).collect()
    }

    /// f = (1, x1, x2)
    fn chain() -> BooleanNetwork {
        BooleanNetwork::from_fn_unnamed(vec![vec![], vec![0], vec![1]], |i, v| match i {
            0 => true,
            _ => v[0],
        })
        .unwrap()
    }

    #[test]
    fn requirements_and_blockers() {
        let net = fixtures::n_swap();
        let x = st("00");
        let m = ImplicantMap::new(&net, x, [(1, sub("1*"))]).unwrap();
        assert_eq!(m.direct_requirements(1).unwrap(), set(&[1]));
        assert_eq!(m.blockers(1).unwrap(), ComponentSet::empty());
        let m = ImplicantMap::new(&net, x, [(1, sub("10"))]).unwrap();
        assert_eq!(m.direct_requirements(1).unwrap(), set(&[1]));
        assert_eq!(m.blockers(1).unwrap(), ComponentSet::empty());
        assert_eq!(m.direct_requirements(0), Err(Error::NotInDomain(0)));
        let m = ImplicantMap::new(&net, x, [(0, sub("*1")), (1, sub("1*"))]).unwrap();
        assert_eq!(m.blockers(0).unwrap(), ComponentSet::empty());
        assert_eq!(
            m.strong_requirements(0).unwrap(),
            m.direct_requirements(0).unwrap()
        );
        assert_eq!(
            m.strong_requirements(1).unwrap(),
            m.direct_requirements(1).unwrap()
        );
    }

    #[test]
    fn blocked_swap() {
        let net = fixtures::n_swap();
        let x = st("01");
        let m = ImplicantMap::new(&net, x, [(0, sub("*1")), (1, sub("0*"))]).unwrap();
        assert_eq!(m.direct_requirements(0).unwrap(), ComponentSet::empty());
        assert_eq!(m.direct_requirements(1).unwrap(), ComponentSet::empty());
        assert_eq!(m.strong_requirements(0).unwrap(), set(&[2]));
        assert_eq!(m.strong_requirements(1).unwrap(), set(&[1]));
        assert_eq!(m.erequired(0).unwrap(), set(&[1, 2]));
        assert!(m.is_consistent());
        assert!(!m.is_strongly_consistent());
    }

    #[test]
    fn rejects_non_implicants() {
        let net = fixtures::n_swap();
        assert!(matches!(
            ImplicantMap::new(&net, st("01"), [(0, sub("*0"))]),
            Err(Error::NotImplicantMap(_))
        ));
        assert!(matches!(
            ImplicantMap::new(&net, st("01"), [(0, sub("**"))]),
            Err(Error::NotImplicantMap(_))
        ));
    }

    #[test]
    fn full_requirements_on_a_chain() {
        let net = chain();
        let x = st("000");
        let m = ImplicantMap::new(&net, x, [(0, sub("***")), (1, sub("1**")), (2, sub("*1*"))])
            .unwrap();
        assert_eq!(m.required(2).unwrap(), set(&[1, 2]));
        assert_eq!(m.required(0).unwrap(), ComponentSet::empty());
        assert!(m.is_consistent() && m.is_strongly_consistent());
        let path = geodesic_from_map(&net, &m, Strength::Strong).unwrap();
        assert_eq!(path, ["000", "100", "110", "111"].map(st));
    }

    #[test]
    fn requirement_outside_domain_is_inconsistent() {
        let net = chain();
        let m = ImplicantMap::new(&net, st("000"), [(2, sub("*1*"))]).unwrap();
        assert_eq!(m.required(2).unwrap(), set(&[2]));
        assert!(!m.is_consistent());
    }

    #[test]
    fn self_requirement_is_inconsistent() {
        let net = fixtures::n_id();
        let m = ImplicantMap::new(&net, st("0"), [(0, sub("1"))]).unwrap();
        assert_eq!(m.direct_requirements(0).unwrap(), set(&[1]));
        assert!(!m.is_consistent());
        assert!(!m.is_strongly_consistent());
    }

    #[test]
    fn empty_map() {
        let net = fixtures::n_five();
        let m = find_map(&net, st("00000"), ComponentSet::empty(), Strength::Strong)
            .unwrap()
            .unwrap();
        assert!(m.domain().is_empty());
        assert!(m.is_consistent() && m.is_strongly_consistent());
        assert_eq!(
            geodesic_from_map(&net, &m, Strength::Strong).unwrap(),
            vec![st("00000")]
        );
    }

    #[test]
    fn swap_search() {
        let net = fixtures::n_swap();
        let x = st("01");
        let both = set(&[1, 2]);
        let m = find_map(&net, x, both, Strength::Consistent)
            .unwrap()
            .unwrap();
        assert!(m.is_consistent());
        assert_eq!(find_map(&net, x, both, Strength::Strong).unwrap(), None);
        let path = geodesic_from_map(&net, &m, Strength::Consistent).unwrap();
        assert_eq!(path, ["01", "11", "10"].map(st));
        assert_eq!(
            geodesic_from_map(&net, &m, Strength::Strong),
            Err(Error::InconsistentMap("strongly consistent"))
        );
    }

    #[test]
    fn search_agrees_with_geodesics_on_fixtures() {
        let caps = Caps::default();
        for net in [
            fixtures::n_swap(),
            fixtures::n_five(),
            fixtures::n_neg(),
            fixtures::neg_cycle(),
            chain(),
        ] {
            let n = net.n();
            for b in 0..1u64 << n {
                let x = State::from_bits(b, n);
                for j in ComponentSet::full(n).subsets() {
                    for strength in [Strength::Consistent, Strength::Strong] {
                        let map = find_map(&net, x, j, strength).unwrap();
                        let geo =
                            dynamics::geodesic(&net, x, j, strength.semantics(), &caps).unwrap();
                        assert_eq!(map.is_some(), geo.is_some(), "{x} {j} {strength:?}");
                        if let Some(m) = map {
                            let path = geodesic_from_map(&net, &m, strength).unwrap();
                            assert_eq!(path.last(), Some(&x.flip(j)));
                        }
                    }
                }
            }
        }
    }
}
