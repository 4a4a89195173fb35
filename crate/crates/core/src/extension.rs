//! Extended networks: an extender component is inserted on each chosen
//! interaction and copies the source of that interaction.

use std::collections::HashSet;

use crate::dynamics::{self, Caps, Semantics, StateSet};
use crate::error::{Error, Result};
use crate::network::{BooleanNetwork, Expr, UpdateFunction};
use crate::space::{ComponentSet, State, Subspace};
use crate::structure::{interaction_graph, verify_linear_cut, CutViolation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    base: BooleanNetwork,
    edges: Vec<(usize, usize)>,
    extended: BooleanNetwork,
}

fn substitute(e: &Expr, i: usize, reroute: &dyn Fn(usize, usize) -> Option<usize>) -> Expr {
    match e {
        Expr::Const(b) => Expr::Const(*b),
        Expr::Var(j) => Expr::Var(reroute(*j, i).unwrap_or(*j)),
        Expr::Not(a) => Expr::Not(Box::new(substitute(a, i, reroute))),
        Expr::And(a, b) => Expr::And(
            Box::new(substitute(a, i, reroute)),
            Box::new(substitute(b, i, reroute)),
        ),
        Expr::Or(a, b) => Expr::Or(
            Box::new(substitute(a, i, reroute)),
            Box::new(substitute(b, i, reroute)),
        ),
    }
}

/// Extends `net` on the given interactions (each `(source, target)` must be
/// an edge of the interaction graph). Extenders follow the core components in
/// ascending edge order and are named `<source>_to_<target>`.
pub fn extend(
    net: &BooleanNetwork,
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Result<Extension> {
    let mut edges: Vec<(usize, usize)> = edges.into_iter().collect();
    edges.sort_unstable();
    edges.dedup();
    let n = net.n();
    for &(j, i) in &edges {
        if j >= n || i >= n || !net.regulators(i).contains(&j) {
            return Err(Error::NotAnEdge(j, i));
        }
    }
    let reroute = |j: usize, i: usize| edges.binary_search(&(j, i)).ok().map(|k| n + k);

    let mut names: Vec<String> = net.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    for &(j, i) in &edges {
        let mut name = format!("{}_to_{}", net.name(j), net.name(i));
        while taken.contains(&name) {
            name.push('_');
        }
        taken.insert(name.clone());
        names.push(name);
    }

    let mut functions = Vec::with_capacity(n + edges.len());
    for i in 0..n {
        let f = net.function(i);
        let inputs: Vec<usize> = f
            .regulators()
            .iter()
            .map(|&j| reroute(j, i).unwrap_or(j))
            .collect();
        let (g, dropped) = UpdateFunction::from_table(inputs, f.table().to_vec())?;
        debug_assert!(dropped.is_empty());
        functions.push(g);
    }
    functions.extend(edges.iter().map(|&(j, _)| UpdateFunction::copy_of(j)));

    let mut exprs: Vec<Option<Expr>> = (0..n)
        .map(|i| net.expr(i).map(|e| substitute(e, i, &reroute)))
        .collect();
    exprs.extend(edges.iter().map(|&(j, _)| Some(Expr::Var(j))));

    let mut extended = BooleanNetwork::new(names, functions)?;
    if exprs.iter().all(Option::is_some) {
        extended.set_exprs(exprs);
    }
    Ok(Extension {
        base: net.clone(),
        edges,
        extended,
    })
}

/// Extension over every interaction.
pub fn full_extension(net: &BooleanNetwork) -> Extension {
    let g = interaction_graph(net);
    extend(net, g.edges().map(|(e, _)| e)).expect("interaction graph edges are edges")
}

/// Extension whose extenders form a linear cut: first every interaction from a
/// multi-target to a multi-regulator component, then, while some cycle or
/// offending path avoids the extenders, the smallest interaction on it.
pub fn cuttable_extension(net: &BooleanNetwork) -> Extension {
    let g = interaction_graph(net);
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(e, _)| e)
        .filter(|&(j, i)| g.targets(j).len() > 1 && g.regulators(i).len() > 1)
        .collect();
    loop {
        let ext = extend(net, edges.iter().copied()).expect("interaction graph edges are edges");
        let eg = interaction_graph(&ext.extended);
        match verify_linear_cut(&eg, ext.extender_set()).expect("extenders are components") {
            None => return ext,
            Some(v) => {
                let witness = match &v {
                    CutViolation::NotLinear(_) => unreachable!("extenders are linear"),
                    _ => v.witness_edges(),
                };
                let next = witness
                    .into_iter()
                    .filter(|&(a, b)| a < net.n() && b < net.n())
                    .min()
                    .expect("violations avoid the extenders");
                edges.push(next);
            }
        }
    }
}

impl Extension {
    pub fn base(&self) -> &BooleanNetwork {
        &self.base
    }

    pub fn extended(&self) -> &BooleanNetwork {
        &self.extended
    }

    /// Extended interactions, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn base_n(&self) -> usize {
        self.base.n()
    }

    pub fn extender_index(&self, source: usize, target: usize) -> Option<usize> {
        self.edges
            .binary_search(&(source, target))
            .ok()
            .map(|k| self.base.n() + k)
    }

    pub fn extender_set(&self) -> ComponentSet {
        (self.base.n()..self.extended.n()).collect()
    }

    /// E: copies each regulator into its extenders.
    pub fn embed(&self, x: State) -> State {
        let n = self.base.n();
        let mut y = State::from_bits(x.bits(), self.extended.n());
        for (k, &(j, _)) in self.edges.iter().enumerate() {
            y = y.with(n + k, x.get(j));
        }
        y
    }

    /// π: forgets the extenders.
    pub fn project(&self, y: State) -> State {
        let n = self.base.n();
        State::from_bits(y.bits() & ComponentSet::full(n).bits(), n)
    }

    /// πⁱ: the base state seen by core component `i`, reading each rerouted
    /// regulator from its extender.
    pub fn project_for(&self, y: State, i: usize) -> State {
        let mut x = self.project(y);
        for (k, &(j, t)) in self.edges.iter().enumerate() {
            if t == i {
                x = x.with(j, y.get(self.base.n() + k));
            }
        }
        x
    }

    pub fn is_canonical(&self, y: State) -> bool {
        self.embed(self.project(y)) == y
    }

    /// E-image of a base subspace: an extender is free iff its source is.
    pub fn embed_subspace(&self, t: Subspace) -> Subspace {
        let n = self.base.n();
        let mut s = Subspace::from_masks(t.fixed_mask(), t.value_mask(), self.extended.n());
        for (k, &(j, _)) in self.edges.iter().enumerate() {
            if let Some(v) = t.get(j) {
                s = s.with_fixed(n + k, v);
            }
        }
        s
    }

    pub fn project_subspace(&self, t: Subspace) -> Subspace {
        let mask = ComponentSet::full(self.base.n()).bits();
        Subspace::from_masks(t.fixed_mask() & mask, t.value_mask() & mask, self.base.n())
    }

    pub fn lift_trap_space(&self, t: Subspace) -> Result<Subspace> {
        if t.len() != self.base.n() || !dynamics::is_trap_space(&self.base, t) {
            return Err(Error::NotTrapSpace(t.to_string()));
        }
        let lifted = self.embed_subspace(t);
        debug_assert!(dynamics::is_trap_space(&self.extended, lifted));
        Ok(lifted)
    }

    pub fn project_trap_space(&self, t: Subspace) -> Result<Subspace> {
        if t.len() != self.extended.n() || !dynamics::is_trap_space(&self.extended, t) {
            return Err(Error::NotTrapSpace(t.to_string()));
        }
        let projected = self.project_subspace(t);
        debug_assert!(dynamics::is_trap_space(&self.base, projected));
        Ok(projected)
    }

    /// Asynchronous path in the extension from E(x) to E(y).
    pub fn l_reachable(&self, x: State, y: State, caps: &Caps) -> Result<Option<Vec<State>>> {
        self.reachable_from(self.embed(x), y, false, caps)
    }

    /// Asynchronous path from an extended state to E(y). Non-canonical starts
    /// are refused unless explicitly allowed.
    pub fn reachable_from(
        &self,
        start: State,
        y: State,
        allow_non_canonical: bool,
        caps: &Caps,
    ) -> Result<Option<Vec<State>>> {
        if start.len() != self.extended.n() {
            return Err(Error::LengthMismatch {
                expected: self.extended.n(),
                found: start.len(),
            });
        }
        if !allow_non_canonical && !self.is_canonical(start) {
            return Err(Error::NonCanonical(start.to_string()));
        }
        let goal = self.embed(y);
        dynamics::reachable(
            &self.extended,
            start,
            Semantics::Asynchronous,
            |s| s == goal,
            caps,
        )
    }

    /// Base states `y` with E(y) asynchronously reachable from E(x).
    pub fn l_reach_set(&self, x: State, caps: &Caps) -> Result<StateSet> {
        let reach =
            dynamics::reach_set(&self.extended, self.embed(x), Semantics::Asynchronous, caps)?;
        let mut out = StateSet::new(self.base.n());
        for s in reach.iter() {
            if self.is_canonical(s) {
                out.insert(self.project(s));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::netio::parse_bnet;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    fn sub(s: &str) -> Subspace {
        s.parse().unwrap()
    }

    fn same_tables(a: &BooleanNetwork, b: &BooleanNetwork) -> bool {
        a.n() == b.n() && (0..a.n()).all(|i| a.function(i) == b.function(i))
    }

    #[test]
    fn identity_extends_to_swap() {
        let ext = extend(&fixtures::n_id(), [(0, 0)]).unwrap();
        assert!(same_tables(ext.extended(), &fixtures::n_swap()));
        assert_eq!(ext.extended().names(), ["x1", "x1_to_x1"]);
        let full = full_extension(&fixtures::n_id());
        assert_eq!(full, ext);
    }

    #[test]
    fn empty_extension_is_the_base() {
        let five = fixtures::n_five();
        let ext = extend(&five, []).unwrap();
        assert!(same_tables(ext.extended(), &five));
        assert!(ext.extender_set().is_empty());
    }

    #[test]
    fn single_reroute() {
        let five = fixtures::n_five();
        let ext = extend(&five, [(0, 3)]).unwrap();
        let e = ext.extended();
        assert_eq!(e.n(), 6);
        assert_eq!(e.regulators(3), [5]);
        assert_eq!(e.regulators(5), [0]);
        assert_eq!(e.regulators(2), [0]);
        assert_eq!(e.name(5), "x1_to_x4");
        assert_eq!(ext.extender_index(0, 3), Some(5));
        assert_eq!(ext.extender_index(0, 2), None);
    }

    #[test]
    fn rejects_non_edges() {
        assert_eq!(
            extend(&fixtures::n_five(), [(0, 1)]),
            Err(Error::NotAnEdge(0, 1))
        );
    }

    #[test]
    fn name_collisions_get_suffixes() {
        let net = parse_bnet("a, b\nb, a\na_to_b, a_to_b\n").unwrap();
        let ext = extend(&net, [(0, 1)]).unwrap();
        assert_eq!(ext.extended().name(3), "a_to_b_");
    }

    #[test]
    fn eliminating_extenders_recovers_base() {
        let five = fixtures::n_five();
        let ext = full_extension(&five);
        for b in 0..32u64 {
            let x = State::from_bits(b, 5);
            assert_eq!(ext.project(ext.extended().eval(ext.embed(x))), five.eval(x));
        }
    }

    #[test]
    fn cuttable_extensions() {
        let swap = cuttable_extension(&fixtures::n_swap());
        assert_eq!(swap.edges(), [(0, 1)]);
        let eg = interaction_graph(swap.extended());
        assert_eq!(verify_linear_cut(&eg, swap.extender_set()).unwrap(), None);

        let five = cuttable_extension(&fixtures::n_five());
        assert_eq!(five.edges(), [(0, 2), (0, 3), (1, 4)]);
        let eg = interaction_graph(five.extended());
        assert_eq!(verify_linear_cut(&eg, five.extender_set()).unwrap(), None);
    }

    #[test]
    fn embeddings() {
        let ext = full_extension(&fixtures::n_id());
        assert_eq!(ext.embed(st("0")), st("00"));
        assert_eq!(ext.embed(st("1")), st("11"));
        assert_eq!(ext.project(st("01")), st("0"));
        assert_eq!(ext.project_for(st("01"), 0), st("1"));
        assert!(!ext.is_canonical(st("01")));

        let five = extend(&fixtures::n_five(), [(0, 3)]).unwrap();
        let y = st("100000");
        assert_eq!(five.project_for(y, 3), st("00000"));
        assert_eq!(five.project_for(y, 2), st("10000"));
        for b in 0..32u64 {
            let x = State::from_bits(b, 5);
            assert_eq!(five.project(five.embed(x)), x);
            assert_eq!(five.project_for(five.embed(x), 3), x);
        }
    }

    #[test]
    fn trap_space_transport() {
        let ext = full_extension(&fixtures::n_id());
        assert_eq!(ext.lift_trap_space(sub("0")).unwrap(), sub("00"));
        assert_eq!(ext.lift_trap_space(sub("1")).unwrap(), sub("11"));
        assert_eq!(ext.lift_trap_space(sub("*")).unwrap(), sub("**"));
        assert_eq!(ext.project_trap_space(sub("00")).unwrap(), sub("0"));
        assert_eq!(ext.project_trap_space(sub("**")).unwrap(), sub("*"));
        assert!(matches!(
            ext.project_trap_space(sub("0*")),
            Err(Error::NotTrapSpace(_))
        ));
        let traps = dynamics::trap_spaces(ext.extended(), &Caps::default()).unwrap();
        assert_eq!(traps, [sub("00"), sub("11"), sub("**")]);
    }

    #[test]
    fn l_reachability() {
        let caps = Caps::default();
        let swap = cuttable_extension(&fixtures::n_swap());
        let path = swap
            .l_reachable(st("01"), st("10"), &caps)
            .unwrap()
            .unwrap();
        assert_eq!(path.first(), Some(&swap.embed(st("01"))));
        assert_eq!(path.last(), Some(&swap.embed(st("10"))));
        assert_eq!(
            swap.l_reachable(st("01"), st("01"), &caps).unwrap(),
            Some(vec![st("010")])
        );
        assert!(matches!(
            swap.reachable_from(st("011"), st("10"), false, &caps),
            Err(Error::NonCanonical(_))
        ));
        assert!(swap
            .reachable_from(st("011"), st("10"), true, &caps)
            .unwrap()
            .is_some());
        let set = swap.l_reach_set(st("01"), &caps).unwrap();
        assert_eq!(set.len(), 4);
    }
}
