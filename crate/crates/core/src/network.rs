//! Boolean networks stored as regulator-local truth tables.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{ComponentSet, State, Subspace, MAX_COMPONENTS};

/// Largest in-degree accepted for a single update function.
pub const MAX_INDEGREE: usize = 20;

/// Update-function expression, kept from parsing for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(usize),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn eval(&self, value: &dyn Fn(usize) -> bool) -> bool {
        match self {
            Expr::Const(b) => *b,
            Expr::Var(i) => value(*i),
            Expr::Not(e) => !e.eval(value),
            Expr::And(a, b) => a.eval(value) && b.eval(value),
            Expr::Or(a, b) => a.eval(value) || b.eval(value),
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(i) => {
                out.insert(*i);
            }
            Expr::Not(e) => e.collect_vars(out),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Renders with `!`, `&`, `|` and the minimal parentheses for that precedence.
    pub fn render(&self, names: &[String]) -> String {
        let mut s = String::new();
        self.render_into(names, 0, &mut s);
        s
    }

    // precedence: 0 = or, 1 = and, 2 = not/atom
    fn render_into(&self, names: &[String], parent: u8, out: &mut String) {
        match self {
            Expr::Const(b) => out.push_str(if *b { "1" } else { "0" }),
            Expr::Var(i) => out.push_str(&names[*i]),
            Expr::Not(e) => {
                out.push('!');
                e.render_into(names, 2, out);
            }
            Expr::And(a, b) => {
                if parent > 1 {
                    out.push('(');
                }
                a.render_into(names, 1, out);
                out.push_str(" & ");
                b.render_into(names, 1, out);
                if parent > 1 {
                    out.push(')');
                }
            }
            Expr::Or(a, b) => {
                if parent > 0 {
                    out.push('(');
                }
                a.render_into(names, 0, out);
                out.push_str(" | ");
                b.render_into(names, 0, out);
                if parent > 0 {
                    out.push(')');
                }
            }
        }
    }
}

/// A truth table over an ascending list of essential regulators.
///
/// Row `r` of the table holds the value for the assignment where regulator
/// `regulators[p]` takes bit `p` of `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpdateFunction {
    regulators: Vec<usize>,
    table: Vec<bool>,
}

impl UpdateFunction {
    pub fn constant(value: bool) -> Self {
        UpdateFunction {
            regulators: Vec::new(),
            table: vec![value],
        }
    }

    /// Identity on a single component.
    pub fn copy_of(j: usize) -> Self {
        UpdateFunction {
            regulators: vec![j],
            table: vec![false, true],
        }
    }

    /// Builds a function from declared inputs (any order, no duplicates) and a
    /// table indexed like [`UpdateFunction`] rows. Returns the function with
    /// non-essential inputs removed, plus the removed inputs.
    pub fn from_table(inputs: Vec<usize>, table: Vec<bool>) -> Result<(Self, Vec<usize>)> {
        if inputs.len() > MAX_INDEGREE {
            return Err(Error::InvalidArgument(format!(
                "in-degree {} exceeds the limit of {MAX_INDEGREE}",
                inputs.len()
            )));
        }
        if table.len() != 1usize << inputs.len() {
            return Err(Error::LengthMismatch {
                expected: 1 << inputs.len(),
                found: table.len(),
            });
        }
        let distinct: HashSet<_> = inputs.iter().collect();
        if distinct.len() != inputs.len() {
            return Err(Error::InvalidArgument("duplicate regulator".into()));
        }
        let k = inputs.len();
        let essential: Vec<bool> = (0..k)
            .map(|p| (0..table.len()).any(|r| table[r] != table[r ^ (1 << p)]))
            .collect();
        let mut kept: Vec<usize> = (0..k).filter(|&p| essential[p]).collect();
        kept.sort_by_key(|&p| inputs[p]);
        let pruned: Vec<usize> = (0..k)
            .filter(|&p| !essential[p])
            .map(|p| inputs[p])
            .collect();
        let regulators: Vec<usize> = kept.iter().map(|&p| inputs[p]).collect();
        let mut new_table = vec![false; 1 << kept.len()];
        for (r, slot) in new_table.iter_mut().enumerate() {
            let mut old = 0usize;
            for (q, &p) in kept.iter().enumerate() {
                if r >> q & 1 == 1 {
                    old |= 1 << p;
                }
            }
            *slot = table[old];
        }
        Ok((
            UpdateFunction {
                regulators,
                table: new_table,
            },
            pruned,
        ))
    }

    /// Tabulates `f` over the given inputs and prunes.
    pub fn tabulate(inputs: Vec<usize>, f: impl Fn(&[bool]) -> bool) -> Result<(Self, Vec<usize>)> {
        let k = inputs.len();
        if k > MAX_INDEGREE {
            return Err(Error::InvalidArgument(format!(
                "in-degree {k} exceeds the limit of {MAX_INDEGREE}"
            )));
        }
        let mut buf = vec![false; k];
        let table = (0..1usize << k)
            .map(|r| {
                for (p, b) in buf.iter_mut().enumerate() {
                    *b = r >> p & 1 == 1;
                }
                f(&buf)
            })
            .collect();
        Self::from_table(inputs, table)
    }

    pub fn regulators(&self) -> &[usize] {
        &self.regulators
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn indegree(&self) -> usize {
        self.regulators.len()
    }

    pub fn is_constant(&self) -> Option<bool> {
        self.regulators.is_empty().then(|| self.table[0])
    }

    pub fn row_of(&self, x: State) -> usize {
        self.regulators
            .iter()
            .enumerate()
            .fold(0, |acc, (p, &j)| acc | (x.get(j) as usize) << p)
    }

    pub fn eval(&self, x: State) -> bool {
        self.table[self.row_of(x)]
    }

    /// Which values the function takes on a subspace, as `(takes 0, takes 1)`.
    pub fn values_on(&self, t: Subspace) -> (bool, bool) {
        let mut base = 0usize;
        let mut free_positions = 0usize;
        for (p, &j) in self.regulators.iter().enumerate() {
            match t.get(j) {
                Some(true) => base |= 1 << p,
                Some(false) => {}
                None => free_positions |= 1 << p,
            }
        }
        let (mut zero, mut one) = (false, false);
        let mut sub = 0usize;
        loop {
            if self.table[base | sub] {
                one = true;
            } else {
                zero = true;
            }
            if zero && one || sub == free_positions {
                break;
            }
            sub = (sub.wrapping_sub(free_positions)) & free_positions;
        }
        (zero, one)
    }

    /// `Some(v)` when the function is constantly `v` on `t`.
    pub fn constant_on(&self, t: Subspace) -> Option<bool> {
        match self.values_on(t) {
            (true, false) => Some(false),
            (false, true) => Some(true),
            _ => None,
        }
    }

    /// Sensitivity signs of regulator position `p`: (has +1, has −1).
    pub fn signs_of(&self, p: usize) -> (bool, bool) {
        let (mut pos, mut neg) = (false, false);
        for r in 0..self.table.len() {
            if r >> p & 1 == 0 {
                match (self.table[r], self.table[r | 1 << p]) {
                    (false, true) => pos = true,
                    (true, false) => neg = true,
                    _ => {}
                }
            }
        }
        (pos, neg)
    }

    /// Maximal local cubes `(fixed mask, values)` on which the table equals `v`.
    pub fn local_primes(&self, v: bool) -> Vec<(u32, u32)> {
        let k = self.regulators.len();
        let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
        let mut level: HashSet<(u32, u32)> = (0..self.table.len())
            .filter(|&r| self.table[r] == v)
            .map(|r| (full, r as u32))
            .collect();
        let mut primes = Vec::new();
        while !level.is_empty() {
            let mut next = HashSet::new();
            let mut merged = HashSet::new();
            for &(mask, val) in &level {
                let mut bits = mask;
                while bits != 0 {
                    let b = bits & bits.wrapping_neg();
                    bits &= bits - 1;
                    let partner = (mask, val ^ b);
                    if level.contains(&partner) {
                        merged.insert((mask, val));
                        next.insert((mask & !b, val & !b));
                    }
                }
            }
            primes.extend(level.iter().filter(|t| !merged.contains(t)).copied());
            level = next;
        }
        primes
    }
}

/// A Boolean network `(V, f)` with named components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BooleanNetwork {
    names: Vec<String>,
    functions: Vec<UpdateFunction>,
    exprs: Vec<Option<Expr>>,
    pruned: Vec<(usize, usize)>,
}

impl BooleanNetwork {
    pub fn new(names: Vec<String>, functions: Vec<UpdateFunction>) -> Result<Self> {
        let n = names.len();
        if n > MAX_COMPONENTS {
            return Err(Error::InvalidArgument(format!(
                "{n} components exceeds the limit of {MAX_COMPONENTS}"
            )));
        }
        if functions.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: functions.len(),
            });
        }
        let distinct: HashSet<_> = names.iter().collect();
        if distinct.len() != n {
            return Err(Error::InvalidArgument("duplicate component name".into()));
        }
        for f in &functions {
            if let Some(&j) = f.regulators.iter().find(|&&j| j >= n) {
                return Err(Error::UnknownComponent(j));
            }
        }
        Ok(BooleanNetwork {
            names,
            functions,
            exprs: vec![None; n],
            pruned: Vec::new(),
        })
    }

    /// Builds a network from declared inputs and a closure over input values.
    /// Non-essential inputs are pruned and reported by [`Self::pruned_inputs`].
    pub fn from_fn(
        names: Vec<String>,
        inputs: Vec<Vec<usize>>,
        f: impl Fn(usize, &[bool]) -> bool,
    ) -> Result<Self> {
        let mut functions = Vec::with_capacity(inputs.len());
        let mut pruned = Vec::new();
        for (i, inp) in inputs.into_iter().enumerate() {
            let (func, dropped) = UpdateFunction::tabulate(inp, |v| f(i, v))?;
            pruned.extend(dropped.into_iter().map(|j| (i, j)));
            functions.push(func);
        }
        let mut net = Self::new(names, functions)?;
        net.pruned = pruned;
        Ok(net)
    }

    /// Builds a network with default names `x1..xn`.
    pub fn from_fn_unnamed(
        inputs: Vec<Vec<usize>>,
        f: impl Fn(usize, &[bool]) -> bool,
    ) -> Result<Self> {
        let names = (1..=inputs.len()).map(|i| format!("x{i}")).collect();
        Self::from_fn(names, inputs, f)
    }

    pub(crate) fn set_exprs(&mut self, exprs: Vec<Option<Expr>>) {
        debug_assert_eq!(exprs.len(), self.n());
        self.exprs = exprs;
    }

    pub(crate) fn add_pruned(&mut self, pruned: impl IntoIterator<Item = (usize, usize)>) {
        self.pruned.extend(pruned);
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|s| s == name)
    }

    pub fn function(&self, i: usize) -> &UpdateFunction {
        &self.functions[i]
    }

    pub fn functions(&self) -> &[UpdateFunction] {
        &self.functions
    }

    pub fn expr(&self, i: usize) -> Option<&Expr> {
        self.exprs[i].as_ref()
    }

    /// Declared inputs removed because they never influence their target,
    /// as `(target, input)` pairs.
    pub fn pruned_inputs(&self) -> &[(usize, usize)] {
        &self.pruned
    }

    pub fn regulators(&self, i: usize) -> &[usize] {
        &self.functions[i].regulators
    }

    pub fn eval_component(&self, i: usize, x: State) -> bool {
        self.functions[i].eval(x)
    }

    pub fn eval(&self, x: State) -> State {
        debug_assert_eq!(x.len(), self.n());
        let mut bits = 0u64;
        for (i, f) in self.functions.iter().enumerate() {
            if f.eval(x) {
                bits |= 1 << i;
            }
        }
        State::from_bits(bits, self.n())
    }

    /// Δ(x, f(x)): the components not stable in `x`.
    pub fn unstable(&self, x: State) -> ComponentSet {
        x.diff(self.eval(x))
    }

    pub fn is_fixed_point(&self, x: State) -> bool {
        self.unstable(x).is_empty()
    }

    /// Prime implicants of `f_i = v`, as subspaces over all components, sorted
    /// by number of fixed coordinates and then textually.
    pub fn prime_implicants(&self, i: usize, v: bool) -> Vec<Subspace> {
        let f = &self.functions[i];
        let n = self.n();
        let mut out: Vec<Subspace> = f
            .local_primes(v)
            .into_iter()
            .map(|(mask, val)| {
                let mut t = Subspace::full(n);
                for (p, &j) in f.regulators.iter().enumerate() {
                    if mask >> p & 1 == 1 {
                        t = t.with_fixed(j, val >> p & 1 == 1);
                    }
                }
                t
            })
            .collect();
        out.sort_by(|a, b| a.fixed().len().cmp(&b.fixed().len()).then_with(|| a.cmp(b)));
        out
    }

    /// The same network with component names replaced.
    pub fn renamed(&self, names: Vec<String>) -> Result<Self> {
        let mut net = Self::new(names, self.functions.clone())?;
        net.exprs = self.exprs.clone();
        Ok(net)
    }
}

impl fmt::Display for BooleanNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::netio::serialize_bnet(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn sub(s: &str) -> Subspace {
        s.parse().unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let swap = fixtures::n_swap();
        assert_eq!(swap.eval("01".parse().unwrap()).to_string(), "10");
        let five = fixtures::n_five();
        assert_eq!(five.eval("00000".parse().unwrap()).to_string(), "00000");
        assert_eq!(five.eval("11011".parse().unwrap()).to_string(), "01111");
    }

    #[test]
    fn pruning_removes_non_essential_inputs() {
        let net = BooleanNetwork::from_fn_unnamed(vec![vec![0, 1], vec![0]], |i, v| match i {
            0 => v[0],
            _ => v[0],
        })
        .unwrap();
        assert_eq!(net.regulators(0), &[0]);
        assert_eq!(net.pruned_inputs(), &[(0, 1)]);
        for f in net.functions() {
            assert_eq!(f.table().len(), 1 << f.indegree());
        }
    }

    #[test]
    fn unsorted_inputs_are_normalized() {
        let (f, pruned) = UpdateFunction::tabulate(vec![3, 1], |v| v[0] && !v[1]).unwrap();
        assert!(pruned.is_empty());
        assert_eq!(f.regulators(), &[1, 3]);
        // x3 & !x1
        let x = State::from_bools(&[false, false, false, true]);
        assert!(f.eval(x));
        assert!(!f.eval(x.flip_one(1)));
    }

    #[test]
    fn prime_implicant_examples() {
        let five = fixtures::n_five();
        assert_eq!(five.prime_implicants(1, true), vec![sub("***11")]);
        assert_eq!(
            five.prime_implicants(1, false),
            vec![sub("***0*"), sub("****0")]
        );
        let constant = BooleanNetwork::from_fn_unnamed(vec![vec![]], |_, _| true).unwrap();
        assert!(constant.prime_implicants(0, false).is_empty());
        assert_eq!(constant.prime_implicants(0, true), vec![sub("*")]);
    }

    #[test]
    fn values_on_subspace() {
        let five = fixtures::n_five();
        let f2 = five.function(1);
        assert_eq!(f2.values_on(sub("*****")), (true, true));
        assert_eq!(f2.values_on(sub("***11")), (false, true));
        assert_eq!(f2.constant_on(sub("***0*")), Some(false));
    }

    #[test]
    fn expr_rendering() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let e = Expr::And(
            Box::new(Expr::Or(Box::new(Expr::Var(0)), Box::new(Expr::Var(1)))),
            Box::new(Expr::Not(Box::new(Expr::Var(2)))),
        );
        assert_eq!(e.render(&names), "(a | b) & !c");
    }
}
