//! States, subspaces and component sets.
//!
//! All three are bitmask-backed and therefore limited to [`MAX_COMPONENTS`]
//! components. Component `i` (zero-based) is bit `i`; the textual form lists
//! component 0 first, so `State` "011" has component 0 off.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_COMPONENTS: usize = 64;

fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Compare two bit vectors in textual (component 0 first) order.
fn textual_cmp(a: u64, b: u64) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let i = diff.trailing_zeros();
    if a >> i & 1 == 0 {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// A set of component indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentSet(u64);

impl ComponentSet {
    pub const fn empty() -> Self {
        ComponentSet(0)
    }

    pub fn full(n: usize) -> Self {
        ComponentSet(low_mask(n))
    }

    pub fn singleton(i: usize) -> Self {
        ComponentSet(1 << i)
    }

    pub const fn from_bits(bits: u64) -> Self {
        ComponentSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> Self {
        ComponentSet(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        ComponentSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ComponentSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ComponentSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ComponentSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets, in ascending order of their bitmask.
    pub fn subsets(self) -> impl Iterator<Item = ComponentSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(ComponentSet(cur))
        })
    }
}

impl FromIterator<usize> for ComponentSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = ComponentSet::empty();
        for i in iter {
            set.insert(i);
        }
        set
    }
}

/// Displays one-based indices, e.g. `{1,3,4}`.
impl fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Boolean state over `len` components.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct State {
    bits: u64,
    len: u8,
}

impl State {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_COMPONENTS);
        State {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_COMPONENTS);
        State {
            bits: bits & low_mask(len),
            len: len as u8,
        }
    }

    pub fn from_bools(values: &[bool]) -> Self {
        let mut s = State::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            s = s.with(i, v);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn get(self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn with(self, i: usize, value: bool) -> Self {
        debug_assert!(i < self.len());
        let bits = if value {
            self.bits | 1 << i
        } else {
            self.bits & !(1 << i)
        };
        State {
            bits,
            len: self.len,
        }
    }

    /// The state x̄^J: `self` with every member of `set` negated.
    pub fn flip(self, set: ComponentSet) -> Self {
        debug_assert!(set.bits() & !low_mask(self.len()) == 0);
        State {
            bits: self.bits ^ set.bits(),
            len: self.len,
        }
    }

    pub fn flip_one(self, i: usize) -> Self {
        self.flip(ComponentSet::singleton(i))
    }

    /// Components where the two states differ.
    pub fn diff(self, other: State) -> ComponentSet {
        ComponentSet::from_bits(self.bits ^ other.bits)
    }

    /// Components that are on.
    pub fn ones(self) -> ComponentSet {
        ComponentSet::from_bits(self.bits)
    }
}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len
            .cmp(&other.len)
            .then_with(|| textual_cmp(self.bits, other.bits))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for State {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.chars().count() > MAX_COMPONENTS {
            return Err(Error::InvalidArgument(format!("state `{s}` is too long")));
        }
        let mut values = Vec::new();
        for c in s.chars() {
            match c {
                '0' => values.push(false),
                '1' => values.push(true),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid character `{c}` in state `{s}`"
                    )))
                }
            }
        }
        Ok(State::from_bools(&values))
    }
}

/// A subspace: each component is fixed to 0/1 or free (`*`).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subspace {
    fixed: u64,
    values: u64,
    len: u8,
}

impl Subspace {
    /// The whole state space.
    pub fn full(len: usize) -> Self {
        assert!(len <= MAX_COMPONENTS);
        Subspace {
            fixed: 0,
            values: 0,
            len: len as u8,
        }
    }

    pub fn from_masks(fixed: u64, values: u64, len: usize) -> Self {
        assert!(len <= MAX_COMPONENTS);
        let fixed = fixed & low_mask(len);
        Subspace {
            fixed,
            values: values & fixed,
            len: len as u8,
        }
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn fixed_mask(self) -> u64 {
        self.fixed
    }

    pub fn value_mask(self) -> u64 {
        self.values
    }

    pub fn fixed(self) -> ComponentSet {
        ComponentSet::from_bits(self.fixed)
    }

    pub fn free(self) -> ComponentSet {
        ComponentSet::from_bits(!self.fixed & low_mask(self.len()))
    }

    pub fn get(self, i: usize) -> Option<bool> {
        if self.fixed >> i & 1 == 1 {
            Some(self.values >> i & 1 == 1)
        } else {
            None
        }
    }

    pub fn with_fixed(self, i: usize, value: bool) -> Self {
        let values = if value {
            self.values | 1 << i
        } else {
            self.values & !(1 << i)
        };
        Subspace {
            fixed: self.fixed | 1 << i,
            values,
            len: self.len,
        }
    }

    pub fn with_free(self, i: usize) -> Self {
        Subspace {
            fixed: self.fixed & !(1 << i),
            values: self.values & !(1 << i),
            len: self.len,
        }
    }

    /// Frees every member of `set`.
    pub fn freeing(self, set: ComponentSet) -> Self {
        Subspace {
            fixed: self.fixed & !set.bits(),
            values: self.values & !set.bits(),
            len: self.len,
        }
    }

    pub fn is_state(self) -> bool {
        self.free().is_empty()
    }

    pub fn as_state(self) -> Option<State> {
        self.is_state()
            .then(|| State::from_bits(self.values, self.len()))
    }

    pub fn dimension(self) -> usize {
        self.free().len()
    }

    pub fn contains_state(self, x: State) -> bool {
        (x.bits() ^ self.values) & self.fixed == 0
    }

    /// Per-coordinate containment: `other ⊆ self`.
    pub fn contains(self, other: Subspace) -> bool {
        self.fixed & !other.fixed == 0 && (self.values ^ other.values) & self.fixed == 0
    }

    /// Intersection, or `None` when the subspaces are disjoint.
    pub fn intersect(self, other: Subspace) -> Option<Subspace> {
        let both = self.fixed & other.fixed;
        if (self.values ^ other.values) & both != 0 {
            return None;
        }
        Some(Subspace {
            fixed: self.fixed | other.fixed,
            values: self.values | other.values,
            len: self.len,
        })
    }

    /// The state of the subspace with all free coordinates set to 0.
    pub fn lowest(self) -> State {
        State::from_bits(self.values, self.len())
    }

    /// Enumerates the member states.
    pub fn states(self) -> impl Iterator<Item = State> {
        let base = self.values;
        let len = self.len();
        self.free()
            .subsets()
            .map(move |s| State::from_bits(base | s.bits(), len))
    }
}

impl From<State> for Subspace {
    fn from(x: State) -> Self {
        Subspace::from_masks(low_mask(x.len()), x.bits(), x.len())
    }
}

fn subspace_char(t: Subspace, i: usize) -> u8 {
    match t.get(i) {
        Some(false) => 0,
        Some(true) => 1,
        None => 2,
    }
}

/// Textual order with `0 < 1 < *`.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            (0..self.len())
                .map(|i| subspace_char(*self, i).cmp(&subspace_char(*other, i)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(match self.get(i) {
                Some(false) => "0",
                Some(true) => "1",
                None => "*",
            })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Subspace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let chars: Vec<char> = s.chars().collect();
        if chars.len() > MAX_COMPONENTS {
            return Err(Error::InvalidArgument(format!(
                "subspace `{s}` is too long"
            )));
        }
        let mut t = Subspace::full(chars.len());
        for (i, c) in chars.into_iter().enumerate() {
            t = match c {
                '0' => t.with_fixed(i, false),
                '1' => t.with_fixed(i, true),
                '*' | '⋆' | '-' => t,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "invalid character `{c}` in subspace `{s}`"
                    )))
                }
            };
        }
        Ok(t)
    }
}

/// Δ(a, b): components fixed in both with different values.
pub fn delta(a: Subspace, b: Subspace) -> ComponentSet {
    ComponentSet::from_bits(a.fixed & b.fixed & (a.values ^ b.values))
}

/// The Δ / Same / Free partition of the components for a state and a subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Partition {
    pub delta: ComponentSet,
    pub same: ComponentSet,
    pub free: ComponentSet,
}

pub fn partition(x: State, t: Subspace) -> Partition {
    let xs = Subspace::from(x);
    let delta = delta(xs, t);
    Partition {
        delta,
        same: t.fixed().difference(delta),
        free: t.free(),
    }
}

/// Components fixed by `t` to the value they have in `x`.
pub fn same(x: State, t: Subspace) -> ComponentSet {
    partition(x, t).same
}

/// The minimal subspace containing every state of `states`.
pub fn hull<I: IntoIterator<Item = State>>(states: I) -> Result<Subspace> {
    let mut iter = states.into_iter();
    let first = iter.next().ok_or(Error::EmptyHull)?;
    let mut varying = 0u64;
    for s in iter {
        if s.len() != first.len() {
            return Err(Error::LengthMismatch {
                expected: first.len(),
                found: s.len(),
            });
        }
        varying |= s.bits() ^ first.bits();
    }
    Ok(Subspace::from(first).freeing(ComponentSet::from_bits(varying)))
}

/// The subspace [x, y] spanned by two states.
pub fn span(x: State, y: State) -> Subspace {
    Subspace::from(x).freeing(x.diff(y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    fn sub(s: &str) -> Subspace {
        s.parse().unwrap()
    }

    fn set(items: &[usize]) -> ComponentSet {
        items.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(sub("00000"), sub("10110")), set(&[1, 3, 4]));
        assert_eq!(delta(sub("10110"), sub("10110")), ComponentSet::empty());
        assert_eq!(delta(sub("0*"), sub("11")), set(&[1]));
    }

    #[test]
    fn partition_examples() {
        let p = partition(st("01"), sub("0*"));
        assert_eq!((p.delta, p.same, p.free), (set(&[]), set(&[1]), set(&[2])));
        let p = partition(st("01"), sub("10"));
        assert_eq!(
            (p.delta, p.same, p.free),
            (set(&[1, 2]), set(&[]), set(&[]))
        );
        let p = partition(st("11011"), sub("*****"));
        assert_eq!(p.free, set(&[1, 2, 3, 4, 5]));
        assert!(p.delta.is_empty() && p.same.is_empty());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(st("11011").flip(set(&[1])), st("01011"));
        assert_eq!(st("11011").flip(ComponentSet::empty()), st("11011"));
        assert_eq!(st("00").flip(set(&[1, 2])), st("11"));
    }

    #[test]
    fn hull_examples() {
        assert_eq!(hull([st("00000")]).unwrap(), sub("00000"));
        assert_eq!(hull([st("00"), st("11")]).unwrap(), sub("**"));
        assert_eq!(hull([st("000"), st("010"), st("011")]).unwrap(), sub("0**"));
        assert_eq!(hull(Vec::<State>::new()), Err(Error::EmptyHull));
    }

    #[test]
    fn textual_order() {
        let mut v = vec![st("11111"), st("10110"), st("00000")];
        v.sort();
        assert_eq!(v, vec![st("00000"), st("10110"), st("11111")]);
        let mut t = vec![sub("**"), sub("11"), sub("00"), sub("0*")];
        t.sort();
        assert_eq!(t, vec![sub("00"), sub("0*"), sub("11"), sub("**")]);
    }

    #[test]
    fn subspace_states_and_containment() {
        let t = sub("1*0*");
        let states: Vec<_> = t.states().collect();
        assert_eq!(states.len(), 4);
        assert!(states.iter().all(|&s| t.contains_state(s)));
        assert!(sub("****").contains(t));
        assert!(!t.contains(sub("****")));
        assert!(t.contains(sub("110*")));
        assert_eq!(t.intersect(sub("0***")), None);
        assert_eq!(t.intersect(sub("**01")), Some(sub("1*01")));
    }

    #[test]
    fn subsets_enumeration() {
        let s = set(&[1, 3]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs, vec![set(&[]), set(&[1]), set(&[3]), set(&[1, 3])]);
        assert_eq!(ComponentSet::empty().subsets().count(), 1);
    }
}
