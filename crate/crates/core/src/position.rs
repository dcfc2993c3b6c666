//! Interned game trees and the engine that owns them.
//!
//! A [`Position`] is a handle into an [`Engine`]. Two positions built by the
//! same engine are isomorphic exactly when their handles are equal, so
//! structural questions reduce to integer comparisons.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::rulesets::RulesetMemo;
use crate::traverse::post_order;
use crate::values::Recognized;

/// The two kinds of terminal position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    /// `*L`: the game is over and Left has won.
    Left,
    /// `*R`: the game is over and Right has won.
    Right,
}

impl Terminal {
    pub fn flip(self) -> Terminal {
        match self {
            Terminal::Left => Terminal::Right,
            Terminal::Right => Terminal::Left,
        }
    }

    /// Sum of two terminals: an even number of `*R` leaves `*L`.
    pub fn combine(self, other: Terminal) -> Terminal {
        if self == other {
            Terminal::Left
        } else {
            Terminal::Right
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Terminal::Left => f.write_str("*L"),
            Terminal::Right => f.write_str("*R"),
        }
    }
}

/// Handle to an interned position. Only meaningful together with the
/// [`Engine`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(u32);

impl Position {
    pub(crate) const LEFT: Position = Position(0);
    pub(crate) const RIGHT: Position = Position(1);

    /// Interning id. Stable for a given sequence of engine operations.
    pub fn id(self) -> u32 {
        self.0
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone)]
enum Node {
    Terminal(Terminal),
    /// Options sorted by id, without duplicates.
    Options(Arc<[Position]>),
}

#[derive(Debug, Clone)]
struct Entry {
    node: Node,
    birthday: u32,
}

/// Interner plus memo tables.
///
/// Every table grows without bound; call [`Engine::clear_caches`] to drop the
/// memoized results while keeping existing handles valid.
#[derive(Debug, Clone)]
pub struct Engine {
    entries: Vec<Entry>,
    lookup: HashMap<Arc<[Position]>, Position>,
    canonical: Vec<Option<Arc<[Position]>>>,
    sums: HashMap<(Position, Position), Position>,
    outcomes: Vec<Option<Outcome>>,
    conjugates: HashMap<Position, Position>,
    pub(crate) simplified: HashMap<Position, Position>,
    pub(crate) recognized: HashMap<Position, Recognized>,
    pub(crate) universes: Vec<Arc<[Position]>>,
    pub(crate) universe_cap: u32,
    pub(crate) rulesets: RulesetMemo,
}

impl Default for Engine {
    fn default() -> Self {
        Self::new()
    }
}

impl Engine {
    /// Default largest day for which [`Engine::enumerate_universe`] will run.
    pub const DEFAULT_UNIVERSE_CAP: u32 = 2;

    pub fn new() -> Engine {
        let terminal = |t| Entry {
            node: Node::Terminal(t),
            birthday: 0,
        };
        Engine {
            entries: vec![terminal(Terminal::Left), terminal(Terminal::Right)],
            lookup: HashMap::new(),
            canonical: vec![Some(Arc::from([])), Some(Arc::from([]))],
            sums: HashMap::new(),
            outcomes: vec![Some(Outcome::L), Some(Outcome::R)],
            conjugates: HashMap::new(),
            simplified: HashMap::new(),
            recognized: HashMap::new(),
            universes: Vec::new(),
            universe_cap: Self::DEFAULT_UNIVERSE_CAP,
            rulesets: RulesetMemo::default(),
        }
    }

    /// Drops every memo table. Interned positions stay valid.
    pub fn clear_caches(&mut self) {
        self.sums.clear();
        self.outcomes.truncate(2);
        self.conjugates.clear();
        self.simplified.clear();
        self.recognized.clear();
        self.universes.clear();
        self.rulesets = RulesetMemo::default();
    }

    /// Returns the engine to its freshly constructed state. Every handle
    /// obtained before the reset is invalidated.
    pub fn reset(&mut self) {
        let cap = self.universe_cap;
        *self = Engine::new();
        self.universe_cap = cap;
    }

    /// Number of distinct positions interned so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn make_terminal(&self, kind: Terminal) -> Position {
        match kind {
            Terminal::Left => Position::LEFT,
            Terminal::Right => Position::RIGHT,
        }
    }

    pub fn left(&self) -> Position {
        Position::LEFT
    }

    pub fn right(&self) -> Position {
        Position::RIGHT
    }

    /// Interns `{options...}`. Isomorphic duplicates collapse into one option.
    pub fn make_position<I>(&mut self, options: I) -> Result<Position>
    where
        I: IntoIterator<Item = Position>,
    {
        let options: Vec<Position> = options.into_iter().collect();
        if options.is_empty() {
            return Err(Error::EmptyOptions);
        }
        Ok(self.intern(options))
    }

    pub(crate) fn intern(&mut self, mut options: Vec<Position>) -> Position {
        debug_assert!(!options.is_empty());
        options.sort_unstable();
        options.dedup();
        if let Some(&p) = self.lookup.get(options.as_slice()) {
            return p;
        }
        let birthday = 1 + options
            .iter()
            .map(|&o| self.entries[o.index()].birthday)
            .max()
            .unwrap_or(0);
        let id = u32::try_from(self.entries.len()).expect("interner exhausted u32 ids");
        let p = Position(id);
        let options: Arc<[Position]> = options.into();
        self.lookup.insert(options.clone(), p);
        self.entries.push(Entry {
            node: Node::Options(options),
            birthday,
        });
        self.canonical.push(None);
        p
    }

    pub fn terminal(&self, g: Position) -> Option<Terminal> {
        match self.entries[g.index()].node {
            Node::Terminal(t) => Some(t),
            Node::Options(_) => None,
        }
    }

    pub fn is_terminal(&self, g: Position) -> bool {
        self.terminal(g).is_some()
    }

    /// Options of `g` in id order; empty for terminals.
    pub fn options(&self, g: Position) -> &[Position] {
        match &self.entries[g.index()].node {
            Node::Terminal(_) => &[],
            Node::Options(opts) => opts,
        }
    }

    pub fn birthday(&self, g: Position) -> u32 {
        self.entries[g.index()].birthday
    }

    /// Number of nodes in the game tree of `g`, counting shared subtrees once
    /// per occurrence. Saturates at `u64::MAX`.
    pub fn node_count(&self, g: Position) -> u64 {
        let mut counts: HashMap<Position, u64> = HashMap::new();
        let order = post_order(
            g,
            |_| false,
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let n = self
                .options(k)
                .iter()
                .fold(1u64, |acc, o| acc.saturating_add(counts[o]));
            counts.insert(k, n);
        }
        counts[&g]
    }

    /// The position with every terminal kind swapped.
    pub fn conjugate(&mut self, g: Position) -> Position {
        let order = post_order(
            g,
            |k| self.is_terminal(*k) || self.conjugates.contains_key(k),
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let opts: Vec<Position> = self
                .options(k)
                .iter()
                .map(|&o| self.conjugate_known(o))
                .collect();
            let c = self.intern(opts);
            self.conjugates.insert(k, c);
            self.conjugates.insert(c, k);
        }
        self.conjugate_known(g)
    }

    fn conjugate_known(&self, g: Position) -> Position {
        match self.terminal(g) {
            Some(t) => self.make_terminal(t.flip()),
            None => self.conjugates[&g],
        }
    }

    /// Disjunctive sum. Terminal pairs combine by parity; otherwise the
    /// options are `G_i + H` and `G + H_j`, where a terminal summand
    /// contributes no options of its own.
    pub fn sum(&mut self, g: Position, h: Position) -> Position {
        let key = unordered(g, h);
        if let Some(&s) = self.sums.get(&key) {
            return s;
        }
        let order = post_order(
            key,
            |k| self.sums.contains_key(k),
            |&(a, b), out| {
                out.extend(self.options(a).iter().map(|&ai| unordered(ai, b)));
                out.extend(self.options(b).iter().map(|&bj| unordered(a, bj)));
            },
        );
        for (a, b) in order {
            let s = match (self.terminal(a), self.terminal(b)) {
                (Some(ta), Some(tb)) => self.make_terminal(ta.combine(tb)),
                _ => {
                    let mut opts =
                        Vec::with_capacity(self.options(a).len() + self.options(b).len());
                    opts.extend(
                        self.options(a)
                            .iter()
                            .map(|&ai| self.sums[&unordered(ai, b)]),
                    );
                    opts.extend(
                        self.options(b)
                            .iter()
                            .map(|&bj| self.sums[&unordered(a, bj)]),
                    );
                    self.intern(opts)
                }
            };
            self.sums.insert((a, b), s);
        }
        self.sums[&key]
    }

    /// Sum of all the given positions; `*L` (the identity) when empty.
    pub fn sum_all<I: IntoIterator<Item = Position>>(&mut self, parts: I) -> Position {
        parts
            .into_iter()
            .reduce(|acc, p| self.sum(acc, p))
            .unwrap_or(Position::LEFT)
    }

    pub fn outcome(&mut self, g: Position) -> Outcome {
        if let Some(o) = self.outcome_known(g) {
            return o;
        }
        let order = post_order(
            g,
            |k| self.outcome_known(*k).is_some(),
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        if self.outcomes.len() < self.entries.len() {
            self.outcomes.resize(self.entries.len(), None);
        }
        for k in order {
            let o = Outcome::from_options(
                self.options(k)
                    .iter()
                    .map(|o| self.outcomes[o.index()].expect("options are classified first")),
            );
            self.outcomes[k.index()] = Some(o);
        }
        self.outcomes[g.index()].expect("classified above")
    }

    fn outcome_known(&self, g: Position) -> Option<Outcome> {
        self.outcomes.get(g.index()).copied().flatten()
    }

    /// Options of `g` sorted by the canonical order.
    pub fn canonical_options(&mut self, g: Position) -> Arc<[Position]> {
        self.ensure_canonical(g);
        self.canonical[g.index()].clone().expect("prepared above")
    }

    /// Canonical total order on positions: by birthday, then terminals `*L`
    /// before `*R`, then lexicographically on canonically sorted options
    /// (a proper prefix sorts first).
    pub fn canonical_cmp(&mut self, a: Position, b: Position) -> Ordering {
        self.ensure_canonical(a);
        self.ensure_canonical(b);
        self.compare_prepared(a, b)
    }

    /// Sorts `items` by the canonical order.
    pub fn sort_canonical(&mut self, items: &mut [Position]) {
        for &p in items.iter() {
            self.ensure_canonical(p);
        }
        items.sort_by(|&a, &b| self.compare_prepared(a, b));
    }

    fn ensure_canonical(&mut self, g: Position) {
        let order = post_order(
            g,
            |k| self.canonical[k.index()].is_some(),
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let mut opts = self.options(k).to_vec();
            opts.sort_by(|&a, &b| self.compare_prepared(a, b));
            self.canonical[k.index()] = Some(opts.into());
        }
    }

    /// Requires canonical option lists for every node below `a` and `b`.
    /// Iterative: the first differing node decides the whole comparison.
    fn compare_prepared(&self, a: Position, b: Position) -> Ordering {
        let decide = |x: Position, y: Position| -> Option<Ordering> {
            let (bx, by) = (self.birthday(x), self.birthday(y));
            if bx != by {
                return Some(bx.cmp(&by));
            }
            match (self.terminal(x), self.terminal(y)) {
                (Some(tx), Some(ty)) => Some(tx.cmp(&ty)),
                _ => None,
            }
        };
        let prepared = |x: Position| {
            self.canonical[x.index()]
                .clone()
                .expect("canonical lists prepared before comparison")
        };
        if a == b {
            return Ordering::Equal;
        }
        if let Some(ord) = decide(a, b) {
            return ord;
        }
        let mut stack = vec![(prepared(a), prepared(b), 0usize)];
        while let Some((xs, ys, i)) = stack.last_mut() {
            if *i < xs.len().min(ys.len()) {
                let (x, y) = (xs[*i], ys[*i]);
                *i += 1;
                if x == y {
                    continue;
                }
                if let Some(ord) = decide(x, y) {
                    return ord;
                }
                let frame = (prepared(x), prepared(y), 0);
                stack.push(frame);
            } else {
                if xs.len() != ys.len() {
                    return xs.len().cmp(&ys.len());
                }
                stack.pop();
            }
        }
        Ordering::Equal
    }
}

fn unordered(a: Position, b: Position) -> (Position, Position) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(e: &mut Engine, opts: &[Position]) -> Position {
        e.make_position(opts.iter().copied()).unwrap()
    }

    #[test]
    fn terminals_are_interned_once() {
        let e = Engine::new();
        assert_eq!(
            e.make_terminal(Terminal::Left),
            e.make_terminal(Terminal::Left)
        );
        assert_ne!(e.left(), e.right());
        assert_eq!(e.birthday(e.left()), 0);
        assert_eq!(e.birthday(e.right()), 0);
    }

    #[test]
    fn duplicate_options_collapse() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let a = set(&mut e, &[l]);
        let b = set(&mut e, &[l, l]);
        assert_eq!(a, b);
        assert_eq!(e.options(a), &[l]);
        assert_eq!(e.birthday(a), 1);
        let lr = set(&mut e, &[l, r]);
        assert_eq!(e.options(lr).len(), 2);
        assert_eq!(e.birthday(lr), 1);
        assert_eq!(set(&mut e, &[r, l]), lr);
    }

    #[test]
    fn empty_options_are_rejected() {
        let mut e = Engine::new();
        let err = e.make_position([]).unwrap_err();
        assert_eq!(err, Error::EmptyOptions);
        assert_eq!(
            err.to_string(),
            "positions require at least one option; terminals are constructed separately"
        );
    }

    #[test]
    fn birthdays() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let bl = set(&mut e, &[l]);
        let g = set(&mut e, &[bl, r]);
        assert_eq!(e.birthday(g), 2);
    }

    #[test]
    fn conjugate_examples() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        assert_eq!(e.conjugate(l), r);
        let lr = set(&mut e, &[l, r]);
        assert_eq!(e.conjugate(lr), lr);
        let bl = set(&mut e, &[l]);
        let bbl = set(&mut e, &[bl]);
        let br = set(&mut e, &[r]);
        let bbr = set(&mut e, &[br]);
        assert_eq!(e.conjugate(bbl), bbr);
        assert_eq!(e.conjugate(bbr), bbl);
    }

    #[test]
    fn terminal_sum_table() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        assert_eq!(e.sum(l, l), l);
        assert_eq!(e.sum(r, r), l);
        assert_eq!(e.sum(l, r), r);
        assert_eq!(e.sum(r, l), r);
    }

    #[test]
    fn sum_examples() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let lr = set(&mut e, &[l, r]);
        assert_eq!(e.sum(lr, r), lr);
        // {*L} + {*R} = {*L + {*R}, {*L} + *R} = {{*R}, {*R}} = {{*R}}
        let bl = set(&mut e, &[l]);
        let br = set(&mut e, &[r]);
        let expected = set(&mut e, &[br]);
        assert_eq!(e.sum(bl, br), expected);
    }

    #[test]
    fn outcome_examples() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        assert_eq!(e.outcome(l), Outcome::L);
        assert_eq!(e.outcome(r), Outcome::R);
        let lr = set(&mut e, &[l, r]);
        assert_eq!(e.outcome(lr), Outcome::N);
        let bl = set(&mut e, &[l]);
        let br = set(&mut e, &[r]);
        assert_eq!(e.outcome(bl), Outcome::L);
        let g = set(&mut e, &[bl, br]);
        assert_eq!(e.outcome(g), Outcome::N);
    }

    #[test]
    fn deep_positions_do_not_overflow() {
        let mut e = Engine::new();
        let mut g = e.left();
        for i in 0..20_000 {
            let extra = if i % 3 == 0 { e.right() } else { e.left() };
            g = set(&mut e, &[g, extra]);
        }
        assert_eq!(e.birthday(g), 20_000);
        let c = e.conjugate(g);
        assert_eq!(e.conjugate(c), g);
        let _ = e.outcome(g);
        let s = e.sum(g, e.right());
        assert_eq!(s, c);
        let h = set(&mut e, &[g]);
        assert_eq!(e.canonical_cmp(g, h), Ordering::Less);
        assert_eq!(e.canonical_cmp(c, g), e.canonical_cmp(c, g));
    }

    #[test]
    fn canonical_order_examples() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let bl = set(&mut e, &[l]);
        let br = set(&mut e, &[r]);
        let lr = set(&mut e, &[l, r]);
        let mut xs = vec![br, lr, r, bl, l];
        e.sort_canonical(&mut xs);
        assert_eq!(xs, vec![l, r, bl, lr, br]);
        let g = set(&mut e, &[bl, r]);
        assert_eq!(&*e.canonical_options(g), &[r, bl]);
    }

    #[test]
    fn node_count_counts_tree_occurrences() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let bl = set(&mut e, &[l]);
        let g = set(&mut e, &[bl, l, r]);
        assert_eq!(e.node_count(l), 1);
        assert_eq!(e.node_count(g), 5);
    }

    #[test]
    fn clear_caches_keeps_handles() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        let lr = set(&mut e, &[l, r]);
        let s = e.sum(lr, lr);
        e.clear_caches();
        assert_eq!(e.sum(lr, lr), s);
        assert_eq!(e.outcome(s), Outcome::P);
        e.reset();
        assert_eq!(e.len(), 2);
    }
}
