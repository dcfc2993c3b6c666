//! Even Nim and subtraction games under the parity ending: when no move is
//! left, Left wins if the total number of tokens is even and Right wins if
//! it is odd.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::position::{Engine, Position};
use crate::traverse::post_order;
use crate::values::{nim_sum, NamedValue};

#[derive(Debug, Clone, Default)]
pub(crate) struct RulesetMemo {
    even_nim: HashMap<Vec<EvenNimPile>, Position>,
    subtraction: HashMap<SubtractionSet, HashMap<Vec<u32>, Position>>,
}

/// One Even Nim pile. A fresh pile has never been chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenNimPile {
    pub size: u32,
    pub fresh: bool,
}

impl EvenNimPile {
    /// Sizes reachable in one move. The first removal from a pile takes any
    /// positive number of tokens; later removals take a positive even number.
    fn moves(self) -> impl Iterator<Item = EvenNimPile> {
        let step = if self.fresh { 1 } else { 2 };
        (1..=self.size / step).map(move |k| EvenNimPile {
            size: self.size - k * step,
            fresh: false,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EvenNimState {
    pub piles: Vec<EvenNimPile>,
}

impl EvenNimState {
    /// Starting position: every pile fresh and even.
    pub fn initial(sizes: &[u32]) -> Result<EvenNimState> {
        if let Some(&size) = sizes.iter().find(|&&s| s % 2 == 1) {
            return Err(Error::OddInitialPile { size });
        }
        Ok(EvenNimState {
            piles: sizes
                .iter()
                .map(|&size| EvenNimPile { size, fresh: true })
                .collect(),
        })
    }

    pub fn total_tokens(&self) -> u64 {
        self.piles.iter().map(|p| u64::from(p.size)).sum()
    }

    fn key(&self) -> Vec<EvenNimPile> {
        let mut key = self.piles.clone();
        key.sort_unstable();
        key
    }
}

/// A finite set of positive removal amounts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubtractionSet(Vec<u32>);

impl SubtractionSet {
    pub fn new(values: &[u32]) -> Result<SubtractionSet> {
        if values.is_empty() || values.contains(&0) {
            return Err(Error::InvalidSubtractionSet);
        }
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        Ok(SubtractionSet(v))
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for SubtractionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubtractionState {
    pub piles: Vec<u32>,
    pub set: SubtractionSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Periodicity {
    pub preperiod: usize,
    pub period: usize,
}

/// Simplified values of single piles of size `0..=n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueTable {
    pub entries: Vec<Position>,
    pub periodicity: Option<Periodicity>,
}

/// Smallest `(preperiod, period)`, compared preperiod first, such that
/// `entries[n] == entries[n + period]` for every `n >= preperiod` in range.
/// Only reported when at least two full periods follow the preperiod.
pub fn detect_periodicity(entries: &[Position]) -> Option<Periodicity> {
    let len = entries.len();
    for preperiod in 0..len {
        let mut period = 1;
        while len - preperiod >= 2 * period {
            if (preperiod..len - period).all(|n| entries[n] == entries[n + period]) {
                return Some(Periodicity { preperiod, period });
            }
            period += 1;
        }
    }
    None
}

/// Closed-form value of a single Even Nim pile.
pub fn even_nim_value(size: u32, fresh: bool, initial: bool) -> Result<NamedValue> {
    if initial {
        if size % 2 == 1 {
            return Err(Error::OddInitialPile { size });
        }
        return Ok(if size == 0 {
            NamedValue::star_l(0)
        } else {
            NamedValue::maltese(size / 2)
        });
    }
    if fresh && size > 0 {
        // A fresh pile that is not part of an initial position behaves the
        // same way; only the even-size restriction is specific to starts.
        return match size % 2 {
            0 => Ok(NamedValue::maltese(size / 2)),
            _ => Err(Error::OddInitialPile { size }),
        };
    }
    Ok(if size.is_multiple_of(2) {
        NamedValue::star_l(size / 2)
    } else {
        NamedValue::star_r((size - 1) / 2)
    })
}

/// Closed-form outcome of an initial Even Nim position. Empty piles are the
/// identity `*L` and are dropped; the rest is a sum of `M_(a/2)`.
pub fn even_nim_outcome(sizes: &[u32]) -> Result<Outcome> {
    if let Some(&size) = sizes.iter().find(|&&s| s % 2 == 1) {
        return Err(Error::OddInitialPile { size });
    }
    let mut piles: Vec<u32> = sizes.iter().copied().filter(|&s| s > 0).collect();
    piles.sort_unstable();
    Ok(match piles.len() {
        0 => Outcome::L,
        1 => Outcome::N,
        _ if nim_sum(piles[2..].iter().copied()) == 0 => Outcome::P,
        _ => Outcome::N,
    })
}

impl Engine {
    pub fn terminal_of_parity(&self, total_tokens: u64) -> Position {
        if total_tokens.is_multiple_of(2) {
            self.left()
        } else {
            self.right()
        }
    }

    /// Full game tree of an Even Nim position.
    pub fn even_nim_tree(&mut self, state: &EvenNimState) -> Position {
        let root = state.key();
        let memo = &self.rulesets.even_nim;
        let order = post_order(
            root.clone(),
            |k| memo.contains_key(k),
            |k, out| out.extend(even_nim_children(k)),
        );
        for key in order {
            let children = even_nim_children(&key);
            let value = if children.is_empty() {
                let total = key.iter().map(|p| u64::from(p.size)).sum();
                self.terminal_of_parity(total)
            } else {
                let opts = children.iter().map(|c| self.rulesets.even_nim[c]).collect();
                self.intern(opts)
            };
            self.rulesets.even_nim.insert(key, value);
        }
        self.rulesets.even_nim[&root]
    }

    /// Full game tree of a subtraction game position.
    pub fn subtraction_tree(&mut self, state: &SubtractionState) -> Position {
        let mut root = state.piles.clone();
        root.sort_unstable();
        let set = state.set.values().to_vec();
        let mut memo = self
            .rulesets
            .subtraction
            .remove(&state.set)
            .unwrap_or_default();
        let order = post_order(
            root.clone(),
            |k| memo.contains_key(k),
            |k, out| out.extend(subtraction_children(k, &set)),
        );
        for key in order {
            let children = subtraction_children(&key, &set);
            let value = if children.is_empty() {
                let total = key.iter().map(|&p| u64::from(p)).sum();
                self.terminal_of_parity(total)
            } else {
                let opts = children.iter().map(|c| memo[c]).collect();
                self.intern(opts)
            };
            memo.insert(key, value);
        }
        let result = memo[&root];
        self.rulesets.subtraction.insert(state.set.clone(), memo);
        result
    }

    /// Simplified single-pile values for sizes `0..=n_max`, with detected
    /// periodicity.
    pub fn value_table(&mut self, set: &SubtractionSet, n_max: usize) -> ValueTable {
        let entries: Vec<Position> = (0..=n_max)
            .map(|n| {
                let raw = self.subtraction_tree(&SubtractionState {
                    piles: vec![n as u32],
                    set: set.clone(),
                });
                self.simplify(raw)
            })
            .collect();
        let periodicity = detect_periodicity(&entries);
        ValueTable {
            entries,
            periodicity,
        }
    }
}

fn even_nim_children(key: &[EvenNimPile]) -> Vec<Vec<EvenNimPile>> {
    let mut out = Vec::new();
    for (i, pile) in key.iter().enumerate() {
        if i > 0 && key[i - 1] == *pile {
            continue;
        }
        for next in pile.moves() {
            let mut child = key.to_vec();
            child[i] = next;
            child.sort_unstable();
            out.push(child);
        }
    }
    out
}

fn subtraction_children(key: &[u32], set: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for (i, &pile) in key.iter().enumerate() {
        if i > 0 && key[i - 1] == pile {
            continue;
        }
        for &s in set.iter().filter(|&&s| s <= pile) {
            let mut child = key.to_vec();
            child[i] = pile - s;
            child.sort_unstable();
            out.push(child);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn touched(size: u32) -> EvenNimState {
        EvenNimState {
            piles: vec![EvenNimPile { size, fresh: false }],
        }
    }

    #[test]
    fn parity_terminals() {
        let e = Engine::new();
        assert_eq!(e.terminal_of_parity(2), e.left());
        assert_eq!(e.terminal_of_parity(0), e.left());
        assert_eq!(e.terminal_of_parity(1), e.right());
    }

    #[test]
    fn even_nim_tree_examples() {
        let mut e = Engine::new();
        let empty = EvenNimState::initial(&[0]).unwrap();
        assert_eq!(e.even_nim_tree(&empty), e.left());
        assert_eq!(e.even_nim_tree(&touched(1)), e.right());
        let two = EvenNimState::initial(&[2]).unwrap();
        let m1 = e.to_position(NamedValue::maltese(1)).unwrap();
        assert_eq!(e.even_nim_tree(&two), m1);
        assert!(EvenNimState::initial(&[3]).is_err());
    }

    #[test]
    fn even_nim_single_pile_trees_are_literal_families() {
        let mut e = Engine::new();
        for a in 0..=10u32 {
            let tree = e.even_nim_tree(&touched(a));
            let value = e
                .to_position(even_nim_value(a, false, false).unwrap())
                .unwrap();
            assert_eq!(tree, value, "touched pile {a}");
        }
        for a in (0..=10u32).step_by(2) {
            let tree = e.even_nim_tree(&EvenNimState::initial(&[a]).unwrap());
            let value = e
                .to_position(even_nim_value(a, true, true).unwrap())
                .unwrap();
            assert_eq!(tree, value, "initial pile {a}");
        }
    }

    #[test]
    fn even_nim_value_examples() {
        assert_eq!(
            even_nim_value(6, true, true).unwrap(),
            NamedValue::maltese(3)
        );
        assert_eq!(
            even_nim_value(4, false, false).unwrap(),
            NamedValue::star_l(2)
        );
        assert_eq!(
            even_nim_value(5, false, false).unwrap(),
            NamedValue::star_r(2)
        );
        assert_eq!(
            even_nim_value(0, true, true).unwrap(),
            NamedValue::star_l(0)
        );
        assert!(even_nim_value(3, true, true).is_err());
    }

    #[test]
    fn even_nim_outcome_examples() {
        assert_eq!(even_nim_outcome(&[6]).unwrap(), Outcome::N);
        assert_eq!(even_nim_outcome(&[2, 2]).unwrap(), Outcome::P);
        assert_eq!(even_nim_outcome(&[2, 2, 4]).unwrap(), Outcome::N);
        assert_eq!(even_nim_outcome(&[]).unwrap(), Outcome::L);
        assert_eq!(even_nim_outcome(&[0, 2]).unwrap(), Outcome::N);
        assert!(even_nim_outcome(&[1]).is_err());
        let mut e = Engine::new();
        let g = e.even_nim_tree(&EvenNimState::initial(&[2, 2, 4]).unwrap());
        assert_eq!(e.outcome(g), Outcome::N);
        let g = e.even_nim_tree(&EvenNimState::initial(&[0, 2]).unwrap());
        assert_eq!(e.outcome(g), Outcome::N);
    }

    #[test]
    fn subtraction_examples() {
        let mut e = Engine::new();
        let set = SubtractionSet::new(&[2, 5]).unwrap();
        let tree = |e: &mut Engine, n: u32| {
            e.subtraction_tree(&SubtractionState {
                piles: vec![n],
                set: set.clone(),
            })
        };
        assert_eq!(tree(&mut e, 1), e.right());
        let four = tree(&mut e, 4);
        assert_eq!(e.simplify(four), e.left());
        let six = tree(&mut e, 6);
        let lr = e.to_position(NamedValue::bigstar(1)).unwrap();
        assert_eq!(e.simplify(six), lr);
        let ten = tree(&mut e, 10);
        let r = e.right();
        let br = e.make_position([r]).unwrap();
        assert_eq!(e.simplify(ten), br);
    }

    #[test]
    fn pile_order_does_not_matter() {
        let mut e = Engine::new();
        let set = SubtractionSet::new(&[2, 5]).unwrap();
        let a = e.subtraction_tree(&SubtractionState {
            piles: vec![6, 3, 4],
            set: set.clone(),
        });
        let b = e.subtraction_tree(&SubtractionState {
            piles: vec![4, 6, 3],
            set,
        });
        assert_eq!(a, b);
        let x = e.even_nim_tree(&EvenNimState::initial(&[2, 4]).unwrap());
        let y = e.even_nim_tree(&EvenNimState::initial(&[4, 2]).unwrap());
        assert_eq!(x, y);
    }

    #[test]
    fn multi_pile_tree_is_sum_of_piles() {
        let mut e = Engine::new();
        let set = SubtractionSet::new(&[2, 5]).unwrap();
        let single = |e: &mut Engine, n| {
            e.subtraction_tree(&SubtractionState {
                piles: vec![n],
                set: set.clone(),
            })
        };
        let (a, b) = (single(&mut e, 7), single(&mut e, 4));
        let joint = e.subtraction_tree(&SubtractionState {
            piles: vec![7, 4],
            set: SubtractionSet::new(&[2, 5]).unwrap(),
        });
        assert_eq!(e.sum(a, b), joint);
    }

    #[test]
    fn periodicity_detection() {
        let e = Engine::new();
        let (l, r) = (e.left(), e.right());
        assert_eq!(
            detect_periodicity(&[l; 10]),
            Some(Periodicity {
                preperiod: 0,
                period: 1
            })
        );
        let mut e = Engine::new();
        let bl = e.make_position([l]).unwrap();
        assert_eq!(detect_periodicity(&[l, r, bl]), None);
        assert_eq!(
            detect_periodicity(&[r, bl, l, r, l, r, l]),
            Some(Periodicity {
                preperiod: 2,
                period: 2
            })
        );
        assert_eq!(detect_periodicity(&[]), None);
    }

    #[test]
    fn deep_single_pile_does_not_overflow() {
        let mut e = Engine::new();
        let set = SubtractionSet::new(&[2, 5]).unwrap();
        let g = e.subtraction_tree(&SubtractionState {
            piles: vec![20_001],
            set,
        });
        assert!(e.birthday(g) >= 10_000);
        let s = e.simplify(g);
        // 20001 = 7 * 2857 + 2
        let bl = e.make_position([e.left()]).unwrap();
        assert_eq!(s, bl);
        assert_eq!(e.outcome(g), Outcome::L);
    }
}
