//! Rewriting positions into smaller equivalent ones.
//!
//! Three rewrites are applied bottom-up until none fires:
//!
//! 1. `{*L_a1, ..., *L_ak}` becomes `*L_mex(a1..ak)` (and the same for `*R`).
//! 2. Bypass: if one option is `{*L}` and every option has an option that is
//!    `*L`, the whole position is `*L` (mirror for `*R`).
//! 3. Domination: if every option other than `G1` has an option equal to
//!    `{G1}`, the position is `{G1}`. Candidates for `G1` are tried in
//!    canonical order.
//!
//! "Equal" here is identity of simplified forms; the bounded oracle is never
//! consulted. The result is deterministic but is not claimed to be a unique
//! canonical form.

use crate::position::{Engine, Position};
use crate::traverse::post_order;
use crate::values::{mex, NamedValue};

impl Engine {
    pub fn simplify(&mut self, g: Position) -> Position {
        let order = post_order(
            g,
            |k| self.is_terminal(*k) || self.simplified.contains_key(k),
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let opts: Vec<Position> = self
                .options(k)
                .iter()
                .map(|&o| self.simplified_known(o))
                .collect();
            let cur = self.intern(opts);
            let result = self.reduce_fixpoint(cur);
            self.simplified.insert(k, result);
        }
        self.simplified_known(g)
    }

    /// Whether `a` and `b` simplify to the same position. Sound but
    /// incomplete: `false` does not mean the positions are inequivalent.
    pub fn known_equivalent(&mut self, a: Position, b: Position) -> bool {
        a == b || self.simplify(a) == self.simplify(b)
    }

    /// The bypass rewrite applied once to `g` with simplified options:
    /// `Some(*L)` or `Some(*R)` when its hypothesis holds.
    pub fn reduce_bypass(&mut self, g: Position) -> Option<Position> {
        let cur = self.with_simplified_options(g)?;
        self.bypass(cur)
    }

    /// The domination rewrite applied once to `g` with simplified options:
    /// `Some({G1})` for the first canonical `G1` satisfying the hypothesis.
    pub fn reduce_dominate(&mut self, g: Position) -> Option<Position> {
        let cur = self.with_simplified_options(g)?;
        self.dominate(cur)
    }

    fn with_simplified_options(&mut self, g: Position) -> Option<Position> {
        if self.is_terminal(g) {
            return None;
        }
        let opts: Vec<Position> = self.options(g).to_vec();
        let opts = opts.into_iter().map(|o| self.simplify(o)).collect();
        Some(self.intern(opts))
    }

    fn simplified_known(&self, g: Position) -> Position {
        if self.is_terminal(g) {
            g
        } else {
            self.simplified[&g]
        }
    }

    /// `cur` must already have simplified options.
    fn reduce_fixpoint(&mut self, mut cur: Position) -> Position {
        let start = cur;
        while !self.is_terminal(cur) {
            if let Some(next) = self.mex_family(cur).filter(|&n| n != cur) {
                cur = next;
            } else if let Some(next) = self.bypass(cur) {
                cur = next;
            } else if let Some(next) = self.dominate(cur).filter(|&n| n != cur) {
                cur = next;
            } else {
                break;
            }
        }
        self.simplified.insert(start, cur);
        cur
    }

    fn mex_family(&mut self, cur: Position) -> Option<Position> {
        let opts = self.options(cur).to_vec();
        let recs: Vec<_> = opts.iter().map(|&o| self.recognized_of(o)).collect();
        if let Some(ls) = recs.iter().map(|r| r.star_l).collect::<Option<Vec<u32>>>() {
            return Some(self.named(NamedValue::star_l(mex(ls))));
        }
        if let Some(rs) = recs.iter().map(|r| r.star_r).collect::<Option<Vec<u32>>>() {
            return Some(self.named(NamedValue::star_r(mex(rs))));
        }
        None
    }

    fn bypass(&mut self, cur: Position) -> Option<Position> {
        for target in [self.left(), self.right()] {
            let unit = self.intern(vec![target]);
            let opts = self.options(cur);
            if opts.contains(&unit) && opts.iter().all(|&o| self.options(o).contains(&target)) {
                return Some(target);
            }
        }
        None
    }

    fn dominate(&mut self, cur: Position) -> Option<Position> {
        if self.options(cur).len() == 1 {
            return Some(cur);
        }
        let candidates = self.canonical_options(cur);
        for &g1 in candidates.iter() {
            let single = self.intern(vec![g1]);
            let target = match self.simplified.get(&single) {
                Some(&s) => s,
                None => self.reduce_fixpoint(single),
            };
            let holds = self
                .options(cur)
                .iter()
                .filter(|&&o| o != g1)
                .all(|&o| self.options(o).contains(&target));
            if holds {
                return Some(single);
            }
        }
        None
    }
}
