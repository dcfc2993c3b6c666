//! Universes of small positions and a refutation-only equivalence check.
//!
//! `G ≡ H` quantifies over every position `X`. Searching the positions born
//! by a fixed day can only ever *refute* an equivalence; a clean run is
//! reported as [`Verdict::NoCounterexample`], never as a proof.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::position::{Engine, Position};

/// All positions born by `day`, ordered canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    pub day: u32,
    pub members: Arc<[Position]>,
}

impl Universe {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `o(G + witness) = left` differs from `o(H + witness) = right`.
    Refuted {
        witness: Position,
        left: Outcome,
        right: Outcome,
    },
    NoCounterexample,
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn witness(&self) -> Option<Position> {
        match *self {
            Verdict::Refuted { witness, .. } => Some(witness),
            Verdict::NoCounterexample => None,
        }
    }
}

impl Engine {
    pub fn universe_cap(&self) -> u32 {
        self.universe_cap
    }

    /// Raises or lowers the largest day [`Engine::enumerate_universe`]
    /// accepts. Day 3 has 2^33 + 1 members.
    pub fn set_universe_cap(&mut self, cap: u32) {
        self.universe_cap = cap;
    }

    pub fn enumerate_universe(&mut self, day: u32) -> Result<Universe> {
        if day > self.universe_cap {
            return Err(Error::UniverseTooLarge {
                day,
                cap: self.universe_cap,
            });
        }
        while self.universes.len() <= day as usize {
            let next = match self.universes.last().cloned() {
                None => vec![self.left(), self.right()],
                Some(prev) => self.next_universe(&prev),
            };
            self.universes.push(next.into());
        }
        Ok(Universe {
            day,
            members: self.universes[day as usize].clone(),
        })
    }

    /// Terminals plus every nonempty subset of `prev` as an option set.
    fn next_universe(&mut self, prev: &[Position]) -> Vec<Position> {
        let n = prev.len();
        assert!(
            n < 40,
            "universe subset enumeration over {n} members is infeasible"
        );
        let mut members = vec![self.left(), self.right()];
        for mask in 1u64..(1u64 << n) {
            let opts = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| prev[i])
                .collect();
            members.push(self.intern(opts));
        }
        members.sort_unstable();
        members.dedup();
        self.sort_canonical(&mut members);
        members
    }

    /// Searches the day-`day` universe for a context `X` with
    /// `o(g + X) != o(h + X)`. The first witness in canonical order wins.
    pub fn equivalent_bounded(&mut self, g: Position, h: Position, day: u32) -> Result<Verdict> {
        let universe = self.enumerate_universe(day)?;
        Ok(self.search_contexts(g, h, universe.members.iter().copied()))
    }

    pub fn distinguishing_context(
        &mut self,
        g: Position,
        h: Position,
        day: u32,
    ) -> Result<Option<Position>> {
        Ok(self.equivalent_bounded(g, h, day)?.witness())
    }

    /// Like [`Engine::equivalent_bounded`] over `samples` random day-3
    /// contexts: each is a random nonempty option set drawn from the day-2
    /// universe. Deterministic for a given seed.
    pub fn equivalent_sampled(
        &mut self,
        g: Position,
        h: Position,
        samples: usize,
        seed: u64,
    ) -> Result<Verdict> {
        let base = self.enumerate_universe(2.min(self.universe_cap))?;
        let mut rng = StdRng::seed_from_u64(seed);
        let mut contexts = Vec::with_capacity(samples);
        for _ in 0..samples {
            let mut opts: Vec<Position> = base
                .members
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.5))
                .collect();
            if opts.is_empty() {
                opts.push(base.members[rng.gen_range(0..base.len())]);
            }
            contexts.push(self.intern(opts));
        }
        Ok(self.search_contexts(g, h, contexts))
    }

    fn search_contexts<I>(&mut self, g: Position, h: Position, contexts: I) -> Verdict
    where
        I: IntoIterator<Item = Position>,
    {
        if g == h {
            return Verdict::NoCounterexample;
        }
        for x in contexts {
            let gx = self.sum(g, x);
            let hx = self.sum(h, x);
            let (left, right) = (self.outcome(gx), self.outcome(hx));
            if left != right {
                return Verdict::Refuted {
                    witness: x,
                    left,
                    right,
                };
            }
        }
        Verdict::NoCounterexample
    }
}
