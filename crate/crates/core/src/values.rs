//! Named value families and the nim-sum closed forms for their sums.
//!
//! * `*L_n = {*L_0, ..., *L_(n-1)}` with `*L_0 = *L`, and `*R_n` likewise.
//! * `M_n = {*L_0, *R_0, ..., *L_(n-1), *R_(n-1)}` for `n >= 1`.
//! * `B_n = {B_1, ..., B_(n-1), *L, *R}` for `n >= 1`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::position::{Engine, Position};
use crate::traverse::post_order;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    StarL,
    StarR,
    /// The maltese-cross family `M_n`.
    Maltese,
    /// The big-star family `B_n`.
    BigStar,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::StarL => "*L_n",
            Family::StarR => "*R_n",
            Family::Maltese => "M_n",
            Family::BigStar => "B_n",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NamedValue {
    pub family: Family,
    pub index: u32,
}

impl NamedValue {
    pub fn new(family: Family, index: u32) -> NamedValue {
        NamedValue { family, index }
    }

    pub fn star_l(index: u32) -> NamedValue {
        NamedValue::new(Family::StarL, index)
    }

    pub fn star_r(index: u32) -> NamedValue {
        NamedValue::new(Family::StarR, index)
    }

    pub fn maltese(index: u32) -> NamedValue {
        NamedValue::new(Family::Maltese, index)
    }

    pub fn bigstar(index: u32) -> NamedValue {
        NamedValue::new(Family::BigStar, index)
    }

    pub fn validate(self) -> Result<NamedValue> {
        match self.family {
            Family::Maltese | Family::BigStar if self.index == 0 => Err(Error::ZeroIndex {
                family: self.family,
            }),
            _ => Ok(self),
        }
    }
}

impl fmt::Display for NamedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.family, self.index) {
            (Family::StarL, 0) => f.write_str("*L"),
            (Family::StarR, 0) => f.write_str("*R"),
            (Family::StarL, n) => write!(f, "*L_{n}"),
            (Family::StarR, n) => write!(f, "*R_{n}"),
            (Family::Maltese, n) => write!(f, "M{n}"),
            (Family::BigStar, n) => write!(f, "B{n}"),
        }
    }
}

/// Minimum excluded natural number.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let seen: HashSet<u32> = values.into_iter().collect();
    (0..).find(|v| !seen.contains(v)).expect("finite set")
}

/// Bitwise XOR of all values; 0 for none.
pub fn nim_sum<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    values.into_iter().fold(0, |acc, v| acc ^ v)
}

/// `{*L_a1, ..., *L_ak} ≡ *L_mex(a1..ak)`.
pub fn starl_mex_reduce(indices: &[u32]) -> Result<NamedValue> {
    if indices.is_empty() {
        return Err(Error::NoIndices);
    }
    Ok(NamedValue::star_l(mex(indices.iter().copied())))
}

/// `{*R_a1, ..., *R_ak} ≡ *R_mex(a1..ak)`.
pub fn starr_mex_reduce(indices: &[u32]) -> Result<NamedValue> {
    if indices.is_empty() {
        return Err(Error::NoIndices);
    }
    Ok(NamedValue::star_r(mex(indices.iter().copied())))
}

/// Value of `X_a1 + Y_a2` for `X, Y ∈ {*L, *R}` families: index `a1 ⊕ a2`,
/// family `*L` when the families agree and `*R` otherwise.
pub fn star_sum_reduce(a1: u32, f1: Family, a2: u32, f2: Family) -> Result<NamedValue> {
    for family in [f1, f2] {
        if !matches!(family, Family::StarL | Family::StarR) {
            return Err(Error::NotStarFamily { family });
        }
    }
    let family = if f1 == f2 {
        Family::StarL
    } else {
        Family::StarR
    };
    Ok(NamedValue::new(family, a1 ^ a2))
}

/// A sum `M_a1 + ... + M_an + *L_b1 + ... + *L_bl + *R_c1 + ... + *R_cr`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MalteseSumSpec {
    maltese: Vec<u32>,
    pub star_l: Vec<u32>,
    pub star_r: Vec<u32>,
}

impl MalteseSumSpec {
    pub fn new(mut maltese: Vec<u32>, star_l: Vec<u32>, star_r: Vec<u32>) -> Result<Self> {
        if maltese.contains(&0) {
            return Err(Error::ZeroIndex {
                family: Family::Maltese,
            });
        }
        maltese.sort_unstable();
        Ok(MalteseSumSpec {
            maltese,
            star_l,
            star_r,
        })
    }

    /// Maltese indices, ascending.
    pub fn maltese(&self) -> &[u32] {
        &self.maltese
    }

    /// Closed-form outcome of the sum.
    pub fn outcome(&self) -> Outcome {
        match self.maltese.len() {
            0 if self.star_r.len().is_multiple_of(2) => Outcome::L,
            0 => Outcome::R,
            1 => Outcome::N,
            _ => {
                // The two smallest maltese indices do not contribute.
                let residual = nim_sum(
                    self.maltese[2..]
                        .iter()
                        .chain(&self.star_l)
                        .chain(&self.star_r)
                        .copied(),
                );
                if residual == 0 {
                    Outcome::P
                } else {
                    Outcome::N
                }
            }
        }
    }

    /// The literal game tree of the sum.
    pub fn to_position(&self, engine: &mut Engine) -> Position {
        let parts: Vec<Position> = self
            .maltese
            .iter()
            .map(|&a| NamedValue::maltese(a))
            .chain(self.star_l.iter().map(|&b| NamedValue::star_l(b)))
            .chain(self.star_r.iter().map(|&c| NamedValue::star_r(c)))
            .map(|v| engine.named(v))
            .collect();
        engine.sum_all(parts)
    }
}

pub fn maltese_sum_outcome(spec: &MalteseSumSpec) -> Outcome {
    spec.outcome()
}

/// `B_a1 + ... + B_an` is `P` exactly when `a1 ⊕ ... ⊕ an = 0`, else `N`.
pub fn bigstar_sum_outcome(indices: &[u32]) -> Result<Outcome> {
    if indices.is_empty() {
        return Err(Error::NoIndices);
    }
    if indices.contains(&0) {
        return Err(Error::ZeroIndex {
            family: Family::BigStar,
        });
    }
    Ok(if nim_sum(indices.iter().copied()) == 0 {
        Outcome::P
    } else {
        Outcome::N
    })
}

/// Which literal family trees a position is isomorphic to. Only index 1
/// is shared, by `M1` and `B1`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(crate) struct Recognized {
    pub star_l: Option<u32>,
    pub star_r: Option<u32>,
    pub maltese: Option<u32>,
    pub bigstar: Option<u32>,
}

impl Engine {
    /// Builds the literal tree of a named value.
    pub fn to_position(&mut self, value: NamedValue) -> Result<Position> {
        value.validate()?;
        Ok(self.named(value))
    }

    /// Literal tree of an already validated value.
    pub(crate) fn named(&mut self, value: NamedValue) -> Position {
        let n = value.index;
        match value.family {
            Family::StarL | Family::StarR => {
                let base = if value.family == Family::StarL {
                    self.left()
                } else {
                    self.right()
                };
                let mut chain = vec![base];
                for _ in 0..n {
                    let next = self.intern(chain.clone());
                    chain.push(next);
                }
                chain[n as usize]
            }
            Family::Maltese => {
                let mut opts = Vec::with_capacity(2 * n as usize);
                let (mut l, mut r) = (self.left(), self.right());
                for _ in 0..n {
                    opts.extend([l, r]);
                    let ls: Vec<Position> = opts.iter().step_by(2).copied().collect();
                    let rs: Vec<Position> = opts.iter().skip(1).step_by(2).copied().collect();
                    l = self.intern(ls);
                    r = self.intern(rs);
                }
                self.intern(opts)
            }
            Family::BigStar => {
                let mut opts = vec![self.left(), self.right()];
                let mut current = self.intern(opts.clone());
                for _ in 1..n {
                    opts.push(current);
                    current = self.intern(opts.clone());
                }
                current
            }
        }
    }

    /// The named value `g` is literally isomorphic to, if any. `B1` is
    /// preferred over `M1`, and `*L`/`*R` report index 0 of their family.
    pub fn recognize(&mut self, g: Position) -> Option<NamedValue> {
        let r = self.recognized_of(g);
        if let Some(n) = r.bigstar {
            Some(NamedValue::bigstar(n))
        } else if let Some(n) = r.maltese {
            Some(NamedValue::maltese(n))
        } else if let Some(n) = r.star_l {
            Some(NamedValue::star_l(n))
        } else {
            r.star_r.map(NamedValue::star_r)
        }
    }

    pub(crate) fn recognized_of(&mut self, g: Position) -> Recognized {
        let order = post_order(
            g,
            |k| self.recognized.contains_key(k),
            |&k, out| out.extend_from_slice(self.options(k)),
        );
        for k in order {
            let r = self.recognize_node(k);
            self.recognized.insert(k, r);
        }
        self.recognized[&g]
    }

    fn recognize_node(&self, g: Position) -> Recognized {
        let mut rec = Recognized::default();
        if g == self.left() {
            rec.star_l = Some(0);
            return rec;
        }
        if g == self.right() {
            rec.star_r = Some(0);
            return rec;
        }
        let opts: Vec<Recognized> = self.options(g).iter().map(|o| self.recognized[o]).collect();
        let count = opts.len() as u32;
        // Option ids are distinct, so family indices among them are distinct
        // and a full range 0..k is detected by its maximum.
        let all_l: Option<Vec<u32>> = opts.iter().map(|r| r.star_l).collect();
        if let Some(ls) = all_l {
            if ls.iter().max() == Some(&(count - 1)) {
                rec.star_l = Some(count);
            }
        }
        let all_r: Option<Vec<u32>> = opts.iter().map(|r| r.star_r).collect();
        if let Some(rs) = all_r {
            if rs.iter().max() == Some(&(count - 1)) {
                rec.star_r = Some(count);
            }
        }
        if count.is_multiple_of(2) {
            let half = count / 2;
            let ls: Vec<u32> = opts.iter().filter_map(|r| r.star_l).collect();
            let rs: Vec<u32> = opts.iter().filter_map(|r| r.star_r).collect();
            if ls.len() as u32 == half
                && rs.len() as u32 == half
                && ls.iter().max() == Some(&(half - 1))
                && rs.iter().max() == Some(&(half - 1))
            {
                rec.maltese = Some(half);
            }
        }
        let has_l = self.options(g).contains(&self.left());
        let has_r = self.options(g).contains(&self.right());
        if has_l && has_r {
            let stars: Option<Vec<u32>> = self
                .options(g)
                .iter()
                .filter(|&&o| o != self.left() && o != self.right())
                .map(|o| self.recognized[o].bigstar)
                .collect();
            if let Some(stars) = stars {
                let n = count - 1;
                if stars.iter().copied().max().unwrap_or(0) == n - 1 {
                    rec.bigstar = Some(n);
                }
            }
        }
        rec
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mex_examples() {
        assert_eq!(mex([]), 0);
        assert_eq!(mex([0, 1, 3]), 2);
        assert_eq!(mex([1, 2]), 0);
    }

    #[test]
    fn nim_sum_examples() {
        assert_eq!(nim_sum([1, 2]), 3);
        assert_eq!(nim_sum([5, 5]), 0);
        assert_eq!(nim_sum([]), 0);
    }

    #[test]
    fn literal_trees() {
        let mut e = Engine::new();
        let (l, r) = (e.left(), e.right());
        assert_eq!(e.to_position(NamedValue::star_l(0)).unwrap(), l);
        assert_eq!(e.to_position(NamedValue::star_r(0)).unwrap(), r);
        let l1 = e.make_position([l]).unwrap();
        let l2 = e.make_position([l, l1]).unwrap();
        assert_eq!(e.to_position(NamedValue::star_l(2)).unwrap(), l2);
        let lr = e.make_position([l, r]).unwrap();
        assert_eq!(e.to_position(NamedValue::maltese(1)).unwrap(), lr);
        assert_eq!(e.to_position(NamedValue::bigstar(1)).unwrap(), lr);
        let b2 = e.make_position([lr, l, r]).unwrap();
        assert_eq!(e.to_position(NamedValue::bigstar(2)).unwrap(), b2);
        let r1 = e.make_position([r]).unwrap();
        let m2 = e.make_position([l, r, l1, r1]).unwrap();
        assert_eq!(e.to_position(NamedValue::maltese(2)).unwrap(), m2);
    }

    #[test]
    fn zero_index_is_rejected() {
        let mut e = Engine::new();
        for v in [NamedValue::maltese(0), NamedValue::bigstar(0)] {
            let err = e.to_position(v).unwrap_err();
            assert!(err.to_string().contains("undefined for index 0"), "{err}");
        }
    }

    #[test]
    fn mex_reduce_examples() {
        assert_eq!(starl_mex_reduce(&[0, 1, 2]).unwrap(), NamedValue::star_l(3));
        assert_eq!(starl_mex_reduce(&[1, 2]).unwrap(), NamedValue::star_l(0));
        assert_eq!(starl_mex_reduce(&[0, 0, 2]).unwrap(), NamedValue::star_l(1));
        assert_eq!(starr_mex_reduce(&[0]).unwrap(), NamedValue::star_r(1));
        assert_eq!(starl_mex_reduce(&[]), Err(Error::NoIndices));
    }

    #[test]
    fn star_sum_examples() {
        use Family::*;
        assert_eq!(
            star_sum_reduce(1, StarL, 2, StarL).unwrap(),
            NamedValue::star_l(3)
        );
        assert_eq!(
            star_sum_reduce(1, StarL, 1, StarR).unwrap(),
            NamedValue::star_r(0)
        );
        assert_eq!(
            star_sum_reduce(3, StarR, 3, StarR).unwrap(),
            NamedValue::star_l(0)
        );
        assert!(star_sum_reduce(1, Maltese, 1, StarL).is_err());
    }

    #[test]
    fn maltese_closed_form_examples() {
        let spec = |m: &[u32], l: &[u32], r: &[u32]| {
            MalteseSumSpec::new(m.to_vec(), l.to_vec(), r.to_vec()).unwrap()
        };
        assert_eq!(maltese_sum_outcome(&spec(&[1], &[], &[])), Outcome::N);
        assert_eq!(maltese_sum_outcome(&spec(&[2, 2], &[], &[])), Outcome::P);
        assert_eq!(maltese_sum_outcome(&spec(&[2, 1], &[3], &[])), Outcome::N);
        assert_eq!(maltese_sum_outcome(&spec(&[], &[2], &[1, 1])), Outcome::L);
        assert_eq!(maltese_sum_outcome(&spec(&[], &[], &[1])), Outcome::R);
        assert_eq!(spec(&[3, 1, 2], &[], &[]).maltese(), &[1, 2, 3]);
        assert!(MalteseSumSpec::new(vec![0], vec![], vec![]).is_err());
    }

    #[test]
    fn maltese_closed_form_matches_tree_on_examples() {
        let mut e = Engine::new();
        let spec = MalteseSumSpec::new(vec![1, 2], vec![3], vec![]).unwrap();
        let g = spec.to_position(&mut e);
        assert_eq!(e.outcome(g), Outcome::N);
        let spec = MalteseSumSpec::new(vec![2, 2], vec![], vec![]).unwrap();
        let g = spec.to_position(&mut e);
        assert_eq!(e.outcome(g), Outcome::P);
    }

    #[test]
    fn bigstar_closed_form_examples() {
        assert_eq!(bigstar_sum_outcome(&[1]).unwrap(), Outcome::N);
        assert_eq!(bigstar_sum_outcome(&[2, 2]).unwrap(), Outcome::P);
        assert_eq!(bigstar_sum_outcome(&[1, 2, 3]).unwrap(), Outcome::P);
        assert!(bigstar_sum_outcome(&[]).is_err());
        assert!(bigstar_sum_outcome(&[0, 1]).is_err());
        let mut e = Engine::new();
        let parts: Vec<Position> = [1, 2, 3]
            .iter()
            .map(|&i| e.to_position(NamedValue::bigstar(i)).unwrap())
            .collect();
        let g = e.sum_all(parts);
        assert_eq!(e.outcome(g), Outcome::P);
    }

    #[test]
    fn family_outcomes_and_self_conjugacy() {
        let mut e = Engine::new();
        for n in 0..=6 {
            let l = e.to_position(NamedValue::star_l(n)).unwrap();
            let r = e.to_position(NamedValue::star_r(n)).unwrap();
            assert_eq!(e.outcome(l), Outcome::L);
            assert_eq!(e.outcome(r), Outcome::R);
        }
        for n in 1..=5 {
            let b = e.to_position(NamedValue::bigstar(n)).unwrap();
            assert_eq!(e.conjugate(b), b);
        }
    }

    #[test]
    fn recognizer_round_trips_families() {
        let mut e = Engine::new();
        for n in 0..=5 {
            for v in [NamedValue::star_l(n), NamedValue::star_r(n)] {
                let g = e.to_position(v).unwrap();
                assert_eq!(e.recognize(g), Some(v));
            }
        }
        for n in 2..=5 {
            for v in [NamedValue::maltese(n), NamedValue::bigstar(n)] {
                let g = e.to_position(v).unwrap();
                assert_eq!(e.recognize(g), Some(v));
            }
        }
        let one = e.to_position(NamedValue::maltese(1)).unwrap();
        assert_eq!(e.recognize(one), Some(NamedValue::bigstar(1)));
        let l = e.left();
        let l2 = e.to_position(NamedValue::star_l(2)).unwrap();
        let odd = e.make_position([l2]).unwrap();
        assert_eq!(e.recognize(odd), None);
        let gap = e.make_position([l, l2]).unwrap();
        assert_eq!(e.recognize(gap), None);
    }
}
