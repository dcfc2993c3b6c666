use std::cmp::Ordering;
use std::fmt;

/// Outcome class of a position.
///
/// Ordered from Left's point of view: `L > P > R`, `L > N > R`, with `P` and
/// `N` incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Left wins whoever starts.
    L,
    /// Right wins whoever starts.
    R,
    /// The player to move wins.
    N,
    /// The player who just moved wins.
    P,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [Outcome::L, Outcome::R, Outcome::N, Outcome::P];

    /// Outcome of `G + *R` given the outcome of `G`: Left and Right trade
    /// places, `N` and `P` are fixed.
    pub fn after_star_r(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            other => other,
        }
    }

    /// Classifies a non-terminal position from the outcomes of its options.
    pub fn from_options<I: IntoIterator<Item = Outcome>>(options: I) -> Outcome {
        let (mut left, mut right, mut previous) = (false, false, false);
        for o in options {
            match o {
                Outcome::L => left = true,
                Outcome::R => right = true,
                Outcome::P => previous = true,
                Outcome::N => {}
            }
        }
        // An option in L∪P is a winning move for Left, one in R∪P for Right.
        match (left || previous, right || previous) {
            (true, true) => Outcome::N,
            (true, false) => Outcome::L,
            (false, true) => Outcome::R,
            (false, false) => Outcome::P,
        }
    }

    fn rank(self) -> u8 {
        match self {
            Outcome::R => 0,
            Outcome::N | Outcome::P => 1,
            Outcome::L => 2,
        }
    }
}

impl PartialOrd for Outcome {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self == other {
            return Some(Ordering::Equal);
        }
        match self.rank().cmp(&other.rank()) {
            Ordering::Equal => None,
            ord => Some(ord),
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Outcome::L => "L",
            Outcome::R => "R",
            Outcome::N => "N",
            Outcome::P => "P",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::Outcome::*;
    use super::*;

    #[test]
    fn order_matches_hasse_diagram() {
        assert!(L > P && P > R && L > N && N > R && L > R);
        assert_eq!(P.partial_cmp(&N), None);
        assert_eq!(N.partial_cmp(&P), None);
        for o in Outcome::ALL {
            assert_eq!(o.partial_cmp(&o), Some(Ordering::Equal));
        }
    }

    #[test]
    fn order_is_antisymmetric_and_transitive() {
        for a in Outcome::ALL {
            for b in Outcome::ALL {
                if a >= b && b >= a {
                    assert_eq!(a, b);
                }
                for c in Outcome::ALL {
                    if a >= b && b >= c {
                        assert!(a >= c);
                    }
                }
            }
        }
    }

    #[test]
    fn star_r_transform() {
        assert_eq!(L.after_star_r(), R);
        assert_eq!(R.after_star_r(), L);
        assert_eq!(P.after_star_r(), P);
        assert_eq!(N.after_star_r(), N);
    }

    #[test]
    fn classification_cases() {
        assert_eq!(Outcome::from_options([L, R]), N);
        assert_eq!(Outcome::from_options([P]), N);
        assert_eq!(Outcome::from_options([L, N]), L);
        assert_eq!(Outcome::from_options([R, N, R]), R);
        assert_eq!(Outcome::from_options([N, N]), P);
    }
}
