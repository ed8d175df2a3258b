use std::fmt;

use crate::error::{out_of_range, Result};
use crate::inequality::{Behavior, ModularTable, Party, Triple};

/// Largest alphabet accepted by the enumerators (8^6 = 262144 strategies).
pub const MAX_ALPHABET: usize = 8;

/// A deterministic local strategy: one outcome for each (party, setting).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    /// `outcomes[party][setting - 1]`.
    pub outcomes: [[u8; 2]; 3],
}

impl Strategy {
    /// Strategy number `idx` in lexicographic order of (a1, a2, b1, b2, c1, c2).
    pub fn from_index(alphabet: usize, mut idx: usize) -> Strategy {
        let mut digits = [0u8; 6];
        for slot in digits.iter_mut().rev() {
            *slot = (idx % alphabet) as u8;
            idx /= alphabet;
        }
        Strategy {
            outcomes: [[digits[0], digits[1]], [digits[2], digits[3]], [digits[4], digits[5]]],
        }
    }

    pub fn index(&self, alphabet: usize) -> usize {
        self.outcomes
            .iter()
            .flatten()
            .fold(0, |acc, &x| acc * alphabet + usize::from(x))
    }

    pub fn outcome(&self, party: Party, setting: u8) -> usize {
        usize::from(self.outcomes[party.index()][usize::from(setting - 1)])
    }

    /// `a_i + b_j + c_k mod d` for every setting triple.
    pub fn residues(&self, d: usize) -> [usize; 8] {
        let mut out = [0; 8];
        for t in Triple::ALL {
            out[t.index()] = Party::ALL
                .iter()
                .map(|&p| self.outcome(p, t.setting(p)))
                .sum::<usize>()
                % d;
        }
        out
    }

    pub fn behavior(&self, alphabet: usize) -> Result<Behavior> {
        Behavior::deterministic(alphabet, &self.outcomes.map(|xs| xs.map(usize::from)))
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.outcomes;
        write!(
            f,
            "a=({},{}) b=({},{}) c=({},{})",
            a[0], a[1], b[0], b[1], c[0], c[1]
        )
    }
}

pub(crate) fn check_alphabet(alphabet: usize) -> Result<()> {
    if !(2..=MAX_ALPHABET).contains(&alphabet) {
        return Err(out_of_range(
            "outcome alphabet",
            format!("{alphabet} not in 2..={MAX_ALPHABET}"),
        ));
    }
    Ok(())
}

/// All `alphabet^6` strategies in lexicographic order.
pub fn enumerate_strategies(alphabet: usize) -> Result<impl Iterator<Item = Strategy>> {
    check_alphabet(alphabet)?;
    Ok((0..alphabet.pow(6)).map(move |i| Strategy::from_index(alphabet, i)))
}

/// `p(ijk, r) = 1` when `a_i + b_j + c_k = r mod d`.
pub fn strategy_table(s: &Strategy, d: usize) -> Result<ModularTable> {
    ModularTable::from_residues(d, &s.residues(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        assert_eq!(enumerate_strategies(2).unwrap().count(), 64);
        assert_eq!(enumerate_strategies(4).unwrap().count(), 4096);
        assert_eq!(enumerate_strategies(5).unwrap().count(), 15625);
        assert!(enumerate_strategies(1).is_err());
        assert!(enumerate_strategies(9).is_err());
    }

    #[test]
    fn lexicographic_and_distinct() {
        let all: Vec<Strategy> = enumerate_strategies(3).unwrap().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let set: HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), 729);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.index(3), i);
        }
        assert_eq!(all[1].outcomes, [[0, 0], [0, 0], [0, 1]]);
    }

    #[test]
    fn zero_strategy_table() {
        let t = strategy_table(&Strategy::from_index(4, 0), 4).unwrap();
        for tr in Triple::ALL {
            assert_eq!(t.get(tr, 0), 1.0);
        }
    }

    #[test]
    fn table_of_c_varying_strategy() {
        let s = Strategy {
            outcomes: [[0, 0], [0, 0], [1, 3]],
        };
        let t = strategy_table(&s, 4).unwrap();
        for tr in Triple::ALL {
            let want = if tr.0[2] == 1 { 1 } else { 3 };
            assert_eq!(t.row(tr).iter().position(|&p| p == 1.0), Some(want));
        }
    }
}
