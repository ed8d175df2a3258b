use rayon::prelude::*;

use super::strategy::{check_alphabet, Strategy};
use crate::error::Result;
use crate::inequality::correlation::{CorrelationInequality, CorrelationValues};
use crate::inequality::{BellInequality, Half, ModularTable};

/// Strategies per work unit in the parallel scan.
const CHUNK: usize = 1024;

/// Exact maximum of an inequality's left-hand side over deterministic strategies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassicalMax {
    pub value: Half,
    /// Number of strategies (not behaviors) attaining the maximum.
    pub maximizers: usize,
    /// Lexicographically first maximizer.
    pub witness: Strategy,
}

/// Running maximum of one chunk: (twice value, count, first index).
#[derive(Copy, Clone)]
struct Partial {
    twice: i64,
    count: usize,
    first: usize,
}

impl Partial {
    /// Associative and commutative up to the lexicographic tie-break, so chunk
    /// results can be reduced in any order.
    fn merge(self, other: Partial) -> Partial {
        use std::cmp::Ordering::*;
        match self.twice.cmp(&other.twice) {
            Greater => self,
            Less => other,
            Equal => Partial {
                twice: self.twice,
                count: self.count + other.count,
                first: self.first.min(other.first),
            },
        }
    }
}

/// Twice the left-hand side at one strategy, by table lookup.
pub fn strategy_value_twice(ineq: &BellInequality, s: &Strategy) -> i64 {
    ineq.evaluate_residues_twice(&s.residues(ineq.d()))
}

/// Maximum over all `alphabet^6` deterministic strategies. By convexity this is
/// the bound over all local hidden variable models.
pub fn classical_max(ineq: &BellInequality) -> Result<ClassicalMax> {
    let k = ineq.alphabet();
    check_alphabet(k)?;
    let total = k.pow(6);
    let best = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let start = chunk * CHUNK;
            (start..(start + CHUNK).min(total))
                .map(|idx| Partial {
                    twice: strategy_value_twice(ineq, &Strategy::from_index(k, idx)),
                    count: 1,
                    first: idx,
                })
                .reduce(Partial::merge)
                .expect("nonempty chunk")
        })
        .reduce_with(Partial::merge)
        .expect("at least one strategy");
    Ok(ClassicalMax {
        value: Half::from_twice(best.twice),
        maximizers: best.count,
        witness: Strategy::from_index(k, best.first),
    })
}

/// Strategies whose value equals `target` exactly, in lexicographic order.
pub fn strategies_at(ineq: &BellInequality, target: Half) -> Result<Vec<Strategy>> {
    let k = ineq.alphabet();
    check_alphabet(k)?;
    Ok((0..k.pow(6))
        .into_par_iter()
        .map(|idx| Strategy::from_index(k, idx))
        .filter(|s| strategy_value_twice(ineq, s) == target.twice())
        .collect())
}

/// Exact maximum of a correlation inequality over the 64 deterministic +1/-1
/// assignments, with the first maximizing assignment.
pub fn classical_max_correlation(cineq: &CorrelationInequality) -> Result<(f64, [[i8; 2]; 3])> {
    let mut best: Option<(f64, [[i8; 2]; 3])> = None;
    for idx in 0..64usize {
        let bit = |k: usize| if (idx >> (5 - k)) & 1 == 0 { 1i8 } else { -1 };
        let signs = [[bit(0), bit(1)], [bit(2), bit(3)], [bit(4), bit(5)]];
        let v = cineq.evaluate(&CorrelationValues::from_signs(&signs))?;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, signs));
        }
    }
    Ok(best.expect("64 assignments"))
}

/// Left-hand side on the uniform table `p = 1/d`.
pub fn white_noise_lhs(ineq: &BellInequality) -> f64 {
    ineq.evaluate_lhs(&ModularTable::uniform(ineq.d()))
        .expect("uniform table has matching d")
}
