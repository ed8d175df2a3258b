//! Collins–Gisin coordinates for the tripartite local polytope.
//!
//! Each party contributes one "option" out of `2k - 1`: either nothing (traced
//! out) or the indicator `[x_s = a]` for a setting `s` and a truncated outcome
//! `a < k - 1`. A coordinate is the product of the three parties' options; the
//! all-nothing product is the constant 1 and is dropped, leaving
//! `(2k - 1)^3 - 1` coordinates.

use super::strategy::Strategy;
use crate::inequality::{BellInequality, Party, Triple};

/// `(2k - 1)^3 - 1`.
pub fn cg_dimension(alphabet: usize) -> usize {
    (2 * alphabet - 1).pow(3) - 1
}

fn options(alphabet: usize) -> usize {
    2 * alphabet - 1
}

/// Option index of `[x_setting = a]`, 1-based (0 means "traced out").
fn option_index(alphabet: usize, setting: u8, a: usize) -> usize {
    1 + usize::from(setting - 1) * (alphabet - 1) + a
}

fn coordinate(alphabet: usize, opts: [usize; 3]) -> usize {
    let m = options(alphabet);
    opts[0] + m * opts[1] + m * m * opts[2]
}

/// 0/1 coordinate vector of a strategy.
pub fn cg_embed(s: &Strategy, alphabet: usize) -> Vec<i8> {
    let m = options(alphabet);
    // Options of each party that evaluate to 1 under the strategy.
    let ones: Vec<Vec<usize>> = Party::ALL
        .iter()
        .map(|&p| {
            let mut v = vec![0];
            for setting in 1..=2u8 {
                let x = s.outcome(p, setting);
                if x < alphabet - 1 {
                    v.push(option_index(alphabet, setting, x));
                }
            }
            v
        })
        .collect();
    let mut out = vec![0i8; m * m * m];
    for &oa in &ones[0] {
        for &ob in &ones[1] {
            for &oc in &ones[2] {
                out[coordinate(alphabet, [oa, ob, oc])] = 1;
            }
        }
    }
    out.remove(0);
    out
}

/// An inequality's left-hand side as an affine function of CG coordinates,
/// all values doubled: `2 * LHS = constant + weights . cg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CgFunctional {
    pub constant: i64,
    pub weights: Vec<i64>,
}

impl CgFunctional {
    pub fn evaluate_twice(&self, cg: &[i8]) -> i64 {
        self.constant
            + self
                .weights
                .iter()
                .zip(cg)
                .map(|(&w, &x)| w * i64::from(x))
                .sum::<i64>()
    }
}

/// Expands `sum f[ijk][(a+b+c) mod d] [a_i=a][b_j=b][c_k=c]` with
/// `[x = k-1] = 1 - sum_{a < k-1} [x = a]`.
pub fn cg_functional(ineq: &BellInequality) -> CgFunctional {
    let k = ineq.alphabet();
    let d = ineq.d();
    let m = options(k);
    let mut acc = vec![0i64; m * m * m];
    // Expansion of one party's indicator `[x_s = a]` over options.
    let factor = |setting: u8, a: usize| -> Vec<(usize, i64)> {
        if a < k - 1 {
            vec![(option_index(k, setting, a), 1)]
        } else {
            std::iter::once((0, 1))
                .chain((0..k - 1).map(|b| (option_index(k, setting, b), -1)))
                .collect()
        }
    };
    for t in Triple::ALL {
        let row = ineq.twice_row(t);
        let [i, j, l] = t.0;
        for a in 0..k {
            let fa = factor(i, a);
            for b in 0..k {
                let fb = factor(j, b);
                for c in 0..k {
                    let coeff = row[(a + b + c) % d];
                    if coeff == 0 {
                        continue;
                    }
                    for &(oa, wa) in &fa {
                        for &(ob, wb) in &fb {
                            for (oc, wc) in factor(l, c) {
                                acc[coordinate(k, [oa, ob, oc])] += coeff * wa * wb * wc;
                            }
                        }
                    }
                }
            }
        }
    }
    let constant = acc.remove(0);
    CgFunctional {
        constant,
        weights: acc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::catalog;
    use crate::local::bound::strategy_value_twice;
    use crate::local::enumerate_strategies;

    #[test]
    fn dimensions() {
        assert_eq!(cg_dimension(2), 26);
        assert_eq!(cg_dimension(3), 124);
        assert_eq!(cg_dimension(4), 342);
        assert_eq!(cg_dimension(5), 728);
    }

    #[test]
    fn zero_strategy_binary_is_all_ones() {
        let v = cg_embed(&Strategy::from_index(2, 0), 2);
        assert_eq!(v.len(), 26);
        assert!(v.iter().all(|&x| x == 1));
    }

    #[test]
    fn embedding_is_injective() {
        for k in [2, 3] {
            let mut seen = std::collections::HashSet::new();
            for s in enumerate_strategies(k).unwrap() {
                assert!(seen.insert(cg_embed(&s, k)), "{s}");
            }
        }
        let a = Strategy { outcomes: [[1, 2], [0, 3], [2, 0]] };
        let b = Strategy { outcomes: [[1, 2], [0, 3], [2, 1]] };
        assert_ne!(cg_embed(&a, 4), cg_embed(&b, 4));
    }

    #[test]
    fn functional_matches_lookup_on_every_strategy() {
        for name in ["mermin-prob", "qutrit", "quartit", "quartit-qubit", "quintit-qubit"] {
            let ineq = catalog::probability(name).unwrap();
            let f = cg_functional(&ineq);
            for s in enumerate_strategies(ineq.alphabet()).unwrap() {
                assert_eq!(
                    f.evaluate_twice(&cg_embed(&s, ineq.alphabet())),
                    strategy_value_twice(&ineq, &s),
                    "{name} {s}"
                );
            }
        }
    }
}
