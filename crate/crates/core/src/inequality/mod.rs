//! Probability-form Bell inequalities for three parties with two settings each.
//!
//! An inequality is a table of coefficients `f[i,j,k][r]` multiplying the
//! modular joint probabilities `P(a_i + b_j + c_k = r mod d)`, together with a
//! classical bound. Coefficients are kept exact: each one is stored as twice its
//! value so that half-integer entries are representable.

mod behavior;
pub mod catalog;
pub mod correlation;
pub mod equivalence;
mod half;
mod table;
pub mod text;

use std::fmt;

pub use behavior::Behavior;
pub use half::Half;
pub use table::ModularTable;

use crate::error::{out_of_range, Error, Result};

/// One of the three observers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Party {
        Party::ALL[i]
    }

    pub fn letter(self) -> char {
        ['A', 'B', 'C'][self.index()]
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A choice of measurement setting (1 or 2) for each of A, B and C.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple(pub [u8; 3]);

impl Triple {
    /// All eight setting triples in lexicographic order, (1,1,1) first.
    pub const ALL: [Triple; 8] = [
        Triple([1, 1, 1]),
        Triple([1, 1, 2]),
        Triple([1, 2, 1]),
        Triple([1, 2, 2]),
        Triple([2, 1, 1]),
        Triple([2, 1, 2]),
        Triple([2, 2, 1]),
        Triple([2, 2, 2]),
    ];

    pub fn new(i: u8, j: u8, k: u8) -> Result<Triple> {
        for s in [i, j, k] {
            if !(1..=2).contains(&s) {
                return Err(out_of_range("setting index", format!("{s} not in {{1,2}}")));
            }
        }
        Ok(Triple([i, j, k]))
    }

    pub fn index(self) -> usize {
        let [i, j, k] = self.0;
        usize::from(i - 1) * 4 + usize::from(j - 1) * 2 + usize::from(k - 1)
    }

    pub fn from_index(idx: usize) -> Triple {
        Triple::ALL[idx]
    }

    pub fn setting(self, party: Party) -> u8 {
        self.0[party.index()]
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

/// A permutation of the parties: `map[p]` is the party that `p` is sent to.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct PartyPermutation {
    map: [Party; 3],
}

impl PartyPermutation {
    pub fn new(map: [Party; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for p in map {
            if std::mem::replace(&mut seen[p.index()], true) {
                return Err(Error::Invalid(format!("{map:?} is not a permutation")));
            }
        }
        Ok(PartyPermutation { map })
    }

    pub fn identity() -> Self {
        PartyPermutation { map: Party::ALL }
    }

    /// Exchanges two parties.
    pub fn swap(x: Party, y: Party) -> Self {
        let mut map = Party::ALL;
        map.swap(x.index(), y.index());
        PartyPermutation { map }
    }

    /// A -> B -> C -> A.
    pub fn cycle() -> Self {
        PartyPermutation {
            map: [Party::B, Party::C, Party::A],
        }
    }

    /// All six permutations of three parties.
    pub fn all() -> Vec<PartyPermutation> {
        use Party::*;
        [
            [A, B, C],
            [A, C, B],
            [B, A, C],
            [B, C, A],
            [C, A, B],
            [C, B, A],
        ]
        .into_iter()
        .map(|map| PartyPermutation { map })
        .collect()
    }

    pub fn image(&self, p: Party) -> Party {
        self.map[p.index()]
    }

    pub fn apply(&self, t: Triple) -> Triple {
        let mut out = [0u8; 3];
        for p in Party::ALL {
            out[self.image(p).index()] = t.setting(p);
        }
        Triple(out)
    }
}

/// A Bell inequality `sum f[ijk][r] P(a_i+b_j+c_k = r mod d) <= bound`.
///
/// `d` is the modulus of the residues. `alphabet` is the number of local
/// outcomes each measurement can produce; it equals `d` for the qudit
/// inequalities and is smaller for the qubit reductions, whose outcomes are
/// binary while sums are still taken modulo `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BellInequality {
    d: usize,
    alphabet: usize,
    twice: Vec<i64>,
    bound: Half,
    label: String,
}

impl BellInequality {
    /// Builds an inequality from integer coefficient rows, one row of length `d`
    /// per setting triple in [`Triple::ALL`] order.
    pub fn from_rows(d: usize, rows: &[Vec<i64>], bound: i64, label: &str) -> Result<Self> {
        let twice_rows: Vec<Vec<i64>> = rows
            .iter()
            .map(|row| row.iter().map(|c| 2 * c).collect())
            .collect();
        Self::from_twice_rows(d, d, &twice_rows, Half::from_int(bound), label)
    }

    /// Builds an inequality from rows holding twice the coefficients.
    pub fn from_twice_rows(
        d: usize,
        alphabet: usize,
        rows: &[Vec<i64>],
        bound: Half,
        label: &str,
    ) -> Result<Self> {
        if d < 2 {
            return Err(out_of_range("d", format!("{d} < 2")));
        }
        if alphabet < 2 || alphabet > d {
            return Err(out_of_range(
                "alphabet",
                format!("{alphabet} must lie in 2..={d}"),
            ));
        }
        if rows.len() != 8 {
            return Err(Error::Invalid(format!(
                "expected 8 coefficient rows, got {}",
                rows.len()
            )));
        }
        let mut twice = Vec::with_capacity(8 * d);
        for (t, row) in rows.iter().enumerate() {
            if row.len() != d {
                return Err(Error::Invalid(format!(
                    "row {} has {} coefficients, expected {d}",
                    Triple::from_index(t),
                    row.len()
                )));
            }
            twice.extend_from_slice(row);
        }
        if label.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!("label `{label}` contains whitespace")));
        }
        Ok(BellInequality {
            d,
            alphabet,
            twice,
            bound,
            label: label.to_string(),
        })
    }

    /// Restricts the local outcome alphabet (used for binary-outcome reductions).
    pub fn with_alphabet(mut self, alphabet: usize) -> Result<Self> {
        if alphabet < 2 || alphabet > self.d {
            return Err(out_of_range(
                "alphabet",
                format!("{alphabet} must lie in 2..={}", self.d),
            ));
        }
        self.alphabet = alphabet;
        Ok(self)
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn bound(&self) -> Half {
        self.bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeff(&self, t: Triple, r: usize) -> Half {
        Half::from_twice(self.twice[t.index() * self.d + r])
    }

    /// Twice the coefficients of one setting triple.
    pub fn twice_row(&self, t: Triple) -> &[i64] {
        let start = t.index() * self.d;
        &self.twice[start..start + self.d]
    }

    /// Sum over residues of the coefficients of each triple.
    pub fn row_sums(&self) -> [Half; 8] {
        let mut out = [Half::ZERO; 8];
        for t in Triple::ALL {
            out[t.index()] = Half::from_twice(self.twice_row(t).iter().sum());
        }
        out
    }

    /// `sum_ijk max_r f[ijk][r]`, an algebraic cap on any probability assignment.
    pub fn algebraic_max(&self) -> Half {
        let twice = Triple::ALL
            .iter()
            .map(|&t| *self.twice_row(t).iter().max().expect("d >= 2"))
            .sum();
        Half::from_twice(twice)
    }

    pub fn is_integral(&self) -> bool {
        self.twice.iter().all(|c| c % 2 == 0) && self.bound.is_integer()
    }

    /// `sum f[ijk][r] p(ijk, r)`.
    pub fn evaluate_lhs(&self, table: &ModularTable) -> Result<f64> {
        if table.d() != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: table.d(),
            });
        }
        let sum: f64 = self
            .twice
            .iter()
            .zip(table.values())
            .map(|(&c, &p)| c as f64 * p)
            .sum();
        Ok(0.5 * sum)
    }

    /// Twice the left-hand side for a table in which every triple has a single
    /// certain residue. Exact.
    pub fn evaluate_residues_twice(&self, residues: &[usize; 8]) -> i64 {
        Triple::ALL
            .iter()
            .map(|&t| self.twice[t.index() * self.d + residues[t.index()]])
            .sum()
    }

    /// Replaces `P(... = r)` by `P(... = r + m)`: the coefficient of residue `r`
    /// in the result is the input coefficient of residue `r - m`.
    pub fn shift_outcomes(&self, m: usize) -> Result<Self> {
        if m >= self.d {
            return Err(out_of_range(
                "outcome shift",
                format!("m={m} for d={}", self.d),
            ));
        }
        let d = self.d;
        let mut twice = vec![0; 8 * d];
        for t in 0..8 {
            for r in 0..d {
                twice[t * d + r] = self.twice[t * d + (r + d - m) % d];
            }
        }
        Ok(BellInequality {
            twice,
            label: if m == 0 {
                self.label.clone()
            } else {
                format!("{}+shift{m}", self.label)
            },
            ..self.clone()
        })
    }

    /// Relabels the parties; the residue index is untouched.
    pub fn permute_parties(&self, sigma: &PartyPermutation) -> Self {
        let d = self.d;
        let mut twice = vec![0; 8 * d];
        for t in Triple::ALL {
            let dst = sigma.apply(t).index();
            twice[dst * d..(dst + 1) * d].copy_from_slice(self.twice_row(t));
        }
        BellInequality {
            twice,
            ..self.clone()
        }
    }

    /// Coefficients divided by `d(d-1)` in row-major (triple, residue) order.
    pub fn normalized_coefficients(&self) -> NormalizedCoefficients {
        let scale = (self.d * (self.d - 1)) as f64;
        let values: Vec<f64> = self.twice.iter().map(|&c| c as f64 / (2.0 * scale)).collect();
        let outside = values
            .iter()
            .enumerate()
            .filter(|(_, v)| v.abs() > 1.0)
            .map(|(idx, _)| (Triple::from_index(idx / self.d), idx % self.d))
            .collect();
        NormalizedCoefficients {
            d: self.d,
            values,
            outside,
        }
    }

    /// Uses `sum_r P(ijk, r) = 1` to subtract `delta[ijk]` from every residue
    /// coefficient of triple `ijk` (and `sum delta` from the bound), then divides
    /// everything by `divisor`. The result is equivalent on every normalized
    /// table. Fails when the division is not exact at half-integer resolution.
    pub fn reform(&self, deltas: &[i64; 8], divisor: i64) -> Result<Self> {
        if divisor <= 0 {
            return Err(out_of_range("divisor", format!("{divisor} <= 0")));
        }
        let d = self.d;
        let mut twice = vec![0; 8 * d];
        for t in 0..8 {
            for r in 0..d {
                let shifted = self.twice[t * d + r] - 2 * deltas[t];
                twice[t * d + r] = exact_div(shifted, divisor)?;
            }
        }
        let bound_twice = self.bound.twice() - 2 * deltas.iter().sum::<i64>();
        let bound = Half::from_twice(exact_div(bound_twice, divisor)?);
        Ok(BellInequality {
            twice,
            bound,
            label: format!("{}-reformed", self.label),
            ..self.clone()
        })
    }
}

fn exact_div(num: i64, den: i64) -> Result<i64> {
    if num % den != 0 {
        return Err(Error::Inexact(format!(
            "{}/{} is not a half-integer",
            Half::from_twice(num),
            den
        )));
    }
    Ok(num / den)
}

/// Output of [`BellInequality::normalized_coefficients`].
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedCoefficients {
    pub d: usize,
    pub values: Vec<f64>,
    /// Entries whose magnitude exceeds one.
    pub outside: Vec<(Triple, usize)>,
}

impl NormalizedCoefficients {
    pub fn within_unit_range(&self) -> bool {
        self.outside.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartit() -> BellInequality {
        catalog::probability("quartit").unwrap()
    }

    #[test]
    fn triple_index_round_trips() {
        for (idx, t) in Triple::ALL.iter().enumerate() {
            assert_eq!(t.index(), idx);
            assert_eq!(Triple::from_index(idx), *t);
        }
        assert!(Triple::new(0, 1, 1).is_err());
        assert!(Triple::new(1, 2, 3).is_err());
    }

    #[test]
    fn permutation_rejects_duplicates() {
        assert!(PartyPermutation::new([Party::A, Party::A, Party::C]).is_err());
        let cyc = PartyPermutation::cycle();
        assert_eq!(cyc.apply(Triple([1, 1, 2])), Triple([2, 1, 1]));
        assert_eq!(PartyPermutation::all().len(), 6);
    }

    #[test]
    fn shift_zero_is_identity_and_period_is_d() {
        let q = quartit();
        assert_eq!(q.shift_outcomes(0).unwrap(), q);
        let twice_over = q
            .shift_outcomes(2)
            .unwrap()
            .shift_outcomes(2)
            .unwrap()
            .with_label(q.label());
        assert_eq!(twice_over, q);
        assert!(q.shift_outcomes(4).is_err());
    }

    #[test]
    fn shift_moves_coefficients_up() {
        let q = quartit();
        let s = q.shift_outcomes(1).unwrap();
        for t in Triple::ALL {
            for r in 0..4 {
                assert_eq!(s.coeff(t, r), q.coeff(t, (r + 3) % 4));
            }
        }
        assert_eq!(s.bound(), q.bound());
    }

    #[test]
    fn identity_permutation_is_identity() {
        let q = quartit();
        assert_eq!(q.permute_parties(&PartyPermutation::identity()), q);
    }

    #[test]
    fn quartit_normalized_range() {
        let n = quartit().normalized_coefficients();
        assert!(n.within_unit_range());
        assert_eq!(n.min(), -7.0 / 12.0);
        assert_eq!(n.max(), 5.0 / 12.0);
    }

    #[test]
    fn zero_inequality_normalizes_to_zero() {
        let zero = BellInequality::from_rows(3, &vec![vec![0; 3]; 8], 0, "zero").unwrap();
        let n = zero.normalized_coefficients();
        assert!(n.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn normalization_flags_large_entries() {
        let mut rows = vec![vec![0; 2]; 8];
        rows[3][1] = 3;
        let big = BellInequality::from_rows(2, &rows, 3, "big").unwrap();
        let n = big.normalized_coefficients();
        assert_eq!(n.outside, vec![(Triple([1, 2, 2]), 1)]);
    }

    #[test]
    fn reform_with_zero_deltas_keeps_coefficients() {
        let q = quartit();
        let r = q.reform(&[0; 8], 1).unwrap();
        assert_eq!(r.with_label(q.label()), q);
    }

    #[test]
    fn reform_reports_inexact_division() {
        let q = quartit();
        // (1,1,1) row minus 0 divided by 4 leaves -5/4.
        assert!(matches!(q.reform(&[0; 8], 4), Err(Error::Inexact(_))));
    }

    #[test]
    fn evaluate_rejects_dimension_mismatch() {
        let q = quartit();
        let t = ModularTable::uniform(3);
        assert_eq!(
            q.evaluate_lhs(&t),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 3
            })
        );
    }

    #[test]
    fn uniform_table_gives_zero_for_quartit() {
        // Each row of the quartit coefficients sums to zero.
        for s in quartit().row_sums() {
            assert_eq!(s, Half::ZERO);
        }
        assert_eq!(quartit().evaluate_lhs(&ModularTable::uniform(4)).unwrap(), 0.0);
    }

    #[test]
    fn all_zero_residue_table_sums_first_column() {
        let q = quartit();
        let table = ModularTable::from_residues(4, &[0; 8]).unwrap();
        let expected: i64 = Triple::ALL.iter().map(|&t| q.twice_row(t)[0]).sum();
        assert_eq!(q.evaluate_lhs(&table).unwrap(), expected as f64 / 2.0);
    }

    #[test]
    fn whitespace_labels_are_rejected() {
        assert!(BellInequality::from_rows(2, &vec![vec![0; 2]; 8], 0, "a b").is_err());
    }
}
