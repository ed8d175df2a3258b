//! Exact rank by fraction-free integer elimination.
//!
//! Rows are reduced one at a time against an echelon basis with
//! `v <- p * v - v[c] * row` (an invertible row operation over the rationals)
//! followed by division by the row's content. Arithmetic runs in checked `i64`;
//! on overflow the whole computation is repeated in `i128` and then in
//! arbitrary precision, so the result is always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed};

trait Exact: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i8> {}
impl<T: Clone + Integer + Signed + CheckedMul + CheckedSub + From<i8>> Exact for T {}

struct Overflow;

struct Echelon<T> {
    ncols: usize,
    rows: Vec<(usize, Vec<T>)>,
}

impl<T: Exact> Echelon<T> {
    fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis and keeps it if independent.
    fn insert(&mut self, mut v: Vec<T>) -> Result<bool, Overflow> {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let p = row[*pivot].clone();
            let f = v[*pivot].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let scaled = p.checked_mul(x).ok_or(Overflow)?;
                *x = if r.is_zero() {
                    scaled
                } else {
                    scaled
                        .checked_sub(&f.checked_mul(r).ok_or(Overflow)?)
                        .ok_or(Overflow)?
                };
            }
            remove_content(&mut v);
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                self.rows.push((pivot, v));
                Ok(true)
            }
            None => Ok(false),
        }
    }
}

fn remove_content<T: Exact>(v: &mut [T]) {
    let mut g = T::zero();
    for x in v.iter() {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                return;
            }
        }
    }
    if g > T::one() {
        for x in v.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}

fn rank_in<T: Exact>(rows: &[Vec<i8>], ncols: usize) -> Result<usize, Overflow> {
    let mut ech = Echelon::<T>::new(ncols);
    for row in rows {
        ech.insert(row.iter().map(|&x| T::from(x)).collect())?;
        if ech.rank() == ech.ncols {
            break;
        }
    }
    Ok(ech.rank())
}

/// Exact rank over the rationals of a small-integer matrix.
pub fn rank(rows: &[Vec<i8>]) -> usize {
    let Some(ncols) = rows.first().map(Vec::len) else {
        return 0;
    };
    assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
    rank_in::<i64>(rows, ncols)
        .or_else(|_| rank_in::<i128>(rows, ncols))
        .or_else(|_| rank_in::<BigInt>(rows, ncols))
        .unwrap_or_else(|_| unreachable!("arbitrary precision cannot overflow"))
}

/// Dimension of the affine hull of `points`: rank of the differences to the
/// first point. Zero for an empty or single-point set.
pub fn affine_rank(points: &[Vec<i8>]) -> usize {
    let Some(base) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<i8>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(x, b)| x - b).collect())
        .collect();
    rank(&diffs)
}

/// Forces the given number type; used in tests to exercise every tier.
#[cfg(test)]
fn rank_with<T: Exact>(rows: &[Vec<i8>]) -> Option<usize> {
    let ncols = rows.first().map(Vec::len).unwrap_or(0);
    rank_in::<T>(rows, ncols).ok()
}
