use super::{ModularTable, Triple};
use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-12;

/// Full joint outcome distribution `P(a, b, c | i, j, k)` for all eight setting
/// triples, with `alphabet` outcomes per measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct Behavior {
    alphabet: usize,
    p: Vec<f64>,
}

impl Behavior {
    pub fn new(alphabet: usize, p: Vec<f64>) -> Result<Self> {
        let cube = alphabet.pow(3);
        if alphabet < 2 || p.len() != 8 * cube {
            return Err(Error::Invalid(format!(
                "behavior with alphabet {alphabet} needs {} entries, got {}",
                8 * cube,
                p.len()
            )));
        }
        let b = Behavior { alphabet, p };
        for t in Triple::ALL {
            let block = b.block(t);
            if let Some(bad) = block.iter().find(|&&x| !(x >= -NORMALIZATION_TOL)) {
                return Err(Error::Invalid(format!("P(.|{t}) has negative entry {bad}")));
            }
            let sum: f64 = block.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::Invalid(format!("P(.|{t}) sums to {sum}")));
            }
        }
        Ok(b)
    }

    /// Assembles a behavior from eight per-triple distributions over `(a,b,c)`.
    pub fn from_blocks(alphabet: usize, blocks: &[Vec<f64>]) -> Result<Self> {
        if blocks.len() != 8 {
            return Err(Error::Invalid(format!("expected 8 blocks, got {}", blocks.len())));
        }
        Behavior::new(alphabet, blocks.concat())
    }

    /// Outcome `outcomes[party][setting - 1]` with certainty.
    pub fn deterministic(alphabet: usize, outcomes: &[[usize; 2]; 3]) -> Result<Self> {
        if outcomes.iter().flatten().any(|&x| x >= alphabet) {
            return Err(Error::Invalid(format!(
                "outcomes {outcomes:?} exceed alphabet {alphabet}"
            )));
        }
        let cube = alphabet.pow(3);
        let mut p = vec![0.0; 8 * cube];
        for t in Triple::ALL {
            let [i, j, k] = t.0.map(|s| usize::from(s - 1));
            let (a, b, c) = (outcomes[0][i], outcomes[1][j], outcomes[2][k]);
            p[t.index() * cube + (a * alphabet + b) * alphabet + c] = 1.0;
        }
        Ok(Behavior { alphabet, p })
    }

    pub fn uniform(alphabet: usize) -> Self {
        let cube = alphabet.pow(3);
        Behavior {
            alphabet,
            p: vec![1.0 / cube as f64; 8 * cube],
        }
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn get(&self, t: Triple, a: usize, b: usize, c: usize) -> f64 {
        let k = self.alphabet;
        self.p[t.index() * k * k * k + (a * k + b) * k + c]
    }

    /// Distribution over `(a,b,c)` for one setting triple, `c` fastest.
    pub fn block(&self, t: Triple) -> &[f64] {
        let cube = self.alphabet.pow(3);
        &self.p[t.index() * cube..(t.index() + 1) * cube]
    }

    /// `p(ijk, r) = sum_{a+b+c = r mod d} P(a,b,c|ijk)`.
    pub fn modular_table(&self, d: usize) -> Result<ModularTable> {
        if d < self.alphabet {
            return Err(Error::Invalid(format!(
                "modulus {d} is smaller than the outcome alphabet {}",
                self.alphabet
            )));
        }
        let k = self.alphabet;
        let mut out = vec![0.0; 8 * d];
        for t in Triple::ALL {
            let block = self.block(t);
            let row = &mut out[t.index() * d..(t.index() + 1) * d];
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        row[(a + b + c) % d] += block[(a * k + b) * k + c];
                    }
                }
            }
        }
        Ok(ModularTable::from_raw(d, out))
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &Behavior, lambda: f64) -> Result<Self> {
        if other.alphabet != self.alphabet {
            return Err(Error::DimensionMismatch {
                expected: self.alphabet,
                found: other.alphabet,
            });
        }
        let p = self
            .p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Ok(Behavior {
            alphabet: self.alphabet,
            p,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }
}
