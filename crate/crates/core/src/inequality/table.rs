use std::io::Write;

use super::Triple;
use crate::error::{Error, Result};
use crate::numfmt::sig12;

const NORMALIZATION_TOL: f64 = 1e-12;

/// Modular joint probabilities `p(ijk, r) = P(a_i + b_j + c_k = r mod d)` for all
/// eight setting triples.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularTable {
    d: usize,
    p: Vec<f64>,
}

impl ModularTable {
    /// Validates normalization (per triple, within 1e-12) and nonnegativity.
    pub fn new(d: usize, p: Vec<f64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::Invalid(format!("d={d} < 2")));
        }
        if p.len() != 8 * d {
            return Err(Error::Invalid(format!(
                "table needs {} entries, got {}",
                8 * d,
                p.len()
            )));
        }
        for t in Triple::ALL {
            let row = &p[t.index() * d..(t.index() + 1) * d];
            if let Some(bad) = row.iter().find(|&&x| !(x >= -NORMALIZATION_TOL)) {
                return Err(Error::Invalid(format!("p({t}) has negative entry {bad}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > NORMALIZATION_TOL {
                return Err(Error::Invalid(format!("p({t}) sums to {sum}")));
            }
        }
        Ok(ModularTable { d, p })
    }

    /// Builds a table from rows without validation. Callers guarantee the
    /// invariants (used on hot paths whose inputs are normalized by construction).
    pub(crate) fn from_raw(d: usize, p: Vec<f64>) -> Self {
        debug_assert_eq!(p.len(), 8 * d);
        ModularTable { d, p }
    }

    /// `p = 1/d` everywhere.
    pub fn uniform(d: usize) -> Self {
        ModularTable {
            d,
            p: vec![1.0 / d as f64; 8 * d],
        }
    }

    /// Deterministic table with residue `residues[t]` certain for triple `t`.
    pub fn from_residues(d: usize, residues: &[usize; 8]) -> Result<Self> {
        let mut p = vec![0.0; 8 * d];
        for (t, &r) in residues.iter().enumerate() {
            if r >= d {
                return Err(Error::Invalid(format!("residue {r} >= d={d}")));
            }
            p[t * d + r] = 1.0;
        }
        Ok(ModularTable { d, p })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, t: Triple, r: usize) -> f64 {
        self.p[t.index() * self.d + r]
    }

    pub fn row(&self, t: Triple) -> &[f64] {
        &self.p[t.index() * self.d..(t.index() + 1) * self.d]
    }

    /// Entries in (triple, residue) row-major order.
    pub fn values(&self) -> &[f64] {
        &self.p
    }

    /// `lambda * self + (1 - lambda) * other`.
    pub fn mix(&self, other: &ModularTable, lambda: f64) -> Result<Self> {
        if other.d != self.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let p = self
            .p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| lambda * a + (1.0 - lambda) * b)
            .collect();
        Ok(ModularTable { d: self.d, p })
    }

    /// Largest |entry - other entry|.
    pub fn max_abs_diff(&self, other: &ModularTable) -> f64 {
        self.p
            .iter()
            .zip(&other.p)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// CSV with header `i,j,k,r,p`, one line per entry.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
        w.write_record(["i", "j", "k", "r", "p"]).map_err(io)?;
        for t in Triple::ALL {
            for r in 0..self.d {
                let [i, j, k] = t.0;
                w.write_record([
                    i.to_string(),
                    j.to_string(),
                    k.to_string(),
                    r.to_string(),
                    sig12(self.get(t, r)),
                ])
                .map_err(io)?;
            }
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_rows() {
        let mut p = vec![0.25; 32];
        p[0] = 0.3;
        assert!(ModularTable::new(4, p).is_err());
        assert!(ModularTable::new(4, vec![0.25; 31]).is_err());
    }

    #[test]
    fn rejects_negative_entries() {
        let mut p = vec![0.5, 0.5].repeat(8);
        p[0] = 1.5;
        p[1] = -0.5;
        assert!(ModularTable::new(2, p).is_err());
    }

    #[test]
    fn residue_table_is_deterministic() {
        let t = ModularTable::from_residues(3, &[0, 1, 2, 0, 1, 2, 0, 1]).unwrap();
        assert_eq!(t.get(Triple([1, 1, 2]), 1), 1.0);
        assert_eq!(t.get(Triple([1, 1, 2]), 0), 0.0);
        assert!(ModularTable::new(3, t.values().to_vec()).is_ok());
        assert!(ModularTable::from_residues(3, &[3; 8]).is_err());
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut buf = Vec::new();
        ModularTable::uniform(2).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "i,j,k,r,p");
        assert_eq!(lines[1], "1,1,1,0,0.5");
        assert_eq!(lines.len(), 17);
    }
}
