//! Correlation-function form: inequalities over `E(A_i B_j C_k)`, pair
//! correlators and single-party expectations of dichotomic (+1/-1) observables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{Behavior, Party, PartyPermutation, Triple};
use crate::error::{Error, Result};

const NO_SIGNALING_TOL: f64 = 1e-10;
const RANGE_TOL: f64 = 1e-12;

/// A correlator such as `E(A1 C2)`: for each party, the setting (1 or 2) or 0
/// when the party is traced out. The all-zero correlator is the constant 1.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Correlator(pub [u8; 3]);

impl Correlator {
    pub const CONSTANT: Correlator = Correlator([0, 0, 0]);

    pub fn triple(i: u8, j: u8, k: u8) -> Correlator {
        Correlator([i, j, k])
    }

    /// Every non-constant correlator, 26 in total.
    pub fn all() -> impl Iterator<Item = Correlator> {
        (1..27).map(Correlator::from_index)
    }

    pub fn index(self) -> usize {
        let [a, b, c] = self.0.map(usize::from);
        a + 3 * b + 9 * c
    }

    pub fn from_index(idx: usize) -> Correlator {
        Correlator([(idx % 3) as u8, (idx / 3 % 3) as u8, (idx / 9) as u8])
    }

    /// Number of parties involved.
    pub fn order(self) -> usize {
        self.0.iter().filter(|&&s| s != 0).count()
    }

    pub fn involves(self, p: Party) -> bool {
        self.0[p.index()] != 0
    }

    pub fn setting(self, p: Party) -> Option<u8> {
        match self.0[p.index()] {
            0 => None,
            s => Some(s),
        }
    }

    fn without(self, p: Party) -> Correlator {
        let mut s = self.0;
        s[p.index()] = 0;
        Correlator(s)
    }

    /// True when the setting triple `t` agrees with this correlator on the
    /// parties it involves.
    pub fn compatible(self, t: Triple) -> bool {
        Party::ALL
            .iter()
            .all(|&p| self.setting(p).is_none_or(|s| s == t.setting(p)))
    }
}

impl fmt::Display for Correlator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Correlator::CONSTANT {
            return write!(f, "1");
        }
        for p in Party::ALL {
            if let Some(s) = self.setting(p) {
                write!(f, "{}{s}", p.letter())?;
            }
        }
        Ok(())
    }
}

impl FromStr for Correlator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Correlator> {
        let bad = || Error::Invalid(format!("`{s}` is not a correlator like A1B2C1"));
        let chars: Vec<char> = s.chars().collect();
        if chars.is_empty() || chars.len() % 2 != 0 {
            return Err(bad());
        }
        let mut settings = [0u8; 3];
        let mut last: Option<usize> = None;
        for pair in chars.chunks(2) {
            let p = match pair[0] {
                'A' => 0,
                'B' => 1,
                'C' => 2,
                _ => return Err(bad()),
            };
            if last.is_some_and(|l| l >= p) {
                return Err(bad());
            }
            settings[p] = match pair[1] {
                '1' => 1,
                '2' => 2,
                _ => return Err(bad()),
            };
            last = Some(p);
        }
        Ok(Correlator(settings))
    }
}

/// Values `E(.)` for some or all of the 26 correlators.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationValues {
    values: [f64; 27],
    present: u32,
}

impl Default for CorrelationValues {
    fn default() -> Self {
        Self::empty()
    }
}

impl CorrelationValues {
    pub fn empty() -> Self {
        let mut values = [0.0; 27];
        values[0] = 1.0;
        CorrelationValues { values, present: 1 }
    }

    /// All 26 correlators from a function.
    pub fn from_fn(mut f: impl FnMut(Correlator) -> f64) -> Self {
        let mut out = Self::empty();
        for c in Correlator::all() {
            out.set(c, f(c));
        }
        out
    }

    /// Values of a deterministic assignment of +1/-1 to each observable.
    pub fn from_signs(signs: &[[i8; 2]; 3]) -> Self {
        Self::from_fn(|c| {
            Party::ALL
                .iter()
                .filter_map(|&p| c.setting(p).map(|s| f64::from(signs[p.index()][usize::from(s - 1)])))
                .product()
        })
    }

    pub fn set(&mut self, c: Correlator, v: f64) {
        if c != Correlator::CONSTANT {
            self.values[c.index()] = v;
            self.present |= 1 << c.index();
        }
    }

    pub fn get(&self, c: Correlator) -> Option<f64> {
        (self.present & (1 << c.index()) != 0).then(|| self.values[c.index()])
    }

    /// Checks every present entry lies in [-1, 1] up to 1e-12.
    pub fn validate(&self) -> Result<()> {
        for c in Correlator::all() {
            if let Some(v) = self.get(c) {
                if !(v.abs() <= 1.0 + RANGE_TOL) {
                    return Err(Error::Invalid(format!("E({c}) = {v} outside [-1, 1]")));
                }
            }
        }
        Ok(())
    }

    /// Every present value multiplied by `factor` (white noise of visibility
    /// `factor` scales all correlators).
    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        for v in out.values.iter_mut().skip(1) {
            *v *= factor;
        }
        out
    }
}

/// `sum_c coeff[c] E(c) <= bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrelationInequality {
    terms: BTreeMap<Correlator, f64>,
    bound: f64,
    label: String,
}

impl CorrelationInequality {
    /// Zero coefficients are dropped; a constant term is moved into the bound.
    pub fn new(
        terms: impl IntoIterator<Item = (Correlator, f64)>,
        bound: f64,
        label: &str,
    ) -> Result<Self> {
        let out = Self::assemble(terms, bound, label)?;
        if out.terms.is_empty() {
            return Err(Error::Invalid(format!(
                "correlation inequality `{label}` has no nonzero terms"
            )));
        }
        Ok(out)
    }

    fn assemble(
        terms: impl IntoIterator<Item = (Correlator, f64)>,
        mut bound: f64,
        label: &str,
    ) -> Result<Self> {
        if label.chars().any(char::is_whitespace) {
            return Err(Error::Invalid(format!("label `{label}` contains whitespace")));
        }
        let mut map: BTreeMap<Correlator, f64> = BTreeMap::new();
        for (c, v) in terms {
            if c.0.iter().any(|&s| s > 2) {
                return Err(Error::Invalid(format!("bad correlator settings {:?}", c.0)));
            }
            *map.entry(c).or_insert(0.0) += v;
        }
        if let Some(constant) = map.remove(&Correlator::CONSTANT) {
            bound -= constant;
        }
        map.retain(|_, v| *v != 0.0);
        Ok(CorrelationInequality {
            terms: map,
            bound,
            label: label.to_string(),
        })
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeff(&self, c: Correlator) -> f64 {
        self.terms.get(&c).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Correlator, f64)> + '_ {
        self.terms.iter().map(|(&c, &v)| (c, v))
    }

    pub fn triple_coeffs(&self) -> impl Iterator<Item = (Correlator, f64)> + '_ {
        self.terms().filter(|(c, _)| c.order() == 3)
    }

    pub fn pair_coeffs(&self) -> impl Iterator<Item = (Correlator, f64)> + '_ {
        self.terms().filter(|(c, _)| c.order() == 2)
    }

    pub fn single_coeffs(&self) -> impl Iterator<Item = (Correlator, f64)> + '_ {
        self.terms().filter(|(c, _)| c.order() == 1)
    }

    pub fn involves(&self, p: Party) -> bool {
        self.terms.keys().any(|c| c.involves(p))
    }

    /// Parties that appear in at least one term.
    pub fn parties(&self) -> Vec<Party> {
        Party::ALL.into_iter().filter(|&p| self.involves(p)).collect()
    }

    /// `sum coeff * E`.
    pub fn evaluate(&self, vals: &CorrelationValues) -> Result<f64> {
        self.terms
            .iter()
            .map(|(&c, &v)| {
                vals.get(c)
                    .map(|e| v * e)
                    .ok_or_else(|| Error::MissingTerm(c.to_string()))
            })
            .sum()
    }

    /// Multiplies coefficients and bound by a positive factor.
    pub fn scaled(&self, factor: f64, label: &str) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::Invalid(format!("scale factor {factor} must be positive")));
        }
        Self::new(
            self.terms().map(|(c, v)| (c, v * factor)),
            self.bound * factor,
            label,
        )
    }

    /// Fixes both observables of `party` to the deterministic values
    /// `values = (X_1, X_2)`, each +1 or -1, and collects terms.
    pub fn restrict_party_deterministic(&self, party: Party, values: [i8; 2]) -> Result<Self> {
        if values.iter().any(|v| v.abs() != 1) {
            return Err(Error::Invalid(format!("values {values:?} must be +1 or -1")));
        }
        if !self.involves(party) {
            return Err(Error::Invalid(format!(
                "party {party} does not appear in `{}`",
                self.label
            )));
        }
        let terms = self.terms().map(|(c, v)| match c.setting(party) {
            Some(s) => (c.without(party), v * f64::from(values[usize::from(s - 1)])),
            None => (c, v),
        });
        let sign = |v: i8| if v > 0 { '+' } else { '-' };
        let label = format!(
            "{}|{party}={}{}",
            self.label,
            sign(values[0]),
            sign(values[1])
        );
        Self::assemble(terms, self.bound, &label)
    }

    /// Relabels parties: the observables of `p` become those of `sigma.image(p)`.
    pub fn permute_parties(&self, sigma: &PartyPermutation) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(c, &v)| {
                let mut s = [0u8; 3];
                for p in Party::ALL {
                    s[sigma.image(p).index()] = c.0[p.index()];
                }
                (Correlator(s), v)
            })
            .collect();
        CorrelationInequality {
            terms,
            bound: self.bound,
            label: self.label.clone(),
        }
    }

    /// Same terms with a different bound.
    pub fn with_bound(&self, bound: f64) -> Self {
        CorrelationInequality {
            bound,
            ..self.clone()
        }
    }
}

/// `E = sum (-1)^(outcomes) P` for a binary-outcome behavior. Pair and single
/// correlators are read from marginals, which must not depend on the settings of
/// the traced-out parties.
pub fn expectations_from_joint(joint: &Behavior) -> Result<CorrelationValues> {
    if joint.alphabet() != 2 {
        return Err(Error::Invalid(format!(
            "expectations need binary outcomes, got alphabet {}",
            joint.alphabet()
        )));
    }
    let mut out = CorrelationValues::empty();
    for c in Correlator::all() {
        let mut first: Option<f64> = None;
        for t in Triple::ALL.into_iter().filter(|&t| c.compatible(t)) {
            let block = joint.block(t);
            let mut e = 0.0;
            for (idx, &p) in block.iter().enumerate() {
                let bits = [idx >> 2 & 1, idx >> 1 & 1, idx & 1];
                let parity: usize = Party::ALL
                    .iter()
                    .filter(|&&q| c.involves(q))
                    .map(|&q| bits[q.index()])
                    .sum();
                e += if parity % 2 == 0 { p } else { -p };
            }
            match first {
                None => first = Some(e),
                Some(f) if (f - e).abs() > NO_SIGNALING_TOL => {
                    return Err(Error::Signaling(format!(
                        "E({c}) is {f} in one context and {e} under settings {t}"
                    )));
                }
                Some(_) => {}
            }
        }
        out.set(c, first.expect("every correlator has a compatible triple"));
    }
    Ok(out)
}
