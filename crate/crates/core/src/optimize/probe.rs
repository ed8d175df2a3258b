use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1};
use rayon::prelude::*;

use super::config::OptimizationConfig;
use super::qubit::maximize_violation_qubit;
use crate::error::Result;
use crate::inequality::catalog;
use crate::quantum::{entanglement_check, EntanglementReport, PureState};

/// Violations smaller than this are neither confirmations nor counterexamples.
pub const MARGIN_CUTOFF: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq)]
pub enum SampleKind {
    Canonical { mu: [f64; 5], phi: f64 },
    Haar { seed: u64 },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Violated,
    Inconclusive,
    Counterexample,
    NotEntangled,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeSample {
    pub index: usize,
    pub kind: SampleKind,
    pub entanglement: EntanglementReport,
    /// Optimized value minus the classical bound; `None` when excluded.
    pub margin: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub samples: Vec<ProbeSample>,
}

impl ProbeReport {
    fn count(&self, v: Verdict) -> usize {
        self.samples.iter().filter(|s| s.verdict == v).count()
    }

    pub fn entangled(&self) -> usize {
        self.samples.len() - self.count(Verdict::NotEntangled)
    }

    pub fn violated(&self) -> usize {
        self.count(Verdict::Violated)
    }

    pub fn inconclusive(&self) -> usize {
        self.count(Verdict::Inconclusive)
    }

    pub fn counterexamples(&self) -> Vec<&ProbeSample> {
        self.samples
            .iter()
            .filter(|s| s.verdict == Verdict::Counterexample)
            .collect()
    }

    pub fn min_margin(&self) -> Option<(usize, f64)> {
        self.samples
            .iter()
            .filter_map(|s| s.margin.map(|m| (s.index, m)))
            .reduce(|a, b| if b.1 < a.1 { b } else { a })
    }
}

/// Even samples come from the five-parameter canonical family with uniform
/// weights on the simplex, odd samples are unitarily invariant random states.
pub fn probe_state(seed: u64, index: usize) -> Result<(SampleKind, PureState)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    if index % 2 == 0 {
        let raw: [f64; 5] = std::array::from_fn(|_| Exp1.sample(&mut rng));
        let total: f64 = raw.iter().sum();
        let mut mu = raw.map(|x| x / total);
        // Absorb rounding so the weights sum to one exactly enough.
        mu[0] = 1.0 - mu[1..].iter().sum::<f64>();
        let phi = rng.random_range(0.0..=PI);
        let state = PureState::canonical(mu, phi)?;
        Ok((SampleKind::Canonical { mu, phi }, state))
    } else {
        let s: u64 = rng.random();
        Ok((SampleKind::Haar { seed: s }, PureState::random(2, s)?))
    }
}

/// Largest violation margin of the quartit-derived qubit correlation inequality.
pub fn qubit_margin(state: &PureState, cfg: &OptimizationConfig) -> Result<f64> {
    let eq = catalog::correlation("quartit-qubit-corr")?;
    Ok(maximize_violation_qubit(&eq, state, cfg)?.value - eq.bound())
}

/// Samples pure three-qubit states and checks that every genuinely entangled
/// one violates the inequality.
pub fn violates_all_entangled_probe(
    sample_count: usize,
    seed: u64,
    cfg: &OptimizationConfig,
) -> Result<ProbeReport> {
    if sample_count == 0 {
        return Err(crate::Error::Invalid("sample_count must be at least 1".into()));
    }
    let samples = (0..sample_count)
        .into_par_iter()
        .map(|index| {
            let (kind, state) = probe_state(seed, index)?;
            classify(index, kind, &state, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport { samples })
}

pub fn classify(index: usize, kind: SampleKind, state: &PureState, cfg: &OptimizationConfig) -> Result<ProbeSample> {
    let entanglement = entanglement_check(state)?;
    if !entanglement.is_entangled() {
        return Ok(ProbeSample {
            index,
            kind,
            entanglement,
            margin: None,
            verdict: Verdict::NotEntangled,
        });
    }
    let margin = qubit_margin(state, cfg)?;
    let verdict = if margin >= MARGIN_CUTOFF {
        Verdict::Violated
    } else if margin > -MARGIN_CUTOFF {
        Verdict::Inconclusive
    } else {
        Verdict::Counterexample
    };
    Ok(ProbeSample {
        index,
        kind,
        entanglement,
        margin: Some(margin),
        verdict,
    })
}
