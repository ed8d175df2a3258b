use super::config::OptimizationConfig;
use super::multistart::search;
use crate::error::{Error, Result};
use crate::inequality::correlation::{CorrelationInequality, Correlator};
use crate::inequality::BellInequality;
use crate::quantum::qubit::{qubit_behavior, qubit_expectation};
use crate::quantum::{PureState, QubitSettings};

#[derive(Clone, Debug, PartialEq)]
pub struct QubitOptimum {
    pub value: f64,
    pub settings: QubitSettings,
    pub converged: bool,
    pub probe_gain: f64,
    pub best_restart: usize,
    pub evaluations: usize,
}

/// Value of a correlation inequality for projective qubit measurements.
pub fn correlation_value(cineq: &CorrelationInequality, state: &PureState, settings: &QubitSettings) -> Result<f64> {
    cineq
        .terms()
        .map(|(c, w)| Ok(w * qubit_expectation(state, settings, c)?))
        .sum()
}

/// Value of a binary-outcome probability inequality for qubit measurements.
pub fn probability_value(ineq: &BellInequality, state: &PureState, settings: &QubitSettings) -> Result<f64> {
    if ineq.alphabet() != 2 {
        return Err(Error::Invalid(format!(
            "{} uses {} outcomes per measurement; qubits give 2",
            ineq.label(),
            ineq.alphabet()
        )));
    }
    ineq.evaluate_lhs(&qubit_behavior(state, settings)?.modular_table(ineq.d())?)
}

fn maximize<F: Fn(&QubitSettings) -> f64 + Sync>(
    value: F,
    cap: f64,
    cfg: &OptimizationConfig,
) -> Result<QubitOptimum> {
    cfg.validate()?;
    let objective = |x: &[f64]| -value(&QubitSettings::from_angles(x).expect("12 angles"));
    let (best_restart, run, evaluations) = search(&objective, 12, &[], cfg);
    let v = -run.min.value;
    assert!(v <= cap + 1e-9, "optimizer value {v} exceeds the algebraic maximum {cap}");
    Ok(QubitOptimum {
        value: v,
        settings: QubitSettings::from_angles(&run.min.x)?,
        converged: run.converged,
        probe_gain: run.probe_gain,
        best_restart,
        evaluations,
    })
}

/// Maximizes a correlation inequality over two Bloch directions per party
/// (twelve polar and azimuthal angles).
pub fn maximize_violation_qubit(
    cineq: &CorrelationInequality,
    state: &PureState,
    cfg: &OptimizationConfig,
) -> Result<QubitOptimum> {
    if state.d() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: state.d(),
        });
    }
    let terms: Vec<(Correlator, f64)> = cineq.terms().collect();
    let cap: f64 = terms.iter().map(|(_, w)| w.abs()).sum();
    maximize(
        |s| {
            terms
                .iter()
                .map(|&(c, w)| w * qubit_expectation(state, s, c).expect("qubit state"))
                .sum()
        },
        cap,
        cfg,
    )
}

/// Maximizes a binary-outcome probability inequality over qubit observables.
pub fn maximize_qubit_probability(
    ineq: &BellInequality,
    state: &PureState,
    cfg: &OptimizationConfig,
) -> Result<QubitOptimum> {
    probability_value(ineq, state, &QubitSettings::from_angles(&[0.0; 12])?)?;
    maximize(
        |s| probability_value(ineq, state, s).expect("checked"),
        ineq.algebraic_max().to_f64(),
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::catalog;

    #[test]
    fn product_state_respects_local_bound() {
        let eq15 = catalog::correlation("quartit-qubit-corr").unwrap();
        let cfg = OptimizationConfig::default().with_restarts(6);
        let r = maximize_violation_qubit(&eq15, &PureState::basis(2, 0, 0, 0).unwrap(), &cfg).unwrap();
        assert!(r.value <= 3.0 + 1e-9 && r.value > 3.0 - 1e-6, "{}", r.value);
    }

    #[test]
    fn rejects_qudits() {
        let eq15 = catalog::correlation("quartit-qubit-corr").unwrap();
        let cfg = OptimizationConfig::default();
        assert!(maximize_violation_qubit(&eq15, &PureState::ghz(3).unwrap(), &cfg).is_err());
        let q = catalog::probability("quartit").unwrap();
        assert!(maximize_qubit_probability(&q, &PureState::w(), &cfg).is_err());
    }
}
