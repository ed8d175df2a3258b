use std::f64::consts::PI;

use super::config::OptimizationConfig;
use super::multistart::search;
use crate::error::{out_of_range, Error, Result};
use crate::inequality::{BellInequality, Party};
use crate::quantum::multiport::contract_table;
use crate::quantum::{ghz_closed_form_table, PhaseSettings, PureState};

/// Optimal four-outcome settings, shared by all parties.
pub fn reference_settings_d4() -> PhaseSettings {
    let a = (-1.0f64 / 3.0).acos() / 3.0;
    let b = (7.0f64 / 9.0).asin() / 3.0;
    PhaseSettings::symmetric(
        vec![0.0, a, a - PI / 3.0, PI / 3.0],
        vec![0.0, b, b + PI / 6.0, -PI / 6.0],
    )
    .expect("length 4")
}

/// Exact modular probabilities of the four-level GHZ state under
/// [`reference_settings_d4`], as `(numerator, denominator)` indexed by setting
/// triple (111, 112, 121, 122, 211, 212, 221, 222) and residue.
pub const QUARTIT_REFERENCE_TABLE: [[(i64, i64); 4]; 8] = {
    const H: [(i64, i64); 4] = [(1, 2), (0, 1), (1, 2), (0, 1)];
    const T: [(i64, i64); 4] = [(2, 3), (1, 6), (0, 1), (1, 6)];
    [
        [(0, 1), (1, 6), (2, 3), (1, 6)],
        H,
        H,
        T,
        H,
        T,
        T,
        [(1, 18), (0, 1), (1, 18), (8, 9)],
    ]
};

/// `beta2 = arccos(cos(3 beta1) - 1/2) / 3`, so that `cos 3b1 - cos 3b2 = 1/2`.
pub fn d5_beta2(beta1: f64) -> Result<f64> {
    let c = (3.0 * beta1).cos() - 0.5;
    if !(-1.0..=1.0).contains(&c) {
        return Err(out_of_range(
            "beta1",
            format!("cos(3 beta1) - 1/2 = {c} has no arccos"),
        ));
    }
    Ok(c.acos() / 3.0)
}

/// Five-outcome settings `(0, b1, b2, -b2, -b1)` and the shifted second setting.
pub fn reference_settings_d5(beta1: f64) -> Result<PhaseSettings> {
    let b1 = beta1;
    let b2 = d5_beta2(beta1)?;
    PhaseSettings::symmetric(
        vec![0.0, b1, b2, -b2, -b1],
        vec![
            0.0,
            b1 + PI / 5.0,
            b2 + 2.0 * PI / 5.0,
            -b2 - 2.0 * PI / 5.0,
            -b1 - PI / 5.0,
        ],
    )
}

/// Quintit value on the five-level GHZ state along the constraint curve.
pub fn d5_curve_value(ineq: &BellInequality, beta1: f64) -> Result<f64> {
    ineq.evaluate_lhs(&ghz_closed_form_table(&reference_settings_d5(beta1)?))
}

/// `beta1` maximizing [`d5_curve_value`] on `[lo, hi]` by golden-section search.
pub fn d5_best_beta1(ineq: &BellInequality, lo: f64, hi: f64) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = d5_curve_value(ineq, c)?;
    let mut fd = d5_curve_value(ineq, d)?;
    while b - a > 1e-10 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = d5_curve_value(ineq, c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = d5_curve_value(ineq, d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, d5_curve_value(ineq, x)?))
}

/// Maximizer along the constraint curve on its principal branch, computed by
/// golden-section search (about 0.4706).
pub fn reference_settings_d5_best(ineq: &BellInequality) -> Result<PhaseSettings> {
    let (beta1, _) = d5_best_beta1(ineq, 0.3, 0.6)?;
    reference_settings_d5(beta1)
}

/// Published settings for `d`, when there are any.
pub fn reference_seed(ineq: &BellInequality, d: usize) -> Option<PhaseSettings> {
    match d {
        4 => Some(reference_settings_d4()),
        5 => reference_settings_d5_best(ineq).ok(),
        _ => None,
    }
}

/// Phase vectors with `phi^0 = 0` per party and setting; the free coordinates
/// are either shared by all parties or independent.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gauge {
    pub d: usize,
    pub symmetric: bool,
}

impl Gauge {
    pub fn dim(self) -> usize {
        if self.symmetric {
            2 * (self.d - 1)
        } else {
            6 * (self.d - 1)
        }
    }

    pub fn settings(self, x: &[f64]) -> PhaseSettings {
        let m = self.d - 1;
        let vec_at = |k: usize| {
            let mut v = vec![0.0];
            v.extend_from_slice(&x[k * m..(k + 1) * m]);
            v
        };
        let phases = if self.symmetric {
            std::array::from_fn(|_| [vec_at(0), vec_at(1)])
        } else {
            std::array::from_fn(|p| [vec_at(2 * p), vec_at(2 * p + 1)])
        };
        PhaseSettings::new(self.d, phases).expect("lengths match")
    }

    /// Inverse of [`Gauge::settings`] up to the gauge; in symmetric mode the
    /// settings of party A are used.
    pub fn coordinates(self, s: &PhaseSettings) -> Vec<f64> {
        let parties: &[Party] = if self.symmetric { &[Party::A] } else { &Party::ALL };
        let mut x = Vec::with_capacity(self.dim());
        for &p in parties {
            for setting in 1..=2 {
                let v = s.get(p, setting);
                x.extend(v[1..].iter().map(|phi| phi - v[0]));
            }
        }
        x
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseOptimum {
    pub value: f64,
    pub settings: PhaseSettings,
    /// Best restart converged and passed the stationarity probes.
    pub converged: bool,
    /// Largest improvement found by the final coordinate probes (`<= 0` when
    /// no probe beats the returned value).
    pub probe_gain: f64,
    pub best_restart: usize,
    pub evaluations: usize,
}

/// Quantum value of a probability-form inequality with multiport devices.
pub fn lhs_at(ineq: &BellInequality, state: &PureState, settings: &PhaseSettings) -> Result<f64> {
    ineq.evaluate_lhs(&contract_table(state, settings)?)
}

/// Maximizes the left-hand side over multiport phase settings.
pub fn maximize_violation_phases(
    ineq: &BellInequality,
    state: &PureState,
    cfg: &OptimizationConfig,
) -> Result<PhaseOptimum> {
    cfg.validate()?;
    let d = state.d();
    if ineq.d() != d {
        return Err(Error::DimensionMismatch {
            expected: ineq.d(),
            found: d,
        });
    }
    let sym = Gauge { d, symmetric: true };
    let mut seeds: Vec<Vec<f64>> = reference_seed(ineq, d)
        .map(|s| vec![sym.coordinates(&s)])
        .unwrap_or_default();
    let mut prior_evaluations = 0;
    let gauge = if cfg.symmetric_parties {
        sym
    } else {
        // The unrestricted search starts from the symmetric optimum, so it can
        // only improve on it.
        let s = maximize_violation_phases(ineq, state, &cfg.clone().with_symmetric(true))?;
        prior_evaluations = s.evaluations;
        let free = Gauge { d, symmetric: false };
        let mut lifted = vec![free.coordinates(&s.settings)];
        lifted.extend(seeds.iter().map(|x| free.coordinates(&sym.settings(x))));
        seeds = lifted;
        free
    };
    let objective = |x: &[f64]| -> f64 {
        -lhs_at(ineq, state, &gauge.settings(x)).expect("dimensions checked")
    };
    let (best_restart, run, evaluations) = search(&objective, gauge.dim(), &seeds, cfg);
    let value = -run.min.value;
    let cap = ineq.algebraic_max().to_f64();
    assert!(
        value <= cap + 1e-9,
        "optimizer value {value} exceeds the algebraic maximum {cap}"
    );
    Ok(PhaseOptimum {
        value,
        settings: gauge.settings(&run.min.x),
        converged: run.converged,
        probe_gain: run.probe_gain,
        best_restart,
        evaluations: evaluations + prior_evaluations,
    })
}
