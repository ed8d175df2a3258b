use std::f64::consts::{FRAC_PI_2, PI};
use std::io::Write;

use rayon::prelude::*;

use super::config::OptimizationConfig;
use super::qubit::{maximize_qubit_probability, maximize_violation_qubit, QubitOptimum};
use crate::error::{Error, Result};
use crate::inequality::correlation::CorrelationInequality;
use crate::inequality::BellInequality;
use crate::numfmt::sig12;
use crate::quantum::{PureState, QubitSettings};

/// One-parameter state families swept over `xi`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum Family {
    /// `cos(xi)|000> + sin(xi)|111>`.
    Ghz,
    /// `sin(beta)cos(xi)|100> + sin(beta)sin(xi)|010> + cos(beta)|001>` at fixed `beta`.
    W { beta: f64 },
}

impl Family {
    pub fn state(self, xi: f64) -> Result<PureState> {
        match self {
            Family::Ghz => PureState::generalized_ghz(xi),
            Family::W { beta } => PureState::generalized_w(beta, xi),
        }
    }

    pub fn beta(self) -> Option<f64> {
        match self {
            Family::Ghz => None,
            Family::W { beta } => Some(beta),
        }
    }
}

/// What is maximized at each grid point.
#[derive(Clone, Debug)]
pub enum Target {
    Correlation(CorrelationInequality),
    /// Binary-outcome probability form evaluated on qubits.
    Probability(BellInequality),
}

impl Target {
    pub fn bound(&self) -> f64 {
        match self {
            Target::Correlation(c) => c.bound(),
            Target::Probability(p) => p.bound().to_f64(),
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Target::Correlation(c) => c.label(),
            Target::Probability(p) => p.label(),
        }
    }

    pub fn maximize(&self, state: &PureState, cfg: &OptimizationConfig) -> Result<QubitOptimum> {
        match self {
            Target::Correlation(c) => maximize_violation_qubit(c, state, cfg),
            Target::Probability(p) => maximize_qubit_probability(p, state, cfg),
        }
    }

    pub fn value(&self, state: &PureState, settings: &QubitSettings) -> Result<f64> {
        match self {
            Target::Correlation(c) => super::qubit::correlation_value(c, state, settings),
            Target::Probability(p) => super::qubit::probability_value(p, state, settings),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub xi: f64,
    pub beta: Option<f64>,
    pub value: f64,
    pub bound: f64,
    pub ratio: f64,
    pub converged: bool,
    pub settings: QubitSettings,
}

/// `n` uniform points on `[0, pi/2]`; a single point sits at `pi/4`.
pub fn xi_grid(n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![PI / 4.0],
        _ => (0..n).map(|i| FRAC_PI_2 * i as f64 / (n - 1) as f64).collect(),
    }
}

/// Per-row seed, so a row's result depends only on its grid index.
fn row_config(cfg: &OptimizationConfig, index: usize) -> OptimizationConfig {
    cfg.clone()
        .with_seed(cfg.seed ^ (index as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn sweep(
    family: Family,
    target: &Target,
    grid: &[f64],
    cfg: &OptimizationConfig,
) -> Result<Vec<SweepRow>> {
    if grid.is_empty() {
        return Err(Error::Invalid("sweep grid is empty".into()));
    }
    cfg.validate()?;
    // Validate parameters up front so errors are reported deterministically.
    for &xi in grid {
        family.state(xi)?;
    }
    let bound = target.bound();
    grid.par_iter()
        .enumerate()
        .map(|(i, &xi)| {
            let state = family.state(xi)?;
            let opt = target.maximize(&state, &row_config(cfg, i))?;
            Ok(SweepRow {
                xi,
                beta: family.beta(),
                value: opt.value,
                bound,
                ratio: opt.value / bound,
                converged: opt.converged,
                settings: opt.settings,
            })
        })
        .collect()
}

/// CSV with columns `xi,beta,value,bound,ratio,converged`; `beta` is empty for
/// the GHZ family.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
    w.write_record(["xi", "beta", "value", "bound", "ratio", "converged"])
        .map_err(io)?;
    for r in rows {
        w.write_record([
            sig12(r.xi),
            r.beta.map(sig12).unwrap_or_default(),
            sig12(r.value),
            sig12(r.bound),
            sig12(r.ratio),
            r.converged.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))
}

/// Smallest `xi` in `[lo, hi]` at which `target` is violated by more than
/// `margin`, located by bisection to width `tol`. Requires no violation at `lo`
/// and a violation at `hi`.
pub fn violation_onset(
    family: Family,
    target: &Target,
    lo: f64,
    hi: f64,
    tol: f64,
    margin: f64,
    cfg: &OptimizationConfig,
) -> Result<f64> {
    let bound = target.bound();
    let violated = |xi: f64| -> Result<bool> {
        Ok(target.maximize(&family.state(xi)?, cfg)?.value > bound + margin)
    };
    if violated(lo)? || !violated(hi)? {
        return Err(Error::Invalid(format!(
            "bracket [{lo}, {hi}] does not straddle the onset of violation"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if violated(m)? {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(xi_grid(3), vec![0.0, PI / 4.0, FRAC_PI_2]);
        assert_eq!(xi_grid(1), vec![PI / 4.0]);
        assert_eq!(xi_grid(101).len(), 101);
    }

    #[test]
    fn csv_layout() {
        let row = SweepRow {
            xi: 0.5,
            beta: None,
            value: 3.5,
            bound: 3.0,
            ratio: 3.5 / 3.0,
            converged: true,
            settings: QubitSettings::from_angles(&[0.0; 12]).unwrap(),
        };
        let mut buf = Vec::new();
        write_sweep_csv(&[row], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "xi,beta,value,bound,ratio,converged\n0.5,,3.5,3,1.16666666667,true\n");
    }

    #[test]
    fn empty_grid_and_bad_angles() {
        let t = Target::Correlation(crate::inequality::catalog::correlation("chsh").unwrap());
        let cfg = OptimizationConfig::default();
        assert!(sweep(Family::Ghz, &t, &[], &cfg).is_err());
        assert!(sweep(Family::Ghz, &t, &[3.0], &cfg).is_err());
    }
}
