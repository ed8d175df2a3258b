use std::f64::consts::FRAC_PI_4;
use std::path::Path;

use anyhow::{bail, Result};
use tribell::inequality::catalog::Entry;
use tribell::inequality::{BellInequality, Behavior};
use tribell::numfmt::sig12;
use tribell::optimize::phases::reference_seed;
use tribell::optimize::qubit::{correlation_value, probability_value};
use tribell::optimize::{
    lhs_at, maximize_qubit_probability, maximize_violation_phases, maximize_violation_qubit,
    threshold, ThresholdKind,
};
use tribell::quantum::record::{observables_to_text, phases_to_text};
use tribell::quantum::{mix_white_noise, quantum_table, NoiseParameter, PureState};

use super::resolve;
use crate::args::{SettingsArg, StateArg};
use crate::context::Context;
use crate::Status;

pub struct Request<'a> {
    pub name: &'a str,
    pub state: StateArg,
    pub xi: Option<f64>,
    pub beta: Option<f64>,
    pub settings: SettingsArg,
    pub noise: Option<f64>,
    pub out: Option<&'a Path>,
}

/// What was computed, independent of the measurement model.
struct Evaluation {
    label: String,
    model: String,
    value: f64,
    bound: f64,
    /// Left-hand side at the same settings with white noise of weight `F`.
    noisy: Option<(f64, f64)>,
    record: String,
}

fn qudit_state(req: &Request, d: usize, seed: u64) -> Result<PureState> {
    if req.xi.is_some() || req.beta.is_some() {
        bail!("--xi and --beta apply to three-qubit states only");
    }
    Ok(match req.state {
        StateArg::Ghz => PureState::ghz(d)?,
        StateArg::Product => PureState::basis(d, 0, 0, 0)?,
        StateArg::Random => PureState::random(d, seed)?,
        StateArg::W => bail!("the W state is defined for qubits; `{}` has d={d}", req.name),
    })
}

fn qubit_state(req: &Request, seed: u64) -> Result<PureState> {
    Ok(match req.state {
        StateArg::Ghz => {
            if req.beta.is_some() {
                bail!("--beta applies to the W family");
            }
            PureState::generalized_ghz(req.xi.unwrap_or(FRAC_PI_4))?
        }
        StateArg::W => match (req.beta, req.xi) {
            (None, None) => PureState::w(),
            (beta, xi) => PureState::generalized_w(
                beta.unwrap_or((1.0 / 3f64.sqrt()).acos()),
                xi.unwrap_or(FRAC_PI_4),
            )?,
        },
        StateArg::Product => PureState::basis(2, 0, 0, 0)?,
        StateArg::Random => PureState::random(2, seed)?,
    })
}

fn noise(req: &Request) -> Result<Option<NoiseParameter>> {
    Ok(req.noise.map(NoiseParameter::new).transpose()?)
}

fn qudit(ctx: &Context, req: &Request, ineq: &BellInequality) -> Result<Evaluation> {
    let d = ineq.d();
    let state = qudit_state(req, d, ctx.cfg.seed)?;
    let settings = match req.settings {
        SettingsArg::Paper => match reference_seed(ineq, d) {
            Some(s) => s,
            None => bail!("no published multiport settings for d={d}; use --settings optimize"),
        },
        SettingsArg::Optimize => maximize_violation_phases(ineq, &state, &ctx.cfg)?.settings,
    };
    let value = lhs_at(ineq, &state, &settings)?;
    let noisy = match noise(req)? {
        Some(f) => {
            let table = mix_white_noise(&quantum_table(&state, &settings)?, f);
            Some((f.value(), ineq.evaluate_lhs(&table)?))
        }
        None => None,
    };
    Ok(Evaluation {
        label: format!("{} (d={d})", ineq.label()),
        model: "multiport beam splitters".into(),
        value,
        bound: ineq.bound().to_f64(),
        noisy,
        record: phases_to_text(&settings),
    })
}

fn qubit_probability(ctx: &Context, req: &Request, ineq: &BellInequality) -> Result<Evaluation> {
    if req.settings == SettingsArg::Paper {
        bail!("no published qubit observables; use --settings optimize");
    }
    let state = qubit_state(req, ctx.cfg.seed)?;
    let opt = maximize_qubit_probability(ineq, &state, &ctx.cfg)?;
    let value = probability_value(ineq, &state, &opt.settings)?;
    let uniform = ineq.evaluate_lhs(&Behavior::uniform(2).modular_table(ineq.d())?)?;
    let noisy = noise(req)?.map(|f| (f.value(), (1.0 - f.value()) * value + f.value() * uniform));
    Ok(Evaluation {
        label: format!("{} (binary outcomes, sums mod {})", ineq.label(), ineq.d()),
        model: "qubit observables".into(),
        value,
        bound: ineq.bound().to_f64(),
        noisy,
        record: observables_to_text(&opt.settings),
    })
}

pub fn run(ctx: &Context, req: &Request) -> Result<Status> {
    let eval = match resolve(req.name)? {
        Entry::Probability(ineq) if ineq.alphabet() == 2 => qubit_probability(ctx, req, &ineq)?,
        Entry::Probability(ineq) => qudit(ctx, req, &ineq)?,
        Entry::Correlation(c) => {
            if req.settings == SettingsArg::Paper {
                bail!("no published qubit observables; use --settings optimize");
            }
            let state = qubit_state(req, ctx.cfg.seed)?;
            let opt = maximize_violation_qubit(&c, &state, &ctx.cfg)?;
            let value = correlation_value(&c, &state, &opt.settings)?;
            let noisy = noise(req)?.map(|f| (f.value(), (1.0 - f.value()) * value));
            Evaluation {
                label: c.label().to_string(),
                model: "qubit observables".into(),
                value,
                bound: c.bound(),
                noisy,
                record: observables_to_text(&opt.settings),
            }
        }
    };
    println!("inequality: {}", eval.label);
    let origin = match req.settings {
        SettingsArg::Paper => "published",
        SettingsArg::Optimize => "optimized",
    };
    println!("measurements: {} ({origin} settings)", eval.model);
    println!("seed: {}", ctx.cfg.seed);
    println!("lhs: {}", sig12(eval.value));
    println!("bound: {}", sig12(eval.bound));
    println!("ratio: {}", sig12(eval.value / eval.bound));
    match threshold(eval.value, eval.bound, ThresholdKind::Fidelity) {
        Ok(t) => {
            println!("fidelity threshold: {}", sig12(t.threshold));
            println!("visibility threshold: {}", sig12(1.0 - t.threshold));
        }
        Err(e) => println!("threshold: undefined ({e})"),
    }
    if let Some((f, v)) = eval.noisy {
        println!("noise: {}", sig12(f));
        println!("noisy lhs: {}", sig12(v));
        println!("violated with noise: {}", if v > eval.bound { "yes" } else { "no" });
    }
    if let Some(path) = req.out {
        ctx.write_artifact(path, eval.record.as_bytes())?;
        println!("settings written to {}", path.display());
    }
    Ok(Status::Success)
}
