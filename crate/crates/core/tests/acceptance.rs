use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tribell::inequality::catalog;
use tribell::inequality::correlation::{CorrelationInequality, CorrelationValues};
use tribell::inequality::equivalence::prob_corr_equivalence;
use tribell::inequality::{Half, Party, PartyPermutation, Triple};
use tribell::local::{classical_max, facet_check, white_noise_lhs};
use tribell::optimize::{
    lhs_at, maximize_violation_phases, maximize_violation_qubit, reference_settings_d4, sweep,
    threshold, violates_all_entangled_probe, violation_onset, xi_grid, Family,
    OptimizationConfig, Target, ThresholdKind, QUARTIT_REFERENCE_TABLE,
};
use tribell::quantum::{ghz_closed_form_table, quantum_table, PhaseSettings, PureState};

const BOUNDS_BUDGET: Duration = Duration::from_secs(1);
const FACET_BUDGET: Duration = Duration::from_secs(120);
const D4_BUDGET: Duration = Duration::from_secs(1);
const D5_BUDGET: Duration = Duration::from_secs(30);
const QUBIT_BUDGET: Duration = Duration::from_secs(20);
const PROBE_BUDGET: Duration = Duration::from_secs(600);

const D4_VALUE_TOL: f64 = 1e-9;
const TABLE_TOL: f64 = 1e-6;
const D5_VALUE: f64 = 6.72216;
const D5_VALUE_TOL: f64 = 1e-3;
const F_D4_TOL: f64 = 1e-9;
const F_D5: f64 = 0.40495;
const F_D5_TOL: f64 = 1e-4;
const V_GHZ: f64 = 0.68125;
const V_GHZ_TOL: f64 = 1e-4;
const V_W: f64 = 0.660668;
const V_W_TOL: f64 = 1e-5;
const V_Q_FORM_TOL: f64 = 1e-4;
const QUBIT_GHZ: f64 = 4.40367;
const QUBIT_W: f64 = 4.54086;
const QUBIT_TOL: f64 = 1e-4;
const ENDPOINT_RATIO_TOL: f64 = 1e-6;
const VIOLATION_MARGIN: f64 = 1e-9;
const ONSET_BISECTION_TOL: f64 = 1e-7;
const ONSET_TOL: f64 = 1e-4;
const CLOSED_FORM_TOL: f64 = 1e-12;
const WHITE_NOISE_TOL: f64 = 1e-12;
const SWEEP_POINTS: usize = 101;
const RANDOM_SETTINGS_PER_D: usize = 100;
const PROBE_SAMPLES: usize = 500;
const PROBE_SEED: u64 = 20_240_501;

struct Check {
    name: String,
    ok: bool,
}

fn check(name: impl Into<String>, ok: bool) -> Check {
    Check {
        name: name.into(),
        ok,
    }
}

fn within(name: &str, got: f64, want: f64, tol: f64) -> Check {
    check(
        format!("{name}: {got:.12} vs {want:.12} (tol {tol:e})"),
        (got - want).abs() <= tol,
    )
}

fn on_time(elapsed: Duration, budget: Duration) -> Check {
    check(
        format!("runtime {:.2}s within {}s", elapsed.as_secs_f64(), budget.as_secs()),
        elapsed <= budget,
    )
}

fn cfg() -> OptimizationConfig {
    OptimizationConfig::default()
}

fn bounds() -> Vec<Check> {
    let start = Instant::now();
    let mut out: Vec<Check> = [
        ("quartit", 12),
        ("quintit", 4),
        ("qutrit", 6),
        ("mermin-prob", 2),
        ("quartit-qubit", 12),
        ("quintit-qubit", 4),
    ]
    .into_iter()
    .map(|(name, want)| {
        let got = classical_max(&catalog::probability(name).unwrap()).unwrap().value;
        check(format!("{name}: classical max {got} = {want}"), got == Half::from_int(want))
    })
    .collect();
    out.push(on_time(start.elapsed(), BOUNDS_BUDGET));
    out
}

fn facets() -> Vec<Check> {
    let mut out = Vec::new();
    for (name, rank) in [("qutrit", 123), ("quartit", 341), ("quintit", 727)] {
        let start = Instant::now();
        let r = facet_check(&catalog::probability(name).unwrap()).unwrap();
        out.push(check(
            format!("{name}: facet {} with affine rank {} = {rank}", r.is_facet, r.affine_rank),
            r.is_facet && r.affine_rank == rank,
        ));
        if name == "quintit" {
            out.push(on_time(start.elapsed(), FACET_BUDGET));
        }
    }
    let m = facet_check(&catalog::probability("mermin-prob").unwrap()).unwrap();
    out.push(check(
        format!(
            "mermin-prob verdict: facet {} (affine rank {} of {}, {} saturating strategies)",
            m.is_facet, m.affine_rank, m.polytope_dim, m.saturating_count
        ),
        m.is_valid,
    ));
    out
}

fn quartit_violation() -> Vec<Check> {
    let start = Instant::now();
    let ineq = catalog::probability("quartit").unwrap();
    let ghz = PureState::ghz(4).unwrap();
    let settings = reference_settings_d4();
    let lhs = lhs_at(&ineq, &ghz, &settings).unwrap();
    let table = quantum_table(&ghz, &settings).unwrap();
    let mut worst = 0.0f64;
    for (idx, row) in QUARTIT_REFERENCE_TABLE.iter().enumerate() {
        for (r, &(num, den)) in row.iter().enumerate() {
            let want = num as f64 / den as f64;
            worst = worst.max((table.get(Triple::from_index(idx), r) - want).abs());
        }
    }
    vec![
        within("LHS at published settings", lhs, 68.0 / 3.0, D4_VALUE_TOL),
        check(
            format!("32 table entries, largest deviation {worst:.3e} (tol {TABLE_TOL:e})"),
            worst <= TABLE_TOL,
        ),
        on_time(start.elapsed(), D4_BUDGET),
    ]
}

fn quintit_violation() -> Vec<Check> {
    let start = Instant::now();
    let ineq = catalog::probability("quintit").unwrap();
    let opt = maximize_violation_phases(&ineq, &PureState::ghz(5).unwrap(), &cfg()).unwrap();
    vec![
        within("optimized LHS", opt.value, D5_VALUE, D5_VALUE_TOL),
        check(format!("restarts = {}", cfg().restarts), cfg().restarts == 32),
        on_time(start.elapsed(), D5_BUDGET),
    ]
}

fn thresholds() -> Vec<Check> {
    let quartit = catalog::probability("quartit").unwrap();
    let q4 = lhs_at(&quartit, &PureState::ghz(4).unwrap(), &reference_settings_d4()).unwrap();
    let f4 = threshold(q4, 12.0, ThresholdKind::Fidelity).unwrap().threshold;

    let quintit = catalog::probability("quintit").unwrap();
    let q5 = maximize_violation_phases(&quintit, &PureState::ghz(5).unwrap(), &cfg())
        .unwrap()
        .value;
    let f5 = threshold(q5, 4.0, ThresholdKind::Fidelity).unwrap().threshold;

    let eq15 = catalog::correlation("quartit-qubit-corr").unwrap();
    let ghz = PureState::generalized_ghz(FRAC_PI_4).unwrap();
    let q_ghz = maximize_violation_qubit(&eq15, &ghz, &cfg()).unwrap().value;
    let q_w = maximize_violation_qubit(&eq15, &PureState::w(), &cfg()).unwrap().value;
    let v_ghz = threshold(q_ghz, 3.0, ThresholdKind::Visibility).unwrap().threshold;
    let v_w = threshold(q_w, 3.0, ThresholdKind::Visibility).unwrap().threshold;

    let q_form = catalog::correlation("qutrit-qubit-q").unwrap();
    let q = maximize_violation_qubit(&q_form, &ghz, &cfg()).unwrap().value;
    let v_q = threshold(q, q_form.bound(), ThresholdKind::Visibility)
        .unwrap()
        .threshold;

    vec![
        within("fidelity threshold d=4", f4, 8.0 / 17.0, F_D4_TOL),
        within("fidelity threshold d=5", f5, F_D5, F_D5_TOL),
        within("visibility, three-qubit GHZ", v_ghz, V_GHZ, V_GHZ_TOL),
        within("visibility, W", v_w, V_W, V_W_TOL),
        within("visibility, qutrit-derived form on GHZ", v_q, 4.0 * 3f64.sqrt() / 9.0, V_Q_FORM_TOL),
    ]
}

fn qubit_maxima() -> Vec<Check> {
    let eq15 = catalog::correlation("quartit-qubit-corr").unwrap();
    let mut out = Vec::new();
    for (label, state, want) in [
        ("GHZ", PureState::generalized_ghz(FRAC_PI_4).unwrap(), QUBIT_GHZ),
        ("W", PureState::w(), QUBIT_W),
    ] {
        let start = Instant::now();
        let v = maximize_violation_qubit(&eq15, &state, &cfg()).unwrap().value;
        out.push(within(label, v, want, QUBIT_TOL));
        out.push(on_time(start.elapsed(), QUBIT_BUDGET));
    }
    out
}

fn sweep_shapes() -> Vec<Check> {
    let mut out = Vec::new();
    let eq15 = Target::Correlation(catalog::correlation("quartit-qubit-corr").unwrap());
    let grid = xi_grid(SWEEP_POINTS);
    let rows = sweep(Family::Ghz, &eq15, &grid, &cfg()).unwrap();
    let interior = &rows[1..rows.len() - 1];
    let weakest = interior
        .iter()
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio))
        .unwrap();
    out.push(check(
        format!(
            "GHZ family: smallest interior ratio {:.12} at xi {:.4}",
            weakest.ratio, weakest.xi
        ),
        interior.iter().all(|r| r.ratio > 1.0 + VIOLATION_MARGIN),
    ));
    for r in [&rows[0], &rows[rows.len() - 1]] {
        out.push(within(&format!("GHZ family endpoint xi {:.4}", r.xi), r.ratio, 1.0, ENDPOINT_RATIO_TOL));
    }
    let peak = rows.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio)).unwrap();
    out.push(within("GHZ family peak location", peak.xi, FRAC_PI_4, 1e-12));

    let mermin = Target::Correlation(catalog::correlation("mermin-corr").unwrap());
    let mrows = sweep(Family::Ghz, &mermin, &grid, &cfg()).unwrap();
    match mrows.iter().position(|r| r.ratio > 1.0 + VIOLATION_MARGIN) {
        Some(i) if i > 0 => {
            let onset = violation_onset(
                Family::Ghz,
                &mermin,
                grid[i - 1],
                grid[i],
                ONSET_BISECTION_TOL,
                VIOLATION_MARGIN,
                &cfg(),
            )
            .unwrap();
            out.push(within("Mermin onset", onset, PI / 12.0, ONSET_TOL));
        }
        other => out.push(check(format!("Mermin onset bracket at grid index {other:?}"), false)),
    }

    let w_corner = Family::W { beta: FRAC_PI_2 };
    let corners = sweep(w_corner, &eq15, &[0.0, FRAC_PI_2], &cfg()).unwrap();
    for r in &corners {
        out.push(check(
            format!("W family beta=pi/2, xi={:.4}: ratio {:.12}", r.xi, r.ratio),
            r.ratio <= 1.0 + VIOLATION_MARGIN,
        ));
    }

    let a = Target::Correlation(catalog::correlation("qutrit-qubit-q").unwrap());
    let b = Target::Correlation(catalog::correlation("quartit-qubit-q").unwrap());
    let ra = sweep(Family::Ghz, &a, &[FRAC_PI_4], &cfg()).unwrap()[0].ratio;
    let rb = sweep(Family::Ghz, &b, &[FRAC_PI_4], &cfg()).unwrap()[0].ratio;
    out.push(check(
        format!("ratios at xi=pi/4: quartit-derived {rb:.9} >= qutrit-derived {ra:.9}"),
        rb >= ra,
    ));
    out
}

fn tripartite(c: &CorrelationInequality) -> bool {
    Party::ALL.iter().all(|&p| c.involves(p))
}

fn random_settings(d: usize, rng: &mut ChaCha8Rng) -> PhaseSettings {
    let mut v = || (0..d).map(|_| rng.random_range(-PI..PI)).collect::<Vec<_>>();
    let phases = [[v(), v()], [v(), v()], [v(), v()]];
    PhaseSettings::new(d, phases).unwrap()
}

fn symmetries() -> Vec<Check> {
    let mut out = Vec::new();
    let probability = catalog::all_probability();
    for ineq in &probability {
        let perm_ok = PartyPermutation::all()
            .iter()
            .all(|s| ineq.permute_parties(s) == *ineq);
        out.push(check(format!("{}: invariant under party permutations", ineq.label()), perm_ok));
    }
    for c in catalog::all_correlation().iter().filter(|c| tripartite(c)) {
        let perm_ok = PartyPermutation::all()
            .iter()
            .all(|s| c.permute_parties(s) == *c);
        out.push(check(format!("{}: invariant under party permutations", c.label()), perm_ok));
    }
    for ineq in probability.iter().filter(|i| i.d() <= 5) {
        let base = classical_max(ineq).unwrap().value;
        let shifted: Vec<Half> = (0..ineq.d())
            .map(|m| classical_max(&ineq.shift_outcomes(m).unwrap()).unwrap().value)
            .collect();
        let text: Vec<String> = shifted.iter().map(Half::to_string).collect();
        out.push(check(
            format!("{}: classical max under shifts [{}] vs {base}", ineq.label(), text.join(", ")),
            shifted.iter().all(|&v| v == base),
        ));
    }
    for ineq in &probability {
        let n = ineq.normalized_coefficients();
        out.push(check(
            format!("{}: normalized coefficients in [{:.4}, {:.4}]", ineq.label(), n.min(), n.max()),
            n.within_unit_range(),
        ));
        let w = white_noise_lhs(ineq);
        out.push(check(
            format!("{}: white-noise LHS {w}", ineq.label()),
            w.abs() <= WHITE_NOISE_TOL,
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in 2..=6 {
        let ghz = PureState::ghz(d).unwrap();
        let worst = (0..RANDOM_SETTINGS_PER_D)
            .map(|_| {
                let s = random_settings(d, &mut rng);
                quantum_table(&ghz, &s)
                    .unwrap()
                    .max_abs_diff(&ghz_closed_form_table(&s))
            })
            .fold(0.0f64, f64::max);
        out.push(check(
            format!("d={d}: closed form vs contraction, largest difference {worst:.2e}"),
            worst <= CLOSED_FORM_TOL,
        ));
    }
    out
}

fn signs(idx: usize) -> [[i8; 2]; 3] {
    let s = |k: usize| if (idx >> (5 - k)) & 1 == 0 { 1 } else { -1 };
    [[s(0), s(1)], [s(2), s(3)], [s(4), s(5)]]
}

fn reductions() -> Vec<Check> {
    let eq15 = catalog::correlation("quartit-qubit-corr").unwrap();
    let reduced = eq15.restrict_party_deterministic(Party::C, [-1, 1]).unwrap();
    let chsh = CorrelationInequality::new(
        [("A1B1", 2.0), ("A1B2", -2.0), ("A2B1", -2.0), ("A2B2", -2.0)]
            .map(|(c, v)| (c.parse().unwrap(), v)),
        4.0,
        "expected",
    )
    .unwrap();
    let same_terms = reduced.terms().eq(chsh.terms()) && reduced.bound() == chsh.bound();
    let mut agree = true;
    let mut agree_fixed_c = true;
    for idx in 0..64 {
        let s = signs(idx);
        let vals = CorrelationValues::from_signs(&s);
        let r = reduced.evaluate(&vals).unwrap();
        agree &= r == chsh.evaluate(&vals).unwrap();
        if s[2] == [-1, 1] {
            let full_slack = eq15.bound() - eq15.evaluate(&vals).unwrap();
            agree_fixed_c &= full_slack == reduced.bound() - r;
        }
    }
    let mermin = prob_corr_equivalence(
        &catalog::probability("quintit-qubit").unwrap(),
        &catalog::correlation("quintit-qubit-corr").unwrap(),
        0,
        1,
    )
    .unwrap();
    vec![
        check(format!("restriction C=(-1,+1) gives {reduced:?}"), same_terms),
        check("restricted and expected forms agree on all 64 strategies", agree),
        check("restriction leaves the slack unchanged whenever C=(-1,+1)", agree_fixed_c),
        check(
            format!(
                "five-outcome qubit reduction vs Mermin form: relation {:?}, discrepancy {:.1e}, {} strategies, bounds match {}",
                mermin.relation, mermin.max_discrepancy, mermin.strategies_checked, mermin.bounds_match
            ),
            mermin.equivalent
                && mermin.max_discrepancy == 0.0
                && mermin.strategies_checked == 64
                && mermin.bounds_match,
        ),
    ]
}

fn probe() -> Vec<Check> {
    let start = Instant::now();
    let report = violates_all_entangled_probe(PROBE_SAMPLES, PROBE_SEED, &cfg()).unwrap();
    let (idx, margin) = report.min_margin().unwrap_or((0, f64::NAN));
    vec![
        check(
            format!(
                "{} samples: {} entangled, {} violated, {} inconclusive, smallest margin {margin:.3e} (sample {idx})",
                report.samples.len(),
                report.entangled(),
                report.violated(),
                report.inconclusive()
            ),
            report.samples.len() == PROBE_SAMPLES,
        ),
        check(
            format!("counterexamples: {}", report.counterexamples().len()),
            report.counterexamples().is_empty(),
        ),
        on_time(start.elapsed(), PROBE_BUDGET),
    ]
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Vec<Check>); 10] = [
        ("classical bounds", bounds),
        ("facet certification", facets),
        ("four-outcome violation and reference table", quartit_violation),
        ("five-outcome optimized violation", quintit_violation),
        ("noise thresholds", thresholds),
        ("three-qubit maxima", qubit_maxima),
        ("sweep shapes", sweep_shapes),
        ("structural symmetries", symmetries),
        ("reductions", reductions),
        ("entangled-state probe", probe),
    ];
    let mut failed = 0;
    for (n, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let checks = run();
        let ok = checks.iter().all(|c| c.ok);
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {}: {title} ({:.1}s)",
            n + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for c in &checks {
            println!("    [{}] {}", if c.ok { "ok" } else { "FAILED" }, c.name);
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
