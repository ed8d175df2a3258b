use anyhow::Result;
use tribell::inequality::catalog;
use tribell::inequality::correlation::{CorrelationInequality, CorrelationValues};
use tribell::inequality::equivalence::{prob_corr_equivalence, EquivalenceReport};
use tribell::inequality::{Behavior, BellInequality, Party, Triple};
use tribell::local::classical_max_correlation;

use crate::Status;

const MIXTURE_SAMPLES: usize = 200;
const MIXTURE_SEED: u64 = 7;

fn signs(idx: usize) -> [[i8; 2]; 3] {
    let s = |k: usize| if (idx >> (5 - k)) & 1 == 0 { 1 } else { -1 };
    [[s(0), s(1)], [s(2), s(3)], [s(4), s(5)]]
}

/// Fixing `C1 = -1, C2 = +1` in the quartit-derived qubit inequality must
/// leave twice the CHSH expression `A1B1 - A1B2 - A2B1 - A2B2 <= 2`.
fn chsh_reduction() -> Result<bool> {
    let full = catalog::correlation("quartit-qubit-corr")?;
    let reduced = full.restrict_party_deterministic(Party::C, [-1, 1])?;
    let expected = CorrelationInequality::new(
        [("A1B1", 2.0), ("A1B2", -2.0), ("A2B1", -2.0), ("A2B2", -2.0)]
            .map(|(c, v)| (c.parse().expect("correlator"), v)),
        4.0,
        "chsh-times-two",
    )?;
    let mut witness = None;
    for idx in 0..64 {
        let vals = CorrelationValues::from_signs(&signs(idx));
        let r = reduced.evaluate(&vals)?;
        let e = expected.evaluate(&vals)?;
        if r != e {
            witness = Some((signs(idx), r, e));
            break;
        }
    }
    let (max, _) = classical_max_correlation(&reduced)?;
    let ok = witness.is_none() && reduced.bound() == expected.bound() && max == reduced.bound();
    println!(
        "chsh reduction: {} (restricted classical max {max}, bound {})",
        if ok { "pass" } else { "FAIL" },
        reduced.bound()
    );
    if let Some((s, r, e)) = witness {
        println!("  witness: signs {s:?} give {r}, expected {e}");
    }
    Ok(ok)
}

fn describe(b: &Behavior) -> String {
    Triple::ALL
        .iter()
        .map(|&t| {
            let (idx, _) = b
                .block(t)
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.total_cmp(y.1))
                .expect("nonempty block");
            format!("{t}:{}{}{}", idx >> 2, (idx >> 1) & 1, idx & 1)
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn equivalence(label: &str, p: &BellInequality, c: &CorrelationInequality) -> Result<bool> {
    let exact: EquivalenceReport = prob_corr_equivalence(p, c, 0, MIXTURE_SEED)?;
    let mixed = prob_corr_equivalence(p, c, MIXTURE_SAMPLES, MIXTURE_SEED)?;
    let ok = exact.equivalent
        && exact.bounds_match
        && exact.max_discrepancy == 0.0
        && exact.strategies_checked == 64
        && mixed.equivalent;
    println!(
        "{label}: {} (prob = {} * corr + {}, {} strategies exact, {} mixtures within {:.1e})",
        if ok { "pass" } else { "FAIL" },
        exact.relation.scale,
        exact.relation.offset,
        exact.strategies_checked,
        mixed.samples_checked,
        mixed.max_discrepancy
    );
    if !ok {
        if let Some(w) = exact.witness.as_ref().or(mixed.witness.as_ref()) {
            println!("  witness outcomes per setting: {}", describe(w));
        }
        println!(
            "  largest discrepancy {:.3e}; bounds match: {}",
            exact.max_discrepancy.max(mixed.max_discrepancy),
            exact.bounds_match
        );
    }
    Ok(ok)
}

/// A copy of `ineq` with the coefficient of residue 1 in row 111 raised by one.
fn corrupted(ineq: &BellInequality) -> Result<BellInequality> {
    let mut rows: Vec<Vec<i64>> = Triple::ALL.iter().map(|&t| ineq.twice_row(t).to_vec()).collect();
    rows[0][1] += 2;
    Ok(BellInequality::from_twice_rows(
        ineq.d(),
        ineq.alphabet(),
        &rows,
        ineq.bound(),
        &format!("{}-corrupted", ineq.label()),
    )?)
}

pub fn run(self_test: bool) -> Result<Status> {
    let mut ok = chsh_reduction()?;
    let mut five = catalog::probability("quintit-qubit")?;
    if self_test {
        println!("self-test: one coefficient of quintit-qubit is corrupted; the check below must fail");
        five = corrupted(&five)?;
    }
    ok &= equivalence(
        "quintit-qubit vs quintit-qubit-corr",
        &five,
        &catalog::correlation("quintit-qubit-corr")?,
    )?;
    ok &= equivalence(
        "quartit-qubit vs quartit-qubit-corr",
        &catalog::probability("quartit-qubit")?,
        &catalog::correlation("quartit-qubit-corr")?,
    )?;
    Ok(if ok { Status::Success } else { Status::CheckFailed })
}
