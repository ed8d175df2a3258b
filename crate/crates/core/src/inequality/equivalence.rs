//! Checks that a binary-outcome probability inequality and a correlation
//! inequality are the same linear functional up to an affine change of scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::correlation::{expectations_from_joint, CorrelationInequality, CorrelationValues};
use super::{Behavior, BellInequality};
use crate::error::{Error, Result};

const AGREEMENT_TOL: f64 = 1e-10;

/// `LHS_prob = scale * LHS_corr + offset`.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct AffineRelation {
    pub scale: f64,
    pub offset: f64,
}

impl AffineRelation {
    pub fn apply(&self, corr_value: f64) -> f64 {
        self.scale * corr_value + self.offset
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub relation: AffineRelation,
    /// Largest |LHS_prob - relation(LHS_corr)| over everything checked.
    pub max_discrepancy: f64,
    /// True when the relation also maps one bound onto the other with a
    /// positive scale, so the two inequalities cut out the same set.
    pub bounds_match: bool,
    pub strategies_checked: usize,
    pub samples_checked: usize,
    /// Behavior with the largest discrepancy when not equivalent.
    pub witness: Option<Behavior>,
}

/// The 64 binary deterministic strategies, outcomes indexed `[party][setting]`.
fn binary_strategies() -> impl Iterator<Item = [[usize; 2]; 3]> {
    (0..64usize).map(|idx| {
        let bit = |k: usize| (idx >> (5 - k)) & 1;
        [[bit(0), bit(1)], [bit(2), bit(3)], [bit(4), bit(5)]]
    })
}

fn sign(x: usize) -> i8 {
    if x == 0 {
        1
    } else {
        -1
    }
}

/// Fits the affine relation on all 64 binary deterministic strategies, then
/// checks it on `samples` random mixtures of them.
pub fn prob_corr_equivalence(
    pineq: &BellInequality,
    cineq: &CorrelationInequality,
    samples: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    if pineq.alphabet() != 2 {
        return Err(Error::Invalid(format!(
            "`{}` does not have binary outcomes (alphabet {})",
            pineq.label(),
            pineq.alphabet()
        )));
    }
    let mut points = Vec::with_capacity(64);
    for outcomes in binary_strategies() {
        let behavior = Behavior::deterministic(2, &outcomes)?;
        let p = pineq.evaluate_lhs(&behavior.modular_table(pineq.d())?)?;
        let signs = outcomes.map(|xs| xs.map(sign));
        let c = cineq.evaluate(&CorrelationValues::from_signs(&signs))?;
        points.push((behavior, c, p));
    }
    let relation = least_squares(points.iter().map(|(_, c, p)| (*c, *p)));

    let mut worst: Option<(f64, Behavior)> = None;
    let mut consider = |behavior: &Behavior, c: f64, p: f64| {
        let gap = (p - relation.apply(c)).abs();
        if worst.as_ref().is_none_or(|(w, _)| gap > *w) {
            worst = Some((gap, behavior.clone()));
        }
    };
    for (b, c, p) in &points {
        consider(b, *c, *p);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut mix = Behavior::uniform(2);
        let mut mass = 0.0;
        for (b, _, _) in &points {
            let w: f64 = rng.random::<f64>().powi(4) + 1e-12;
            mass += w;
            mix = mix.mix(b, 1.0 - w / mass)?;
        }
        let p = pineq.evaluate_lhs(&mix.modular_table(pineq.d())?)?;
        let c = cineq.evaluate(&expectations_from_joint(&mix)?)?;
        consider(&mix, c, p);
    }

    let (max_discrepancy, witness) = worst.expect("64 strategies checked");
    let equivalent = max_discrepancy <= AGREEMENT_TOL && relation.scale != 0.0;
    let bounds_match = relation.scale > 0.0
        && (relation.apply(cineq.bound()) - pineq.bound().to_f64()).abs() <= AGREEMENT_TOL;
    Ok(EquivalenceReport {
        equivalent,
        relation,
        max_discrepancy,
        bounds_match,
        strategies_checked: 64,
        samples_checked: samples,
        witness: (!equivalent).then_some(witness),
    })
}

/// Largest affine discrepancy on caller-supplied behaviors, e.g. quantum ones.
pub fn affine_discrepancy(
    pineq: &BellInequality,
    cineq: &CorrelationInequality,
    relation: AffineRelation,
    behaviors: &[Behavior],
) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for b in behaviors {
        let p = pineq.evaluate_lhs(&b.modular_table(pineq.d())?)?;
        let c = cineq.evaluate(&expectations_from_joint(b)?)?;
        worst = worst.max((p - relation.apply(c)).abs());
    }
    Ok(worst)
}

fn least_squares(points: impl Iterator<Item = (f64, f64)>) -> AffineRelation {
    let pts: Vec<(f64, f64)> = points.collect();
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let scale = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    AffineRelation {
        scale,
        offset: mean_y - scale * mean_x,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::catalog;

    #[test]
    fn quartit_qubit_pair_is_equivalent() {
        let r = prob_corr_equivalence(
            &catalog::probability("quartit-qubit").unwrap(),
            &catalog::correlation("quartit-qubit-corr").unwrap(),
            50,
            1,
        )
        .unwrap();
        assert!(r.equivalent, "{r:?}");
        assert!(r.bounds_match);
        assert_eq!(r.relation, AffineRelation { scale: 2.0, offset: 6.0 });
        assert!(r.witness.is_none());
    }

    #[test]
    fn quintit_qubit_pair_is_mermin() {
        let r = prob_corr_equivalence(
            &catalog::probability("quintit-qubit").unwrap(),
            &catalog::correlation("quintit-qubit-corr").unwrap(),
            50,
            2,
        )
        .unwrap();
        assert!(r.equivalent, "{r:?}");
        assert!(r.bounds_match);
        assert_eq!(r.relation, AffineRelation { scale: 1.25, offset: 1.5 });
    }

    #[test]
    fn chsh_is_not_equivalent_and_has_witness() {
        let r = prob_corr_equivalence(
            &catalog::probability("quartit-qubit").unwrap(),
            &catalog::correlation("chsh").unwrap(),
            10,
            3,
        )
        .unwrap();
        assert!(!r.equivalent);
        assert!(r.max_discrepancy > 1.0);
        assert!(r.witness.is_some());
    }

    #[test]
    fn rejects_non_binary_alphabet() {
        assert!(prob_corr_equivalence(
            &catalog::probability("quartit").unwrap(),
            &catalog::correlation("quartit-qubit-corr").unwrap(),
            0,
            0
        )
        .is_err());
    }
}
