use std::fmt::Write as _;

use super::bound::{classical_max, strategies_at};
use super::cg::{cg_dimension, cg_embed, cg_functional};
use super::rank::{affine_rank, rank};
use super::strategy::{check_alphabet, enumerate_strategies};
use crate::error::{Error, Result};
use crate::inequality::text::bell_to_text;
use crate::inequality::{BellInequality, Half};

/// Limits applied before an exhaustive facet check.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct FacetLimits {
    pub max_alphabet: usize,
}

impl Default for FacetLimits {
    fn default() -> Self {
        FacetLimits { max_alphabet: 5 }
    }
}

impl FacetLimits {
    /// Everything the strategy enumerator accepts.
    pub fn unrestricted() -> Self {
        FacetLimits {
            max_alphabet: super::MAX_ALPHABET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TightnessReport {
    pub label: String,
    pub bound: Half,
    pub classical_max: Half,
    pub is_valid: bool,
    pub is_attained: bool,
    pub saturating_count: usize,
    pub affine_rank: usize,
    pub polytope_dim: usize,
    pub is_facet: bool,
}

pub fn facet_check(ineq: &BellInequality) -> Result<TightnessReport> {
    facet_check_with(ineq, FacetLimits::default())
}

pub fn facet_check_with(ineq: &BellInequality, limits: FacetLimits) -> Result<TightnessReport> {
    let k = ineq.alphabet();
    if k > limits.max_alphabet {
        return Err(Error::ResourceGuard(format!(
            "facet check over {k} outcomes exceeds the limit of {}",
            limits.max_alphabet
        )));
    }
    let max = classical_max(ineq)?;
    let saturating = strategies_at(ineq, max.value)?;
    let points: Vec<Vec<i8>> = saturating.iter().map(|s| cg_embed(s, k)).collect();
    let dim = cg_dimension(k);
    let affine_rank = affine_rank(&points);
    debug_assert!(affine_rank <= dim);
    debug_assert!(
        cg_functional(ineq).weights.iter().all(|&w| w == 0) || affine_rank < dim,
        "saturating set of a nonconstant functional spans the whole space"
    );
    let is_valid = max.value <= ineq.bound();
    let is_attained = max.value == ineq.bound();
    Ok(TightnessReport {
        label: ineq.label().to_string(),
        bound: ineq.bound(),
        classical_max: max.value,
        is_valid,
        is_attained,
        saturating_count: saturating.len(),
        affine_rank,
        polytope_dim: dim,
        is_facet: is_valid && is_attained && affine_rank + 1 == dim,
    })
}

/// Affine rank of every deterministic vertex; equals `cg_dimension` when the
/// coordinates are minimal.
pub fn polytope_rank(alphabet: usize) -> Result<usize> {
    check_alphabet(alphabet)?;
    let vertices: Vec<Vec<i8>> = enumerate_strategies(alphabet)?
        .map(|s| cg_embed(&s, alphabet))
        .collect();
    Ok(affine_rank(&vertices))
}

/// Linear rank of the vertex set with a leading 1 column; a second,
/// homogeneous route to the same dimension (plus one).
pub fn homogeneous_rank(alphabet: usize) -> Result<usize> {
    check_alphabet(alphabet)?;
    let rows: Vec<Vec<i8>> = enumerate_strategies(alphabet)?
        .map(|s| {
            let mut v = vec![1];
            v.extend(cg_embed(&s, alphabet));
            v
        })
        .collect();
    Ok(rank(&rows))
}

/// Plain-text certificate with a fixed field order.
pub fn certificate(ineq: &BellInequality, report: &TightnessReport) -> String {
    let mut out = String::from("# facet certificate\n");
    out.push_str(&bell_to_text(ineq));
    if !out.ends_with('\n') {
        out.push('\n');
    }
    let fields: [(&str, String); 9] = [
        ("label", report.label.clone()),
        ("bound", report.bound.to_string()),
        ("classical_max", report.classical_max.to_string()),
        ("valid", report.is_valid.to_string()),
        ("attained", report.is_attained.to_string()),
        ("saturating_count", report.saturating_count.to_string()),
        ("affine_rank", report.affine_rank.to_string()),
        ("polytope_dim", report.polytope_dim.to_string()),
        ("facet", report.is_facet.to_string()),
    ];
    out.push_str("# result\n");
    for (k, v) in fields {
        let _ = writeln!(out, "{k}={v}");
    }
    out
}
