use std::path::Path;

use anyhow::{bail, Result};
use tribell::inequality::catalog::Entry;
use tribell::local::{certificate, classical_max, classical_max_correlation, facet_check_with, FacetLimits};

use super::resolve;
use crate::context::Context;
use crate::Status;

pub fn bound(name: &str) -> Result<Status> {
    match resolve(name)? {
        Entry::Probability(ineq) => {
            let m = classical_max(&ineq)?;
            println!("{}: classical max {} (stated bound {})", ineq.label(), m.value, ineq.bound());
            println!("maximizing strategies: {}", m.maximizers);
            println!("first maximizer: {}", m.witness);
            if m.value > ineq.bound() {
                println!("check failed: the stated bound is exceeded by the strategy above");
                return Ok(Status::CheckFailed);
            }
        }
        Entry::Correlation(c) => {
            let (v, signs) = classical_max_correlation(&c)?;
            println!("{}: classical max {v} (stated bound {})", c.label(), c.bound());
            println!("first maximizer (A1 A2 B1 B2 C1 C2): {signs:?}");
            if v > c.bound() {
                println!("check failed: the stated bound is exceeded by the assignment above");
                return Ok(Status::CheckFailed);
            }
        }
    }
    Ok(Status::Success)
}

pub fn tight(ctx: &Context, name: &str, out: Option<&Path>, unsafe_large: bool) -> Result<Status> {
    let Entry::Probability(ineq) = resolve(name)? else {
        bail!("`{name}` is a correlation inequality; facet checks need the probability form");
    };
    let limits = if unsafe_large {
        FacetLimits::unrestricted()
    } else {
        FacetLimits::default()
    };
    let r = facet_check_with(&ineq, limits)?;
    println!("{}: classical max {} (stated bound {})", r.label, r.classical_max, r.bound);
    println!("saturating strategies: {}", r.saturating_count);
    println!("affine rank: {} (facet needs {})", r.affine_rank, r.polytope_dim.saturating_sub(1));
    println!("facet: {}", r.is_facet);
    if let Some(path) = out {
        ctx.write_artifact(path, certificate(&ineq, &r).as_bytes())?;
        println!("certificate written to {}", path.display());
    }
    if !r.is_valid {
        println!("check failed: some strategy exceeds the stated bound");
        return Ok(Status::CheckFailed);
    }
    if !r.is_facet {
        let reason = if r.is_attained {
            format!("rank deficit {}", (r.polytope_dim - 1).saturating_sub(r.affine_rank))
        } else {
            "the bound is never attained".to_string()
        };
        println!("check failed: not a facet ({reason})");
        return Ok(Status::CheckFailed);
    }
    Ok(Status::Success)
}
