use std::path::Path;

use anyhow::{bail, Result};
use tribell::inequality::catalog::Entry;
use tribell::numfmt::sig12;
use tribell::optimize::sweep::write_sweep_csv;
use tribell::optimize::{sweep, xi_grid, Family, SweepRow, Target};

use super::resolve;
use crate::args::FamilyArg;
use crate::context::Context;
use crate::plot::{LinePlot, Series};
use crate::Status;

fn target(name: &str) -> Result<Target> {
    Ok(match resolve(name)? {
        Entry::Correlation(c) => Target::Correlation(c),
        Entry::Probability(p) if p.alphabet() == 2 => Target::Probability(p),
        Entry::Probability(p) => bail!(
            "`{}` has {} outcomes per measurement; sweeps run over three-qubit states",
            p.label(),
            p.alphabet()
        ),
    })
}

/// The fixed sweep schema, preceded by an `inequality` column when several
/// inequalities share one file.
fn to_csv(results: &[(String, Vec<SweepRow>)]) -> Result<Vec<u8>> {
    if let [(_, rows)] = results {
        let mut buf = Vec::new();
        write_sweep_csv(rows, &mut buf)?;
        return Ok(buf);
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["inequality", "xi", "beta", "value", "bound", "ratio", "converged"])?;
    for (name, rows) in results {
        for r in rows {
            w.write_record([
                name.clone(),
                sig12(r.xi),
                r.beta.map(sig12).unwrap_or_default(),
                sig12(r.value),
                sig12(r.bound),
                sig12(r.ratio),
                r.converged.to_string(),
            ])?;
        }
    }
    Ok(w.into_inner()?)
}

pub fn run(
    ctx: &Context,
    names: &[String],
    family: FamilyArg,
    beta: Option<f64>,
    grid: usize,
    plot: Option<&Path>,
    out: Option<&Path>,
) -> Result<Status> {
    let family = match (family, beta) {
        (FamilyArg::Ghz, None) => Family::Ghz,
        (FamilyArg::Ghz, Some(_)) => bail!("--beta applies to the W family"),
        (FamilyArg::W, Some(beta)) => Family::W { beta },
        (FamilyArg::W, None) => bail!("the W family needs --beta"),
    };
    let targets = names.iter().map(|n| target(n)).collect::<Result<Vec<_>>>()?;
    let xs = xi_grid(grid);
    let mut results = Vec::new();
    for t in &targets {
        results.push((t.label().to_string(), sweep(family, t, &xs, &ctx.cfg)?));
    }
    let mut notes = vec![format!("seed {}", ctx.cfg.seed)];
    for (name, rows) in &results {
        let peak = rows
            .iter()
            .max_by(|a, b| a.ratio.total_cmp(&b.ratio))
            .expect("nonempty grid");
        let stalled = rows.iter().filter(|r| !r.converged).count();
        notes.push(format!(
            "{name}: peak ratio {} at xi {}; {} of {} rows violate; {stalled} rows not converged",
            sig12(peak.ratio),
            sig12(peak.xi),
            rows.iter().filter(|r| r.ratio > 1.0).count(),
            rows.len()
        ));
    }
    let csv = to_csv(&results)?;
    match out {
        Some(path) => {
            ctx.write_artifact(path, &csv)?;
            notes.push(format!("table written to {}", path.display()));
        }
        None => print!("{}", String::from_utf8(csv)?),
    }
    if let Some(path) = plot {
        let series: Vec<Series> = results
            .iter()
            .map(|(name, rows)| Series {
                label: name.clone(),
                points: rows.iter().map(|r| (r.xi, r.ratio)).collect(),
            })
            .collect();
        let title = match family {
            Family::Ghz => "generalized GHZ states".to_string(),
            Family::W { beta } => format!("generalized W states, beta = {}", sig12(beta)),
        };
        let svg = LinePlot {
            title: &title,
            x_label: "xi",
            y_label: "quantum value / classical bound",
            guide: Some(1.0),
            series: &series,
        }
        .to_svg();
        ctx.write_artifact(path, svg.as_bytes())?;
        notes.push(format!("plot written to {}", path.display()));
    }
    for n in notes {
        if out.is_some() {
            println!("{n}");
        } else {
            eprintln!("{n}");
        }
    }
    Ok(Status::Success)
}
