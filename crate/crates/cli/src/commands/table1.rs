use std::path::Path;

use anyhow::Result;
use tribell::inequality::catalog;
use tribell::inequality::Triple;
use tribell::numfmt::sig12;
use tribell::optimize::{lhs_at, reference_settings_d4, QUARTIT_REFERENCE_TABLE};
use tribell::quantum::{quantum_table, PureState};

use crate::context::Context;
use crate::Status;

const TOLERANCE: f64 = 1e-6;

pub fn run(ctx: &Context, out: Option<&Path>) -> Result<Status> {
    let ghz = PureState::ghz(4)?;
    let settings = reference_settings_d4();
    let table = quantum_table(&ghz, &settings)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["setting", "residue", "computed", "reference", "delta"])?;
    let mut worst = (0.0f64, String::new());
    for (idx, row) in QUARTIT_REFERENCE_TABLE.iter().enumerate() {
        let t = Triple::from_index(idx);
        for (r, &(num, den)) in row.iter().enumerate() {
            let got = table.get(t, r);
            let delta = got - num as f64 / den as f64;
            if delta.abs() > worst.0 {
                worst = (delta.abs(), format!("{t} r={r}"));
            }
            let reference = if num == 0 { "0".to_string() } else { format!("{num}/{den}") };
            w.write_record([t.to_string(), r.to_string(), sig12(got), reference, sig12(delta)])?;
        }
    }
    let csv = w.into_inner()?;
    let lhs = lhs_at(&catalog::probability("quartit")?, &ghz, &settings)?;
    let summary = format!(
        "largest |delta| {:.3e} at {} (tolerance {TOLERANCE:e}); lhs {}",
        worst.0,
        if worst.1.is_empty() { "-" } else { &worst.1 },
        sig12(lhs)
    );
    match out {
        Some(path) => {
            ctx.write_artifact(path, &csv)?;
            println!("{summary}");
            println!("table written to {}", path.display());
        }
        None => {
            print!("{}", String::from_utf8(csv)?);
            eprintln!("{summary}");
        }
    }
    if worst.0 < TOLERANCE {
        Ok(Status::Success)
    } else {
        println!("check failed: entry {} differs by {:.3e}", worst.1, worst.0);
        Ok(Status::CheckFailed)
    }
}
