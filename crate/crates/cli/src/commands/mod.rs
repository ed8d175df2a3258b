mod catalog;
mod certify;
mod reduce;
mod sweep;
mod table1;
mod violate;

use std::fs;
use std::path::Path;

use anyhow::{Context as _, Result};
use tribell::inequality::catalog::{self as cat, Entry};
use tribell::inequality::text::parse_entry;
use tribell::optimize::OptimizationConfig;

use crate::args::{Cli, Command};
use crate::context::Context;
use crate::Status;

/// A catalog name, or failing that a file in the inequality text format.
pub fn resolve(name: &str) -> Result<Entry> {
    match cat::catalog(name) {
        Ok(entry) => Ok(entry),
        Err(err) if Path::new(name).is_file() => {
            let text = fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
            parse_entry(&text).with_context(|| format!("parsing {name} (not a catalog name: {err})"))
        }
        Err(err) => Err(err.into()),
    }
}

fn load_config(cli: &Cli) -> Result<OptimizationConfig> {
    let mut cfg = match &cli.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading config {}", path.display()))?;
            OptimizationConfig::from_toml(&text)
                .with_context(|| format!("config {}", path.display()))?
        }
        None => OptimizationConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg = cfg.with_seed(seed);
    }
    if let Some(r) = cli.restarts {
        cfg = cfg.with_restarts(r as usize);
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(cli: Cli, argv: Vec<String>) -> Result<Status> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n as usize)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let cfg = load_config(&cli)?;
    let ctx = Context::new(cli.command.name(), argv, cfg);
    match cli.command {
        Command::Catalog { form, d } => catalog::run(form, d),
        Command::Bound { name } => certify::bound(&name),
        Command::Tight {
            name,
            out,
            unsafe_large,
        } => certify::tight(&ctx, &name, out.as_deref(), unsafe_large),
        Command::Violate {
            name,
            state,
            xi,
            beta,
            settings,
            noise,
            out,
        } => violate::run(
            &ctx,
            &violate::Request {
                name: &name,
                state,
                xi,
                beta,
                settings,
                noise,
                out: out.as_deref(),
            },
        ),
        Command::Table1 { out } => table1::run(&ctx, out.as_deref()),
        Command::Sweep {
            names,
            family,
            beta,
            grid,
            plot,
            out,
        } => sweep::run(
            &ctx,
            &names,
            family,
            beta,
            grid as usize,
            plot.as_deref(),
            out.as_deref(),
        ),
        Command::ReduceCheck { self_test } => reduce::run(self_test),
    }
}
