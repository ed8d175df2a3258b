//! Plain-text key-value records for states and settings.
//!
//! ```text
//! state d=2
//! 0 0 0 = 0.7071067811865476 0
//! 1 1 1 = 0.7071067811865476 0
//!
//! phases d=4
//! A1 = 0 0.6154797086703874 -0.4317180464262005 1.0471975511965976
//! ...
//!
//! observables
//! A1 = 1 0 0
//! ...
//! ```
//!
//! Numbers use the shortest representation that parses back to the same
//! `f64`, so records round-trip bit for bit. Blank lines and `#` comments are
//! ignored. Only nonzero amplitudes are listed.

use std::fmt::Write as _;

use num_complex::Complex64;

use super::multiport::PhaseSettings;
use super::qubit::{QubitObservable, QubitSettings};
use super::state::PureState;
use crate::error::{parse_err, Result};
use crate::inequality::Party;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn floats(line: usize, s: &str) -> Result<Vec<f64>> {
    s.split_whitespace()
        .map(|x| x.parse::<f64>().map_err(|_| parse_err(line, format!("bad number `{x}`"))))
        .collect()
}

fn header_d(line: usize, head: &str, keyword: &str) -> Result<usize> {
    let rest = head
        .strip_prefix(keyword)
        .ok_or_else(|| parse_err(line, format!("expected `{keyword} d=<d>`")))?;
    rest.trim()
        .strip_prefix("d=")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| parse_err(line, "missing or malformed d=<d>"))
}

/// Splits `KEY = values` and parses the party-setting key such as `B2`.
fn slot(line: usize, l: &str) -> Result<(Party, u8, &str)> {
    let (key, rest) = l
        .split_once('=')
        .ok_or_else(|| parse_err(line, "expected `<party><setting> = ...`"))?;
    let mut chars = key.trim().chars();
    let party = match chars.next() {
        Some('A') => Party::A,
        Some('B') => Party::B,
        Some('C') => Party::C,
        _ => return Err(parse_err(line, format!("bad party in `{}`", key.trim()))),
    };
    let setting = match (chars.next(), chars.next()) {
        (Some('1'), None) => 1,
        (Some('2'), None) => 2,
        _ => return Err(parse_err(line, format!("bad setting in `{}`", key.trim()))),
    };
    Ok((party, setting, rest))
}

pub fn state_to_text(state: &PureState) -> String {
    let d = state.d();
    let mut out = format!("state d={d}\n");
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                let z = state.amplitude(a, b, c);
                if z != Complex64::ZERO {
                    let _ = writeln!(out, "{a} {b} {c} = {} {}", z.re, z.im);
                }
            }
        }
    }
    out
}

pub fn parse_state(text: &str) -> Result<PureState> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| parse_err(1, "empty state record"))?;
    let d = header_d(n, head, "state")?;
    let mut amps = vec![Complex64::ZERO; d.pow(3)];
    for (n, l) in lines {
        let (label, value) = l
            .split_once('=')
            .ok_or_else(|| parse_err(n, "expected `a b c = re im`"))?;
        let idx: Vec<usize> = label
            .split_whitespace()
            .map(|x| x.parse::<usize>().map_err(|_| parse_err(n, format!("bad index `{x}`"))))
            .collect::<Result<_>>()?;
        if idx.len() != 3 || idx.iter().any(|&x| x >= d) {
            return Err(parse_err(n, format!("basis label `{}` invalid for d={d}", label.trim())));
        }
        let v = floats(n, value)?;
        if v.len() != 2 {
            return Err(parse_err(n, "expected real and imaginary parts"));
        }
        amps[(idx[0] * d + idx[1]) * d + idx[2]] = Complex64::new(v[0], v[1]);
    }
    PureState::new(d, amps).map_err(|e| parse_err(n, e.to_string()))
}

pub fn phases_to_text(settings: &PhaseSettings) -> String {
    let mut out = format!("phases d={}\n", settings.d());
    for p in Party::ALL {
        for s in 1..=2u8 {
            let v: Vec<String> = settings.get(p, s).iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{p}{s} = {}", v.join(" "));
        }
    }
    out
}

pub fn parse_phases(text: &str) -> Result<PhaseSettings> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| parse_err(1, "empty phases record"))?;
    let d = header_d(n, head, "phases")?;
    let mut slots: [[Option<Vec<f64>>; 2]; 3] = Default::default();
    for (n, l) in lines {
        let (p, s, rest) = slot(n, l)?;
        let v = floats(n, rest)?;
        if v.len() != d {
            return Err(parse_err(n, format!("expected {d} phases, got {}", v.len())));
        }
        let cell = &mut slots[p.index()][usize::from(s - 1)];
        if cell.replace(v).is_some() {
            return Err(parse_err(n, format!("duplicate entry {p}{s}")));
        }
    }
    let mut missing = Vec::new();
    for p in Party::ALL {
        for s in 1..=2u8 {
            if slots[p.index()][usize::from(s - 1)].is_none() {
                missing.push(format!("{p}{s}"));
            }
        }
    }
    if !missing.is_empty() {
        return Err(parse_err(n, format!("missing entries {}", missing.join(", "))));
    }
    let phases = slots.map(|pair| pair.map(|v| v.expect("checked")));
    PhaseSettings::new(d, phases)
}

pub fn observables_to_text(settings: &QubitSettings) -> String {
    let mut out = String::from("observables\n");
    for p in Party::ALL {
        for s in 1..=2u8 {
            let [x, y, z] = settings.get(p, s).bloch();
            let _ = writeln!(out, "{p}{s} = {x} {y} {z}");
        }
    }
    out
}

pub fn parse_observables(text: &str) -> Result<QubitSettings> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "observables")) => {}
        Some((n, _)) => return Err(parse_err(n, "expected `observables` header")),
        None => return Err(parse_err(1, "empty observables record")),
    }
    let mut slots: [[Option<QubitObservable>; 2]; 3] = Default::default();
    let mut last = 1;
    for (n, l) in lines {
        last = n;
        let (p, s, rest) = slot(n, l)?;
        let v = floats(n, rest)?;
        let [x, y, z] = v[..] else {
            return Err(parse_err(n, "expected three Bloch components"));
        };
        let o = QubitObservable::new([x, y, z]).map_err(|e| parse_err(n, e.to_string()))?;
        if slots[p.index()][usize::from(s - 1)].replace(o).is_some() {
            return Err(parse_err(n, format!("duplicate entry {p}{s}")));
        }
    }
    if slots.iter().flatten().any(Option::is_none) {
        return Err(parse_err(last, "all six observables are required"));
    }
    Ok(QubitSettings {
        obs: slots.map(|pair| pair.map(|o| o.expect("checked"))),
    })
}
