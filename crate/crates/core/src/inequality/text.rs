//! Plain-text serialization of inequalities.
//!
//! Probability form:
//!
//! ```text
//! bell d=4 bound=12 label=quartit
//! 111 -5 1 3 1
//! 112 3 -7 3 1
//! ...                      (one line per setting triple, 111 .. 222)
//! ```
//!
//! An `outcomes=<k>` field follows `d=` when the local outcome alphabet is
//! smaller than `d`. Coefficients and bound are integers or half-integers
//! written as `x.5`.
//!
//! Correlation form:
//!
//! ```text
//! corr bound=3 label=quartit-qubit-corr
//! A1B1C1:-1
//! A1:1
//! ```
//!
//! Real numbers use the shortest representation that parses back to the same
//! `f64`, so both formats round-trip bit-exactly.

use super::catalog::Entry;
use super::correlation::{CorrelationInequality, Correlator};
use super::{BellInequality, Half, Triple};
use crate::error::{parse_err, Error, Result};

pub fn bell_to_text(ineq: &BellInequality) -> String {
    let mut out = format!("bell d={}", ineq.d());
    if ineq.alphabet() != ineq.d() {
        out.push_str(&format!(" outcomes={}", ineq.alphabet()));
    }
    out.push_str(&format!(" bound={} label={}\n", ineq.bound(), ineq.label()));
    for t in Triple::ALL {
        out.push_str(&t.to_string());
        for r in 0..ineq.d() {
            out.push_str(&format!(" {}", ineq.coeff(t, r)));
        }
        out.push('\n');
    }
    out
}

pub fn corr_to_text(ineq: &CorrelationInequality) -> String {
    let mut out = format!("corr bound={} label={}\n", ineq.bound(), ineq.label());
    for (c, v) in ineq.terms() {
        out.push_str(&format!("{c}:{v}\n"));
    }
    out
}

pub fn entry_to_text(entry: &Entry) -> String {
    match entry {
        Entry::Probability(p) => bell_to_text(p),
        Entry::Correlation(c) => corr_to_text(c),
    }
}

/// Splits `key=value` header fields, checking their order.
fn header_fields<'a>(line: &'a str, keys: &[&str], lineno: usize) -> Result<Vec<(&'a str, &'a str)>> {
    let mut fields = Vec::new();
    for tok in line.split_whitespace().skip(1) {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(lineno, format!("expected key=value, got `{tok}`")))?;
        if !keys.contains(&k) {
            return Err(parse_err(lineno, format!("unknown header field `{k}`")));
        }
        fields.push((k, v));
    }
    Ok(fields)
}

fn field<'a>(fields: &[(&'a str, &'a str)], key: &str, lineno: usize) -> Result<&'a str> {
    fields
        .iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| parse_err(lineno, format!("missing `{key}=`")))
}

pub fn parse_bell(text: &str) -> Result<BellInequality> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    if !header.starts_with("bell ") {
        return Err(parse_err(1, "header must start with `bell`"));
    }
    let fields = header_fields(header, &["d", "outcomes", "bound", "label"], 1)?;
    let d: usize = field(&fields, "d", 1)?
        .parse()
        .map_err(|_| parse_err(1, "bad d"))?;
    let alphabet = match fields.iter().find(|(k, _)| *k == "outcomes") {
        Some((_, v)) => v.parse().map_err(|_| parse_err(1, "bad outcomes"))?,
        None => d,
    };
    let bound: Half = field(&fields, "bound", 1)?
        .parse()
        .map_err(|e: Error| parse_err(1, e.to_string()))?;
    let label = field(&fields, "label", 1)?;

    let mut rows = Vec::with_capacity(8);
    for t in Triple::ALL {
        let (idx, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("missing row {t}")))?;
        let lineno = idx + 1;
        let mut toks = line.split_whitespace();
        if toks.next() != Some(t.to_string().as_str()) {
            return Err(parse_err(lineno, format!("expected row {t}")));
        }
        let row = toks
            .map(|tok| tok.parse::<Half>().map(Half::twice))
            .collect::<Result<Vec<i64>>>()
            .map_err(|e| parse_err(lineno, e.to_string()))?;
        rows.push(row);
    }
    if let Some((idx, _)) = lines.next() {
        return Err(parse_err(idx + 1, "trailing content"));
    }
    BellInequality::from_twice_rows(d, alphabet, &rows, bound, label)
}

pub fn parse_corr(text: &str) -> Result<CorrelationInequality> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    if !header.starts_with("corr ") {
        return Err(parse_err(1, "header must start with `corr`"));
    }
    let fields = header_fields(header, &["bound", "label"], 1)?;
    let bound: f64 = field(&fields, "bound", 1)?
        .parse()
        .map_err(|_| parse_err(1, "bad bound"))?;
    let label = field(&fields, "label", 1)?;
    let mut terms = Vec::new();
    for (idx, line) in lines {
        let (c, v) = line
            .trim()
            .split_once(':')
            .ok_or_else(|| parse_err(idx + 1, "expected term:coefficient"))?;
        let c: Correlator = c.parse().map_err(|e: Error| parse_err(idx + 1, e.to_string()))?;
        let v: f64 = v.parse().map_err(|_| parse_err(idx + 1, "bad coefficient"))?;
        terms.push((c, v));
    }
    CorrelationInequality::new(terms, bound, label)
}

/// Parses either format, dispatching on the header keyword.
pub fn parse_entry(text: &str) -> Result<Entry> {
    let first = text.trim_start();
    if first.starts_with("bell ") {
        parse_bell(text).map(Entry::Probability)
    } else if first.starts_with("corr ") {
        parse_corr(text).map(Entry::Correlation)
    } else {
        Err(parse_err(1, "header must start with `bell` or `corr`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequality::catalog;
    use proptest::prelude::*;

    #[test]
    fn quartit_text_layout() {
        let text = bell_to_text(&catalog::probability("quartit").unwrap());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "bell d=4 bound=12 label=quartit");
        assert_eq!(lines[1], "111 -5 1 3 1");
        assert_eq!(lines[8], "222 -1 -3 -1 5");
        assert_eq!(lines.len(), 9);
    }

    #[test]
    fn reduced_alphabet_is_written() {
        let text = bell_to_text(&catalog::probability("quintit-qubit").unwrap());
        assert!(text.starts_with("bell d=5 outcomes=2 bound=4 label=quintit-qubit\n"));
    }

    #[test]
    fn catalog_round_trips_bit_exactly() {
        for info in catalog::INFO {
            let entry = catalog::catalog(info.name).unwrap();
            let text = entry_to_text(&entry);
            let back = parse_entry(&text).unwrap();
            assert_eq!(back, entry, "{}", info.name);
            assert_eq!(entry_to_text(&back), text);
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let good = bell_to_text(&catalog::probability("qutrit").unwrap());
        let broken = good.replace("121 1 -2 1", "121 1 x 1");
        match parse_bell(&broken) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_bell(&good.replace("112", "211")).is_err());
        assert!(parse_bell(&format!("{good}extra\n")).is_err());
        assert!(parse_corr("corr bound=2 label=x\nA1B1\n").is_err());
        assert!(parse_entry("hello").is_err());
    }

    proptest! {
        #[test]
        fn random_bell_round_trip(
            d in 2usize..6,
            seed in prop::collection::vec(-40i64..40, 40),
            bound in -50i64..50,
        ) {
            let rows: Vec<Vec<i64>> = (0..8).map(|t| (0..d).map(|r| seed[t * 5 + r]).collect()).collect();
            let ineq = BellInequality::from_twice_rows(d, d, &rows, Half::from_twice(bound), "rand").unwrap();
            let text = bell_to_text(&ineq);
            prop_assert_eq!(parse_bell(&text).unwrap(), ineq);
        }

        #[test]
        fn random_corr_round_trip(
            coeffs in prop::collection::vec(-10.0f64..10.0, 26),
            bound in -10.0f64..10.0,
        ) {
            let ineq = CorrelationInequality::new(
                Correlator::all().zip(coeffs.iter().copied()),
                bound,
                "rand",
            ).unwrap();
            let text = corr_to_text(&ineq);
            let back = parse_corr(&text).unwrap();
            prop_assert_eq!(corr_to_text(&back), text);
            prop_assert_eq!(back, ineq);
        }
    }
}
