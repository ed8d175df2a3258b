//! The named inequalities this crate knows about.
//!
//! Probability-form rows are listed in [`Triple::ALL`] order:
//! 111, 112, 121, 122, 211, 212, 221, 222.

use super::correlation::{CorrelationInequality, Correlator};
use super::{BellInequality, Half, Triple};
use crate::error::{Error, Result};

/// Per-triple offsets and divisor that turn `quartit` into its bound-zero form.
pub const QUARTIT_ZERO_BOUND_DELTAS: [i64; 8] = [1, 3, 3, 1, 3, 1, 1, -1];
pub const QUARTIT_ZERO_BOUND_DIVISOR: i64 = 2;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Form {
    Probability,
    Correlation,
}

impl Form {
    pub fn as_str(self) -> &'static str {
        match self {
            Form::Probability => "probability",
            Form::Correlation => "correlation",
        }
    }
}

/// A catalog entry.
#[derive(Clone, Debug, PartialEq)]
pub enum Entry {
    Probability(BellInequality),
    Correlation(CorrelationInequality),
}

impl Entry {
    pub fn form(&self) -> Form {
        match self {
            Entry::Probability(_) => Form::Probability,
            Entry::Correlation(_) => Form::Correlation,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Entry::Probability(p) => p.label(),
            Entry::Correlation(c) => c.label(),
        }
    }

    /// Residue modulus for probability entries, 2 for correlation entries.
    pub fn d(&self) -> usize {
        match self {
            Entry::Probability(p) => p.d(),
            Entry::Correlation(_) => 2,
        }
    }

    pub fn bound_string(&self) -> String {
        match self {
            Entry::Probability(p) => p.bound().to_string(),
            Entry::Correlation(c) => c.bound().to_string(),
        }
    }
}

/// Name, form and a short description of each entry.
pub struct Info {
    pub name: &'static str,
    pub form: Form,
    pub description: &'static str,
}

pub const INFO: &[Info] = &[
    Info {
        name: "mermin-corr",
        form: Form::Correlation,
        description: "Mermin three-qubit inequality, correlation form",
    },
    Info {
        name: "mermin-prob",
        form: Form::Probability,
        description: "Mermin three-qubit inequality, modular probability form",
    },
    Info {
        name: "qutrit",
        form: Form::Probability,
        description: "three-qutrit coincidence inequality",
    },
    Info {
        name: "quartit",
        form: Form::Probability,
        description: "three four-level systems",
    },
    Info {
        name: "quintit",
        form: Form::Probability,
        description: "three five-level systems",
    },
    Info {
        name: "quartit-qubit",
        form: Form::Probability,
        description: "binary-outcome reduction of quartit (sums mod 4)",
    },
    Info {
        name: "quartit-qubit-corr",
        form: Form::Correlation,
        description: "quartit-qubit in correlation form",
    },
    Info {
        name: "qutrit-qubit-q",
        form: Form::Correlation,
        description: "qubit inequality reduced from qutrit, normalized to bound 1",
    },
    Info {
        name: "quartit-qubit-q",
        form: Form::Correlation,
        description: "quartit-qubit-corr normalized to bound 1",
    },
    Info {
        name: "quintit-qubit",
        form: Form::Probability,
        description: "binary-outcome reduction of quintit (sums mod 5)",
    },
    Info {
        name: "quintit-qubit-corr",
        form: Form::Correlation,
        description: "quintit-qubit in correlation form (a Mermin inequality)",
    },
    Info {
        name: "chsh",
        form: Form::Correlation,
        description: "CHSH two-party inequality",
    },
];

pub fn names() -> Vec<&'static str> {
    INFO.iter().map(|i| i.name).collect()
}

fn unknown(name: &str) -> Error {
    Error::UnknownInequality {
        name: name.to_string(),
        valid: names(),
    }
}

/// Looks up an entry by name.
pub fn catalog(name: &str) -> Result<Entry> {
    match name {
        "mermin-prob" | "qutrit" | "quartit" | "quintit" | "quartit-qubit" | "quintit-qubit" => {
            probability(name).map(Entry::Probability)
        }
        "mermin-corr" | "quartit-qubit-corr" | "qutrit-qubit-q" | "quartit-qubit-q"
        | "quintit-qubit-corr" | "chsh" => correlation(name).map(Entry::Correlation),
        _ => Err(unknown(name)),
    }
}

/// Rows for the symmetric layout shared by the qudit inequalities: one row for
/// 111, one shared by the single-2 triples, one shared by the double-2 triples,
/// one for 222.
fn symmetric_rows(first: &[i64], one_two: &[i64], two_twos: &[i64], last: &[i64]) -> Vec<Vec<i64>> {
    Triple::ALL
        .iter()
        .map(|t| match t.0.iter().filter(|&&s| s == 2).count() {
            0 => first.to_vec(),
            1 => one_two.to_vec(),
            2 => two_twos.to_vec(),
            _ => last.to_vec(),
        })
        .collect()
}

pub fn probability(name: &str) -> Result<BellInequality> {
    let (d, alphabet, rows, bound) = match name {
        "mermin-prob" => (
            2,
            2,
            symmetric_rows(&[0, 0], &[1, -1], &[0, 0], &[-1, 1]),
            2,
        ),
        "qutrit" => (
            3,
            3,
            symmetric_rows(&[-1, -1, 2], &[1, -2, 1], &[2, -1, -1], &[-2, -2, 4]),
            6,
        ),
        "quartit" => (
            4,
            4,
            symmetric_rows(&[-5, 1, 3, 1], &[3, -7, 3, 1], &[3, 1, -5, 1], &[-1, -3, -1, 5]),
            12,
        ),
        "quintit" => (
            5,
            5,
            symmetric_rows(
                &[-2, 1, 0, 0, 1],
                &[1, 0, -2, 0, 1],
                &[1, 0, 0, 1, -2],
                &[0, -2, 0, 1, 1],
            ),
            4,
        ),
        "quartit-qubit" => (
            4,
            2,
            symmetric_rows(&[3, 1, -5, 1], &[3, 1, 3, -7], &[-5, 1, 3, 1], &[-1, 5, -1, -3]),
            12,
        ),
        "quintit-qubit" => (
            5,
            2,
            symmetric_rows(
                &[0, 1, -2, 1, 0],
                &[0, 1, 1, 0, 0],
                &[1, -2, 1, 0, 0],
                &[1, 1, 0, -2, 0],
            ),
            4,
        ),
        _ => return Err(unknown(name)),
    };
    let twice: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|c| 2 * c).collect())
        .collect();
    BellInequality::from_twice_rows(d, alphabet, &twice, Half::from_int(bound), name)
}

/// The bound-zero rewriting of `quartit`.
pub fn quartit_zero_bound() -> BellInequality {
    probability("quartit")
        .and_then(|q| q.reform(&QUARTIT_ZERO_BOUND_DELTAS, QUARTIT_ZERO_BOUND_DIVISOR))
        .expect("quartit reform is exact")
}

fn corr_terms(spec: &[(&str, f64)]) -> Vec<(Correlator, f64)> {
    spec.iter()
        .map(|(c, v)| (c.parse().expect("catalog correlator"), *v))
        .collect()
}

const QUARTIT_QUBIT_CORR: &[(&str, f64)] = &[
    ("A1B1C1", -1.0),
    ("A1B1C2", 1.0),
    ("A1B2C1", 1.0),
    ("A2B1C1", 1.0),
    ("A2B2C2", -1.0),
    ("A1B2", -1.0),
    ("A2B1", -1.0),
    ("A2B2", -1.0),
    ("A1C2", -1.0),
    ("A2C1", -1.0),
    ("A2C2", -1.0),
    ("B1C2", -1.0),
    ("B2C1", -1.0),
    ("B2C2", -1.0),
    ("A1", 1.0),
    ("B1", 1.0),
    ("C1", 1.0),
];

const QUTRIT_QUBIT_BRACKET: &[(&str, f64)] = &[
    ("A1B1C1", 1.0),
    ("A1B2C2", -1.0),
    ("A2B1C2", -1.0),
    ("A2B2C1", -1.0),
    ("A2B2C2", 2.0),
    ("A1B1", -1.0),
    ("A1B2", -1.0),
    ("A2B1", -1.0),
    ("A2B2", -1.0),
    ("A1C1", 1.0),
    ("A1C2", 1.0),
    ("A2C1", 1.0),
    ("A2C2", 1.0),
    ("B1C1", 1.0),
    ("B1C2", 1.0),
    ("B2C1", 1.0),
    ("B2C2", 1.0),
];

pub fn correlation(name: &str) -> Result<CorrelationInequality> {
    fn scaled(spec: &[(&'static str, f64)], factor: f64) -> Vec<(&'static str, f64)> {
        spec.iter().map(|&(c, v)| (c, v * factor)).collect()
    }
    let (terms, bound) = match name {
        "mermin-corr" => (
            corr_terms(&[("A1B1C2", 1.0), ("A1B2C1", 1.0), ("A2B1C1", 1.0), ("A2B2C2", -1.0)]),
            2.0,
        ),
        "quartit-qubit-corr" => (corr_terms(QUARTIT_QUBIT_CORR), 3.0),
        "qutrit-qubit-q" => (corr_terms(&scaled(QUTRIT_QUBIT_BRACKET, 0.25)), 1.0),
        "quartit-qubit-q" => (corr_terms(&scaled(QUARTIT_QUBIT_CORR, 1.0 / 3.0)), 1.0),
        "quintit-qubit-corr" => (
            corr_terms(&[("A1B1C1", -1.0), ("A1B2C2", 1.0), ("A2B1C2", 1.0), ("A2B2C1", 1.0)]),
            2.0,
        ),
        "chsh" => (
            corr_terms(&[("A1B1", 1.0), ("A1B2", 1.0), ("A2B1", 1.0), ("A2B2", -1.0)]),
            2.0,
        ),
        _ => return Err(unknown(name)),
    };
    CorrelationInequality::new(terms, bound, name)
}

/// Every probability-form entry.
pub fn all_probability() -> Vec<BellInequality> {
    INFO.iter()
        .filter(|i| i.form == Form::Probability)
        .map(|i| probability(i.name).expect("catalog entry"))
        .collect()
}

/// Every correlation-form entry.
pub fn all_correlation() -> Vec<CorrelationInequality> {
    INFO.iter()
        .filter(|i| i.form == Form::Correlation)
        .map(|i| correlation(i.name).expect("catalog entry"))
        .collect()
}
