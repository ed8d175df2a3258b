use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};

/// An exact integer or half-integer, stored as twice its value.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub const fn from_twice(twice: i64) -> Half {
        Half(twice)
    }

    pub const fn from_int(v: i64) -> Half {
        Half(2 * v)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            let sign = if self.0 < 0 { "-" } else { "" };
            write!(f, "{sign}{}.5", self.0.abs() / 2)
        }
    }
}

impl FromStr for Half {
    type Err = Error;

    fn from_str(s: &str) -> Result<Half> {
        let bad = || Error::Invalid(format!("`{s}` is not an integer or half-integer"));
        if let Some(whole) = s.strip_suffix(".5") {
            let (negative, digits) = match whole.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, whole),
            };
            if !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            let magnitude: i64 = digits.parse().map_err(|_| bad())?;
            let twice = 2 * magnitude + 1;
            Ok(Half(if negative { -twice } else { twice }))
        } else {
            s.parse::<i64>().map(Half::from_int).map_err(|_| bad())
        }
    }
}
