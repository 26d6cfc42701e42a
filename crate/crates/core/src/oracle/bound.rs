use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A multiplicity bound `l`, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(usize),
    Infinite,
}

impl Bound {
    /// `min(l, k)`: for `l ≥ k` the bound is vacuous on `k` points.
    pub fn normalized(self, k: usize) -> usize {
        match self {
            Bound::Finite(l) => l.min(k),
            Bound::Infinite => k,
        }
    }

    pub fn allows(self, m: usize) -> bool {
        match self {
            Bound::Finite(l) => m <= l,
            Bound::Infinite => true,
        }
    }
}

impl From<usize> for Bound {
    fn from(l: usize) -> Self {
        Bound::Finite(l)
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(l) => write!(f, "{l}"),
            Bound::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Bound {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Bound::Infinite),
            t => t
                .parse()
                .map(Bound::Finite)
                .map_err(|_| Error::Parse(format!("'{s}' is not a bound (a nonnegative integer or inf)"))),
        }
    }
}

impl Serialize for Bound {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Bound::Finite(l) => s.serialize_u64(*l as u64),
            Bound::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(usize),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(Bound::Finite(n)),
            Raw::S(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}
