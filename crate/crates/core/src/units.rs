use std::fmt;

use serde::{Deserialize, Serialize};

/// Logarithm base used for every returned information quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Units {
    #[default]
    Bits,
    Nats,
}

impl Units {
    /// Logarithm of `x` in these units.
    #[inline]
    pub fn log(self, x: f64) -> f64 {
        match self {
            Units::Bits => x.log2(),
            Units::Nats => x.ln(),
        }
    }

    /// Converts a value expressed in nats into these units.
    #[inline]
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Bits => nats / std::f64::consts::LN_2,
            Units::Nats => nats,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Units::Bits => "bits",
            Units::Nats => "nats",
        }
    }
}

impl fmt::Display for Units {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Units {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bits" => Ok(Units::Bits),
            "nats" => Ok(Units::Nats),
            other => Err(format!("unknown units '{other}' (expected bits or nats)")),
        }
    }
}
