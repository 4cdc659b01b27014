//! Symbolic operator algebra over fermionic, bosonic, qubit and quadrature
//! terms.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

mod normal;
mod operator;
mod parse;
mod term;

pub use normal::{normal_order, normal_order_with_hbar};
pub use operator::TermOperator;
pub use parse::parse_term;
pub use term::{Factor, Symbol, Term};

/// Which operator algebra a [`TermOperator`] lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Fermion,
    Boson,
    Qubit,
    Quad,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Fermion => "fermion",
            Variant::Boson => "boson",
            Variant::Qubit => "qubit",
            Variant::Quad => "quad",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fermion" => Ok(Variant::Fermion),
            "boson" => Ok(Variant::Boson),
            "qubit" => Ok(Variant::Qubit),
            "quad" => Ok(Variant::Quad),
            other => Err(crate::Error::InvalidArgument(format!(
                "unknown operator variant `{other}`"
            ))),
        }
    }
}
