//! Exact arithmetic in the Grothendieck ring of AS-sets, its localization at
//! the class of the line, and the dimension completion, all carried through
//! the virtual Poincaré polynomial.

mod laurent;
mod series;
mod text;

use std::fmt;

pub use laurent::LaurentPoly;
pub use series::{geometric_sum, limit_of_sequence, MotiveSeries};

/// Virtual dimension: the degree of the virtual Poincaré polynomial.
/// The zero element has dimension `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VirtualDim {
    NegInfinity,
    Finite(i64),
}

impl VirtualDim {
    pub fn finite(self) -> Option<i64> {
        match self {
            VirtualDim::Finite(d) => Some(d),
            VirtualDim::NegInfinity => None,
        }
    }
}

impl fmt::Display for VirtualDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VirtualDim::NegInfinity => f.write_str("-inf"),
            VirtualDim::Finite(d) => write!(f, "{d}"),
        }
    }
}
