pub mod error;
pub mod grothendieck;
pub mod jet_engine;
pub mod measure_engine;
pub mod poly;
pub mod resolution_analysis;

pub use error::{Error, ParseError, Result};
pub use grothendieck::{geometric_sum, limit_of_sequence, LaurentPoly, MotiveSeries, VirtualDim};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub mod intro {}
    #[doc = include_str!("../../../book/src/grothendieck.md")]
    pub mod grothendieck {}
    #[doc = include_str!("../../../book/src/jets.md")]
    pub mod jets {}
    #[doc = include_str!("../../../book/src/measures.md")]
    pub mod measures {}
    #[doc = include_str!("../../../book/src/change_of_variables.md")]
    pub mod change_of_variables {}
    #[doc = include_str!("../../../book/src/inverse_mapping.md")]
    pub mod inverse_mapping {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
