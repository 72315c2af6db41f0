//! Exact multivariate polynomials over the rationals, truncated power
//! series, arc jets, and the jet-space machinery built on them.

mod jets;
mod multipoly;
mod parse;
mod series;

pub use jets::{
    arc_level, compose, hypersurface_hx, jacobian_entries_order, jacobian_matrix_order, jacobian_minors,
    jet_equations, jet_var_name, ord_jac_along, series_order, PolySystem, RationalEntry,
};
pub use multipoly::{Coefficient, Monomial, MultiPoly};
pub use series::{ArcJet, SeriesOrder, TruncSeries};

/// Owned variable names from string slices.
pub fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| (*s).to_owned()).collect()
}
