//! Binomial ideals: monomial orders, Buchberger's algorithm for
//! pure-difference binomials, saturation and toric ideals.

mod buchberger;
mod monomial;
mod toric;

pub use buchberger::{buchberger, buchberger_with, GbStats, Mode, ReducedGB};
pub use monomial::{default_names, split_names, Binomial, Monomial, MonomialOrder, OrderKind};
pub use toric::{
    eliminate, ideal_equal, minimal_generators, saturate, saturate_with, toric_ideal,
    SaturationStats,
};
