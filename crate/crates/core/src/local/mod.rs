//! Local hidden variable side: exhaustive strategy enumeration, exact
//! classical maxima and facet certification.

pub mod bound;
pub mod cg;
pub mod facet;
pub mod rank;
mod strategy;

pub use bound::{
    classical_max, classical_max_correlation, strategies_at, strategy_value_twice,
    white_noise_lhs, ClassicalMax,
};
pub use cg::{cg_dimension, cg_embed, cg_functional, CgFunctional};
pub use facet::{certificate, facet_check, facet_check_with, FacetLimits, TightnessReport};
pub use strategy::{enumerate_strategies, strategy_table, Strategy, MAX_ALPHABET};
