//! Formal groups of Weierstrass models and the series of isogenies between them.

pub mod bivariate;
pub mod group;
pub mod homomorphism;
pub mod ring;
pub mod series;

pub use bivariate::{group_law, BivariateSeries};
pub use group::{formal_expansion, multiplication_series, FormalExpansion, FormalGroup};
pub use homomorphism::{
    default_order, dual_series, formal_height, isogeny_series, isogeny_series_between, rational_map_is_separable,
    separability_shadow, velu_series, FormalHomomorphism, SeriesSummary,
};
pub use ring::{CoefficientRing, RationalField, ResidueField};
pub use series::{RationalSeries, Series};
