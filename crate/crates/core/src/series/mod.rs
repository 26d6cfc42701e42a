//! Exact rational arithmetic and the series and polynomial algebra built
//! on it.

pub mod bivariate;
pub mod egf;
pub mod multipoly;
pub mod poly;
pub mod power;
pub mod ratfunc;
pub mod rational;

pub use bivariate::BivariateSeries;
pub use egf::{egf_pack, egf_unpack};
pub use multipoly::MultiPoly;
pub use poly::Poly;
pub use power::{PowerSeries, SeriesComparison, DEFAULT_ORDER};
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, frac, int, parse_rational, Rational};
