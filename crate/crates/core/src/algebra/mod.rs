//! Exact coefficient rings and the series kernel.

mod binom;
mod cyclo;
pub mod linalg;
mod ramified;
mod ring;
mod series;
mod sigma;
mod solve;

pub use binom::{binom, binomial};
pub use cyclo::{cyclotomic_modulus, CycloField, CycloNum};
pub use ramified::{ramified_twist, RamifiedSeries};
pub use ring::{int, parse_rational, rational, Rational, Ring};
pub use series::TruncatedSeries;
pub use sigma::SigmaPoly;
pub use solve::{linear_solve_series, series_determinant, SeriesSolution};
