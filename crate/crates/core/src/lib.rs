//! Exact computations with Weyl numerators of basic classical Lie superalgebras.
//!
//! Everything is arbitrary-precision rational arithmetic. The main entry
//! points are [`root_datum::RootDatum`], [`numerator::numerator`],
//! [`unifac::match_factors`] and [`atypical::coefficient_oracle`].

pub mod acceptance;
pub mod atypical;
pub mod error;
pub mod linalg;
pub mod numerator;
pub mod partitions;
pub mod root_datum;
pub mod sampling;
pub mod series;
pub mod unifac;
pub mod weight_expr;
pub mod weyl;

pub use error::{Error, Result};
pub use root_datum::{Family, RootDatum, Weight};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
