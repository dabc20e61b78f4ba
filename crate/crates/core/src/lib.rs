//! Witten zeta functions of compact symmetric spaces and compact Lie groups.
//!
//! Class-one dimensions come from restricted root data with multiplicities,
//! evaluated both as exact rational products and as gamma-function ratios.

#![allow(non_snake_case)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dims;
pub mod error;
pub mod genseries;
pub mod partition;
pub mod rat;
pub mod rootdata;
pub mod selfcheck;
pub mod series;
pub mod specfun;
pub mod sphere_oracle;
pub mod weights;
pub mod zeta;

pub use error::{Error, Result};
pub use rat::Q;
pub use rootdata::{
    lookup_group, lookup_space, CompactGroupDescriptor, Family, MultiplicityFunction, RestrictedRootSystem, RootVector,
    SymmetricSpaceDescriptor,
};
pub use series::EvalResult;
pub use weights::{ClassOneWeight, DominantWeight};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
