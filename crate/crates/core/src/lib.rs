//! Exact verification engine for configuration results on extremal even
//! unimodular lattices.
//!
//! The pipeline is: extremal theta series ([`qseries`]) give shell sizes and
//! decide which weighted theta series must vanish; zonal harmonics
//! ([`zonal`]) turn each vanishing into a linear equation on the inner-product
//! counts `N_i`; [`config`] assembles those equations, takes the determinant
//! of the extended matrix over `Q[t]` and analyses its roots. Everything is
//! checked against brute-force enumeration on E8 and the Leech lattice
//! ([`oracle`]).

pub mod algebra;
pub mod config;
pub mod error;
pub mod oracle;
pub mod qseries;
pub mod zonal;

pub use algebra::{Int, Rat, UniPoly};
pub use error::{Error, Result};
