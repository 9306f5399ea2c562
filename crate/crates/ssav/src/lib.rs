//! Classification of elementary supersingular abelian varieties over finite
//! fields by their Weil numbers, computation of the abelian-group structure
//! of their rational points, and brute-force curve/Jacobian oracles that
//! verify the classification at desk scale.

pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod interval;
pub mod weil;

pub use error::{Error, Result};
