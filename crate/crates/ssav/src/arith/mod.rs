//! Exact integer, polynomial and matrix primitives shared by every other
//! module. All operations are pure and deterministic.

pub mod matrix;
pub mod num;
pub mod poly;

pub use matrix::{charpoly_integer_matrix, IntMatrix};
pub use num::{
    divisors, euler_phi, factor, gcd, is_prime, jacobi_symbol, l_part_split,
    multiplicative_order, units_mod,
};
pub use poly::{cyclotomic_poly, perfect_power_decompose, IntPoly};
