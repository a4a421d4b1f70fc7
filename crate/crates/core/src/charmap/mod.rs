//! Characteristic maps, dual characteristic matrices and binary matroids.

mod colorings;
mod matrix;
mod matroid;
mod orbits;

pub use colorings::{find_integer_charmap, for_each_mod2_charmap, lift_to_integer, mod2_charmaps, supports_dcm};
pub use matrix::{CharMatrixZ, CharMatrixZ2, DualCharMatrix};
pub use matroid::{binary_matroid, column_rank, dual_matroid, BinaryMatroid};
pub use orbits::{canonical_rows, idcm_orbits, matroid_universe, set_orbit_size};
