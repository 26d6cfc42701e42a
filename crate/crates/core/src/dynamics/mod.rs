//! Finite self-maps, their periodic structure, Dold indices, Lefschetz
//! numbers of iterates and zeta functions.

mod map;
mod profile;
mod zeta;

pub use map::{FiniteSelfMap, PointedMap};
pub use profile::{
    cycle_profile, divisors, dold_from_lefschetz, lefschetz_from_dold, lefschetz_sequence, mobius,
    reduced_cycle_profile, DoldProfile, LefschetzSequence,
};
pub use zeta::{zeta_exp_form, zeta_from_pair, zeta_product_form, zeta_series, ZetaInput};
