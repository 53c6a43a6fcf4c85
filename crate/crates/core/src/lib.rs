//! Gröbner-basis certificates for a principal ideal that is not a w-ideal,
//! and an exhaustive laboratory for the w-operation on finite commutative
//! rings.

pub mod arith;
pub mod cli;
pub mod example26;
pub mod finlab;
pub mod groebner;
pub mod poly;
pub mod report;
pub mod wcert;
