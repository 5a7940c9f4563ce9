//! Counting monic irreducible polynomials over F_q (q odd) whose first two
//! coefficients are prescribed, through point counts and the L-polynomial of
//! the Artin–Schreier curve y^q - y = x^(q+1) - x^2, with brute-force oracles
//! for every closed form.

pub mod arith;
pub mod error;
pub mod census;
pub mod counting;
pub mod curves;
pub mod ffield;
pub mod qforms;
pub mod report;
pub mod traces;
pub mod verify;

pub use error::{Error, Result};
