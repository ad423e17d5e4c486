//! Zero testing, nonzero search and system solving for sparse polynomials
//! on rectangular domains over finite fields.
//!
//! A polynomial with `M` monomials that does not vanish on a zero-free
//! rectangular domain `Q` has a nonzero within Hamming distance
//! `log_t(M)` of every point of `Q`, where `t = r/(r-1)` and `r` is the
//! largest multiplicative order of a ratio of two coordinates' values.
//! Searching that ball instead of all of `Q` gives a black-box zero test
//! ([`tester`]) and, through the indicator `prod (1 - f_i^(q-1))`, a solver
//! for sparse systems ([`solver`]). The [`oracle`] module holds exhaustive
//! brute-force checks of the monomial-count and density bounds behind it.

pub mod cli;
pub mod domain;
pub mod error;
pub mod gf;
pub mod oracle;
pub mod poly;
pub mod solver;
pub mod tester;

pub use domain::{enumerate_ball, hamming_distance, Point, RectangularDomain};
pub use error::{Error, Result};
pub use gf::{Elem, GaloisField};
pub use poly::{Monomial, SparsePoly};
