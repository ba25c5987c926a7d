//! Exact machinery for mixed-integer linear representability: affine Chvatal
//! functions as first-class trees, Fourier-Motzkin and integer projection
//! schemes, Hilbert-basis TDI-ification with Chvatal closures, LP/IP
//! consistency testers, the Williams-Hooker congruence elimination, and a
//! brute-force lattice oracle that cross-checks all of it.
//!
//! All arithmetic is arbitrary-precision rational; no floating point anywhere.

pub mod arith;
pub mod caps;
pub mod chvatal;
pub mod error;
pub mod fm;
pub mod hilbert;
pub mod io;
pub mod oracle;
pub mod repr;
pub mod tester;
pub mod wh;

pub use arith::{ceil_rational, lcm_list, mod_reduce, rat, Rational, RationalMatrix, RationalVector};
pub use caps::Caps;
pub use chvatal::{
    ceilingize, decompose, ACFunction, ACInequality, ACNode, ACSystem, CeilPattern, Decomposition,
};
pub use error::{Error, Result};
