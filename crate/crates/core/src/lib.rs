//! Exact computations with the two-dimensional quantum SO(3) representation
//! of the pair-of-pants group `F<a, b>`.
//!
//! The crate is organised bottom-up:
//!
//! - [`cyclotomic`]: exact arithmetic in `Z[ζ_p]`, the `h`-adic valuation for
//!   `h = 1 - ζ_p`, and the finite quotient rings `Z[ζ_p]/h^m`.
//! - [`projmat`]: 2×2 matrices over those rings, projective equality,
//!   `h`-depth, and an exact finite/infinite projective order decision.
//! - [`pantsrep`]: the representation itself, words, simple classes and the
//!   Schottky (ping-pong) certificate.
//! - [`hquot`]: the finite images modulo `h^{k+1}` and the level `N` search.
//! - [`covers`]: coset tables, Schreier bases, Smith normal form and the
//!   simple-loop homology report.
//! - [`acceptance`]: the end-to-end verification suite used by `qcovers verify`.
//!
//! The `book/` directory next to the workspace root walks through the same
//! material with runnable examples; those examples are compiled as doctests.

pub mod acceptance;
pub mod cli;
pub mod covers;
pub mod cyclotomic;
mod error;
pub mod hquot;
pub mod pantsrep;
pub mod projmat;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/projective.md")]
    mod projective {}
    #[doc = include_str!("../../../book/src/representation.md")]
    mod representation {}
    #[doc = include_str!("../../../book/src/quotients.md")]
    mod quotients {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
}
