//! Exact Riordan-array calculus over truncated rational power series.
//!
//! The building blocks are [`Series`] (a truncated power series with exact
//! rational coefficients) and [`RiordanArray`] (a validated pair `(d, h)`
//! whose `(n, k)` entry is `[t^n] d(t) h(t)^k`). On top of those sit sums and
//! sumrays, the `der`/`flip` operators, a catalog of named arrays and
//! generating functions, an identity regression suite and a small
//! expression language.

pub mod catalog;
pub mod combinat;
pub mod derflip;
pub mod error;
pub mod expr;
pub mod identities;
pub mod matrix;
pub mod riordan;
pub mod series;
pub mod sums;

pub use error::{ArrayDefect, Error, Result};
pub use matrix::Matrix;
pub use riordan::{RiordanArray, SubgroupTag};
pub use series::{gen_binomial, rat, ratio, Rat, Seq, Series, DEFAULT_ORDER};
