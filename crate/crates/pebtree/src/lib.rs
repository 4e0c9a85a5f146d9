//! Optimal pebbling of complete binary trees.
//!
//! A pebbling move removes two pebbles from a vertex and places one on a
//! neighbor; a configuration pebbles a graph when every vertex can receive
//! a pebble. For the complete binary tree `T^h` the optimal pebbling number
//! — the minimum size of a configuration that pebbles — is
//!
//! ```text
//! π*(T^h) = 2^h − k(h),      k(h) = max{k : s_k ≤ 2^h},
//! ```
//!
//! where `s` is the partial-sum sequence of a self-similar list of 1s and
//! 5s. This crate computes `π*` and an explicit optimal configuration in
//! O(h) through digit expansions over Mersenne numbers, verifies them
//! against independent brute-force pebbling oracles, exposes the
//! lower-bound certificate machinery, relates `s` to the Conolly-Fox
//! meta-Fibonacci sequence (`s_n = 4·c_n + n`), and tabulates the
//! oscillating third-order term of the asymptotic expansion of `k(h)`.
//!
//! Modules:
//!
//! * [`expansion`] — the M- and μ-numeration systems and list calculus;
//! * [`seq`] — the sequences `a`, `s`, `c`, `d`, `w`, `t` and the inverse
//!   of `s`;
//! * [`pebbling`] — symmetric and explicit configurations, the pebblability
//!   DP, the exhaustive move-sequence oracle, and the liquid relaxation;
//! * [`optimal`] — `k(h)`, `π*(T^h)`, the optimal family `f_{h,k}`,
//!   certificates, and brute-force cross-checks;
//! * [`asymptotics`] — `φ(2^h)`, `α(h)`, the root `x*`, and the two
//!   extremal height families.
//!
//! All sequence and configuration arithmetic is exact unsigned 128-bit;
//! overflow is an error, never a wraparound. Everything is pure and
//! deterministic; values are freely shareable across threads.

pub mod asymptotics;
pub mod error;
pub mod expansion;
pub mod optimal;
pub mod pebbling;
pub mod seq;

pub use error::{Error, Result};
pub use expansion::{DigitList, MuExpansion};
pub use optimal::{Certificate, CertificateCase, OptimalResult};
pub use pebbling::{Dyadic, ExplicitConfig, LiquidReport, SymmetricConfig};
