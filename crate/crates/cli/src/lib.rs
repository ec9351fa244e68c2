//! Library side of the `xedp` binary: argument grammar, output formatting and
//! the verification checks.
//!
//! Exit codes: 0 success, 1 verification failure, 2 numerical non-convergence,
//! 3 invalid input.

pub mod args;
pub mod checks;
mod commands;
pub mod output;
#[cfg(test)]
mod tests;

pub use commands::{exit_code, quadrature_settings, run, run_with, Failure, EXIT_INVALID, EXIT_NONCONVERGENT, EXIT_OK, EXIT_VERIFY};
