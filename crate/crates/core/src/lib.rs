//! Exact computations for totally disconnected locally compact groups acting
//! on trees and buildings: Euler–Poincaré characteristics as multiples of a
//! Haar measure, double-coset zeta functions, and Iwahori–Hecke algebras.
//!
//! All arithmetic is exact. Module overview:
//!
//! - [`algebra`]: rationals, polynomials, rational functions, truncated series
//! - [`coxeter`]: Coxeter systems, the word problem, growth series, double cosets
//! - [`measure`]: Haar measures as rational multiples of a base normalization
//! - [`euler`]: Euler–Poincaré characteristics by several routes
//! - [`zeta`]: double-coset zeta functions at chamber, parabolic and pro-p level
//! - [`hecke`]: the Iwahori–Hecke algebra, its trace and Hattori–Stallings ranks
//! - [`verify`]: identity suites shared by the CLI and the tests

pub mod algebra;
pub mod coxeter;
pub mod euler;
pub mod hecke;
pub mod measure;
pub mod verify;
pub mod zeta;

use std::fmt;

/// A line-numbered error from one of the plain-text input formats. Line 0
/// refers to the input as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// Strips a `#` comment and surrounding whitespace; `None` for blank lines.
pub(crate) fn content_line(raw: &str) -> Option<&str> {
    let line = raw.split('#').next().unwrap_or("").trim();
    (!line.is_empty()).then_some(line)
}
