//! Text format for polynomial systems (`.vf` files):
//!
//! ```text
//! spec   := "dx" "=" expr ";" "dy" "=" expr ";"
//! expr   := term { ("+" | "-") term }
//! term   := unary { "*" unary }
//! unary  := ("-" | "+") unary | factor
//! factor := base [ "^" uint ]
//! base   := "x" | "y" | "sx" | "sy" | number | fraction | "(" expr ")"
//! ```
//!
//! `sx`, `sy` stand for `sgn x`, `sgn y`, which the sign-corrected families
//! need. `#` starts a comment. Coefficients are kept as exact rationals.

mod lexer;
mod parser;
mod poly;

use std::fmt;

use serde::Serialize;

use focusdim::systems::PlanarSystem;

pub use parser::{parse_system, MAX_EXPONENT};
pub use poly::{ExactPoly, Key};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseErrorKind {
    Syntax,
    NonPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::NonPolynomial => "not a polynomial",
        };
        write!(
            f,
            "{what} at line {}, col {}: expected {}, found {}",
            self.line,
            self.col,
            self.expected.join(" or "),
            self.found
        )
    }
}

impl std::error::Error for ParseError {}

/// A parsed system.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemSpec {
    pub source: String,
    pub p: ExactPoly,
    pub q: ExactPoly,
}

impl SystemSpec {
    pub fn to_system(&self) -> PlanarSystem {
        PlanarSystem::custom_signed(self.p.to_signed(), self.q.to_signed())
    }

    /// Canonical text; parsing it gives back the same coefficients.
    pub fn print(&self) -> String {
        format!("dx = {};\ndy = {};\n", self.p.print(), self.q.print())
    }
}

/// DSL text of any system's right-hand side.
pub fn render_system(sys: &PlanarSystem) -> String {
    SystemSpec {
        source: String::new(),
        p: ExactPoly::from_signed(&sys.p),
        q: ExactPoly::from_signed(&sys.q),
    }
    .print()
}
