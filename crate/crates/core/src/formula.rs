//! Random single-line math formulas.
//!
//! Grammar:
//!
//! ```text
//! expr := atom | expr op expr | ( expr ) | atom ^ digit
//! atom := variable | integer
//! ```
//!
//! An atom has depth 1; every other production adds one level over its
//! deepest child. Exponents are written with Unicode superscript digits
//! unless disabled, in which case `^` is emitted.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormulaGrammar {
    pub max_depth: u32,
    pub operators: Vec<String>,
    pub variable_symbols: Vec<String>,
    /// Inclusive range for integer atoms.
    pub digit_range: (u32, u32),
    pub unicode_superscripts: bool,
}

impl Default for FormulaGrammar {
    fn default() -> Self {
        let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect();
        Self {
            max_depth: 4,
            operators: s(&["+", "−", "×", "÷", "="]),
            variable_symbols: s(&["x", "y", "z", "a", "b", "c", "n", "k", "α", "β", "θ", "λ", "π"]),
            digit_range: (0, 99),
            unicode_superscripts: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrammarError {
    #[error("max_depth must be at least 1")]
    ZeroDepth,
    #[error("operator list is empty")]
    NoOperators,
    #[error("variable symbol list is empty")]
    NoVariables,
    #[error("digit range is reversed")]
    ReversedDigits,
}

impl FormulaGrammar {
    pub fn validate(&self) -> Result<(), GrammarError> {
        if self.max_depth == 0 {
            return Err(GrammarError::ZeroDepth);
        }
        if self.operators.is_empty() {
            return Err(GrammarError::NoOperators);
        }
        if self.variable_symbols.is_empty() {
            return Err(GrammarError::NoVariables);
        }
        if self.digit_range.0 > self.digit_range.1 {
            return Err(GrammarError::ReversedDigits);
        }
        Ok(())
    }
}

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// Superscript form of an ASCII digit.
pub fn superscript_digit(d: u32) -> char {
    SUPERSCRIPTS[d as usize % 10]
}

fn push_atom<R: Rng + ?Sized>(g: &FormulaGrammar, rng: &mut R, out: &mut String) {
    if rng.gen_bool(0.6) {
        let i = rng.gen_range(0..g.variable_symbols.len());
        out.push_str(&g.variable_symbols[i]);
    } else {
        let v = rng.gen_range(g.digit_range.0..=g.digit_range.1);
        out.push_str(&v.to_string());
    }
}

fn expand<R: Rng + ?Sized>(g: &FormulaGrammar, depth: u32, rng: &mut R, out: &mut String) {
    if depth <= 1 {
        push_atom(g, rng, out);
        return;
    }
    // weights: atom 1, binary 3, parenthesized 1, power 1
    match rng.gen_range(0..6) {
        0 => push_atom(g, rng, out),
        1..=3 => {
            expand(g, depth - 1, rng, out);
            out.push(' ');
            let i = rng.gen_range(0..g.operators.len());
            out.push_str(&g.operators[i]);
            out.push(' ');
            expand(g, depth - 1, rng, out);
        }
        4 => {
            out.push('(');
            expand(g, depth - 1, rng, out);
            out.push(')');
        }
        _ => {
            push_atom(g, rng, out);
            let d = rng.gen_range(2..=9);
            if g.unicode_superscripts {
                out.push(superscript_digit(d));
            } else {
                out.push('^');
                out.push(char::from_digit(d, 10).unwrap());
            }
        }
    }
}

/// Generates one formula of depth at most `grammar.max_depth`.
pub fn generate_formula<R: Rng + ?Sized>(grammar: &FormulaGrammar, rng: &mut R) -> String {
    let mut out = String::new();
    expand(grammar, grammar.max_depth.max(1), rng, &mut out);
    out
}
