//! String grammar for terms and operators.
//!
//! Terms are whitespace-separated factor tokens: `4^ 3 9 3^` for ladder
//! variants, `X1 Z2` for qubits and `q0 p1` for quadratures. Operators print
//! as `coefficient [term]` entries joined by ` +` and a newline, with
//! coefficients written as `(re+imj)`.

use num_complex::Complex64;

use super::term::{Factor, Symbol, Term};
use super::{TermOperator, Variant};
use crate::error::{Error, Result};

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn parse_index(token: &str, offset: usize) -> Result<usize> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_error(
            offset,
            format!("expected a mode index, found `{token}`"),
        ));
    }
    token
        .parse()
        .map_err(|_| parse_error(offset, format!("mode index `{token}` out of range")))
}

fn parse_factor(variant: Variant, token: &str, offset: usize) -> Result<Factor> {
    match variant {
        Variant::Fermion | Variant::Boson => {
            let (digits, symbol) = match token.strip_suffix('^') {
                Some(d) => (d, Symbol::Raise),
                None => (token, Symbol::Lower),
            };
            Ok(Factor::new(parse_index(digits, offset)?, symbol))
        }
        Variant::Qubit | Variant::Quad => {
            let mut chars = token.chars();
            let head = chars.next().unwrap_or(' ');
            let symbol = match (variant, head) {
                (Variant::Qubit, 'X') => Symbol::X,
                (Variant::Qubit, 'Y') => Symbol::Y,
                (Variant::Qubit, 'Z') => Symbol::Z,
                (Variant::Quad, 'q') => Symbol::Q,
                (Variant::Quad, 'p') => Symbol::P,
                _ => {
                    return Err(parse_error(
                        offset,
                        format!("invalid {variant} factor `{token}`"),
                    ))
                }
            };
            Ok(Factor::new(
                parse_index(chars.as_str(), offset + 1)?,
                symbol,
            ))
        }
    }
}

/// Parses a term string into its canonical key.
pub fn parse_term(variant: Variant, text: &str) -> Result<Term> {
    let mut factors = Vec::new();
    let mut offset = 0;
    for piece in text.split_inclusive(char::is_whitespace) {
        let token = piece.trim_end();
        if !token.is_empty() {
            factors.push(parse_factor(variant, token, offset)?);
        }
        offset += piece.len();
    }
    Term::canonical(variant, factors).map_err(Error::InvalidTerm)
}

impl TermOperator {
    /// Single-term operator from the variant's term grammar. The empty
    /// string is the identity.
    pub fn parse(variant: Variant, text: &str, coefficient: impl Into<Complex64>) -> Result<Self> {
        let term = parse_term(variant, text)?;
        Ok(TermOperator::from_canonical(
            variant,
            term,
            coefficient.into(),
        ))
    }

    /// Inverse of the `Display` impl.
    pub fn parse_operator(variant: Variant, text: &str) -> Result<Self> {
        let mut op = TermOperator::zero(variant);
        let trimmed = text.trim();
        if trimmed == "0" || trimmed.is_empty() {
            return Ok(op);
        }
        let base = text.len() - text.trim_start().len();
        let mut offset = base;
        for entry in trimmed.split(" +\n") {
            let open = entry
                .find('[')
                .ok_or_else(|| parse_error(offset, "missing `[` in operator entry"))?;
            let close = entry
                .rfind(']')
                .filter(|&c| c > open)
                .ok_or_else(|| parse_error(offset, "missing `]` in operator entry"))?;
            let coefficient = parse_complex(entry[..open].trim()).ok_or_else(|| {
                parse_error(
                    offset,
                    format!("bad coefficient `{}`", entry[..open].trim()),
                )
            })?;
            let term = parse_term(variant, &entry[open + 1..close]).map_err(|e| match e {
                Error::Parse { offset: o, message } => parse_error(offset + open + 1 + o, message),
                other => other,
            })?;
            op.add_term(term, coefficient);
            offset += entry.len() + 3;
        }
        Ok(op)
    }
}

pub(crate) fn format_complex(c: Complex64) -> String {
    let (sign, im) = if c.im.is_sign_negative() {
        ('-', -c.im)
    } else {
        ('+', c.im)
    };
    format!("({:?}{sign}{:?}j)", c.re, im)
}

/// Parses `(re+imj)`, `(re-imj)` or a bare real number.
pub(crate) fn parse_complex(text: &str) -> Option<Complex64> {
    let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) else {
        return text.parse::<f64>().ok().map(|re| Complex64::new(re, 0.0));
    };
    let body = inner.strip_suffix('j')?;
    let bytes = body.as_bytes();
    // The separator is the last sign that is neither leading nor part of an
    // exponent.
    let split = (1..bytes.len()).rev().find(|&i| {
        (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E')
    })?;
    let re = body[..split].parse::<f64>().ok()?;
    let im = body[split..].parse::<f64>().ok()?;
    Some(Complex64::new(re, im))
}
