//! Conversion between bosonic ladder and quadrature operators.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::{Factor, Symbol, TermOperator, Variant};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    BosonToQuad,
    QuadToBoson,
}

/// Rewrites a boson operator in terms of `q, p` (or back), using
/// `q = √(ħ/2)(b + b†)`, `p = −i√(ħ/2)(b − b†)` and
/// `b = (q + ip)/√(2ħ)`.
pub fn boson_quad_convert(
    op: &TermOperator,
    direction: Direction,
    hbar: f64,
) -> Result<TermOperator> {
    if hbar.is_nan() || hbar <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "hbar must be positive, got {hbar}"
        )));
    }
    let (source, target) = match direction {
        Direction::BosonToQuad => (Variant::Boson, Variant::Quad),
        Direction::QuadToBoson => (Variant::Quad, Variant::Boson),
    };
    if op.variant() != source {
        return Err(Error::VariantMismatch {
            left: op.variant(),
            right: source,
        });
    }
    let single = |mode: usize, symbol: Symbol, c: Complex64| {
        TermOperator::from_factors(target, vec![Factor::new(mode, symbol)], c)
            .expect("valid factor")
    };
    let image = |f: &Factor| -> TermOperator {
        match f.symbol {
            Symbol::Lower | Symbol::Raise => {
                let s = 1.0 / (2.0 * hbar).sqrt();
                let sign = if f.symbol.is_raise() { -1.0 } else { 1.0 };
                single(f.mode, Symbol::Q, s.into())
                    + single(f.mode, Symbol::P, Complex64::new(0.0, sign * s))
            }
            Symbol::Q => {
                let s = (hbar / 2.0).sqrt();
                single(f.mode, Symbol::Lower, s.into()) + single(f.mode, Symbol::Raise, s.into())
            }
            Symbol::P => {
                let s = (hbar / 2.0).sqrt();
                single(f.mode, Symbol::Lower, Complex64::new(0.0, -s))
                    + single(f.mode, Symbol::Raise, Complex64::new(0.0, s))
            }
            _ => unreachable!("qubit factor in a bosonic operator"),
        }
    };
    let mut out = TermOperator::zero(target);
    for (term, coeff) in op.terms() {
        let mut product = TermOperator::identity(target).scale(*coeff);
        for f in term.factors() {
            product = &product * &image(f);
        }
        out += product;
    }
    Ok(out)
}
