//! Normal ordering for ladder and quadrature operators.

use std::collections::BTreeMap;

use num_complex::Complex64;

use super::term::{Factor, Symbol, Term};
use super::{TermOperator, Variant};
use crate::error::{Error, Result};

/// Normal-orders `op`, with ħ = 1 for quadrature operators.
///
/// Fermion terms end up with raising operators to the left of lowering ones
/// and each block in descending mode order. Boson terms put raising before
/// lowering within each mode, modes ascending. Quadrature terms put `q`
/// before `p` within each mode.
pub fn normal_order(op: &TermOperator) -> Result<TermOperator> {
    normal_order_with_hbar(op, 1.0)
}

/// Normal ordering with an explicit ħ, which only affects quadrature terms.
pub fn normal_order_with_hbar(op: &TermOperator, hbar: f64) -> Result<TermOperator> {
    let variant = op.variant();
    let mut out = TermOperator::zero(variant);
    match variant {
        Variant::Qubit => {
            return Err(Error::UnsupportedVariant {
                variant,
                operation: "normal ordering",
            })
        }
        Variant::Fermion => {
            for (term, coeff) in op.terms() {
                fermion_term(term.factors(), *coeff, &mut out);
            }
        }
        Variant::Boson | Variant::Quad => {
            if variant == Variant::Quad && (hbar.is_nan() || hbar <= 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "hbar must be positive, got {hbar}"
                )));
            }
            for (term, coeff) in op.terms() {
                per_mode_term(variant, term, *coeff, hbar, &mut out);
            }
        }
    }
    Ok(out)
}

fn fermion_term(factors: &[Factor], coefficient: Complex64, out: &mut TermOperator) {
    let mut stack = vec![(factors.to_vec(), coefficient)];
    'work: while let Some((mut term, mut coeff)) = stack.pop() {
        for i in 1..term.len() {
            for j in (1..=i).rev() {
                let (left, right) = (term[j - 1], term[j]);
                if right.symbol.is_raise() && left.symbol.is_lower() {
                    term.swap(j - 1, j);
                    if right.mode == left.mode {
                        let mut contracted = term[..j - 1].to_vec();
                        contracted.extend_from_slice(&term[j + 1..]);
                        stack.push((contracted, coeff));
                    }
                    coeff = -coeff;
                } else if right.symbol == left.symbol {
                    if right.mode == left.mode {
                        continue 'work;
                    }
                    if right.mode > left.mode {
                        term.swap(j - 1, j);
                        coeff = -coeff;
                    }
                }
            }
        }
        out.add_term(Term(term), coeff);
    }
}

/// Normal form of a single-mode word as a map from
/// (count of first symbol, count of second symbol) to coefficient. The first
/// symbol is `Raise` (boson) or `Q` (quadrature).
fn single_mode(
    word: Vec<Symbol>,
    first: Symbol,
    contraction: Complex64,
) -> BTreeMap<(usize, usize), Complex64> {
    let mut result = BTreeMap::new();
    let mut stack = vec![(word, Complex64::new(1.0, 0.0))];
    while let Some((word, coeff)) = stack.pop() {
        // First out-of-order adjacent pair: second symbol followed by first.
        match word.windows(2).position(|w| w[0] != first && w[1] == first) {
            None => {
                let a = word.iter().filter(|&&s| s == first).count();
                *result.entry((a, word.len() - a)).or_default() += coeff;
            }
            Some(k) => {
                let mut swapped = word.clone();
                swapped.swap(k, k + 1);
                stack.push((swapped, coeff));
                let mut reduced = word;
                reduced.drain(k..k + 2);
                stack.push((reduced, coeff * contraction));
            }
        }
    }
    result
}

fn per_mode_term(
    variant: Variant,
    term: &Term,
    coefficient: Complex64,
    hbar: f64,
    out: &mut TermOperator,
) {
    let (first, second, contraction) = match variant {
        Variant::Boson => (Symbol::Raise, Symbol::Lower, Complex64::new(1.0, 0.0)),
        _ => (Symbol::Q, Symbol::P, Complex64::new(0.0, -hbar)),
    };
    let factors = term.factors();
    let mut partial: Vec<(Vec<Factor>, Complex64)> = vec![(Vec::new(), coefficient)];
    let mut start = 0;
    while start < factors.len() {
        let mode = factors[start].mode;
        let end = start
            + factors[start..]
                .iter()
                .take_while(|f| f.mode == mode)
                .count();
        let word = factors[start..end].iter().map(|f| f.symbol).collect();
        let expansion = single_mode(word, first, contraction);
        let mut next = Vec::with_capacity(partial.len() * expansion.len());
        for (prefix, c) in &partial {
            for (&(a, b), &e) in &expansion {
                if e == Complex64::default() {
                    continue;
                }
                let mut f = prefix.clone();
                f.extend(std::iter::repeat_n(Factor::new(mode, first), a));
                f.extend(std::iter::repeat_n(Factor::new(mode, second), b));
                next.push((f, c * e));
            }
        }
        partial = next;
        start = end;
    }
    for (f, c) in partial {
        out.add_term(Term(f), c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(variant: Variant, text: &str, c: Complex64) -> TermOperator {
        TermOperator::parse(variant, text, c).unwrap()
    }

    #[test]
    fn paper_w_example() {
        let c = Complex64::new(1.0, 2.0);
        let w = parse(Variant::Fermion, "4^ 3 9 3^", c) - parse(Variant::Fermion, "2", 4.0.into());
        let expected = parse(Variant::Fermion, "4^ 3^ 9 3", -c)
            + parse(Variant::Fermion, "4^ 9", -c)
            + parse(Variant::Fermion, "2", (-4.0).into());
        assert_eq!(normal_order(&w).unwrap(), expected);
        assert!(normal_order(&w.pow(4)).unwrap().is_empty());
    }

    #[test]
    fn boson_single_mode() {
        let op = parse(Variant::Boson, "0 0^", 1.0.into());
        let expected =
            TermOperator::identity(Variant::Boson) + parse(Variant::Boson, "0^ 0", 1.0.into());
        assert_eq!(normal_order(&op).unwrap(), expected);
    }

    #[test]
    fn boson_higher_power() {
        // b b b† b† = b†b† b b + 4 b† b + 2
        let op = parse(Variant::Boson, "0 0 0^ 0^", 1.0.into());
        let expected = parse(Variant::Boson, "0^ 0^ 0 0", 1.0.into())
            + parse(Variant::Boson, "0^ 0", 4.0.into())
            + TermOperator::identity(Variant::Boson).scale(2.0);
        assert_eq!(normal_order(&op).unwrap(), expected);
    }

    #[test]
    fn quad_with_hbar() {
        let op = parse(Variant::Quad, "p0 q0", 1.0.into());
        let expected = parse(Variant::Quad, "q0 p0", 1.0.into())
            + TermOperator::identity(Variant::Quad).scale(Complex64::new(0.0, -2.0));
        assert_eq!(normal_order_with_hbar(&op, 2.0).unwrap(), expected);
        assert!(normal_order_with_hbar(&op, 0.0).is_err());
    }

    #[test]
    fn qubit_is_unsupported() {
        let op = TermOperator::identity(Variant::Qubit);
        assert!(matches!(
            normal_order(&op),
            Err(Error::UnsupportedVariant { .. })
        ));
    }

    #[test]
    fn hop_commutator() {
        let a = TermOperator::fermion(&[(0, true), (1, false)], 1.0);
        let b = TermOperator::fermion(&[(1, true), (0, false)], 1.0);
        let expected = TermOperator::fermion(&[(0, true), (0, false)], 1.0)
            - TermOperator::fermion(&[(1, true), (1, false)], 1.0);
        assert_eq!(a.commutator(&b).unwrap(), expected);
    }
}
