use std::collections::btree_map::{self, BTreeMap, Entry};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use super::term::{Factor, Term};
use super::Variant;
use crate::error::{Error, Result};

/// Weighted sum of product terms of a single operator variant.
///
/// Terms are kept in a sorted map, so iteration order and printing are
/// deterministic. Arithmetic removes only entries whose coefficient becomes
/// exactly zero; anything else is left to [`TermOperator::compress`].
///
/// The `std::ops` impls panic when the two operands have different
/// variants; use the `try_*` methods where that is not known statically.
#[derive(Clone, Debug, PartialEq)]
pub struct TermOperator {
    variant: Variant,
    terms: BTreeMap<Term, Complex64>,
}

impl TermOperator {
    pub fn zero(variant: Variant) -> Self {
        TermOperator {
            variant,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(variant: Variant) -> Self {
        Self::from_canonical(variant, Term::identity(), Complex64::new(1.0, 0.0))
    }

    /// Single-term operator from raw factors, canonicalized for `variant`.
    pub fn from_factors(
        variant: Variant,
        factors: Vec<Factor>,
        coefficient: impl Into<Complex64>,
    ) -> Result<Self> {
        let term = Term::canonical(variant, factors).map_err(Error::InvalidTerm)?;
        Ok(Self::from_canonical(variant, term, coefficient.into()))
    }

    pub(crate) fn from_canonical(variant: Variant, term: Term, coefficient: Complex64) -> Self {
        let mut op = Self::zero(variant);
        op.add_term(term, coefficient);
        op
    }

    /// One single-term operator per stored term, in key order.
    pub fn split_terms(&self) -> Vec<TermOperator> {
        self.terms
            .iter()
            .map(|(t, &c)| Self::from_canonical(self.variant, t.clone(), c))
            .collect()
    }

    /// Single fermionic ladder term; panics only on non-ladder input, which
    /// the signature rules out.
    pub fn fermion(factors: &[(usize, bool)], coefficient: impl Into<Complex64>) -> Self {
        Self::ladder(Variant::Fermion, factors, coefficient)
    }

    pub fn boson(factors: &[(usize, bool)], coefficient: impl Into<Complex64>) -> Self {
        Self::ladder(Variant::Boson, factors, coefficient)
    }

    fn ladder(
        variant: Variant,
        factors: &[(usize, bool)],
        coefficient: impl Into<Complex64>,
    ) -> Self {
        let factors = factors
            .iter()
            .map(|&(mode, raise)| {
                if raise {
                    Factor::raise(mode)
                } else {
                    Factor::lower(mode)
                }
            })
            .collect();
        Self::from_factors(variant, factors, coefficient).expect("ladder factors are valid")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Term, Complex64> {
        self.terms.iter()
    }

    pub fn coefficient(&self, term: &Term) -> Complex64 {
        self.terms.get(term).copied().unwrap_or_default()
    }

    /// Coefficient of the term written in the variant's string grammar.
    pub fn coefficient_of(&self, text: &str) -> Result<Complex64> {
        let term = super::parse::parse_term(self.variant, text)?;
        Ok(self.coefficient(&term))
    }

    /// Highest mode (or qubit) index touched by any term.
    pub fn max_mode(&self) -> Option<usize> {
        self.terms.keys().filter_map(Term::max_mode).max()
    }

    /// Number of modes implied by the highest index (0 for constants).
    pub fn n_modes(&self) -> usize {
        self.max_mode().map_or(0, |m| m + 1)
    }

    pub fn constant(&self) -> Complex64 {
        self.coefficient(&Term::identity())
    }

    /// Adds `coefficient * term` for an already-canonical term.
    pub(crate) fn add_term(&mut self, term: Term, coefficient: Complex64) {
        if coefficient == Complex64::default() {
            return;
        }
        match self.terms.entry(term) {
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
            Entry::Occupied(mut o) => {
                let sum = *o.get() + coefficient;
                if sum == Complex64::default() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_variant(&self, other: &TermOperator) -> Result<()> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch {
                left: self.variant,
                right: other.variant,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &TermOperator) -> Result<TermOperator> {
        self.check_variant(other)?;
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), *c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &TermOperator) -> Result<TermOperator> {
        self.check_variant(other)?;
        let mut out = self.clone();
        for (t, c) in other.terms() {
            out.add_term(t.clone(), -*c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &TermOperator) -> Result<TermOperator> {
        self.check_variant(other)?;
        let mut out = TermOperator::zero(self.variant);
        for (ta, ca) in self.terms() {
            for (tb, cb) in other.terms() {
                let (t, phase) = Term::product(self.variant, ta, tb);
                out.add_term(t, ca * cb * phase);
            }
        }
        Ok(out)
    }

    /// Integer power by repeated multiplication; `pow(0)` is the identity.
    pub fn pow(&self, exponent: u32) -> TermOperator {
        let mut out = TermOperator::identity(self.variant);
        for _ in 0..exponent {
            out = out.try_mul(self).expect("same variant");
        }
        out
    }

    pub fn scale(&self, factor: impl Into<Complex64>) -> TermOperator {
        let factor = factor.into();
        let mut out = TermOperator::zero(self.variant);
        for (t, c) in self.terms() {
            out.add_term(t.clone(), c * factor);
        }
        out
    }

    /// Removes every term with `|coefficient| <= tol`.
    pub fn compress(&self, tol: f64) -> Result<TermOperator> {
        if tol.is_nan() || tol < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "compression tolerance must be non-negative, got {tol}"
            )));
        }
        Ok(TermOperator {
            variant: self.variant,
            terms: self
                .terms
                .iter()
                .filter(|(_, c)| c.norm() > tol)
                .map(|(t, c)| (t.clone(), *c))
                .collect(),
        })
    }

    pub fn hermitian_conjugate(&self) -> TermOperator {
        let mut out = TermOperator::zero(self.variant);
        for (t, c) in self.terms() {
            out.add_term(t.adjoint(self.variant), c.conj());
        }
        out
    }

    /// `self * other - other * self`, normal-ordered for ladder variants.
    pub fn commutator(&self, other: &TermOperator) -> Result<TermOperator> {
        let ab = self.try_mul(other)?;
        let ba = other.try_mul(self)?;
        let diff = ab.try_sub(&ba)?;
        match self.variant {
            Variant::Fermion | Variant::Boson => super::normal::normal_order(&diff),
            _ => Ok(diff),
        }
    }

    /// Largest coefficient magnitude of `self - other`; `None` when the
    /// variants differ.
    pub fn max_difference(&self, other: &TermOperator) -> Option<f64> {
        let diff = self.try_sub(other).ok()?;
        Some(diff.terms().map(|(_, c)| c.norm()).fold(0.0, f64::max))
    }

    /// Term-wise comparison up to `tol` in coefficient magnitude.
    pub fn approx_eq(&self, other: &TermOperator, tol: f64) -> bool {
        self.max_difference(other).is_some_and(|d| d <= tol)
    }

    /// Whether every coefficient is real to within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms().all(|(_, c)| c.im.abs() <= tol)
    }
}

impl fmt::Display for TermOperator {
    /// One `coefficient [term]` per line, joined by ` +`; the zero operator
    /// prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("0");
        }
        for (i, (t, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" +\n")?;
            }
            write!(f, "{} [{t}]", super::parse::format_complex(*c))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a TermOperator> for &'a TermOperator {
    type Output = TermOperator;
    fn add(self, rhs: &'a TermOperator) -> TermOperator {
        self.try_add(rhs).expect("operator variant mismatch")
    }
}

impl Add for TermOperator {
    type Output = TermOperator;
    fn add(self, rhs: TermOperator) -> TermOperator {
        &self + &rhs
    }
}

impl AddAssign<&TermOperator> for TermOperator {
    fn add_assign(&mut self, rhs: &TermOperator) {
        self.check_variant(rhs).expect("operator variant mismatch");
        for (t, c) in rhs.terms() {
            self.add_term(t.clone(), *c);
        }
    }
}

impl AddAssign for TermOperator {
    fn add_assign(&mut self, rhs: TermOperator) {
        self.check_variant(&rhs).expect("operator variant mismatch");
        for (t, c) in rhs.terms {
            self.add_term(t, c);
        }
    }
}

impl<'a> Sub<&'a TermOperator> for &'a TermOperator {
    type Output = TermOperator;
    fn sub(self, rhs: &'a TermOperator) -> TermOperator {
        self.try_sub(rhs).expect("operator variant mismatch")
    }
}

impl Sub for TermOperator {
    type Output = TermOperator;
    fn sub(self, rhs: TermOperator) -> TermOperator {
        &self - &rhs
    }
}

impl SubAssign<&TermOperator> for TermOperator {
    fn sub_assign(&mut self, rhs: &TermOperator) {
        self.check_variant(rhs).expect("operator variant mismatch");
        for (t, c) in rhs.terms() {
            self.add_term(t.clone(), -*c);
        }
    }
}

impl<'a> Mul<&'a TermOperator> for &'a TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: &'a TermOperator) -> TermOperator {
        self.try_mul(rhs).expect("operator variant mismatch")
    }
}

impl Mul for TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: TermOperator) -> TermOperator {
        &self * &rhs
    }
}

impl MulAssign<&TermOperator> for TermOperator {
    fn mul_assign(&mut self, rhs: &TermOperator) {
        *self = &*self * rhs;
    }
}

impl Mul<Complex64> for &TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: Complex64) -> TermOperator {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: Complex64) -> TermOperator {
        self.scale(rhs)
    }
}

impl Mul<f64> for &TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: f64) -> TermOperator {
        self.scale(rhs)
    }
}

impl Mul<f64> for TermOperator {
    type Output = TermOperator;
    fn mul(self, rhs: f64) -> TermOperator {
        self.scale(rhs)
    }
}

impl Mul<TermOperator> for Complex64 {
    type Output = TermOperator;
    fn mul(self, rhs: TermOperator) -> TermOperator {
        rhs.scale(self)
    }
}

impl Mul<TermOperator> for f64 {
    type Output = TermOperator;
    fn mul(self, rhs: TermOperator) -> TermOperator {
        rhs.scale(self)
    }
}

impl Neg for TermOperator {
    type Output = TermOperator;
    fn neg(self) -> TermOperator {
        self.scale(-1.0)
    }
}

impl Neg for &TermOperator {
    type Output = TermOperator;
    fn neg(self) -> TermOperator {
        self.scale(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cross_variant_is_error() {
        let a = TermOperator::identity(Variant::Fermion);
        let b = TermOperator::identity(Variant::Qubit);
        assert!(matches!(a.try_add(&b), Err(Error::VariantMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
        assert!(a.commutator(&b).is_err());
    }

    #[test]
    fn exact_zero_sums_are_dropped() {
        let a = TermOperator::fermion(&[(0, true)], 1.0);
        let z = &a - &a;
        assert!(z.is_empty());
    }

    #[test]
    fn pauli_commutators() {
        let x = TermOperator::parse(Variant::Qubit, "X0", 1.0).unwrap();
        let y = TermOperator::parse(Variant::Qubit, "Y0", 1.0).unwrap();
        let z = TermOperator::parse(Variant::Qubit, "Z0", 1.0).unwrap();
        assert_eq!(
            &x * &y,
            y.scale(0.0).try_add(&z.scale(c(0.0, 1.0))).unwrap()
        );
        assert!(x.commutator(&x).unwrap().is_empty());
        assert_eq!(z.commutator(&x).unwrap(), y.scale(c(0.0, 2.0)));
    }

    #[test]
    fn compress_rules() {
        let op = TermOperator::identity(Variant::Qubit).scale(1e-15);
        assert!(op.compress(1e-12).unwrap().is_empty());
        assert!(op.compress(-1.0).is_err());
        let w = TermOperator::parse(Variant::Fermion, "4^ 3 9 3^", c(1.0, 2.0)).unwrap();
        let once = w.compress(1e-12).unwrap();
        assert_eq!(once.compress(1e-12).unwrap(), once);
    }

    #[test]
    fn adjoint_examples() {
        let a = TermOperator::parse(Variant::Fermion, "4^ 9", c(1.0, 2.0)).unwrap();
        let expected = TermOperator::parse(Variant::Fermion, "9^ 4", c(1.0, -2.0)).unwrap();
        assert_eq!(a.hermitian_conjugate(), expected);
        let id = TermOperator::identity(Variant::Boson);
        assert_eq!(id.hermitian_conjugate(), id);
        let q = TermOperator::parse(Variant::Quad, "q0 p0 q1", 1.0).unwrap();
        assert_eq!(q.hermitian_conjugate().to_string(), "(1.0-0.0j) [p0 q0 q1]");
    }

    #[test]
    fn pow_zero_is_identity() {
        let a = TermOperator::fermion(&[(1, true), (0, false)], 2.0);
        assert_eq!(a.pow(0), TermOperator::identity(Variant::Fermion));
        assert_eq!(a.pow(2), &a * &a);
    }
}
