use std::fmt;

use num_complex::Complex64;

use super::Variant;

/// Single-site operator symbol. Each variant uses a disjoint subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// Ladder lowering (annihilation).
    Lower,
    /// Ladder raising (creation).
    Raise,
    X,
    Y,
    Z,
    /// Position quadrature.
    Q,
    /// Momentum quadrature.
    P,
}

impl Symbol {
    pub fn belongs_to(self, variant: Variant) -> bool {
        match variant {
            Variant::Fermion | Variant::Boson => matches!(self, Symbol::Lower | Symbol::Raise),
            Variant::Qubit => matches!(self, Symbol::X | Symbol::Y | Symbol::Z),
            Variant::Quad => matches!(self, Symbol::Q | Symbol::P),
        }
    }

    pub fn is_raise(self) -> bool {
        self == Symbol::Raise
    }

    pub fn is_lower(self) -> bool {
        self == Symbol::Lower
    }

    /// Adjoint of a ladder symbol; Pauli and quadrature symbols are self-adjoint.
    pub fn adjoint(self) -> Symbol {
        match self {
            Symbol::Lower => Symbol::Raise,
            Symbol::Raise => Symbol::Lower,
            other => other,
        }
    }
}

/// One factor of a product term: a symbol acting on a mode (or qubit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub mode: usize,
    pub symbol: Symbol,
}

impl Factor {
    pub const fn new(mode: usize, symbol: Symbol) -> Self {
        Factor { mode, symbol }
    }

    pub const fn raise(mode: usize) -> Self {
        Factor::new(mode, Symbol::Raise)
    }

    pub const fn lower(mode: usize) -> Self {
        Factor::new(mode, Symbol::Lower)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol {
            Symbol::Lower => write!(f, "{}", self.mode),
            Symbol::Raise => write!(f, "{}^", self.mode),
            Symbol::X => write!(f, "X{}", self.mode),
            Symbol::Y => write!(f, "Y{}", self.mode),
            Symbol::Z => write!(f, "Z{}", self.mode),
            Symbol::Q => write!(f, "q{}", self.mode),
            Symbol::P => write!(f, "p{}", self.mode),
        }
    }
}

/// Ordered product of factors. The empty term is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term(pub(crate) Vec<Factor>);

impl Term {
    pub fn identity() -> Self {
        Term(Vec::new())
    }

    pub fn factors(&self) -> &[Factor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_mode(&self) -> Option<usize> {
        self.0.iter().map(|f| f.mode).max()
    }

    /// Brings a raw factor list into the canonical key form of `variant`.
    ///
    /// Fermion terms are kept verbatim. Boson and quadrature terms are
    /// stably sorted by mode, since distinct modes commute. Qubit terms are
    /// sorted by qubit and must not repeat a qubit.
    pub fn canonical(variant: Variant, mut factors: Vec<Factor>) -> Result<Term, String> {
        if let Some(bad) = factors.iter().find(|f| !f.symbol.belongs_to(variant)) {
            return Err(format!("factor {bad} is not a {variant} factor"));
        }
        match variant {
            Variant::Fermion => {}
            Variant::Boson | Variant::Quad => factors.sort_by_key(|f| f.mode),
            Variant::Qubit => {
                factors.sort_by_key(|f| f.mode);
                if let Some(w) = factors.windows(2).find(|w| w[0].mode == w[1].mode) {
                    return Err(format!("qubit {} appears more than once", w[0].mode));
                }
            }
        }
        Ok(Term(factors))
    }

    /// Product of two canonical terms of the same variant, with the scalar
    /// phase produced by Pauli algebra (always 1 for the other variants).
    pub(crate) fn product(variant: Variant, left: &Term, right: &Term) -> (Term, Complex64) {
        match variant {
            Variant::Fermion => {
                let mut out = Vec::with_capacity(left.len() + right.len());
                out.extend_from_slice(&left.0);
                out.extend_from_slice(&right.0);
                (Term(out), Complex64::new(1.0, 0.0))
            }
            Variant::Boson | Variant::Quad => {
                // Merge two mode-sorted lists; left factors precede right ones
                // within a shared mode.
                let mut out = Vec::with_capacity(left.len() + right.len());
                let (mut i, mut j) = (0, 0);
                while i < left.len() && j < right.len() {
                    if right.0[j].mode < left.0[i].mode {
                        out.push(right.0[j]);
                        j += 1;
                    } else {
                        out.push(left.0[i]);
                        i += 1;
                    }
                }
                out.extend_from_slice(&left.0[i..]);
                out.extend_from_slice(&right.0[j..]);
                (Term(out), Complex64::new(1.0, 0.0))
            }
            Variant::Qubit => pauli_product(left, right),
        }
    }

    /// Adjoint term (without the coefficient conjugation).
    pub(crate) fn adjoint(&self, variant: Variant) -> Term {
        match variant {
            Variant::Qubit => self.clone(),
            _ => {
                let reversed = self
                    .0
                    .iter()
                    .rev()
                    .map(|f| Factor::new(f.mode, f.symbol.adjoint()))
                    .collect();
                Term::canonical(variant, reversed).expect("adjoint preserves the variant")
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl From<Vec<Factor>> for Term {
    fn from(factors: Vec<Factor>) -> Self {
        Term(factors)
    }
}

/// Single-qubit Pauli product `a * b = phase * c` (identity encoded as `None`).
fn pauli_pair(a: Symbol, b: Symbol) -> (Option<Symbol>, Complex64) {
    use Symbol::{X, Y, Z};
    let i = Complex64::new(0.0, 1.0);
    match (a, b) {
        _ if a == b => (None, Complex64::new(1.0, 0.0)),
        (X, Y) => (Some(Z), i),
        (Y, X) => (Some(Z), -i),
        (Y, Z) => (Some(X), i),
        (Z, Y) => (Some(X), -i),
        (Z, X) => (Some(Y), i),
        (X, Z) => (Some(Y), -i),
        _ => unreachable!("non-Pauli symbol in qubit term"),
    }
}

fn pauli_product(left: &Term, right: &Term) -> (Term, Complex64) {
    let mut out = Vec::with_capacity(left.len() + right.len());
    let mut phase = Complex64::new(1.0, 0.0);
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        let (a, b) = (left.0[i], right.0[j]);
        if a.mode < b.mode {
            out.push(a);
            i += 1;
        } else if b.mode < a.mode {
            out.push(b);
            j += 1;
        } else {
            let (sym, p) = pauli_pair(a.symbol, b.symbol);
            phase *= p;
            if let Some(symbol) = sym {
                out.push(Factor::new(a.mode, symbol));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&left.0[i..]);
    out.extend_from_slice(&right.0[j..]);
    (Term(out), phase)
}
