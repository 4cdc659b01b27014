use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{eigh, expm, to_sparse, SparseMatrix};
use crate::ops::{normal_order, TermOperator, Variant};
use crate::transforms::jordan_wigner;

pub const TROTTER_MODE_LIMIT: usize = 10;

/// Hamiltonian split into Hermitian pieces `H = Σ_ℓ H_ℓ`.
///
/// Each piece is one normal-ordered term together with its Hermitian
/// conjugate (a single term when it is its own adjoint), so every
/// `exp(−i H_ℓ t)` is unitary. Pieces are ordered by their smallest term
/// key.
#[derive(Clone, Debug, PartialEq)]
pub struct TermSequence {
    variant: Variant,
    pieces: Vec<TermOperator>,
}

impl TermSequence {
    pub fn from_operator(op: &TermOperator) -> Result<Self> {
        let ordered = match op.variant() {
            Variant::Fermion | Variant::Boson => normal_order(op)?,
            _ => op.clone(),
        };
        let mut pieces: Vec<TermOperator> = Vec::new();
        let mut taken = std::collections::BTreeSet::new();
        for (term, &c) in ordered.terms() {
            if taken.contains(term) {
                continue;
            }
            taken.insert(term.clone());
            let mut piece = TermOperator::from_canonical(ordered.variant(), term.clone(), c);
            let adjoint = normal_order_single(&piece.hermitian_conjugate())?;
            if let Some((adj_term, _)) = adjoint.terms().next() {
                if adjoint.len() == 1 && adj_term != term && !taken.contains(adj_term) {
                    let adj_c = ordered.coefficient(adj_term);
                    if adj_c != Complex64::default() {
                        taken.insert(adj_term.clone());
                        piece += TermOperator::from_canonical(
                            ordered.variant(),
                            adj_term.clone(),
                            adj_c,
                        );
                    }
                }
            }
            pieces.push(piece);
        }
        Ok(TermSequence {
            variant: ordered.variant(),
            pieces,
        })
    }

    /// Uses `pieces` in the given order without regrouping.
    pub fn from_pieces(pieces: Vec<TermOperator>) -> Result<Self> {
        let variant = pieces.first().map_or(Variant::Fermion, |p| p.variant());
        if let Some(bad) = pieces.iter().find(|p| p.variant() != variant) {
            return Err(Error::VariantMismatch {
                left: variant,
                right: bad.variant(),
            });
        }
        Ok(TermSequence { variant, pieces })
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn pieces(&self) -> &[TermOperator] {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn sum(&self) -> TermOperator {
        let mut total = TermOperator::zero(self.variant);
        for p in &self.pieces {
            total += p.clone();
        }
        total
    }

    pub fn n_modes(&self) -> usize {
        self.pieces.iter().map(|p| p.n_modes()).max().unwrap_or(0)
    }
}

fn normal_order_single(op: &TermOperator) -> Result<TermOperator> {
    match op.variant() {
        Variant::Fermion | Variant::Boson => normal_order(op),
        _ => Ok(op.clone()),
    }
}

/// Leading Trotter error operator of a second-order step,
/// `V = (1/12) Σ_{α≤β} Σ_{γ<β} [H_α(1 − δ_αβ/2), [H_β, H_γ]]`,
/// normal-ordered and compressed at 1e-12.
///
/// The sign is fixed so that the step built by
/// [`second_order_trotter_dense`] evolves under `H + dt²·V + O(dt⁴)`.
///
/// The sums over `α` and `γ` are prefix sums, so each `β` costs two
/// commutators. `β` values are evaluated in parallel and merged in order.
pub fn trotter_error_v1(seq: &TermSequence) -> Result<TermOperator> {
    if seq.variant != Variant::Fermion {
        return Err(Error::UnsupportedVariant {
            variant: seq.variant,
            operation: "trotter_error_v1",
        });
    }
    let mut prefix = Vec::with_capacity(seq.len() + 1);
    let mut running = TermOperator::zero(Variant::Fermion);
    prefix.push(running.clone());
    for p in &seq.pieces {
        running += p.clone();
        prefix.push(running.clone());
    }
    let partials: Vec<TermOperator> = (1..seq.len())
        .into_par_iter()
        .map(|beta| {
            let h_beta = &seq.pieces[beta];
            let inner = h_beta.commutator(&prefix[beta])?;
            if inner.is_empty() {
                return Ok(inner);
            }
            let outer_left = prefix[beta + 1].try_sub(&h_beta.scale(0.5))?;
            outer_left.commutator(&inner)
        })
        .collect::<Result<_>>()?;
    let mut total = TermOperator::zero(Variant::Fermion);
    for part in partials {
        total += part;
    }
    total.scale(1.0 / 12.0).compress(1e-12)
}

/// Dense second-order Trotter step in the Jordan-Wigner basis. Written
/// as a matrix product it is `∏_{ℓ=L..1} exp(−i H_ℓ dt/2) · ∏_{ℓ=1..L}
/// exp(−i H_ℓ dt/2)`, so `H_L` is applied first and last and `H_1` sits
/// in the middle.
pub fn second_order_trotter_dense(seq: &TermSequence, dt: f64) -> Result<DMatrix<Complex64>> {
    let n = seq.n_modes();
    if n > TROTTER_MODE_LIMIT {
        return Err(Error::SizeLimit {
            what: "Trotter step mode count",
            value: n,
            limit: TROTTER_MODE_LIMIT,
        });
    }
    let dim = 1usize << n;
    let halves: Vec<HalfStep> = seq
        .pieces
        .par_iter()
        .map(|piece| {
            let qubit = match piece.variant() {
                Variant::Fermion => jordan_wigner(piece)?,
                Variant::Qubit => piece.clone(),
                other => {
                    return Err(Error::UnsupportedVariant {
                        variant: other,
                        operation: "second_order_trotter_unitary",
                    })
                }
            };
            HalfStep::new(&qubit, n, 0.5 * dt)
        })
        .collect::<Result<_>>()?;
    // Left-multiply the identity, starting from the rightmost factor.
    let mut u = DMatrix::<Complex64>::identity(dim, dim);
    for h in halves.iter().rev().chain(halves.iter()).rev() {
        h.apply_left(&mut u);
    }
    Ok(u)
}

/// `exp(−i H t)` for one piece. A Hermitian sum of mutually commuting
/// Pauli strings is a product of `cos(ct) I − i sin(ct) P`; anything else
/// is exponentiated densely.
enum HalfStep {
    Paulis {
        identity_phase: Complex64,
        factors: Vec<(f64, SparseMatrix)>,
    },
    Dense(DMatrix<Complex64>),
}

impl HalfStep {
    fn new(qubit: &TermOperator, n: usize, t: f64) -> Result<Self> {
        let terms: Vec<_> = qubit.terms().collect();
        let real = terms.iter().all(|(_, c)| c.im.abs() <= 1e-14);
        let commuting = terms.iter().enumerate().all(|(i, (a, _))| {
            terms[i + 1..]
                .iter()
                .all(|(b, _)| paulis_commute(a.factors(), b.factors()))
        });
        if real && commuting {
            let mut identity_phase = Complex64::new(1.0, 0.0);
            let mut factors = Vec::new();
            for (term, c) in terms {
                let angle = c.re * t;
                if term.is_empty() {
                    identity_phase *= Complex64::from_polar(1.0, -angle);
                } else {
                    let single = TermOperator::from_canonical(
                        Variant::Qubit,
                        term.clone(),
                        Complex64::new(1.0, 0.0),
                    );
                    factors.push((angle, to_sparse(&single, Some(n))?));
                }
            }
            return Ok(HalfStep::Paulis {
                identity_phase,
                factors,
            });
        }
        let h = to_sparse(qubit, Some(n))?.to_dense();
        Ok(HalfStep::Dense(expm(&(h * Complex64::new(0.0, -t)))))
    }

    fn apply_left(&self, u: &mut DMatrix<Complex64>) {
        match self {
            HalfStep::Dense(m) => *u = m * &*u,
            HalfStep::Paulis {
                identity_phase,
                factors,
            } => {
                for (angle, p) in factors {
                    let (s, c) = angle.sin_cos();
                    let minus_is = Complex64::new(0.0, -s);
                    for mut col in u.column_iter_mut() {
                        let v: Vec<Complex64> = col.iter().copied().collect();
                        let pv = p.matvec(&v);
                        for (x, (orig, px)) in col.iter_mut().zip(v.iter().zip(pv)) {
                            *x = orig * c + minus_is * px;
                        }
                    }
                }
                if *identity_phase != Complex64::new(1.0, 0.0) {
                    *u *= *identity_phase;
                }
            }
        }
    }
}

/// Two Pauli strings commute when they differ on an even number of shared
/// qubits.
fn paulis_commute(a: &[crate::ops::Factor], b: &[crate::ops::Factor]) -> bool {
    let mut clashes = 0;
    for fa in a {
        if let Some(fb) = b.iter().find(|fb| fb.mode == fa.mode) {
            if fb.symbol != fa.symbol {
                clashes += 1;
            }
        }
    }
    clashes % 2 == 0
}

pub fn second_order_trotter_unitary(seq: &TermSequence, dt: f64) -> Result<SparseMatrix> {
    SparseMatrix::from_dense(&second_order_trotter_dense(seq, dt)?, 0.0)
}

/// `H_eff` with `U = exp(−i H_eff dt)`, from `sin(H_eff dt) = i(U − U†)/2`.
/// Valid while every eigenphase of `U` lies in `(−π/2, π/2)`.
pub fn effective_hamiltonian(u: &DMatrix<Complex64>, dt: f64) -> Result<DMatrix<Complex64>> {
    if dt == 0.0 {
        return Err(Error::InvalidArgument("time step must be non-zero".into()));
    }
    let i = Complex64::new(0.0, 1.0);
    let g = (u - u.adjoint()) * (0.5 * i);
    let (values, vectors) = eigh(&g);
    if values.iter().any(|v| v.abs() >= 1.0 - 1e-12) {
        return Err(Error::Numerical(
            "eigenphase outside the principal arcsine range".into(),
        ));
    }
    let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        values.len(),
        values.iter().map(|v| Complex64::new(v.asin() / dt, 0.0)),
    ));
    Ok(&vectors * phases * vectors.adjoint())
}
