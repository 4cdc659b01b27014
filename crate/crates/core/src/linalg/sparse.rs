use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ops::{Symbol, TermOperator, Variant};
use crate::transforms::jordan_wigner;

/// Default qubit limit for [`to_sparse`].
pub const DEFAULT_QUBIT_LIMIT: usize = 16;

/// Square complex matrix in compressed sparse row form, of dimension `2^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    n_qubits: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    data: Vec<Complex64>,
}

impl SparseMatrix {
    /// Builds a matrix from unsorted triplets; duplicates are summed and
    /// exact zeros dropped.
    pub fn from_triplets(
        n_qubits: usize,
        triplets: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let dim = 1usize << n_qubits;
        let mut rows: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in triplets {
            assert!(
                r < dim && c < dim,
                "triplet ({r}, {c}) outside dimension {dim}"
            );
            *rows[r].entry(c).or_default() += v;
        }
        Self::from_rows(n_qubits, rows)
    }

    fn from_rows(n_qubits: usize, rows: Vec<BTreeMap<usize, Complex64>>) -> Self {
        let mut indptr = Vec::with_capacity(rows.len() + 1);
        let mut indices = Vec::new();
        let mut data = Vec::new();
        indptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v != Complex64::default() {
                    indices.push(c);
                    data.push(v);
                }
            }
            indptr.push(indices.len());
        }
        SparseMatrix {
            n_qubits,
            indptr,
            indices,
            data,
        }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        SparseMatrix {
            n_qubits,
            indptr: (0..=dim).collect(),
            indices: (0..dim).collect(),
            data: vec![Complex64::new(1.0, 0.0); dim],
        }
    }

    /// Converts a dense matrix, dropping entries with magnitude `<= tol`.
    pub fn from_dense(m: &DMatrix<Complex64>, tol: f64) -> Result<Self> {
        let dim = m.nrows();
        if m.ncols() != dim || !dim.is_power_of_two() {
            return Err(Error::DimensionMismatch(format!(
                "expected a square power-of-two matrix, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        let triplets = (0..dim)
            .flat_map(|r| (0..dim).map(move |c| (r, c)))
            .filter_map(|(r, c)| {
                let v = m[(r, c)];
                (v.norm() > tol).then_some((r, c, v))
            });
        Ok(Self::from_triplets(n_qubits, triplets))
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1usize << self.n_qubits
    }

    pub fn nnz(&self) -> usize {
        self.data.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        let span = self.indptr[row]..self.indptr[row + 1];
        match self.indices[span.clone()].binary_search(&col) {
            Ok(k) => self.data[span.start + k],
            Err(_) => Complex64::default(),
        }
    }

    /// Iterates over stored `(row, col, value)` entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, Complex64)> + '_ {
        (0..self.dim()).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.data[k]))
        })
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(
            v.len(),
            self.dim(),
            "vector length does not match matrix dimension"
        );
        (0..self.dim())
            .map(|r| {
                (self.indptr[r]..self.indptr[r + 1])
                    .map(|k| self.data[k] * v[self.indices[k]])
                    .sum()
            })
            .collect()
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim(), self.dim());
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    fn check_same_shape(&self, other: &SparseMatrix) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} qubits vs {} qubits",
                self.n_qubits, other.n_qubits
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other)?;
        Ok(Self::from_triplets(
            self.n_qubits,
            self.iter().chain(other.iter()),
        ))
    }

    pub fn scale(&self, factor: Complex64) -> SparseMatrix {
        let mut out = self.clone();
        out.data.iter_mut().for_each(|v| *v *= factor);
        out
    }

    pub fn matmul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.check_same_shape(other)?;
        let dim = self.dim();
        let mut rows = Vec::with_capacity(dim);
        for r in 0..dim {
            let mut row: BTreeMap<usize, Complex64> = BTreeMap::new();
            for k in self.indptr[r]..self.indptr[r + 1] {
                let (mid, a) = (self.indices[k], self.data[k]);
                for l in other.indptr[mid]..other.indptr[mid + 1] {
                    *row.entry(other.indices[l]).or_default() += a * other.data[l];
                }
            }
            rows.push(row);
        }
        Ok(Self::from_rows(self.n_qubits, rows))
    }

    pub fn adjoint(&self) -> SparseMatrix {
        Self::from_triplets(self.n_qubits, self.iter().map(|(r, c, v)| (c, r, v.conj())))
    }

    /// Largest entry magnitude of `self − self†`.
    pub fn hermiticity_deviation(&self) -> f64 {
        self.iter()
            .map(|(r, c, v)| (v - self.get(c, r).conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Largest entry magnitude of `self − other`.
    pub fn max_difference(&self, other: &SparseMatrix) -> Result<f64> {
        let diff = self.add(&other.scale(Complex64::new(-1.0, 0.0)))?;
        Ok(diff.data.iter().map(|v| v.norm()).fold(0.0, f64::max))
    }
}

/// Matrix of a qubit or fermion operator (fermions go through Jordan-Wigner)
/// on `n_qubits` qubits, or on as many as the operator touches. Qubit 0 is
/// the most significant bit of the basis index.
pub fn to_sparse(op: &TermOperator, n_qubits: Option<usize>) -> Result<SparseMatrix> {
    to_sparse_with_limit(op, n_qubits, DEFAULT_QUBIT_LIMIT)
}

pub fn to_sparse_with_limit(
    op: &TermOperator,
    n_qubits: Option<usize>,
    limit: usize,
) -> Result<SparseMatrix> {
    let qubit_op;
    let op = match op.variant() {
        Variant::Qubit => op,
        Variant::Fermion => {
            qubit_op = jordan_wigner(op)?;
            &qubit_op
        }
        variant => {
            return Err(Error::UnsupportedVariant {
                variant,
                operation: "sparse matrix construction",
            })
        }
    };
    let needed = op.n_modes();
    let n = n_qubits.unwrap_or(needed);
    if n < needed {
        return Err(Error::InvalidArgument(format!(
            "operator acts on {needed} qubits but only {n} were requested"
        )));
    }
    if n > limit {
        return Err(Error::SizeLimit {
            what: "qubit count",
            value: n,
            limit,
        });
    }

    // Terms sharing an X/Y flip mask land on the same row for each column.
    let mut groups: BTreeMap<usize, Vec<(usize, Complex64)>> = BTreeMap::new();
    for (term, coeff) in op.terms() {
        let (mut flip, mut zmask, mut ny) = (0usize, 0usize, 0u32);
        for f in term.factors() {
            let bit = 1usize << (n - 1 - f.mode);
            match f.symbol {
                Symbol::X => flip |= bit,
                Symbol::Y => {
                    flip |= bit;
                    zmask |= bit;
                    ny += 1;
                }
                Symbol::Z => zmask |= bit,
                _ => unreachable!("non-Pauli factor in qubit operator"),
            }
        }
        // Y = i·X·Z acting on the column bit.
        let phase = Complex64::new(0.0, 1.0).powu(ny) * coeff;
        groups.entry(flip).or_default().push((zmask, phase));
    }
    let dim = 1usize << n;
    let mut rows: Vec<BTreeMap<usize, Complex64>> = vec![BTreeMap::new(); dim];
    for (&flip, terms) in &groups {
        for col in 0..dim {
            let v: Complex64 = terms
                .iter()
                .map(|&(zmask, c)| {
                    if (col & zmask).count_ones() % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .sum();
            if v != Complex64::default() {
                *rows[col ^ flip].entry(col).or_default() += v;
            }
        }
    }
    Ok(SparseMatrix::from_rows(n, rows))
}

/// Matrix of a single ladder operator `a_p` or `a_p†` on `n` modes under
/// Jordan-Wigner, built directly from occupation bits.
pub fn ladder_matrix(n: usize, mode: usize, raise: bool) -> SparseMatrix {
    assert!(mode < n, "mode {mode} outside {n} modes");
    let bit = 1usize << (n - 1 - mode);
    let above = !((bit << 1).wrapping_sub(1));
    let triplets = (0..1usize << n).filter_map(|col| {
        let occupied = col & bit != 0;
        if occupied == raise {
            return None;
        }
        let sign = if (col & above).count_ones() % 2 == 1 {
            -1.0
        } else {
            1.0
        };
        Some((col ^ bit, col, Complex64::new(sign, 0.0)))
    });
    SparseMatrix::from_triplets(n, triplets)
}

/// `⟨state|m|state⟩` for a normalized state.
pub fn expectation(m: &SparseMatrix, state: &[Complex64]) -> Result<Complex64> {
    if state.len() != m.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has length {} but the matrix has dimension {}",
            state.len(),
            m.dim()
        )));
    }
    check_normalized(state)?;
    let mv = m.matvec(state);
    Ok(state.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum())
}

pub(crate) fn check_normalized(state: &[Complex64]) -> Result<()> {
    let norm = state.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn qubit(text: &str, coeff: f64) -> TermOperator {
        TermOperator::parse(Variant::Qubit, text, coeff).unwrap()
    }

    #[test]
    fn z_on_one_qubit() {
        let m = to_sparse(&qubit("Z0", 1.0), None).unwrap();
        assert_eq!(
            m.to_dense(),
            DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
        );
    }

    #[test]
    fn xx_is_antidiagonal() {
        let m = to_sparse(&qubit("X0 X1", 1.0), None).unwrap();
        for r in 0..4 {
            for col in 0..4 {
                assert_eq!(m.get(r, col), c(if r + col == 3 { 1.0 } else { 0.0 }));
            }
        }
    }

    #[test]
    fn qubit_zero_is_most_significant() {
        // X on qubit 0 of two maps |00> (index 0) to |10> (index 2).
        let m = to_sparse(&qubit("X0", 1.0), Some(2)).unwrap();
        assert_eq!(m.get(2, 0), c(1.0));
        let y = to_sparse(&qubit("Y0", 1.0), None).unwrap();
        assert_eq!(y.get(1, 0), Complex64::new(0.0, 1.0));
        assert_eq!(y.get(0, 1), Complex64::new(0.0, -1.0));
    }

    #[test]
    fn ladder_matrices_match_jordan_wigner() {
        for mode in 0..3 {
            for raise in [false, true] {
                let op = TermOperator::fermion(&[(mode, raise)], 1.0);
                let via_jw = to_sparse(&op, Some(3)).unwrap();
                assert_eq!(
                    via_jw
                        .max_difference(&ladder_matrix(3, mode, raise))
                        .unwrap(),
                    0.0
                );
            }
        }
    }

    #[test]
    fn limits_and_variants() {
        assert!(matches!(
            to_sparse_with_limit(&qubit("Z5", 1.0), None, 4),
            Err(Error::SizeLimit { .. })
        ));
        let b = TermOperator::boson(&[(0, true)], 1.0);
        assert!(matches!(
            to_sparse(&b, None),
            Err(Error::UnsupportedVariant { .. })
        ));
        assert!(to_sparse(&qubit("Z3", 1.0), Some(2)).is_err());
    }

    #[test]
    fn expectation_values() {
        let z = to_sparse(&qubit("Z0", 1.0), None).unwrap();
        let x = to_sparse(&qubit("X0", 1.0), None).unwrap();
        let zero = [c(1.0), c(0.0)];
        assert_eq!(expectation(&z, &zero).unwrap(), c(1.0));
        assert_eq!(expectation(&x, &zero).unwrap(), c(0.0));
        assert!(expectation(&z, &[c(1.0)]).is_err());
        assert!(matches!(
            expectation(&z, &[c(1.0), c(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
    }
}
