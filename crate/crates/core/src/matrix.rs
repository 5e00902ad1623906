//! Dense square matrices over Gaussian rationals.

use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::SparseRow;
use crate::scalar::Scalar;

/// A `dim × dim` matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, entries: vec![Scalar::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(AlgebraError::Shape("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(AlgebraError::Shape(format!(
                    "row {i} has {} entries, expected {dim}",
                    row.len()
                )));
            }
            entries.extend(row);
        }
        Ok(Self { dim, entries })
    }

    /// Convenience constructor from small integers (real parts only).
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect()).collect();
        Self::from_rows(rows).expect("square integer matrix")
    }

    pub fn diag(values: &[Scalar]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.entries[i * values.len() + i] = v.clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().filter(|e| !e.is_zero()).count()
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                out.entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        out
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_normal(&self) -> bool {
        let a = self.adjoint();
        self.mul(&a) == a.mul(self)
    }

    /// Describes how far the matrix is from an orthogonal projection:
    /// `P²−P` when it is not idempotent, otherwise `P−P†`.
    pub fn projection_residual(&self) -> String {
        if !self.is_idempotent() {
            format!("P²−P = {:?}", self.mul(self).sub(self))
        } else {
            format!("P−P† = {:?}", self.sub(&self.adjoint()))
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Matrix product, skipping zero entries on both sides.
    pub fn mul(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &rhs.entries[k * d + j];
                    if b.is_zero() {
                        continue;
                    }
                    out.entries[i * d + j] += &(a * b);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Mat { dim: self.dim, entries }
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.dim, rhs.dim, "matrix dimension mismatch");
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect();
        Mat { dim: self.dim, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let entries = self.entries.iter().map(|a| a * s).collect();
        Mat { dim: self.dim, entries }
    }

    /// `self - s·I`
    pub fn shift(&self, s: &Scalar) -> Mat {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.entries[i * self.dim + i] -= s;
        }
        out
    }

    pub fn commutator(&self, rhs: &Mat) -> Mat {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn commutes_with(&self, rhs: &Mat) -> bool {
        self.mul(rhs) == rhs.mul(self)
    }

    pub fn trace(&self) -> Scalar {
        let mut t = Scalar::zero();
        for i in 0..self.dim {
            t += &self.entries[i * self.dim + i];
        }
        t
    }

    /// `tr(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Mat) -> Scalar {
        let d = self.dim;
        let mut t = Scalar::zero();
        for i in 0..d {
            for j in 0..d {
                let a = &self.entries[i * d + j];
                if a.is_zero() {
                    continue;
                }
                let b = &rhs.entries[j * d + i];
                if !b.is_zero() {
                    t += &(a * b);
                }
            }
        }
        t
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Mat) -> Mat {
        let (m, n) = (self.dim, rhs.dim);
        let d = m * n;
        let mut out = Mat::zeros(d);
        for i in 0..m {
            for j in 0..m {
                let a = &self.entries[i * m + j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..n {
                    for l in 0..n {
                        let b = &rhs.entries[k * n + l];
                        if !b.is_zero() {
                            out.entries[(i * n + k) * d + (j * n + l)] = a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Mat> {
        let d = self.dim;
        let mut a = self.clone();
        let mut inv = Mat::identity(d);
        for col in 0..d {
            let pivot = (col..d).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..d {
                    a.entries.swap(pivot * d + j, col * d + j);
                    inv.entries.swap(pivot * d + j, col * d + j);
                }
            }
            let p = a.get(col, col).inv()?;
            for j in 0..d {
                a.entries[col * d + j] = &a.entries[col * d + j] * &p;
                inv.entries[col * d + j] = &inv.entries[col * d + j] * &p;
            }
            for r in 0..d {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..d {
                    let da = &factor * &a.entries[col * d + j];
                    let di = &factor * &inv.entries[col * d + j];
                    a.entries[r * d + j] -= &da;
                    inv.entries[r * d + j] -= &di;
                }
            }
        }
        Some(inv)
    }

    /// Row-major complex coordinates as a sparse vector.
    pub fn to_sparse(&self) -> SparseRow {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(i, e)| (i, e.clone()))
            .collect()
    }

    pub fn from_sparse(dim: usize, row: &SparseRow) -> Mat {
        let mut m = Mat::zeros(dim);
        for (i, v) in row {
            m.entries[*i] = v.clone();
        }
        m
    }

    /// Outer product `v v† / (v† v)`: the orthogonal projection onto `v`.
    pub fn projector_onto(v: &[Scalar]) -> Result<Mat, AlgebraError> {
        let d = v.len();
        let norm: Scalar = v.iter().fold(Scalar::zero(), |acc, x| &acc + &(x * &x.conj()));
        let inv = norm.inv().ok_or_else(|| AlgebraError::Shape("zero vector".into()))?;
        let mut m = Mat::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.entries[i * d + j] = &(&v[i] * &v[j].conj()) * &inv;
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.dim {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// Standard single-qubit matrices.
pub mod pauli {
    use super::Mat;
    use crate::scalar::Scalar;

    pub fn id() -> Mat {
        Mat::identity(2)
    }

    pub fn x() -> Mat {
        Mat::from_ints(&[&[0, 1], &[1, 0]])
    }

    pub fn y() -> Mat {
        Mat::from_rows(vec![
            vec![Scalar::zero(), -Scalar::i()],
            vec![Scalar::i(), Scalar::zero()],
        ])
        .unwrap()
    }

    pub fn z() -> Mat {
        Mat::from_ints(&[&[1, 0], &[0, -1]])
    }

    /// Embeds a single-site operator at position `site` of a chain of qubits.
    pub fn at(op: &Mat, site: usize, sites: usize) -> Mat {
        (0..sites).fold(Mat::identity(1), |acc, k| {
            if k == site {
                acc.kron(op)
            } else {
                acc.kron(&id())
            }
        })
    }
}
