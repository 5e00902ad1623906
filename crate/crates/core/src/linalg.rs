//! Exact sparse linear algebra over ℚ(i): reduced row echelon forms,
//! subspace membership, intersections and null spaces.

use crate::scalar::Scalar;

/// A sparse vector: `(coordinate, value)` pairs, strictly increasing in the
/// coordinate, no explicit zeros.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `acc += factor · row`, both sorted sparse vectors.
fn axpy(acc: &SparseRow, factor: &Scalar, row: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(acc.len() + row.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < row.len() {
        let take_acc = j >= row.len() || (i < acc.len() && acc[i].0 < row[j].0);
        let take_row = i >= acc.len() || (j < row.len() && row[j].0 < acc[i].0);
        if take_acc {
            out.push(acc[i].clone());
            i += 1;
        } else if take_row {
            out.push((row[j].0, factor * &row[j].1));
            j += 1;
        } else {
            let v = &acc[i].1 + &(factor * &row[j].1);
            if !v.is_zero() {
                out.push((acc[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn scale_row(row: &SparseRow, s: &Scalar) -> SparseRow {
    row.iter().map(|(c, v)| (*c, v * s)).collect()
}

fn entry(row: &SparseRow, col: usize) -> Option<&Scalar> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

/// Reduced row echelon basis of a subspace of `ℚ(i)^ncols`.
///
/// Rows are sorted by pivot column, every pivot is 1 and every pivot column is
/// zero in all other rows. The form is unique for a given subspace, so two
/// echelons are equal iff they span the same subspace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new() }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseRow>>(ncols: usize, rows: I) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    fn pivot_row(&self, col: usize) -> Option<usize> {
        self.rows.binary_search_by_key(&col, |r| r[0].0).ok()
    }

    /// Residual of `v` modulo the span: `v − Σ v[pivot_k]·row_k`.
    ///
    /// Coefficients can be read off `v` directly because each row vanishes on
    /// every other row's pivot column.
    pub fn reduce(&self, v: &SparseRow) -> SparseRow {
        let mut acc = v.clone();
        for (col, val) in v {
            if let Some(k) = self.pivot_row(*col) {
                acc = axpy(&acc, &(-val), &self.rows[k]);
            }
        }
        acc
    }

    pub fn contains(&self, v: &SparseRow) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span. Returns `false` if it was already contained.
    pub fn insert(&mut self, v: SparseRow) -> bool {
        debug_assert!(v.iter().all(|(c, _)| *c < self.ncols));
        let r = self.reduce(&v);
        if r.is_empty() {
            return false;
        }
        let (pcol, lead) = (r[0].0, r[0].1.clone());
        let r = if lead.is_one() { r } else { scale_row(&r, &lead.inv().unwrap()) };
        for row in &mut self.rows {
            if let Some(f) = entry(row, pcol).cloned() {
                *row = axpy(row, &(-f), &r);
            }
        }
        let pos = self.rows.partition_point(|row| row[0].0 < pcol);
        self.rows.insert(pos, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Echelon) -> bool {
        self.rank() <= other.rank() && self.rows.iter().all(|r| other.contains(r))
    }

    /// Basis of `span(self) ∩ span(other)`.
    ///
    /// Reduces each basis vector of `self` modulo `other` and finds the linear
    /// relations among the residuals; each relation is a vector of the
    /// intersection.
    pub fn intersect(&self, other: &Echelon) -> Echelon {
        assert_eq!(self.ncols, other.ncols, "ambient mismatch in intersection");
        let n = self.ncols;
        let k = self.rows.len();
        let mut aug = Echelon::new(n + k);
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = other.reduce(row);
            r.push((n + i, Scalar::one()));
            aug.insert(r);
        }
        let mut out = Echelon::new(n);
        for row in &aug.rows {
            if row[0].0 < n {
                continue;
            }
            let mut v = SparseRow::new();
            for (c, coeff) in row {
                v = axpy(&v, coeff, &self.rows[c - n]);
            }
            out.insert(v);
        }
        out
    }

    /// Basis of the solution space `{x : row·x = 0 for every row}` where the
    /// rows of `self` are read as linear equations.
    pub fn nullspace(&self) -> Vec<SparseRow> {
        let pivots: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        let mut basis = Vec::new();
        for free in 0..self.ncols {
            if pivots.binary_search(&free).is_ok() {
                continue;
            }
            let mut v: SparseRow = Vec::new();
            for row in &self.rows {
                if let Some(val) = entry(row, free) {
                    v.push((row[0].0, -val));
                }
            }
            v.push((free, Scalar::one()));
            v.sort_by_key(|(c, _)| *c);
            basis.push(v);
        }
        basis
    }
}
