//! Unital *-subalgebras of a full matrix algebra `M_d`, stored as canonical
//! linear spans, plus declared generators with exact spectral calculus.

use std::fmt;

use crate::error::AlgebraError;
use crate::linalg::{Echelon, SparseRow};
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// A linear subspace of `M_d` in reduced echelon form over the `d²` row-major
/// complex coordinates. When produced by this module it is always a unital
/// *-subalgebra, and equal subalgebras have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraSpan {
    ambient_dim: usize,
    echelon: Echelon,
}

impl AlgebraSpan {
    /// `span{I}`
    pub fn scalars(d: usize) -> Self {
        Self::from_span(d, &[Mat::identity(d)])
    }

    /// The full matrix algebra `M_d`.
    pub fn full(d: usize) -> Self {
        let rows = (0..d * d).map(|i| vec![(i, Scalar::one())]);
        Self { ambient_dim: d, echelon: Echelon::from_rows(d * d, rows) }
    }

    /// Linear span of the given matrices, with no closure applied. Callers are
    /// responsible for the result being an algebra.
    pub(crate) fn from_span(d: usize, mats: &[Mat]) -> Self {
        Self { ambient_dim: d, echelon: Echelon::from_rows(d * d, mats.iter().map(Mat::to_sparse)) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Linear (complex) dimension.
    pub fn dimension(&self) -> usize {
        self.echelon.rank()
    }

    pub fn echelon(&self) -> &Echelon {
        &self.echelon
    }

    pub fn basis(&self) -> Vec<Mat> {
        self.echelon.rows().iter().map(|r| Mat::from_sparse(self.ambient_dim, r)).collect()
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.dim() == self.ambient_dim && self.echelon.contains(&m.to_sparse())
    }

    pub fn contains_sparse(&self, v: &SparseRow) -> bool {
        self.echelon.contains(v)
    }

    pub fn is_subalgebra_of(&self, other: &AlgebraSpan) -> bool {
        self.ambient_dim == other.ambient_dim && self.echelon.is_subspace_of(&other.echelon)
    }

    pub fn is_trivial(&self) -> bool {
        self.dimension() == 1
    }

    fn check_same(&self, other: &AlgebraSpan) -> Result<(), AlgebraError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraSpan(d={}, dim={})", self.ambient_dim, self.dimension())
    }
}

/// Smallest unital *-subalgebra of `M_d` containing `gens`.
///
/// Breadth-first over words: the span is seeded with `I`, and every newly
/// independent element is multiplied on the left by each generator and each
/// generator's adjoint. The span stops growing exactly when it is invariant
/// under left multiplication by the seeds, at which point it contains every
/// word and is therefore the generated algebra.
pub fn generate_subalgebra(d: usize, gens: &[Mat]) -> Result<AlgebraSpan, AlgebraError> {
    for g in gens {
        if g.dim() != d {
            return Err(AlgebraError::DimensionMismatch { expected: d, found: g.dim() });
        }
    }
    let mut seeds: Vec<Mat> = Vec::new();
    let mut seen = Echelon::new(d * d);
    for g in gens {
        for s in [g.clone(), g.adjoint()] {
            if seen.insert(s.to_sparse()) {
                seeds.push(s);
            }
        }
    }
    let mut echelon = Echelon::new(d * d);
    let id = Mat::identity(d);
    echelon.insert(id.to_sparse());
    let mut frontier = vec![id];
    let cap = d * d;
    while !frontier.is_empty() && echelon.rank() < cap {
        let mut next = Vec::new();
        for w in &frontier {
            for s in &seeds {
                let p = s.mul(w);
                if echelon.insert(p.to_sparse()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(AlgebraSpan { ambient_dim: d, echelon })
}

/// Re-runs the closure on the span's own basis.
pub fn regenerate(s: &AlgebraSpan) -> AlgebraSpan {
    generate_subalgebra(s.ambient_dim, &s.basis()).expect("basis has the ambient dimension")
}

pub fn is_commutative(s: &AlgebraSpan) -> bool {
    let basis = s.basis();
    basis.iter().enumerate().all(|(i, a)| basis[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Whether every element of `s` commutes with every element of `t`.
pub fn mutually_commute(s: &AlgebraSpan, t: &AlgebraSpan) -> bool {
    let tb = t.basis();
    s.basis().iter().all(|a| tb.iter().all(|b| a.commutes_with(b)))
}

pub fn intersect(s: &AlgebraSpan, t: &AlgebraSpan) -> Result<AlgebraSpan, AlgebraError> {
    s.check_same(t)?;
    let (small, big) = if s.dimension() <= t.dimension() { (s, t) } else { (t, s) };
    if small.is_subalgebra_of(big) {
        return Ok(small.clone());
    }
    Ok(AlgebraSpan { ambient_dim: s.ambient_dim, echelon: small.echelon.intersect(&big.echelon) })
}

/// The algebra generated by `s ∪ t`.
///
/// When `s` and `t` commute elementwise the products `a·b` already span a
/// *-algebra, so no closure iteration is needed.
pub fn join(s: &AlgebraSpan, t: &AlgebraSpan) -> Result<AlgebraSpan, AlgebraError> {
    s.check_same(t)?;
    if s.is_subalgebra_of(t) {
        return Ok(t.clone());
    }
    if t.is_subalgebra_of(s) {
        return Ok(s.clone());
    }
    let (sb, tb) = (s.basis(), t.basis());
    if sb.iter().all(|a| tb.iter().all(|b| a.commutes_with(b))) {
        let d = s.ambient_dim;
        let mut e = Echelon::new(d * d);
        for a in &sb {
            for b in &tb {
                e.insert(a.mul(b).to_sparse());
            }
        }
        return Ok(AlgebraSpan { ambient_dim: d, echelon: e });
    }
    let mut gens = sb;
    gens.extend(tb);
    generate_subalgebra(s.ambient_dim, &gens)
}

/// All matrices commuting with every element of `s`, as the kernel of
/// `X ↦ ([X, b])_b` over the basis `b` of `s`.
pub fn commutant(s: &AlgebraSpan) -> AlgebraSpan {
    let d = s.ambient_dim;
    let mut eqs = Echelon::new(d * d);
    for b in s.basis() {
        // ([X,b])_{ij} = Σ_k X_{ik} b_{kj} − b_{ik} X_{kj}
        for i in 0..d {
            for j in 0..d {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for k in 0..d {
                    let bkj = b.get(k, j);
                    if !bkj.is_zero() {
                        row.push((i * d + k, bkj.clone()));
                    }
                    let bik = b.get(i, k);
                    if !bik.is_zero() {
                        row.push((k * d + j, -bik));
                    }
                }
                row.sort_by_key(|(c, _)| *c);
                let mut merged: SparseRow = Vec::with_capacity(row.len());
                for (c, v) in row {
                    match merged.last_mut() {
                        Some((lc, lv)) if *lc == c => *lv += &v,
                        _ => merged.push((c, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                if !merged.is_empty() {
                    eqs.insert(merged);
                }
            }
        }
        if eqs.rank() == d * d - 1 {
            break;
        }
    }
    AlgebraSpan { ambient_dim: d, echelon: Echelon::from_rows(d * d, eqs.nullspace()) }
}

/// A named normal matrix with a declared finite spectrum, validated by
/// `∏_λ (a − λ) = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorDecl {
    label: String,
    matrix: Mat,
    spectrum: Vec<Scalar>,
}

impl GeneratorDecl {
    pub fn new(
        label: impl Into<String>,
        matrix: Mat,
        spectrum: Vec<Scalar>,
    ) -> Result<Self, AlgebraError> {
        let label = label.into();
        let invalid = |reason: &str| AlgebraError::InvalidGenerator {
            label: label.clone(),
            reason: reason.to_string(),
        };
        if spectrum.is_empty() {
            return Err(invalid("empty spectrum"));
        }
        for (i, a) in spectrum.iter().enumerate() {
            if spectrum[i + 1..].contains(a) {
                return Err(invalid(&format!("repeated eigenvalue {a}")));
            }
        }
        if !matrix.is_normal() {
            return Err(invalid("matrix is not normal"));
        }
        let residual = spectrum
            .iter()
            .fold(Mat::identity(matrix.dim()), |acc, l| acc.mul(&matrix.shift(l)));
        if !residual.is_zero() {
            return Err(AlgebraError::SpectrumMismatch { label, residual: format!("{residual:?}") });
        }
        Ok(Self { label, matrix, spectrum })
    }

    /// A projection, declared with spectrum `{0, 1}`.
    pub fn projection(label: impl Into<String>, matrix: Mat) -> Result<Self, AlgebraError> {
        let label = label.into();
        if !matrix.is_idempotent() || !matrix.is_self_adjoint() {
            let residual = matrix.projection_residual();
            return Err(AlgebraError::NotIdempotent { label, residual });
        }
        Self::new(label, matrix, vec![Scalar::zero(), Scalar::one()])
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn spectrum(&self) -> &[Scalar] {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Same generator under a new label and matrix, keeping the spectrum.
    /// Used to embed site operators into a tensor product.
    pub fn relabeled(&self, label: impl Into<String>, matrix: Mat) -> Self {
        Self { label: label.into(), matrix, spectrum: self.spectrum.clone() }
    }
}

impl fmt::Debug for GeneratorDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

/// `e_λ = ∏_{μ≠λ} (a − μ)/(λ − μ)` for every declared eigenvalue, with zero
/// projections dropped.
pub fn spectral_projections(g: &GeneratorDecl) -> Vec<(Scalar, Mat)> {
    let d = g.dim();
    let mut out = Vec::new();
    for l in &g.spectrum {
        let mut e = Mat::identity(d);
        for m in &g.spectrum {
            if m == l {
                continue;
            }
            let denom = (l - m).inv().expect("spectrum entries are distinct");
            e = e.mul(&g.matrix.shift(m)).scale(&denom);
        }
        if !e.is_zero() {
            out.push((l.clone(), e));
        }
    }
    out
}

/// Algebra generated by the matrices of `gens` in ambient dimension `d`.
pub fn generated_by(d: usize, gens: &[GeneratorDecl]) -> Result<AlgebraSpan, AlgebraError> {
    let mats: Vec<Mat> = gens.iter().map(|g| g.matrix().clone()).collect();
    generate_subalgebra(d, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;

    fn diag2() -> AlgebraSpan {
        generate_subalgebra(2, &[pauli::z()]).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(generate_subalgebra(2, &[]).unwrap().dimension(), 1);
        assert_eq!(diag2().dimension(), 2);
        let full = generate_subalgebra(2, &[pauli::x(), pauli::z()]).unwrap();
        assert_eq!(full, AlgebraSpan::full(2));
        assert!(generate_subalgebra(2, &[Mat::identity(3)]).is_err());
    }

    #[test]
    fn commutativity_examples() {
        assert!(is_commutative(&AlgebraSpan::scalars(2)));
        assert!(is_commutative(&diag2()));
        assert!(!is_commutative(&AlgebraSpan::full(2)));
    }

    #[test]
    fn intersection_examples() {
        let sx = generate_subalgebra(2, &[pauli::x()]).unwrap();
        assert_eq!(intersect(&diag2(), &diag2()).unwrap(), diag2());
        assert_eq!(intersect(&diag2(), &sx).unwrap(), AlgebraSpan::scalars(2));
        assert_eq!(intersect(&AlgebraSpan::full(2), &diag2()).unwrap(), diag2());
        assert!(intersect(&diag2(), &AlgebraSpan::scalars(3)).is_err());
    }

    #[test]
    fn join_examples() {
        let s = diag2();
        assert_eq!(join(&s, &AlgebraSpan::scalars(2)).unwrap(), s);
        let z0 = generate_subalgebra(4, &[pauli::at(&pauli::z(), 0, 2)]).unwrap();
        let z1 = generate_subalgebra(4, &[pauli::at(&pauli::z(), 1, 2)]).unwrap();
        let j = join(&z0, &z1).unwrap();
        assert_eq!(j.dimension(), 4);
        assert!(is_commutative(&j));
        let sx = generate_subalgebra(2, &[pauli::x()]).unwrap();
        assert_eq!(join(&sx, &diag2()).unwrap(), AlgebraSpan::full(2));
    }

    #[test]
    fn commutant_examples() {
        assert_eq!(commutant(&AlgebraSpan::scalars(2)), AlgebraSpan::full(2));
        assert_eq!(commutant(&AlgebraSpan::full(2)), AlgebraSpan::scalars(2));
        assert_eq!(commutant(&diag2()), diag2());
    }

    #[test]
    fn spectral_projection_examples() {
        let z = GeneratorDecl::new("Z", pauli::z(), vec![1.into(), (-1).into()]).unwrap();
        let e = spectral_projections(&z);
        assert_eq!(e[0].1, Mat::from_ints(&[&[1, 0], &[0, 0]]));
        assert_eq!(e[1].1, Mat::from_ints(&[&[0, 0], &[0, 1]]));

        let p = Mat::from_ints(&[&[1, 0], &[0, 0]]);
        let pg = GeneratorDecl::projection("P", p.clone()).unwrap();
        let e = spectral_projections(&pg);
        assert_eq!(e[0].1, Mat::identity(2).sub(&p));
        assert_eq!(e[1].1, p);

        let x = GeneratorDecl::new("X", pauli::x(), vec![1.into(), (-1).into()]).unwrap();
        let e = spectral_projections(&x);
        let half = Scalar::from_ratio(1, 2);
        assert_eq!(e[0].1, Mat::identity(2).add(&pauli::x()).scale(&half));
        assert_eq!(e[1].1, Mat::identity(2).sub(&pauli::x()).scale(&half));
        assert!(e[0].1.is_idempotent() && e[0].1.mul(&e[1].1).is_zero());
    }

    #[test]
    fn declared_spectrum_is_validated() {
        let err = GeneratorDecl::new("Z", pauli::z(), vec![1.into()]).unwrap_err();
        assert!(matches!(err, AlgebraError::SpectrumMismatch { .. }));
        let nilpotent = Mat::from_ints(&[&[0, 1], &[0, 0]]);
        assert!(GeneratorDecl::new("N", nilpotent, vec![0.into()]).is_err());
        assert!(GeneratorDecl::projection("Q", pauli::x()).is_err());
    }

    #[test]
    fn unused_eigenvalue_projection_is_dropped() {
        let g = GeneratorDecl::new("P", Mat::identity(2), vec![0.into(), 1.into()]).unwrap();
        let e = spectral_projections(&g);
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].1, Mat::identity(2));
    }
}
