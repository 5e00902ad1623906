use bohrnet::algebra::{self, generate_subalgebra, spectral_projections, GeneratorDecl};
use bohrnet::linalg::Echelon;
use bohrnet::{Mat, Scalar};
use proptest::prelude::*;

/// `U = (I − K)(I + K)⁻¹` for skew-Hermitian `K` is an exactly unitary
/// matrix with Gaussian-rational entries.
fn cayley(k: &Mat) -> Mat {
    let d = k.dim();
    let id = Mat::identity(d);
    id.sub(k).mul(&id.add(k).inverse().expect("I + K is invertible for skew-Hermitian K"))
}

fn skew_hermitian(d: usize, raw: &[(i64, i64)]) -> Mat {
    let mut b = Mat::zeros(d);
    for i in 0..d {
        for j in 0..d {
            let (re, im) = raw[i * d + j];
            b.set(i, j, Scalar::complex(re, im));
        }
    }
    b.sub(&b.adjoint())
}

/// A normal matrix `U·D·U†` with its distinct eigenvalues.
fn normal_generator(d: usize, raw_k: &[(i64, i64)], eig: &[(i64, i64)], label: &str) -> GeneratorDecl {
    let u = cayley(&skew_hermitian(d, raw_k));
    let values: Vec<Scalar> = eig[..d].iter().map(|&(a, b)| Scalar::complex(a, b)).collect();
    let m = u.mul(&Mat::diag(&values)).mul(&u.adjoint());
    let mut spectrum: Vec<Scalar> = Vec::new();
    for v in values {
        if !spectrum.contains(&v) {
            spectrum.push(v);
        }
    }
    GeneratorDecl::new(label, m, spectrum).expect("constructed generator is valid")
}

#[derive(Debug, Clone)]
struct Case {
    d: usize,
    gens: Vec<(Vec<(i64, i64)>, Vec<(i64, i64)>)>,
    mix: Vec<(i64, i64)>,
}

fn case() -> impl Strategy<Value = Case> {
    (1usize..=4).prop_flat_map(|d| {
        let entry = (-1i64..=1, -1i64..=1);
        let eig = (-2i64..=2, -1i64..=1);
        let gen = (prop::collection::vec(entry.clone(), d * d), prop::collection::vec(eig, d));
        (Just(d), prop::collection::vec(gen, 1..=2), prop::collection::vec((1i64..=3, -2i64..=2), 16))
            .prop_map(|(d, gens, mix)| Case { d, gens, mix })
    })
}

fn build(c: &Case) -> (Vec<GeneratorDecl>, algebra::AlgebraSpan) {
    let gens: Vec<GeneratorDecl> = c
        .gens
        .iter()
        .enumerate()
        .map(|(i, (k, e))| normal_generator(c.d, k, e, &format!("g{i}")))
        .collect();
    let a = algebra::generated_by(c.d, &gens).unwrap();
    (gens, a)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn algebra_kernel_oracles(c in case()) {
        let (gens, a) = build(&c);
        let d = c.d;

        // closure is idempotent
        prop_assert_eq!(&generate_subalgebra(d, &a.basis()).unwrap(), &a);
        prop_assert_eq!(&algebra::regenerate(&a), &a);
        for g in &gens {
            prop_assert!(a.contains(g.matrix()));
            prop_assert!(a.contains(&g.matrix().adjoint()));
        }

        // the echelon form depends only on the span: rescale and mix the
        // basis in reverse order and reduce again
        let basis = a.basis();
        let mut mixed: Vec<Mat> = Vec::new();
        for (i, b) in basis.iter().rev().enumerate() {
            let (s, t) = c.mix[i % c.mix.len()];
            let mut m = b.scale(&Scalar::complex(s, t));
            if let Some(prev) = mixed.last() {
                m = m.add(prev);
            }
            mixed.push(m);
        }
        let rebuilt = Echelon::from_rows(d * d, mixed.iter().map(Mat::to_sparse));
        prop_assert_eq!(&rebuilt, a.echelon());

        // A ⊆ A″, with equality for unital *-algebras
        let cc = algebra::commutant(&algebra::commutant(&a));
        prop_assert!(a.is_subalgebra_of(&cc));
        prop_assert_eq!(&cc, &a);

        // spectral projections are orthogonal idempotents summing to I
        for g in &gens {
            let projs = spectral_projections(g);
            let sum = projs.iter().fold(Mat::zeros(d), |acc, (_, e)| acc.add(e));
            prop_assert_eq!(sum, Mat::identity(d));
            let recon = projs.iter().fold(Mat::zeros(d), |acc, (l, e)| acc.add(&e.scale(l)));
            prop_assert_eq!(&recon, g.matrix());
            for (i, (_, e)) in projs.iter().enumerate() {
                prop_assert!(e.is_idempotent() && e.is_self_adjoint());
                prop_assert!(a.contains(e));
                for (_, f) in &projs[i + 1..] {
                    prop_assert!(e.mul(f).is_zero());
                }
            }
        }
    }
}

#[test]
fn cayley_transform_is_unitary() {
    let k = skew_hermitian(3, &[(1, 0), (0, 1), (1, -1), (0, 0), (1, 1), (-1, 0), (0, -1), (1, 0), (0, 1)]);
    let u = cayley(&k);
    assert_eq!(u.mul(&u.adjoint()), Mat::identity(3));
}
