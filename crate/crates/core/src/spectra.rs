//! Finite Gelfand spectra of contexts, the spectral presheaf over a context
//! poset, and exhaustive search for its global sections.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::{AlgebraSpan, GeneratorDecl};
use crate::contexts::{self, Context, ContextConfig, ContextId, ContextPoset};
use crate::error::ContextError;
use crate::matrix::Mat;
use crate::scalar::Scalar;

/// A point of a context's spectrum: a minimal projection together with the
/// eigenvalue it assigns to each declared generator of the context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub context: ContextId,
    pub joint_projection: Mat,
    pub values: BTreeMap<String, Scalar>,
}

fn character_of(context: ContextId, atom: &Mat, gens: &[&GeneratorDecl]) -> Character {
    let rank = atom.trace();
    let values = gens
        .iter()
        .map(|g| (g.label().to_string(), &g.matrix().trace_product(atom) / &rank))
        .collect();
    Character { context, joint_projection: atom.clone(), values }
}

/// Characters of a context generated by commuting declared generators:
/// one per nonzero product of spectral projections.
pub fn spectrum_of_context(c: &Context, gens: &[GeneratorDecl]) -> Result<Vec<Character>, ContextError> {
    for g in gens {
        if !c.span().contains(g.matrix()) {
            return Err(ContextError::GeneratorNotInContext(g.label().to_string()));
        }
    }
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !a.matrix().commutes_with(b.matrix()) {
                return Err(ContextError::NonCommuting(a.label().into(), b.label().into()));
            }
        }
    }
    let refs: Vec<&GeneratorDecl> = gens.iter().collect();
    let d = c.span().ambient_dim();
    Ok(contexts::joint_projections(d, &refs)
        .iter()
        .map(|atom| character_of(c.id(), atom, &refs))
        .collect())
}

/// Characters per context and restriction maps along every `C ≤ C′`.
pub struct SpectralPresheaf {
    characters: Vec<Vec<Character>>,
    /// `(lower, upper) → for each character of upper, the dominating
    /// character of lower`
    restrictions: HashMap<(usize, usize), Vec<usize>>,
}

impl SpectralPresheaf {
    pub fn build(p: &ContextPoset) -> Self {
        let characters: Vec<Vec<Character>> = p
            .contexts()
            .iter()
            .map(|c| {
                let gens: Vec<&GeneratorDecl> =
                    p.generators().iter().filter(|g| c.labels().iter().any(|l| l == g.label())).collect();
                c.atoms().iter().map(|a| character_of(c.id(), a, &gens)).collect()
            })
            .collect();
        let mut restrictions = HashMap::new();
        for lo in 0..p.len() {
            for hi in 0..p.len() {
                if !p.leq(lo, hi) {
                    continue;
                }
                let lower = p.context(lo).atoms();
                let map = p
                    .context(hi)
                    .atoms()
                    .iter()
                    .map(|q| {
                        lower
                            .iter()
                            .position(|a| a.mul(q) == *q)
                            .expect("every atom of a larger context lies under an atom of a smaller one")
                    })
                    .collect();
                restrictions.insert((lo, hi), map);
            }
        }
        Self { characters, restrictions }
    }

    pub fn characters(&self, context: usize) -> &[Character] {
        &self.characters[context]
    }

    /// Restriction of character `k` of `upper` to `lower`; `None` unless
    /// `lower ≤ upper`.
    pub fn restrict(&self, lower: usize, upper: usize, k: usize) -> Option<usize> {
        self.restrictions.get(&(lower, upper)).map(|m| m[k])
    }

    /// Checks that restricting along `a ≤ b ≤ c` equals restricting along
    /// `a ≤ c` for every chain and every character.
    pub fn is_functorial(&self, p: &ContextPoset) -> bool {
        let n = p.len();
        for a in 0..n {
            for b in 0..n {
                if !p.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !p.leq(b, c) {
                        continue;
                    }
                    for k in 0..self.characters[c].len() {
                        let via = self.restrict(a, b, self.restrict(b, c, k).unwrap());
                        if via != self.restrict(a, c, k) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// A compatible choice of one character per context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlobalSection {
    pub choice: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCount {
    /// Exact count, or a lower bound when `exact` is false.
    pub count: u64,
    pub exact: bool,
    pub witnesses: Vec<GlobalSection>,
}

const WITNESS_LIMIT: usize = 4;

struct SectionSearch<'a> {
    sigma: &'a SpectralPresheaf,
    n: usize,
    maximal: Vec<usize>,
    /// contexts strictly below each maximal context
    below: Vec<Vec<usize>>,
}

impl SectionSearch<'_> {
    fn assign(&self, m: usize, k: usize, forced: &mut [Option<usize>], trail: &mut Vec<usize>) -> bool {
        let top = self.maximal[m];
        for &c in &self.below[m] {
            let v = self.sigma.restrict(c, top, k).unwrap();
            match forced[c] {
                Some(w) if w != v => return false,
                Some(_) => {}
                None => {
                    forced[c] = Some(v);
                    trail.push(c);
                }
            }
        }
        forced[top] = Some(k);
        trail.push(top);
        true
    }

    fn run(
        &self,
        m: usize,
        forced: &mut Vec<Option<usize>>,
        cap: u64,
        found: &mut u64,
        witnesses: &mut Vec<GlobalSection>,
    ) {
        if *found >= cap {
            return;
        }
        if m == self.maximal.len() {
            *found += 1;
            if witnesses.len() < WITNESS_LIMIT {
                witnesses.push(GlobalSection { choice: forced.iter().map(|c| c.unwrap()).collect() });
            }
            return;
        }
        let top = self.maximal[m];
        for k in 0..self.sigma.characters[top].len() {
            let mut trail = Vec::new();
            if self.assign(m, k, forced, &mut trail) {
                self.run(m + 1, forced, cap, found, witnesses);
            }
            for c in trail {
                forced[c] = None;
            }
            if *found >= cap {
                return;
            }
        }
    }
}

/// Exhaustive backtracking over the maximal contexts; every other context's
/// character is forced by restriction from the maximal contexts above it.
/// The first level is searched in parallel.
pub fn enumerate_global_sections(p: &ContextPoset, sigma: &SpectralPresheaf, cap: u64) -> SectionCount {
    let n = p.len();
    if n == 0 {
        return SectionCount { count: 1, exact: true, witnesses: vec![GlobalSection { choice: vec![] }] };
    }
    // Order maximal contexts so that each one shares as much as possible
    // with those already placed; conflicts then surface early.
    let mut remaining = p.maximal();
    let below_of = |m: usize| -> Vec<usize> { (0..n).filter(|&c| c != m && p.leq(c, m)).collect() };
    let mut maximal = Vec::new();
    let mut covered = vec![false; n];
    while !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(_, &m)| {
                (below_of(m).iter().filter(|&&c| covered[c]).count(), std::cmp::Reverse(m))
            })
            .unwrap();
        let m = remaining.remove(pos);
        for c in below_of(m) {
            covered[c] = true;
        }
        maximal.push(m);
    }
    let below = maximal.iter().map(|&m| below_of(m)).collect();
    let search = SectionSearch { sigma, n, maximal, below };

    let first = search.maximal[0];
    let branches: Vec<(u64, Vec<GlobalSection>)> = (0..sigma.characters[first].len())
        .into_par_iter()
        .map(|k| {
            let mut forced = vec![None; search.n];
            let mut trail = Vec::new();
            let mut found = 0;
            let mut witnesses = Vec::new();
            if search.assign(0, k, &mut forced, &mut trail) {
                search.run(1, &mut forced, cap, &mut found, &mut witnesses);
            }
            (found, witnesses)
        })
        .collect();
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    for (c, w) in branches {
        count += c;
        for s in w {
            if witnesses.len() < WITNESS_LIMIT {
                witnesses.push(s);
            }
        }
    }
    let exact = count < cap;
    SectionCount { count: count.min(cap), exact, witnesses }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KsVerdict {
    /// No global section exists.
    Contextual,
    /// At least one global section exists.
    NonContextual,
}

#[derive(Clone, Debug)]
pub struct KsReport {
    pub dim: usize,
    pub projections: usize,
    pub contexts: usize,
    pub maximal_contexts: usize,
    pub sections: SectionCount,
    pub verdict: KsVerdict,
    /// Ambient dimension ≤ 2, where no obstruction can exist.
    pub low_dimension: bool,
}

/// Builds contexts from the maximal commuting subsets of a projection family
/// in `M_dim` and counts global sections of the spectral presheaf.
pub fn ks_check(dim: usize, projections: &[GeneratorDecl], cap: u64) -> Result<KsReport, ContextError> {
    for g in projections {
        if g.dim() != dim {
            return Err(crate::error::AlgebraError::DimensionMismatch { expected: dim, found: g.dim() }.into());
        }
        if !g.matrix().is_idempotent() {
            let residual = g.matrix().projection_residual();
            return Err(crate::error::AlgebraError::NotIdempotent { label: g.label().to_string(), residual }.into());
        }
    }
    let p = contexts::build_maximal_context_poset(&AlgebraSpan::full(dim), projections, &ContextConfig::default())?;
    let sigma = SpectralPresheaf::build(&p);
    let sections = enumerate_global_sections(&p, &sigma, cap);
    let verdict = if sections.count == 0 { KsVerdict::Contextual } else { KsVerdict::NonContextual };
    Ok(KsReport {
        dim,
        projections: projections.len(),
        contexts: p.len(),
        maximal_contexts: p.maximal().len(),
        sections,
        verdict,
        low_dimension: dim <= 2,
    })
}

/// The 18 rank-one projections in dimension 4 forming 9 orthogonal bases,
/// each vector in exactly two bases.
pub fn cabello18_vectors() -> Vec<[i64; 4]> {
    vec![
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [1, 1, 0, 0],
        [1, -1, 0, 0],
        [0, 1, 0, 0],
        [1, 0, 1, 0],
        [1, 0, -1, 0],
        [1, -1, 1, -1],
        [1, -1, -1, 1],
        [0, 0, 1, 1],
        [1, 1, 1, 1],
        [0, 1, 0, -1],
        [1, 0, 0, 1],
        [1, 0, 0, -1],
        [0, 1, -1, 0],
        [1, 1, -1, 1],
        [1, 1, 1, -1],
        [-1, 1, 1, 1],
    ]
}

/// Rank-one projections onto integer vectors, declared with spectrum {0,1}.
pub fn projections_onto(vectors: &[[i64; 4]]) -> Vec<GeneratorDecl> {
    vectors
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let v: Vec<Scalar> = v.iter().map(|&x| Scalar::from_int(x)).collect();
            GeneratorDecl::projection(format!("P{k}"), Mat::projector_onto(&v).unwrap()).unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generate_subalgebra;
    use crate::matrix::pauli;

    fn diag3_poset() -> ContextPoset {
        let a = Mat::diag(&[0.into(), 1.into(), 2.into()]);
        let g = GeneratorDecl::new("A", a.clone(), vec![0.into(), 1.into(), 2.into()]).unwrap();
        let alg = generate_subalgebra(3, &[a]).unwrap();
        contexts::build_context_poset(&alg, &[g], &ContextConfig::default()).unwrap()
    }

    #[test]
    fn trivial_context_has_one_character() {
        let p = contexts::build_context_poset(&AlgebraSpan::full(2), &[], &ContextConfig::default()).unwrap();
        assert_eq!(spectrum_of_context(p.context(0), &[]).unwrap().len(), 1);
    }

    #[test]
    fn diag3_has_three_characters_and_three_sections() {
        let p = diag3_poset();
        let top = p.maximal()[0];
        let chars = spectrum_of_context(p.context(top), p.generators()).unwrap();
        assert_eq!(chars.len(), 3);
        let sum = chars.iter().fold(Mat::zeros(3), |acc, c| acc.add(&c.joint_projection));
        assert_eq!(sum, Mat::identity(3));
        let sigma = SpectralPresheaf::build(&p);
        assert!(sigma.is_functorial(&p));
        assert_eq!(enumerate_global_sections(&p, &sigma, 1000).count, 3);
    }

    #[test]
    fn two_site_z_context_has_four_characters() {
        let z0 = GeneratorDecl::new("Z0", pauli::at(&pauli::z(), 0, 2), vec![1.into(), (-1).into()]).unwrap();
        let z1 = GeneratorDecl::new("Z1", pauli::at(&pauli::z(), 1, 2), vec![1.into(), (-1).into()]).unwrap();
        let alg = generate_subalgebra(4, &[z0.matrix().clone(), z1.matrix().clone()]).unwrap();
        let p = contexts::build_context_poset(&alg, &[z0.clone(), z1.clone()], &ContextConfig::default()).unwrap();
        let top = p.maximal()[0];
        let chars = spectrum_of_context(p.context(top), &[z0, z1]).unwrap();
        assert_eq!(chars.len(), 4);
        assert!(chars.iter().all(|c| c.values.len() == 2));
    }

    #[test]
    fn generator_outside_context_is_rejected() {
        let p = diag3_poset();
        let x = GeneratorDecl::new("X", pauli::x(), vec![1.into(), (-1).into()]).unwrap();
        assert!(matches!(
            spectrum_of_context(p.context(0), &[x]),
            Err(ContextError::GeneratorNotInContext(_))
        ));
    }

    #[test]
    fn cabello_family_has_no_global_section() {
        let r = ks_check(4, &projections_onto(&cabello18_vectors()), 1 << 20).unwrap();
        assert!(r.sections.exact);
        assert_eq!(r.sections.count, 0);
        assert_eq!(r.verdict, KsVerdict::Contextual);
    }

    #[test]
    fn two_incomparable_contexts_give_free_product() {
        let x = GeneratorDecl::new("X", pauli::x(), vec![1.into(), (-1).into()]).unwrap();
        let z = GeneratorDecl::new("Z", pauli::z(), vec![1.into(), (-1).into()]).unwrap();
        let p = contexts::build_context_poset(&AlgebraSpan::full(2), &[x, z], &ContextConfig::default()).unwrap();
        let sigma = SpectralPresheaf::build(&p);
        assert_eq!(enumerate_global_sections(&p, &sigma, 1000).count, 4);
    }

    #[test]
    fn cap_reports_lower_bound() {
        let p = diag3_poset();
        let sigma = SpectralPresheaf::build(&p);
        let s = enumerate_global_sections(&p, &sigma, 2);
        assert_eq!(s.count, 2);
        assert!(!s.exact);
    }

    #[test]
    fn ks_small_cases() {
        let basis = projections_onto(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]);
        let r = ks_check(4, &basis, 1 << 20).unwrap();
        assert_eq!(r.sections.count, 4);
        assert_eq!(r.verdict, KsVerdict::NonContextual);
        let r = ks_check(4, &[], 1 << 20).unwrap();
        assert_eq!(r.sections.count, 1);
        let bad = GeneratorDecl::new("X", pauli::x(), vec![1.into(), (-1).into()]).unwrap();
        assert!(ks_check(2, &[bad], 10).is_err());
    }
}
