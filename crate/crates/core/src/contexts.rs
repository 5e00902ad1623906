//! Posets of commutative subalgebras (contexts) of a region algebra.
//!
//! The full poset of commutative subalgebras of a matrix algebra is
//! uncountable. Here a poset is generated by the commuting subsets of a
//! declared generator list and then closed under the intersections that the
//! restriction maps need. Every context carries its minimal projections
//! ("atoms"), which span it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{self, spectral_projections, AlgebraSpan, GeneratorDecl};
use crate::error::ContextError;
use crate::matrix::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContextId(pub usize);

/// Construction options shared by every poset in a run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextConfig {
    /// Keep `span{I}` as the bottom element.
    pub include_trivial_context: bool,
    /// Upper bound on commuting generator subsets enumerated per poset.
    pub clique_cap: usize,
}

impl Default for ContextConfig {
    fn default() -> Self {
        Self { include_trivial_context: true, clique_cap: 1 << 14 }
    }
}

#[derive(Clone)]
pub struct Context {
    id: ContextId,
    span: AlgebraSpan,
    atoms: Vec<Mat>,
    labels: Vec<String>,
}

impl Context {
    pub fn id(&self) -> ContextId {
        self.id
    }

    pub fn span(&self) -> &AlgebraSpan {
        &self.span
    }

    /// Minimal projections; pairwise orthogonal, summing to `I`.
    pub fn atoms(&self) -> &[Mat] {
        &self.atoms
    }

    /// Labels of the declared generators that lie in this context.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        self.span.dimension()
    }

    /// Short human-readable name, e.g. `⟨Z@0,X@1⟩` or `⟨I⟩`.
    pub fn name(&self) -> String {
        if self.span.is_trivial() {
            "⟨I⟩".to_string()
        } else if self.labels.is_empty() {
            format!("⟨#{} dim {}⟩", self.id.0, self.dimension())
        } else {
            format!("⟨{}⟩", self.labels.join(","))
        }
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A finite poset of contexts ordered by inclusion.
#[derive(Clone)]
pub struct ContextPoset {
    region_algebra: AlgebraSpan,
    generators: Vec<GeneratorDecl>,
    contexts: Vec<Context>,
    leq: Vec<bool>,
    index: HashMap<AlgebraSpan, usize>,
}

impl ContextPoset {
    pub fn region_algebra(&self) -> &AlgebraSpan {
        &self.region_algebra
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn contexts(&self) -> &[Context] {
        &self.contexts
    }

    pub fn len(&self) -> usize {
        self.contexts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contexts.is_empty()
    }

    pub fn context(&self, i: usize) -> &Context {
        &self.contexts[i]
    }

    /// `contexts[i] ⊆ contexts[j]`
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.contexts.len() + j]
    }

    pub fn index_of(&self, span: &AlgebraSpan) -> Option<usize> {
        self.index.get(span).copied()
    }

    /// Index of the least element, if the poset has one.
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|j| self.leq(b, j)))
    }

    /// Elements with nothing strictly above them.
    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| j == i || !self.leq(i, j)))
            .collect()
    }

    /// Checks reflexivity, antisymmetry and transitivity of the stored order.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for a in 0..n {
            if !self.leq(a, a) {
                return false;
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return false;
                }
                for c in 0..n {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn copresheaf(&self) -> TautologicalCopresheaf<'_> {
        TautologicalCopresheaf { poset: self }
    }
}

impl fmt::Debug for ContextPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.contexts).finish()
    }
}

/// The copresheaf `C ↦ C` on a context poset; restriction along `C ≤ C′` is
/// the subspace inclusion.
pub struct TautologicalCopresheaf<'a> {
    poset: &'a ContextPoset,
}

impl<'a> TautologicalCopresheaf<'a> {
    pub fn value(&self, i: usize) -> &'a AlgebraSpan {
        self.poset.contexts[i].span()
    }

    /// Whether `C ≤ C′` implies `value(C) ⊆ value(C′)` for every stored pair.
    pub fn is_functorial(&self) -> bool {
        let n = self.poset.len();
        (0..n).all(|i| {
            (0..n).all(|j| !self.poset.leq(i, j) || self.value(i).is_subalgebra_of(self.value(j)))
        })
    }
}

/// Joint spectral projections of a commuting family: the nonzero products
/// `∏ e_{λ_k}` over one eigenvalue per generator.
pub(crate) fn joint_projections(d: usize, gens: &[&GeneratorDecl]) -> Vec<Mat> {
    let mut atoms = vec![Mat::identity(d)];
    for g in gens {
        let proj = spectral_projections(g);
        let mut next = Vec::with_capacity(atoms.len() * proj.len());
        for p in &atoms {
            for (_, e) in &proj {
                let q = p.mul(e);
                if !q.is_zero() {
                    next.push(q);
                }
            }
        }
        atoms = next;
    }
    atoms
}

/// Minimal projections of a *-subalgebra `sub` of the commutative algebra
/// spanned by `parent_atoms`: atoms of `sub` are the sums of parent atoms over
/// the classes on which every element of `sub` takes a constant value.
pub(crate) fn atoms_of_subalgebra(sub: &AlgebraSpan, parent_atoms: &[Mat]) -> Vec<Mat> {
    let basis = sub.basis();
    let ranks: Vec<_> = parent_atoms.iter().map(Mat::trace).collect();
    let signature = |k: usize| -> Vec<crate::Scalar> {
        basis.iter().map(|b| &b.trace_product(&parent_atoms[k]) / &ranks[k]).collect()
    };
    let mut classes: Vec<(Vec<crate::Scalar>, Mat)> = Vec::new();
    for (k, atom) in parent_atoms.iter().enumerate() {
        let sig = signature(k);
        match classes.iter_mut().find(|(s, _)| *s == sig) {
            Some((_, m)) => *m = m.add(atom),
            None => classes.push((sig, atom.clone())),
        }
    }
    let atoms: Vec<Mat> = classes.into_iter().map(|(_, m)| m).collect();
    debug_assert_eq!(atoms.len(), sub.dimension(), "subalgebra not spanned by parent atoms");
    atoms
}

fn commutes(a: &GeneratorDecl, b: &GeneratorDecl) -> bool {
    a.matrix().commutes_with(b.matrix())
}

/// Every clique (including the empty one) of the commutation graph.
fn commuting_subsets(gens: &[GeneratorDecl], cap: usize) -> Result<Vec<Vec<usize>>, ContextError> {
    let n = gens.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i == j || commutes(&gens[i], &gens[j])).collect()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((clique, start)) = stack.pop() {
        out.push(clique.clone());
        if out.len() > cap {
            return Err(ContextError::CapExceeded {
                cap,
                bound: format!("more than {cap} commuting subsets of {n} generators"),
            });
        }
        for k in start..n {
            if clique.iter().all(|&c| adj[c][k]) {
                let mut next = clique.clone();
                next.push(k);
                stack.push((next, k + 1));
            }
        }
    }
    Ok(out)
}

/// Maximal cliques of the commutation graph (Bron–Kerbosch with pivoting).
pub(crate) fn maximal_commuting_subsets(gens: &[GeneratorDecl]) -> Vec<Vec<usize>> {
    let n = gens.len();
    let adj: Vec<Vec<bool>> =
        (0..n).map(|i| (0..n).map(|j| i != j && commutes(&gens[i], &gens[j])).collect()).collect();
    let mut out = Vec::new();
    fn bk(
        r: Vec<usize>,
        mut p: Vec<usize>,
        mut x: Vec<usize>,
        adj: &[Vec<bool>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut r = r;
            r.sort_unstable();
            out.push(r);
            return;
        }
        let pivot = *p.iter().chain(&x).max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count()).unwrap();
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| !adj[pivot][v]).collect();
        for v in candidates {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&u| adj[v][u]).collect();
            let x2 = x.iter().copied().filter(|&u| adj[v][u]).collect();
            bk(r2, p2, x2, adj, out);
            p.retain(|&u| u != v);
            x.push(v);
        }
    }
    bk(Vec::new(), (0..n).collect(), Vec::new(), &adj, &mut out);
    out.sort();
    out
}

/// Accumulates contexts (deduplicated by span) before the order is fixed.
struct PosetBuilder {
    algebra: AlgebraSpan,
    generators: Vec<GeneratorDecl>,
    spans: Vec<AlgebraSpan>,
    atoms: Vec<Vec<Mat>>,
    index: HashMap<AlgebraSpan, usize>,
}

impl PosetBuilder {
    fn new(algebra: AlgebraSpan, generators: Vec<GeneratorDecl>) -> Result<Self, ContextError> {
        for g in &generators {
            if !algebra.contains(g.matrix()) {
                return Err(ContextError::GeneratorOutsideAlgebra(g.label().to_string()));
            }
        }
        let d = algebra.ambient_dim();
        let mut b =
            Self { algebra, generators, spans: Vec::new(), atoms: Vec::new(), index: HashMap::new() };
        b.add(AlgebraSpan::scalars(d), vec![Mat::identity(d)]);
        Ok(b)
    }

    fn add(&mut self, span: AlgebraSpan, atoms: Vec<Mat>) -> usize {
        if let Some(&i) = self.index.get(&span) {
            return i;
        }
        let i = self.spans.len();
        self.index.insert(span.clone(), i);
        self.spans.push(span);
        self.atoms.push(atoms);
        i
    }

    fn add_generated(&mut self, subset: &[usize]) {
        let d = self.algebra.ambient_dim();
        let gens: Vec<&GeneratorDecl> = subset.iter().map(|&k| &self.generators[k]).collect();
        let atoms = joint_projections(d, &gens);
        let span = AlgebraSpan::from_span(d, &atoms);
        self.add(span, atoms);
    }

    /// Adds `sub`, a subalgebra of the existing context `parent`.
    fn add_sub(&mut self, sub: AlgebraSpan, parent: usize) -> usize {
        if let Some(&i) = self.index.get(&sub) {
            return i;
        }
        let atoms = atoms_of_subalgebra(&sub, &self.atoms[parent]);
        self.add(sub, atoms)
    }

    /// Adds `C ∩ algebra` for a context `C` of a larger algebra.
    fn add_image(&mut self, span: &AlgebraSpan, atoms: &[Mat]) -> usize {
        let sub = algebra::intersect(span, &self.algebra).expect("same ambient dimension");
        if let Some(&i) = self.index.get(&sub) {
            return i;
        }
        let sub_atoms = atoms_of_subalgebra(&sub, atoms);
        self.add(sub, sub_atoms)
    }

    fn close_under_intersections(&mut self) {
        let mut done = 0;
        while done < self.spans.len() {
            let j = done;
            for i in 0..j {
                let meet = algebra::intersect(&self.spans[i], &self.spans[j]).expect("same ambient");
                self.add_sub(meet, j);
            }
            done += 1;
        }
    }

    fn finish(self, include_trivial: bool) -> ContextPoset {
        let mut order: Vec<usize> = (0..self.spans.len())
            .filter(|&i| include_trivial || !self.spans[i].is_trivial())
            .collect();
        order.sort_by(|&a, &b| {
            (self.spans[a].dimension(), &self.spans[a]).cmp(&(self.spans[b].dimension(), &self.spans[b]))
        });
        let mut atoms = self.atoms;
        let mut spans: Vec<Option<AlgebraSpan>> = self.spans.into_iter().map(Some).collect();
        let contexts: Vec<Context> = order
            .iter()
            .enumerate()
            .map(|(id, &k)| {
                let span = spans[k].take().unwrap();
                let labels = self
                    .generators
                    .iter()
                    .filter(|g| span.contains(g.matrix()))
                    .map(|g| g.label().to_string())
                    .collect();
                Context { id: ContextId(id), span, atoms: std::mem::take(&mut atoms[k]), labels }
            })
            .collect();
        let n = contexts.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = i == j
                    || (contexts[i].dimension() < contexts[j].dimension()
                        && contexts[i].span.is_subalgebra_of(&contexts[j].span));
            }
        }
        let index = contexts.iter().enumerate().map(|(i, c)| (c.span.clone(), i)).collect();
        ContextPoset {
            region_algebra: self.algebra,
            generators: self.generators,
            contexts,
            leq,
            index,
        }
    }
}

/// Contexts generated by all pairwise-commuting subsets of `gens`,
/// deduplicated and closed under pairwise intersection.
pub fn build_context_poset(
    region_algebra: &AlgebraSpan,
    gens: &[GeneratorDecl],
    config: &ContextConfig,
) -> Result<ContextPoset, ContextError> {
    let mut b = PosetBuilder::new(region_algebra.clone(), gens.to_vec())?;
    for subset in commuting_subsets(gens, config.clique_cap)? {
        b.add_generated(&subset);
    }
    b.close_under_intersections();
    Ok(b.finish(config.include_trivial_context))
}

/// Contexts generated by the maximal commuting subsets only, closed under
/// pairwise intersection.
pub fn build_maximal_context_poset(
    region_algebra: &AlgebraSpan,
    gens: &[GeneratorDecl],
    config: &ContextConfig,
) -> Result<ContextPoset, ContextError> {
    let mut b = PosetBuilder::new(region_algebra.clone(), gens.to_vec())?;
    for subset in maximal_commuting_subsets(gens) {
        b.add_generated(&subset);
    }
    b.close_under_intersections();
    Ok(b.finish(config.include_trivial_context))
}

/// All up-closed subsets of the poset, each sorted ascending, in a
/// deterministic order. Fails when more than `cap` opens exist.
pub fn alexandrov_opens(p: &ContextPoset, cap: usize) -> Result<Vec<Vec<usize>>, ContextError> {
    let n = p.len();
    // Decide elements from the top down so that everything above an element
    // is already decided when it is reached.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(p.context(i).dimension()));
    let above: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).filter(|&j| j != i && p.leq(i, j)).collect()).collect();
    let mut out = Vec::new();
    let mut chosen = vec![false; n];
    fn rec(
        k: usize,
        order: &[usize],
        above: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> bool {
        if k == order.len() {
            out.push((0..chosen.len()).filter(|&i| chosen[i]).collect());
            return out.len() <= cap;
        }
        let x = order[k];
        if !rec(k + 1, order, above, chosen, out, cap) {
            return false;
        }
        if above[x].iter().all(|&j| chosen[j]) {
            chosen[x] = true;
            let ok = rec(k + 1, order, above, chosen, out, cap);
            chosen[x] = false;
            return ok;
        }
        true
    }
    if !rec(0, &order, &above, &mut chosen, &mut out, cap) {
        return Err(ContextError::CapExceeded { cap, bound: format!("at most 2^{n}") });
    }
    out.sort();
    Ok(out)
}

/// The map `C ↦ C ∩ A₁` from the contexts of `p2` to those of `p1`.
///
/// `None` marks an image equal to `span{I}` when the trivial context is
/// excluded from `p1`.
pub fn intersection_functor(
    p2: &ContextPoset,
    a1: &AlgebraSpan,
    p1: &ContextPoset,
) -> Result<Vec<Option<usize>>, ContextError> {
    p2.contexts
        .iter()
        .map(|c| {
            let image = algebra::intersect(c.span(), a1)?;
            match p1.index_of(&image) {
                Some(i) => Ok(Some(i)),
                None if image.is_trivial() => Ok(None),
                None => Err(ContextError::MissingImage(format!(
                    "{} ∩ A₁ (dim {})",
                    c.name(),
                    image.dimension()
                ))),
            }
        })
        .collect()
}

/// Context posets for a family of nested algebras, closed so that every
/// intersection `C ∩ A` with `C` a context of a larger algebra `B ⊇ A` of the
/// family is a context of `A`. Intersection functors between every nested
/// pair are precomputed.
pub struct ContextAtlas {
    posets: Vec<Arc<ContextPoset>>,
    index: HashMap<AlgebraSpan, usize>,
    functors: BTreeMap<(usize, usize), Vec<Option<usize>>>,
}

impl ContextAtlas {
    /// Entries with equal algebras are merged, their generator lists united by
    /// label.
    pub fn build(
        entries: Vec<(AlgebraSpan, Vec<GeneratorDecl>)>,
        config: &ContextConfig,
    ) -> Result<Self, ContextError> {
        let mut merged: Vec<(AlgebraSpan, Vec<GeneratorDecl>)> = Vec::new();
        let mut pos: HashMap<AlgebraSpan, usize> = HashMap::new();
        for (a, gens) in entries {
            let k = *pos.entry(a.clone()).or_insert_with(|| {
                merged.push((a, Vec::new()));
                merged.len() - 1
            });
            for g in gens {
                if !merged[k].1.iter().any(|h| h.label() == g.label()) {
                    merged[k].1.push(g);
                }
            }
        }
        for (_, gens) in &mut merged {
            gens.sort_by(|a, b| a.label().cmp(b.label()));
        }
        // Largest algebras first, so every superset is final before its
        // subsets pull images from it.
        merged.sort_by(|a, b| (std::cmp::Reverse(a.0.dimension()), &a.0).cmp(&(std::cmp::Reverse(b.0.dimension()), &b.0)));
        let n = merged.len();
        let contains: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| merged[i].0.is_subalgebra_of(&merged[j].0)).collect())
            .collect();

        let mut builders: Vec<PosetBuilder> = Vec::with_capacity(n);
        for (k, (a, gens)) in merged.iter().enumerate() {
            let mut b = PosetBuilder::new(a.clone(), gens.clone())?;
            for subset in commuting_subsets(gens, config.clique_cap)? {
                b.add_generated(&subset);
            }
            for (j, sup) in builders.iter().enumerate() {
                if contains[k][j] {
                    for (span, atoms) in sup.spans.iter().zip(&sup.atoms) {
                        b.add_image(span, atoms);
                    }
                }
            }
            b.close_under_intersections();
            builders.push(b);
        }

        let posets: Vec<Arc<ContextPoset>> = builders
            .into_iter()
            .map(|b| Arc::new(b.finish(config.include_trivial_context)))
            .collect();
        let mut functors = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                if contains[i][j] {
                    let f = intersection_functor(&posets[j], posets[i].region_algebra(), &posets[i])?;
                    functors.insert((j, i), f);
                }
            }
        }
        let index = posets.iter().enumerate().map(|(i, p)| (p.region_algebra().clone(), i)).collect();
        Ok(Self { posets, index, functors })
    }

    pub fn len(&self) -> usize {
        self.posets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.posets.is_empty()
    }

    pub fn posets(&self) -> &[Arc<ContextPoset>] {
        &self.posets
    }

    pub fn key_of(&self, a: &AlgebraSpan) -> Option<usize> {
        self.index.get(a).copied()
    }

    pub fn poset(&self, key: usize) -> &Arc<ContextPoset> {
        &self.posets[key]
    }

    pub fn poset_for(&self, a: &AlgebraSpan) -> Option<&Arc<ContextPoset>> {
        self.key_of(a).map(|k| &self.posets[k])
    }

    /// The intersection functor from the poset `from` to the poset `to`,
    /// available whenever `algebra(to) ⊆ algebra(from)`.
    pub fn functor(&self, from: usize, to: usize) -> Option<&[Option<usize>]> {
        self.functors.get(&(from, to)).map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::generate_subalgebra;
    use crate::matrix::pauli;

    fn pauli_gen(label: &str, m: Mat) -> GeneratorDecl {
        GeneratorDecl::new(label, m, vec![1.into(), (-1).into()]).unwrap()
    }

    fn m2_poset() -> ContextPoset {
        let gens = [pauli_gen("X", pauli::x()), pauli_gen("Z", pauli::z())];
        build_context_poset(&AlgebraSpan::full(2), &gens, &ContextConfig::default()).unwrap()
    }

    #[test]
    fn m2_with_x_and_z_has_three_contexts() {
        let p = m2_poset();
        assert_eq!(p.len(), 3);
        assert_eq!(p.bottom(), Some(0));
        assert!(p.context(0).span().is_trivial());
        assert!(p.leq(0, 1) && p.leq(0, 2) && !p.leq(1, 2) && !p.leq(2, 1));
        assert!(p.is_partial_order());
        assert!(p.copresheaf().is_functorial());
    }

    #[test]
    fn no_generators_gives_only_the_trivial_context() {
        let p = build_context_poset(&AlgebraSpan::full(2), &[], &ContextConfig::default()).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(alexandrov_opens(&p, 100).unwrap().len(), 2);
    }

    #[test]
    fn commuting_pair_gives_four_contexts() {
        let z0 = pauli_gen("Z0", pauli::at(&pauli::z(), 0, 2));
        let z1 = pauli_gen("Z1", pauli::at(&pauli::z(), 1, 2));
        let diag = generate_subalgebra(4, &[z0.matrix().clone(), z1.matrix().clone()]).unwrap();
        let p = build_context_poset(&diag, &[z0, z1], &ContextConfig::default()).unwrap();
        assert_eq!(p.len(), 4);
        let top = p.maximal();
        assert_eq!(top.len(), 1);
        assert_eq!(p.context(top[0]).dimension(), 4);
        assert_eq!(p.context(top[0]).atoms().len(), 4);
    }

    #[test]
    fn generator_outside_algebra_is_rejected() {
        let diag = generate_subalgebra(2, &[pauli::z()]).unwrap();
        let err = build_context_poset(&diag, &[pauli_gen("X", pauli::x())], &ContextConfig::default());
        assert!(matches!(err, Err(ContextError::GeneratorOutsideAlgebra(_))));
    }

    #[test]
    fn alexandrov_open_counts() {
        // antichain of two above a bottom: ∅, {a}, {b}, {a,b}, everything
        assert_eq!(alexandrov_opens(&m2_poset(), 100).unwrap().len(), 5);
        let diag = generate_subalgebra(2, &[pauli::z()]).unwrap();
        let chain =
            build_context_poset(&diag, &[pauli_gen("Z", pauli::z())], &ContextConfig::default())
                .unwrap();
        assert_eq!(alexandrov_opens(&chain, 100).unwrap().len(), 3);
        assert!(matches!(alexandrov_opens(&m2_poset(), 3), Err(ContextError::CapExceeded { .. })));
    }

    #[test]
    fn excluding_trivial_context_drops_the_bottom() {
        let gens = [pauli_gen("X", pauli::x()), pauli_gen("Z", pauli::z())];
        let cfg = ContextConfig { include_trivial_context: false, ..Default::default() };
        let p = build_context_poset(&AlgebraSpan::full(2), &gens, &cfg).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.bottom(), None);
    }

    #[test]
    fn intersection_functor_on_two_sites() {
        let z0 = pauli_gen("Z0", pauli::at(&pauli::z(), 0, 2));
        let x0 = pauli_gen("X0", pauli::at(&pauli::x(), 0, 2));
        let z1 = pauli_gen("Z1", pauli::at(&pauli::z(), 1, 2));
        let x1 = pauli_gen("X1", pauli::at(&pauli::x(), 1, 2));
        let zz = pauli_gen("ZZ", pauli::z().kron(&pauli::z()));
        let cfg = ContextConfig::default();
        let site0 = generate_subalgebra(4, &[z0.matrix().clone(), x0.matrix().clone()]).unwrap();
        let atlas = ContextAtlas::build(
            vec![
                (AlgebraSpan::full(4), vec![z0.clone(), x0.clone(), z1.clone(), x1, zz]),
                (site0.clone(), vec![z0.clone(), x0]),
            ],
            &cfg,
        )
        .unwrap();
        let big = atlas.key_of(&AlgebraSpan::full(4)).unwrap();
        let small = atlas.key_of(&site0).unwrap();
        let f = atlas.functor(big, small).unwrap();
        let pb = atlas.poset(big);
        let ps = atlas.poset(small);

        // bottom preserved
        assert_eq!(f[pb.bottom().unwrap()], ps.bottom());
        // ⟨Z0, Z1⟩ ↦ ⟨Z0⟩
        let zz_top = generate_subalgebra(4, &[z0.matrix().clone(), z1.matrix().clone()]).unwrap();
        let img = f[pb.index_of(&zz_top).unwrap()].unwrap();
        assert_eq!(ps.context(img).span(), &generate_subalgebra(4, &[z0.matrix().clone()]).unwrap());
        // ⟨Z⊗Z⟩ ↦ ⟨I⟩
        let zz_ctx = generate_subalgebra(4, &[pauli::z().kron(&pauli::z())]).unwrap();
        assert_eq!(f[pb.index_of(&zz_ctx).unwrap()], ps.bottom());
        // monotone
        for i in 0..pb.len() {
            for j in 0..pb.len() {
                if pb.leq(i, j) {
                    assert!(ps.leq(f[i].unwrap(), f[j].unwrap()));
                }
            }
        }
    }
}
