//! Bohrification of a net and the descent checker on slice covers.
//!
//! Everything is decided on context posets: the comparison map
//! `f: P(W) → P(U) ×_{P(U∩V)} P(V)`, its left adjoint when one exists, and
//! whether that adjoint is full and faithful.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{self, AlgebraSpan, GeneratorDecl};
use crate::contexts::{build_context_poset, ContextAtlas, ContextConfig, ContextPoset, TautologicalCopresheaf};
use crate::error::{ContextError, NetError};
use crate::net::{AdditivityWitness, Net, StrongLocalityVerdict, Verdict};
use crate::spacetime::SliceSet;

/// Default bound on the number of enumerated covers.
pub const DEFAULT_COVER_CAP: usize = 4096;

/// A context poset with its tautological copresheaf `C ↦ C`.
#[derive(Clone, Debug)]
pub struct RingedPosetSpace {
    poset: Arc<ContextPoset>,
}

impl RingedPosetSpace {
    pub fn new(poset: Arc<ContextPoset>) -> Self {
        Self { poset }
    }

    pub fn poset(&self) -> &ContextPoset {
        &self.poset
    }

    pub fn ring(&self) -> TautologicalCopresheaf<'_> {
        self.poset.copresheaf()
    }

    pub fn points(&self) -> usize {
        self.poset.len()
    }

    pub fn is_functorial(&self) -> bool {
        self.ring().is_functorial()
    }
}

pub fn bohrify(
    region_algebra: &AlgebraSpan,
    gens: &[GeneratorDecl],
    config: &ContextConfig,
) -> Result<RingedPosetSpace, ContextError> {
    Ok(RingedPosetSpace::new(Arc::new(build_context_poset(region_algebra, gens, config)?)))
}

/// The net's regions and slice opens, each sent to the ringed poset space of
/// its algebra, with intersection maps along inclusions.
pub struct BohrifiedNet {
    atlas: ContextAtlas,
    region_keys: Vec<usize>,
}

impl BohrifiedNet {
    pub fn build(net: &Net, config: &ContextConfig) -> Result<Self, NetError> {
        let atlas = net.context_atlas(config)?;
        let region_keys = net
            .regions()
            .regions()
            .iter()
            .map(|&o| {
                let a = net.evaluate(o)?;
                atlas.key_of(&a).ok_or_else(|| NetError::InvalidSpec("region algebra missing from atlas".into()))
            })
            .collect::<Result<_, NetError>>()?;
        Ok(Self { atlas, region_keys })
    }

    pub fn atlas(&self) -> &ContextAtlas {
        &self.atlas
    }

    /// The space over the region with index `i` in the net's region poset.
    pub fn space(&self, i: usize) -> RingedPosetSpace {
        RingedPosetSpace::new(self.atlas.poset(self.region_keys[i]).clone())
    }

    /// The map `C ↦ C ∩ A(O₁)` for regions `O₁ ⊆ O₂` given by index.
    pub fn structure_map(&self, net: &Net, small: usize, big: usize) -> Option<&[Option<usize>]> {
        let rs = net.regions();
        if !rs.leq(small, big) {
            return None;
        }
        self.atlas.functor(self.region_keys[big], self.region_keys[small])
    }

    /// Structure maps compose along every chain `O₁ ⊆ O₂ ⊆ O₃`.
    pub fn is_functorial(&self, net: &Net) -> bool {
        let rs = net.regions();
        let n = rs.len();
        let mut triples = std::collections::BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                if !rs.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if rs.leq(b, c) {
                        triples.insert((self.region_keys[a], self.region_keys[b], self.region_keys[c]));
                    }
                }
            }
        }
        triples.into_iter().all(|(a, b, c)| {
            let (Some(f_ca), Some(f_cb), Some(f_ba)) =
                (self.atlas.functor(c, a), self.atlas.functor(c, b), self.atlas.functor(b, a))
            else {
                return false;
            };
            (0..f_ca.len()).all(|k| f_ca[k] == f_cb[k].and_then(|m| f_ba[m]))
        })
    }

    fn slice_poset(&self, net: &Net, u: SliceSet) -> Result<usize, NetError> {
        let a = net.slice_net().evaluate(u)?;
        self.atlas.key_of(&a).ok_or_else(|| NetError::InvalidSpec(format!("slice open {u} missing from atlas")))
    }
}

/// Slice opens covering their union.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cover {
    pub pieces: Vec<SliceSet>,
}

impl Cover {
    pub fn pair(u: SliceSet, v: SliceSet) -> Self {
        Self { pieces: vec![u, v] }
    }

    pub fn union(&self) -> SliceSet {
        self.pieces.iter().fold(SliceSet::EMPTY, |a, &p| a.union(p))
    }

    pub fn is_overlapping(&self) -> bool {
        self.pieces
            .iter()
            .enumerate()
            .any(|(i, a)| self.pieces[i + 1..].iter().any(|b| !a.is_disjoint(*b)))
    }

    /// `{U∩V, U\V, V\U}` with empty pieces dropped; `None` unless this is a
    /// two-piece cover.
    pub fn three_pieces(&self) -> Option<Cover> {
        let [u, v] = self.pieces[..] else { return None };
        let pieces =
            [u.intersection(v), u.difference(v), v.difference(u)].into_iter().filter(|p| !p.is_empty()).collect();
        Some(Cover { pieces })
    }

    /// Parses `"U;V"` where each open lists sites or ranges, e.g. `"0-1;1,3"`.
    pub fn parse(s: &str, sites: usize) -> Result<Cover, NetError> {
        let bad = |m: String| NetError::InvalidSpec(m);
        let pieces = s
            .split(';')
            .map(|part| {
                let mut set = SliceSet::EMPTY;
                for tok in part.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let (a, b) = match tok.split_once('-') {
                        Some((a, b)) => (a.trim(), b.trim()),
                        None => (tok, tok),
                    };
                    let a: usize = a.parse().map_err(|_| bad(format!("bad site {a:?} in cover")))?;
                    let b: usize = b.parse().map_err(|_| bad(format!("bad site {b:?} in cover")))?;
                    if a > b || b >= sites {
                        return Err(bad(format!("site range {tok:?} outside 0..{sites}")));
                    }
                    set = set.union(SliceSet::interval(a, b));
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let cover = Cover { pieces };
        if cover.pieces.len() < 2 {
            return Err(bad("a cover needs at least two opens separated by ';'".into()));
        }
        if cover.union().is_empty() {
            return Err(bad("cover has empty union".into()));
        }
        Ok(cover)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Ordered pairs of nonempty slice opens with at most two intervals each
/// whose union has at most two intervals. Returns the covers and whether the
/// cap truncated the list.
pub fn enumerate_covers(sites: usize, cap: usize) -> (Vec<Cover>, bool) {
    let opens: Vec<SliceSet> =
        (1..1u64 << sites).map(SliceSet).filter(|s| s.intervals().len() <= 2).collect();
    let mut out = Vec::new();
    for &u in &opens {
        for &v in &opens {
            if u.union(v).intervals().len() <= 2 {
                if out.len() == cap {
                    return (out, true);
                }
                out.push(Cover::pair(u, v));
            }
        }
    }
    (out, false)
}

/// Tuples of contexts, one per cover piece, agreeing on every pairwise
/// overlap; ordered componentwise.
pub struct PullbackPoset {
    posets: Vec<Arc<ContextPoset>>,
    elements: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl PullbackPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn index_of(&self, x: &[usize]) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Context posets of the cover pieces, in cover order.
    pub fn pieces(&self) -> &[Arc<ContextPoset>] {
        &self.posets
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        let (a, b) = (&self.elements[x], &self.elements[y]);
        self.posets.iter().enumerate().all(|(i, p)| p.leq(a[i], b[i]))
    }

    pub fn name(&self, x: usize) -> String {
        let parts: Vec<String> =
            self.elements[x].iter().enumerate().map(|(i, &c)| self.posets[i].context(c).name()).collect();
        format!("({})", parts.join(", "))
    }

    pub fn spans(&self, x: usize) -> Vec<&AlgebraSpan> {
        self.elements[x].iter().enumerate().map(|(i, &c)| self.posets[i].context(c).span()).collect()
    }
}

/// Everything the checker computed for one cover, kept for reporting.
pub struct CoverAnalysis {
    pub cover: Cover,
    pub union_poset: Arc<ContextPoset>,
    pub pullback: PullbackPoset,
    /// `f(c)` as an index into the pullback; `None` where `f` is undefined
    pub f: Vec<Option<usize>>,
    /// `L(x)` as an index into the union poset, when the adjoint exists
    pub left_adjoint: Option<Vec<usize>>,
    pub report: DescentReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdjointOutcome {
    Found {
        law_pairs: usize,
        law_violations: usize,
        monotone: bool,
        /// whether `L(x)` equals the join of `x`'s components, when all
        /// pieces have commuting algebras
        agrees_with_join: Option<bool>,
    },
    /// No least `c` with `x ≤ f(c)` for this `x`.
    Missing { witness: String },
    /// `f` is not a map into the pullback.
    Undefined { witness: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessWitness {
    pub x: String,
    pub f_of_l: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentReport {
    pub cover: Cover,
    pub union_contexts: usize,
    pub pullback_size: usize,
    pub f_well_defined: bool,
    pub f_monotone: bool,
    pub adjoint: AdjointOutcome,
    /// `None` when no certified adjoint exists
    pub fully_faithful: Option<Verdict<FaithfulnessWitness>>,
    /// `(∨x) ∩ A(U_i) = x_i` for every pullback element `x` and piece `i`
    pub intersection_identities: bool,
    pub local: bool,
    /// verdict of the disjoint decomposition, for overlapping two-piece covers
    pub three_piece_local: Option<bool>,
}

impl DescentReport {
    /// Every local geometric morphism is a surjection.
    pub fn surjection(&self) -> bool {
        self.local
    }

    pub fn reason(&self) -> &'static str {
        match (&self.adjoint, &self.fully_faithful) {
            (AdjointOutcome::Undefined { .. }, _) => "comparison map undefined",
            (AdjointOutcome::Missing { .. }, _) => "no left adjoint",
            (AdjointOutcome::Found { law_violations, .. }, _) if *law_violations > 0 => "adjunction law fails",
            (_, Some(v)) if !v.holds => "left adjoint exists but not fully faithful",
            _ => "local",
        }
    }
}

fn enumerate_pullback(
    posets: &[Arc<ContextPoset>],
    overlaps: &[(usize, usize, usize, usize, usize)],
    atlas: &ContextAtlas,
) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(posets.len());
    fn rec(
        k: usize,
        posets: &[Arc<ContextPoset>],
        overlaps: &[(usize, usize, usize, usize, usize)],
        atlas: &ContextAtlas,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == posets.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..posets[k].len() {
            cur.push(c);
            let ok = overlaps.iter().filter(|o| o.1 == k).all(|&(i, j, ki, kj, ko)| {
                let fi = atlas.functor(ki, ko).expect("overlap inside piece");
                let fj = atlas.functor(kj, ko).expect("overlap inside piece");
                fi[cur[i]] == fj[cur[j]]
            });
            if ok {
                rec(k + 1, posets, overlaps, atlas, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, posets, overlaps, atlas, &mut cur, &mut out);
    out.sort();
    out
}

/// Runs the full poset-level descent check on one cover.
pub fn analyze_cover(net: &Net, bohr: &BohrifiedNet, cover: &Cover) -> Result<CoverAnalysis, NetError> {
    let mut analysis = analyze_pieces(net, bohr, cover)?;
    if cover.is_overlapping() {
        if let Some(three) = cover.three_pieces() {
            analysis.report.three_piece_local = Some(analyze_pieces(net, bohr, &three)?.report.local);
        }
    }
    Ok(analysis)
}

fn analyze_pieces(net: &Net, bohr: &BohrifiedNet, cover: &Cover) -> Result<CoverAnalysis, NetError> {
    let atlas = bohr.atlas();
    let w = cover.union();
    let kw = bohr.slice_poset(net, w)?;
    let keys =
        cover.pieces.iter().map(|&u| bohr.slice_poset(net, u)).collect::<Result<Vec<_>, _>>()?;
    let posets: Vec<Arc<ContextPoset>> = keys.iter().map(|&k| atlas.poset(k).clone()).collect();
    let mut overlaps = Vec::new();
    for i in 0..keys.len() {
        for j in i + 1..keys.len() {
            let o = cover.pieces[i].intersection(cover.pieces[j]);
            if !o.is_empty() {
                overlaps.push((i, j, keys[i], keys[j], bohr.slice_poset(net, o)?));
            }
        }
    }
    let pullback = {
        let elements = enumerate_pullback(&posets, &overlaps, atlas);
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        PullbackPoset { posets: posets.clone(), elements, index }
    };
    let union_poset = atlas.poset(kw).clone();
    let m = union_poset.len();

    // f(c) = (c ∩ A(U_i))_i
    let functors: Vec<&[Option<usize>]> = keys
        .iter()
        .map(|&k| atlas.functor(kw, k).ok_or_else(|| NetError::InvalidSpec("piece algebra not inside union".into())))
        .collect::<Result<_, _>>()?;
    let f: Vec<Option<usize>> = (0..m)
        .map(|c| {
            let tuple: Option<Vec<usize>> = functors.iter().map(|fi| fi[c]).collect();
            tuple.and_then(|t| pullback.index_of(&t))
        })
        .collect();
    let undefined = (0..m).find(|&c| f[c].is_none());
    let f_monotone = (0..m).all(|a| {
        (0..m).all(|b| {
            !union_poset.leq(a, b)
                || match (f[a], f[b]) {
                    (Some(x), Some(y)) => pullback.leq(x, y),
                    _ => true,
                }
        })
    });

    let mut report = DescentReport {
        cover: cover.clone(),
        union_contexts: m,
        pullback_size: pullback.len(),
        f_well_defined: undefined.is_none(),
        f_monotone,
        adjoint: AdjointOutcome::Undefined { witness: String::new() },
        fully_faithful: None,
        intersection_identities: intersection_identities(&pullback)?,
        local: false,
        three_piece_local: None,
    };
    if let Some(c) = undefined {
        report.adjoint = AdjointOutcome::Undefined { witness: union_poset.context(c).name() };
        return Ok(CoverAnalysis { cover: cover.clone(), union_poset, pullback, f, left_adjoint: None, report });
    }
    let f: Vec<usize> = f.into_iter().map(Option::unwrap).collect();

    // L(x) = least c with x ≤ f(c)
    let mut l = Vec::with_capacity(pullback.len());
    for x in 0..pullback.len() {
        let above: Vec<usize> = (0..m).filter(|&c| pullback.leq(x, f[c])).collect();
        match above.iter().find(|&&c| above.iter().all(|&d| union_poset.leq(c, d))) {
            Some(&c) => l.push(c),
            None => {
                report.adjoint = AdjointOutcome::Missing { witness: pullback.name(x) };
                return Ok(CoverAnalysis {
                    cover: cover.clone(),
                    union_poset,
                    pullback,
                    f: f.into_iter().map(Some).collect(),
                    left_adjoint: None,
                    report,
                });
            }
        }
    }
    let n = pullback.len();
    let law_violations = (0..n)
        .map(|x| (0..m).filter(|&c| union_poset.leq(l[x], c) != pullback.leq(x, f[c])).count())
        .sum();
    let monotone = (0..n).all(|x| (0..n).all(|y| !pullback.leq(x, y) || union_poset.leq(l[x], l[y])));
    let commuting = (0..cover.pieces.len()).all(|i| {
        (i + 1..cover.pieces.len()).all(|j| net.slice_opens_commute(cover.pieces[i], cover.pieces[j]))
    });
    let agrees_with_join = if commuting {
        let mut ok = true;
        for x in 0..n {
            if join_all(&pullback.spans(x))? != *union_poset.context(l[x]).span() {
                ok = false;
                break;
            }
        }
        Some(ok)
    } else {
        None
    };
    report.adjoint = AdjointOutcome::Found { law_pairs: n * m, law_violations, monotone, agrees_with_join };
    let bad = (0..n).find(|&x| f[l[x]] != x).map(|x| FaithfulnessWitness {
        x: pullback.name(x),
        f_of_l: pullback.name(f[l[x]]),
    });
    let ff = Verdict::new(n, bad);
    report.local = law_violations == 0 && ff.holds;
    report.fully_faithful = Some(ff);
    Ok(CoverAnalysis {
        cover: cover.clone(),
        union_poset,
        pullback,
        f: f.into_iter().map(Some).collect(),
        left_adjoint: Some(l),
        report,
    })
}

fn join_all(spans: &[&AlgebraSpan]) -> Result<AlgebraSpan, NetError> {
    let mut acc = spans[0].clone();
    for s in &spans[1..] {
        acc = algebra::join(&acc, s)?;
    }
    Ok(acc)
}

fn intersection_identities(pb: &PullbackPoset) -> Result<bool, NetError> {
    for x in 0..pb.len() {
        let spans = pb.spans(x);
        let j = join_all(&spans)?;
        for (i, s) in spans.iter().enumerate() {
            if algebra::intersect(&j, pb.posets[i].region_algebra())? != **s {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reports for every cover, sorted by cover.
pub fn check_descent_local(net: &Net, bohr: &BohrifiedNet, covers: &[Cover]) -> Result<Vec<DescentReport>, NetError> {
    let mut reports = covers
        .par_iter()
        .map(|c| analyze_cover(net, bohr, c).map(|a| a.report))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| a.cover.cmp(&b.cover));
    Ok(reports)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Biconditional {
    Consistent,
    Inconsistent,
    /// the net is not additive
    NotApplicable,
}

impl Biconditional {
    pub fn as_str(self) -> &'static str {
        match self {
            Biconditional::Consistent => "consistent",
            Biconditional::Inconsistent => "inconsistent",
            Biconditional::NotApplicable => "not applicable",
        }
    }
}

pub struct TheoremReport {
    pub additivity: Verdict<AdditivityWitness>,
    pub strong_locality: StrongLocalityVerdict,
    pub descent: Vec<DescentReport>,
    pub covers_truncated: bool,
    pub verdict: Biconditional,
}

impl TheoremReport {
    pub fn all_local(&self) -> bool {
        self.descent.iter().all(|r| r.local)
    }

    pub fn first_nonlocal(&self) -> Option<&DescentReport> {
        self.descent.iter().find(|r| !r.local)
    }
}

/// Strong locality against descent along every enumerated cover.
pub fn theorem_check(net: &Net, bohr: &BohrifiedNet, cover_cap: usize) -> Result<TheoremReport, NetError> {
    let additivity = net.check_additivity()?;
    let strong_locality = net.check_strong_locality(bohr.atlas())?;
    let (covers, covers_truncated) = enumerate_covers(net.window().sites(), cover_cap);
    let descent = check_descent_local(net, bohr, &covers)?;
    let local = descent.iter().all(|r| r.local);
    let verdict = if !additivity.holds {
        Biconditional::NotApplicable
    } else if strong_locality.holds() == local {
        Biconditional::Consistent
    } else {
        Biconditional::Inconsistent
    };
    Ok(TheoremReport { additivity, strong_locality, descent, covers_truncated, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pauli;
    use crate::net::{DerivedDecl, Family, NetSpec};

    fn setup(spec: &NetSpec) -> (Net, BohrifiedNet) {
        let net = Net::new(spec).unwrap();
        let bohr = BohrifiedNet::build(&net, &ContextConfig::default()).unwrap();
        (net, bohr)
    }

    fn site(k: usize) -> SliceSet {
        SliceSet::from_sites([k])
    }

    #[test]
    fn bohrify_small_algebras() {
        let cfg = ContextConfig::default();
        let s = bohrify(&AlgebraSpan::scalars(2), &[], &cfg).unwrap();
        assert_eq!(s.points(), 1);
        let pm = || vec![1.into(), (-1).into()];
        let z = GeneratorDecl::new("Z", pauli::z(), pm()).unwrap();
        let x = GeneratorDecl::new("X", pauli::x(), pm()).unwrap();
        let diag = algebra::generated_by(2, &[z.clone()]).unwrap();
        let s = bohrify(&diag, &[z.clone()], &cfg).unwrap();
        assert_eq!(s.points(), 2);
        assert!(s.poset().leq(0, 1));
        let s = bohrify(&AlgebraSpan::full(2), &[x, z], &cfg).unwrap();
        assert_eq!(s.points(), 3);
        assert!(s.is_functorial());
    }

    #[test]
    fn bohrified_net_is_functorial() {
        let (net, bohr) = setup(&NetSpec::spin_chain(2));
        assert!(bohr.is_functorial(&net));
        let rs = net.regions();
        let w = net.window();
        let small = rs.index_of(w.diamond_of_interval(0, 0).unwrap()).unwrap();
        let big = rs.index_of(w.full()).unwrap();
        let map = bohr.structure_map(&net, small, big).unwrap();
        let pb = bohr.space(big);
        let ps = bohr.space(small);
        let zz = pb.poset().contexts().iter().position(|c| c.name() == "⟨Z@0,Z@1⟩").unwrap();
        assert_eq!(ps.poset().context(map[zz].unwrap()).name(), "⟨Z@0⟩");
        assert!(bohr.structure_map(&net, big, small).is_none());
    }

    #[test]
    fn spin_chain_pair_cover() {
        let (net, bohr) = setup(&NetSpec::spin_chain(2));
        let a = analyze_cover(&net, &bohr, &Cover::pair(site(0), site(1))).unwrap();
        assert!(a.report.local);
        assert!(a.report.intersection_identities);
        let p = &a.union_poset;
        let zz = p.contexts().iter().position(|c| c.name() == "⟨Z@0,Z@1⟩").unwrap();
        assert_eq!(a.pullback.name(a.f[zz].unwrap()), "(⟨Z@0⟩, ⟨Z@1⟩)");
        let bottom = p.bottom().unwrap();
        assert_eq!(a.pullback.name(a.f[bottom].unwrap()), "(⟨I⟩, ⟨I⟩)");
        let l = a.left_adjoint.as_ref().unwrap();
        let x = a
            .pullback
            .elements()
            .iter()
            .position(|e| a.pullback.name(a.pullback.index_of(e).unwrap()) == "(⟨Z@0⟩, ⟨X@1⟩)")
            .unwrap();
        assert_eq!(p.context(l[x]).name(), "⟨X@1,Z@0⟩");
        assert!(matches!(a.report.adjoint, AdjointOutcome::Found { law_violations: 0, agrees_with_join: Some(true), .. }));
    }

    #[test]
    fn derived_generator_maps_to_bottom() {
        let mut spec = NetSpec::spin_chain(2);
        let zz = GeneratorDecl::new("ZZ", pauli::z().kron(&pauli::z()), vec![1.into(), (-1).into()]).unwrap();
        spec.derived.push(DerivedDecl { first: 0, last: 1, generator: zz });
        let (net, bohr) = setup(&spec);
        let a = analyze_cover(&net, &bohr, &Cover::pair(site(0), site(1))).unwrap();
        let c = a.union_poset.contexts().iter().position(|c| c.name() == "⟨ZZ⟩").unwrap();
        assert_eq!(a.pullback.name(a.f[c].unwrap()), "(⟨I⟩, ⟨I⟩)");
    }

    #[test]
    fn shared_families_fail_descent() {
        let (net, bohr) = setup(&NetSpec::shared_family(Family::ConstantCommutative, 2));
        let r = analyze_cover(&net, &bohr, &Cover::pair(site(0), site(1))).unwrap().report;
        assert!(!r.local);
        assert_eq!(r.reason(), "left adjoint exists but not fully faithful");
        let w = r.fully_faithful.unwrap().witness.unwrap();
        assert_eq!((w.x.as_str(), w.f_of_l.as_str()), ("(⟨I⟩, ⟨Z⟩)", "(⟨Z⟩, ⟨Z⟩)"));

        let (net, bohr) = setup(&NetSpec::shared_family(Family::GlobalQubit, 2));
        let r = analyze_cover(&net, &bohr, &Cover::pair(site(0), site(1))).unwrap().report;
        assert_eq!(r.reason(), "no left adjoint");
        assert_eq!(r.adjoint, AdjointOutcome::Missing { witness: "(⟨Z⟩, ⟨X⟩)".into() });
    }

    #[test]
    fn cover_enumeration_and_parsing() {
        assert_eq!(enumerate_covers(2, 100).0.len(), 9);
        assert_eq!(enumerate_covers(4, 1000).0.len(), 225);
        let (c, truncated) = enumerate_covers(4, 10);
        assert!(truncated && c.len() == 10);
        let c = Cover::parse("0-1;1,3", 4).unwrap();
        assert_eq!(c.pieces, vec![SliceSet::interval(0, 1), SliceSet::from_sites([1, 3])]);
        assert_eq!(c.to_string(), "0-1;1,3");
        assert_eq!(c.three_pieces().unwrap().pieces.len(), 3);
        assert!(Cover::parse(";", 4).is_err());
        assert!(Cover::parse("0;7", 4).is_err());
    }

    #[test]
    fn theorem_on_small_nets() {
        let (net, bohr) = setup(&NetSpec::spin_chain(2));
        let t = theorem_check(&net, &bohr, DEFAULT_COVER_CAP).unwrap();
        assert!(t.strong_locality.holds() && t.all_local());
        assert_eq!(t.verdict, Biconditional::Consistent);
        for fam in [Family::ConstantCommutative, Family::GlobalQubit] {
            let (net, bohr) = setup(&NetSpec::shared_family(fam, 2));
            let t = theorem_check(&net, &bohr, DEFAULT_COVER_CAP).unwrap();
            assert!(!t.strong_locality.holds() && !t.all_local());
            assert_eq!(t.verdict, Biconditional::Consistent);
        }
    }
}
