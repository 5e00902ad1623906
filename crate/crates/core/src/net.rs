//! Nets of observables over the causally complete regions of a window, the
//! slice net, and the axiom checkers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;

use crate::algebra::{self, AlgebraSpan, GeneratorDecl};
use crate::contexts::{ContextAtlas, ContextConfig};
use crate::error::NetError;
use crate::matrix::{pauli, Mat};
use crate::spacetime::{build_region_poset, Region, RegionPoset, SliceSet, Window};

/// Default bound on the number of causally complete regions.
pub const DEFAULT_REGION_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// One tensor factor per slice site.
    SpinChain,
    /// The same commutative algebra on every nonempty region.
    ConstantCommutative,
    /// A single shared qubit seen from every nonempty region.
    GlobalQubit,
    /// Tensor factors with arbitrary site dimensions and derived generators.
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SpinChain => "spin_chain",
            Family::ConstantCommutative => "constant_commutative",
            Family::GlobalQubit => "global_qubit",
            Family::Custom => "custom",
        }
    }

    pub fn is_tensor(self) -> bool {
        matches!(self, Family::SpinChain | Family::Custom)
    }

    /// Shared generators used when a spec does not supply its own.
    pub fn default_shared(self) -> Vec<GeneratorDecl> {
        let pm = || vec![1.into(), (-1).into()];
        match self {
            Family::ConstantCommutative => vec![GeneratorDecl::new("Z", pauli::z(), pm()).unwrap()],
            Family::GlobalQubit => vec![
                GeneratorDecl::new("X", pauli::x(), pm()).unwrap(),
                GeneratorDecl::new("Z", pauli::z(), pm()).unwrap(),
            ],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Family {
    type Err = NetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spin_chain" => Ok(Family::SpinChain),
            "constant_commutative" => Ok(Family::ConstantCommutative),
            "global_qubit" => Ok(Family::GlobalQubit),
            "custom" => Ok(Family::Custom),
            other => Err(NetError::InvalidSpec(format!("unknown family {other:?}"))),
        }
    }
}

/// Local generators of one slice site, acting on a `dim`-dimensional factor.
#[derive(Clone, Debug)]
pub struct SiteDecl {
    pub label: String,
    pub dim: usize,
    pub generators: Vec<GeneratorDecl>,
}

impl SiteDecl {
    pub fn qubit(label: impl Into<String>, generators: Vec<GeneratorDecl>) -> Self {
        Self { label: label.into(), dim: 2, generators }
    }
}

/// A generator attached to the diamond over the slice interval `first..=last`,
/// acting on the tensor product of those sites.
#[derive(Clone, Debug)]
pub struct DerivedDecl {
    pub first: usize,
    pub last: usize,
    pub generator: GeneratorDecl,
}

#[derive(Clone, Debug)]
pub struct NetSpec {
    pub slice_radius: u32,
    pub family: Family,
    pub sites: Vec<SiteDecl>,
    pub derived: Vec<DerivedDecl>,
    /// Overrides the family's shared generators.
    pub shared: Option<Vec<GeneratorDecl>>,
}

impl NetSpec {
    /// A chain of qubits with `σx` and `σz` at every site.
    pub fn spin_chain(n: usize) -> Self {
        let pm = || vec![1.into(), (-1).into()];
        let sites: Vec<SiteDecl> = (0..n)
            .map(|k| {
                SiteDecl::qubit(
                    format!("s{k}"),
                    vec![
                        GeneratorDecl::new("X", pauli::x(), pm()).unwrap(),
                        GeneratorDecl::new("Z", pauli::z(), pm()).unwrap(),
                    ],
                )
            })
            .collect();
        Self { slice_radius: slice_radius_for(n), family: Family::SpinChain, sites, derived: Vec::new(), shared: None }
    }

    pub fn shared_family(family: Family, sites: usize) -> Self {
        Self { slice_radius: slice_radius_for(sites), family, sites: Vec::new(), derived: Vec::new(), shared: None }
    }
}

/// Slice radius of the window with `sites` slice sites.
pub fn slice_radius_for(sites: usize) -> u32 {
    sites.saturating_sub(1) as u32
}

#[derive(Clone, Debug)]
enum Support {
    Site(usize),
    Derived { interval: SliceSet, diamond: Region },
    Shared,
}

/// Sorted indices into the net's generator list; equal keys give equal algebras.
pub type GeneratorKey = Vec<usize>;

pub struct Net {
    family: Family,
    window: Window,
    regions: RegionPoset,
    ambient_dim: usize,
    generators: Vec<GeneratorDecl>,
    supports: Vec<Support>,
    memo: RwLock<HashMap<GeneratorKey, Arc<AlgebraSpan>>>,
}

impl fmt::Debug for Net {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Net")
            .field("family", &self.family)
            .field("sites", &self.window.sites())
            .field("regions", &self.regions.len())
            .field("ambient_dim", &self.ambient_dim)
            .finish()
    }
}

impl Net {
    pub fn new(spec: &NetSpec) -> Result<Self, NetError> {
        Self::with_region_cap(spec, DEFAULT_REGION_CAP)
    }

    pub fn with_region_cap(spec: &NetSpec, region_cap: usize) -> Result<Self, NetError> {
        let window = Window::new(spec.slice_radius)?;
        let n = window.sites();
        let mut generators = Vec::new();
        let mut supports = Vec::new();
        let ambient_dim;
        if spec.family.is_tensor() {
            if spec.sites.len() != n {
                return Err(NetError::InvalidSpec(format!(
                    "window has {n} slice sites but {} sites are declared",
                    spec.sites.len()
                )));
            }
            if spec.shared.as_ref().is_some_and(|s| !s.is_empty()) {
                return Err(NetError::InvalidSpec("tensor families take no shared generators".into()));
            }
            let dims: Vec<usize> = spec.sites.iter().map(|s| s.dim).collect();
            if dims.contains(&0) {
                return Err(NetError::InvalidSpec("site dimension must be positive".into()));
            }
            if spec.family == Family::SpinChain && dims.iter().any(|&d| d != 2) {
                return Err(NetError::InvalidSpec("spin_chain sites must be qubits".into()));
            }
            let total: usize = dims.iter().product();
            if total > 64 {
                return Err(NetError::InvalidSpec(format!("ambient dimension {total} exceeds 64")));
            }
            ambient_dim = total;
            let embed = |m: &Mat, first: usize, last: usize| -> Mat {
                let before: usize = dims[..first].iter().product();
                let after: usize = dims[last + 1..].iter().product();
                Mat::identity(before).kron(m).kron(&Mat::identity(after))
            };
            for (k, site) in spec.sites.iter().enumerate() {
                for g in &site.generators {
                    if g.dim() != site.dim {
                        return Err(NetError::InvalidSpec(format!(
                            "generator {} has dimension {} on site {} of dimension {}",
                            g.label(),
                            g.dim(),
                            site.label,
                            site.dim
                        )));
                    }
                    generators.push(g.relabeled(format!("{}@{k}", g.label()), embed(g.matrix(), k, k)));
                    supports.push(Support::Site(k));
                }
            }
            for d in &spec.derived {
                if d.first > d.last || d.last >= n {
                    return Err(NetError::InvalidSpec(format!(
                        "derived generator {} has interval {}..={} outside 0..{n}",
                        d.generator.label(),
                        d.first,
                        d.last
                    )));
                }
                let local: usize = dims[d.first..=d.last].iter().product();
                if d.generator.dim() != local {
                    return Err(NetError::InvalidSpec(format!(
                        "derived generator {} has dimension {}, expected {local}",
                        d.generator.label(),
                        d.generator.dim()
                    )));
                }
                let matrix = embed(d.generator.matrix(), d.first, d.last);
                generators.push(d.generator.relabeled(d.generator.label(), matrix));
                supports.push(Support::Derived {
                    interval: SliceSet::interval(d.first, d.last),
                    diamond: window.diamond_of_interval(d.first, d.last)?,
                });
            }
        } else {
            if spec.sites.iter().any(|s| !s.generators.is_empty()) || !spec.derived.is_empty() {
                return Err(NetError::InvalidSpec(format!(
                    "{} takes only shared generators",
                    spec.family
                )));
            }
            let shared = spec.shared.clone().unwrap_or_else(|| spec.family.default_shared());
            let d = shared.first().map(GeneratorDecl::dim).unwrap_or(1);
            if shared.iter().any(|g| g.dim() != d) {
                return Err(NetError::InvalidSpec("shared generators differ in dimension".into()));
            }
            ambient_dim = d;
            for g in shared {
                generators.push(g);
                supports.push(Support::Shared);
            }
        }
        let mut labels = BTreeSet::new();
        for g in &generators {
            if !labels.insert(g.label().to_string()) {
                return Err(NetError::InvalidSpec(format!("duplicate generator label {}", g.label())));
            }
        }
        let regions = build_region_poset(&window, region_cap)?;
        Ok(Self {
            family: spec.family,
            window,
            regions,
            ambient_dim,
            generators,
            supports,
            memo: RwLock::new(HashMap::new()),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn regions(&self) -> &RegionPoset {
        &self.regions
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn generators(&self) -> &[GeneratorDecl] {
        &self.generators
    }

    pub fn generators_of(&self, key: &GeneratorKey) -> Vec<GeneratorDecl> {
        key.iter().map(|&i| self.generators[i].clone()).collect()
    }

    /// Generators of `A(O)`: site generators at the slice sites of `O`,
    /// derived generators whose diamond lies in `O`, and shared generators
    /// when `O` is nonempty.
    pub fn region_key(&self, o: Region) -> GeneratorKey {
        let sites = self.window.sites_in(o);
        (0..self.generators.len())
            .filter(|&i| match &self.supports[i] {
                Support::Site(k) => sites.contains(*k),
                Support::Derived { diamond, .. } => diamond.is_subset(o),
                Support::Shared => !o.is_empty(),
            })
            .collect()
    }

    /// Generators of the slice algebra: the union over connected components
    /// of `U` of the generators of the component's diamond.
    pub fn slice_key(&self, u: SliceSet) -> GeneratorKey {
        let comps = u.components();
        (0..self.generators.len())
            .filter(|&i| match &self.supports[i] {
                Support::Site(k) => u.contains(*k),
                Support::Derived { interval, .. } => comps.iter().any(|c| interval.is_subset(*c)),
                Support::Shared => !u.is_empty(),
            })
            .collect()
    }

    /// The algebra generated by the keyed generators, memoized.
    pub fn algebra(&self, key: &GeneratorKey) -> Result<Arc<AlgebraSpan>, NetError> {
        if let Some(a) = self.memo.read().unwrap().get(key) {
            return Ok(a.clone());
        }
        let gens: Vec<Mat> = key.iter().map(|&i| self.generators[i].matrix().clone()).collect();
        let a = Arc::new(algebra::generate_subalgebra(self.ambient_dim, &gens)?);
        Ok(self.memo.write().unwrap().entry(key.clone()).or_insert(a).clone())
    }

    /// `A(O)` for a causally complete region.
    pub fn evaluate(&self, o: Region) -> Result<Arc<AlgebraSpan>, NetError> {
        if self.regions.index_of(o).is_none() {
            return Err(NetError::NotComplete);
        }
        self.algebra(&self.region_key(o))
    }

    pub fn slice_net(&self) -> SliceNet<'_> {
        SliceNet { net: self }
    }

    /// Context posets for every region algebra and every slice-open algebra.
    pub fn context_atlas(&self, config: &ContextConfig) -> Result<ContextAtlas, NetError> {
        let mut keys: BTreeSet<GeneratorKey> =
            self.regions.regions().iter().map(|&o| self.region_key(o)).collect();
        for bits in 0..1u64 << self.window.sites() {
            keys.insert(self.slice_key(SliceSet(bits)));
        }
        let entries = keys
            .into_iter()
            .map(|k| Ok(((*self.algebra(&k)?).clone(), self.generators_of(&k))))
            .collect::<Result<Vec<_>, NetError>>()?;
        Ok(ContextAtlas::build(entries, config)?)
    }

    /// Unordered pairs of nonempty spacelike regions, one representative per
    /// pair of generator keys, in a deterministic order.
    fn spacelike_key_pairs(&self) -> Vec<(Region, Region, GeneratorKey, GeneratorKey)> {
        let rs = self.regions.regions();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (i, &a) in rs.iter().enumerate() {
            if a.is_empty() {
                continue;
            }
            for &b in &rs[i + 1..] {
                if b.is_empty() || !self.window.are_spacelike(a, b) {
                    continue;
                }
                let (ka, kb) = (self.region_key(a), self.region_key(b));
                if seen.insert((ka.clone(), kb.clone())) {
                    out.push((a, b, ka, kb));
                }
            }
        }
        out
    }

    pub fn check_isotony(&self) -> Result<Verdict<RegionPair>, NetError> {
        let rs = self.regions.regions();
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::new();
        for &a in rs {
            for &b in rs {
                if a != b && a.is_subset(b) {
                    let key = (self.region_key(a), self.region_key(b));
                    if seen.insert(key) {
                        pairs.push((a, b));
                    }
                }
            }
        }
        let bad = pairs
            .par_iter()
            .map(|&(a, b)| Ok((a, b, self.evaluate(a)?.is_subalgebra_of(&*self.evaluate(b)?))))
            .collect::<Result<Vec<_>, NetError>>()?
            .into_iter()
            .find(|t| !t.2)
            .map(|(a, b, _)| self.region_pair(a, b));
        Ok(Verdict::new(pairs.len(), bad))
    }

    /// Spacelike regions have commuting algebras. Checked on generators and
    /// their adjoints, which generate the algebras as *-algebras.
    pub fn check_causal_locality(&self) -> Verdict<LocalityWitness> {
        let pairs = self.spacelike_key_pairs();
        let bad = pairs.iter().find_map(|(a, b, ka, kb)| {
            self.noncommuting_pair(ka, kb).map(|(x, y)| LocalityWitness {
                regions: self.region_pair(*a, *b),
                first: x,
                second: y,
            })
        });
        Verdict::new(pairs.len(), bad)
    }

    fn noncommuting_pair(&self, ka: &GeneratorKey, kb: &GeneratorKey) -> Option<(String, String)> {
        for &i in ka {
            for &j in kb {
                let (g, h) = (&self.generators[i], &self.generators[j]);
                let (gm, hm) = (g.matrix(), h.matrix());
                if !gm.commutes_with(hm) || !gm.adjoint().commutes_with(hm) {
                    return Some((g.label().to_string(), h.label().to_string()));
                }
            }
        }
        None
    }

    /// Whether the generators of two slice opens commute.
    pub fn slice_opens_commute(&self, u: SliceSet, v: SliceSet) -> bool {
        self.noncommuting_pair(&self.slice_key(u), &self.slice_key(v)).is_none()
    }

    /// The slice formulation: algebras of disjoint slice opens commute.
    pub fn check_slice_locality(&self) -> Verdict<(SliceSet, SliceSet, String, String)> {
        let n = self.window.sites();
        let mut checked = 0;
        for u in 1..1u64 << n {
            for v in u + 1..1u64 << n {
                if u & v != 0 {
                    continue;
                }
                checked += 1;
                let (us, vs) = (SliceSet(u), SliceSet(v));
                if let Some((x, y)) = self.noncommuting_pair(&self.slice_key(us), &self.slice_key(vs)) {
                    return Verdict::new(checked, Some((us, vs, x, y)));
                }
            }
        }
        Verdict::new(checked, None)
    }

    /// `A(D[a,c]) = A(D[a,b]) ∨ A(D[b+1,c])` for every split of every slice
    /// interval into two consecutive pieces.
    pub fn check_additivity(&self) -> Result<Verdict<AdditivityWitness>, NetError> {
        let n = self.window.sites();
        let mut splits = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b + 1..n {
                    splits.push((a, b, c));
                }
            }
        }
        let results = splits
            .par_iter()
            .map(|&(a, b, c)| {
                let w = &self.window;
                let whole = self.evaluate(w.diamond_of_interval(a, c)?)?;
                let left = self.evaluate(w.diamond_of_interval(a, b)?)?;
                let right = self.evaluate(w.diamond_of_interval(b + 1, c)?)?;
                let joined = algebra::join(&left, &right)?;
                Ok(AdditivityWitness {
                    left: (a, b),
                    right: (b + 1, c),
                    whole_dim: whole.dimension(),
                    join_dim: joined.dimension(),
                    equal: *whole == joined,
                })
            })
            .collect::<Result<Vec<_>, NetError>>()?;
        let bad = results.into_iter().find(|w| !w.equal);
        Ok(Verdict::new(splits.len(), bad))
    }

    /// Causal locality plus `(C₁∨C₂) ∩ A(O₁) = C₁` and `(C₁∨C₂) ∩ A(O₂) = C₂`
    /// for all spacelike regions and all context pairs of their posets.
    pub fn check_strong_locality(&self, atlas: &ContextAtlas) -> Result<StrongLocalityVerdict, NetError> {
        let causal = self.check_causal_locality();
        let pairs = self.spacelike_key_pairs();
        let mut jobs = Vec::new();
        let mut seen = BTreeSet::new();
        for (a, b, ka, kb) in &pairs {
            let (aa, ab) = (self.algebra(ka)?, self.algebra(kb)?);
            let (pa, pb) = match (atlas.key_of(&aa), atlas.key_of(&ab)) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(NetError::InvalidSpec("region algebra missing from atlas".into())),
            };
            if !seen.insert((pa, pb)) {
                continue;
            }
            for i in 0..atlas.poset(pa).len() {
                for j in 0..atlas.poset(pb).len() {
                    jobs.push((*a, *b, pa, pb, i, j));
                }
            }
        }
        let outcomes = jobs
            .par_iter()
            .map(|&(a, b, pa, pb, i, j)| {
                let (p1, p2) = (atlas.poset(pa), atlas.poset(pb));
                let (c1, c2) = (p1.context(i).span(), p2.context(j).span());
                let joined = algebra::join(c1, c2)?;
                let ok = algebra::intersect(&joined, p1.region_algebra())? == *c1
                    && algebra::intersect(&joined, p2.region_algebra())? == *c2;
                Ok(ok.then_some(()).ok_or_else(|| StrongLocalityWitness {
                    regions: self.region_pair(a, b),
                    first: p1.context(i).name(),
                    second: p2.context(j).name(),
                }))
            })
            .collect::<Result<Vec<_>, NetError>>()?;
        let bad = outcomes.into_iter().find_map(Result::err);
        Ok(StrongLocalityVerdict { causal, intersections: Verdict::new(jobs.len(), bad) })
    }

    /// `dim(A(O₁) ∨ A(O₂)) = dim A(O₁) · dim A(O₂)` for spacelike regions.
    pub fn check_einstein_causality(&self) -> Result<EinsteinVerdict, NetError> {
        let causal = self.check_causal_locality();
        if !causal.holds {
            return Ok(EinsteinVerdict { precondition: causal, factorization: None });
        }
        let pairs = self.spacelike_key_pairs();
        let results = pairs
            .par_iter()
            .map(|(a, b, ka, kb)| {
                let (x, y) = (self.algebra(ka)?, self.algebra(kb)?);
                let j = algebra::join(&x, &y)?;
                Ok(EinsteinWitness {
                    regions: self.region_pair(*a, *b),
                    first_dim: x.dimension(),
                    second_dim: y.dimension(),
                    join_dim: j.dimension(),
                })
            })
            .collect::<Result<Vec<_>, NetError>>()?;
        let bad = results.into_iter().find(|w| w.join_dim != w.first_dim * w.second_dim);
        Ok(EinsteinVerdict { precondition: causal, factorization: Some(Verdict::new(pairs.len(), bad)) })
    }

    fn region_pair(&self, a: Region, b: Region) -> RegionPair {
        RegionPair { first: self.window.region_points(a), second: self.window.region_points(b) }
    }
}

/// `U ↦ A(O_U)`, with disconnected opens generated by their components.
#[derive(Clone, Copy)]
pub struct SliceNet<'a> {
    net: &'a Net,
}

impl SliceNet<'_> {
    pub fn net(&self) -> &Net {
        self.net
    }

    pub fn sites(&self) -> usize {
        self.net.window.sites()
    }

    pub fn evaluate(&self, u: SliceSet) -> Result<Arc<AlgebraSpan>, NetError> {
        if !u.is_subset(self.net.window.all_sites()) {
            return Err(NetError::InvalidSpec(format!("slice open {u} outside the window")));
        }
        self.net.algebra(&self.net.slice_key(u))
    }

    pub fn generators(&self, u: SliceSet) -> Vec<GeneratorDecl> {
        self.net.generators_of(&self.net.slice_key(u))
    }
}

/// Outcome of an exhaustive check: how many cases were examined and the
/// first failing case, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict<W> {
    pub holds: bool,
    pub checked: usize,
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn new(checked: usize, witness: Option<W>) -> Self {
        Self { holds: witness.is_none(), checked, witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionPair {
    pub first: Vec<crate::spacetime::Point>,
    pub second: Vec<crate::spacetime::Point>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalityWitness {
    pub regions: RegionPair,
    pub first: String,
    pub second: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityWitness {
    pub left: (usize, usize),
    pub right: (usize, usize),
    pub whole_dim: usize,
    pub join_dim: usize,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongLocalityWitness {
    pub regions: RegionPair,
    pub first: String,
    pub second: String,
}

/// Strong locality holds only when causal locality does as well.
#[derive(Clone, Debug)]
pub struct StrongLocalityVerdict {
    pub causal: Verdict<LocalityWitness>,
    pub intersections: Verdict<StrongLocalityWitness>,
}

impl StrongLocalityVerdict {
    pub fn holds(&self) -> bool {
        self.causal.holds && self.intersections.holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EinsteinWitness {
    pub regions: RegionPair,
    pub first_dim: usize,
    pub second_dim: usize,
    pub join_dim: usize,
}

/// `factorization` is `None` when causal locality already fails.
#[derive(Clone, Debug)]
pub struct EinsteinVerdict {
    pub precondition: Verdict<LocalityWitness>,
    pub factorization: Option<Verdict<EinsteinWitness>>,
}

impl EinsteinVerdict {
    pub fn holds(&self) -> bool {
        self.precondition.holds && self.factorization.as_ref().is_some_and(|v| v.holds)
    }
}
