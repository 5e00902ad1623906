//! Discretized 1+1 Minkowski space.
//!
//! A window of slice radius `r` is the double cone `D((−r,0),(r,0))` on the
//! light-cone lattice: the points `(t, x)` with `|t| + |x| ≤ r` and
//! `t + x ≡ r (mod 2)`. Its `t = 0` row holds `r + 1` slice sites at
//! `x = −r, −r+2, …, r`; site `k` sits at `x = −r + 2k`. Neighbouring sites
//! are joined by lightlike links through the rows above and below, which is
//! what lets causal completion fill in the diamond over a slice interval.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::SpacetimeError;

/// Largest supported slice radius; `(r+1)²` points must fit in a `u128`.
pub const MAX_RADIUS: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub t: i64,
    pub x: i64,
}

impl Point {
    pub fn new(t: i64, x: i64) -> Self {
        Self { t, x }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.t, self.x)
    }
}

/// `p ≤ q`: `q − p` is future-directed timelike or lightlike (or zero).
pub fn causal_leq(p: Point, q: Point) -> bool {
    (q.x - p.x).abs() <= q.t - p.t
}

pub fn causally_related(p: Point, q: Point) -> bool {
    causal_leq(p, q) || causal_leq(q, p)
}

/// No point of `u` is causally related to a point of `v`.
pub fn spacelike(u: &[Point], v: &[Point]) -> bool {
    u.iter().all(|&p| v.iter().all(|&q| !causally_related(p, q)))
}

/// A set of window points, as a bitmask over the window's point indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Region(pub u128);

impl Region {
    pub const EMPTY: Region = Region(0);

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains_index(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn union(self, o: Region) -> Region {
        Region(self.0 | o.0)
    }

    pub fn intersection(self, o: Region) -> Region {
        Region(self.0 & o.0)
    }

    pub fn is_subset(self, o: Region) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..128).filter(move |&i| self.contains_index(i))
    }
}

impl PartialOrd for Region {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Smaller regions first, then by bit pattern.
impl Ord for Region {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Region({:#x})", self.0)
    }
}

/// A set of slice sites, as a bitmask over site indices. Opens of the slice
/// are arbitrary site sets; connected opens are single intervals.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct SliceSet(pub u64);

impl SliceSet {
    pub const EMPTY: SliceSet = SliceSet(0);

    pub fn from_sites<I: IntoIterator<Item = usize>>(sites: I) -> Self {
        SliceSet(sites.into_iter().fold(0, |acc, s| acc | 1 << s))
    }

    /// Sites `a..=b`.
    pub fn interval(a: usize, b: usize) -> Self {
        Self::from_sites(a..=b)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, site: usize) -> bool {
        self.0 >> site & 1 == 1
    }

    pub fn sites(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&s| self.contains(s))
    }

    pub fn union(self, o: SliceSet) -> SliceSet {
        SliceSet(self.0 | o.0)
    }

    pub fn intersection(self, o: SliceSet) -> SliceSet {
        SliceSet(self.0 & o.0)
    }

    pub fn difference(self, o: SliceSet) -> SliceSet {
        SliceSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: SliceSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: SliceSet) -> bool {
        self.0 & o.0 == 0
    }

    /// Maximal runs of consecutive sites, sorted.
    pub fn intervals(self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for s in self.sites() {
            match out.last_mut() {
                Some((_, b)) if *b + 1 == s => *b = s,
                _ => out.push((s, s)),
            }
        }
        out
    }

    pub fn components(self) -> Vec<SliceSet> {
        self.intervals().into_iter().map(|(a, b)| SliceSet::interval(a, b)).collect()
    }

    pub fn is_connected(self) -> bool {
        self.intervals().len() == 1
    }
}

impl fmt::Display for SliceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self
            .intervals()
            .into_iter()
            .map(|(a, b)| if a == b { a.to_string() } else { format!("{a}-{b}") })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SliceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// The finite double cone in which all complements are taken.
#[derive(Clone, Debug)]
pub struct Window {
    radius: u32,
    points: Vec<Point>,
    index: HashMap<Point, usize>,
    /// `spacelike_to[i]`: mask of points spacelike to point `i`
    spacelike_to: Vec<u128>,
    /// point index of each slice site
    site_points: Vec<usize>,
}

impl Window {
    pub fn new(radius: u32) -> Result<Self, SpacetimeError> {
        if radius > MAX_RADIUS {
            return Err(SpacetimeError::WindowTooLarge { radius, cap: MAX_RADIUS });
        }
        let r = radius as i64;
        let mut points = Vec::new();
        for t in -r..=r {
            for x in -r..=r {
                if t.abs() + x.abs() <= r && (t + x - r).rem_euclid(2) == 0 {
                    points.push(Point::new(t, x));
                }
            }
        }
        let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let spacelike_to = points
            .iter()
            .map(|&p| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, &q)| !causally_related(p, q))
                    .fold(0u128, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        let site_points = (0..=r).map(|k| index[&Point::new(0, -r + 2 * k)]).collect();
        Ok(Self { radius, points, index, spacelike_to, site_points })
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn sites(&self) -> usize {
        self.site_points.len()
    }

    pub fn all_sites(&self) -> SliceSet {
        SliceSet::interval(0, self.sites() - 1)
    }

    pub fn site_point(&self, site: usize) -> Point {
        self.points[self.site_points[site]]
    }

    pub fn full(&self) -> Region {
        if self.points.len() == 128 {
            Region(u128::MAX)
        } else {
            Region((1u128 << self.points.len()) - 1)
        }
    }

    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.index.get(&p).copied()
    }

    /// `None` if some point lies outside the window.
    pub fn region(&self, pts: &[Point]) -> Option<Region> {
        pts.iter().try_fold(Region::EMPTY, |acc, p| Some(Region(acc.0 | 1 << self.index_of(*p)?)))
    }

    pub fn region_points(&self, r: Region) -> Vec<Point> {
        r.indices().take_while(|&i| i < self.points.len()).map(|i| self.points[i]).collect()
    }

    pub fn slice_region(&self, s: SliceSet) -> Region {
        Region(s.sites().filter(|&k| k < self.sites()).fold(0, |acc, k| acc | 1 << self.site_points[k]))
    }

    /// Slice sites lying in the region.
    pub fn sites_in(&self, r: Region) -> SliceSet {
        SliceSet::from_sites((0..self.sites()).filter(|&k| r.contains_index(self.site_points[k])))
    }

    /// `O′`: window points spacelike to every point of `O`.
    pub fn causal_complement(&self, o: Region) -> Region {
        o.indices().fold(self.full(), |acc, i| Region(acc.0 & self.spacelike_to[i]))
    }

    /// `O″`
    pub fn causal_completion(&self, o: Region) -> Region {
        self.causal_complement(self.causal_complement(o))
    }

    pub fn is_causally_complete(&self, o: Region) -> bool {
        self.causal_completion(o) == o
    }

    pub fn are_spacelike(&self, a: Region, b: Region) -> bool {
        b.is_subset(self.causal_complement(a))
    }

    /// Smallest causally complete region containing both.
    pub fn join(&self, a: Region, b: Region) -> Region {
        self.causal_completion(a.union(b))
    }

    /// The smallest causally complete region containing the slice interval
    /// `a..=b`: the points `(t, x)` with `x_a + |t| ≤ x ≤ x_b − |t|`.
    pub fn diamond_of_interval(&self, a: usize, b: usize) -> Result<Region, SpacetimeError> {
        if a > b {
            return Err(SpacetimeError::EmptyInterval);
        }
        if b >= self.sites() {
            return Err(SpacetimeError::SiteOutOfRange { site: b, sites: self.sites() });
        }
        let (xa, xb) = (self.site_point(a).x, self.site_point(b).x);
        let pts: Vec<Point> =
            self.points.iter().copied().filter(|p| xa + p.t.abs() <= p.x && p.x <= xb - p.t.abs()).collect();
        Ok(self.region(&pts).unwrap())
    }

    /// `O_U` for a slice open: the completion of its sites. For a connected
    /// `U` this is the diamond over its interval.
    pub fn region_of_slice(&self, s: SliceSet) -> Region {
        self.causal_completion(self.slice_region(s))
    }

    /// Whether every maximal chain of the causal order on the window meets
    /// the `t = 0` row in exactly one point.
    pub fn slice_is_cauchy(&self) -> bool {
        let n = self.points.len();
        let lt = |i: usize, j: usize| i != j && causal_leq(self.points[i], self.points[j]);
        let covers: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).filter(|&j| lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j))).collect())
            .collect();
        let minimal: Vec<usize> = (0..n).filter(|&j| !(0..n).any(|i| lt(i, j))).collect();
        let mut stack: Vec<(usize, usize)> =
            minimal.iter().map(|&m| (m, (self.points[m].t == 0) as usize)).collect();
        while let Some((i, hits)) = stack.pop() {
            if covers[i].is_empty() {
                if hits != 1 {
                    return false;
                }
                continue;
            }
            for &j in &covers[i] {
                stack.push((j, hits + (self.points[j].t == 0) as usize));
            }
        }
        true
    }
}

/// The causally complete regions of a window, ordered by inclusion.
#[derive(Clone, Debug)]
pub struct RegionPoset {
    regions: Vec<Region>,
    index: HashMap<Region, usize>,
}

impl RegionPoset {
    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn len(&self) -> usize {
        self.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.regions.is_empty()
    }

    pub fn index_of(&self, r: Region) -> Option<usize> {
        self.index.get(&r).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.regions[i].is_subset(self.regions[j])
    }
}

/// Enumerates the fixed points of `O ↦ O″` by breadth-first search: every
/// complete region is reached from `∅″` by repeatedly adding one point and
/// completing.
pub fn build_region_poset(w: &Window, cap: usize) -> Result<RegionPoset, SpacetimeError> {
    let start = w.causal_completion(Region::EMPTY);
    let mut seen: HashSet<Region> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        for i in 0..w.len() {
            if c.contains_index(i) {
                continue;
            }
            let next = w.causal_completion(Region(c.0 | 1 << i));
            if seen.insert(next) {
                if seen.len() > cap {
                    return Err(SpacetimeError::CapExceeded { cap });
                }
                queue.push_back(next);
            }
        }
    }
    let mut regions: Vec<Region> = seen.into_iter().collect();
    regions.sort();
    let index = regions.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    Ok(RegionPoset { regions, index })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: i64, x: i64) -> Point {
        Point::new(t, x)
    }

    #[test]
    fn causal_order_examples() {
        assert!(causal_leq(p(0, 0), p(2, 1)));
        assert!(!causal_leq(p(0, 0), p(0, 3)));
        assert!(!causal_leq(p(1, 1), p(0, 0)));
    }

    #[test]
    fn spacelike_examples() {
        assert!(spacelike(&[p(0, 0)], &[p(0, 3)]));
        assert!(!spacelike(&[p(0, 0)], &[p(1, 0)]));
        assert!(spacelike(&[], &[p(5, 5)]));
    }

    #[test]
    fn window_shape() {
        let w = Window::new(3).unwrap();
        assert_eq!(w.len(), 16);
        assert_eq!(w.sites(), 4);
        assert_eq!(w.site_point(0), p(0, -3));
        assert!(Window::new(MAX_RADIUS + 1).is_err());
        assert!(w.slice_is_cauchy());
    }

    #[test]
    fn complement_examples() {
        let w = Window::new(2).unwrap();
        assert_eq!(w.causal_complement(Region::EMPTY), w.full());
        assert_eq!(w.causal_complement(w.full()), Region::EMPTY);
        let o = w.region(&[p(0, 0)]).unwrap();
        let wedges = w.region(&[p(0, -2), p(0, 2)]).unwrap();
        assert_eq!(w.causal_complement(o), wedges);
    }

    #[test]
    fn completion_fills_the_diamond() {
        let w = Window::new(2).unwrap();
        let two = w.region(&[p(0, 0), p(0, 2)]).unwrap();
        let diamond = w.region(&[p(0, 0), p(0, 2), p(1, 1), p(-1, 1)]).unwrap();
        assert_eq!(w.causal_completion(two), diamond);
        assert_eq!(w.diamond_of_interval(1, 2).unwrap(), diamond);
        assert_eq!(w.causal_completion(Region::EMPTY), Region::EMPTY);
        assert!(w.is_causally_complete(diamond));
    }

    #[test]
    fn diamond_examples() {
        let w = Window::new(3).unwrap();
        assert_eq!(w.diamond_of_interval(2, 2).unwrap(), w.region(&[p(0, 1)]).unwrap());
        assert_eq!(w.diamond_of_interval(0, 3).unwrap(), w.full());
        assert!(matches!(w.diamond_of_interval(2, 1), Err(SpacetimeError::EmptyInterval)));
        for a in 0..4 {
            for b in a..4 {
                let d = w.diamond_of_interval(a, b).unwrap();
                assert_eq!(d, w.region_of_slice(SliceSet::interval(a, b)));
            }
        }
    }

    #[test]
    fn region_poset_small_windows() {
        let w = Window::new(0).unwrap();
        assert_eq!(build_region_poset(&w, 100).unwrap().len(), 2);
        let w = Window::new(3).unwrap();
        let rp = build_region_poset(&w, 10_000).unwrap();
        for r in rp.regions() {
            assert!(w.is_causally_complete(*r));
        }
        let d0 = w.diamond_of_interval(0, 0).unwrap();
        let d2 = w.diamond_of_interval(2, 2).unwrap();
        // sites 0 and 2 are not adjacent; their join stays disconnected
        assert_eq!(w.join(d0, d2), d0.union(d2));
        let d1 = w.diamond_of_interval(1, 1).unwrap();
        assert_eq!(w.join(d0, d1), w.diamond_of_interval(0, 1).unwrap());
        assert!(matches!(build_region_poset(&w, 3), Err(SpacetimeError::CapExceeded { .. })));
    }

    #[test]
    fn slice_set_intervals() {
        let s = SliceSet::from_sites([0, 2, 3]);
        assert_eq!(s.intervals(), vec![(0, 0), (2, 3)]);
        assert_eq!(s.to_string(), "0,2-3");
        assert!(!s.is_connected());
        assert!(SliceSet::interval(1, 3).is_connected());
    }
}
