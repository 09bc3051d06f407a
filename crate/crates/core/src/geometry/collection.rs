use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::Serialize;

use super::interval::{Interval, Point};
use crate::error::{Error, Result};

/// Which clause of the polyocollection axiom a pair of members breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Clause {
    /// One member is contained in the other.
    Containment,
    /// The members do not meet in a common edge, yet two of their edges share
    /// at least two lattice points.
    EdgeOverlap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub first: Interval,
    pub second: Interval,
    pub clause: Clause,
}

#[derive(Clone, Debug)]
pub enum Validation {
    Valid(Polyocollection),
    Invalid(Vec<Violation>),
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid(_))
    }

    pub fn unwrap_valid(self) -> Polyocollection {
        match self {
            Validation::Valid(c) => c,
            Validation::Invalid(v) => panic!("not a polyocollection: {v:?}"),
        }
    }
}

/// A validated set of proper intervals, kept in canonical `(ll, ur)` order.
#[derive(Debug, Default)]
pub struct Polyocollection {
    members: Vec<Interval>,
    vertices: Vec<Point>,
    inner: OnceLock<Vec<Interval>>,
}

impl Clone for Polyocollection {
    fn clone(&self) -> Self {
        let inner = OnceLock::new();
        if let Some(v) = self.inner.get() {
            let _ = inner.set(v.clone());
        }
        Polyocollection { members: self.members.clone(), vertices: self.vertices.clone(), inner }
    }
}

impl PartialEq for Polyocollection {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Polyocollection {}

/// Checks the polyocollection axiom on every pair and returns the canonical
/// collection or all violating pairs. Duplicates are input errors.
pub fn validate_polyocollection(intervals: &[Interval]) -> Result<Validation> {
    let mut members = intervals.to_vec();
    members.sort();
    if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateInterval(w[0]));
    }
    let mut violations = Vec::new();
    for (i, a) in members.iter().enumerate() {
        for b in &members[i + 1..] {
            if let Some(clause) = pair_violation(a, b) {
                violations.push(Violation { first: *a, second: *b, clause });
            }
        }
    }
    if violations.is_empty() {
        Ok(Validation::Valid(Polyocollection::from_sorted(members)))
    } else {
        Ok(Validation::Invalid(violations))
    }
}

fn pair_violation(a: &Interval, b: &Interval) -> Option<Clause> {
    if a.contains(b) || b.contains(a) {
        return Some(Clause::Containment);
    }
    if let Some((lo, hi)) = a.intersection(b) {
        let is_edge_of = |i: &Interval| i.edges().iter().any(|e| e.from == lo && e.to == hi);
        if is_edge_of(a) && is_edge_of(b) {
            return None;
        }
    }
    let overlap = a.edges().iter().any(|f| b.edges().iter().any(|g| f.shared_points(g) > 1));
    overlap.then_some(Clause::EdgeOverlap)
}

impl Polyocollection {
    pub fn empty() -> Self {
        Polyocollection::default()
    }

    /// Builds from intervals already known to satisfy the axiom.
    pub(crate) fn from_sorted(members: Vec<Interval>) -> Self {
        let vertices: BTreeSet<Point> = members.iter().flat_map(|i| i.vertices()).collect();
        Polyocollection { members, vertices: vertices.into_iter().collect(), inner: OnceLock::new() }
    }

    /// Validates and panics on a violation. Intended for fixtures.
    pub fn expect_valid(intervals: &[Interval]) -> Self {
        validate_polyocollection(intervals).expect("input").unwrap_valid()
    }

    pub fn from_cells(cells: impl IntoIterator<Item = Point>) -> Self {
        let set: BTreeSet<Interval> = cells.into_iter().map(Interval::cell).collect();
        Polyocollection::from_sorted(set.into_iter().collect())
    }

    pub fn members(&self) -> &[Interval] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// V(C), sorted lexicographically.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_cell_collection(&self) -> bool {
        self.members.iter().all(Interval::is_cell)
    }

    /// The set G(C) of inner intervals, sorted canonically. Computed once.
    pub fn inner_intervals(&self) -> &[Interval] {
        self.inner.get_or_init(|| compute_inner_intervals(self))
    }

    pub fn is_inner(&self, interval: &Interval) -> bool {
        self.inner_intervals().binary_search(interval).is_ok()
    }

    /// Members covering `interval` with pairwise disjoint interiors.
    pub fn tiling_witness(&self, interval: &Interval) -> Result<Vec<Interval>> {
        if !self.is_inner(interval) {
            return Err(Error::NotInner(*interval));
        }
        let inside: Vec<Interval> = self.members.iter().filter(|m| interval.contains(m)).copied().collect();
        let grid = Grid::new(&self.members);
        let cells = grid.cells_of(interval);
        let mut chosen = Vec::new();
        let mut covered = vec![false; cells.len()];
        if tile(&grid, &cells, &inside, &mut covered, &mut chosen) {
            chosen.sort();
            Ok(chosen)
        } else {
            Err(Error::NotInner(*interval))
        }
    }

    /// Classes of the transitive closure of "share a vertex".
    pub fn connected_components(&self) -> Vec<Polyocollection> {
        let n = self.members.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut i: usize) -> usize {
            while p[i] != i {
                p[i] = p[p[i]];
                i = p[i];
            }
            i
        }
        let mut owner: BTreeMap<Point, usize> = BTreeMap::new();
        for (i, m) in self.members.iter().enumerate() {
            for v in m.vertices() {
                if let Some(&j) = owner.get(&v) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                } else {
                    owner.insert(v, i);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<Interval>> = BTreeMap::new();
        for i in 0..n {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(self.members[i]);
        }
        groups.into_values().map(Polyocollection::from_sorted).collect()
    }
}

/// The coordinate-grid refinement induced by member corners.
struct Grid {
    xs: Vec<i64>,
    ys: Vec<i64>,
}

impl Grid {
    fn new(members: &[Interval]) -> Self {
        let mut xs: Vec<i64> = members.iter().flat_map(|m| [m.lower_left().x, m.upper_right().x]).collect();
        let mut ys: Vec<i64> = members.iter().flat_map(|m| [m.lower_left().y, m.upper_right().y]).collect();
        xs.sort_unstable();
        xs.dedup();
        ys.sort_unstable();
        ys.dedup();
        Grid { xs, ys }
    }

    /// Elementary rectangles inside `i`, ordered bottom row first, left to right.
    fn cells_of(&self, i: &Interval) -> Vec<(Point, Point)> {
        let span = |v: &[i64], lo: i64, hi: i64| -> Vec<(i64, i64)> {
            v.windows(2).filter(|w| lo <= w[0] && w[1] <= hi).map(|w| (w[0], w[1])).collect()
        };
        let xs = span(&self.xs, i.lower_left().x, i.upper_right().x);
        let ys = span(&self.ys, i.lower_left().y, i.upper_right().y);
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for &(y0, y1) in &ys {
            for &(x0, x1) in &xs {
                out.push((Point::new(x0, y0), Point::new(x1, y1)));
            }
        }
        out
    }
}

fn box_inside(m: &Interval, lo: Point, hi: Point) -> bool {
    m.lower_left().le(lo) && hi.le(m.upper_right())
}

fn compute_inner_intervals(c: &Polyocollection) -> Vec<Interval> {
    if c.members.is_empty() {
        return Vec::new();
    }
    let grid = Grid::new(&c.members);
    let vset: BTreeSet<Point> = c.vertices.iter().copied().collect();
    let mut out = Vec::new();
    for &a in &c.vertices {
        for &b in &c.vertices {
            if !(a.x < b.x && a.y < b.y) {
                continue;
            }
            if !vset.contains(&Point::new(a.x, b.y)) || !vset.contains(&Point::new(b.x, a.y)) {
                continue;
            }
            let cand = Interval::new(a, b).expect("proper by construction");
            let inside: Vec<&Interval> = c.members.iter().filter(|m| cand.contains(m)).collect();
            if inside.is_empty() {
                continue;
            }
            let covered = grid
                .cells_of(&cand)
                .iter()
                .all(|&(lo, hi)| inside.iter().any(|m| box_inside(m, lo, hi)));
            if covered {
                out.push(cand);
            }
        }
    }
    out.sort();
    out
}

// Exact cover of the elementary cells: the lowest-leftmost uncovered cell must be
// the lower-left cell of whichever tile covers it.
fn tile(
    grid: &Grid,
    cells: &[(Point, Point)],
    candidates: &[Interval],
    covered: &mut [bool],
    chosen: &mut Vec<Interval>,
) -> bool {
    let Some(first) = covered.iter().position(|c| !c) else {
        return true;
    };
    let corner = cells[first].0;
    for m in candidates.iter().filter(|m| m.lower_left() == corner) {
        let idx: Vec<usize> = grid
            .cells_of(m)
            .iter()
            .map(|cell| cells.iter().position(|c| c == cell).expect("member inside interval"))
            .collect();
        if idx.iter().any(|&k| covered[k]) {
            continue;
        }
        idx.iter().for_each(|&k| covered[k] = true);
        chosen.push(*m);
        if tile(grid, cells, candidates, covered, chosen) {
            return true;
        }
        chosen.pop();
        idx.iter().for_each(|&k| covered[k] = false);
    }
    false
}
