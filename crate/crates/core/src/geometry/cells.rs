use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::collection::Polyocollection;
use super::interval::{Interval, Point, Segment};

const DIRS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

/// A finite collection of unit cells, identified by their lower-left corners.
#[derive(Debug)]
pub struct CellComplex {
    cells: BTreeSet<Point>,
    collection: OnceLock<Polyocollection>,
    edges: OnceLock<EdgeIntervals>,
}

impl Clone for CellComplex {
    fn clone(&self) -> Self {
        CellComplex::new(self.cells.iter().copied())
    }
}

impl PartialEq for CellComplex {
    fn eq(&self, other: &Self) -> bool {
        self.cells == other.cells
    }
}

impl Eq for CellComplex {}

impl Serialize for CellComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.cells.iter())
    }
}

/// A maximal run of at least two cells in one row or column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Block {
    pub first: Point,
    pub last: Point,
    pub horizontal: bool,
}

impl Block {
    pub fn rank(&self) -> usize {
        if self.horizontal {
            (self.last.x - self.first.x + 1) as usize
        } else {
            (self.last.y - self.first.y + 1) as usize
        }
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.first, self.last.offset(1, 1)).expect("cells span a proper interval")
    }
}

/// Maximal horizontal and vertical edge intervals.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeIntervals {
    pub horizontal: Vec<Segment>,
    pub vertical: Vec<Segment>,
}

impl EdgeIntervals {
    pub fn horizontal_index(&self, p: Point) -> Option<usize> {
        self.horizontal.iter().position(|s| s.contains(p))
    }

    pub fn vertical_index(&self, p: Point) -> Option<usize> {
        self.vertical.iter().position(|s| s.contains(p))
    }

    /// Whether both points lie on one maximal edge interval.
    pub fn share_interval(&self, p: Point, q: Point) -> bool {
        self.horizontal.iter().chain(&self.vertical).any(|s| s.contains(p) && s.contains(q))
    }
}

/// The first closed-path condition a cell collection fails, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum ClosedPathFailure {
    /// At most five cells.
    TooFewCells { cells: usize },
    /// A cell without exactly two edge neighbours, so no cyclic sequence exists.
    NotCyclic { cell: Point, neighbours: usize },
    /// Every cell has two neighbours but they form several cycles.
    SeveralCycles { first_missed: Point },
    /// Two cells far apart in the sequence share a vertex.
    VertexContact { first: Point, second: Point },
}

impl fmt::Display for ClosedPathFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedPathFailure::TooFewCells { cells } => write!(f, "only {cells} cells (need more than 5)"),
            ClosedPathFailure::NotCyclic { cell, neighbours } => {
                write!(f, "cell {cell} has {neighbours} edge neighbours (need 2)")
            }
            ClosedPathFailure::SeveralCycles { first_missed } => {
                write!(f, "cells do not form a single cycle (missed {first_missed})")
            }
            ClosedPathFailure::VertexContact { first, second } => {
                write!(f, "non-adjacent cells {first} and {second} share a vertex")
            }
        }
    }
}

impl CellComplex {
    pub fn new(cells: impl IntoIterator<Item = Point>) -> Self {
        CellComplex { cells: cells.into_iter().collect(), collection: OnceLock::new(), edges: OnceLock::new() }
    }

    pub fn from_coords(cells: &[(i64, i64)]) -> Self {
        CellComplex::new(cells.iter().map(|&c| Point::from(c)))
    }

    pub fn cells(&self) -> &BTreeSet<Point> {
        &self.cells
    }

    pub fn contains(&self, p: Point) -> bool {
        self.cells.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn translated(&self, dx: i64, dy: i64) -> CellComplex {
        CellComplex::new(self.cells.iter().map(|c| c.offset(dx, dy)))
    }

    /// The collection viewed as a polyocollection of unit intervals.
    pub fn collection(&self) -> &Polyocollection {
        self.collection.get_or_init(|| Polyocollection::from_cells(self.cells.iter().copied()))
    }

    pub fn vertices(&self) -> &[Point] {
        self.collection().vertices()
    }

    pub fn inner_intervals(&self) -> &[Interval] {
        self.collection().inner_intervals()
    }

    fn neighbours(&self, c: Point) -> impl Iterator<Item = Point> + '_ {
        DIRS.iter().map(move |&(dx, dy)| c.offset(dx, dy)).filter(|n| self.contains(*n))
    }

    /// Bounded connected components of the complement, found inside the
    /// bounding box grown by one ring of cells.
    pub fn holes(&self) -> Vec<BTreeSet<Point>> {
        let Some(first) = self.cells.first() else {
            return Vec::new();
        };
        let (mut x0, mut x1, mut y0, mut y1) = (first.x, first.x, first.y, first.y);
        for c in &self.cells {
            x0 = x0.min(c.x);
            x1 = x1.max(c.x);
            y0 = y0.min(c.y);
            y1 = y1.max(c.y);
        }
        let (x0, x1, y0, y1) = (x0 - 1, x1 + 1, y0 - 1, y1 + 1);
        let inside = |p: Point| x0 <= p.x && p.x <= x1 && y0 <= p.y && p.y <= y1;
        let mut seen: BTreeSet<Point> = BTreeSet::new();
        let mut holes = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let start = Point::new(x, y);
                if self.contains(start) || seen.contains(&start) {
                    continue;
                }
                let mut comp = BTreeSet::new();
                let mut exterior = false;
                let mut queue = VecDeque::from([start]);
                seen.insert(start);
                while let Some(p) = queue.pop_front() {
                    comp.insert(p);
                    if p.x == x0 || p.x == x1 || p.y == y0 || p.y == y1 {
                        exterior = true;
                    }
                    for (dx, dy) in DIRS {
                        let q = p.offset(dx, dy);
                        if inside(q) && !self.contains(q) && seen.insert(q) {
                            queue.push_back(q);
                        }
                    }
                }
                if !exterior {
                    holes.push(comp);
                }
            }
        }
        holes
    }

    pub fn is_simple(&self) -> bool {
        self.holes().is_empty()
    }

    /// Maximal horizontal blocks of rank at least two.
    pub fn horizontal_blocks(&self) -> Vec<Block> {
        self.blocks(true)
    }

    /// Maximal vertical blocks of rank at least two.
    pub fn vertical_blocks(&self) -> Vec<Block> {
        self.blocks(false)
    }

    fn blocks(&self, horizontal: bool) -> Vec<Block> {
        let step = if horizontal { (1, 0) } else { (0, 1) };
        let mut out = Vec::new();
        for &c in &self.cells {
            if self.contains(c.offset(-step.0, -step.1)) {
                continue;
            }
            let mut last = c;
            while self.contains(last.offset(step.0, step.1)) {
                last = last.offset(step.0, step.1);
            }
            if last != c {
                out.push(Block { first: c, last, horizontal });
            }
        }
        out.sort();
        out
    }

    /// Maximal runs of collinear vertices joined by cell edges.
    pub fn edge_intervals(&self) -> &EdgeIntervals {
        self.edges.get_or_init(|| {
            let mut h: BTreeSet<(i64, i64)> = BTreeSet::new(); // (y, x): unit edge (x,y)-(x+1,y)
            let mut v: BTreeSet<(i64, i64)> = BTreeSet::new(); // (x, y): unit edge (x,y)-(x,y+1)
            for c in &self.cells {
                h.insert((c.y, c.x));
                h.insert((c.y + 1, c.x));
                v.insert((c.x, c.y));
                v.insert((c.x + 1, c.y));
            }
            let merge = |set: &BTreeSet<(i64, i64)>, horizontal: bool| {
                let mut out = Vec::new();
                let mut iter = set.iter().copied().peekable();
                while let Some((line, start)) = iter.next() {
                    let mut end = start + 1;
                    while iter.peek() == Some(&(line, end)) {
                        iter.next();
                        end += 1;
                    }
                    let (a, b) = if horizontal {
                        (Point::new(start, line), Point::new(end, line))
                    } else {
                        (Point::new(line, start), Point::new(line, end))
                    };
                    out.push(Segment { from: a, to: b });
                }
                out.sort();
                out
            };
            EdgeIntervals { horizontal: merge(&h, true), vertical: merge(&v, false) }
        })
    }

    /// The cyclic cell sequence, or the first closed-path condition violated.
    pub fn closed_path(&self) -> std::result::Result<ClosedPath, ClosedPathFailure> {
        let n = self.cells.len();
        if n <= 5 {
            return Err(ClosedPathFailure::TooFewCells { cells: n });
        }
        for &c in &self.cells {
            let k = self.neighbours(c).count();
            if k != 2 {
                return Err(ClosedPathFailure::NotCyclic { cell: c, neighbours: k });
            }
        }
        let start = *self.cells.first().expect("nonempty");
        let second = self.neighbours(start).min().expect("two neighbours");
        let mut seq = vec![start, second];
        loop {
            let cur = seq[seq.len() - 1];
            let prev = seq[seq.len() - 2];
            let next = self.neighbours(cur).find(|&q| q != prev).expect("two neighbours");
            if next == start {
                break;
            }
            seq.push(next);
        }
        if seq.len() != n {
            let visited: BTreeSet<Point> = seq.iter().copied().collect();
            let missed = *self.cells.iter().find(|c| !visited.contains(c)).expect("some cell missed");
            return Err(ClosedPathFailure::SeveralCycles { first_missed: missed });
        }
        for i in 0..n {
            for j in i + 1..n {
                let gap = (j - i).min(n + i - j);
                if gap > 2 && share_vertex(seq[i], seq[j]) {
                    return Err(ClosedPathFailure::VertexContact { first: seq[i], second: seq[j] });
                }
            }
        }
        Ok(ClosedPath { cells: seq })
    }

    /// All L-configurations `C1..C5`: `C3` is the corner, `C1,C2` its horizontal arm
    /// and `C4,C5` its vertical arm.
    pub fn l_configurations(&self) -> Vec<[Point; 5]> {
        let mut out = Vec::new();
        for &c in &self.cells {
            for hx in [1, -1] {
                for vy in [1, -1] {
                    let arm = [c.offset(2 * hx, 0), c.offset(hx, 0), c, c.offset(0, vy), c.offset(0, 2 * vy)];
                    if arm.iter().all(|p| self.contains(*p)) {
                        out.push(arm);
                    }
                }
            }
        }
        out
    }

    /// Ladders with at least `min_steps` blocks, each reported once (the
    /// orientation whose first block is smaller).
    pub fn ladders(&self, min_steps: usize) -> Vec<Vec<Block>> {
        let edges = self.edge_intervals();
        let mut out = Vec::new();
        for horizontal in [true, false] {
            let blocks = self.blocks(horizontal);
            let mut adj: Vec<Vec<(usize, Point, Point)>> = vec![Vec::new(); blocks.len()];
            for i in 0..blocks.len() {
                for j in 0..blocks.len() {
                    if i == j {
                        continue;
                    }
                    if let Some((lo, hi)) = blocks[i].interval().intersection(&blocks[j].interval()) {
                        let count = (hi.x - lo.x + 1) * (hi.y - lo.y + 1);
                        if count == 2 {
                            adj[i].push((j, lo, hi));
                        }
                    }
                }
            }
            let mut path = Vec::new();
            let mut joints: Vec<(Point, Point)> = Vec::new();
            for s in 0..blocks.len() {
                path.push(s);
                extend_ladder(&blocks, &adj, edges, min_steps, &mut path, &mut joints, &mut out);
                path.pop();
            }
        }
        out.sort();
        out
    }

    pub fn has_ladder(&self, min_steps: usize) -> bool {
        !self.ladders(min_steps).is_empty()
    }
}

fn extend_ladder(
    blocks: &[Block],
    adj: &[Vec<(usize, Point, Point)>],
    edges: &EdgeIntervals,
    min_steps: usize,
    path: &mut Vec<usize>,
    joints: &mut Vec<(Point, Point)>,
    out: &mut Vec<Vec<Block>>,
) {
    if path.len() >= min_steps && path.first() < path.last() {
        out.push(path.iter().map(|&i| blocks[i]).collect());
    }
    let last = *path.last().expect("nonempty");
    for &(next, a, b) in &adj[last] {
        if path.contains(&next) {
            continue;
        }
        if let Some(&(pa, pb)) = joints.last() {
            let same = edges.horizontal.iter().chain(&edges.vertical).any(|s| {
                s.contains(pa) && s.contains(pb) && s.contains(a) && s.contains(b)
            });
            if same {
                continue;
            }
        }
        path.push(next);
        joints.push((a, b));
        extend_ladder(blocks, adj, edges, min_steps, path, joints, out);
        joints.pop();
        path.pop();
    }
}

fn share_vertex(a: Point, b: Point) -> bool {
    (a.x - b.x).abs() <= 1 && (a.y - b.y).abs() <= 1
}

/// A closed path as its canonical cyclic sequence `A_1..A_n`: `A_1` is the
/// smallest cell and `A_2` the smaller of its two neighbours.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedPath {
    cells: Vec<Point>,
}

impl ClosedPath {
    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell(&self, i: isize) -> Point {
        let n = self.cells.len() as isize;
        self.cells[i.rem_euclid(n) as usize]
    }

    /// Whether the path changes direction at position `i`.
    pub fn is_turning(&self, i: usize) -> bool {
        let i = i as isize;
        let (p, c, n) = (self.cell(i - 1), self.cell(i), self.cell(i + 1));
        (c.x - p.x, c.y - p.y) != (n.x - c.x, n.y - c.y)
    }

    /// Maximal cyclic runs of consecutive turning cells, as start index and length.
    pub fn turning_runs(&self) -> Vec<(usize, usize)> {
        let n = self.cells.len();
        let turning: Vec<bool> = (0..n).map(|i| self.is_turning(i)).collect();
        let Some(anchor) = (0..n).find(|&i| !turning[i]) else {
            return vec![(0, n)];
        };
        let mut runs = Vec::new();
        let mut k = 0;
        while k < n {
            let i = (anchor + k) % n;
            if turning[i] {
                let mut len = 0;
                while len < n && turning[(i + len) % n] {
                    len += 1;
                }
                runs.push((i, len));
                k += len;
            } else {
                k += 1;
            }
        }
        runs.sort();
        runs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn holes_of_square_and_ring() {
        let sq = CellComplex::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert!(sq.is_simple());
        let ring = fixtures::ring8();
        let holes = ring.holes();
        assert_eq!(holes.len(), 1);
        assert_eq!(holes[0], BTreeSet::from([Point::new(2, 2)]));
    }

    #[test]
    fn closed_path_detection() {
        let ring = fixtures::ring8();
        assert_eq!(ring.closed_path().unwrap().len(), 8);
        let sq = CellComplex::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(sq.closed_path(), Err(ClosedPathFailure::TooFewCells { cells: 4 }));
        let row = CellComplex::from_coords(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0), (5, 0)]);
        assert!(matches!(row.closed_path(), Err(ClosedPathFailure::NotCyclic { neighbours: 1, .. })));
    }

    #[test]
    fn vertex_contact_is_reported() {
        let p = CellComplex::from_coords(&[
            (0, 0), (1, 0), (2, 0), (3, 0), (3, 1), (3, 2), (2, 2), (1, 2), (0, 2), (0, 1),
        ]);
        assert!(p.closed_path().is_ok());
        let q = CellComplex::from_coords(&[
            (1, 1), (0, 1), (0, 2), (0, 3), (1, 3), (2, 3), (2, 2), (3, 2), (3, 1), (3, 0), (2, 0), (1, 0),
        ]);
        assert!(matches!(q.closed_path(), Err(ClosedPathFailure::VertexContact { .. })));
    }

    #[test]
    fn edge_interval_counts() {
        let one = CellComplex::from_coords(&[(0, 0)]);
        let e = one.edge_intervals();
        assert_eq!((e.horizontal.len(), e.vertical.len()), (2, 2));
        assert!(e.horizontal.iter().all(|s| s.points().len() == 2));
        let bar = CellComplex::from_coords(&[(0, 0), (1, 0), (2, 0)]);
        assert!(bar.edge_intervals().horizontal.iter().all(|s| s.points().len() == 4));
        // every row line of the 3x3 ring carries one unbroken run of edges
        let e = fixtures::ring8().edge_intervals().clone();
        assert_eq!((e.horizontal.len(), e.vertical.len()), (4, 4));
        assert!(e.horizontal.iter().all(|s| s.points().len() == 4));
    }

    #[test]
    fn l_configurations_and_ladders() {
        let ring = fixtures::ring8();
        assert!(!ring.l_configurations().is_empty());
        let bar = CellComplex::from_coords(&[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
        assert!(bar.l_configurations().is_empty());
        assert!(bar.ladders(2).is_empty());
        // three horizontal rank-2 blocks, each overlapping the next in one column
        let stairs3 = CellComplex::from_coords(&[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2)]);
        let l = stairs3.ladders(3);
        assert!(l.iter().any(|ladder| ladder.len() == 3 && ladder.iter().all(|b| b.horizontal)));
        let stairs4 = CellComplex::from_coords(&[(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (3, 3), (4, 3)]);
        assert_eq!(stairs4.ladders(3).iter().map(Vec::len).max(), Some(4));
    }

    #[test]
    fn turning_runs_of_switchback26() {
        let cp = fixtures::switchback26().closed_path().unwrap();
        let mut lens: Vec<usize> = cp.turning_runs().iter().map(|r| r.1).collect();
        lens.sort();
        assert_eq!(lens, vec![2, 2, 3, 3, 3, 3]);
    }
}
