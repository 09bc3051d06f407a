use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::cells::{CellComplex, ClosedPath};
use super::interval::{Interval, Point, Segment};
use crate::error::{Error, Result};

/// Limits for the walk enumerators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkOptions {
    /// Largest |V(P)| accepted by the exhaustive enumerator.
    pub cap_vertices: usize,
    /// Largest number of walks returned before refusing.
    pub cap_walks: usize,
}

impl Default for WalkOptions {
    fn default() -> Self {
        WalkOptions { cap_vertices: 40, cap_walks: 4096 }
    }
}

/// A zig-zag walk `I_1..I_l` with its shared corners `v_i`, the corners `z_i`
/// opposite to `v_i` and the corners `u_i` opposite to `v_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZigZagWalk {
    v: Vec<Point>,
    intervals: Vec<Interval>,
    z: Vec<Point>,
    u: Vec<Point>,
}

/// Why a candidate sequence is not a zig-zag walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WalkDefect {
    Shape(&'static str),
    NotInner(Interval),
    Repeated(Interval),
    CornerMismatch(usize),
    Intersection(usize),
    EdgeInterval(usize),
    CommonInterval(usize, usize),
}

impl ZigZagWalk {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn v_points(&self) -> &[Point] {
        &self.v
    }

    pub fn z_points(&self) -> &[Point] {
        &self.z
    }

    pub fn u_points(&self) -> &[Point] {
        &self.u
    }

    /// One `[v_i, z_i, u_i]` triple per interval, in walk order.
    pub fn corner_list(&self) -> Vec<[Point; 3]> {
        (0..self.len()).map(|i| [self.v[i], self.z[i], self.u[i]]).collect()
    }

    /// N(W): vertices of `P` on the segments `[v_i, v_{i+1}]`.
    pub fn necklace(&self, p: &CellComplex) -> BTreeSet<Point> {
        let verts: BTreeSet<Point> = p.vertices().iter().copied().collect();
        let l = self.len();
        let mut out = BTreeSet::new();
        for i in 0..l {
            let (a, b) = (self.v[i], self.v[(i + 1) % l]);
            let seg = if a <= b { Segment { from: a, to: b } } else { Segment { from: b, to: a } };
            out.extend(seg.points().into_iter().filter(|q| verts.contains(q)));
        }
        out
    }

    /// Checks the three walk conditions and returns the walk in canonical form.
    pub fn new(p: &CellComplex, intervals: Vec<Interval>, v: Vec<Point>) -> std::result::Result<Self, WalkDefect> {
        let l = intervals.len();
        if l < 2 || v.len() != l {
            return Err(WalkDefect::Shape("need at least two intervals and one shared corner per interval"));
        }
        let mut seen = BTreeSet::new();
        for i in &intervals {
            if !p.collection().is_inner(i) {
                return Err(WalkDefect::NotInner(*i));
            }
            if !seen.insert(*i) {
                return Err(WalkDefect::Repeated(*i));
            }
        }
        let edges = p.edge_intervals();
        let mut z = Vec::with_capacity(l);
        let mut u = Vec::with_capacity(l);
        for i in 0..l {
            let (a, b) = (v[i], v[(i + 1) % l]);
            if !intervals[i].is_edge_boundary(a, b) {
                return Err(WalkDefect::CornerMismatch(i));
            }
            if single_point(&intervals[i], &intervals[(i + 1) % l]) != Some(b) {
                return Err(WalkDefect::Intersection(i));
            }
            if !edges.share_interval(a, b) {
                return Err(WalkDefect::EdgeInterval(i));
            }
            z.push(intervals[i].opposite(a));
            u.push(intervals[i].opposite(b));
        }
        let inner = p.inner_intervals();
        for i in 0..l {
            for j in i + 1..l {
                if common_interval(inner, z[i], z[j]) {
                    return Err(WalkDefect::CommonInterval(i, j));
                }
            }
        }
        Ok(ZigZagWalk { v, intervals, z, u }.canonical())
    }

    fn canonical(self) -> Self {
        let l = self.len();
        let start = (0..l).min_by_key(|&i| self.v[i]).expect("nonempty");
        let forward_v: Vec<Point> = (0..l).map(|k| self.v[(start + k) % l]).collect();
        let forward_i: Vec<Interval> = (0..l).map(|k| self.intervals[(start + k) % l]).collect();
        // reversed: intervals I_{s-1}, I_{s-2}, ... entered at v_s
        let backward_v: Vec<Point> = (0..l).map(|k| self.v[(start + l - k) % l]).collect();
        let backward_i: Vec<Interval> = (0..l).map(|k| self.intervals[(start + l - 1 - k) % l]).collect();
        let (v, intervals) = if (&backward_v, &backward_i) < (&forward_v, &forward_i) {
            (backward_v, backward_i)
        } else {
            (forward_v, forward_i)
        };
        let z = (0..l).map(|i| intervals[i].opposite(v[i])).collect();
        let u = (0..l).map(|i| intervals[i].opposite(v[(i + 1) % l])).collect();
        ZigZagWalk { v, intervals, z, u }
    }
}

fn single_point(a: &Interval, b: &Interval) -> Option<Point> {
    a.intersection(b).and_then(|(lo, hi)| (lo == hi).then_some(lo))
}

fn common_interval(inner: &[Interval], p: Point, q: Point) -> bool {
    inner.iter().any(|j| j.contains_point(p) && j.contains_point(q))
}

/// Exhaustive search over sequences of inner intervals. Refuses collections
/// with more than `opts.cap_vertices` vertices.
pub fn enumerate_zigzag_walks_exhaustive(p: &CellComplex, opts: &WalkOptions) -> Result<Vec<ZigZagWalk>> {
    let nv = p.vertices().len();
    if nv > opts.cap_vertices {
        return Err(Error::CapExceeded { what: "vertex count", actual: nv, cap: opts.cap_vertices });
    }
    let inner = p.inner_intervals();
    let edges = p.edge_intervals();
    let mut by_corner: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (k, i) in inner.iter().enumerate() {
        for c in i.vertices() {
            by_corner.entry(c).or_default().push(k);
        }
    }
    let mut search = Search {
        inner,
        edges,
        by_corner: &by_corner,
        used: vec![false; inner.len()],
        intervals: Vec::new(),
        v: Vec::new(),
        z: Vec::new(),
        found: BTreeSet::new(),
        cap: opts.cap_walks,
        overflow: false,
        cells: p,
    };
    for s in 0..inner.len() {
        for v1 in inner[s].vertices() {
            for v2 in inner[s].vertices() {
                if !inner[s].is_edge_boundary(v1, v2) || v2 < v1 || !edges.share_interval(v1, v2) {
                    continue;
                }
                search.used[s] = true;
                search.intervals.push(s);
                search.v.extend([v1, v2]);
                search.z.push(inner[s].opposite(v1));
                search.extend();
                search.z.pop();
                search.v.truncate(search.v.len() - 2);
                search.intervals.pop();
                search.used[s] = false;
            }
        }
    }
    if search.overflow {
        return Err(Error::CapExceeded { what: "walk count", actual: search.found.len(), cap: opts.cap_walks });
    }
    Ok(search.found.into_iter().collect())
}

struct Search<'a> {
    inner: &'a [Interval],
    edges: &'a super::cells::EdgeIntervals,
    by_corner: &'a BTreeMap<Point, Vec<usize>>,
    used: Vec<bool>,
    intervals: Vec<usize>,
    // v_1 .. v_{k+1} for k chosen intervals
    v: Vec<Point>,
    z: Vec<Point>,
    found: BTreeSet<ZigZagWalk>,
    cap: usize,
    overflow: bool,
    cells: &'a CellComplex,
}

impl Search<'_> {
    fn extend(&mut self) {
        if self.overflow {
            return;
        }
        let last = self.inner[*self.intervals.last().expect("nonempty")];
        let exit = *self.v.last().expect("nonempty");
        let first = self.v[0];
        let candidates = self.by_corner.get(&exit).cloned().unwrap_or_default();
        for k in candidates {
            if self.used[k] {
                continue;
            }
            let next = self.inner[k];
            if single_point(&last, &next) != Some(exit) {
                continue;
            }
            let z = next.opposite(exit);
            if self.z.iter().any(|&w| common_interval(self.inner, w, z)) {
                continue;
            }
            for w in next.vertices() {
                if !next.is_edge_boundary(exit, w) || !self.edges.share_interval(exit, w) {
                    continue;
                }
                if w == first {
                    let first_interval = self.inner[self.intervals[0]];
                    if single_point(&next, &first_interval) == Some(first) && self.intervals.len() >= 2 {
                        let mut ivs: Vec<Interval> = self.intervals.iter().map(|&i| self.inner[i]).collect();
                        ivs.push(next);
                        let vs = self.v.clone();
                        if let Ok(walk) = ZigZagWalk::new(self.cells, ivs, vs) {
                            self.found.insert(walk);
                            if self.found.len() > self.cap {
                                self.overflow = true;
                                return;
                            }
                        }
                    }
                    continue;
                }
                if w < first || self.v.contains(&w) {
                    continue;
                }
                self.used[k] = true;
                self.intervals.push(k);
                self.v.push(w);
                self.z.push(z);
                self.extend();
                self.z.pop();
                self.v.pop();
                self.intervals.pop();
                self.used[k] = false;
            }
        }
    }
}

/// A turning run of three cells `T1, X, T3`: the path turns twice around `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StepJunction {
    /// Position of `X` in the canonical cell sequence.
    pub position: usize,
    pub cells: [Point; 3],
    /// Corner of `X` shared by all three cells.
    pub d: Point,
    /// Corner of `X` opposite to `d`.
    pub m: Point,
}

/// The labelled vertices around a step junction once one arm cell is chosen as `Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StepLabels {
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
    pub e: Point,
    pub e1: Point,
    pub d1: Point,
    pub m: Point,
}

impl StepJunction {
    pub fn x_cell(&self) -> Point {
        self.cells[1]
    }

    /// Labels with `y_cell` (one of the two arm cells) in the role of `Y`.
    pub fn labels(&self, y_cell: Point) -> StepLabels {
        let [t1, x, t3] = self.cells;
        assert!(y_cell == t1 || y_cell == t3, "Y must be an arm cell of the junction");
        let z_cell = if y_cell == t1 { t3 } else { t1 };
        let d = self.d;
        let other_shared = |cell: Point| {
            let common: Vec<Point> = Interval::cell(cell)
                .vertices()
                .into_iter()
                .filter(|q| Interval::cell(x).is_vertex(*q) && *q != d)
                .collect();
            debug_assert_eq!(common.len(), 1);
            common[0]
        };
        let b = other_shared(y_cell);
        let d1 = other_shared(z_cell);
        let c = Point::new(2 * d.x - d1.x, 2 * d.y - d1.y);
        let e = Point::new(2 * d.x - b.x, 2 * d.y - b.y);
        StepLabels {
            a: c.offset(b.x - d.x, b.y - d.y),
            b,
            c,
            d,
            e,
            e1: e.offset(d1.x - d.x, d1.y - d.y),
            d1,
            m: self.m,
        }
    }

    /// The arm cell used as `Y` by default: the smaller of the two.
    pub fn default_y(&self) -> Point {
        self.cells[0].min(self.cells[2])
    }
}

/// A turning run of two cells: the path shifts sideways by one and keeps its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Switchback {
    pub position: usize,
    pub cells: [Point; 2],
    /// The two ends of the edge shared by the two cells (`e` and `l`).
    pub shared: [Point; 2],
}

impl Switchback {
    /// The 1x2 interval spanning both cells.
    pub fn span(&self) -> Interval {
        let [p, q] = self.cells;
        Interval::new(p.min(q).min(Point::new(p.x.min(q.x), p.y.min(q.y))), Point::new(p.x.max(q.x) + 1, p.y.max(q.y) + 1))
            .expect("adjacent cells span a proper interval")
    }
}

/// Turning-run classification of a closed path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Junctions {
    pub steps: Vec<StepJunction>,
    pub switchbacks: Vec<Switchback>,
    /// Runs of any other length, as (start, length).
    pub other_runs: Vec<(usize, usize)>,
}

pub fn junctions(cp: &ClosedPath) -> Junctions {
    let mut steps = Vec::new();
    let mut switchbacks = Vec::new();
    let mut other_runs = Vec::new();
    for (start, len) in cp.turning_runs() {
        let s = start as isize;
        match len {
            3 => {
                let cells = [cp.cell(s), cp.cell(s + 1), cp.cell(s + 2)];
                let shared = |a: Point, b: Point| -> Vec<Point> {
                    Interval::cell(a).vertices().into_iter().filter(|q| Interval::cell(b).is_vertex(*q)).collect()
                };
                let one = shared(cells[0], cells[1]);
                let two = shared(cells[2], cells[1]);
                let d = *one.iter().find(|q| two.contains(q)).expect("step cells share a corner");
                let m = Interval::cell(cells[1]).opposite(d);
                steps.push(StepJunction { position: (start + 1) % cp.len(), cells, d, m });
            }
            2 => {
                let cells = [cp.cell(s), cp.cell(s + 1)];
                let common: Vec<Point> = Interval::cell(cells[0])
                    .vertices()
                    .into_iter()
                    .filter(|q| Interval::cell(cells[1]).is_vertex(*q))
                    .collect();
                let mut shared = [common[0], common[1]];
                shared.sort();
                switchbacks.push(Switchback { position: start, cells, shared });
            }
            _ => other_runs.push((start, len)),
        }
    }
    steps.sort();
    switchbacks.sort();
    Junctions { steps, switchbacks, other_runs }
}

/// Walks of a closed path whose turning runs all have length two or three:
/// every step corner `d` is forced and each switchback contributes one of
/// its two shared vertices. Candidates are checked against the definition.
pub fn enumerate_closed_path_walks(p: &CellComplex, cp: &ClosedPath, opts: &WalkOptions) -> Result<Option<Vec<ZigZagWalk>>> {
    let j = junctions(cp);
    if !j.other_runs.is_empty() || j.steps.is_empty() {
        return Ok(None);
    }
    let mut anchors: Vec<(usize, Vec<Point>)> = j.steps.iter().map(|s| (s.position, vec![s.d])).collect();
    anchors.extend(j.switchbacks.iter().map(|s| (s.position, s.shared.to_vec())));
    anchors.sort();
    let choices = 1usize << j.switchbacks.len().min(20);
    if choices > opts.cap_walks {
        return Err(Error::CapExceeded { what: "walk count", actual: choices, cap: opts.cap_walks });
    }
    let inner = p.inner_intervals();
    let mut found = BTreeSet::new();
    let mut stack = vec![(0usize, Vec::<Point>::new())];
    while let Some((k, vs)) = stack.pop() {
        if k == anchors.len() {
            for walk in walks_through(p, inner, &vs) {
                found.insert(walk);
            }
            continue;
        }
        for &option in anchors[k].1.iter().rev() {
            let mut next = vs.clone();
            next.push(option);
            stack.push((k + 1, next));
        }
    }
    Ok(Some(found.into_iter().collect()))
}

fn walks_through(p: &CellComplex, inner: &[Interval], vs: &[Point]) -> Vec<ZigZagWalk> {
    let l = vs.len();
    let mut per_segment: Vec<Vec<Interval>> = Vec::with_capacity(l);
    for i in 0..l {
        let (a, b) = (vs[i], vs[(i + 1) % l]);
        let options: Vec<Interval> = inner.iter().filter(|j| j.is_edge_boundary(a, b)).copied().collect();
        if options.is_empty() {
            return Vec::new();
        }
        per_segment.push(options);
    }
    let mut out = Vec::new();
    let mut pick = vec![0usize; l];
    loop {
        let ivs: Vec<Interval> = (0..l).map(|i| per_segment[i][pick[i]]).collect();
        if let Ok(w) = ZigZagWalk::new(p, ivs, vs.to_vec()) {
            out.push(w);
        }
        let mut i = 0;
        while i < l {
            pick[i] += 1;
            if pick[i] < per_segment[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
        if i == l {
            break;
        }
    }
    out
}

/// All zig-zag walks of `p`. Closed paths with only step and switchback
/// junctions use the structural enumerator; everything else is searched
/// exhaustively under the vertex cap.
pub fn enumerate_zigzag_walks(p: &CellComplex, opts: &WalkOptions) -> Result<Vec<ZigZagWalk>> {
    if let Ok(cp) = p.closed_path() {
        if let Some(walks) = enumerate_closed_path_walks(p, &cp, opts)? {
            return Ok(walks);
        }
    }
    enumerate_zigzag_walks_exhaustive(p, opts)
}

/// Everything the closed-path primes are built from.
#[derive(Clone, Debug)]
pub struct ClosedPathAnalysis {
    pub path: ClosedPath,
    pub junctions: Junctions,
    pub walks: Vec<ZigZagWalk>,
}

impl ClosedPathAnalysis {
    pub fn new(p: &CellComplex, opts: &WalkOptions) -> Result<Self> {
        let path = p.closed_path().map_err(|f| Error::NotClosedPath(f.to_string()))?;
        let junctions = junctions(&path);
        let walks = enumerate_zigzag_walks(p, opts)?;
        Ok(ClosedPathAnalysis { path, junctions, walks })
    }

    pub fn is_prime(&self) -> bool {
        self.walks.is_empty()
    }

    /// N(P), checked to agree across all walks.
    pub fn necklace(&self, p: &CellComplex) -> Result<BTreeSet<Point>> {
        let first = self.walks.first().ok_or(Error::NoZigZagWalk("p2 undefined for prime closed paths"))?;
        let n = first.necklace(p);
        for w in &self.walks[1..] {
            if w.necklace(p) != n {
                return Err(Error::NotClosedPath("zig-zag walks with different necklaces".into()));
            }
        }
        Ok(n)
    }

    /// M(P): the outer corners of the middle cells of step junctions.
    pub fn m_set(&self) -> Result<BTreeSet<Point>> {
        if self.walks.is_empty() {
            return Err(Error::NoZigZagWalk("p2 undefined for prime closed paths"));
        }
        Ok(self.junctions.steps.iter().map(|s| s.m).collect())
    }

    /// The 1x2 intervals at switchback junctions; their inner 2-minors form R(P).
    pub fn r_set(&self) -> Result<Vec<Interval>> {
        if self.walks.is_empty() {
            return Err(Error::NoZigZagWalk("p2 undefined for prime closed paths"));
        }
        let mut out: Vec<Interval> = self.junctions.switchbacks.iter().map(Switchback::span).collect();
        out.sort();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn switchback26_has_four_walks_of_length_six() {
        let p = fixtures::switchback26();
        let a = ClosedPathAnalysis::new(&p, &WalkOptions::default()).unwrap();
        assert_eq!(a.walks.len(), 4);
        assert!(a.walks.iter().all(|w| w.len() == 6));
        let d: BTreeSet<Point> = [(1, 1), (1, 4), (8, 4), (8, 1)].into_iter().map(Point::from).collect();
        let mut middle = BTreeSet::new();
        for w in &a.walks {
            let vs: BTreeSet<Point> = w.v_points().iter().copied().collect();
            assert!(d.is_subset(&vs));
            let rest: Vec<Point> = vs.difference(&d).copied().collect();
            assert_eq!(rest.len(), 2);
            middle.insert(rest);
        }
        let b = [Point::new(3, 4), Point::new(4, 4)];
        let c = [Point::new(5, 4), Point::new(6, 4)];
        let expected: BTreeSet<Vec<Point>> =
            b.iter().flat_map(|&x| c.iter().map(move |&y| vec![x, y])).collect();
        assert_eq!(middle, expected);
    }

    #[test]
    fn switchback26_structural_agrees_with_exhaustive() {
        let p = fixtures::switchback26();
        let opts = WalkOptions { cap_vertices: 80, ..WalkOptions::default() };
        let fast = enumerate_zigzag_walks(&p, &opts).unwrap();
        let slow = enumerate_zigzag_walks_exhaustive(&p, &opts).unwrap();
        assert_eq!(fast, slow);
    }

    #[test]
    fn necklace_m_and_r_count_cells() {
        for p in [fixtures::switchback26(), fixtures::octagon16()] {
            let a = ClosedPathAnalysis::new(&p, &WalkOptions::default()).unwrap();
            let n = a.necklace(&p).unwrap();
            let m = a.m_set().unwrap();
            let r = a.r_set().unwrap();
            assert!(n.is_disjoint(&m));
            assert_eq!(n.len() + m.len() + r.len(), p.len());
        }
    }

    #[test]
    fn ring_has_no_walks() {
        let ring = fixtures::ring8();
        assert!(enumerate_zigzag_walks(&ring, &WalkOptions::default()).unwrap().is_empty());
        let a = ClosedPathAnalysis::new(&ring, &WalkOptions::default()).unwrap();
        assert!(matches!(a.necklace(&ring), Err(Error::NoZigZagWalk(_))));
    }

    #[test]
    fn simple_polyominoes_have_no_walks() {
        let shapes: [&[(i64, i64)]; 3] = [
            &[(0, 0), (1, 0), (0, 1), (1, 1)],
            &[(0, 0), (1, 0), (2, 0), (2, 1), (2, 2), (1, 2)],
            &[(0, 0), (1, 0), (2, 0), (1, 1), (1, 2), (0, 2), (2, 2), (3, 2)],
        ];
        for s in shapes {
            let p = CellComplex::from_coords(s);
            assert!(p.is_simple());
            assert!(enumerate_zigzag_walks_exhaustive(&p, &WalkOptions::default()).unwrap().is_empty());
        }
    }

    #[test]
    fn cap_is_refused() {
        let p = fixtures::switchback26();
        let err = enumerate_zigzag_walks_exhaustive(&p, &WalkOptions::default()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn step_labels_match_the_reference_layout() {
        // arm cells (0,1) and (1,0) around X = (1,1); Y = (0,1)
        let j = StepJunction {
            position: 0,
            cells: [Point::new(0, 1), Point::new(1, 1), Point::new(1, 0)],
            d: Point::new(1, 1),
            m: Point::new(2, 2),
        };
        let l = j.labels(Point::new(0, 1));
        assert_eq!(
            (l.a, l.b, l.c, l.d, l.e, l.e1, l.d1),
            (
                Point::new(0, 2),
                Point::new(1, 2),
                Point::new(0, 1),
                Point::new(1, 1),
                Point::new(1, 0),
                Point::new(2, 0),
                Point::new(2, 1)
            )
        );
    }
}
