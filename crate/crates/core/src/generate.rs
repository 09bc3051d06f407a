//! Seeded instance generators: exhaustive closed-path enumeration and random
//! polyocollections.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{
    enumerate_zigzag_walks, validate_polyocollection, CellComplex, Interval, Point, Polyocollection, Validation,
    WalkOptions,
};
use crate::par;

/// All closed paths with at most `max_cells` cells, one per translation class,
/// each anchored with its smallest cell (by row, then column) at the origin.
/// Sorted by size, then by cell set.
pub fn enumerate_closed_paths(max_cells: usize) -> Vec<CellComplex> {
    let mut out: Vec<Vec<Point>> = Vec::new();
    if max_cells < 6 {
        return Vec::new();
    }
    let mut path = vec![Point::new(0, 0), Point::new(1, 0)];
    extend(&mut path, max_cells, &mut out);
    let mut complexes: Vec<CellComplex> =
        out.into_iter().filter_map(|cells| {
            let p = CellComplex::new(cells);
            p.closed_path().is_ok().then_some(p)
        }).collect();
    complexes.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cells().cmp(b.cells())));
    complexes
}

fn below_origin(p: Point) -> bool {
    (p.y, p.x) <= (0, 0)
}

fn touches(a: Point, b: Point) -> bool {
    (a.x - b.x).abs() <= 1 && (a.y - b.y).abs() <= 1
}

fn extend(path: &mut Vec<Point>, max_cells: usize, out: &mut Vec<Vec<Point>>) {
    let last = *path.last().expect("nonempty");
    let target = Point::new(0, 1);
    let k = path.len();
    for (dx, dy) in [(1, 0), (0, 1), (-1, 0), (0, -1)] {
        let c = last.offset(dx, dy);
        if below_origin(c) || path.contains(&c) {
            continue;
        }
        if c == target {
            // closing cell takes index k; the cycle then has k + 1 cells
            if k + 1 >= 6 {
                let mut cells = path.clone();
                cells.push(c);
                out.push(cells);
            }
            continue;
        }
        let remaining = max_cells - (k + 1);
        let dist = ((c.x - target.x).abs() + (c.y - target.y).abs()) as usize;
        if dist > remaining || remaining == 0 {
            continue;
        }
        // cells far back along the path must stay vertex-disjoint; the first
        // two are exempt until the cycle closes
        if k >= 5 && path[2..k - 2].iter().any(|&q| touches(q, c)) {
            continue;
        }
        path.push(c);
        extend(path, max_cells, out);
        path.pop();
    }
}

/// A generated closed path with the verdicts of both primality detectors.
#[derive(Clone, Debug, Serialize)]
pub struct LabelledPath {
    pub cells: CellComplex,
    /// Has a zig-zag walk.
    pub non_prime: bool,
    pub has_l_configuration: bool,
    pub has_ladder: bool,
}

impl LabelledPath {
    pub fn label(cells: CellComplex) -> Self {
        let opts = WalkOptions { cap_vertices: usize::MAX, cap_walks: usize::MAX };
        let non_prime = !enumerate_zigzag_walks(&cells, &opts).expect("uncapped").is_empty();
        let has_l_configuration = !cells.l_configurations().is_empty();
        let has_ladder = cells.has_ladder(3);
        LabelledPath { cells, non_prime, has_l_configuration, has_ladder }
    }

    /// Whether the two detectors agree: a walk exists iff neither an
    /// L-configuration nor a ladder of three steps does.
    pub fn detectors_agree(&self) -> bool {
        self.non_prime == !(self.has_l_configuration || self.has_ladder)
    }
}

/// Every closed path up to `max_cells`, shuffled and translated under `seed`,
/// labelled by both detectors.
pub fn generate_closed_paths(seed: u64, max_cells: usize) -> Vec<LabelledPath> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut paths = enumerate_closed_paths(max_cells);
    paths.shuffle(&mut rng);
    let shifted: Vec<CellComplex> = paths
        .into_iter()
        .map(|p| p.translated(rng.gen_range(-3..=3), rng.gen_range(-3..=3)))
        .collect();
    par::map(&shifted, |p| LabelledPath::label(p.clone()))
}

/// Shape of random polyocollections.
#[derive(Clone, Copy, Debug)]
pub struct RandomCollection {
    /// Coordinates are drawn from `0..=grid`.
    pub grid: i64,
    /// Interval placements attempted.
    pub attempts: usize,
    /// Largest side length of a member.
    pub max_side: i64,
}

impl Default for RandomCollection {
    fn default() -> Self {
        RandomCollection { grid: 5, attempts: 8, max_side: 2 }
    }
}

/// A random valid polyocollection: members are added one at a time and kept
/// only when the collection stays valid.
pub fn random_polyocollection<R: Rng>(rng: &mut R, shape: &RandomCollection) -> Polyocollection {
    let mut members: Vec<Interval> = Vec::new();
    for _ in 0..shape.attempts {
        let w = rng.gen_range(1..=shape.max_side);
        let h = rng.gen_range(1..=shape.max_side);
        let x = rng.gen_range(0..=(shape.grid - w).max(0));
        let y = rng.gen_range(0..=(shape.grid - h).max(0));
        let candidate = Interval::from_coords((x, y), (x + w, y + h));
        if members.contains(&candidate) {
            continue;
        }
        members.push(candidate);
        match validate_polyocollection(&members) {
            Ok(Validation::Valid(_)) => {}
            _ => {
                members.pop();
            }
        }
    }
    Polyocollection::expect_valid(&members)
}

/// A random collection of cells inside a `grid × grid` box.
pub fn random_cells<R: Rng>(rng: &mut R, grid: i64, count: usize) -> CellComplex {
    let mut cells = Vec::with_capacity(count);
    for _ in 0..count {
        cells.push(Point::new(rng.gen_range(0..grid), rng.gen_range(0..grid)));
    }
    CellComplex::new(cells)
}
