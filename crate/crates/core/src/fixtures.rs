//! Named instances used by tests, the acceptance suite and the CLI.
//!
//! Shapes marked "reconstructed" were rebuilt from drawings, not given
//! coordinates.

use crate::geometry::{CellComplex, Interval, Polyocollection};

type Corners = ((i64, i64), (i64, i64));

fn intervals(raw: &[Corners]) -> Vec<Interval> {
    raw.iter().map(|&(a, b)| Interval::from_coords(a, b)).collect()
}

pub fn c1_intervals() -> Vec<Interval> {
    intervals(&[((1, 1), (2, 2)), ((1, 2), (2, 3)), ((2, 1), (5, 2)), ((2, 2), (5, 3)), ((5, 3), (7, 4))])
}

pub fn c2_intervals() -> Vec<Interval> {
    intervals(&[
        ((3, 1), (4, 2)),
        ((4, 1), (5, 2)),
        ((3, 2), (4, 6)),
        ((4, 2), (5, 6)),
        ((3, 6), (4, 7)),
        ((4, 6), (5, 7)),
        ((1, 3), (2, 4)),
        ((1, 4), (2, 5)),
        ((2, 3), (6, 4)),
        ((2, 4), (6, 5)),
        ((6, 3), (7, 4)),
        ((6, 4), (7, 5)),
    ])
}

/// Not a polyocollection: `[(2,1),(4,3)]` overlaps the two right cells along two lattice points.
pub fn c3_intervals() -> Vec<Interval> {
    intervals(&[((1, 2), (3, 4)), ((2, 1), (4, 3)), ((4, 1), (5, 2)), ((4, 2), (5, 3))])
}

pub fn c4_intervals() -> Vec<Interval> {
    intervals(&[((1, 1), (3, 3)), ((1, 3), (3, 5)), ((3, 1), (5, 3)), ((3, 3), (5, 5)), ((2, 2), (4, 4))])
}

/// The 14-vertex collection with six inner intervals whose ideal has two minimal primes.
pub fn d_intervals() -> Vec<Interval> {
    intervals(&[((2, 1), (4, 2)), ((1, 2), (2, 3)), ((4, 2), (5, 3)), ((2, 3), (3, 4)), ((3, 3), (4, 4))])
}

pub fn c1() -> Polyocollection {
    Polyocollection::expect_valid(&c1_intervals())
}

pub fn c2() -> Polyocollection {
    Polyocollection::expect_valid(&c2_intervals())
}

pub fn c4() -> Polyocollection {
    Polyocollection::expect_valid(&c4_intervals())
}

pub fn d() -> Polyocollection {
    Polyocollection::expect_valid(&d_intervals())
}

pub fn unit_cell() -> Polyocollection {
    Polyocollection::expect_valid(&[Interval::from_coords((0, 0), (1, 1))])
}

pub fn square2x2() -> CellComplex {
    CellComplex::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)])
}

/// Eight cells around the hole `(2,2)`.
pub fn ring8() -> CellComplex {
    CellComplex::from_coords(&[(1, 1), (2, 1), (3, 1), (3, 2), (3, 3), (2, 3), (1, 3), (1, 2)])
}

/// Reconstructed: four cells meeting pairwise at corners around a
/// hole, plus one cell stacked on the top one.
pub fn diamond_stacked() -> CellComplex {
    CellComplex::from_coords(&[(1, 2), (2, 1), (3, 2), (2, 3), (2, 4)])
}

/// Reconstructed: the corner-touching four-cell ring plus a cell
/// meeting it in a single vertex.
pub fn diamond_corner() -> CellComplex {
    CellComplex::from_coords(&[(1, 2), (2, 1), (3, 2), (2, 3), (4, 3)])
}

/// Reconstructed: the corner-touching four-cell ring plus a
/// disjoint cell.
pub fn diamond_disjoint() -> CellComplex {
    CellComplex::from_coords(&[(1, 2), (2, 1), (3, 2), (2, 3), (6, 6)])
}

/// A 26-cell closed path with four step junctions at
/// `d1..d4` and two switchbacks offering `b1|b2` and `c1|c2`.
pub fn switchback26() -> CellComplex {
    CellComplex::from_coords(&[
        (1, 0),
        (2, 0),
        (3, 0),
        (4, 0),
        (5, 0),
        (6, 0),
        (7, 0),
        (0, 1),
        (1, 1),
        (0, 2),
        (0, 3),
        (1, 3),
        (1, 4),
        (2, 4),
        (3, 4),
        (3, 3),
        (4, 3),
        (5, 3),
        (5, 4),
        (6, 4),
        (7, 4),
        (7, 3),
        (8, 3),
        (7, 1),
        (8, 1),
        (8, 2),
    ])
}

/// A 16-cell closed path with four step junctions and no switchback.
pub fn octagon16() -> CellComplex {
    CellComplex::from_coords(&[
        (1, 0),
        (2, 0),
        (3, 0),
        (3, 1),
        (4, 1),
        (4, 2),
        (4, 3),
        (3, 3),
        (3, 4),
        (2, 4),
        (1, 4),
        (1, 3),
        (0, 3),
        (0, 2),
        (0, 1),
        (1, 1),
    ])
}
