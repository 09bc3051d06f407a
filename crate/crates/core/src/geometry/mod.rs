//! Intervals, polyocollections, cell complexes and zig-zag walks.

mod cells;
mod collection;
mod interval;
mod zigzag;

pub use cells::{Block, CellComplex, ClosedPath, ClosedPathFailure, EdgeIntervals};
pub use collection::{validate_polyocollection, Clause, Polyocollection, Validation, Violation};
pub use interval::{Interval, Point, Segment};
pub use zigzag::{
    enumerate_closed_path_walks, enumerate_zigzag_walks, enumerate_zigzag_walks_exhaustive, junctions,
    ClosedPathAnalysis, Junctions, StepJunction, StepLabels, Switchback, WalkDefect, WalkOptions, ZigZagWalk,
};
