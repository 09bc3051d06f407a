use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A lattice point of Z². Ordered lexicographically by `(x, y)`; the
/// componentwise partial order is available through [`Point::le`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Componentwise order: `(i,j) <= (k,l)` iff `i <= k` and `j <= l`.
    pub fn le(self, other: Point) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn offset(self, dx: i64, dy: i64) -> Point {
        Point::new(self.x + dx, self.y + dy)
    }
}

impl From<[i64; 2]> for Point {
    fn from(v: [i64; 2]) -> Self {
        Point::new(v[0], v[1])
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from(v: (i64, i64)) -> Self {
        Point::new(v.0, v.1)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A lattice segment between two points on a common horizontal or vertical line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Segment {
    pub from: Point,
    pub to: Point,
}

impl Segment {
    fn new(a: Point, b: Point) -> Self {
        debug_assert!(a.x == b.x || a.y == b.y);
        if a <= b {
            Segment { from: a, to: b }
        } else {
            Segment { from: b, to: a }
        }
    }

    pub fn is_horizontal(&self) -> bool {
        self.from.y == self.to.y
    }

    pub fn contains(&self, p: Point) -> bool {
        if self.is_horizontal() {
            p.y == self.from.y && self.from.x <= p.x && p.x <= self.to.x
        } else {
            p.x == self.from.x && self.from.y <= p.y && p.y <= self.to.y
        }
    }

    /// Number of lattice points shared by two segments.
    pub fn shared_points(&self, other: &Segment) -> i64 {
        match (self.is_horizontal(), other.is_horizontal()) {
            (true, true) if self.from.y == other.from.y => {
                let lo = self.from.x.max(other.from.x);
                let hi = self.to.x.min(other.to.x);
                (hi - lo + 1).max(0)
            }
            (false, false) if self.from.x == other.from.x => {
                let lo = self.from.y.max(other.from.y);
                let hi = self.to.y.min(other.to.y);
                (hi - lo + 1).max(0)
            }
            (true, false) => {
                let p = Point::new(other.from.x, self.from.y);
                i64::from(self.contains(p) && other.contains(p))
            }
            (false, true) => other.shared_points(self),
            _ => 0,
        }
    }

    /// Lattice points of the segment, in increasing order.
    pub fn points(&self) -> Vec<Point> {
        if self.is_horizontal() {
            (self.from.x..=self.to.x).map(|x| Point::new(x, self.from.y)).collect()
        } else {
            (self.from.y..=self.to.y).map(|y| Point::new(self.from.x, y)).collect()
        }
    }
}

/// A proper interval `[ll, ur]` of Z², i.e. `ll < ur` in both coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawInterval", into = "RawInterval")]
pub struct Interval {
    ll: Point,
    ur: Point,
}

#[derive(Serialize, Deserialize)]
struct RawInterval {
    ll: Point,
    ur: Point,
}

impl TryFrom<RawInterval> for Interval {
    type Error = Error;
    fn try_from(raw: RawInterval) -> Result<Self> {
        Interval::new(raw.ll, raw.ur)
    }
}

impl From<Interval> for RawInterval {
    fn from(i: Interval) -> Self {
        RawInterval { ll: i.ll, ur: i.ur }
    }
}

impl Interval {
    pub fn new(ll: Point, ur: Point) -> Result<Self> {
        if ll.x < ur.x && ll.y < ur.y {
            Ok(Interval { ll, ur })
        } else {
            Err(Error::ImproperInterval { ll, ur })
        }
    }

    /// Shorthand for tests and fixtures; panics on an improper interval.
    pub fn from_coords(ll: (i64, i64), ur: (i64, i64)) -> Self {
        Interval::new(ll.into(), ur.into()).expect("proper interval")
    }

    /// The unit cell with lower-left corner `p`.
    pub fn cell(p: Point) -> Self {
        Interval { ll: p, ur: p.offset(1, 1) }
    }

    pub fn lower_left(&self) -> Point {
        self.ll
    }

    pub fn upper_right(&self) -> Point {
        self.ur
    }

    pub fn upper_left(&self) -> Point {
        Point::new(self.ll.x, self.ur.y)
    }

    pub fn lower_right(&self) -> Point {
        Point::new(self.ur.x, self.ll.y)
    }

    pub fn width(&self) -> i64 {
        self.ur.x - self.ll.x
    }

    pub fn height(&self) -> i64 {
        self.ur.y - self.ll.y
    }

    pub fn area(&self) -> i64 {
        self.width() * self.height()
    }

    pub fn is_cell(&self) -> bool {
        self.width() == 1 && self.height() == 1
    }

    /// `[ll, ur, ul, lr]`: the diagonal corners followed by the anti-diagonal ones.
    pub fn vertices(&self) -> [Point; 4] {
        [self.ll, self.ur, self.upper_left(), self.lower_right()]
    }

    pub fn is_vertex(&self, p: Point) -> bool {
        (p.x == self.ll.x || p.x == self.ur.x) && (p.y == self.ll.y || p.y == self.ur.y)
    }

    /// The corner diagonally opposite to `p` (which must be a vertex).
    pub fn opposite(&self, p: Point) -> Point {
        debug_assert!(self.is_vertex(p));
        Point::new(self.ll.x + self.ur.x - p.x, self.ll.y + self.ur.y - p.y)
    }

    /// Whether `p` and `q` are the two ends of one edge.
    pub fn is_edge_boundary(&self, p: Point, q: Point) -> bool {
        self.is_vertex(p) && self.is_vertex(q) && p != q && (p.x == q.x || p.y == q.y)
    }

    /// The four edges: left, bottom, right, top.
    pub fn edges(&self) -> [Segment; 4] {
        let (ul, lr) = (self.upper_left(), self.lower_right());
        [
            Segment::new(self.ll, ul),
            Segment::new(self.ll, lr),
            Segment::new(lr, self.ur),
            Segment::new(ul, self.ur),
        ]
    }

    pub fn contains_point(&self, p: Point) -> bool {
        self.ll.le(p) && p.le(self.ur)
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.ll.le(other.ll) && other.ur.le(self.ur)
    }

    /// Closed intersection as a (possibly degenerate) box, or `None` when disjoint.
    pub fn intersection(&self, other: &Interval) -> Option<(Point, Point)> {
        let lo = Point::new(self.ll.x.max(other.ll.x), self.ll.y.max(other.ll.y));
        let hi = Point::new(self.ur.x.min(other.ur.x), self.ur.y.min(other.ur.y));
        (lo.x <= hi.x && lo.y <= hi.y).then_some((lo, hi))
    }

    pub fn interiors_meet(&self, other: &Interval) -> bool {
        self.ll.x.max(other.ll.x) < self.ur.x.min(other.ur.x)
            && self.ll.y.max(other.ll.y) < self.ur.y.min(other.ur.y)
    }

    /// Lower-left corners of the unit cells inside the interval.
    pub fn cells(&self) -> impl Iterator<Item = Point> + '_ {
        (self.ll.x..self.ur.x).flat_map(move |x| (self.ll.y..self.ur.y).map(move |y| Point::new(x, y)))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.ll, self.ur)
    }
}
