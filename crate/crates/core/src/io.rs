//! Fixture files: `{"type":"polyocollection","intervals":[{"ll":[x,y],"ur":[x,y]},...]}`
//! or `{"type":"cells","cells":[[x,y],...]}`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{validate_polyocollection, CellComplex, Interval, Point, Polyocollection, Validation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum Fixture {
    Polyocollection { intervals: Vec<Interval> },
    Cells { cells: Vec<Point> },
}

impl Fixture {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Sorted keys and canonical member order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.canonical()).expect("plain data")
    }

    pub fn from_collection(c: &Polyocollection) -> Self {
        Fixture::Polyocollection { intervals: c.members().to_vec() }
    }

    pub fn from_cells(p: &CellComplex) -> Self {
        Fixture::Cells { cells: p.cells().iter().copied().collect() }
    }

    /// Members sorted and cells deduplicated.
    pub fn canonical(&self) -> Fixture {
        match self {
            Fixture::Polyocollection { intervals } => {
                let mut v = intervals.clone();
                v.sort();
                Fixture::Polyocollection { intervals: v }
            }
            Fixture::Cells { cells } => {
                let mut v = cells.clone();
                v.sort();
                v.dedup();
                Fixture::Cells { cells: v }
            }
        }
    }

    /// Validates the intervals; a cell fixture is always a polyocollection.
    pub fn validate(&self) -> Result<Validation> {
        match self {
            Fixture::Polyocollection { intervals } => validate_polyocollection(intervals),
            Fixture::Cells { cells } => Ok(Validation::Valid(Polyocollection::from_cells(cells.iter().copied()))),
        }
    }

    /// The cell complex, if this is a cell fixture.
    pub fn cell_complex(&self) -> Option<CellComplex> {
        match self {
            Fixture::Cells { cells } => Some(CellComplex::new(cells.iter().copied())),
            Fixture::Polyocollection { .. } => None,
        }
    }
}
