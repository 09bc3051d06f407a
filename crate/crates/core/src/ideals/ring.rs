use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::monomial::Monomial;
use crate::error::{Error, Result};
use crate::geometry::Point;

/// A ring variable: a vertex variable `x_a` or a named auxiliary.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Var {
    Vertex(Point),
    Aux(String),
}

fn coord(v: i64) -> String {
    if v < 0 {
        format!("n{}", -v)
    } else {
        v.to_string()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Vertex(p) => write!(f, "x_{}_{}", coord(p.x), coord(p.y)),
            Var::Aux(s) => f.write_str(s),
        }
    }
}

impl Var {
    /// Inverse of `Display`: `x_3_n1` is the vertex `(3,-1)`, anything else an auxiliary.
    pub fn parse(s: &str) -> Option<Var> {
        let ok = !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok || s.starts_with(|c: char| c.is_ascii_digit()) {
            return None;
        }
        let parse_coord = |t: &str| -> Option<i64> {
            if let Some(rest) = t.strip_prefix('n') {
                rest.parse::<i64>().ok().filter(|v| *v > 0).map(|v| -v)
            } else if t.chars().all(|c| c.is_ascii_digit()) && !t.is_empty() {
                t.parse().ok()
            } else {
                None
            }
        };
        let parts: Vec<&str> = s.split('_').collect();
        if parts.len() == 3 && parts[0] == "x" {
            if let (Some(x), Some(y)) = (parse_coord(parts[1]), parse_coord(parts[2])) {
                return Some(Var::Vertex(Point::new(x, y)));
            }
        }
        Some(Var::Aux(s.to_string()))
    }
}

/// Variables of a ring in order: index 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableTable {
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl VariableTable {
    pub fn new(vars: Vec<Var>) -> Self {
        let index = vars.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect::<HashMap<_, _>>();
        assert_eq!(index.len(), vars.len(), "repeated variable");
        VariableTable { vars, index }
    }

    /// Vertex variables sorted lexicographically by `(x, y)`.
    pub fn vertices(points: impl IntoIterator<Item = Point>) -> Self {
        let mut pts: Vec<Point> = points.into_iter().collect();
        pts.sort();
        pts.dedup();
        VariableTable::new(pts.into_iter().map(Var::Vertex).collect())
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn get(&self, v: &Var) -> Option<usize> {
        self.index.get(v).copied()
    }
}

/// Monomial orders. `Block { eliminate: k }` compares the first `k` variables
/// by degrevlex and breaks ties by degrevlex on the rest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MonomialOrder {
    Degrevlex,
    Lex,
    Block { eliminate: usize },
}

/// A polynomial ring: variable table plus monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    table: VariableTable,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(table: VariableTable, order: MonomialOrder) -> Arc<Ring> {
        if let MonomialOrder::Block { eliminate } = order {
            assert!(eliminate <= table.len());
        }
        Arc::new(Ring { table, order })
    }

    /// Vertex variables under degrevlex.
    pub fn vertex_ring(points: impl IntoIterator<Item = Point>) -> Arc<Ring> {
        Ring::new(VariableTable::vertices(points), MonomialOrder::Degrevlex)
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.table.vars[i]
    }

    pub fn index_of(&self, v: &Var) -> Result<usize> {
        self.table.get(v).ok_or_else(|| Error::MissingVariable(v.to_string()))
    }

    pub fn vertex_index(&self, p: Point) -> Result<usize> {
        self.index_of(&Var::Vertex(p))
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Ring> {
        Ring::new(self.table.clone(), order)
    }

    /// A ring with `aux` placed before the current variables under an
    /// elimination order for them.
    pub fn with_leading(&self, aux: Vec<Var>) -> Arc<Ring> {
        let k = aux.len();
        let mut vars = aux;
        vars.extend(self.table.vars.iter().cloned());
        let inner = match self.order {
            MonomialOrder::Lex => MonomialOrder::Lex,
            _ => MonomialOrder::Block { eliminate: k },
        };
        Ring::new(VariableTable::new(vars), inner)
    }

    /// Degrevlex ring with variable `i` moved to the last (smallest) position,
    /// and the index map from this ring into it.
    pub fn with_last(&self, i: usize) -> (Arc<Ring>, Vec<usize>) {
        let n = self.nvars();
        let mut vars: Vec<Var> = Vec::with_capacity(n);
        let mut map = vec![0; n];
        for j in 0..n {
            if j != i {
                map[j] = vars.len();
                vars.push(self.table.vars[j].clone());
            }
        }
        map[i] = n - 1;
        vars.push(self.table.vars[i].clone());
        (Ring::new(VariableTable::new(vars), MonomialOrder::Degrevlex), map)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Degrevlex => a.cmp_degrevlex_full(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::Block { eliminate } => match a.cmp_degrevlex(b, 0..eliminate) {
                Ordering::Equal => a.cmp_degrevlex(b, eliminate..a.nvars()),
                o => o,
            },
        }
    }

    /// Index map from `self` into `other` by variable identity.
    pub fn map_into(&self, other: &Ring) -> Result<Vec<usize>> {
        self.table.vars.iter().map(|v| other.index_of(v)).collect()
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = m
            .pairs()
            .into_iter()
            .map(|(i, e)| if e == 1 { self.var(i).to_string() } else { format!("{}^{}", self.var(i), e) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}
