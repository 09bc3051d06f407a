//! The lattice of a polyocollection, its unimodular basis, the map ψ, lattice
//! ideals, and toric kernels by elimination.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    junctions, CellComplex, Interval, Point, Polyocollection, StepJunction, StepLabels,
};
use crate::ideals::{ideal_of, vertex_ring, Field, Ideal, Monomial, Polynomial, Ring, Var};

/// Determinant of a square integer matrix by fraction-free elimination.
pub fn bareiss_determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Exact solution of `m·x = rhs` for a nonsingular square integer matrix.
pub fn solve_exact(m: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| row.iter().chain(std::iter::once(&b)).map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

/// Rank over the rationals of a list of integer vectors.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> =
        rows.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect();
    let ncols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..a.len() {
            if !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                for c in col..ncols {
                    let delta = &f * &a[rank][c];
                    a[r][c] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// The generator matrix of `Λ_C` completed by the unit vectors of the free vertices.
#[derive(Clone, Debug, Serialize)]
pub struct LatticeModel {
    /// Row labels.
    pub vertices: Vec<Point>,
    pub members: Vec<Interval>,
    /// Vertices that are not the lower-left corner of any member.
    pub free: Vec<Point>,
    /// `matrix[row][col]`; columns are the members' `v_I`, then the free vertices.
    pub matrix: Vec<Vec<i64>>,
    #[serde(serialize_with = "serialize_bigint")]
    pub determinant: BigInt,
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl LatticeModel {
    pub fn new(c: &Polyocollection) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::Empty("polyocollection"));
        }
        let vertices: Vec<Point> = c.vertices().to_vec();
        let row: BTreeMap<Point, usize> = vertices.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let members: Vec<Interval> = c.members().to_vec();
        let lower_left: std::collections::BTreeSet<Point> = members.iter().map(|i| i.lower_left()).collect();
        let free: Vec<Point> = vertices.iter().copied().filter(|p| !lower_left.contains(p)).collect();
        let n = vertices.len();
        let mut matrix = vec![vec![0i64; members.len() + free.len()]; n];
        for (k, i) in members.iter().enumerate() {
            matrix[row[&i.lower_left()]][k] += 1;
            matrix[row[&i.upper_right()]][k] += 1;
            matrix[row[&i.upper_left()]][k] -= 1;
            matrix[row[&i.lower_right()]][k] -= 1;
        }
        for (k, p) in free.iter().enumerate() {
            matrix[row[p]][members.len() + k] = 1;
        }
        if members.len() + free.len() != n {
            return Err(Error::NotUnimodular(format!("{} columns for {} rows", members.len() + free.len(), n)));
        }
        let determinant = bareiss_determinant(&matrix);
        if determinant.abs() != BigInt::one() {
            return Err(Error::NotUnimodular(determinant.to_string()));
        }
        Ok(LatticeModel { vertices, members, free, matrix, determinant })
    }

    /// Exponents `μ_b` of `ψ(x_a) = ∏ y_b^{μ_b}`, keyed by free vertex.
    pub fn psi_coefficients(&self, a: Point) -> Result<BTreeMap<Point, i64>> {
        let r = self
            .vertices
            .iter()
            .position(|&p| p == a)
            .ok_or_else(|| Error::MissingVariable(a.to_string()))?;
        let mut rhs = vec![0i64; self.vertices.len()];
        rhs[r] = 1;
        let lambda = solve_exact(&self.matrix, &rhs).ok_or_else(|| Error::NotUnimodular("singular".into()))?;
        let k = self.members.len();
        let mut out = BTreeMap::new();
        for (j, b) in self.free.iter().enumerate() {
            let v = &lambda[k + j];
            if !v.is_integer() {
                return Err(Error::NotUnimodular(format!("non-integral coefficient {v}")));
            }
            let v = v.to_integer().to_i64().expect("small coefficient");
            if v != 0 {
                out.insert(*b, v);
            }
        }
        Ok(out)
    }

    /// CSV with a header of column labels and one row per vertex.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("vertex");
        for i in &self.members {
            let _ = write!(s, ",\"v{i}\"");
        }
        for p in &self.free {
            let _ = write!(s, ",\"e{p}\"");
        }
        s.push('\n');
        for (p, row) in self.vertices.iter().zip(&self.matrix) {
            let _ = write!(s, "\"{p}\"");
            for v in row {
                let _ = write!(s, ",{v}");
            }
            s.push('\n');
        }
        s
    }
}

/// `L_C = (I_C : (∏ x_a)^∞)`, saturating one variable at a time.
pub fn lattice_ideal<K: Field>(c: &Polyocollection) -> Ideal<K> {
    ideal_of::<K>(c).saturate_all_variables()
}

/// `L_C` as the kernel of `ψ`, by elimination of `y_b` (`b ∈ F(C)`) and an
/// inverting variable `t`.
pub fn lattice_ideal_by_elimination<K: Field>(c: &Polyocollection) -> Result<Ideal<K>> {
    let ring = vertex_ring(c);
    if c.is_empty() {
        return Ok(Ideal::zero(&ring));
    }
    let model = LatticeModel::new(c)?;
    let mut aux = vec![Var::Aux("t".into())];
    aux.extend(model.free.iter().map(|p| Var::Aux(format!("y_{}", ring.vertex_index(*p).expect("vertex")))));
    let big = ring.with_leading(aux);
    let k = model.free.len() + 1;
    let n = big.nvars();
    let yidx = |b: &Point| 1 + model.free.iter().position(|q| q == b).expect("free vertex");
    let mut gens = Vec::new();
    for &a in &model.vertices {
        let mu = model.psi_coefficients(a)?;
        let mut xa = vec![(k + ring.vertex_index(a)?, 1u16)];
        let mut plus = Vec::new();
        for (b, &e) in &mu {
            let e16 = u16::try_from(e.unsigned_abs()).expect("small exponent");
            if e > 0 {
                plus.push((yidx(b), e16));
            } else {
                xa.push((yidx(b), e16));
            }
        }
        gens.push(Polynomial::<K>::binomial(&big, Monomial::from_pairs(n, &xa), Monomial::from_pairs(n, &plus)));
    }
    let prod: Vec<(usize, u16)> = std::iter::once((0, 1)).chain((1..k).map(|i| (i, 1))).collect();
    gens.push(Polynomial::binomial(&big, Monomial::from_pairs(n, &prod), Monomial::one(n)));
    Ok(eliminate_leading(&ring, &big, gens, k))
}

/// Elements of the reduced basis of `gens` in `big` free of its first `k`
/// variables, moved to `ring` (the remaining variables in order).
fn eliminate_leading<K: Field>(ring: &Arc<Ring>, big: &Arc<Ring>, gens: Vec<Polynomial<K>>, k: usize) -> Ideal<K> {
    let gb = crate::ideals::reduced_groebner(big, &gens);
    let mut map = vec![usize::MAX; big.nvars()];
    for (i, m) in map.iter_mut().enumerate().skip(k) {
        *m = i - k;
    }
    let kept: Vec<Polynomial<K>> =
        gb.into_iter().filter(|g| g.support().iter().all(|&i| i >= k)).map(|g| g.remap(ring, &map)).collect();
    Ideal::new(ring, kept).expect("same variables")
}

/// `I_C = L_C`.
pub fn is_prime_ideal_of<K: Field>(c: &Polyocollection) -> bool {
    let i = ideal_of::<K>(c);
    let l = i.saturate_all_variables();
    i.equals(&l).expect("same ring")
}

/// The map `r ↦ v_i·h_j·w^k` for one step junction with a chosen `Y` cell.
#[derive(Clone, Debug, Serialize)]
pub struct ToricModel {
    pub junction: StepJunction,
    pub y_cell: Point,
    pub labels: StepLabels,
    pub vertical: usize,
    pub horizontal: usize,
    /// Vertex to (vertical interval, horizontal interval, power of `w`).
    pub assignment: BTreeMap<Point, (usize, usize, u16)>,
}

/// Which step junction carries the extra variable `w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JunctionChoice {
    /// Smallest `m`, with the smaller arm cell as `Y`.
    Min,
    /// Every junction with both arm cells as `Y`.
    All,
}

impl ToricModel {
    pub fn new(p: &CellComplex, junction: &StepJunction, y_cell: Point) -> Result<Self> {
        let labels = junction.labels(y_cell);
        let edges = p.edge_intervals();
        let weighted = [labels.a, labels.b, labels.c, labels.d, labels.e];
        let verts: std::collections::BTreeSet<Point> = p.vertices().iter().copied().collect();
        if let Some(q) = weighted.iter().find(|q| !verts.contains(q)) {
            return Err(Error::NotClosedPath(format!("step junction label {q} is not a vertex")));
        }
        let mut assignment = BTreeMap::new();
        for &r in p.vertices() {
            let vi = edges.vertical_index(r).ok_or_else(|| Error::NotClosedPath(format!("{r} on no vertical edge")))?;
            let hj =
                edges.horizontal_index(r).ok_or_else(|| Error::NotClosedPath(format!("{r} on no horizontal edge")))?;
            assignment.insert(r, (vi, hj, u16::from(weighted.contains(&r))));
        }
        Ok(ToricModel {
            junction: *junction,
            y_cell,
            labels,
            vertical: edges.vertical.len(),
            horizontal: edges.horizontal.len(),
            assignment,
        })
    }

    /// All models for `choice`; `Min` yields exactly one.
    pub fn for_choice(p: &CellComplex, choice: JunctionChoice) -> Result<Vec<Self>> {
        let path = p.closed_path().map_err(|f| Error::NotClosedPath(f.to_string()))?;
        let mut steps = junctions(&path).steps;
        if steps.is_empty() {
            return Err(Error::NoStepJunction);
        }
        steps.sort_by_key(|s| (s.m, s.position));
        match choice {
            JunctionChoice::Min => Ok(vec![ToricModel::new(p, &steps[0], steps[0].default_y())?]),
            JunctionChoice::All => {
                let mut out = Vec::new();
                for s in &steps {
                    for y in [s.cells[0], s.cells[2]] {
                        out.push(ToricModel::new(p, s, y)?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Kernel of `x_r ↦ α(r)` by eliminating the target variables.
    pub fn kernel<K: Field>(&self, ring: &Arc<Ring>) -> Result<Ideal<K>> {
        let mut aux: Vec<Var> = (0..self.vertical).map(|i| Var::Aux(format!("v{i}"))).collect();
        aux.extend((0..self.horizontal).map(|j| Var::Aux(format!("h{j}"))));
        aux.push(Var::Aux("w".into()));
        let k = aux.len();
        let big = ring.with_leading(aux);
        let n = big.nvars();
        let mut gens = Vec::new();
        for (&r, &(vi, hj, w)) in &self.assignment {
            let x = Monomial::variable(n, k + ring.vertex_index(r)?);
            let mut image = vec![(vi, 1), (self.vertical + hj, 1)];
            if w > 0 {
                image.push((k - 1, w));
            }
            gens.push(Polynomial::<K>::binomial(&big, x, Monomial::from_pairs(n, &image)));
        }
        Ok(eliminate_leading(ring, &big, gens, k))
    }
}

/// `J_P` for the junction with the smallest `m`.
pub fn toric_ideal_jp<K: Field>(p: &CellComplex) -> Result<Ideal<K>> {
    let ring = vertex_ring(p.collection());
    ToricModel::for_choice(p, JunctionChoice::Min)?[0].kernel(&ring)
}

/// `J_P` for every junction choice, in the order of [`ToricModel::for_choice`].
pub fn toric_ideals_all<K: Field>(p: &CellComplex) -> Result<Vec<(ToricModel, Ideal<K>)>> {
    let ring = vertex_ring(p.collection());
    let models = ToricModel::for_choice(p, JunctionChoice::All)?;
    let kernels = crate::par::map(&models, |m| m.kernel::<K>(&ring));
    models.into_iter().zip(kernels).map(|(m, k)| Ok((m, k?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideals::Rational;

    type Q = Rational;

    #[test]
    fn bareiss_matches_expansion() {
        assert_eq!(bareiss_determinant(&[vec![2, 1], vec![1, 1]]), BigInt::one());
        assert_eq!(bareiss_determinant(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]), BigInt::from(-2));
        assert_eq!(bareiss_determinant(&[vec![1, 2], vec![2, 4]]), BigInt::zero());
    }

    #[test]
    fn unit_cell_model() {
        let c = fixtures::unit_cell();
        let m = LatticeModel::new(&c).unwrap();
        assert_eq!(m.free, vec![Point::new(0, 1), Point::new(1, 0), Point::new(1, 1)]);
        assert_eq!(m.matrix.len(), 4);
        let mu = m.psi_coefficients(Point::new(0, 0)).unwrap();
        let want: BTreeMap<Point, i64> =
            [(Point::new(0, 1), 1), (Point::new(1, 0), 1), (Point::new(1, 1), -1)].into_iter().collect();
        assert_eq!(mu, want);
        let unit = m.psi_coefficients(Point::new(1, 1)).unwrap();
        assert_eq!(unit, [(Point::new(1, 1), 1)].into_iter().collect());
        assert!(m.to_csv().lines().count() == 5);
    }

    #[test]
    fn fixture_d_lattice_ideal() {
        let c = fixtures::d();
        assert!(LatticeModel::new(&c).is_ok());
        let l: Ideal<Q> = lattice_ideal(&c);
        let i: Ideal<Q> = ideal_of(&c);
        let ring = i.ring().clone();
        let extra =
            crate::ideals::parse_polynomial(&ring, "x_1_2*x_2_4*x_4_1*x_5_3 - x_1_3*x_2_1*x_4_4*x_5_2").unwrap();
        let p1 = i.sum(&Ideal::new(&ring, vec![extra]).unwrap()).unwrap();
        assert!(l.equals(&p1).unwrap());
        assert!(!is_prime_ideal_of::<Q>(&c));
        assert!(lattice_ideal_by_elimination::<Q>(&c).unwrap().equals(&l).unwrap());
    }

    #[test]
    fn square_is_prime() {
        let sq = fixtures::square2x2();
        assert!(is_prime_ideal_of::<Q>(sq.collection()));
        assert!(is_prime_ideal_of::<Q>(&fixtures::unit_cell()));
    }

    #[test]
    fn rank_of_vectors() {
        assert_eq!(rational_rank(&[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]]), 2);
        assert_eq!(rational_rank(&[]), 0);
    }
}
