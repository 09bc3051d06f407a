//! Admissible sets, the prime ideals `J_X`, the radical decomposition, and the
//! two minimal primes of a non-prime closed path.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    validate_polyocollection, CellComplex, ClosedPathAnalysis, Interval, Point, Polyocollection, Validation,
    WalkOptions, ZigZagWalk,
};
use crate::ideals::{ideal_of, ideal_of_in, inner_minor, vertex_ring, Field, Ideal, Monomial, Polynomial, Ring};
use crate::lattice::{lattice_ideal, rational_rank, toric_ideal_jp, toric_ideals_all, JunctionChoice};
use crate::par;

/// Default cap on `|V(C)|` for admissible-set enumeration.
pub const ADMISSIBLE_CAP: usize = 24;

/// `Ok` when `x` meets every inner interval in nothing or in a whole edge;
/// otherwise the first offending inner interval.
pub fn is_admissible(c: &Polyocollection, x: &BTreeSet<Point>) -> std::result::Result<(), Interval> {
    for i in c.inner_intervals() {
        if !meets_properly(i, |p| x.contains(&p)) {
            return Err(*i);
        }
    }
    Ok(())
}

fn meets_properly(i: &Interval, inside: impl Fn(Point) -> bool) -> bool {
    let corners = i.vertices();
    if !corners.iter().any(|&p| inside(p)) {
        return true;
    }
    i.edges().iter().any(|e| inside(e.from) && inside(e.to))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    Open,
    In,
    Out,
}

/// All admissible sets, by depth-first search over vertices ordered by the
/// inner intervals they first appear in (smallest area first). Each decision
/// is checked against the inner intervals at that vertex.
pub fn enumerate_admissible_sets(c: &Polyocollection, cap: usize) -> Result<Vec<BTreeSet<Point>>> {
    let nv = c.vertices().len();
    if nv > cap {
        return Err(Error::CapExceeded { what: "vertex count", actual: nv, cap });
    }
    let mut inner: Vec<Interval> = c.inner_intervals().to_vec();
    inner.sort_by_key(|i| (i.area(), *i));
    let mut order: Vec<Point> = Vec::new();
    for i in &inner {
        for p in i.vertices() {
            if !order.contains(&p) {
                order.push(p);
            }
        }
    }
    for &p in c.vertices() {
        if !order.contains(&p) {
            order.push(p);
        }
    }
    let index: BTreeMap<Point, usize> = order.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let mut at_vertex: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (k, i) in inner.iter().enumerate() {
        for p in i.vertices() {
            at_vertex[index[&p]].push(k);
        }
    }
    let mut state = vec![Decision::Open; order.len()];
    let mut out = Vec::new();
    admissible_dfs(0, &order, &index, &inner, &at_vertex, &mut state, &mut out);
    out.sort();
    Ok(out)
}

fn feasible(i: &Interval, index: &BTreeMap<Point, usize>, state: &[Decision]) -> bool {
    let s = |p: Point| state[index[&p]];
    if !i.vertices().iter().any(|&p| s(p) == Decision::In) {
        return true;
    }
    i.edges().iter().any(|e| s(e.from) != Decision::Out && s(e.to) != Decision::Out)
}

fn admissible_dfs(
    k: usize,
    order: &[Point],
    index: &BTreeMap<Point, usize>,
    inner: &[Interval],
    at_vertex: &[Vec<usize>],
    state: &mut Vec<Decision>,
    out: &mut Vec<BTreeSet<Point>>,
) {
    if k == order.len() {
        let x: BTreeSet<Point> = order.iter().zip(state.iter()).filter(|(_, d)| **d == Decision::In).map(|(p, _)| *p).collect();
        out.push(x);
        return;
    }
    for d in [Decision::Out, Decision::In] {
        state[k] = d;
        if at_vertex[k].iter().all(|&j| feasible(&inner[j], index, state)) {
            admissible_dfs(k + 1, order, index, inner, at_vertex, state, out);
        }
    }
    state[k] = Decision::Open;
}

/// `C^(X)`: the minimal inner intervals of `C` avoiding `X`.
pub fn derived_polyocollection(c: &Polyocollection, x: &BTreeSet<Point>) -> Result<Polyocollection> {
    if let Err(i) = is_admissible(c, x) {
        return Err(Error::NotAdmissible(i));
    }
    let g: Vec<Interval> =
        c.inner_intervals().iter().filter(|i| i.vertices().iter().all(|p| !x.contains(p))).copied().collect();
    let minimal: Vec<Interval> =
        g.iter().filter(|i| !g.iter().any(|j| j != *i && i.contains(j))).copied().collect();
    let derived = match validate_polyocollection(&minimal)? {
        Validation::Valid(d) => d,
        Validation::Invalid(v) => return Err(Error::Invariant(format!("derived collection invalid: {v:?}"))),
    };
    if derived.inner_intervals() != g.as_slice() {
        return Err(Error::Invariant("inner intervals of the derived collection differ from G^(X)".into()));
    }
    Ok(derived)
}

/// `J_X = (x_a : a ∈ X) + L_{C^(X)}` in the vertex ring of `C`.
pub fn j_ideal<K: Field>(c: &Polyocollection, x: &BTreeSet<Point>) -> Result<Ideal<K>> {
    let ring = vertex_ring(c);
    j_ideal_in(c, x, &ring)
}

fn j_ideal_in<K: Field>(c: &Polyocollection, x: &BTreeSet<Point>, ring: &Arc<Ring>) -> Result<Ideal<K>> {
    let derived = derived_polyocollection(c, x)?;
    let mut gens: Vec<Polynomial<K>> =
        x.iter().map(|p| ring.vertex_index(*p).map(|i| Polynomial::variable(ring, i))).collect::<Result<_>>()?;
    if !derived.is_empty() {
        let l: Ideal<K> = lattice_ideal(&derived);
        for g in l.groebner() {
            gens.push(g.to_ring(ring)?);
        }
    }
    Ideal::new(ring, gens)
}

/// One prime in a decomposition report.
#[derive(Clone, Debug, Serialize)]
pub struct Component {
    /// `J_X`, `p1` or `p2`.
    pub provenance: String,
    /// Admissible sets producing this ideal.
    pub admissible_sets: Vec<Vec<Point>>,
    /// Reduced Gröbner basis in text form.
    pub generators: Vec<String>,
    pub height: usize,
}

/// Result of a decomposition run.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub variables: usize,
    pub base_height: usize,
    pub components: Vec<Component>,
    /// The intersection of the components equals the base ideal.
    pub equals_base: bool,
    /// Every component contains the base ideal.
    pub components_contain_base: bool,
    pub unmixed: bool,
    /// Number of distinct `J_X` before minimalization.
    pub distinct_j_ideals: usize,
    pub admissible_sets: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// One distinct `J_X` with every admissible set producing it.
type Member<K> = (Ideal<K>, Vec<Vec<Point>>);

fn gb_key<K: Field>(i: &Ideal<K>) -> Vec<String> {
    i.groebner().iter().map(|g| g.to_string()).collect()
}

/// The family `{J_X}` over all admissible `X`, minimalized by two-way
/// generator membership, and its intersection compared with `I_C`.
pub fn radical_decomposition<K: Field>(c: &Polyocollection, cap: usize) -> Result<DecompositionReport> {
    let start = Instant::now();
    let sets = enumerate_admissible_sets(c, cap)?;
    let ring = vertex_ring(c);
    let base: Ideal<K> = ideal_of(c);
    let ideals: Vec<Result<Ideal<K>>> = par::map(&sets, |x| {
        let j = j_ideal_in::<K>(c, x, &ring)?;
        j.groebner();
        Ok(j)
    });
    let mut distinct: BTreeMap<Vec<String>, Member<K>> = BTreeMap::new();
    for (x, j) in sets.iter().zip(ideals) {
        let j = j?;
        distinct.entry(gb_key(&j)).or_insert_with(|| (j, Vec::new())).1.push(x.iter().copied().collect());
    }
    let mut family: Vec<Member<K>> = distinct.into_values().collect();
    family.sort_by(|a, b| (a.1[0].len(), &a.1[0]).cmp(&(b.1[0].len(), &b.1[0])));
    let minimal = minimal_members(&family);
    let mut meet: Option<Ideal<K>> = None;
    for &k in &minimal {
        meet = Some(match meet {
            None => family[k].0.clone(),
            Some(m) => m.intersect(&family[k].0)?,
        });
    }
    let meet = meet.unwrap_or_else(|| Ideal::unit(&ring));
    let equals_base = meet.equals(&base)?;
    let components_contain_base =
        minimal.iter().all(|&k| family[k].0.contains_ideal(&base).expect("same ring"));
    let mut components = Vec::new();
    for &k in &minimal {
        let (ideal, xs) = &family[k];
        components.push(Component {
            provenance: "J_X".into(),
            admissible_sets: xs.clone(),
            generators: gb_key(ideal),
            height: ideal.height()?,
        });
    }
    let unmixed = components.windows(2).all(|w| w[0].height == w[1].height);
    Ok(DecompositionReport {
        variables: ring.nvars(),
        base_height: base.height()?,
        components,
        equals_base,
        components_contain_base,
        unmixed,
        distinct_j_ideals: family.len(),
        admissible_sets: sets.len(),
        elapsed: start.elapsed(),
    })
}

/// Indices of the inclusion-minimal ideals, for a family sorted by `|X|`.
/// The variables in `J_X` are exactly those of `X`, so `J_Y ⊆ J_X` forces
/// `Y ⊆ X`; each ideal is tested only against minimal ones on proper subsets.
/// By transitivity a non-minimal ideal contains some minimal one.
fn minimal_members<K: Field>(family: &[Member<K>]) -> Vec<usize> {
    let sets: Vec<BTreeSet<Point>> = family.iter().map(|(_, xs)| xs[0].iter().copied().collect()).collect();
    let mut minimal: Vec<usize> = Vec::new();
    let mut start = 0;
    while start < family.len() {
        let size = sets[start].len();
        let end = (start..family.len()).find(|&k| sets[k].len() != size).unwrap_or(family.len());
        let level: Vec<usize> = (start..end).collect();
        let keep = par::map(&level, |&a| {
            !minimal.iter().any(|&b| {
                sets[b].is_subset(&sets[a]) && family[a].0.contains_ideal(&family[b].0).expect("same ring")
            })
        });
        minimal.extend(level.iter().zip(keep).filter(|(_, k)| *k).map(|(a, _)| *a));
        start = end;
    }
    minimal
}

/// `f_W = ∏ x_{z_i} − ∏ x_{u_i}`.
pub fn zigzag_binomial<K: Field>(w: &ZigZagWalk, ring: &Arc<Ring>) -> Result<Polynomial<K>> {
    let n = ring.nvars();
    let idx = |ps: &[Point]| -> Result<Monomial> {
        let pairs = ps.iter().map(|p| ring.vertex_index(*p).map(|i| (i, 1u16))).collect::<Result<Vec<_>>>()?;
        Ok(Monomial::from_pairs(n, &pairs))
    };
    Ok(Polynomial::binomial(ring, idx(w.z_points())?, idx(w.u_points())?))
}

/// The ideals attached to a non-prime closed path.
pub struct ClosedPathIdeals<K: Field> {
    pub analysis: ClosedPathAnalysis,
    pub ring: Arc<Ring>,
    pub i_p: Ideal<K>,
    pub z_p: Ideal<K>,
    pub p1: Ideal<K>,
    pub p2: Ideal<K>,
    pub necklace: BTreeSet<Point>,
    pub m_set: BTreeSet<Point>,
    pub r_set: Vec<Interval>,
}

impl<K: Field> ClosedPathIdeals<K> {
    pub fn new(p: &CellComplex, opts: &WalkOptions) -> Result<Self> {
        let analysis = ClosedPathAnalysis::new(p, opts)?;
        if analysis.is_prime() {
            return Err(Error::NoZigZagWalk("prime closed path: p1 and p2 are undefined"));
        }
        let ring = vertex_ring(p.collection());
        let i_p: Ideal<K> = ideal_of_in(p.collection(), &ring)?;
        let fw = analysis.walks.iter().map(|w| zigzag_binomial(w, &ring)).collect::<Result<Vec<_>>>()?;
        let z_p = Ideal::new(&ring, fw)?;
        let p1 = i_p.sum(&z_p)?;
        let necklace = analysis.necklace(p)?;
        let m_set = analysis.m_set()?;
        let r_set = analysis.r_set()?;
        let mut gens: Vec<Polynomial<K>> = Vec::new();
        for q in necklace.iter().chain(m_set.iter()) {
            gens.push(Polynomial::variable(&ring, ring.vertex_index(*q)?));
        }
        for i in &r_set {
            gens.push(inner_minor(i, &ring)?);
        }
        let p2 = Ideal::new(&ring, gens)?;
        Ok(ClosedPathIdeals { analysis, ring, i_p, z_p, p1, p2, necklace, m_set, r_set })
    }
}

/// `I_P + Z_P`.
pub fn closed_path_p1<K: Field>(p: &CellComplex) -> Result<Ideal<K>> {
    Ok(ClosedPathIdeals::<K>::new(p, &WalkOptions::default())?.p1)
}

/// Necklace and `M(P)` variables plus the binomials of `R(P)`.
pub fn closed_path_p2<K: Field>(p: &CellComplex) -> Result<Ideal<K>> {
    Ok(ClosedPathIdeals::<K>::new(p, &WalkOptions::default())?.p2)
}

/// Generated by variables and binomials on pairwise disjoint variable sets,
/// none of them among the variables; each binomial `x_a x_b − x_c x_d` with
/// four distinct variables. Such an ideal is prime.
pub fn is_structurally_prime<K: Field>(i: &Ideal<K>) -> bool {
    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut binomials = Vec::new();
    for g in i.generators() {
        if g.is_monomial() {
            let m = g.lead_monomial().expect("nonzero");
            if m.degree() != 1 {
                return false;
            }
            used.insert(m.support()[0]);
        } else {
            binomials.push(g);
        }
    }
    for g in binomials {
        if !g.is_pure_difference_binomial() {
            return false;
        }
        let (a, b) = (&g.terms()[0].0, &g.terms()[1].0);
        if !a.is_squarefree() || !b.is_squarefree() || !a.is_coprime(b) || a.degree() != 2 || b.degree() != 2 {
            return false;
        }
        for v in g.support() {
            if !used.insert(v) {
                return false;
            }
        }
    }
    true
}

/// Rank of the exponent differences of pure-difference binomial generators.
pub fn binomial_height_bound<K: Field>(j: &Ideal<K>) -> Result<usize> {
    let rows = j.generators().iter().map(|g| g.exponent_difference()).collect::<Result<Vec<_>>>()?;
    Ok(rational_rank(&rows))
}

/// One check of the closed-path theorem.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of verifying `I_P = p1 ∩ p2` on a closed path.
#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub cells: usize,
    pub walks: usize,
    pub walk_length: Vec<usize>,
    pub height_i_p: usize,
    pub height_p1: usize,
    pub height_p2: usize,
    pub squarefree_initial: bool,
    pub checks: Vec<Check>,
    pub p1: Vec<String>,
    pub p2: Vec<String>,
    /// Per junction choice: `m`, `Y` cell, and whether its kernel equals `p1`.
    pub junction_kernels: Vec<JunctionKernel>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct JunctionKernel {
    pub m: Point,
    pub y_cell: Point,
    pub equals_p1: bool,
}

impl MainTheoremReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// What to verify beyond the four core checks.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub walks: WalkOptions,
    /// Compare `p1` with the toric kernel `J_P` for these junction choices.
    /// With `All`, agreement across choices is reported, not checked.
    pub junction: Option<JunctionChoice>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { walks: WalkOptions::default(), junction: Some(JunctionChoice::Min) }
    }
}

/// Checks (i) `p1 = L_P` and `p2` structurally prime, (ii) `p1 ∩ p2 = I_P`,
/// (iii) heights of `p1`, `p2`, `I_P` all equal `|P|`, (iv) unmixedness, and
/// optionally `p1 = J_P`.
pub fn verify_main_theorem<K: Field>(p: &CellComplex, opts: &VerifyOptions) -> Result<MainTheoremReport> {
    let start = Instant::now();
    let ideals = ClosedPathIdeals::<K>::new(p, &opts.walks)?;
    let n = p.len();
    let mut checks = Vec::new();
    let mut check = |name: &str, passed: bool, detail: String| {
        checks.push(Check { name: name.into(), passed, detail });
    };

    let (lattice, meet) = rayon_join(
        || lattice_ideal::<K>(p.collection()),
        || ideals.p1.intersect(&ideals.p2),
    );
    let meet = meet?;
    let p1_is_lattice = ideals.p1.equals(&lattice)?;
    check("p1 = L_P", p1_is_lattice, format!("|GB(p1)| = {}, |GB(L_P)| = {}", ideals.p1.groebner().len(), lattice.groebner().len()));
    let structural = is_structurally_prime(&ideals.p2);
    check(
        "p2 prime (disjoint variable blocks)",
        structural,
        format!("{} variables, {} binomials", ideals.necklace.len() + ideals.m_set.len(), ideals.r_set.len()),
    );
    let equal = meet.equals(&ideals.i_p)?;
    check("p1 ∩ p2 = I_P", equal, format!("|GB(p1 ∩ p2)| = {}", meet.groebner().len()));
    let (h1, h2, hi) = (ideals.p1.height()?, ideals.p2.height()?, ideals.i_p.height()?);
    check("height(p1) = height(p2) = height(I_P) = |P|", h1 == n && h2 == n && hi == n, format!("{h1}, {h2}, {hi}; |P| = {n}"));
    check("unmixed", equal && h1 == h2, format!("minimal primes of heights {h1} and {h2}"));
    let mut junction_kernels = Vec::new();
    if let Some(choice) = opts.junction {
        let jp: Ideal<K> = toric_ideal_jp(p)?;
        check("p1 = J_P", ideals.p1.equals(&jp)?, format!("|GB(J_P)| = {}", jp.groebner().len()));
        if choice == JunctionChoice::All {
            for (model, k) in toric_ideals_all::<K>(p)? {
                junction_kernels.push(JunctionKernel {
                    m: model.junction.m,
                    y_cell: model.y_cell,
                    equals_p1: ideals.p1.equals(&k)?,
                });
            }
        }
    }
    Ok(MainTheoremReport {
        cells: n,
        walks: ideals.analysis.walks.len(),
        walk_length: ideals.analysis.walks.iter().map(|w| w.len()).collect(),
        height_i_p: hi,
        height_p1: h1,
        height_p2: h2,
        squarefree_initial: ideals.i_p.has_squarefree_initial(),
        checks,
        p1: gb_key(&ideals.p1),
        p2: ideals.p2.generators().iter().map(|g| g.to_string()).collect(),
        junction_kernels,
        elapsed: start.elapsed(),
    })
}

fn rayon_join<A: Send, B: Send>(a: impl FnOnce() -> A + Send, b: impl FnOnce() -> B + Send) -> (A, B) {
    #[cfg(feature = "parallel")]
    {
        rayon::join(a, b)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (a(), b())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::ideals::{parse_polynomial, Rational};

    #[test]
    fn unit_cell_admissible_sets_match_brute_force() {
        let c = fixtures::unit_cell();
        let sets = enumerate_admissible_sets(&c, ADMISSIBLE_CAP).unwrap();
        let verts = c.vertices().to_vec();
        let mut brute = Vec::new();
        for mask in 0..16u32 {
            let x: BTreeSet<Point> = (0..4).filter(|k| mask >> k & 1 == 1).map(|k| verts[k]).collect();
            if is_admissible(&c, &x).is_ok() {
                brute.push(x);
            }
        }
        brute.sort();
        assert_eq!(sets, brute);
        assert_eq!(sets.len(), 1 + 4 + 4 + 1);
        assert!(is_admissible(&c, &[Point::new(0, 0)].into_iter().collect()).is_err());
    }

    #[test]
    fn fixture_d_radical_decomposition() {
        let c = fixtures::d();
        let report = radical_decomposition::<Rational>(&c, ADMISSIBLE_CAP).unwrap();
        assert_eq!(report.components.len(), 2);
        assert!(report.equals_base);
        assert!(report.unmixed);
        assert!(report.components.iter().all(|k| k.height == 5));
        let y: Vec<Point> = [(2, 2), (2, 3), (3, 3), (4, 2), (4, 3)].into_iter().map(Point::from).collect();
        assert!(report.components.iter().any(|k| k.admissible_sets.contains(&y)));
        assert!(report.distinct_j_ideals > 2);
    }

    #[test]
    fn fixture_d_second_prime() {
        let c = fixtures::d();
        let y: BTreeSet<Point> = [(2, 2), (2, 3), (3, 3), (4, 2), (4, 3)].into_iter().map(Point::from).collect();
        assert!(derived_polyocollection(&c, &y).unwrap().inner_intervals().is_empty());
        let j: Ideal<Rational> = j_ideal(&c, &y).unwrap();
        let ring = j.ring().clone();
        let vars: Vec<Polynomial<Rational>> =
            ["x_4_3", "x_4_2", "x_3_3", "x_2_3", "x_2_2"].iter().map(|s| parse_polynomial(&ring, s).unwrap()).collect();
        assert!(j.equals(&Ideal::new(&ring, vars).unwrap()).unwrap());
    }

    #[test]
    fn extreme_admissible_sets() {
        let c = fixtures::c1();
        let all: BTreeSet<Point> = c.vertices().iter().copied().collect();
        assert!(is_admissible(&c, &BTreeSet::new()).is_ok());
        assert!(is_admissible(&c, &all).is_ok());
        assert!(derived_polyocollection(&c, &all).unwrap().is_empty());
        let j: Ideal<Rational> = j_ideal(&c, &all).unwrap();
        assert_eq!(j.height().unwrap(), c.vertices().len());
        let d = derived_polyocollection(&c, &BTreeSet::new()).unwrap();
        assert_eq!(d.inner_intervals(), c.inner_intervals());
    }

    #[test]
    fn height_bound_of_fixture_d() {
        let i: Ideal<Rational> = ideal_of(&fixtures::d());
        assert_eq!(binomial_height_bound(&i).unwrap(), 5);
        let cell: Ideal<Rational> = ideal_of(&fixtures::unit_cell());
        assert_eq!(binomial_height_bound(&cell).unwrap(), 1);
    }

    #[test]
    fn octagon_main_theorem() {
        let report = verify_main_theorem::<Rational>(&fixtures::octagon16(), &VerifyOptions::default()).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn octagon_junction_choices_agree() {
        let opts = VerifyOptions { junction: Some(JunctionChoice::All), ..VerifyOptions::default() };
        let report = verify_main_theorem::<Rational>(&fixtures::octagon16(), &opts).unwrap();
        assert!(!report.junction_kernels.is_empty());
        assert!(report.junction_kernels.iter().all(|k| k.equals_p1));
    }

    #[test]
    fn ring_is_refused() {
        let err = verify_main_theorem::<Rational>(&fixtures::ring8(), &VerifyOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoZigZagWalk(_)));
    }
}
