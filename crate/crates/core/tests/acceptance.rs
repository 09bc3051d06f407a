//! Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
//! any criterion fails. Budgets and case counts are pinned below.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use polyo::decomposition::{radical_decomposition, verify_main_theorem, VerifyOptions, ADMISSIBLE_CAP};
use polyo::fixtures;
use polyo::generate::{generate_closed_paths, random_polyocollection, LabelledPath, RandomCollection};
use polyo::geometry::{
    enumerate_zigzag_walks_exhaustive, validate_polyocollection, ClosedPathAnalysis, Interval, Point, Validation,
    Violation, WalkOptions,
};
use polyo::ideals::{ideal_of, parse_polynomial, vertex_ring, Ideal, Polynomial, Rational};
use polyo::lattice::{is_prime_ideal_of, lattice_ideal, lattice_ideal_by_elimination, LatticeModel};

type Q = Rational;

const BUDGET_DISCUSSION: Duration = Duration::from_secs(10);
const BUDGET_EXAMPLES: Duration = Duration::from_secs(1);
const BUDGET_SWITCHBACK: Duration = Duration::from_secs(60);
const BUDGET_SWEEP: Duration = Duration::from_secs(600);
const BUDGET_PROPERTY: Duration = Duration::from_secs(300);

/// Criterion 4 asks for at least this many non-prime paths with at most 14 cells.
const SWEEP_MIN_INSTANCES: usize = 20;
const SWEEP_MAX_CELLS: usize = 14;
/// Supplementary sweep bound; the smallest non-prime closed path has 16 cells.
const SUPPLEMENTARY_MAX_CELLS: usize = 26;
const SWEEP_SEED: u64 = 0x00c0_ffee;

const PROPERTY_CASES: u64 = 100;
const PROPERTY_SEED: u64 = 0x5eed_a000;
const ELIMINATION_MAX_VERTICES: usize = 16;
const DETECTOR_MAX_CELLS: usize = 20;
const DECOMPOSITION_MAX_VERTICES: usize = 16;

type Verdict = Result<String, String>;

struct Line {
    id: &'static str,
    name: &'static str,
    passed: bool,
    detail: String,
}

fn run(id: &'static str, name: &'static str, budget: Duration, f: impl FnOnce() -> Verdict) -> Line {
    let start = Instant::now();
    let outcome = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if elapsed > budget {
        passed = false;
        detail = format!("{detail}; over budget");
    }
    let line = Line { id, name, passed, detail: format!("{detail} [{:.2?} of {:?}]", elapsed, budget) };
    println!("{} {:<4} {}: {}", if line.passed { "PASS" } else { "FAIL" }, line.id, line.name, line.detail);
    line
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
    Interval::from_coords(a, b)
}

fn discussion() -> Verdict {
    let c = fixtures::d();
    let ring = vertex_ring(&c);
    ensure(ring.nvars() == 14, format!("{} variables", ring.nvars()))?;
    ensure(!is_prime_ideal_of::<Q>(&c), "I_D reported prime")?;
    let i: Ideal<Q> = ideal_of(&c);
    let (h, d) = (i.height().map_err(|e| e.to_string())?, i.dimension().map_err(|e| e.to_string())?);
    ensure(h == 5 && d == 9, format!("height {h}, dim {d}"))?;

    let parse = |s: &str| -> Polynomial<Q> { parse_polynomial(&ring, s).expect("vertex names") };
    let mut p1_gens = i.generators().to_vec();
    p1_gens.push(parse("x_1_2*x_2_4*x_4_1*x_5_3 - x_1_3*x_2_1*x_4_4*x_5_2"));
    let p1 = Ideal::new(&ring, p1_gens).map_err(|e| e.to_string())?;
    let p2 = Ideal::new(&ring, ["x_4_3", "x_4_2", "x_3_3", "x_2_3", "x_2_2"].map(parse).to_vec())
        .map_err(|e| e.to_string())?;

    let report = radical_decomposition::<Q>(&c, ADMISSIBLE_CAP).map_err(|e| e.to_string())?;
    ensure(report.components.len() == 2, format!("{} minimal components", report.components.len()))?;
    let comps: Vec<Ideal<Q>> = report
        .components
        .iter()
        .map(|k| Ideal::new(&ring, k.generators.iter().map(|g| parse(g)).collect()).expect("same ring"))
        .collect();
    let has = |want: &Ideal<Q>| comps.iter().any(|k| k.equals(want).expect("same ring"));
    ensure(has(&p1), "p1 missing")?;
    ensure(has(&p2), "p2 missing")?;
    ensure(p1.intersect(&p2).and_then(|m| m.equals(&i)).map_err(|e| e.to_string())?, "p1 ∩ p2 ≠ I_D")?;
    ensure(report.equals_base, "intersection of components ≠ I_D")?;
    let heights: Vec<usize> = report.components.iter().map(|k| k.height).collect();
    ensure(heights == [5, 5], format!("component heights {heights:?}"))?;
    ensure(report.unmixed, "not unmixed")?;
    Ok("non-prime, height 5, dim 9, components {p1, p2}, p1 ∩ p2 = I_D, unmixed".into())
}

fn examples() -> Verdict {
    for (name, raw) in [("C1", fixtures::c1_intervals()), ("C2", fixtures::c2_intervals()), ("C4", fixtures::c4_intervals())]
    {
        let v = validate_polyocollection(&raw).map_err(|e| e.to_string())?;
        ensure(v.is_valid(), format!("{name} rejected"))?;
    }
    let witness = |a: Interval, b: Interval| Violation { first: a, second: b, clause: polyo::geometry::Clause::EdgeOverlap };
    match validate_polyocollection(&fixtures::c3_intervals()).map_err(|e| e.to_string())? {
        Validation::Valid(_) => return Err("C3 accepted".into()),
        Validation::Invalid(v) => {
            let want = witness(iv((2, 1), (4, 3)), iv((4, 1), (5, 2)));
            ensure(v.contains(&want), format!("witness pair missing from {v:?}"))?;
        }
    }
    let (c1, c2, c4) = (fixtures::c1(), fixtures::c2(), fixtures::c4());
    let checks = [
        (c1.is_inner(&iv((1, 1), (2, 3))), "[(1,1),(2,3)] inner in C1"),
        (c1.is_inner(&iv((1, 1), (5, 3))), "[(1,1),(5,3)] inner in C1"),
        (c2.is_inner(&iv((1, 3), (7, 5))), "[(1,3),(7,5)] inner in C2"),
        (c2.is_inner(&iv((3, 2), (5, 7))), "[(3,2),(5,7)] inner in C2"),
        (!c2.is_inner(&iv((3, 3), (5, 5))), "[(3,3),(5,5)] not inner in C2"),
        (c4.is_inner(&iv((1, 1), (5, 5))), "[(1,1),(5,5)] inner in C4"),
    ];
    for (ok, what) in checks {
        ensure(ok, format!("failed: {what}"))?;
    }
    Ok("C1, C2, C4 valid; C3 rejected with the stated pair; six memberships reproduced".into())
}

fn switchback26() -> Verdict {
    let p = fixtures::switchback26();
    let analysis = ClosedPathAnalysis::new(&p, &WalkOptions::default()).map_err(|e| e.to_string())?;
    let lengths: Vec<usize> = analysis.walks.iter().map(|w| w.len()).collect();
    ensure(lengths == [6, 6, 6, 6], format!("walk lengths {lengths:?}"))?;
    let oracle = WalkOptions { cap_vertices: 64, cap_walks: 64 };
    let brute = enumerate_zigzag_walks_exhaustive(&p, &oracle).map_err(|e| e.to_string())?;
    ensure(brute.len() == 4, format!("brute-force oracle finds {} walks", brute.len()))?;
    let necklaces: BTreeSet<Vec<Point>> = analysis.walks.iter().map(|w| w.necklace(&p).into_iter().collect()).collect();
    ensure(necklaces.len() == 1, "necklaces differ")?;
    let report = verify_main_theorem::<Q>(&p, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    ensure(failed.is_empty(), format!("failed checks: {failed:?}"))?;
    Ok(format!("4 walks of l = 6 (oracle agrees), one necklace, {} checks pass", report.checks.len()))
}

/// Verifies every non-prime path of the seeded stream up to `max_cells`.
fn sweep(max_cells: usize, min_instances: usize) -> Verdict {
    let stream = generate_closed_paths(SWEEP_SEED, max_cells);
    let disagreements = stream.iter().filter(|l| !l.detectors_agree()).count();
    ensure(disagreements == 0, format!("{disagreements} detector disagreements"))?;
    let non_prime: Vec<&LabelledPath> = stream.iter().filter(|l| l.non_prime).collect();
    let mut sizes = Vec::new();
    for l in &non_prime {
        let report = verify_main_theorem::<Q>(&l.cells, &VerifyOptions::default()).map_err(|e| e.to_string())?;
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        ensure(failed.is_empty(), format!("{}-cell path fails {failed:?}", l.cells.len()))?;
        sizes.push(l.cells.len());
    }
    let summary = format!(
        "{} closed paths with ≤ {max_cells} cells, {} non-prime (sizes {:?}), all verified",
        stream.len(),
        non_prime.len(),
        sizes
    );
    ensure(non_prime.len() >= min_instances, format!("{summary}; need ≥ {min_instances} instances"))?;
    Ok(summary)
}

fn seeded(k: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(PROPERTY_SEED + k)
}

const SHAPE: RandomCollection = RandomCollection { grid: 5, attempts: 8, max_side: 2 };

/// Runs `check` on collections drawn until `PROPERTY_CASES` pass the filter.
fn property(
    filter: impl Fn(&polyo::geometry::Polyocollection) -> bool,
    check: impl Fn(&polyo::geometry::Polyocollection) -> Result<(), String>,
) -> Verdict {
    let (mut done, mut k) = (0, 0);
    while done < PROPERTY_CASES {
        let c = random_polyocollection(&mut seeded(k), &SHAPE);
        k += 1;
        if !filter(&c) {
            continue;
        }
        check(&c).map_err(|e| format!("case {k}: {e}; members {:?}", c.members()))?;
        done += 1;
    }
    Ok(format!("{done} cases"))
}

fn any(_: &polyo::geometry::Polyocollection) -> bool {
    true
}

fn properties() -> Vec<Line> {
    let mut out = Vec::new();
    out.push(run("5a", "|det M| = 1", BUDGET_PROPERTY, || {
        property(any, |c| {
            let m = LatticeModel::new(c).map_err(|e| e.to_string())?;
            ensure(m.determinant == 1.into() || m.determinant == (-1).into(), format!("det {}", m.determinant))
        })
    }));
    out.push(run("5b", "I_C ⊆ L_C", BUDGET_PROPERTY, || {
        property(any, |c| {
            let l: Ideal<Q> = lattice_ideal(c);
            ensure(l.contains_ideal(&ideal_of(c)).expect("same ring"), "generator outside L_C")
        })
    }));
    out.push(run("5c", "L_C monomial-free", BUDGET_PROPERTY, || {
        property(any, |c| ensure(!lattice_ideal::<Q>(c).contains_monomial(), "monomial in L_C"))
    }));
    out.push(run("5d", "reduced GB of I_C is pure-difference", BUDGET_PROPERTY, || {
        property(any, |c| ensure(ideal_of::<Q>(c).groebner_is_pure_difference(), "non-binomial GB element"))
    }));
    out.push(run("5e", "L_C by saturation = L_C by elimination", BUDGET_PROPERTY, || {
        property(
            |c| c.vertices().len() <= ELIMINATION_MAX_VERTICES,
            |c| {
                let sat: Ideal<Q> = lattice_ideal(c);
                let elim = lattice_ideal_by_elimination::<Q>(c).map_err(|e| e.to_string())?;
                ensure(sat.equals(&elim).expect("same ring"), "saturation and elimination differ")
            },
        )
    }));
    out.push(run("5f", "zig-zag walk ⇔ no L-configuration and no 3-step ladder", BUDGET_PROPERTY, || {
        let stream = generate_closed_paths(PROPERTY_SEED, DETECTOR_MAX_CELLS);
        ensure(stream.len() as u64 >= PROPERTY_CASES, format!("only {} paths", stream.len()))?;
        let bad = stream.iter().filter(|l| !l.detectors_agree()).count();
        ensure(bad == 0, format!("{bad} paths where the detectors disagree"))?;
        let non_prime = stream.iter().filter(|l| l.non_prime).count();
        Ok(format!("{} closed paths with ≤ {DETECTOR_MAX_CELLS} cells, {non_prime} non-prime", stream.len()))
    }));
    out.push(run("5g", "√I_C = ⋂ J_X", BUDGET_PROPERTY, || {
        property(
            |c| c.vertices().len() <= DECOMPOSITION_MAX_VERTICES,
            |c| {
                let r = radical_decomposition::<Q>(c, DECOMPOSITION_MAX_VERTICES).map_err(|e| e.to_string())?;
                ensure(r.components_contain_base, "a component misses I_C")?;
                if ideal_of::<Q>(c).has_squarefree_initial() {
                    ensure(r.equals_base, "squarefree initial ideal but ⋂ J_X ≠ I_C")?;
                }
                Ok(())
            },
        )
    }));
    out
}

fn diamond_dimensions() -> Verdict {
    let dims = [(fixtures::diamond_corner(), 10usize), (fixtures::diamond_disjoint(), 11)];
    let mut got = Vec::new();
    for (p, want) in dims {
        let d = ideal_of::<Q>(p.collection()).dimension().map_err(|e| e.to_string())?;
        ensure(d == want, format!("dim {d}, expected {want}"))?;
        got.push(d);
    }
    Ok(format!("dims {got:?} from the reconstructed fixtures"))
}

fn main() -> ExitCode {
    println!("acceptance suite (parallel feature: {})", polyo::par::is_parallel());
    let mut lines = vec![
        run("1", "fixture D golden decomposition", BUDGET_DISCUSSION, discussion),
        run("2", "polyocollection examples and inner intervals", BUDGET_EXAMPLES, examples),
        run("3", "26-cell switchback closed path", BUDGET_SWITCHBACK, switchback26),
        run("4", "closed-path theorem sweep, |P| ≤ 14, ≥ 20 instances", BUDGET_SWEEP, || {
            sweep(SWEEP_MAX_CELLS, SWEEP_MIN_INSTANCES)
        }),
        run("4s", "supplementary sweep, |P| ≤ 26 (not a substitute for 4)", BUDGET_SWEEP, || {
            sweep(SUPPLEMENTARY_MAX_CELLS, SWEEP_MIN_INSTANCES)
        }),
    ];
    lines.extend(properties());
    lines.push(run("6", "diamond ring with corner or disjoint cell: dimensions 10 and 11", BUDGET_PROPERTY, diamond_dimensions));
    let failed: Vec<&str> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    println!("{} of {} criteria pass", lines.len() - failed.len(), lines.len());
    for l in lines.iter().filter(|l| !l.passed) {
        println!("failed {} ({}): {}", l.id, l.name, l.detail);
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
