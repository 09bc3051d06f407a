//! `polyo <verb> <fixture.json>`: batch front end over the polyo library.
//!
//! Exit status: 0 on success (an "invalid" or "non-prime" verdict is a
//! success), 1 on input errors, 2 when a cap refuses the computation.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use polyo::decomposition::{
    binomial_height_bound, radical_decomposition, verify_main_theorem, zigzag_binomial, VerifyOptions, ADMISSIBLE_CAP,
};
use polyo::geometry::{enumerate_zigzag_walks, CellComplex, Polyocollection, Validation, WalkOptions};
use polyo::ideals::{ideal_of, vertex_ring, Field, Fp, Ideal, MonomialOrder, Polynomial, Rational};
use polyo::io::Fixture;
use polyo::lattice::{lattice_ideal, JunctionChoice, LatticeModel};
use polyo::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Verb {
    Validate,
    Inner,
    Ideal,
    Gb,
    Prime,
    Zigzag,
    Decompose,
    ClosedPathVerify,
    Height,
    Lattice,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Order {
    Degrevlex,
    Lex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Junction {
    Min,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FieldMode {
    Rational,
    Prime32003,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "polyo", version, about = "Binomial ideals of polyocollections and closed paths")]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Fixture file (`-` for standard input).
    input: PathBuf,
    #[arg(long, value_enum, default_value = "degrevlex")]
    order: Order,
    /// Vertex cap for admissible sets (default 24) and walk search (default 40).
    #[arg(long)]
    cap_vertices: Option<usize>,
    #[arg(long, default_value_t = WalkOptions::default().cap_walks)]
    cap_walks: usize,
    #[arg(long, value_enum, default_value = "min")]
    junction: Junction,
    #[arg(long, value_enum, default_value = "rational")]
    field: FieldMode,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// A finished report in both renderings.
struct Report {
    json: Value,
    text: String,
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            e => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn main() -> ExitCode {
    // usage errors are input errors; status 2 is reserved for cap refusals
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = read_fixture(&cli).and_then(|f| match cli.field {
        FieldMode::Rational => run::<Rational>(&cli, &f),
        FieldMode::Prime32003 => run::<Fp>(&cli, &f),
    });
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report.json).expect("plain data")),
                Format::Text => print!("{}", report.text),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_fixture(cli: &Cli) -> std::result::Result<Fixture, Failure> {
    let text = if cli.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Input(format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(&cli.input).map_err(|e| Failure::Input(format!("{}: {e}", cli.input.display())))?
    };
    Fixture::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", cli.input.display())))
}

fn collection(f: &Fixture) -> std::result::Result<Polyocollection, Failure> {
    match f.validate()? {
        Validation::Valid(c) => Ok(c),
        Validation::Invalid(v) => {
            Err(Failure::Input(format!("not a polyocollection ({} violating pairs; run `validate`)", v.len())))
        }
    }
}

fn cells(f: &Fixture) -> std::result::Result<CellComplex, Failure> {
    f.cell_complex().ok_or_else(|| Failure::Input("this verb needs a cells fixture".into()))
}

fn walk_options(cli: &Cli) -> WalkOptions {
    let d = WalkOptions::default();
    WalkOptions { cap_vertices: cli.cap_vertices.unwrap_or(d.cap_vertices), cap_walks: cli.cap_walks }
}

fn lines<T: ToString>(items: &[T]) -> String {
    items.iter().map(|i| format!("  {}\n", i.to_string())).collect()
}

fn texts<K: Field>(gens: &[Polynomial<K>]) -> Vec<String> {
    gens.iter().map(|g| g.to_string()).collect()
}

fn run<K: Field>(cli: &Cli, f: &Fixture) -> Outcome {
    match cli.verb {
        Verb::Validate => validate(f),
        Verb::Inner => {
            let c = collection(f)?;
            let inner = c.inner_intervals();
            let text = format!("{} inner intervals\n{}", inner.len(), lines(inner));
            Ok(Report { json: json!({ "count": inner.len(), "inner_intervals": inner }), text })
        }
        Verb::Ideal => {
            let c = collection(f)?;
            let i: Ideal<K> = ideal_of(&c);
            let vars: Vec<String> = i.ring().table().vars().iter().map(|v| v.to_string()).collect();
            let gens = texts(i.generators());
            let text = format!("{} variables, {} generators\n{}", vars.len(), gens.len(), lines(&gens));
            Ok(Report { json: json!({ "variables": vars, "generators": gens }), text })
        }
        Verb::Gb => {
            let c = collection(f)?;
            let mut i: Ideal<K> = ideal_of(&c);
            if cli.order == Order::Lex {
                i = i.with_order(MonomialOrder::Lex);
            }
            let gb = texts(i.groebner());
            let json = json!({
                "order": format!("{:?}", cli.order).to_lowercase(),
                "groebner_basis": gb,
                "pure_difference": i.groebner_is_pure_difference(),
                "squarefree_initial": i.has_squarefree_initial(),
            });
            let text = format!(
                "reduced Groebner basis ({} elements, pure-difference {}, squarefree initial {})\n{}",
                gb.len(),
                i.groebner_is_pure_difference(),
                i.has_squarefree_initial(),
                lines(&gb)
            );
            Ok(Report { json, text })
        }
        Verb::Prime => {
            let c = collection(f)?;
            let i: Ideal<K> = ideal_of(&c);
            let l: Ideal<K> = lattice_ideal(&c);
            let prime = i.equals(&l)?;
            let extra: Vec<String> = l
                .groebner()
                .iter()
                .filter(|g| !i.contains(g).expect("same ring"))
                .map(|g| g.to_string())
                .collect();
            let verdict = if prime { "prime" } else { "non-prime" };
            let (height, dim) = (i.height()?, i.dimension()?);
            let json = json!({ "verdict": verdict, "height": height, "dimension": dim, "lattice_extra": extra });
            let mut text = format!("{verdict}\nheight {height}\ndimension {dim}\n");
            if !extra.is_empty() {
                let _ = write!(text, "lattice ideal generators outside I_C:\n{}", lines(&extra));
            }
            Ok(Report { json, text })
        }
        Verb::Zigzag => {
            let p = cells(f)?;
            let walks = enumerate_zigzag_walks(&p, &walk_options(cli))?;
            let ring = vertex_ring(p.collection());
            let mut items = Vec::new();
            let mut text = format!("{} zig-zag walks\n", walks.len());
            for w in &walks {
                let f: Polynomial<K> = zigzag_binomial(w, &ring)?;
                let corners: Vec<Value> =
                    w.corner_list().iter().map(|[v, z, u]| json!({ "v": v, "z": z, "u": u })).collect();
                let necklace: Vec<_> = w.necklace(&p).into_iter().collect();
                let _ = writeln!(text, "  l = {}: {}", w.len(), f);
                items.push(json!({
                    "length": w.len(),
                    "intervals": w.intervals(),
                    "corners": corners,
                    "binomial": f.to_string(),
                    "necklace": necklace,
                }));
            }
            let json = json!({
                "closed_path": p.closed_path().is_ok(),
                "l_configurations": p.l_configurations().len(),
                "ladder_3": p.has_ladder(3),
                "walks": items,
            });
            Ok(Report { json, text })
        }
        Verb::Decompose => {
            let c = collection(f)?;
            let r = radical_decomposition::<K>(&c, cli.cap_vertices.unwrap_or(ADMISSIBLE_CAP))?;
            let verdict = if r.equals_base { "equals I_C" } else { "strictly contains I_C" };
            let mut text = format!(
                "{} admissible sets, {} distinct J_X, {} minimal\nintersection {verdict}\nunmixed {}\n",
                r.admissible_sets,
                r.distinct_j_ideals,
                r.components.len(),
                r.unmixed
            );
            for (k, comp) in r.components.iter().enumerate() {
                let _ = write!(text, "component {} (height {})\n{}", k + 1, comp.height, lines(&comp.generators));
            }
            let mut json = serde_json::to_value(&r).expect("plain data");
            json["verdict"] = json!(verdict);
            Ok(Report { json, text })
        }
        Verb::ClosedPathVerify => {
            let p = cells(f)?;
            let junction = match cli.junction {
                Junction::Min => JunctionChoice::Min,
                Junction::All => JunctionChoice::All,
            };
            let opts = VerifyOptions { walks: walk_options(cli), junction: Some(junction) };
            let r = verify_main_theorem::<K>(&p, &opts)?;
            let verdict = if r.passed() { "pass" } else { "fail" };
            let mut text = format!("{verdict}: |P| = {}, {} walks\n", r.cells, r.walks);
            for c in &r.checks {
                let _ = writeln!(text, "  [{}] {} ({})", if c.passed { "ok" } else { "FAILED" }, c.name, c.detail);
            }
            for k in &r.junction_kernels {
                let _ = writeln!(text, "  junction m = {}, Y = {}: kernel equals p1 {}", k.m, k.y_cell, k.equals_p1);
            }
            let mut json = serde_json::to_value(&r).expect("plain data");
            json["verdict"] = json!(verdict);
            Ok(Report { json, text })
        }
        Verb::Height => {
            let c = collection(f)?;
            let i: Ideal<K> = ideal_of(&c);
            let (h, d, b) = (i.height()?, i.dimension()?, binomial_height_bound(&i)?);
            let n = i.ring().nvars();
            let json = json!({ "variables": n, "height": h, "dimension": d, "binomial_height_bound": b });
            let text = format!("variables {n}\nheight {h}\ndimension {d}\nbinomial height bound {b}\n");
            Ok(Report { json, text })
        }
        Verb::Lattice => {
            let c = collection(f)?;
            let m = LatticeModel::new(&c)?;
            let l: Ideal<K> = lattice_ideal(&c);
            let gens = texts(l.groebner());
            let json = json!({
                "determinant": m.determinant.to_string(),
                "free_vertices": m.free,
                "matrix_csv": m.to_csv(),
                "lattice_ideal": gens,
            });
            let text = format!(
                "determinant {}\nfree vertices {}\n{}lattice ideal ({} generators)\n{}",
                m.determinant,
                m.free.len(),
                m.to_csv(),
                gens.len(),
                lines(&gens)
            );
            Ok(Report { json, text })
        }
    }
}

fn validate(f: &Fixture) -> Outcome {
    let mut json = json!({});
    let mut text = String::new();
    match f.validate()? {
        Validation::Valid(c) => {
            json["verdict"] = json!("valid");
            json["members"] = json!(c.members());
            json["vertices"] = json!(c.vertices().len());
            let _ = writeln!(text, "valid: {} members, {} vertices", c.len(), c.vertices().len());
        }
        Validation::Invalid(v) => {
            json["verdict"] = json!("invalid");
            json["violations"] = json!(v);
            let _ = writeln!(text, "invalid");
            for x in &v {
                let _ = writeln!(text, "  {} and {}: {:?}", x.first, x.second, x.clause);
            }
        }
    }
    if let Some(p) = f.cell_complex() {
        let holes: Vec<Vec<_>> = p.holes().into_iter().map(|h| h.into_iter().collect()).collect();
        json["simple"] = json!(holes.is_empty());
        json["holes"] = json!(holes);
        let _ = writeln!(text, "simple {}", holes.is_empty());
        match p.closed_path() {
            Ok(cp) => {
                json["closed_path"] = json!({ "verdict": "closed path", "sequence": cp.cells() });
                let _ = writeln!(text, "closed path of {} cells", cp.len());
            }
            Err(e) => {
                json["closed_path"] = json!({ "verdict": "not a closed path", "reason": e });
                let _ = writeln!(text, "not a closed path: {e}");
            }
        }
    }
    Ok(Report { json, text })
}
