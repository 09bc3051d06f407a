use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use polyo::fixtures;
use polyo::geometry::Polyocollection;
use polyo::ideals::{ideal_of, Ideal, Rational};
use polyo::io::Fixture;
use polyo::lattice::is_prime_ideal_of;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn polyo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyo")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--format=json");
    let out = polyo(&full);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

#[test]
fn prime_on_d_is_non_prime_of_height_5() {
    let r = json(&["prime", &path("d")]);
    assert_eq!(r["verdict"], "non-prime");
    assert_eq!(r["height"], 5);
    assert_eq!(r["dimension"], 9);
    assert_eq!(r["lattice_extra"].as_array().unwrap().len(), 1);
}

#[test]
fn validate_c3_reports_both_witness_pairs() {
    let r = json(&["validate", &path("c3")]);
    assert_eq!(r["verdict"], "invalid");
    let pairs: Vec<(Value, Value)> =
        r["violations"].as_array().unwrap().iter().map(|v| (v["first"].clone(), v["second"].clone())).collect();
    let iv = |a: [i64; 2], b: [i64; 2]| serde_json::json!({ "ll": a, "ur": b });
    assert_eq!(
        pairs,
        vec![(iv([2, 1], [4, 3]), iv([4, 1], [5, 2])), (iv([2, 1], [4, 3]), iv([4, 2], [5, 3]))]
    );
}

#[test]
fn decompose_unit_cell_has_one_component() {
    let r = json(&["decompose", &path("unit_cell")]);
    assert_eq!(r["components"].as_array().unwrap().len(), 1);
    assert_eq!(r["equals_base"], true);
    assert_eq!(r["verdict"], "equals I_C");
}

#[test]
fn decompose_d_finds_two_primes() {
    let r = json(&["decompose", &path("d")]);
    let comps = r["components"].as_array().unwrap();
    assert_eq!(comps.len(), 2);
    assert!(comps.iter().all(|c| c["height"] == 5));
    assert_eq!(r["unmixed"], true);
}

#[test]
fn closed_path_verify_passes_on_octagon() {
    let r = json(&["closed-path-verify", &path("octagon16"), "--junction=all"]);
    assert_eq!(r["verdict"], "pass");
    assert!(r["junction_kernels"].as_array().unwrap().iter().all(|k| k["equals_p1"] == true));
}

#[test]
fn zigzag_on_ring_finds_none() {
    let r = json(&["zigzag", &path("ring8")]);
    assert_eq!(r["walks"].as_array().unwrap().len(), 0);
    assert_eq!(r["closed_path"], true);
}

#[test]
fn lattice_reports_unimodular_matrix() {
    let r = json(&["lattice", &path("d")]);
    let det = r["determinant"].as_str().unwrap();
    assert!(det == "1" || det == "-1", "{det}");
}

#[test]
fn gb_agrees_with_library() {
    let r = json(&["gb", &path("d")]);
    let i: Ideal<Rational> = ideal_of(&fixtures::d());
    let want: Vec<String> = i.groebner().iter().map(|g| g.to_string()).collect();
    let got: Vec<String> =
        r["groebner_basis"].as_array().unwrap().iter().map(|g| g.as_str().unwrap().to_string()).collect();
    assert_eq!(got, want);
    assert_eq!(r["pure_difference"], true);
}

#[test]
fn prime_verdicts_agree_with_library() {
    let cases: Vec<(&str, Polyocollection)> = vec![
        ("c1", fixtures::c1()),
        ("c2", fixtures::c2()),
        ("c4", fixtures::c4()),
        ("d", fixtures::d()),
        ("unit_cell", fixtures::unit_cell()),
        ("square2x2", fixtures::square2x2().collection().clone()),
        ("ring8", fixtures::ring8().collection().clone()),
    ];
    for (name, c) in cases {
        let r = json(&["prime", &path(name)]);
        let want = if is_prime_ideal_of::<Rational>(&c) { "prime" } else { "non-prime" };
        assert_eq!(r["verdict"], want, "{name}");
    }
}

#[test]
fn prime_field_mode_matches_rational_verdict() {
    let r = json(&["prime", &path("d"), "--field=prime32003"]);
    assert_eq!(r["verdict"], "non-prime");
    assert_eq!(r["height"], 5);
}

#[test]
fn lex_order_changes_nothing_about_the_ideal() {
    let r = json(&["gb", &path("c1"), "--order=lex"]);
    assert_eq!(r["order"], "lex");
    assert_eq!(r["pure_difference"], true);
}

#[test]
fn output_is_deterministic() {
    let a = polyo(&["decompose", &path("d"), "--format=json"]);
    let b = polyo(&["decompose", &path("d"), "--format=json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn malformed_json_is_status_1_with_position() {
    let dir = std::env::temp_dir().join(format!("polyo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"type\": \"cells\", \"cells\": [[0,0],\n [1,}").unwrap();
    let out = polyo(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn unknown_verb_and_flag_are_rejected() {
    assert_eq!(polyo(&["factor", &path("d")]).status.code(), Some(1));
    assert_eq!(polyo(&["prime", &path("d"), "--fast"]).status.code(), Some(1));
    assert_eq!(polyo(&["prime", &path("d"), "--order=grlex"]).status.code(), Some(1));
}

#[test]
fn cap_refusal_is_status_2() {
    let out = polyo(&["decompose", &path("d"), "--cap-vertices=8"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap"));
}

#[test]
fn wrong_fixture_kind_is_status_1() {
    assert_eq!(polyo(&["zigzag", &path("d")]).status.code(), Some(1));
    assert_eq!(polyo(&["prime", &path("c3")]).status.code(), Some(1));
}

#[test]
fn corpus_round_trips_and_matches_library() {
    let expected: Vec<(&str, Fixture)> = vec![
        ("c1", Fixture::Polyocollection { intervals: fixtures::c1_intervals() }),
        ("c2", Fixture::Polyocollection { intervals: fixtures::c2_intervals() }),
        ("c3", Fixture::Polyocollection { intervals: fixtures::c3_intervals() }),
        ("c4", Fixture::Polyocollection { intervals: fixtures::c4_intervals() }),
        ("d", Fixture::Polyocollection { intervals: fixtures::d_intervals() }),
        ("unit_cell", Fixture::from_collection(&fixtures::unit_cell())),
        ("square2x2", Fixture::from_cells(&fixtures::square2x2())),
        ("ring8", Fixture::from_cells(&fixtures::ring8())),
        ("diamond_stacked", Fixture::from_cells(&fixtures::diamond_stacked())),
        ("diamond_corner", Fixture::from_cells(&fixtures::diamond_corner())),
        ("diamond_disjoint", Fixture::from_cells(&fixtures::diamond_disjoint())),
        ("switchback26", Fixture::from_cells(&fixtures::switchback26())),
        ("octagon16", Fixture::from_cells(&fixtures::octagon16())),
    ];
    for (name, want) in expected {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let parsed = Fixture::parse(&text).unwrap();
        assert_eq!(parsed.canonical(), want.canonical(), "{name}");
        assert_eq!(parsed.to_json() + "\n", text, "{name}");
        assert_eq!(Fixture::parse(&parsed.to_json()).unwrap(), parsed, "{name}");
    }
}
