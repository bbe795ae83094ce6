use std::process::{Command, Output};

fn ratdyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ratdyn")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn structured(args: &[&str]) -> (serde_json::Value, i32) {
    let mut all = vec!["--format", "structured"];
    all.extend_from_slice(args);
    let o = ratdyn(&all);
    (serde_json::from_slice(&o.stdout).expect("json on stdout"), o.status.code().unwrap())
}

#[test]
fn search_invariant_example() {
    let o = ratdyn(&["search", "invariant", "(z+1)^2", "(z+1)^2", "1", "2", "--cap", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("-y^2 + x - 2*y - 1"), "{}", out);
    assert!(out.contains("1 curve(s)"), "{}", out);

    let (j, code) = structured(&["search", "invariant", "(z+1)^2", "(z+1)^2", "1", "2", "--cap", "2"]);
    assert_eq!(code, 0);
    let curves = j["curves"].as_array().unwrap();
    assert_eq!(curves.len(), 1);
    assert_eq!(curves[0]["curve"]["bidegree"], serde_json::json!([1, 2]));
    for c in curves[0]["checks"].as_array().unwrap() {
        assert_eq!(c["holds"], true);
    }
}

#[test]
fn genus_and_classify_examples() {
    let o = ratdyn(&["curve", "genus", "z^3-z", "z^2"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = ratdyn(&["classify", "z^2-1"]);
    assert!(stdout(&o).starts_with("NonSpecialNonGL"));
    let (j, _) = structured(&["classify", "(z^2+1)^2 / (4*z*(z^2-1))"]);
    assert_eq!(j["class"], "Lattes");
    assert_eq!(j["detail"]["orbifold"]["signature"], serde_json::json!([2, 2, 2, 2]));
}

#[test]
fn exit_codes() {
    let o = ratdyn(&["classify", "z^2 +"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("ParseError"));
    let (j, code) = structured(&["curve", "genus", "z^2", "z^2"]);
    assert_eq!(code, 2);
    assert_eq!(j["error"]["kind"], "PreconditionError");
    let (_, code) = structured(&["curve", "orbit", "x - y^2", "z^2 - 1", "z^2 + 1", "1"]);
    assert_eq!(code, 3);
    let o = ratdyn(&["bounds", "m2", "2", "84", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("no\n"));
}

#[test]
fn reads_expressions_from_file() {
    let dir = std::env::temp_dir().join(format!("ratdyn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("maps.txt");
    std::fs::write(&path, "# two maps\nz^3 - z\n\nz^2\n").unwrap();
    let o = ratdyn(&["curve", "genus", "--file", path.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "1");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn orbifold_commands() {
    let o = ratdyn(&["orbifold", "chi", "2", "3", "6"]);
    assert_eq!(stdout(&o).trim(), "0");
    let (j, code) = structured(&["orbifold", "pullback", "z^2", "{0:4, inf:4}"]);
    assert_eq!(code, 0);
    assert_eq!(j["pullback"]["signature"], serde_json::json!([2, 2]));
    let (j, _) = structured(&["orbifold", "pullback", "z^2", "{0:2, inf:2}"]);
    assert_eq!(j["pullback"]["signature"], serde_json::json!([]));
    let (j, _) = structured(&["orbifold", "check", "(z^2+1)^2 / (4*z*(z^2-1))", "--o1", "{-1:2, 0:2, 1:2, inf:2}",
                              "--o2", "{-1:2, 0:2, 1:2, inf:2}"]);
    assert!(j["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true), "{}", j);
}

#[test]
fn decompose_and_semiconj() {
    let (j, code) = structured(&["decompose", "factors", "T6", "2"]);
    assert_eq!(code, 0);
    assert!(!j["decompositions"].as_array().unwrap().is_empty());
    let (j, code) = structured(&["semiconj", "complete", "z^2 o z^3", "z^2", "z^3 o z^2"]);
    assert_eq!(code, 0, "{}", j);
    assert!(j["checks"].as_array().unwrap().iter().all(|c| c["holds"] == true));
    let o = ratdyn(&["decompose", "chain", "z^2", "z^3", "3"]);
    assert!(stdout(&o).contains("periodic from"), "{}", stdout(&o));
}

#[test]
fn analyze_reports_portrait() {
    let (j, code) = structured(&["analyze", "T3"]);
    assert_eq!(code, 0);
    assert_eq!(j["map"]["degree"], 3);
    assert_eq!(j["classification"]["class"], "ChebyshevConjugate");
    assert_eq!(j["critical_portrait"].as_array().unwrap().len(), 3);
}

mod round_trip {
    use proptest::prelude::*;
    use ratdyn::algebra::{Poly, RatMap, Q};
    use ratdyn_cli::parse::parse_map;

    fn coeffs() -> impl Strategy<Value = Vec<Q>> {
        prop::collection::vec((-9i64..=9, 1i64..=5).prop_map(|(a, b)| Q::new(a.into(), b.into())), 1..5)
    }

    proptest! {
        #[test]
        fn printed_maps_parse_back(n in coeffs(), d in coeffs()) {
            if let Ok(f) = RatMap::new(Poly::new(n), Poly::new(d)) {
                prop_assert_eq!(parse_map(&f.to_string()).unwrap(), f);
            }
        }
    }
}
