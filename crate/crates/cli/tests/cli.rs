use serde_json::Value;

use lie_tame::construct::{build_named, Recipe};
use lie_tame_cli::document::{emit_algebra, parse_algebra};
use lie_tame_cli::{run, EXIT_INPUT, EXIT_OK};

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lie-tame").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn invoke_json(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.push("--json");
    let (code, out, _) = invoke(&full);
    (code, serde_json::from_str(&out).expect("single JSON object"))
}

const CORPUS: &[&str] = &[
    "sl(2)",
    "sl(3)",
    "direct_sum(sl(2), sl(2))",
    "abelian(1)",
    "direct_sum(sl(2), abelian(1))",
    "direct_sum(sl(3), abelian(1))",
    "semidirect(sl(2), (1))",
    "direct_sum(sl(3), semidirect(sl(2), (1)))",
    "twodim_nonabelian",
    "abelian(2)",
    "heisenberg",
    "semidirect(sl(2), (2))",
    "semidirect(sl(2), (0)+(0))",
    "scale_action(sl(2), (1))",
    "heisenberg_semidirect(sl(2), (1))",
];

#[test]
fn classify_sl2_json() {
    let (code, v) = invoke_json(&["classify", "--named", "sl(2)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["result"]["kind"], "tame");
    assert_eq!(v["result"]["class"], 1);
    assert_eq!(v["paper_rule"], "semisimple");
}

#[test]
fn wild_is_success() {
    let (code, v) = invoke_json(&["classify", "--named", "heisenberg"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["kind"], "wild");
    assert_eq!(v["result"]["rule"], "solvable");
    assert_eq!(v["result"]["controlled"], true);
}

#[test]
fn tensor_a1() {
    let (code, v) = invoke_json(&["tensor", "--type", "A1", "--a", "1", "--b", "1"]);
    assert_eq!(code, EXIT_OK);
    let comps = v["result"]["components"].as_array().unwrap();
    let pairs: Vec<(Vec<i64>, u64)> = comps
        .iter()
        .map(|c| {
            (
                serde_json::from_value(c["highest_weight"].clone()).unwrap(),
                c["multiplicity"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(pairs, vec![(vec![2], 1), (vec![0], 1)]);
    let (_, text, _) = invoke(&["tensor", "--type", "A2", "--a", "1,0", "--b", "0,1"]);
    assert_eq!(text.trim(), "(1,0) ⊗ (0,1) = (1,1) + (0,0)");
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("malformed.json");
    std::fs::write(&bad, "{ \"name\": ").unwrap();
    let (code, _, err) = invoke(&["classify", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("error"));

    let missing = dir.path().join("absent.json");
    assert_eq!(invoke(&["levi", "--input", missing.to_str().unwrap()]).0, EXIT_INPUT);
    assert_eq!(invoke(&["classify", "--named", "sl(1)"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["classify", "--named", "nonsense"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["tensor", "--type", "A1", "--a", "-1", "--b", "1"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["tensor", "--type", "A9x", "--a", "1", "--b", "1"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["quiver", "--type", "A2", "--module", "(1)"]).0, EXIT_INPUT);

    let (code, _, err) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("Usage"));
    assert_eq!(invoke(&["classify", "--bogus"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["classify"]).0, EXIT_INPUT);
    assert_eq!(invoke(&["--help"]).0, EXIT_OK);
}

#[test]
fn malformed_json_under_json_flag_is_still_one_object() {
    let (code, v) = invoke_json(&["classify", "--named", "sl(0)"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(v["error"].is_string());
}

#[test]
fn non_split_semisimple_is_tame() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("quad.json");
    std::fs::write(&path, emit_algebra("q2", &lie_tame::construct::sl2_quadratic(2))).unwrap();
    let (code, v) = invoke_json(&["classify", "--input", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["class"], 1);
}

#[test]
fn corpus_documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    for text in CORPUS {
        let recipe: Recipe = text.parse().unwrap();
        let l = build_named(&recipe).unwrap();
        let doc = emit_algebra(text, &l);
        assert_eq!(parse_algebra(&doc).unwrap(), l, "{text}");

        let path = dir.path().join("alg.json");
        std::fs::write(&path, &doc).unwrap();
        let (c1, from_file) = invoke_json(&["classify", "--input", path.to_str().unwrap()]);
        let (c2, from_name) = invoke_json(&["classify", "--named", text]);
        assert_eq!(c1, c2);
        assert_eq!(from_file["result"], from_name["result"], "{text}");

        let (_, shown) = invoke_json(&["show", "--named", text]);
        let again: Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(shown["result"], again);
    }
}

#[test]
fn radical_and_levi() {
    let (code, v) = invoke_json(&["radical", "--named", "semidirect(sl(2), (1))"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["dim"], 2);
    let (code, v) = invoke_json(&["levi", "--named", "semidirect(sl(2), (1))"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["result"]["dim"], 3);
    let (_, text, _) = invoke(&["radical", "--named", "sl(2)"]);
    assert!(text.contains("dimension 0"));
}

#[test]
fn quiver_dot_is_stable_and_written() {
    let args = ["quiver", "--type", "A1", "--module", "(1)", "--depth", "10"];
    let (code, first, _) = invoke(&args);
    assert_eq!(code, EXIT_OK);
    let (_, second, _) = invoke(&args);
    assert_eq!(first, second);
    assert!(first.starts_with("digraph K_I {"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.dot");
    let mut with_file = args.to_vec();
    with_file.extend(["--dot", path.to_str().unwrap()]);
    assert_eq!(invoke(&with_file).0, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), first);

    let (_, v) = invoke_json(&args);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 11);
    assert_eq!(v["result"]["arrows"].as_array().unwrap().len(), 20);
    assert_eq!(v["result"]["relations"].as_array().unwrap().len(), 10);
}

#[test]
fn detect_wild_commands() {
    let (code, v) = invoke_json(&["detect-wild", "--type", "A1", "--module", "(2)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["paper_rule"], "big_radical_dim");
    let (_, v) = invoke_json(&["detect-wild", "--type", "A1", "--module", "(2)", "--no-dim-shortcut"]);
    assert_eq!(v["paper_rule"], "large_module");
    let (_, v) = invoke_json(&["detect-wild", "--type", "A1", "--module", "(1)"]);
    assert!(v["result"]["witness"].is_null());
    let (_, v) = invoke_json(&["detect-wild", "--type", "A1", "--module", "(0)+(0)"]);
    assert_eq!(v["paper_rule"], "decomposable_two_dim");
}
