use std::path::{Path, PathBuf};
use std::process::Command;

use proptest::prelude::*;
use qbag::corpus::examples;
use qbag::{build_qbag, random_qbag, RandomGraphConfig, Semantics};
use qbag_cli::{parse_graph, serialize_graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn qbag(args: &[&str]) -> Run {
    qbag_env(args, &[])
}

fn qbag_env(args: &[&str], env: &[(&str, &str)]) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_qbag"));
    cmd.args(args).env_remove("QBAG_EXACT_CAP");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn corpus_file(id: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(format!("{id}.json")).display().to_string()
}

fn temp_graph(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn eval_prints_topological_lines() {
    let r = qbag(&["eval", &corpus_file("fig-intro"), "--semantics", "dfquad"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().any(|l| l == "a 0.500000 0.375000"), "{}", r.stdout);
    assert_eq!(r.stdout.lines().last(), Some("a 0.500000 0.375000"));

    let dir = tempfile::tempdir().unwrap();
    let single = temp_graph(&dir, "one.json", r#"{"arguments":[{"id":"a","initial":0.3}]}"#);
    assert_eq!(qbag(&["eval", &single, "--semantics", "EB"]).stdout, "a 0.300000 0.300000\n");
}

#[test]
fn eval_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let cyclic = temp_graph(
        &dir,
        "cyc.json",
        r#"{"arguments":[{"id":"a","initial":0.5},{"id":"b","initial":0.5}],"attacks":[["a","b"],["b","a"]]}"#,
    );
    let r = qbag(&["eval", &cyclic, "--semantics", "qe"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("CyclicGraph"), "{}", r.stderr);

    let broken = temp_graph(&dir, "broken.json", "{ not json");
    let r = qbag(&["eval", &broken, "--semantics", "qe"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("ParseError"));

    assert_eq!(qbag(&["eval", "/nonexistent.json", "--semantics", "qe"]).code, 2);
    assert_eq!(qbag(&["eval", &corpus_file("fig-intro"), "--semantics", "nope"]).code, 2);
}

#[test]
fn custom_semantics_flags() {
    let f = corpus_file("fig-faith-qe");
    let preset = qbag(&["eval", &f, "--semantics", "qe"]);
    let custom = qbag(&[
        "eval", &f, "--semantics", "custom", "--aggregation", "sum", "--influence", "pmax", "--k", "1", "--p", "2",
    ]);
    assert_eq!(custom.code, 0, "{}", custom.stderr);
    assert_eq!(preset.stdout, custom.stdout);
    assert_eq!(qbag(&["eval", &f, "--semantics", "qe", "--aggregation", "top"]).code, 2);
    assert_eq!(qbag(&["eval", &f, "--semantics", "custom", "--aggregation", "sum"]).code, 2);
    assert_eq!(qbag(&["eval", &f, "--semantics", "custom", "--aggregation", "sum", "--influence", "pmax", "--k", "0"]).code, 2);
}

#[test]
fn contrib_cells_and_columns() {
    let f = corpus_file("table-example");
    let r = qbag(&["contrib", &f, "--semantics", "dfquad", "--method", "shapley", "--topic", "a"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.lines().any(|l| l == "b -0.312500"), "{}", r.stdout);
    assert!(r.stdout.lines().any(|l| l == "c -0.062500"), "{}", r.stdout);
    assert!(r.stdout.lines().any(|l| l == "a undef"), "{}", r.stdout);

    let cell = |m: &str, topic: &str, x: &str| {
        qbag(&["contrib", &f, "--semantics", "dfquad", "--method", m, "--topic", topic, "--contributor", x]).stdout
    };
    assert_eq!(cell("removal", "a", "a"), "undef\n");
    assert_eq!(cell("gradient", "c", "c"), "1.000000\n");

    assert_eq!(qbag(&["contrib", &f, "--semantics", "dfquad", "--method", "nope", "--topic", "a"]).code, 2);
    assert_eq!(qbag(&["contrib", &f, "--semantics", "dfquad", "--method", "removal", "--topic", "zz"]).code, 2);
}

#[test]
fn contrib_too_large_suggests_sampling() {
    let dir = tempfile::tempdir().unwrap();
    let n = 24;
    let args: Vec<String> = (0..n).map(|i| format!("{{\"id\":\"x{i}\",\"initial\":0.5}}")).collect();
    let sup: Vec<String> = (1..n).map(|i| format!("[\"x{i}\",\"x0\"]")).collect();
    let text = format!("{{\"arguments\":[{}],\"supports\":[{}]}}", args.join(","), sup.join(","));
    let f = temp_graph(&dir, "big.json", &text);
    let r = qbag(&["contrib", &f, "--semantics", "qe", "--method", "shapley", "--topic", "x0"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("TooLarge") && r.stderr.contains("shapley-sampled"), "{}", r.stderr);

    let r = qbag(&["contrib", &f, "--semantics", "qe", "--method", "shapley-sampled", "--permutations", "50", "--topic", "x0", "--contributor", "x1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let raised = qbag_env(
        &["contrib", &f, "--semantics", "qe", "--method", "shapley", "--topic", "x0", "--contributor", "x1"],
        &[("QBAG_EXACT_CAP", "24")],
    );
    assert_eq!(raised.code, 0, "{}", raised.stderr);
}

#[test]
fn sweep_csv() {
    let f = corpus_file("fig-intro");
    let r = qbag(&["sweep", &f, "--semantics", "dfquad", "--topic", "a", "--vary", "e", "--steps", "11"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(!r.stdout.contains('\r'));
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[0], "epsilon,final_strength");
    assert_eq!(lines[1], "0.000000,0.500000");
    assert_eq!(lines[6], "0.500000,0.375000");
    assert_eq!(lines[11], "1.000000,0.500000");
    assert_eq!(qbag(&["sweep", &f, "--semantics", "dfquad", "--topic", "a", "--vary", "e", "--steps", "1"]).code, 2);
    assert_eq!(qbag(&["sweep", &f, "--semantics", "dfquad", "--topic", "a", "--vary", "q"]).code, 2);
}

#[test]
fn check_exit_codes() {
    let r = qbag(&[
        "check", &corpus_file("fig-ce-negative"), "--semantics", "dfquad", "--method", "removal",
        "--principle", "contribution-existence", "--topic", "a",
    ]);
    assert_eq!(r.code, 1, "{}", r.stderr);
    assert!(r.stdout.contains("VIOLATION"));

    let f = corpus_file("table-example");
    let base = ["check", f.as_str(), "--semantics", "dfquad", "--method", "removal", "--topic", "a"];
    assert_eq!(qbag(&[&base[..], &["--principle", "nope"]].concat()).code, 2);
    assert_eq!(qbag(&[&base[..], &["--principle", "proximity", "--eps-schedule", "0.1,0.2"]].concat()).code, 2);
    let r = qbag(&[&base[..], &["--principle", "local-faithfulness", "--eps-schedule", "0.1,0.01", "--zero-tol", "1e-12"]].concat());
    assert!(r.stdout.contains("eps_schedule=[0.1, 0.01]"), "{}", r.stdout);
}

#[test]
fn removal_quantitative_counterfactuality_holds_on_every_corpus_file() {
    for ex in examples().iter().filter(|e| e.graph.len() <= 12) {
        let f = corpus_file(&ex.id);
        for sem in qbag::semantics::PRESETS {
            for topic in ex.graph.names() {
                let r = qbag(&[
                    "check", &f, "--semantics", sem, "--method", "removal", "--principle",
                    "quantitative-counterfactuality", "--topic", topic,
                ]);
                assert_eq!(r.code, 0, "{} {sem} {topic}: {}{}", ex.id, r.stdout, r.stderr);
            }
        }
    }
}

#[test]
fn reproduce_commands() {
    let r = qbag(&["reproduce", "--example", "table-example"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.stdout, "PASS table-example (42 expectations)\n");

    let r = qbag(&["reproduce", "--all"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let n = examples().len();
    assert_eq!(r.stdout.lines().filter(|l| l.starts_with("PASS ")).count(), n);
    assert!(r.stdout.ends_with(&format!("{n} of {n} examples passed\n")));

    assert_eq!(qbag(&["reproduce", "--example", "nope"]).code, 2);
    assert_eq!(qbag(&["reproduce"]).code, 2);
}

#[test]
fn fuzz_finds_nothing_on_a_satisfied_cell() {
    let r = qbag(&[
        "fuzz", "--semantics", "qe", "--method", "shapley", "--principle", "quantitative-contribution-existence",
        "--seed", "1", "--trials", "10000", "--max-args", "7",
    ]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.starts_with("no violation"));
}

#[test]
fn fuzz_witness_replays_through_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.json");
    let args = [
        "fuzz", "--semantics", "qe", "--method", "removal", "--principle", "local-faithfulness", "--seed", "3",
        "--trials", "5000", "--witness-out", out.to_str().unwrap(),
    ];
    let r = qbag(&args);
    assert_eq!(r.code, 1, "{}{}", r.stdout, r.stderr);
    let cmd = r.stdout.lines().last().unwrap().trim();
    assert!(cmd.starts_with("qbag check "), "{cmd}");
    let replay: Vec<&str> = cmd.split_whitespace().skip(1).collect();
    let again = qbag(&replay);
    assert_eq!(again.code, 1, "{}", again.stdout);
    let printed = r.stdout.split("witness graph:\n").nth(1).unwrap().split("reproduce with:").next().unwrap();
    assert_eq!(printed, std::fs::read_to_string(&out).unwrap());
}

#[test]
fn fuzz_output_is_deterministic() {
    let args = [
        "fuzz", "--semantics", "dfquad", "--method", "gradient", "--principle", "counterfactuality", "--seed", "99",
        "--trials", "3000",
    ];
    let a = qbag(&args);
    let b = qbag_env(&args, &[("RAYON_NUM_THREADS", "1")]);
    let c = qbag_env(&args, &[("RAYON_NUM_THREADS", "3")]);
    assert_eq!(a.code, 1);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let quiet = ["fuzz", "--semantics", "eb", "--method", "removal", "--principle", "directionality", "--trials", "500"];
    assert_eq!(qbag(&quiet).stdout, qbag_env(&quiet, &[("RAYON_NUM_THREADS", "1")]).stdout);
}

#[test]
fn fuzz_rejects_bad_flags() {
    let base = ["fuzz", "--semantics", "qe", "--method", "removal", "--principle", "proximity"];
    for extra in [&["--trials", "0"][..], &["--max-args", "1"], &["--edge-prob", "1.5"], &["--strength-grid", "0"], &["--seed", "-1"]] {
        assert_eq!(qbag(&[&base[..], extra].concat()).code, 2, "{extra:?}");
    }
}

#[test]
fn support_only_fuzz_runs() {
    let r = qbag(&[
        "fuzz", "--semantics", "qe", "--method", "shapley", "--principle", "proximity", "--support-only", "--trials", "300",
    ]);
    assert!(r.code == 0 || r.code == 1, "{}", r.stderr);
    if r.code == 1 {
        assert!(!r.stdout.contains("\"attacks\": [\n"), "{}", r.stdout);
    }
}

#[test]
fn exported_corpus_matches_library_and_committed_copy() {
    let dir = tempfile::tempdir().unwrap();
    let r = qbag(&["export-corpus", dir.path().to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let committed = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    let index: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("index.json")).unwrap()).unwrap();
    assert_eq!(index.as_array().unwrap().len(), examples().len());
    for ex in examples() {
        for name in [format!("{}.json", ex.id), format!("{}.expectations.json", ex.id)] {
            let fresh = std::fs::read_to_string(dir.path().join(&name)).unwrap();
            let old = std::fs::read_to_string(committed.join(&name)).unwrap_or_default();
            assert_eq!(fresh, old, "corpus/{name} is stale; rerun `qbag export-corpus corpus`");
        }
        let g = parse_graph(&std::fs::read_to_string(dir.path().join(format!("{}.json", ex.id))).unwrap()).unwrap();
        assert!(g.same_structure(&ex.graph), "{}", ex.id);
    }
}

#[test]
fn corpus_graphs_round_trip() {
    for ex in examples() {
        assert!(parse_graph(&serialize_graph(&ex.graph)).unwrap().same_structure(&ex.graph), "{}", ex.id);
    }
}

#[test]
fn generated_graphs_round_trip() {
    let cfg = RandomGraphConfig::default();
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_qbag(&mut rng, 2 + (seed % 11) as usize, &cfg);
        assert!(parse_graph(&serialize_graph(&g)).unwrap().same_structure(&g));
    }
}

fn arbitrary_graph() -> impl Strategy<Value = qbag::Qbag> {
    (2usize..10)
        .prop_flat_map(|n| {
            (
                proptest::collection::vec(0.0f64..=1.0, n),
                proptest::collection::vec(0u8..3, n * (n - 1) / 2),
                Just(n),
            )
        })
        .prop_map(|(tau, kinds, n)| {
            let names: Vec<String> = (0..n).map(|i| format!("arg_{i}")).collect();
            let args: Vec<(&str, f64)> = names.iter().map(String::as_str).zip(tau).collect();
            let (mut att, mut sup) = (Vec::new(), Vec::new());
            let mut k = kinds.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    match k.next().unwrap() {
                        1 => att.push((names[i].as_str(), names[j].as_str())),
                        2 => sup.push((names[i].as_str(), names[j].as_str())),
                        _ => {}
                    }
                }
            }
            build_qbag(&args, &att, &sup).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn arbitrary_strengths_round_trip(g in arbitrary_graph()) {
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        prop_assert!(back.same_structure(&g));
        for sem in Semantics::presets() {
            let (x, y) = (qbag::evaluate(&back, &sem).unwrap(), qbag::evaluate(&g, &sem).unwrap());
            prop_assert_eq!(x.values(), y.values());
        }
    }
}
