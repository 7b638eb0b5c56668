use std::path::Path;
use std::process::{Command, Output};

fn lab(args: &[&str], script: &str) -> (Output, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("script.lab");
    std::fs::write(&path, script).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_linkage-lab"))
        .args(
            args.iter()
                .map(|a| a.replace("{file}", path.to_str().unwrap())),
        )
        .env_remove("LINKAGE_LAB_CACHE")
        .output()
        .unwrap();
    (out, dir)
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const NODE: &str = "ring S = poly(QQ, x, y);
ring R = quotient(S, [x*y]);
module M = coker(R, twists=[0], matrix=[[x]]);
";

#[test]
fn exit_0_linked_module() {
    let (o, _d) = lab(
        &["run", "{file}"],
        &format!("{NODE}assert is_horizontally_linked(M);\n"),
    );
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS assert is_horizontally_linked(M)"));
}

#[test]
fn exit_1_failed_assert_keeps_going() {
    let src = "ring S = poly(QQ, x, y);
module k = coker(S, twists=[0], matrix=[[x, y]]);
assert depth(k) == 1;
assert dim(k) == 0;
";
    let (o, _d) = lab(&["run", "{file}"], src);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(
        out.contains("FAIL assert depth(k) == 1 (depth = 0)"),
        "{out}"
    );
    assert!(out.contains("PASS assert dim(k) == 0"), "{out}");

    let (o, _d) = lab(&["run", "{file}", "--fail-fast"], src);
    assert_eq!(code(&o), 1);
    assert!(!stdout(&o).contains("dim(k)"));
}

#[test]
fn exit_2_parse_error() {
    let (o, _d) = lab(
        &["run", "{file}"],
        "ring R = poly(QQ, x);\nmodule M = coker(R, twists=[0], matrix=[[x + 1]]);\n",
    );
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(
        err.contains(":2:42: homogeneity error at \"x + 1\""),
        "{err}"
    );
    assert!(o.stdout.is_empty());

    let (o, _d) = lab(&["run", "/nonexistent/file.lab"], "");
    assert_eq!(code(&o), 2);
    let (o, _d) = lab(&["run", "{file}", "--probe-primes", "some"], NODE);
    assert_eq!(code(&o), 2);
}

#[test]
fn exit_3_budget() {
    let src = "ring S = poly(QQ, x, y, z);
module K = coker(S, twists=[0], matrix=[[x, y, z]]);
print betti(K);
";
    let (o, _d) = lab(&["run", "{file}", "--max-degree", "1"], src);
    assert_eq!(code(&o), 3, "{}", stdout(&o));
    assert!(stdout(&o).contains("budget exceeded"));
    let (o, _d) = lab(&["run", "{file}"], src);
    assert_eq!(code(&o), 0);
}

#[test]
fn exit_4_inapplicable_only_when_strict() {
    let src = format!("{NODE}check COR_SELF(M=M);\n");
    let src = src.replace("matrix=[[x]]", "matrix=[[x, y]]");
    let (o, _d) = lab(&["run", "{file}"], &src);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("Inapplicable"));
    let (o, _d) = lab(&["run", "{file}", "--strict"], &src);
    assert_eq!(code(&o), 4);
}

#[test]
fn refuted_check_exits_1_over_everything_else() {
    // an inapplicable check, a budget failure and a failed assert together
    let src = format!("{NODE}check COR_SELF(M=M);\nassert depth(M) == 0;\n");
    let (o, _d) = lab(&["run", "{file}", "--strict"], &src);
    assert_eq!(code(&o), 1);
}

#[test]
fn check_subcommand_uses_declarations_only() {
    let src = format!("{NODE}assert depth(M) == 7;\nlet L = lambda(M);\n");
    let (o, _d) = lab(&["check", "THM_MS", "{file}", "--bind", "M=L"], &src);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("THM_MS on M=L: Verified"), "{out}");
    assert!(!out.contains("assert"));

    let (o, _d) = lab(&["check", "THM_NOPE", "{file}", "--bind", "M=L"], &src);
    assert_eq!(code(&o), 2);
    let (o, _d) = lab(&["check", "THM_MS", "{file}", "--bind", "M=Q"], &src);
    assert_eq!(code(&o), 2);
}

#[test]
fn json_is_deterministic() {
    let src = format!(
        "{NODE}let L = lambda(M);\nprint depth(M);\nprint betti(L);\nassert iso(L, M);\ncheck THM_MS(M=M);\nsuite [THM_MS PROP_T1] on corpus(R, small);\n"
    );
    let (a, dir) = lab(&["run", "{file}", "--json"], &src);
    let file = dir.path().join("script.lab");
    let b = Command::new(env!("CARGO_BIN_EXE_linkage-lab"))
        .args(["run", file.to_str().unwrap(), "--json"])
        .env_remove("LINKAGE_LAB_CACHE")
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let text = String::from_utf8(a.stdout.clone()).unwrap();
    let at: Vec<usize> = [
        "\"version\"",
        "\"config\"",
        "\"declarations\"",
        "\"results\"",
    ]
    .iter()
    .map(|k| text.find(k).unwrap())
    .collect();
    assert!(at.windows(2).all(|w| w[0] < w[1]), "top-level key order");
    let depth = &v["results"][0];
    assert_eq!(depth["kind"], "invariant");
    assert_eq!(depth["name"], "depth(M)");
    assert_eq!(depth["value"], 1);
    let check = v["results"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["kind"] == "check")
        .unwrap();
    assert_eq!(check["report"]["verdict"]["kind"], "Verified");
    assert_eq!(code(&a), 1, "iso(L, M) is false over the node");
}

#[test]
fn empty_script() {
    let (o, _d) = lab(&["run", "{file}", "--json"], "# nothing here\n");
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["declarations"], serde_json::json!([]));
    assert_eq!(v["results"], serde_json::json!([]));
}

#[test]
fn cache_dir_flag_and_env() {
    let src = format!("{NODE}print betti(M);\nprint ext(M, R, 1);\ncheck THM_MS(M=M);\n");
    let (plain, dir) = lab(&["run", "{file}", "--json"], &src);
    let file = dir.path().join("script.lab");
    let cache = dir.path().join("cache");
    let run = |env: Option<&Path>, flag: Option<&Path>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_linkage-lab"));
        c.args(["run", file.to_str().unwrap(), "--json"])
            .env_remove("LINKAGE_LAB_CACHE");
        if let Some(e) = env {
            c.env("LINKAGE_LAB_CACHE", e);
        }
        if let Some(f) = flag {
            c.arg("--cache-dir").arg(f);
        }
        c.output().unwrap()
    };
    let cold = run(None, Some(&cache));
    let entries = std::fs::read_dir(&cache).unwrap().count();
    assert!(entries > 0);
    let warm = run(Some(&cache), None);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), entries);
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);

    // the flag wins over the environment
    let other = dir.path().join("other");
    run(Some(&cache), Some(&other));
    assert!(other.exists());

    // corrupt every entry: results unchanged, warnings on stderr
    for f in std::fs::read_dir(&cache).unwrap() {
        let p = f.unwrap().path();
        let mut text = std::fs::read_to_string(&p).unwrap();
        text.push('x');
        std::fs::write(&p, text).unwrap();
    }
    let healed = run(None, Some(&cache));
    assert_eq!(plain.stdout, healed.stdout);
    assert!(String::from_utf8(healed.stderr)
        .unwrap()
        .contains("corrupt cache entry"));
}
