use std::sync::Arc;

use linkage_cli::{parse, run, DiskCache, RunConfig};

const SCRIPT: &str = "# every statement form
ring S = poly(QQ, x, y, z);
ring T = poly(GF(32003), a, b);
ring R = quotient(S, [x*y, x*z, y*z]);
module M = coker(R, twists=[0], matrix=[[x]]);
module N = coker(R, twists=[0, 1], matrix=[[y^2, 0], [-1/2*x, z^2]]);
module F = coker(T, twists=[-1], matrix=[]);
let W = canonical(R);
let L = lambda(M);
let E = ext(M, W, 1);
let P = pushforward(M, R);
let Z = syzygy(transpose_wrt(M, W), 2);
assert is_horizontally_linked(M);
assert serre_tilde(L, 1);
assert depth(M) >= 1;
assert rgr(M, W) != 0;
assert gc_dim(M, W) <= 2;
print betti(N);
print hilbert(tensor(M, hom(L, W)));
print R;
check THM_MS(M=M, C=W, n=2, I=[x, y + z]);
check COR_COR6(M=L, c1=[x], c2=[y]);
suite [THM_MS, PROP_T1] on corpus(R, small);
suite [] on corpus(S, full);
";

#[test]
fn pretty_print_round_trips() {
    let a = parse(SCRIPT).unwrap();
    let printed = a.to_string();
    let b = parse(&printed).unwrap();
    assert_eq!(a, b);
    assert_eq!(printed, b.to_string());
    assert_eq!(a.stmts.len(), 23);
    assert!(printed.contains("suite [THM_MS PROP_T1] on corpus(R, small);"));
}

fn small() -> String {
    "ring S = poly(QQ, x, y);
ring R = quotient(S, [x^2]);
module M = coker(R, twists=[0], matrix=[[x, y^2]]);
let L = lambda(M);
print betti(L);
print ext(L, R, 2);
print tor(M, L, 3);
assert is_horizontally_linked(L);
"
    .to_string()
}

#[test]
fn cache_hits_match_recomputation() {
    let script = parse(&small()).unwrap();
    let cfg = RunConfig::default();
    let plain = run(&script, &cfg, None).to_json();

    let dir = tempfile::tempdir().unwrap();
    let cold = Arc::new(DiskCache::open(dir.path()).unwrap());
    let first = run(&script, &cfg, Some(cold.clone())).to_json();
    assert_eq!(cold.hits(), 0);
    assert!(cold.misses() > 0);

    let warm = Arc::new(DiskCache::open(dir.path()).unwrap());
    let second = run(&script, &cfg, Some(warm.clone())).to_json();
    assert!(warm.hits() > 0);
    assert_eq!(plain, first);
    assert_eq!(plain, second);
}

#[test]
fn same_module_declared_differently_shares_entries() {
    let a = parse(
        "ring S = poly(QQ, x, y);
module M = coker(S, twists=[0], matrix=[[x, y]]);
print betti(M);",
    )
    .unwrap();
    // redundant generator e1 = x e0, relations reordered
    let b = parse(
        "ring S = poly(QQ, x, y);
module M = coker(S, twists=[0, 1], matrix=[[y, -x, x], [0, 1, 0]]);
print betti(M);",
    )
    .unwrap();
    let dir = tempfile::tempdir().unwrap();
    let first = Arc::new(DiskCache::open(dir.path()).unwrap());
    run(&a, &RunConfig::default(), Some(first.clone()));
    let n = std::fs::read_dir(dir.path()).unwrap().count();
    let second = Arc::new(DiskCache::open(dir.path()).unwrap());
    run(&b, &RunConfig::default(), Some(second.clone()));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), n);
    assert!(second.hits() > 0);
}
