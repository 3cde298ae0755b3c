//! End-to-end acceptance checks. Runs without the libtest harness so that
//! every criterion prints exactly one PASS/FAIL line, even after a failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::Instant;

use rayon::prelude::*;

use kunum::birgraph::{check_connected, in_s, prime_witness, self_pairing_magnitude, validate_spanning_tree};
use kunum::catalog::lookup;
use kunum::certifier::{certify, certify_all, NodeKind};
use kunum::chern::{euler_pairing, hilbert_character, to_ku_basis, CH_ALPHA, CH_BETA, CH_GAMMA};
use kunum::cubic::{
    chi, fano_fiber_check, in_canonical_sextant, moduli_dim, phase_gap_class, quiver_canonical_degree,
    sextant_index, strata, KuClass, LiftedClass, PhaseGap, ALPHA, BETA, GAMMA,
};
use kunum::euler_forms::{classify_form, exceptional_vectors, n_chi, Family};
use kunum::lattice::{primitive_vectors, LatticeVector};
use kunum::oracles::pick_suite;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kunum(args: &[&str], threads: &str) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_kunum"))
        .args(args)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn euler_table() -> Outcome {
    let named = [("α", CH_ALPHA), ("β", CH_BETA), ("γ", CH_GAMMA)];
    let expected = [[-1, 0, 1], [-1, -1, 0], [0, -1, -1]];
    for (i, (a, ea)) in named.iter().enumerate() {
        for (j, (b, eb)) in named.iter().enumerate() {
            let got = euler_pairing(ea, eb).map_err(|e| e.to_string())?;
            ensure(got == expected[i][j], || format!("χ({a},{b}) = {got}, expected {}", expected[i][j]))?;
        }
    }
    for ((name, ch), cls) in named.iter().zip([ALPHA, BETA, GAMMA]) {
        let back = to_ku_basis(*ch).map_err(|e| e.to_string())?;
        ensure(back == cls, || format!("{name} round-trips to {back}"))?;
    }
    Ok("9 pairings, 3 round-trips".into())
}

const HILBERT_ROWS: [(i64, i64, i64, &str); 16] = [
    (1, 0, 0, "β"),
    (2, 0, 1, "γ"),
    (2, 0, 2, "-β"),
    (3, 0, 1, "β+γ"),
    (3, 1, 2, "0"),
    (4, 0, 1, "2β+γ"),
    (4, 0, 2, "-2α-β"),
    (4, 0, 3, "α-2γ"),
    (4, 1, 2, "-α"),
    (5, 0, 3, "-2β-γ"),
    (5, 1, 2, "-2α"),
    (5, 1, 3, "-2γ"),
    (5, 2, 2, "-γ"),
    (6, 1, 2, "-3α"),
    (6, 1, 3, "-3β"),
    (7, 2, 3, "-α-3β"),
];

fn hilbert_table() -> Outcome {
    let mut bad = Vec::new();
    for (d, g, m, want) in HILBERT_ROWS {
        let (code, out) = kunum(&["hilbert-map", &d.to_string(), &g.to_string(), &m.to_string()], "1");
        let got = String::from_utf8_lossy(&out).trim().to_string();
        if code != 0 || got != want {
            bad.push(format!("({d},{g},{m}) gave {got:?}, table says {want:?}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("16 rows".into())
}

fn pick_oracle() -> Outcome {
    let r = pick_suite(10_000);
    ensure(r.passed(), || format!("{} disagreements: {:?}", r.disagreements, r.examples))?;
    Ok(format!("{} vectors, 0 disagreements", r.checked))
}

fn forms() -> Outcome {
    let mut bad = Vec::new();
    let classify = |i, d| {
        let e = lookup(i, d).expect("catalog entry");
        classify_form(&e.form().expect("form"), &e.serre_isometry().expect("serre"))
    };
    for (i, d) in [(2, 3), (1, 14)] {
        match classify(i, d) {
            Ok(c) if c.family == Family::IPlus && c.n == 1 => {}
            other => bad.push(format!("({i},{d}): {other:?}")),
        }
    }
    for (i, d) in [(2, 2), (1, 10)] {
        match classify(i, d) {
            Ok(c) if matches!(c.family, Family::JPlus | Family::JMinus) && c.n == 1 => {}
            Ok(c) => bad.push(format!("({i},{d}) classified as {} n={}", c.family.symbol(), c.n)),
            Err(e) => bad.push(format!("({i},{d}) is not J with n=1: {e}")),
        }
    }
    match classify(2, 1) {
        Ok(c) if c.family == Family::IMinus && c.n == 1 => {}
        other => bad.push(format!("(2,1): {other:?}")),
    }
    let lv = LatticeVector::new;
    let plus = kunum::CanonicalForm::of_family(Family::IPlus, 1);
    let minus = kunum::CanonicalForm::of_family(Family::IMinus, 1);
    let set = |vs: &[(i64, i64)]| -> BTreeSet<LatticeVector> {
        vs.iter().flat_map(|&(a, b)| [lv(a, b), lv(-a, -b)]).collect()
    };
    let got_plus: BTreeSet<_> = exceptional_vectors(&plus).into_iter().collect();
    if got_plus != set(&[(1, 1)]) {
        bad.push(format!("I+ exceptional set {got_plus:?}"));
    }
    let got_minus: BTreeSet<_> = exceptional_vectors(&minus).into_iter().collect();
    if got_minus != set(&[(1, 1), (-1, 1), (-2, 1), (-1, 2)]) {
        bad.push(format!("I- exceptional set {got_minus:?}"));
    }
    if n_chi(&plus) != 1 || n_chi(&minus) != 3 {
        bad.push(format!("n_chi = {}, {}", n_chi(&plus), n_chi(&minus)));
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("families, exceptional sets and thresholds".into())
}

fn certifier() -> Outcome {
    let entries = [(2, 3), (2, 2), (2, 1), (1, 10), (1, 14), (2, 4), (1, 18), (1, 16), (1, 12)];
    let mut total = 0;
    for (i, d) in entries {
        let e = lookup(i, d).map_err(|e| e.to_string())?;
        let r = certify_all(e, 2500).map_err(|err| format!("({i},{d}): {err}"))?;
        ensure(r.failures.is_empty() && r.verified == r.total, || {
            format!("({i},{d}): {} failures, first {:?}", r.failures.len(), r.failures.first())
        })?;
        let splits_negative = primitive_vectors(2500).par_iter().all(|&v| {
            certify(e, v).is_ok_and(|c| {
                c.nodes.iter().all(|n| match n.kind {
                    NodeKind::Split { chi_cross, .. } => chi_cross < 0,
                    _ => true,
                })
            })
        });
        ensure(splits_negative, || format!("({i},{d}): a split has χ(v₊,v₋) ≥ 0"))?;
        total += r.total;
    }
    Ok(format!("{} entries, {total} certificates", entries.len()))
}

fn cubic_dimensions() -> Outcome {
    let cases = [(BETA, 2), (BETA + GAMMA, 4), (2 * BETA, 5), (2 * ALPHA + BETA, 8)];
    for (v, want) in cases {
        let got = moduli_dim(v).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("dim M({v}) = {got}, expected {want}"))?;
    }
    Ok("4 dimensions".into())
}

fn stratification() -> Outcome {
    for n in 1..=30 {
        for m in 1..=30 {
            let s = strata(KuClass::new(n, m)).map_err(|e| e.to_string())?;
            let dominant: Vec<_> = s.iter().filter(|x| x.dominant).collect();
            ensure(dominant.len() == 1 && dominant[0].codim == 0, || {
                format!("({n},{m}): dominant {dominant:?}")
            })?;
            ensure(dominant[0].v1 == KuClass::new(n, 0) && dominant[0].v2 == KuClass::new(0, m), || {
                format!("({n},{m}): dominant stratum is not (nα, mβ)")
            })?;
            ensure(s.iter().all(|x| x.dominant || x.codim >= 1), || {
                format!("({n},{m}): non-dominant codim < 1")
            })?;
        }
    }
    let mut codims: Vec<i128> =
        strata(KuClass::new(2, 1)).map_err(|e| e.to_string())?.iter().map(|x| x.codim).collect();
    codims.sort();
    ensure(codims == [0, 1], || format!("(2,1) codims {codims:?}"))?;
    Ok("900 classes".into())
}

fn fano_fiber() -> Outcome {
    let vs: Vec<KuClass> = primitive_vectors(10_000)
        .into_iter()
        .map(KuClass::from_vector)
        .filter(|&v| in_canonical_sextant(v) && chi(v, v) < -4)
        .collect();
    for &v in &vs {
        let f = fano_fiber_check(v).map_err(|e| format!("{v}: {e}"))?;
        ensure(f.chi_pm <= -2 && f.chi_pm - f.chi_mp == -1, || format!("{v}: {f:?}"))?;
    }
    for (t, r) in [(1, 2), (0, 2), (5, 3), (3, 7), (10, 10)] {
        let q = quiver_canonical_degree(0, 0, t, r).map_err(|e| e.to_string())?;
        ensure(q.degree == t - r, || format!("quiver degree ({t},{r}) = {}", q.degree))?;
    }
    ensure(quiver_canonical_degree(0, 0, 1, 2).map(|q| q.degree) == Ok(-1), || "(1,2) != -1".into())?;
    Ok(format!("{} classes", vs.len()))
}

fn sign_law() -> Outcome {
    let classes: Vec<KuClass> = (-20..=20)
        .flat_map(|n| (-20..=20).map(move |m| KuClass::new(n, m)))
        .filter(|v| !v.is_zero())
        .collect();
    let checked: Result<usize, String> = classes
        .par_iter()
        .map(|&v| {
            let lv = LiftedClass::principal(v).map_err(|e| e.to_string())?;
            let mut count = 0;
            for &w in &classes {
                let sw = sextant_index(w).map_err(|e| e.to_string())?;
                for offset in -2..=2 {
                    let lw = LiftedClass::new(w, sw + 6 * offset).map_err(|e| e.to_string())?;
                    let gap = phase_gap_class(lv, lw).map_err(|e| e.to_string())?;
                    if !gap.in_open(-3, 3) {
                        continue;
                    }
                    count += 1;
                    let c = chi(v, w);
                    let negative = gap.in_open(-2, 1);
                    let zero = gap == PhaseGap::Exact(-2) || gap == PhaseGap::Exact(1);
                    if (c < 0) != negative || (c == 0) != zero {
                        return Err(format!("v={v} w={w} branch {}: χ={c}, gap {gap}", lw.branch));
                    }
                }
            }
            Ok(count)
        })
        .sum();
    Ok(format!("{} lifted pairs", checked?))
}

fn birationality() -> Outcome {
    let c = check_connected(200).map_err(|e| e.to_string())?;
    ensure(c.connected, || "graph at 200 is disconnected".into())?;
    validate_spanning_tree(200, &c.spanning_tree)?;
    for m in (6..=500).filter(|&m| m != 8) {
        prime_witness(m).map_err(|e| format!("m = {m}: {e}"))?;
    }
    for s in 3..=200 {
        for b in 1..s {
            let a = s - b;
            let node = (a, b);
            if a <= b || (2..=b).any(|p| a % p == 0 && b % p == 0) {
                continue;
            }
            let below = self_pairing_magnitude(node) > 22;
            ensure((s >= 6) == below, || format!("threshold fails at {node:?}"))?;
            ensure(in_s(node) == (s >= 6), || format!("membership fails at {node:?}"))?;
        }
    }
    Ok(format!("{} nodes, {} tree edges", c.node_count, c.spanning_tree.len()))
}

fn high_dimension_family() -> Outcome {
    for m in 0..=6i64 {
        let d = (3 * m * m + 3 * m + 2) / 2;
        let g = m * m * m - m;
        let got = hilbert_character(d, g, m).map_err(|e| e.to_string())?;
        let want = (m + 1) * BETA + m * GAMMA;
        ensure(got == want, || format!("m = {m}: {got} vs {want}"))?;
        let dim = moduli_dim(got).map_err(|e| e.to_string())?;
        ensure(dim == 2 * d as i128, || format!("m = {m}: dim {dim} vs {}", 2 * d))?;
    }
    Ok("m = 0..6".into())
}

fn determinism() -> Outcome {
    let runs: &[&[&str]] = &[
        &["pairing", "2", "1", "b"],
        &["-f", "json", "pairing", "a", "g"],
        &["pick", "3", "2"],
        &["-f", "json", "pick", "13", "8", "--oracle"],
        &["classify-form", "--matrix", "-1,0,-1,-1", "--serre", "1,1,-1,0"],
        &["catalog"],
        &["-f", "json", "catalog", "2,1"],
        &["certify", "2,3", "5", "3"],
        &["-f", "json", "certify", "2,1", "7", "-4"],
        &["-f", "dot", "certify", "2,2", "4", "9"],
        &["certify-all", "2,3", "--norm-bound", "400"],
        &["-f", "json", "certify-all", "1,16", "--norm-bound", "400"],
        &["moduli-info", "2", "1"],
        &["-f", "json", "moduli-info", "5", "3"],
        &["strata", "3", "2"],
        &["strata-beta", "3"],
        &["fano-check", "3", "1"],
        &["quiver-degree", "0", "0", "1", "2"],
        &["phase-gap", "a", "b"],
        &["ext-locus", "a", "b"],
        &["hilbert-map", "4", "1", "2"],
        &["hilbert-map", "--table"],
        &["-f", "dot", "birgraph", "--sum-bound", "12"],
        &["birgraph", "--sum-bound", "20", "--path", "5,4", "11,2"],
        &["prime-witness", "40"],
        &["render-lattice"],
        &["oracle", "--suite", "pick", "--bound", "500"],
        &["oracle", "--suite", "tree", "--bound", "30"],
    ];
    for args in runs {
        let reference = kunum(args, "1");
        ensure(reference.0 == 0, || format!("{args:?} exited {}", reference.0))?;
        for threads in ["1", "4", "4"] {
            ensure(kunum(args, threads) == reference, || format!("{args:?} differs with {threads} threads"))?;
        }
    }
    Ok(format!("{} invocations x 4 runs", runs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("euler table", euler_table),
        ("hilbert table", hilbert_table),
        ("pick oracle", pick_oracle),
        ("form classification", forms),
        ("certifier", certifier),
        ("cubic dimensions", cubic_dimensions),
        ("stratification", stratification),
        ("fano fiber", fano_fiber),
        ("phase sign law", sign_law),
        ("birationality graph", birationality),
        ("high-dimension family", high_dimension_family),
        ("cli determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why}; {secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
