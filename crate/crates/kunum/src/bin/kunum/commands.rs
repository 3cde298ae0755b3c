use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use kunum::birgraph::{self, build_graph, check_connected, equivalence_path, prime_witness};
use kunum::catalog::{catalog, curve_coordinates, FanoKuEntry};
use kunum::certifier::{certify, certify_all, verify};
use kunum::chern::{self, euler_pairing, from_ku_basis, hilbert_character, HILBERT_TABLE};
use kunum::cubic::{self, chi, LiftedClass};
use kunum::euler_forms::{classify_form, exceptional_vectors, n_chi, serre_order, EulerForm, SerreIsometry};
use kunum::lattice::{delta_sin_sq, pick_decompose, pick_oracle, LatticeVector, Mat2};
use kunum::oracles::{self, OracleReport};
use kunum::render::{render_svg, CoordinateMode, RenderSpec};
use kunum::Error;

use crate::cli::{Command, Format, Mode, Suite};
use crate::input;

/// Failure of a subcommand, classified for the exit status.
pub enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            e => Failure::Domain(e),
        }
    }
}

type Out = std::result::Result<String, Failure>;

fn choose(f: Option<Format>, allowed: &[Format]) -> std::result::Result<Format, Failure> {
    match f {
        None => Ok(allowed[0]),
        Some(f) if allowed.contains(&f) => Ok(f),
        Some(f) => {
            let name = f.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
            Err(Failure::Usage(format!("format {name} is not supported by this subcommand")))
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

use Format::{Dot, Json, Svg, Text};

pub fn run(cmd: Command, format: Option<Format>) -> Out {
    match cmd {
        Command::Pairing(c) => pairing(&c.tokens, choose(format, &[Text, Json])?),
        Command::Pick { a, b, oracle } => pick(a, b, oracle, choose(format, &[Text, Json])?),
        Command::ClassifyForm { matrix, serre } => classify(&matrix, &serre, choose(format, &[Text, Json])?),
        Command::Catalog { entry } => show_catalog(entry.as_deref(), choose(format, &[Text, Json])?),
        Command::Certify { entry, class, rank_degree } => {
            certify_one(&entry, &class.tokens, rank_degree, choose(format, &[Text, Json, Dot])?)
        }
        Command::CertifyAll { entry, norm_bound } => {
            certify_many(&entry, norm_bound, choose(format, &[Text, Json])?)
        }
        Command::ModuliInfo(c) => moduli_info(&c.tokens, choose(format, &[Text, Json])?),
        Command::Strata { class } => {
            let v = input::class(&class.tokens)?;
            strata_out(cubic::strata(v)?, choose(format, &[Text, Json])?)
        }
        Command::StrataBeta { m } => strata_out(cubic::strata_beta(m)?, choose(format, &[Text, Json])?),
        Command::FanoCheck(c) => fano_check(&c.tokens, choose(format, &[Text, Json])?),
        Command::QuiverDegree { a11, a22, a12, a21 } => {
            let q = cubic::quiver_canonical_degree(a11, a22, a12, a21)?;
            Ok(match choose(format, &[Text, Json])? {
                Json => to_json(&q),
                _ => format!("degree {}\nexceptional locus P^{}\n", q.degree, q.z_dim),
            })
        }
        Command::PhaseGap { classes, branch_v, branch_w } => {
            phase_gap(&classes.tokens, branch_v, branch_w, choose(format, &[Text, Json])?)
        }
        Command::ExtLocus(c) => ext_locus(&c.tokens, choose(format, &[Text, Json])?),
        Command::HilbertMap { d, g, m, table } => {
            let f = choose(format, &[Text, Json])?;
            if table {
                hilbert_table(f)
            } else {
                match (d, g, m) {
                    (Some(d), Some(g), Some(m)) => hilbert_one(d, g, m, f),
                    _ => Err(Failure::Usage("hilbert-map needs <d> <g> <m> or --table".into())),
                }
            }
        }
        Command::Birgraph { sum_bound, path } => {
            birgraph_out(sum_bound, path, choose(format, &[Text, Json, Dot])?)
        }
        Command::PrimeWitness { m } => {
            let (upper, lower) = prime_witness(m)?;
            Ok(match choose(format, &[Text, Json])? {
                Json => to_json(&json!({ "m": m, "upper": upper, "lower": lower })),
                _ => format!(
                    "({},{}) at sum {} -- ({},{}) at sum {}\n",
                    upper.0,
                    upper.1,
                    m + 1,
                    lower.0,
                    lower.1,
                    m
                ),
            })
        }
        Command::RenderLattice { window, mode, no_labels } => {
            choose(format, &[Svg])?;
            let (n_range, m_range) = input::window(&window)?;
            let mode = match mode {
                Mode::Hexagonal => CoordinateMode::Hexagonal,
                Mode::Euclidean => CoordinateMode::Euclidean,
            };
            Ok(render_svg(&RenderSpec { mode, n_range, m_range, annotate: !no_labels })?)
        }
        Command::Oracle { suite, bound } => oracle(suite, bound, choose(format, &[Text, Json])?),
    }
}

fn pairing(tokens: &[String], f: Format) -> Out {
    let c = input::classes(tokens, 2)?;
    let (v, w) = (c[0], c[1]);
    let value = chi(v, w);
    let hrr = euler_pairing(&from_ku_basis(v), &from_ku_basis(w))?;
    if hrr as i128 != value {
        return Err(Error::Internal(format!("lattice pairing {value} != HRR pairing {hrr}")).into());
    }
    Ok(match f {
        Json => to_json(&json!({ "v": v, "w": w, "chi": value as i64 })),
        _ => format!("chi({v}, {w}) = {value}\n"),
    })
}

fn pick(a: i64, b: i64, oracle: bool, f: Format) -> Out {
    let v = LatticeVector::new(a, b);
    let (m, p) = pick_decompose(v)?;
    let delta = delta_sin_sq(v)?;
    if oracle && pick_oracle(v)? != (m, p) {
        return Err(Error::Internal(format!("pick oracle disagrees at {v}")).into());
    }
    Ok(match f {
        Json => to_json(&json!({
            "v": v, "v_minus": m, "v_plus": p,
            "delta_sin_sq": delta.to_string(),
            "oracle_checked": oracle,
        })),
        _ => format!("v- = {m}, v+ = {p}\nsin^2(pi delta) = {delta}\n"),
    })
}

fn classify(matrix: &str, serre: &str, f: Format) -> Out {
    let q = EulerForm::from_matrix(Mat2 { m: input::matrix(matrix)? });
    let d = SerreIsometry::new(Mat2 { m: input::matrix(serre)? })?;
    let c = classify_form(&q, &d)?;
    let order = serre_order(&d)?;
    let exc = exceptional_vectors(&c);
    let n = n_chi(&c);
    Ok(match f {
        Json => to_json(&json!({
            "family": c.family, "n": c.n,
            "basis_change": c.basis_change.m,
            "canonical_matrix": c.matrix().matrix().m,
            "serre_order": order,
            "exceptional_vectors": exc,
            "n_chi": n,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "family {} n={}", c.family.symbol(), c.n);
            let _ = writeln!(s, "basis change {}", c.basis_change);
            let _ = writeln!(s, "canonical matrix {}", c.matrix().matrix());
            let _ = writeln!(s, "serre order {order}");
            let list: Vec<String> = exc.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "exceptional vectors (canonical basis) {}", list.join(" "));
            let _ = writeln!(s, "n_chi {n}");
            s
        }
    })
}

fn entry_text(e: &FanoKuEntry) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", e.label(), e.name);
    let _ = writeln!(s, "  basis: {}", e.basis);
    if let Some(m) = e.euler_matrix {
        let _ = writeln!(s, "  euler matrix: {}", Mat2 { m });
    }
    if let Some(m) = e.serre {
        let rel = e.serre_relation.as_deref().unwrap_or("");
        let rec = if e.serre_reconstructed { ", reconstructed" } else { "" };
        let _ = writeln!(s, "  serre: {} ({rel}{rec})", Mat2 { m });
    }
    if let Some(g) = e.gldim {
        let _ = writeln!(s, "  {g}");
    }
    match (e.family, e.family_n) {
        (Some(f), Some(n)) => {
            let _ = writeln!(s, "  family: {} n={n}", f.symbol());
        }
        _ if e.euler_matrix.is_some() => {
            let _ = writeln!(s, "  family: none");
        }
        _ => {}
    }
    if let Some(b) = &e.base {
        let mut parts = vec![format!("chi >= {}", b.chi_at_least), "norm 1".to_string()];
        if !b.orbit_chi.is_empty() {
            let w = b.witness().map(|w| w.to_string()).unwrap_or_default();
            parts.push(format!("chi in {:?} on the Serre orbit of {w}", b.orbit_chi));
        }
        let _ = writeln!(s, "  base: {}", parts.join("; "));
    }
    if let Some(g) = e.curve_genus {
        let _ = writeln!(s, "  curve genus: {g}");
    }
    let _ = writeln!(s, "  certifiable: {}", if e.certifiable { "yes" } else { "no" });
    for n in &e.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    s
}

fn show_catalog(entry: Option<&str>, f: Format) -> Out {
    let entries: Vec<&FanoKuEntry> = match entry {
        Some(e) => vec![input::entry(e)?],
        None => catalog().entries.iter().collect(),
    };
    Ok(match f {
        Json => to_json(&json!({ "version": catalog().version, "entries": entries })),
        _ => entries.iter().map(|e| entry_text(e)).collect::<Vec<_>>().join("\n"),
    })
}

fn certify_one(entry: &str, tokens: &[String], rank_degree: bool, f: Format) -> Out {
    let e = input::entry(entry)?;
    let c = input::class(tokens)?;
    let v = if rank_degree {
        if e.curve_genus.is_none() {
            return Err(Failure::Usage(format!("{} has no curve model", e.label())));
        }
        curve_coordinates((c.n, c.m))
    } else {
        c.vector()
    };
    let cert = certify(e, v)?;
    let check = verify(&cert);
    if !check.is_valid() {
        return Err(Error::Internal(format!("certificate fails verification: {:?}", check.failures)).into());
    }
    Ok(match f {
        Json => to_json(&cert),
        Dot => cert.to_dot(),
        _ => {
            let mut s = cert.to_text();
            let _ = writeln!(s, "verified");
            s
        }
    })
}

fn certify_many(entry: &str, norm_bound: i64, f: Format) -> Out {
    let e = input::entry(entry)?;
    let r = certify_all(e, norm_bound)?;
    let out = match f {
        Json => to_json(&r),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "entry {} norm bound {}", r.entry, r.norm_bound);
            let _ = writeln!(s, "primitive classes {}", r.total);
            let _ = writeln!(s, "certified {}", r.certified);
            let _ = writeln!(s, "verified {}", r.verified);
            let _ = writeln!(s, "base roots {}", r.base_roots);
            let _ = writeln!(s, "max depth {}", r.max_depth);
            let _ = writeln!(s, "failures {}", r.failures.len());
            for x in &r.failures {
                let _ = writeln!(s, "  {} {}", x.v, x.error);
            }
            s
        }
    };
    Ok(out)
}

fn moduli_info(tokens: &[String], f: Format) -> Out {
    let v = input::class(tokens)?;
    let i = cubic::moduli_info(v)?;
    Ok(match f {
        Json => to_json(&i),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "class {} = ({},{})", i.notation, v.n, v.m);
            let _ = writeln!(s, "dim {}", i.dim);
            let _ = writeln!(s, "chi(v,v) {}", i.chi);
            let _ = writeln!(s, "primitive {}", i.primitive);
            let _ = writeln!(s, "normal form {} (k={}, sign={:+})", i.normal_form, i.normal_k, i.normal_sign);
            if let (Some(l), Some(n)) = (&i.label, &i.label_note) {
                let _ = writeln!(s, "identification {l}: {n}");
            }
            if let (Some(b1), Some(b2)) = (i.b1, i.b2) {
                let _ = writeln!(s, "b1 {b1}\nb2 {b2}");
            }
            if let Some(d) = i.aj_fiber_dim {
                let _ = writeln!(s, "Abel-Jacobi fibre dim {d}");
            }
            if let Some(ff) = i.fano_fiber {
                let _ = writeln!(s, "Fano fibre {ff}");
            }
            if let Some(m) = &i.mrc_quotient {
                let _ = writeln!(s, "MRC quotient {m}");
            }
            s
        }
    })
}

fn strata_out(list: Vec<cubic::Stratum>, f: Format) -> Out {
    Ok(match f {
        Json => to_json(&list),
        _ => list
            .iter()
            .map(|st| {
                format!(
                    "E({}, {}) codim {}{}\n",
                    st.v1,
                    st.v2,
                    st.codim,
                    if st.dominant { " dominant" } else { "" }
                )
            })
            .collect(),
    })
}

fn fano_check(tokens: &[String], f: Format) -> Out {
    let v = input::class(tokens)?;
    let r = cubic::fano_fiber_check(v)?;
    Ok(match f {
        Json => to_json(&r),
        _ => format!(
            "v+ = {}, v- = {}\nchi(v+,v-) = {}\nchi(v-,v+) = {}\ndegree {}\nr {}\npasses {}\n",
            r.v_plus, r.v_minus, r.chi_pm, r.chi_mp, r.degree, r.r, r.passes
        ),
    })
}

fn phase_gap(tokens: &[String], bv: Option<i64>, bw: Option<i64>, f: Format) -> Out {
    let c = input::classes(tokens, 2)?;
    let lift = |cls, b: Option<i64>| match b {
        Some(k) => LiftedClass::new(cls, k),
        None => LiftedClass::principal(cls),
    };
    let (v, w) = (lift(c[0], bv)?, lift(c[1], bw)?);
    let gap = cubic::phase_gap_class(v, w)?;
    let x = chi(c[0], c[1]);
    Ok(match f {
        Json => to_json(&json!({ "v": v, "w": w, "gap": gap, "chi": x as i64 })),
        _ => format!(
            "v = {} branch {}\nw = {} branch {}\nphi(w) - phi(v) {gap}\nchi(v,w) = {x}\n",
            v.cls, v.branch, w.cls, w.branch
        ),
    })
}

fn ext_locus(tokens: &[String], f: Format) -> Out {
    let c = input::classes(tokens, 2)?;
    let r = cubic::ext_locus_codim(c[0], c[1])?;
    let pd = cubic::proj_ext_dim(c[0], c[1])?;
    Ok(match f {
        Json => to_json(&json!({ "locus": r, "proj_ext_dim": pd as i64 })),
        _ => {
            let mut s = format!(
                "codim {}\nphase gap {}\nvalid {}\nsmall gap {}\nprojective ext dim {pd}\n",
                r.codim, r.gap, r.valid, r.small_gap
            );
            for reason in &r.reasons {
                let _ = writeln!(s, "note: {reason}");
            }
            s
        }
    })
}

fn hilbert_one(d: i64, g: i64, m: i64, f: Format) -> Out {
    let v = hilbert_character(d, g, m)?;
    let ch = chern::ku_project(chern::twist(chern::ideal_curve_character(d, g), m))?;
    Ok(match f {
        Json => to_json(&json!({
            "d": d, "g": g, "m": m, "class": v, "notation": v.to_string(), "character": ch.to_string(),
        })),
        _ => format!("{v}\n"),
    })
}

fn hilbert_table(f: Format) -> Out {
    let mut rows = Vec::new();
    for (d, g, m) in HILBERT_TABLE {
        rows.push((d, g, m, hilbert_character(d, g, m)?));
    }
    Ok(match f {
        Json => to_json(
            &rows
                .iter()
                .map(|(d, g, m, v)| json!({ "d": d, "g": g, "m": m, "class": v, "notation": v.to_string() }))
                .collect::<Vec<_>>(),
        ),
        _ => {
            let mut s = String::from("d g m v\n");
            for (d, g, m, v) in rows {
                let _ = writeln!(s, "{d} {g} {m} {v}");
            }
            s
        }
    })
}

fn edge_line(e: &birgraph::Edge) -> String {
    format!("({},{}) -- ({},{}) {}", e.u.0, e.u.1, e.v.0, e.v.1, e.rule.name())
}

fn birgraph_out(sum_bound: i64, path: Option<Vec<String>>, f: Format) -> Out {
    if let Some(p) = path {
        let (x, y) = (input::node(&p[0])?, input::node(&p[1])?);
        let edges = equivalence_path(x, y, sum_bound)?;
        return Ok(match f {
            Json => to_json(&json!({ "from": x, "to": y, "path": edges })),
            Dot => Err(Failure::Usage("--path has no DOT output".into()))?,
            _ => {
                let mut cur = x;
                let mut s = String::new();
                for e in &edges {
                    let next = e.other(cur);
                    let _ = writeln!(s, "({},{}) -- ({},{}) {}", cur.0, cur.1, next.0, next.1, e.rule.name());
                    cur = next;
                }
                s
            }
        });
    }
    let g = build_graph(sum_bound)?;
    let c = check_connected(sum_bound)?;
    Ok(match f {
        Dot => g.to_dot(),
        Json => to_json(&json!({
            "sum_bound": sum_bound,
            "nodes": g.nodes,
            "edges": g.edges,
            "connected": c.connected,
            "spanning_tree": c.spanning_tree,
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "nodes {}", g.nodes.len());
            let _ = writeln!(s, "edges {}", g.edges.len());
            let _ = writeln!(s, "connected {}", c.connected);
            let _ = writeln!(s, "spanning tree");
            for e in &c.spanning_tree {
                let _ = writeln!(s, "  {}", edge_line(e));
            }
            s
        }
    })
}

fn oracle(suite: Suite, bound: Option<i64>, f: Format) -> Out {
    let r: OracleReport = match suite {
        Suite::Pick => oracles::pick_suite(bound.unwrap_or(10_000) as i128),
        Suite::Triangle => oracles::triangle_suite(bound.unwrap_or(5), 50),
        Suite::Exceptional => oracles::exceptional_suite(bound.unwrap_or(400) as i128),
        Suite::Tree => oracles::tree_suite(bound.unwrap_or(100)),
    };
    let out = match f {
        Json => to_json(&r),
        _ => {
            let mut s =
                format!("suite {}\nchecked {}\ndisagreements {}\n", r.suite, r.checked, r.disagreements);
            for x in &r.examples {
                let _ = writeln!(s, "  {x}");
            }
            s
        }
    };
    if r.disagreements > 0 {
        print!("{out}");
        return Err(
            Error::Internal(format!("{} oracle found {} disagreements", r.suite, r.disagreements)).into()
        );
    }
    Ok(out)
}
