//! Non-emptiness certificates for moduli of stable objects.
//!
//! A certificate decomposes a class by repeated Pick splits `v = v₊ + v₋`
//! with `χ(v₊, v₋) < 0` until every leaf lies in the entry's base set.
//! Shared subtrees are stored once; nodes are listed children-first and refer
//! to each other by index.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{BasePredicate, EntryLabel, FanoKuEntry, GldimBound};
use crate::error::{Condition, Error, Result};
use crate::euler_forms::EulerForm;
use crate::lattice::{cross, norm_sq, pick_decompose, primitive_vectors, LatticeVector, Mat2};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum BaseReason {
    UnitNorm,
    ThresholdHit { chi: i64 },
    SerreOrbitOfBase { chi: i64, witness: LatticeVector },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NodeKind {
    Base(BaseReason),
    Split {
        plus: usize,
        minus: usize,
        v_plus: LatticeVector,
        v_minus: LatticeVector,
        chi_cross: i64,
        delta_sin_sq: Ratio<i64>,
    },
    /// `v = factor·v₀`; direct sums of stable objects of class `v₀`.
    Multiple {
        factor: i64,
        primitive: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Node {
    pub v: LatticeVector,
    #[serde(flatten)]
    pub kind: NodeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub entry: EntryLabel,
    pub root: LatticeVector,
    pub form: [[i64; 2]; 2],
    pub serre: [[i64; 2]; 2],
    pub gldim: GldimBound,
    pub base: BasePredicate,
    /// Children precede parents; the root is last.
    pub nodes: Vec<Node>,
}

impl Certificate {
    pub fn root_index(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Longest root-to-leaf path, counted in edges.
    pub fn depth(&self) -> usize {
        let mut depth = vec![0usize; self.nodes.len()];
        for (i, n) in self.nodes.iter().enumerate() {
            depth[i] = match n.kind {
                NodeKind::Base(_) => 0,
                NodeKind::Split { plus, minus, .. } => 1 + depth[plus].max(depth[minus]),
                NodeKind::Multiple { primitive, .. } => 1 + depth[primitive],
            };
        }
        depth[self.root_index()]
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "certificate entry={} root={}", self.entry, self.root);
        let _ = writeln!(s, "form {}", Mat2 { m: self.form });
        let _ = writeln!(s, "{}", self.gldim);
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = write!(s, "#{i} {} ", n.v);
            let _ = match &n.kind {
                NodeKind::Base(BaseReason::UnitNorm) => writeln!(s, "base unit-norm"),
                NodeKind::Base(BaseReason::ThresholdHit { chi }) => {
                    writeln!(s, "base threshold-hit chi={chi}")
                }
                NodeKind::Base(BaseReason::SerreOrbitOfBase { chi, witness }) => {
                    writeln!(s, "base serre-orbit-of-base chi={chi} witness={witness}")
                }
                NodeKind::Split { plus, minus, chi_cross, delta_sin_sq, .. } => writeln!(
                    s,
                    "split plus=#{plus} minus=#{minus} chi_cross={chi_cross} delta_sin_sq={delta_sin_sq}"
                ),
                NodeKind::Multiple { factor, primitive } => {
                    writeln!(s, "multiple factor={factor} of=#{primitive}")
                }
            };
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph certificate {\n  node [shape=box, fontname=\"monospace\"];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = match &n.kind {
                NodeKind::Base(BaseReason::UnitNorm) => format!("{} unit", n.v),
                NodeKind::Base(BaseReason::ThresholdHit { chi }) => format!("{} chi={chi}", n.v),
                NodeKind::Base(BaseReason::SerreOrbitOfBase { chi, .. }) => {
                    format!("{} orbit chi={chi}", n.v)
                }
                NodeKind::Split { chi_cross, .. } => format!("{} chi(+,-)={chi_cross}", n.v),
                NodeKind::Multiple { factor, .. } => format!("{} = {factor} x", n.v),
            };
            let shape = if matches!(n.kind, NodeKind::Base(_)) { ", style=rounded" } else { "" };
            let _ = writeln!(s, "  n{i} [label=\"{label}\"{shape}];");
        }
        for (i, n) in self.nodes.iter().enumerate() {
            match n.kind {
                NodeKind::Split { plus, minus, .. } => {
                    let _ = writeln!(s, "  n{i} -> n{plus} [label=\"+\"];");
                    let _ = writeln!(s, "  n{i} -> n{minus} [label=\"-\"];");
                }
                NodeKind::Multiple { primitive, .. } => {
                    let _ = writeln!(s, "  n{i} -> n{primitive};");
                }
                NodeKind::Base(_) => {}
            }
        }
        s.push_str("}\n");
        s
    }
}

struct Builder<'a> {
    q: EulerForm,
    serre: Mat2,
    gldim: GldimBound,
    base: &'a BasePredicate,
    memo: HashMap<LatticeVector, usize>,
    nodes: Vec<Node>,
}

fn orbit_contains(serre: &Mat2, v: LatticeVector, target: LatticeVector) -> bool {
    let mut w = v;
    for _ in 0..12 {
        if w == target || -w == target {
            return true;
        }
        w = serre.apply(w);
    }
    false
}

/// Whether `gldim < 3 − δ(v)` holds, decided exactly.
fn gldim_guard(gldim: &GldimBound, delta_sin_sq: Ratio<i64>) -> std::result::Result<(), String> {
    let five_halves = Ratio::new(5, 2);
    let b = gldim.value();
    if b < five_halves || (b == five_halves && gldim.strict) {
        return Ok(());
    }
    if b == five_halves && delta_sin_sq < Ratio::from_integer(1) {
        return Ok(());
    }
    if b == five_halves {
        return Err("gldim = 5/2 and delta = 1/2".into());
    }
    Err(format!("{gldim} exceeds 5/2; the guard is not decidable with rational arithmetic"))
}

impl Builder<'_> {
    fn base_reason(&self, v: LatticeVector) -> Option<BaseReason> {
        let chi = self.q.pair(v, v) as i64;
        if chi >= self.base.chi_at_least {
            return Some(BaseReason::ThresholdHit { chi });
        }
        if norm_sq(v) == 1 {
            return Some(BaseReason::UnitNorm);
        }
        if self.base.orbit_chi.contains(&chi) {
            let witness = self.base.witness()?;
            if orbit_contains(&self.serre, v, witness) {
                return Some(BaseReason::SerreOrbitOfBase { chi, witness });
            }
        }
        None
    }

    fn push(&mut self, v: LatticeVector, kind: NodeKind) -> usize {
        self.nodes.push(Node { v, kind });
        let id = self.nodes.len() - 1;
        self.memo.insert(v, id);
        id
    }

    fn build(&mut self, v: LatticeVector) -> Result<usize> {
        if let Some(&id) = self.memo.get(&v) {
            return Ok(id);
        }
        if let Some(reason) = self.base_reason(v) {
            return Ok(self.push(v, NodeKind::Base(reason)));
        }
        let (vm, vp) = pick_decompose(v).map_err(|e| Error::ConditionFailed {
            which: Condition::B,
            at: v,
            detail: e.to_string(),
        })?;
        let chi_cross = self.q.pair(vp, vm);
        if chi_cross >= 0 {
            return Err(Error::ConditionFailed {
                which: Condition::C,
                at: v,
                detail: format!("chi(v+, v-) = {chi_cross} >= 0"),
            });
        }
        let delta = Ratio::new(1, (norm_sq(vp) * norm_sq(vm)) as i64);
        gldim_guard(&self.gldim, delta).map_err(|detail| Error::ConditionFailed {
            which: Condition::B,
            at: v,
            detail,
        })?;
        let plus = self.build(vp)?;
        let minus = self.build(vm)?;
        Ok(self.push(
            v,
            NodeKind::Split {
                plus,
                minus,
                v_plus: vp,
                v_minus: vm,
                chi_cross: chi_cross as i64,
                delta_sin_sq: delta,
            },
        ))
    }
}

fn entry_data(entry: &FanoKuEntry) -> Result<(EulerForm, Mat2, GldimBound, &BasePredicate)> {
    let missing = || Error::NonCertifiableEntry(entry.label().to_string());
    if !entry.certifiable {
        return Err(missing());
    }
    let q = entry.form().ok_or_else(missing)?;
    let serre = Mat2 { m: entry.serre.ok_or_else(missing)? };
    let gldim = entry.gldim.ok_or_else(missing)?;
    let base = entry.base.as_ref().ok_or_else(missing)?;
    Ok((q, serre, gldim, base))
}

pub fn certify(entry: &FanoKuEntry, v: LatticeVector) -> Result<Certificate> {
    let (q, serre, gldim, base) = entry_data(entry)?;
    if v.is_zero() {
        return Err(Error::ZeroClass);
    }
    let mut b = Builder { q, serre, gldim, base, memo: HashMap::new(), nodes: Vec::new() };
    let k = v.content();
    let v0 = LatticeVector::new(v.a / k, v.b / k);
    let id = b.build(v0)?;
    if k > 1 {
        b.nodes.push(Node { v, kind: NodeKind::Multiple { factor: k, primitive: id } });
    }
    Ok(Certificate {
        entry: entry.label(),
        root: v,
        form: q.matrix().m,
        serre: serre.m,
        gldim,
        base: base.clone(),
        nodes: b.nodes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub v: LatticeVector,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertifyReport {
    pub entry: EntryLabel,
    pub norm_bound: i64,
    pub total: usize,
    pub certified: usize,
    pub verified: usize,
    pub base_roots: usize,
    pub max_depth: usize,
    pub failures: Vec<Failure>,
}

/// Certifies and verifies every primitive vector with `norm_sq ≤ norm_bound`.
pub fn certify_all(entry: &FanoKuEntry, norm_bound: i64) -> Result<CertifyReport> {
    entry_data(entry)?;
    let vectors = primitive_vectors(norm_bound as i128);
    let results: Vec<(LatticeVector, Result<Certificate>)> =
        vectors.par_iter().map(|&v| (v, certify(entry, v))).collect();
    let mut report = CertifyReport {
        entry: entry.label(),
        norm_bound,
        total: vectors.len(),
        certified: 0,
        verified: 0,
        base_roots: 0,
        max_depth: 0,
        failures: Vec::new(),
    };
    for (v, r) in results {
        match r {
            Ok(cert) => {
                report.certified += 1;
                let check = verify(&cert);
                if check.is_valid() {
                    report.verified += 1;
                } else {
                    report.failures.push(Failure { v, error: check.failures.join("; ") });
                }
                let d = cert.depth();
                if d == 0 {
                    report.base_roots += 1;
                }
                report.max_depth = report.max_depth.max(d);
            }
            Err(e) => report.failures.push(Failure { v, error: e.to_string() }),
        }
    }
    Ok(report)
}

/// Result of [`verify`]; empty `failures` means the certificate is valid.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub failures: Vec<String>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks every node of a certificate against the embedded entry data,
/// and the embedded data against the catalog. Uses only the lattice
/// primitives; the bilinear form is evaluated from the raw matrix.
pub fn verify(cert: &Certificate) -> Verification {
    let mut out = Verification::default();
    let mut fail = |msg: String| out.failures.push(msg);

    match crate::catalog::lookup_label(cert.entry) {
        Ok(e) => {
            if e.euler_matrix != Some(cert.form)
                || e.serre != Some(cert.serre)
                || e.gldim != Some(cert.gldim)
                || e.base.as_ref() != Some(&cert.base)
            {
                fail(format!("entry data does not match catalog entry {}", cert.entry));
            }
        }
        Err(e) => fail(format!("unknown entry: {e}")),
    }

    let m = cert.form;
    let q = |u: LatticeVector, w: LatticeVector| -> i128 {
        let (ua, ub, wa, wb) = (u.a as i128, u.b as i128, w.a as i128, w.b as i128);
        ua * (m[0][0] as i128 * wa + m[0][1] as i128 * wb)
            + ub * (m[1][0] as i128 * wa + m[1][1] as i128 * wb)
    };
    let s = cert.serre;
    let serre = |u: LatticeVector| -> LatticeVector {
        LatticeVector::new(s[0][0] * u.a + s[0][1] * u.b, s[1][0] * u.a + s[1][1] * u.b)
    };

    if cert.nodes.is_empty() {
        fail("certificate has no nodes".into());
        return out;
    }
    if cert.nodes.last().map(|n| n.v) != Some(cert.root) {
        fail(format!("last node is not the root {}", cert.root));
    }
    for (i, n) in cert.nodes.iter().enumerate() {
        let v = n.v;
        let at = |msg: &str| format!("#{i} {v}: {msg}");
        match &n.kind {
            NodeKind::Base(reason) => {
                let chi = q(v, v);
                match reason {
                    BaseReason::UnitNorm => {
                        if norm_sq(v) != 1 {
                            fail(at("unit-norm leaf has norm != 1"));
                        }
                    }
                    BaseReason::ThresholdHit { chi: c } => {
                        if chi != *c as i128 || chi < cert.base.chi_at_least as i128 {
                            fail(at("threshold leaf outside the base set"));
                        }
                    }
                    BaseReason::SerreOrbitOfBase { chi: c, witness } => {
                        let listed = cert.base.orbit_chi.iter().any(|&x| x as i128 == chi);
                        let anchored = cert.base.witness() == Some(*witness);
                        let mut w = v;
                        let mut found = false;
                        for _ in 0..12 {
                            if w == *witness || LatticeVector::new(-w.a, -w.b) == *witness {
                                found = true;
                            }
                            w = serre(w);
                        }
                        if chi != *c as i128 || !listed || !anchored || !found {
                            fail(at("orbit leaf is not in the Serre orbit of the base witness"));
                        }
                    }
                }
                if v.content() != 1 {
                    fail(at("leaf is not primitive"));
                }
            }
            NodeKind::Split { plus, minus, v_plus, v_minus, chi_cross, delta_sin_sq } => {
                let (vp, vm) = (*v_plus, *v_minus);
                if *plus >= i || *minus >= i {
                    fail(at("child index does not precede parent"));
                    continue;
                }
                if cert.nodes[*plus].v != vp || cert.nodes[*minus].v != vm {
                    fail(at("child vectors do not match"));
                }
                if v.content() != 1 || norm_sq(v) <= 1 {
                    fail(at("split vector is not primitive of norm > 1"));
                }
                let sum = (vp.a as i128 + vm.a as i128, vp.b as i128 + vm.b as i128);
                if sum != (v.a as i128, v.b as i128) {
                    fail(at("v != v+ + v-"));
                }
                if cross(vm, v) != 1 || cross(v, vp) != 1 || cross(vm, vp) != 1 {
                    fail(at("cross conditions fail"));
                }
                if norm_sq(vp) >= norm_sq(v) || norm_sq(vm) >= norm_sq(v) {
                    fail(at("children are not shorter"));
                }
                let c = q(vp, vm);
                if c != *chi_cross as i128 || c >= 0 {
                    fail(at("chi(v+, v-) is not negative"));
                }
                let d = (norm_sq(vp) * norm_sq(vm)) as i64;
                if *delta_sin_sq != Ratio::new(1, d) {
                    fail(at("recorded delta does not match"));
                }
                let g = cert.gldim.value();
                let half5 = Ratio::new(5, 2);
                let ok = g < half5
                    || (g == half5 && (cert.gldim.strict || Ratio::new(1, d) < Ratio::from_integer(1)));
                if !ok {
                    fail(at("global dimension guard fails"));
                }
            }
            NodeKind::Multiple { factor, primitive } => {
                if *primitive >= i {
                    fail(at("child index does not precede parent"));
                    continue;
                }
                let v0 = cert.nodes[*primitive].v;
                if *factor < 2
                    || v0.content() != 1
                    || (v0.a as i128 * *factor as i128, v0.b as i128 * *factor as i128)
                        != (v.a as i128, v.b as i128)
                {
                    fail(at("multiple node does not match its primitive class"));
                }
            }
        }
    }
    out
}
