//! Brute-force cross-checks of the fast algorithms.
//!
//! Each suite recomputes a result from raw definitions and counts
//! disagreements with the library routine.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::birgraph::{build_graph, Rule};
use crate::euler_forms::{exceptional_vectors, CanonicalForm, Family};
use crate::lattice::{cross, pick_decompose, pick_oracle, primitive_vectors, triangle_points, LatticeVector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub checked: usize,
    pub disagreements: usize,
    /// First few disagreements, for diagnosis.
    pub examples: Vec<String>,
}

impl OracleReport {
    fn new(suite: &str) -> Self {
        OracleReport { suite: suite.into(), checked: 0, disagreements: 0, examples: Vec::new() }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.disagreements += 1;
            if self.examples.len() < 10 {
                self.examples.push(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.disagreements == 0 && self.checked > 0
    }
}

/// `pick_decompose` against the exhaustive search, for `1 < |v|² ≤ norm_bound`.
pub fn pick_suite(norm_bound: i128) -> OracleReport {
    use rayon::prelude::*;
    let vs: Vec<LatticeVector> =
        primitive_vectors(norm_bound).into_iter().filter(|v| v.norm_sq() > 1).collect();
    let bad: Vec<String> = vs
        .par_iter()
        .filter_map(|&v| {
            let fast = pick_decompose(v);
            let slow = pick_oracle(v);
            match (&fast, &slow) {
                (Ok(a), Ok(b)) if a == b => None,
                _ => Some(format!("{v}: {fast:?} vs {slow:?}")),
            }
        })
        .collect();
    let mut r = OracleReport::new("pick");
    r.checked = vs.len();
    r.disagreements = bad.len();
    r.examples = bad.into_iter().take(10).collect();
    r
}

/// Lattice points `(i·v + j·w)/D` with `i, j ≥ 0`, `i + j ≤ D`, `D = v×w`.
pub fn triangle_naive(v: LatticeVector, w: LatticeVector) -> Vec<LatticeVector> {
    let d = cross(v, w);
    let mut out = BTreeSet::new();
    for i in 0..=d {
        for j in 0..=(d - i) {
            let x = i * v.a as i128 + j * w.a as i128;
            let y = i * v.b as i128 + j * w.b as i128;
            if x % d == 0 && y % d == 0 {
                out.insert(LatticeVector::new((x / d) as i64, (y / d) as i64));
            }
        }
    }
    out.into_iter().collect()
}

/// `triangle_points` against [`triangle_naive`] for every pair of vectors in
/// the box `[-r, r]²` with `0 < v×w ≤ max_area`.
pub fn triangle_suite(r: i64, max_area: i128) -> OracleReport {
    let mut rep = OracleReport::new("triangle");
    let pts: Vec<LatticeVector> =
        (-r..=r).flat_map(|a| (-r..=r).map(move |b| LatticeVector::new(a, b))).collect();
    for &v in &pts {
        for &w in &pts {
            let c = cross(v, w);
            if c <= 0 || c > max_area {
                continue;
            }
            let fast = triangle_points(v, w).unwrap_or_default();
            let slow = triangle_naive(v, w);
            rep.record(fast == slow, || format!("{v} {w}: {} vs {} points", fast.len(), slow.len()));
        }
    }
    rep
}

/// Exceptional vectors recomputed by testing every primitive vector with
/// `1 < |v|² ≤ norm_bound`.
pub fn exceptional_naive(form: &CanonicalForm, norm_bound: i128) -> Vec<LatticeVector> {
    let q = form.matrix();
    primitive_vectors(norm_bound)
        .into_iter()
        .filter(|v| v.norm_sq() > 1)
        .filter(|&v| {
            let (m, p) = pick_oracle(v).expect("pick pair exists");
            q.pair(p, m) >= 0
        })
        .collect()
}

pub fn exceptional_suite(norm_bound: i128) -> OracleReport {
    let mut rep = OracleReport::new("exceptional");
    for family in [Family::IPlus, Family::IMinus] {
        let form = CanonicalForm::of_family(family, 1);
        let fast = exceptional_vectors(&form);
        let slow = exceptional_naive(&form, norm_bound);
        rep.record(fast == slow, || format!("{}: {fast:?} vs {slow:?}", family.symbol()));
    }
    rep
}

/// An edge `(u, v, rule name)` with `u < v`.
pub type NamedEdge = ((i64, i64), (i64, i64), &'static str);

/// Edges of the birationality graph regenerated from the raw definitions.
pub fn birgraph_naive_edges(sum_bound: i64) -> BTreeSet<NamedEdge> {
    let gcd = |mut a: i64, mut b: i64| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let member = |(a, b): (i64, i64)| a > b && b >= 1 && a + b >= 6 && gcd(a, b) == 1;
    let mut nodes = Vec::new();
    for a in 1..=sum_bound {
        for b in 1..=sum_bound - a {
            if member((a, b)) {
                nodes.push((a, b));
            }
        }
    }
    nodes.sort();
    let mut edges = BTreeSet::new();
    for (i, &x) in nodes.iter().enumerate() {
        for &y in &nodes[i + 1..] {
            let rule = if (x == (5, 4) && y == (7, 1)) || (x == (7, 1) && y == (5, 4)) {
                Some("special")
            } else if x.0 + x.1 == y.0 + y.1 {
                Some("same-sum")
            } else if (x.0 + 1, x.1 - 2) == y || (y.0 + 1, y.1 - 2) == x {
                Some("shift-minus-two")
            } else {
                None
            };
            if let Some(r) = rule {
                edges.insert((x, y, r));
            }
        }
    }
    edges
}

/// Rule-free connectivity: BFS over [`birgraph_naive_edges`].
pub fn birgraph_naive_connected(sum_bound: i64) -> bool {
    let edges = birgraph_naive_edges(sum_bound);
    let mut adj: BTreeMap<(i64, i64), Vec<(i64, i64)>> = BTreeMap::new();
    for &(x, y, _) in &edges {
        adj.entry(x).or_default().push(y);
        adj.entry(y).or_default().push(x);
    }
    let nodes: BTreeSet<(i64, i64)> = (6..=sum_bound)
        .flat_map(|s| (1..s).map(move |b| (s - b, b)))
        .filter(|&(a, b)| {
            let (mut x, mut y) = (a, b);
            while y != 0 {
                (x, y) = (y, x % y);
            }
            a > b && x == 1
        })
        .collect();
    let Some(&start) = nodes.iter().next() else { return true };
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in adj.get(&x).into_iter().flatten() {
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen == nodes
}

/// Compares edge sets and connectivity at every sum bound up to 12 and at
/// `max_bound`; edge sets are nested, so the largest bound covers the rest.
pub fn tree_suite(max_bound: i64) -> OracleReport {
    let mut rep = OracleReport::new("tree");
    let bounds: BTreeSet<i64> = (6..=max_bound.min(12)).chain([max_bound.max(6)]).collect();
    for bound in bounds {
        let g = build_graph(bound).expect("bound >= 6");
        let fast: BTreeSet<_> = g
            .edges
            .iter()
            .map(|e| {
                let name = match e.rule {
                    Rule::SameSum => "same-sum",
                    Rule::ShiftMinusTwo => "shift-minus-two",
                    Rule::Special => "special",
                };
                (e.u, e.v, name)
            })
            .collect();
        let slow = birgraph_naive_edges(bound);
        rep.record(fast == slow, || format!("sum bound {bound}: edge sets differ"));
        rep.record(birgraph_naive_connected(bound), || format!("sum bound {bound}: not connected"));
    }
    rep
}
