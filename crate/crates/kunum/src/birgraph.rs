//! Stable-birationality graph on the primitive classes `aα + bβ` with
//! `a > b ≥ 1` and `a + b ≥ 6`.
//!
//! Edges carry the rule that justifies them. Equal-sum nodes form a clique;
//! `(a,b) ~ (a+1,b−2)`; and the single extra edge `(5,4) ~ (7,1)`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};

pub type Node = (i64, i64);

pub const MIN_SUM: i64 = 6;
pub const SPECIAL: (Node, Node) = ((5, 4), (7, 1));

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    SameSum,
    ShiftMinusTwo,
    Special,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::SameSum => "same-sum",
            Rule::ShiftMinusTwo => "shift-minus-two",
            Rule::Special => "special",
        }
    }
}

/// Undirected edge with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: Node,
    pub v: Node,
    pub rule: Rule,
}

impl Edge {
    pub fn new(x: Node, y: Node, rule: Rule) -> Edge {
        let (u, v) = if x < y { (x, y) } else { (y, x) };
        Edge { u, v, rule }
    }

    pub fn other(&self, x: Node) -> Node {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

pub fn in_s((a, b): Node) -> bool {
    a > b && b >= 1 && a + b >= MIN_SUM && a.gcd(&b) == 1
}

/// The rule linking two nodes, if any. Checked from the raw definitions.
pub fn edge_rule(x: Node, y: Node) -> Option<Rule> {
    if x == y || !in_s(x) || !in_s(y) {
        return None;
    }
    if (x, y) == SPECIAL || (y, x) == SPECIAL {
        return Some(Rule::Special);
    }
    if x.0 + x.1 == y.0 + y.1 {
        return Some(Rule::SameSum);
    }
    let shift = |(a, b): Node| (a + 1, b - 2);
    if (x.1 >= 3 && shift(x) == y) || (y.1 >= 3 && shift(y) == x) {
        return Some(Rule::ShiftMinusTwo);
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BirGraph {
    pub sum_bound: i64,
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    #[serde(skip)]
    adjacency: BTreeMap<Node, Vec<Edge>>,
}

/// Nodes of sum `s`, by increasing `b`.
fn level(s: i64) -> Vec<Node> {
    (1..).take_while(|&b| s - b > b).map(|b| (s - b, b)).filter(|&n| in_s(n)).collect()
}

pub fn build_graph(sum_bound: i64) -> Result<BirGraph> {
    if sum_bound < MIN_SUM {
        return Err(Error::BoundTooSmall(sum_bound));
    }
    let mut nodes = Vec::new();
    let mut edges = BTreeSet::new();
    for s in MIN_SUM..=sum_bound {
        let lv = level(s);
        for (i, &x) in lv.iter().enumerate() {
            for &y in &lv[i + 1..] {
                edges.insert(Edge::new(x, y, Rule::SameSum));
            }
            let (a, b) = x;
            if b >= 3 && in_s((a + 1, b - 2)) {
                edges.insert(Edge::new(x, (a + 1, b - 2), Rule::ShiftMinusTwo));
            }
        }
        nodes.extend(lv);
    }
    if sum_bound >= 9 {
        edges.insert(Edge::new(SPECIAL.0, SPECIAL.1, Rule::Special));
    }
    nodes.sort();
    let edges: Vec<Edge> = edges.into_iter().collect();
    let mut adjacency: BTreeMap<Node, Vec<Edge>> = nodes.iter().map(|&n| (n, Vec::new())).collect();
    for e in &edges {
        adjacency.get_mut(&e.u).expect("endpoint is a node").push(*e);
        adjacency.get_mut(&e.v).expect("endpoint is a node").push(*e);
    }
    for list in adjacency.values_mut() {
        list.sort_by_key(|e| (e.u, e.v));
    }
    Ok(BirGraph { sum_bound, nodes, edges, adjacency })
}

impl BirGraph {
    pub fn contains(&self, x: Node) -> bool {
        self.adjacency.contains_key(&x)
    }

    pub fn neighbours(&self, x: Node) -> impl Iterator<Item = (Node, &Edge)> {
        self.adjacency.get(&x).into_iter().flatten().map(move |e| (e.other(x), e))
    }

    /// BFS from `start`; returns the parent edge of every reached node.
    fn bfs(&self, start: Node) -> BTreeMap<Node, Option<Edge>> {
        let mut parent = BTreeMap::new();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (y, e) in self.neighbours(x) {
                if let std::collections::btree_map::Entry::Vacant(slot) = parent.entry(y) {
                    slot.insert(Some(*e));
                    queue.push_back(y);
                }
            }
        }
        parent
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph birationality {\n  node [shape=plaintext];\n");
        for &(a, b) in &self.nodes {
            let _ = writeln!(s, "  \"{a},{b}\" [label=\"({a},{b})\"];");
        }
        for e in &self.edges {
            let style = match e.rule {
                Rule::SameSum => {
                    // Only consecutive nodes of a level are drawn.
                    if !consecutive(e) {
                        continue;
                    }
                    "dashed"
                }
                Rule::ShiftMinusTwo => "solid",
                Rule::Special => "bold",
            };
            let _ = writeln!(s, "  \"{},{}\" -- \"{},{}\" [style={style}];", e.u.0, e.u.1, e.v.0, e.v.1);
        }
        s.push_str("}\n");
        s
    }
}

fn consecutive(e: &Edge) -> bool {
    let lv = level(e.u.0 + e.u.1);
    lv.windows(2).any(|w| (w[0] == e.u && w[1] == e.v) || (w[0] == e.v && w[1] == e.u))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub connected: bool,
    pub node_count: usize,
    pub spanning_tree: Vec<Edge>,
}

pub fn check_connected(sum_bound: i64) -> Result<Connectivity> {
    let g = build_graph(sum_bound)?;
    let root = g.nodes[0];
    let parent = g.bfs(root);
    let spanning_tree: Vec<Edge> = parent.values().flatten().copied().collect();
    Ok(Connectivity { connected: parent.len() == g.nodes.len(), node_count: g.nodes.len(), spanning_tree })
}

/// Checks that `tree` is a spanning tree of the nodes up to `sum_bound`,
/// each edge justified by its rule.
pub fn validate_spanning_tree(sum_bound: i64, tree: &[Edge]) -> std::result::Result<(), String> {
    let nodes: Vec<Node> = (MIN_SUM..=sum_bound).flat_map(level).collect();
    let index: BTreeMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    if tree.len() + 1 != nodes.len() {
        return Err(format!("{} edges for {} nodes", tree.len(), nodes.len()));
    }
    let mut root: Vec<usize> = (0..nodes.len()).collect();
    fn find(r: &mut [usize], mut i: usize) -> usize {
        while r[i] != i {
            r[i] = r[r[i]];
            i = r[i];
        }
        i
    }
    for e in tree {
        if edge_rule(e.u, e.v) != Some(e.rule) {
            return Err(format!("edge {:?}-{:?} is not a {} edge", e.u, e.v, e.rule.name()));
        }
        let (Some(&i), Some(&j)) = (index.get(&e.u), index.get(&e.v)) else {
            return Err(format!("edge {:?}-{:?} leaves the node set", e.u, e.v));
        };
        let (ri, rj) = (find(&mut root, i), find(&mut root, j));
        if ri == rj {
            return Err(format!("edge {:?}-{:?} closes a cycle", e.u, e.v));
        }
        root[ri] = rj;
    }
    Ok(())
}

/// Minimal path (in edges) from `x` to `y`.
pub fn equivalence_path(x: Node, y: Node, sum_bound: i64) -> Result<Vec<Edge>> {
    let g = build_graph(sum_bound)?;
    for n in [x, y] {
        if !g.contains(n) {
            return Err(Error::NotInGraph(n));
        }
    }
    let parent = g.bfs(x);
    if !parent.contains_key(&y) {
        return Err(Error::Unreachable(x, y));
    }
    let mut path = Vec::new();
    let mut cur = y;
    while let Some(Some(e)) = parent.get(&cur) {
        path.push(*e);
        cur = e.other(cur);
    }
    path.reverse();
    Ok(path)
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// For sum `m`, the smallest odd prime `p ∤ m+1` gives `(m+1−p, p)` at sum
/// `m+1`, linked by a shift edge to `(m+2−p, p−2)` at sum `m`.
pub fn prime_witness(m: i64) -> Result<(Node, Node)> {
    if m < MIN_SUM || m == 8 {
        return Err(Error::ExcludedSum(m));
    }
    let p = (3..)
        .step_by(2)
        .find(|&p| is_prime(p) && (m + 1) % p != 0)
        .expect("some odd prime does not divide m+1");
    let upper = (m + 1 - p, p);
    let lower = (m + 2 - p, p - 2);
    if !in_s(upper) || !in_s(lower) || edge_rule(upper, lower) != Some(Rule::ShiftMinusTwo) {
        return Err(Error::Internal(format!("prime witness fails at m = {m}")));
    }
    Ok((upper, lower))
}

/// `−χ(aα+bβ, aα+bβ) = a² + ab + b²`.
pub fn self_pairing_magnitude((a, b): Node) -> i128 {
    let (a, b) = (a as i128, b as i128);
    a * a + a * b + b * b
}

/// Equivalence classes below the graph: coprime `a > b ≥ 1` with `a + b < 6`,
/// bucketed as `χ = −7`, `χ = −13`, and `−21 ≤ χ ≤ −16`.
pub fn small_buckets() -> Vec<(String, Vec<Node>)> {
    let mut buckets: BTreeMap<(i128, i128), Vec<Node>> = BTreeMap::new();
    for s in 3..MIN_SUM {
        for b in 1..s {
            let n = (s - b, b);
            if n.0 > n.1 && n.0.gcd(&n.1) == 1 {
                let c = -self_pairing_magnitude(n);
                let key = if (-21..=-16).contains(&c) { (-21, -16) } else { (c, c) };
                buckets.entry(key).or_default().push(n);
            }
        }
    }
    buckets
        .into_iter()
        .rev()
        .map(|((lo, hi), mut v)| {
            v.sort();
            let label = if lo == hi { format!("chi = {lo}") } else { format!("{lo} <= chi <= {hi}") };
            (label, v)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let g = build_graph(6).unwrap();
        assert_eq!(g.nodes, vec![(5, 1)]);
        assert!(g.edges.is_empty());
        let g = build_graph(7).unwrap();
        assert_eq!(g.nodes, vec![(4, 3), (5, 1), (5, 2), (6, 1)]);
        assert_eq!(g.edges.iter().filter(|e| e.rule == Rule::SameSum).count(), 3);
        assert!(build_graph(9).unwrap().edges.contains(&Edge::new((5, 4), (7, 1), Rule::Special)));
        assert_eq!(build_graph(5), Err(Error::BoundTooSmall(5)));
    }

    #[test]
    fn connectivity_and_paths() {
        for bound in [6, 9, 50] {
            let c = check_connected(bound).unwrap();
            assert!(c.connected);
            validate_spanning_tree(bound, &c.spanning_tree).unwrap();
        }
        let p = equivalence_path((7, 2), (7, 1), 9).unwrap();
        assert_eq!(
            p,
            vec![Edge::new((7, 2), (5, 4), Rule::SameSum), Edge::new((5, 4), (7, 1), Rule::Special)]
        );
        assert!(equivalence_path((5, 1), (5, 1), 9).unwrap().is_empty());
        assert!(!equivalence_path((11, 2), (5, 1), 20).unwrap().is_empty());
        assert_eq!(equivalence_path((4, 2), (5, 1), 9), Err(Error::NotInGraph((4, 2))));
    }

    #[test]
    fn witnesses() {
        assert_eq!(prime_witness(6).unwrap(), ((4, 3), (5, 1)));
        assert_eq!(prime_witness(9).unwrap(), ((7, 3), (8, 1)));
        assert_eq!(prime_witness(8), Err(Error::ExcludedSum(8)));
    }

    #[test]
    fn dot_has_styles() {
        let d = build_graph(9).unwrap().to_dot();
        assert!(d.contains("\"5,4\" -- \"7,1\" [style=bold]"));
        assert!(d.contains("style=dashed"));
    }

    #[test]
    fn buckets() {
        let b = small_buckets();
        assert_eq!(b.len(), 3);
        assert_eq!(b[2].1, vec![(3, 2), (4, 1)]);
    }
}
