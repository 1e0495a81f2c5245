//! The labeled weak-order graph on K-orbit closures for (GL_n, O_n) and
//! (GL_2n, Sp_2n), with path enumeration and DOT/JSON export.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::perm::{
    fpf_involutions, involutions, weak_action_orthogonal, weak_action_symplectic, EdgeStyle,
    FpfInvolution, Involution, Permutation,
};
use crate::upsilon::{embed_fpf, embed_orthogonal};

/// A symmetric pair, identified by the ambient size of GL.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pair {
    Orthogonal(usize),
    Symplectic(usize),
}

impl Pair {
    pub fn orthogonal(n: usize) -> Result<Pair> {
        if n == 0 {
            return Err(Error::InvalidSize("orthogonal pair needs n ≥ 1".into()));
        }
        Ok(Pair::Orthogonal(n))
    }

    pub fn symplectic(size: usize) -> Result<Pair> {
        if size == 0 || size % 2 == 1 {
            return Err(Error::InvalidSize(format!(
                "symplectic pair needs an even ambient size, got {size}"
            )));
        }
        Ok(Pair::Symplectic(size))
    }

    /// Parses "o"/"orthogonal" or "sp"/"symplectic" together with a size.
    pub fn from_key(key: &str, size: usize) -> Result<Pair> {
        match key {
            "o" | "orthogonal" => Pair::orthogonal(size),
            "sp" | "symplectic" => Pair::symplectic(size),
            other => Err(Error::Parse(format!("unknown pair '{other}'"))),
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Pair::Orthogonal(_) => "o",
            Pair::Symplectic(_) => "sp",
        }
    }

    pub fn size(self) -> usize {
        match self {
            Pair::Orthogonal(n) | Pair::Symplectic(n) => n,
        }
    }

    pub fn is_symplectic(self) -> bool {
        matches!(self, Pair::Symplectic(_))
    }

    /// The same kind of pair at another ambient size.
    pub fn with_size(self, size: usize) -> Result<Pair> {
        match self {
            Pair::Orthogonal(_) => Pair::orthogonal(size),
            Pair::Symplectic(_) => Pair::symplectic(size),
        }
    }

    /// Rank of the maximal torus S of K.
    pub fn rank(self) -> usize {
        self.size() / 2
    }

    pub fn closed_orbit(self) -> Permutation {
        Permutation::longest(self.size())
    }

    pub fn dense_orbit(self) -> Permutation {
        match self {
            Pair::Orthogonal(n) => Permutation::identity(n),
            Pair::Symplectic(n) => FpfInvolution::dense(n).unwrap().into_perm(),
        }
    }

    /// Orbit labels, in table order: descending length, then one-line.
    pub fn orbits(self) -> Vec<Permutation> {
        let mut nodes = match self {
            Pair::Orthogonal(n) => involutions(n),
            Pair::Symplectic(n) => fpf_involutions(n),
        };
        sort_table_order(&mut nodes);
        nodes
    }

    /// s_i · π, or None when π is fixed.
    pub fn act(self, i: usize, pi: &Permutation) -> Option<(Permutation, EdgeStyle)> {
        match self {
            Pair::Orthogonal(_) => {
                let inv = Involution::new(pi.clone()).ok()?;
                let (next, style) = weak_action_orthogonal(i, &inv);
                style.map(|s| (next.into_perm(), s))
            }
            Pair::Symplectic(_) => {
                let inv = FpfInvolution::new(pi.clone()).ok()?;
                let (next, style) = weak_action_symplectic(i, &inv);
                style.map(|s| (next.into_perm(), s))
            }
        }
    }

    /// ι or ι_fpf into the pair of ambient size `target`.
    pub fn embed(self, pi: &Permutation, target: usize) -> Result<Permutation> {
        match self {
            Pair::Orthogonal(_) => {
                Ok(embed_orthogonal(&Involution::new(pi.clone())?, target)?.into_perm())
            }
            Pair::Symplectic(_) => {
                Ok(embed_fpf(&FpfInvolution::new(pi.clone())?, target)?.into_perm())
            }
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Pair::Orthogonal(n) => write!(f, "(GL_{n},O_{n})"),
            Pair::Symplectic(n) => write!(f, "(GL_{n},Sp_{n})"),
        }
    }
}

pub fn sort_table_order(nodes: &mut [Permutation]) {
    nodes.sort_by(|a, b| b.length().cmp(&a.length()).then_with(|| a.cmp(b)));
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub src: Permutation,
    pub dst: Permutation,
    pub label: usize,
    pub style: EdgeStyle,
}

#[derive(Debug, Clone)]
pub struct WeakOrderGraph {
    pair: Pair,
    nodes: Vec<Permutation>,
    edges: Vec<Edge>,
    outgoing: HashMap<Permutation, Vec<usize>>,
    incoming: HashMap<Permutation, Vec<usize>>,
}

pub fn build_graph(pair: Pair) -> WeakOrderGraph {
    let nodes = pair.orbits();
    let mut edges = Vec::new();
    for pi in &nodes {
        for i in 1..pair.size() {
            if let Some((dst, style)) = pair.act(i, pi) {
                edges.push(Edge {
                    src: pi.clone(),
                    dst,
                    label: i,
                    style,
                });
            }
        }
    }
    let mut outgoing: HashMap<Permutation, Vec<usize>> = HashMap::new();
    let mut incoming: HashMap<Permutation, Vec<usize>> = HashMap::new();
    for (k, e) in edges.iter().enumerate() {
        outgoing.entry(e.src.clone()).or_default().push(k);
        incoming.entry(e.dst.clone()).or_default().push(k);
    }
    WeakOrderGraph {
        pair,
        nodes,
        edges,
        outgoing,
        incoming,
    }
}

impl WeakOrderGraph {
    pub fn pair(&self) -> Pair {
        self.pair
    }

    /// Nodes in table order.
    pub fn nodes(&self) -> &[Permutation] {
        &self.nodes
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, pi: &Permutation) -> bool {
        self.outgoing.contains_key(pi) || self.incoming.contains_key(pi) || self.nodes.contains(pi)
    }

    pub fn rank(&self, pi: &Permutation) -> usize {
        pi.length()
    }

    pub fn outgoing(&self, pi: &Permutation) -> impl Iterator<Item = &Edge> {
        self.outgoing
            .get(pi)
            .into_iter()
            .flatten()
            .map(|&k| &self.edges[k])
    }

    pub fn incoming(&self, pi: &Permutation) -> impl Iterator<Item = &Edge> {
        self.incoming
            .get(pi)
            .into_iter()
            .flatten()
            .map(|&k| &self.edges[k])
    }

    /// Nodes grouped by length, longest first.
    pub fn levels(&self) -> Vec<Vec<Permutation>> {
        let mut by_rank: BTreeMap<usize, Vec<Permutation>> = BTreeMap::new();
        for pi in &self.nodes {
            by_rank.entry(pi.length()).or_default().push(pi.clone());
        }
        by_rank.into_values().rev().collect()
    }

    /// Nodes reachable from `from` along edges, `from` included.
    pub fn reachable_from(&self, from: &Permutation) -> Vec<Permutation> {
        let mut seen = vec![from.clone()];
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(pi) = queue.pop_front() {
            for e in self.outgoing(&pi) {
                if !seen.contains(&e.dst) {
                    seen.push(e.dst.clone());
                    queue.push_back(e.dst.clone());
                }
            }
        }
        seen
    }

    /// Label words of all edge paths from `from` to `to`, written as
    /// operator words: the last label of a word is the first edge taken.
    pub fn saturated_paths(&self, from: &Permutation, to: &Permutation) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        self.walk(from, to, &mut stack, &mut out);
        out.sort();
        out
    }

    fn walk(&self, at: &Permutation, to: &Permutation, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == to {
            out.push(stack.iter().rev().copied().collect());
            return;
        }
        if at.length() <= to.length() {
            return;
        }
        for e in self.outgoing(at) {
            stack.push(e.label);
            self.walk(&e.dst, to, stack, out);
            stack.pop();
        }
    }

    /// Graphviz digraph with the closed orbit at the bottom. Parallel edges
    /// of the same style are merged into one arrow with a label list.
    pub fn export_dot(&self) -> String {
        let mut merged: BTreeMap<(usize, usize, EdgeStyle), Vec<usize>> = BTreeMap::new();
        let index: HashMap<&Permutation, usize> =
            self.nodes.iter().enumerate().map(|(k, p)| (p, k)).collect();
        for e in &self.edges {
            merged
                .entry((index[&e.src], index[&e.dst], e.style))
                .or_default()
                .push(e.label);
        }
        let mut out = String::new();
        let name = self.pair.to_string();
        writeln!(out, "digraph \"{name}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for level in self.levels() {
            let names: Vec<String> = level
                .iter()
                .map(|p| format!("\"{}\"", p.cycle_notation()))
                .collect();
            writeln!(out, "  {{ rank=same; {}; }}", names.join("; ")).unwrap();
        }
        for ((s, d, style), labels) in merged {
            let labels: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\", style={}];",
                self.nodes[s].cycle_notation(),
                self.nodes[d].cycle_notation(),
                labels.join(","),
                style.as_str()
            )
            .unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "src": e.src.cycle_notation(),
                    "dst": e.dst.cycle_notation(),
                    "label": e.label,
                    "style": e.style.as_str(),
                })
            })
            .collect();
        json!({
            "pair": self.pair.key(),
            "n": self.pair.size(),
            "nodes": self.nodes.iter().map(Permutation::cycle_notation).collect::<Vec<_>>(),
            "edges": edges,
        })
    }
}

/// The path from w0 to the embedded closed orbit of the next smaller pair,
/// listed in the order the edges are taken. Every step is checked against
/// the weak action.
pub fn stability_chain(pair: Pair) -> Result<Vec<Edge>> {
    let size = pair.size();
    if size < 2 {
        return Err(Error::InvalidSize(format!("stability chain needs size ≥ 2, got {size}")));
    }
    let (labels, smaller): (Vec<usize>, usize) = match pair {
        Pair::Symplectic(n) => ((1..=n - 2).collect(), n - 2),
        Pair::Orthogonal(n) => {
            let big_n = n - 1;
            ((n.div_ceil(2)..=big_n).collect(), big_n)
        }
    };
    let mut at = pair.closed_orbit();
    let mut chain = Vec::with_capacity(labels.len());
    for (k, &i) in labels.iter().enumerate() {
        let (next, style) = pair.act(i, &at).ok_or_else(|| {
            Error::Verification(format!("s_{i} fixes {} on the stability chain", at.cycle_notation()))
        })?;
        let expected_style = match pair {
            Pair::Orthogonal(n) if k == 0 && n % 2 == 0 => EdgeStyle::Dashed,
            _ => EdgeStyle::Solid,
        };
        if style != expected_style {
            return Err(Error::Verification(format!(
                "edge {i} from {} is {}, expected {}",
                at.cycle_notation(),
                style.as_str(),
                expected_style.as_str()
            )));
        }
        chain.push(Edge {
            src: at.clone(),
            dst: next.clone(),
            label: i,
            style,
        });
        at = next;
    }
    let target = if smaller == 0 {
        pair.closed_orbit()
    } else {
        pair.with_size(smaller)
            .and_then(|p| p.embed(&p.closed_orbit(), size))?
    };
    if at != target {
        return Err(Error::Verification(format!(
            "stability chain ends at {}, expected {}",
            at.cycle_notation(),
            target.cycle_notation()
        )));
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn node_counts() {
        let counts: Vec<usize> = (1..=7)
            .map(|n| build_graph(Pair::orthogonal(n).unwrap()).nodes().len())
            .collect();
        assert_eq!(counts, [1, 2, 4, 10, 26, 76, 232]);
        let fpf: Vec<usize> = [2, 4, 6, 8]
            .iter()
            .map(|&n| build_graph(Pair::symplectic(n).unwrap()).nodes().len())
            .collect();
        assert_eq!(fpf, [1, 3, 15, 105]);
        let g = build_graph(Pair::orthogonal(3).unwrap());
        let names: Vec<String> = g.nodes().iter().map(Permutation::cycle_notation).collect();
        assert_eq!(names, ["(1,3)", "(2,3)", "(1,2)", "id"]);
    }

    #[test]
    fn graph_invariants() {
        let pairs = (1..=6)
            .map(|n| Pair::orthogonal(n).unwrap())
            .chain([2, 4, 6, 8].map(|n| Pair::symplectic(n).unwrap()));
        for pair in pairs {
            let g = build_graph(pair);
            let w0 = pair.closed_orbit();
            let dense = pair.dense_orbit();
            assert_eq!(g.reachable_from(&w0).len(), g.nodes().len(), "{pair}");
            for pi in g.nodes() {
                if *pi != w0 {
                    assert!(g.incoming(pi).next().is_some(), "{pair} {pi}");
                } else {
                    assert!(g.incoming(pi).next().is_none());
                }
                if *pi == dense {
                    assert!(g.outgoing(pi).next().is_none());
                }
            }
            for e in g.edges() {
                assert!(e.dst.length() < e.src.length());
                assert!(e.dst.bruhat_leq(&e.src).unwrap());
                let drop = e.src.length() - e.dst.length();
                match e.style {
                    EdgeStyle::Dashed => {
                        assert_eq!(drop, 1);
                        assert!(!pair.is_symplectic());
                    }
                    EdgeStyle::Solid => assert_eq!(drop, 2),
                }
            }
        }
    }

    #[test]
    fn saturated_path_examples() {
        let g = build_graph(Pair::orthogonal(4).unwrap());
        let w0 = Permutation::longest(4);
        let paths = g.saturated_paths(&w0, &c("(3,4)", 4));
        assert!(paths.contains(&vec![2, 1, 2]));
        assert!(paths.contains(&vec![1, 2, 3]));
        assert_eq!(g.saturated_paths(&w0, &w0), vec![Vec::<usize>::new()]);
        assert!(g.saturated_paths(&c("(1,2)", 4), &c("(3,4)", 4)).is_empty());

        let g = build_graph(Pair::symplectic(6).unwrap());
        let paths = g.saturated_paths(&Permutation::longest(6), &c("(1,5)(2,4)(3,6)", 6));
        assert!(paths.contains(&vec![2, 1]));
        assert!(paths.contains(&vec![5, 2]));
    }

    #[test]
    fn stability_chains() {
        let labels = |pair: Pair| -> Vec<(usize, EdgeStyle)> {
            stability_chain(pair)
                .unwrap()
                .into_iter()
                .map(|e| (e.label, e.style))
                .collect()
        };
        use EdgeStyle::*;
        assert_eq!(
            labels(Pair::symplectic(6).unwrap()),
            [(1, Solid), (2, Solid), (3, Solid), (4, Solid)]
        );
        assert_eq!(labels(Pair::orthogonal(4).unwrap()), [(2, Dashed), (3, Solid)]);
        assert_eq!(labels(Pair::orthogonal(3).unwrap()), [(2, Solid)]);
        for n in 2..=8 {
            stability_chain(Pair::orthogonal(n).unwrap()).unwrap();
        }
        for n in [2, 4, 6, 8, 10] {
            stability_chain(Pair::symplectic(n).unwrap()).unwrap();
        }
    }

    #[test]
    fn dot_export() {
        let dot = build_graph(Pair::orthogonal(3).unwrap()).export_dot();
        assert!(dot.contains("\"(1,2)\" -> \"id\" [label=\"1\", style=dashed];"));
        assert_eq!(dot.matches("rank=same").count(), 3);
        assert!(!dot.contains("none"));
        let dot = build_graph(Pair::symplectic(4).unwrap()).export_dot();
        assert!(!dot.contains("dashed"));
        assert_eq!(dot.matches(" -> ").count(), 2);
        let json = build_graph(Pair::symplectic(4).unwrap()).to_json();
        assert_eq!(json["nodes"].as_array().unwrap().len(), 3);
        assert_eq!(json["pair"], "sp");
    }
}
