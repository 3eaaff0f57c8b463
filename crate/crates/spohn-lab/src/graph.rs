//! Undirected dependency graphs on the players.
//!
//! Vertices are 0-based in the Rust API and 1-based in JSON and printed output.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;
pub const GLOBAL_MARKOV_LIMIT: usize = 12;

/// Set of vertices as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet(0)
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn range(n: usize) -> Self {
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn from_vertices(vs: impl IntoIterator<Item = usize>) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn union(self, o: Self) -> Self {
        VertexSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        VertexSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        VertexSet(self.0 & !o.0)
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// 1-based labels.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|v| v + 1).collect()
    }

    /// All subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == full { None } else { Some((s.wrapping_sub(full)) & full) };
            Some(VertexSet(s))
        })
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Conditional independence statement A ⊥ B | C, normalized with min(A) < min(B).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CIStatement {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
}

impl CIStatement {
    pub fn new(a: VertexSet, b: VertexSet, c: VertexSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::Invalid("A and B must be non-empty".into()));
        }
        if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return Err(Error::Overlap);
        }
        Ok(if a.min() < b.min() { CIStatement { a, b, c } } else { CIStatement { a: b, b: a, c } })
    }

    pub fn to_json(&self) -> Value {
        json!({"A": self.a.labels(), "B": self.b.labels(), "C": self.c.labels()})
    }
}

impl fmt::Display for CIStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} _||_ {} | {}", self.a, self.b, self.c)
    }
}

/// Clique sizes n_1 ≤ … ≤ n_k with their vertex blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<VertexSet>,
}

impl Partition {
    /// Blocks of consecutive players after sorting the sizes ascending.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidPartition("sizes must be positive and non-empty".into()));
        }
        let mut sorted = sizes.to_vec();
        sorted.sort_unstable();
        let n: usize = sorted.iter().sum();
        if n > MAX_VERTICES {
            return Err(Error::InvalidPartition(format!("{n} players exceeds {MAX_VERTICES}")));
        }
        let mut start = 0;
        let blocks = sorted
            .iter()
            .map(|&s| {
                let b = VertexSet::from_vertices(start..start + s);
                start += s;
                b
            })
            .collect();
        Ok(Partition { blocks })
    }

    /// Blocks sorted by (size, smallest vertex); they must partition 0..n.
    pub fn from_blocks(mut blocks: Vec<VertexSet>) -> Result<Self> {
        let mut seen = VertexSet::empty();
        for b in &blocks {
            if b.is_empty() || !b.is_disjoint(seen) {
                return Err(Error::InvalidPartition("blocks must be non-empty and disjoint".into()));
            }
            seen = seen.union(*b);
        }
        if seen != VertexSet::range(seen.len()) {
            return Err(Error::InvalidPartition("blocks do not cover 1..n".into()));
        }
        blocks.sort_by_key(|b| (b.len(), VertexSet::min(*b)));
        Ok(Partition { blocks })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let sizes: Vec<usize> = text
            .split(',')
            .map(|s| s.trim().parse::<usize>().map_err(|_| Error::InvalidPartition(format!("bad size `{s}`"))))
            .collect::<Result<_>>()?;
        Self::from_sizes(&sizes)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.len()).collect()
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn players(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn block_of(&self, v: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.contains(v))
    }

    /// The disjoint union of complete graphs on the blocks.
    pub fn graph(&self) -> Graph {
        let mut g = Graph::empty(self.players());
        for b in &self.blocks {
            let vs = b.to_vec();
            for (k, &u) in vs.iter().enumerate() {
                for &w in &vs[k + 1..] {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Simple undirected graph with bitset adjacency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.adj[u] = VertexSet::range(n).0 & !(1 << u);
        }
        g
    }

    /// 0-based edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!("at most {MAX_VERTICES} vertices")));
        }
        let mut g = Self::empty(n);
        for &(u, w) in edges {
            if u >= n || w >= n {
                return Err(Error::InvalidGraph(format!("edge ({}, {}) out of range", u + 1, w + 1)));
            }
            if u == w {
                return Err(Error::InvalidGraph(format!("loop at vertex {}", u + 1)));
            }
            g.add_edge(u, w);
        }
        Ok(g)
    }

    /// Edges given with 1-based labels.
    pub fn from_labeled_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if edges.iter().any(|&(u, w)| u == 0 || w == 0) {
            return Err(Error::InvalidGraph("vertex labels start at 1".into()));
        }
        Self::from_edges(n, &edges.iter().map(|&(u, w)| (u - 1, w - 1)).collect::<Vec<_>>())
    }

    /// Each possible edge present independently with probability `p`.
    pub fn random<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for w in u + 1..n {
                if rng.random_bool(p) {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, w: usize) {
        self.adj[u] |= 1 << w;
        self.adj[w] |= 1 << u;
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::range(self.n)
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.adj[u] >> w & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    /// 0-based edges with u < w, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for w in VertexSet(self.adj[u]).iter().filter(|&w| w > u) {
                out.push((u, w));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn is_isolated(&self, v: usize) -> bool {
        self.adj[v] == 0
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| s.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v)))
    }

    /// Vertices reachable from `from` without entering `blocked`.
    pub fn reachable(&self, from: VertexSet, blocked: VertexSet) -> VertexSet {
        let mut seen = from.difference(blocked);
        let mut queue: VecDeque<usize> = seen.iter().collect();
        while let Some(v) = queue.pop_front() {
            let next = VertexSet(self.adj[v]).difference(blocked).difference(seen);
            for w in next.iter() {
                queue.push_back(w);
            }
            seen = seen.union(next);
        }
        seen
    }

    /// Whether `c` separates every vertex of `a` from every vertex of `b`.
    pub fn separates(&self, a: VertexSet, b: VertexSet, c: VertexSet) -> Result<bool> {
        if !a.is_disjoint(b) || !a.is_disjoint(c) || !b.is_disjoint(c) {
            return Err(Error::Overlap);
        }
        if !a.union(b).union(c).is_subset(self.vertices()) {
            return Err(Error::InvalidGraph("subset contains a vertex outside the graph".into()));
        }
        Ok(self.reachable(a, c).is_disjoint(b))
    }

    /// All normalized statements A ⊥ B | C with C separating A from B.
    pub fn global_markov(&self) -> Result<BTreeSet<CIStatement>> {
        if self.n > GLOBAL_MARKOV_LIMIT {
            return Err(Error::TooManyVertices { n: self.n, limit: GLOBAL_MARKOV_LIMIT });
        }
        let all = self.vertices();
        let mut out = BTreeSet::new();
        for c in all.subsets() {
            let rest = all.difference(c);
            for a in rest.subsets().filter(|s| !s.is_empty()) {
                let free = rest.difference(self.reachable(a, c));
                let amin = a.min().expect("non-empty");
                // normalization: every vertex of B above min(A)
                let free = VertexSet(free.0 & !((1u64 << (amin + 1)) - 1));
                for b in free.subsets().filter(|s| !s.is_empty()) {
                    out.insert(CIStatement { a, b, c });
                }
            }
        }
        Ok(out)
    }

    /// a ⊥ b | rest for each non-edge.
    pub fn pairwise_markov(&self) -> BTreeSet<CIStatement> {
        let all = self.vertices();
        let mut out = BTreeSet::new();
        for u in 0..self.n {
            for w in u + 1..self.n {
                if !self.has_edge(u, w) {
                    let a = VertexSet::singleton(u);
                    let b = VertexSet::singleton(w);
                    out.insert(CIStatement { a, b, c: all.difference(a).difference(b) });
                }
            }
        }
        out
    }

    /// Maximal cliques by Bron–Kerbosch with pivoting, sorted by vertex list.
    pub fn maximal_cliques(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.bron_kerbosch(VertexSet::empty(), self.vertices(), VertexSet::empty(), &mut out);
        out.sort_by_key(|c| c.to_vec());
        out
    }

    fn bron_kerbosch(&self, r: VertexSet, p: VertexSet, x: VertexSet, out: &mut Vec<VertexSet>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.neighbors(u)).len())
            .expect("p ∪ x non-empty");
        let (mut p, mut x) = (p, x);
        for v in p.difference(self.neighbors(pivot)).iter() {
            let nv = self.neighbors(v);
            self.bron_kerbosch(r.union(VertexSet::singleton(v)), p.intersection(nv), x.intersection(nv), out);
            p = p.difference(VertexSet::singleton(v));
            x = x.union(VertexSet::singleton(v));
        }
    }

    /// Every complete subgraph with at least one vertex.
    pub fn clique_faces(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        for v in 0..self.n {
            let cand = VertexSet(self.adj[v] & !((1u64 << (v + 1)) - 1));
            self.extend_faces(VertexSet::singleton(v), cand, &mut out);
        }
        out
    }

    fn extend_faces(&self, face: VertexSet, cand: VertexSet, out: &mut Vec<VertexSet>) {
        out.push(face);
        for w in cand.iter() {
            let next = VertexSet(cand.0 & self.adj[w] & !((1u64 << (w + 1)) - 1));
            self.extend_faces(face.union(VertexSet::singleton(w)), next, out);
        }
    }

    /// (number of vertices, number of complete subgraphs with ≥ 2 vertices).
    pub fn clique_complex_face_counts(&self) -> (usize, usize) {
        let faces = self.clique_faces();
        (self.n, faces.iter().filter(|f| f.len() >= 2).count())
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.min() {
            let comp = self.reachable(VertexSet::singleton(v), VertexSet::empty());
            out.push(comp);
            left = left.difference(comp);
        }
        out
    }

    /// The component containing `v`.
    pub fn component_of(&self, v: usize) -> VertexSet {
        self.reachable(VertexSet::singleton(v), VertexSet::empty())
    }

    pub fn is_disjoint_cliques(&self) -> Option<Partition> {
        let comps = self.components();
        if comps.iter().all(|&c| self.is_clique(c)) {
            Partition::from_blocks(comps).ok()
        } else {
            None
        }
    }

    /// Edge-set containment `self ⊆ other`.
    pub fn is_subgraph(&self, other: &Graph) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::InvalidGraph(format!("vertex counts differ ({} vs {})", self.n, other.n)));
        }
        Ok(self.adj.iter().zip(&other.adj).all(|(a, b)| a & !b == 0))
    }

    /// All spanning subgraphs, by edge subset.
    pub fn spanning_subgraphs(&self) -> Vec<Graph> {
        let edges = self.edges();
        assert!(edges.len() <= 20, "too many edges to enumerate subgraphs");
        (0u32..1 << edges.len())
            .map(|mask| {
                let mut g = Graph::empty(self.n);
                for (k, &(u, w)) in edges.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        g.add_edge(u, w);
                    }
                }
                g
            })
            .collect()
    }

    /// Vertex `v` of the result is vertex `perm[v]` of `self`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut inv = vec![0; self.n];
        for (v, &q) in perm.iter().enumerate() {
            inv[q] = v;
        }
        let mut g = Graph::empty(self.n);
        for (u, w) in self.edges() {
            g.add_edge(inv[u], inv[w]);
        }
        g
    }

    /// One representative per isomorphism class on `n ≤ 5` vertices, ordered by
    /// edge count then canonical edge mask.
    pub fn isomorphism_classes(n: usize) -> Vec<Graph> {
        assert!(n <= 5, "isomorphism-class enumeration is limited to 5 vertices");
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |w| (u, w))).collect();
        let perms = permutations(n);
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for mask in 0u32..1 << pairs.len() {
            let canon = perms
                .iter()
                .map(|p| {
                    pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).fold(0u32, |m, (_, &(u, w))| {
                        let (a, b) = (p[u].min(p[w]), p[u].max(p[w]));
                        m | 1 << pairs.iter().position(|&e| e == (a, b)).expect("pair exists")
                    })
                })
                .min()
                .expect("non-empty");
            if seen.insert((canon.count_ones(), canon)) {
                let edges: Vec<(usize, usize)> =
                    pairs.iter().enumerate().filter(|(k, _)| canon >> k & 1 == 1).map(|(_, &e)| e).collect();
                reps.push(((canon.count_ones(), canon), Graph::from_edges(n, &edges).expect("valid")));
            }
        }
        reps.sort_by_key(|r| r.0);
        reps.into_iter().map(|r| r.1).collect()
    }

    pub fn from_json(v: &Value) -> Result<Graph> {
        let n = v
            .get("vertices")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::InvalidGraph("missing integer field `vertices`".into()))? as usize;
        let edges = v
            .get("edges")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidGraph("missing array field `edges`".into()))?;
        let mut list = Vec::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            let pair = e
                .as_array()
                .filter(|a| a.len() == 2)
                .and_then(|a| Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize)))
                .ok_or_else(|| Error::InvalidGraph(format!("edges[{k}] is not a pair of vertex labels")))?;
            list.push(pair);
        }
        Graph::from_labeled_edges(n, &list)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.n,
            "edges": self.edges().iter().map(|&(u, w)| [u + 1, w + 1]).collect::<Vec<_>>(),
        })
    }

    /// Named graphs: `line4`, `cycle4`, `figure2`, `g4-example`, and `empty:N`,
    /// `complete:N`, `line:N`, `cycle:N`.
    pub fn builtin(name: &str) -> Option<Graph> {
        let labeled = |n: usize, e: &[(usize, usize)]| Graph::from_labeled_edges(n, e).ok();
        match name {
            "line4" => labeled(4, &[(1, 2), (2, 3), (3, 4)]),
            "cycle4" => labeled(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]),
            "figure2" => labeled(
                7,
                &[(1, 2), (1, 3), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5), (2, 6), (3, 6), (5, 6), (5, 7), (6, 7)],
            ),
            "g4-example" => labeled(4, &[(1, 2), (3, 4)]),
            _ => {
                let (kind, n) = name.split_once(':')?;
                let n: usize = n.parse().ok().filter(|&n| n >= 1 && n <= MAX_VERTICES)?;
                match kind {
                    "empty" => Some(Graph::empty(n)),
                    "complete" => Some(Graph::complete(n)),
                    "line" => Graph::from_edges(n, &(1..n).map(|v| (v - 1, v)).collect::<Vec<_>>()).ok(),
                    "cycle" if n >= 3 => {
                        Graph::from_edges(n, &(0..n).map(|v| (v, (v + 1) % n)).collect::<Vec<_>>()).ok()
                    }
                    _ => None,
                }
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(labels: &[usize]) -> VertexSet {
        VertexSet::from_vertices(labels.iter().map(|v| v - 1))
    }

    fn stmt(a: &[usize], b: &[usize], c: &[usize]) -> CIStatement {
        CIStatement::new(set(a), set(b), set(c)).unwrap()
    }

    #[test]
    fn separation_examples() {
        let line = Graph::builtin("line4").unwrap();
        assert!(line.separates(set(&[1]), set(&[3, 4]), set(&[2])).unwrap());
        let k4 = Graph::complete(4);
        assert!(!k4.separates(set(&[1]), set(&[2]), set(&[3, 4])).unwrap());
        let e = Graph::empty(3);
        assert!(e.separates(set(&[1]), set(&[3]), VertexSet::empty()).unwrap());
        assert!(matches!(line.separates(set(&[1]), set(&[1, 2]), set(&[3])), Err(Error::Overlap)));
    }

    #[test]
    fn global_markov_examples() {
        let e2 = Graph::empty(2).global_markov().unwrap();
        assert_eq!(e2.into_iter().collect::<Vec<_>>(), vec![stmt(&[1], &[2], &[])]);
        assert!(Graph::complete(5).global_markov().unwrap().is_empty());
        let line = Graph::builtin("line4").unwrap().global_markov().unwrap();
        assert!(line.contains(&stmt(&[1], &[3, 4], &[2])));
        assert!(line.contains(&stmt(&[1, 2], &[4], &[3])));
        assert!(matches!(Graph::empty(13).global_markov(), Err(Error::TooManyVertices { .. })));
    }

    #[test]
    fn pairwise_markov_examples() {
        let line: Vec<_> = Graph::builtin("line4").unwrap().pairwise_markov().into_iter().collect();
        let mut expected = vec![stmt(&[1], &[4], &[2, 3]), stmt(&[1], &[3], &[2, 4]), stmt(&[2], &[4], &[1, 3])];
        expected.sort();
        assert_eq!(line, expected);
        assert!(Graph::complete(4).pairwise_markov().is_empty());
        assert_eq!(Graph::empty(5).pairwise_markov().len(), 10);
    }

    #[test]
    fn cliques_examples() {
        assert_eq!(Graph::empty(3).maximal_cliques(), vec![set(&[1]), set(&[2]), set(&[3])]);
        let f2 = Graph::builtin("figure2").unwrap().maximal_cliques();
        assert_eq!(f2, vec![set(&[1, 2, 3]), set(&[2, 3, 4, 5]), set(&[2, 3, 5, 6]), set(&[5, 6, 7])]);
        let c4 = Graph::builtin("cycle4").unwrap().maximal_cliques();
        assert_eq!(c4, vec![set(&[1, 2]), set(&[1, 4]), set(&[2, 3]), set(&[3, 4])]);
    }

    #[test]
    fn face_counts() {
        assert_eq!(Graph::builtin("line4").unwrap().clique_complex_face_counts(), (4, 3));
        assert_eq!(Graph::complete(3).clique_complex_face_counts(), (3, 4));
        let (f0, f) = Graph::builtin("figure2").unwrap().clique_complex_face_counts();
        assert_eq!(f0 + f, 31);
    }

    #[test]
    fn partitions() {
        let p = Graph::builtin("g4-example").unwrap().is_disjoint_cliques().unwrap();
        assert_eq!(p.sizes(), vec![2, 2]);
        assert_eq!(Graph::empty(3).is_disjoint_cliques().unwrap().sizes(), vec![1, 1, 1]);
        assert!(Graph::builtin("line4").unwrap().is_disjoint_cliques().is_none());
        let q = Partition::parse("2,1,1").unwrap();
        assert_eq!(q.sizes(), vec![1, 1, 2]);
        assert_eq!(q.graph().edges(), vec![(2, 3)]);
    }

    #[test]
    fn subgraph_relation() {
        let g = Graph::builtin("cycle4").unwrap();
        assert!(g.is_subgraph(&g).unwrap());
        assert!(Graph::empty(4).is_subgraph(&Graph::complete(4)).unwrap());
        let a = Graph::from_labeled_edges(3, &[(1, 2)]).unwrap();
        let b = Graph::from_labeled_edges(3, &[(1, 3)]).unwrap();
        assert!(!a.is_subgraph(&b).unwrap());
        assert!(a.is_subgraph(&Graph::empty(4)).is_err());
    }

    #[test]
    fn isomorphism_class_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| Graph::isomorphism_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11]);
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::builtin("figure2").unwrap();
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        let bad: Value = serde_json::from_str(r#"{"vertices":3,"edges":[[1,1]]}"#).unwrap();
        assert!(Graph::from_json(&bad).is_err());
    }
}
