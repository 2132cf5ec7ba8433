//! Undirected simple graphs on vertices `1..=n` and the combinatorics this
//! toolkit runs on: block decomposition, unique shortest paths, central
//! (cut) vertices, 1-clique partitions, separations, and contraction of a
//! block graph onto the star around a central vertex.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph. Vertices are `1..=n`; edges are stored as ordered
/// pairs `(i, j)` with `i < j`. No loops, no multi-edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<BTreeSet<usize>>,
}

/// Wire shape: `{"n": 4, "edges": [[1,2],[2,3]]}`.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphRepr { n: self.n, edges: self.edges.iter().copied().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GraphRepr::deserialize(d)?;
        Graph::new(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}

impl Graph {
    /// Builds a graph, rejecting out-of-range endpoints and loops. Duplicate
    /// edges (in either orientation) collapse silently.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adj = vec![BTreeSet::new(); n + 1];
        for &(a, b) in edges {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a},{b}) out of range for n={n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            set.insert((i, j));
            adj[i].insert(j);
            adj[j].insert(i);
        }
        Ok(Graph { n, edges: set, adj })
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                edges.push((i, j));
            }
        }
        Graph::new(n, &edges).expect("complete graph is always valid")
    }

    /// Path graph `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::new(n, &edges).expect("path graph is always valid")
    }

    /// Cycle graph on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        edges.push((1, n));
        Graph::new(n, &edges).expect("cycle graph is always valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as ordered pairs `(i, j)`, `i < j`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges.contains(&(i, j))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph JSON: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serialization cannot fail")
    }

    /// Connected components as sorted vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<BTreeSet<usize>> {
        self.components_avoiding(&BTreeSet::new())
    }

    /// Connected components of the induced subgraph on `V \ avoid`.
    pub fn components_avoiding(&self, avoid: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let mut seen = vec![false; self.n + 1];
        for &v in avoid {
            seen[v] = true;
        }
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                comp.insert(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Induced subgraph on `keep`, relabeled to `1..=keep.len()` in ascending
    /// label order. Returns the subgraph and the new-to-old label table
    /// (index 0 unused).
    pub fn induced(&self, keep: &BTreeSet<usize>) -> (Graph, Vec<usize>) {
        let labels: Vec<usize> = std::iter::once(0).chain(keep.iter().copied()).collect();
        let back: HashMap<usize, usize> =
            keep.iter().enumerate().map(|(idx, &v)| (v, idx + 1)).collect();
        let edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|(a, b)| keep.contains(a) && keep.contains(b))
            .map(|&(a, b)| (back[&a], back[&b]))
            .collect();
        let g = Graph::new(keep.len(), &edges).expect("induced subgraph is valid");
        (g, labels)
    }

    pub fn is_clique_on(&self, set: &BTreeSet<usize>) -> bool {
        let vs: Vec<usize> = set.iter().copied().collect();
        for (idx, &a) in vs.iter().enumerate() {
            for &b in &vs[idx + 1..] {
                if !self.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// Maximal 2-connected pieces (blocks) as vertex sets, via Hopcroft–Tarjan
/// with an explicit edge stack. A bridge forms a 2-vertex block; isolated
/// vertices contribute nothing. Output is sorted by smallest vertex, then
/// lexicographically.
pub fn biconnected_components(g: &Graph) -> Vec<BTreeSet<usize>> {
    struct Dfs<'a> {
        g: &'a Graph,
        num: Vec<usize>,
        low: Vec<usize>,
        clock: usize,
        estack: Vec<(usize, usize)>,
        blocks: Vec<BTreeSet<usize>>,
    }
    impl Dfs<'_> {
        fn run(&mut self, v: usize, parent: usize) {
            self.clock += 1;
            self.num[v] = self.clock;
            self.low[v] = self.clock;
            for &w in self.g.neighbors(v) {
                if self.num[w] == 0 {
                    self.estack.push((v, w));
                    self.run(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.num[v] {
                        // v separates w's subtree: everything stacked since
                        // (v, w) is one block.
                        let mut block = BTreeSet::new();
                        loop {
                            let (a, b) = self.estack.pop().expect("tree edge is on the stack");
                            block.insert(a);
                            block.insert(b);
                            if (a, b) == (v, w) {
                                break;
                            }
                        }
                        self.blocks.push(block);
                    }
                } else if w != parent && self.num[w] < self.num[v] {
                    self.estack.push((v, w));
                    self.low[v] = self.low[v].min(self.num[w]);
                }
            }
        }
    }

    let mut dfs = Dfs {
        g,
        num: vec![0; g.n() + 1],
        low: vec![0; g.n() + 1],
        clock: 0,
        estack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 1..=g.n() {
        if dfs.num[v] == 0 {
            dfs.run(v, 0);
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort();
    blocks
}

/// A graph is a block graph when every block is a clique; checked per
/// component, so a disconnected union of block graphs qualifies.
pub fn is_block_graph(g: &Graph) -> bool {
    biconnected_components(g).iter().all(|b| g.is_clique_on(b))
}

/// The unique shortest path from `i` to `j`, inclusive, as a vertex list.
/// `shortest_path(g, i, i)` is `[i]`. Fails with `NotConnected` when no path
/// exists and `NotUnique` when two distinct geodesics tie — the defining
/// obstruction for non-block graphs.
pub fn shortest_path(g: &Graph, i: usize, j: usize) -> Result<Vec<usize>> {
    if i == 0 || j == 0 || i > g.n() || j > g.n() {
        return Err(Error::InvalidGraph(format!(
            "vertex pair ({i},{j}) out of range for n={}",
            g.n()
        )));
    }
    if i == j {
        return Ok(vec![i]);
    }
    // BFS layering plus geodesic counting; counts saturate, which is harmless
    // because only "exactly one" matters.
    let mut dist: Vec<Option<usize>> = vec![None; g.n() + 1];
    let mut count: Vec<u64> = vec![0; g.n() + 1];
    let mut order = Vec::new();
    dist[i] = Some(0);
    count[i] = 1;
    let mut queue = VecDeque::from([i]);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            match dist[w] {
                None => {
                    dist[w] = Some(dist[v].unwrap() + 1);
                    count[w] = count[v];
                    queue.push_back(w);
                }
                Some(dw) if dw == dist[v].unwrap() + 1 => {
                    count[w] = count[w].saturating_add(count[v]);
                }
                _ => {}
            }
        }
    }
    if dist[j].is_none() {
        return Err(Error::NotConnected(format!("no path between {i} and {j}")));
    }
    if count[j] != 1 {
        return Err(Error::NotUnique { i, j });
    }
    // With a unique geodesic every vertex on it has exactly one predecessor
    // at the previous level; walk back from j.
    let mut path = vec![j];
    let mut cur = j;
    while cur != i {
        let d = dist[cur].unwrap();
        let prev = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&u| dist[u] == Some(d - 1) && count[u] > 0 && count[u] <= count[cur])
            .expect("unique geodesic has a predecessor");
        path.push(prev);
        cur = prev;
    }
    path.reverse();
    Ok(path)
}

/// Central vertices = cut vertices, found by the removal test: deleting a
/// central vertex increases the number of connected components.
pub fn central_vertices(g: &Graph) -> Vec<usize> {
    let base = g.components().len();
    (1..=g.n())
        .filter(|&v| {
            // Strictly more components after removal. An isolated vertex
            // loses its own singleton component, so it never qualifies.
            let avoid = BTreeSet::from([v]);
            g.components_avoiding(&avoid).len() > base
        })
        .collect()
}

/// One way to split a connected graph at a central vertex `c`: the components
/// of `g - c` are distributed into two nonempty sides `a` and `b` (with
/// `min(a) < min(b)`), and `c` itself belongs to neither.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct OneCliquePartition {
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
    pub c: usize,
}

/// All 1-clique partitions of a connected graph: for every central vertex
/// `c`, every 2-grouping of the components of `g - c`. A graph with no
/// central vertex has none.
pub fn one_clique_partitions(g: &Graph) -> Result<Vec<OneCliquePartition>> {
    if !g.is_connected() {
        return Err(Error::NotConnected("1-clique partitions need a connected graph".into()));
    }
    let mut out = Vec::new();
    for c in central_vertices(g) {
        let mut avoid = BTreeSet::new();
        avoid.insert(c);
        let comps = g.components_avoiding(&avoid);
        let k = comps.len();
        debug_assert!(k >= 2, "central vertex must split the graph");
        // Component 0 always sits on the a-side; the rest choose sides. This
        // enumerates each unordered split exactly once, and keeps min(a) global.
        for mask in 0..(1u32 << (k - 1)) {
            if mask == (1 << (k - 1)) - 1 {
                continue; // b-side would be empty
            }
            let mut a = comps[0].clone();
            let mut b = BTreeSet::new();
            for (idx, comp) in comps.iter().enumerate().skip(1) {
                if mask >> (idx - 1) & 1 == 1 {
                    a.extend(comp.iter().copied());
                } else {
                    b.extend(comp.iter().copied());
                }
            }
            out.push(OneCliquePartition { a, b, c });
        }
    }
    out.sort();
    Ok(out)
}

/// A separation `(a, b, c)`: the vertex set splits into disjoint `a`, `b`,
/// `c` with `a`, `b` nonempty and every `a`-to-`b` path meeting `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Separation {
    pub a: BTreeSet<usize>,
    pub b: BTreeSet<usize>,
    pub c: BTreeSet<usize>,
}

/// Exhaustively enumerates separations with `|c| <= max_c`, canonicalized so
/// `min(a) < min(b)`, sorted by `(c, a)`. Exponential by nature, so guarded
/// to `n <= 12`.
pub fn separations(g: &Graph, max_c: usize) -> Result<Vec<Separation>> {
    const LIMIT: usize = 12;
    if g.n() > LIMIT {
        return Err(Error::SizeLimit { what: "separation enumeration", limit: LIMIT });
    }
    if !g.is_connected() {
        return Err(Error::NotConnected("separations are enumerated on connected graphs".into()));
    }
    let n = g.n();
    let mut out = Vec::new();
    // Ternary assignment per vertex: 0 -> a, 1 -> b, 2 -> c.
    let mut assign = vec![0u8; n + 1];
    loop {
        let mut a = BTreeSet::new();
        let mut b = BTreeSet::new();
        let mut c = BTreeSet::new();
        for v in 1..=n {
            match assign[v] {
                0 => a.insert(v),
                1 => b.insert(v),
                _ => c.insert(v),
            };
        }
        if !a.is_empty()
            && !b.is_empty()
            && c.len() <= max_c
            && a.first() < b.first()
            && separates(g, &a, &b, &c)
        {
            out.push(Separation { a, b, c });
        }
        // Advance the ternary counter.
        let mut v = 1;
        loop {
            if v > n {
                out.sort_by(|x, y| (&x.c, &x.a).cmp(&(&y.c, &y.a)));
                return Ok(out);
            }
            if assign[v] < 2 {
                assign[v] += 1;
                break;
            }
            assign[v] = 0;
            v += 1;
        }
    }
}

fn separates(g: &Graph, a: &BTreeSet<usize>, b: &BTreeSet<usize>, c: &BTreeSet<usize>) -> bool {
    g.components_avoiding(c)
        .iter()
        .all(|comp| !(comp.intersection(a).next().is_some() && comp.intersection(b).next().is_some()))
}

/// Contraction of a connected block graph onto the star of blocks around a
/// central vertex `c`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub center: usize,
    /// `rho[v]` for `v in 1..=n` (index 0 unused): `c` and its neighbors are
    /// fixed; any other vertex maps to the neighbor of `c` its geodesic to
    /// `c` passes through.
    pub rho: Vec<usize>,
    /// `{c} ∪ N(c)` in original labels.
    pub star_vertices: BTreeSet<usize>,
    /// Induced subgraph on `star_vertices`, relabeled `1..=m`.
    pub star: Graph,
    /// New-to-old labels for `star` (index 0 unused).
    pub star_labels: Vec<usize>,
}

/// Collapses each branch hanging off the central vertex `c` onto the
/// neighbor of `c` it attaches through. Requires a connected block graph and
/// a central `c` (a degree-positive cut vertex).
pub fn contract_to_center(g: &Graph, c: usize) -> Result<Contraction> {
    if !g.is_connected() {
        return Err(Error::NotConnected("contraction needs a connected graph".into()));
    }
    if !is_block_graph(g) {
        return Err(Error::InvalidGraph("contraction is defined for block graphs".into()));
    }
    if !central_vertices(g).contains(&c) {
        return Err(Error::NotCentral(c));
    }
    let mut rho = vec![0; g.n() + 1];
    for v in 1..=g.n() {
        rho[v] = if v == c || g.has_edge(v, c) {
            v
        } else {
            let path = shortest_path(g, v, c)?;
            path[path.len() - 2]
        };
    }
    let mut star_vertices: BTreeSet<usize> = g.neighbors(c).clone();
    star_vertices.insert(c);
    let (star, star_labels) = g.induced(&star_vertices);
    Ok(Contraction { center: c, rho, star_vertices, star, star_labels })
}
