//! Graphs of polynomial systems, maximum cardinality search, chordal
//! completion along the variable order and elimination trees.
//!
//! Vertex `i` is variable `x_i`. The elimination order is always the index
//! order, so vertex 0 is eliminated first.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::groebner::GeneratorSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("start vertices do not form a clique")]
    StartNotClique,
    #[error("vertex {0} repeated in the start sequence")]
    RepeatedStart(usize),
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(self.insert(u, v))
    }

    fn insert(&mut self, u: usize, v: usize) -> bool {
        self.adj[v].insert(u);
        self.adj[u].insert(v)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(&v))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, a) in self.adj.iter().enumerate() {
            out.extend(a.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.n() == other.n() && self.edges().iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn is_clique(&self, vs: &[usize]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(k, &u)| vs[k + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    /// Whether `order` (the k-th entry is eliminated k-th) is a perfect
    /// elimination ordering: each vertex's later neighbours form a clique.
    pub fn is_peo_order(&self, order: &[usize]) -> bool {
        let n = self.n();
        if order.len() != n {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (k, &v) in order.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return false;
            }
            pos[v] = k;
        }
        order.iter().all(|&v| {
            let later: Vec<usize> = self.adj[v].iter().copied().filter(|&w| pos[w] > pos[v]).collect();
            self.is_clique(&later)
        })
    }

    /// The identity order `0, 1, ..., n-1` is a perfect elimination ordering.
    pub fn is_perfect_elimination_ordering(&self) -> bool {
        let id: Vec<usize> = (0..self.n()).collect();
        self.is_peo_order(&id)
    }

    /// Renames vertex `perm[k]` to `k`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut inv = vec![0; self.n()];
        for (k, &v) in perm.iter().enumerate() {
            inv[v] = k;
        }
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.insert(inv[u], inv[v]);
        }
        g
    }

    /// Parses `n m` followed by `m` lines `u v`; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let bad = |line: usize, message: &str| GraphError::Parse {
            line,
            message: message.to_string(),
        };
        let nums = |line: usize, l: &str| -> Result<(usize, usize), GraphError> {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(bad(line, "expected two integers"));
            }
            let a = parts[0].parse().map_err(|_| bad(line, "not an integer"))?;
            let b = parts[1].parse().map_err(|_| bad(line, "not an integer"))?;
            Ok((a, b))
        };
        let (hl, header) = lines.next().ok_or_else(|| bad(1, "missing header"))?;
        let (n, m) = nums(hl, header)?;
        let mut g = Graph::new(n);
        let mut count = 0;
        for (line, l) in lines {
            let (u, v) = nums(line, l)?;
            g.add_edge(u, v).map_err(|e| bad(line, &e.to_string()))?;
            count += 1;
        }
        if count != m {
            return Err(bad(hl, &format!("header announces {m} edges, found {count}")));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let edges = self.edges();
        let mut s = format!("{} {}\n", self.n(), edges.len());
        for (u, v) in edges {
            writeln!(s, "{u} {v}").expect("write to string");
        }
        s
    }
}

/// One vertex per variable, an edge whenever two variables share a generator.
pub fn graph_of_system(f: &GeneratorSet) -> Graph {
    let mut g = Graph::new(f.ring().nvars());
    for p in f.polys() {
        let vs: Vec<usize> = p.support_vars().into_iter().collect();
        for (k, &u) in vs.iter().enumerate() {
            for &v in &vs[k + 1..] {
                g.insert(u, v);
            }
        }
    }
    g
}

/// Maximum cardinality search. The sequence starts with `start` in the
/// given order; afterwards the unvisited vertex with the most visited
/// neighbours comes next, ties broken by smallest index. On a chordal graph
/// the reversed sequence is a perfect elimination ordering.
pub fn mcs(g: &Graph, start: &[usize]) -> Result<Vec<usize>, GraphError> {
    let n = g.n();
    let mut visited = vec![false; n];
    for &v in start {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
        if visited[v] {
            return Err(GraphError::RepeatedStart(v));
        }
        visited[v] = true;
    }
    if !g.is_clique(start) {
        return Err(GraphError::StartNotClique);
    }
    let mut weight = vec![0usize; n];
    for &v in start {
        for &w in g.neighbors(v) {
            weight[w] += 1;
        }
    }
    let mut seq = start.to_vec();
    while seq.len() < n {
        let v = (0..n)
            .filter(|&v| !visited[v])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex remains");
        visited[v] = true;
        for &w in g.neighbors(v) {
            weight[w] += 1;
        }
        seq.push(v);
    }
    Ok(seq)
}

/// Greedy minimum-fill elimination order (ties: minimum degree, then
/// smallest index). Entry `k` is the vertex to become `x_k`.
pub fn heuristic_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut adj = g.adj.clone();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let fill = |adj: &[BTreeSet<usize>], v: usize| -> usize {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (fill(&adj, v), adj[v].len(), v))
            .expect("vertex remains");
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (k, &a) in nb.iter().enumerate() {
            for &b in &nb[k + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nb {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive[v] = false;
        order.push(v);
    }
    order
}

/// A graph made chordal along the index order, with the cliques
/// `X_l = {l} ∪ {later neighbours of l}` and the elimination forest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChordalContext {
    pub graph: Graph,
    pub cliques: Vec<BTreeSet<usize>>,
    /// `parent[l]` is the nearest later neighbour of `l`; `None` for roots.
    pub parent: Vec<Option<usize>>,
    pub fill_edges: Vec<(usize, usize)>,
}

/// Runs the elimination game in index order, recording fill edges.
pub fn complete_with_order(g: &Graph) -> ChordalContext {
    let n = g.n();
    let mut graph = g.clone();
    let mut fill_edges = Vec::new();
    for l in 0..n {
        let later: Vec<usize> = graph.adj[l].range(l + 1..).copied().collect();
        for (k, &a) in later.iter().enumerate() {
            for &b in &later[k + 1..] {
                if graph.insert(a, b) {
                    fill_edges.push((a, b));
                }
            }
        }
    }
    fill_edges.sort_unstable();
    ChordalContext::from_chordal(graph, fill_edges)
}

impl ChordalContext {
    fn from_chordal(graph: Graph, fill_edges: Vec<(usize, usize)>) -> Self {
        let n = graph.n();
        let cliques: Vec<BTreeSet<usize>> = (0..n)
            .map(|l| {
                let mut c: BTreeSet<usize> = graph.adj[l].range(l + 1..).copied().collect();
                c.insert(l);
                c
            })
            .collect();
        let parent = (0..n)
            .map(|l| graph.adj[l].range(l + 1..).next().copied())
            .collect();
        ChordalContext {
            graph,
            cliques,
            parent,
            fill_edges,
        }
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn clique(&self, l: usize) -> &BTreeSet<usize> {
        &self.cliques[l]
    }

    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..v).filter(|&c| self.parent[c] == Some(v)).collect()
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.parent[v].is_none()).collect()
    }

    /// Distance from each vertex to the root of its tree.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.n();
        let mut depth = vec![0; n];
        for v in (0..n).rev() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        depth
    }

    /// Closed under taking parents in the elimination forest.
    pub fn is_lower_set(&self, set: &BTreeSet<usize>) -> bool {
        set.iter()
            .all(|&v| v < self.n() && self.parent[v].is_none_or(|p| set.contains(&p)))
    }

    /// Indices `l` whose clique `X_l` is not contained in another clique.
    pub fn maximal_cliques(&self) -> Vec<usize> {
        (0..self.n())
            .filter(|&l| {
                !(0..self.n()).any(|k| k != l && self.cliques[l].is_subset(&self.cliques[k]))
            })
            .collect()
    }

    pub fn clique_number(&self) -> usize {
        self.cliques.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

pub fn elimination_tree(ctx: &ChordalContext) -> Vec<Option<usize>> {
    ctx.parent.clone()
}

pub fn is_lower_set(ctx: &ChordalContext, set: &BTreeSet<usize>) -> bool {
    ctx.is_lower_set(set)
}
