//! Digraphs over dense integer vertex ids, paths, walks and the elementary
//! traversals every other module builds on.
//!
//! Loops and parallel edges are stored as given, but the adjacency lists used
//! by the algorithms are the simple quotient: sorted, de-duplicated, loop-free.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::menger;

pub type VertexSet = BTreeSet<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Digraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
        }
        Ok(Self::from_checked(n, edges))
    }

    pub fn empty(n: usize) -> Self {
        Self::from_checked(n, Vec::new())
    }

    /// Complete bidirected digraph: every ordered pair of distinct vertices is an edge.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n)
            .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
            .collect();
        Self::from_checked(n, edges)
    }

    fn from_checked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &edges {
            if u != v {
                out[u].push(v);
                inn[v].push(u);
            }
        }
        for list in out.iter_mut().chain(inn.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Digraph { n, edges, out, inn }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The stored edge multiset, in insertion order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of distinct non-loop edges.
    pub fn simple_edge_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_vertices<'a>(&self, vs: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        vs.into_iter().try_for_each(|&v| self.check_vertex(v))
    }

    pub fn reverse(&self) -> Digraph {
        let edges = self.edges.iter().map(|&(u, v)| (v, u)).collect();
        Self::from_checked(self.n, edges)
    }

    /// Copy of `self` without the edges leaving any vertex of `tails`.
    pub fn without_out_edges(&self, tails: &VertexSet) -> Digraph {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|(u, _)| !tails.contains(u))
            .collect();
        Self::from_checked(self.n, edges)
    }

    /// Vertices reachable from `from` without entering a blocked vertex.
    /// Blocked start vertices are skipped.
    pub fn reachable_avoiding(
        &self,
        from: impl IntoIterator<Item = usize>,
        blocked: &[bool],
    ) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::new();
        for s in from {
            if s < self.n && !blocked[s] && !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            for &v in &self.out[u] {
                if !seen[v] && !blocked[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    pub fn reachable_from(&self, from: impl IntoIterator<Item = usize>) -> Vec<bool> {
        self.reachable_avoiding(from, &vec![false; self.n])
    }

    /// Whether some vertex of `targets` is reachable from `sources` in `self - removed`.
    pub fn connects(&self, sources: &VertexSet, targets: &VertexSet, removed: &VertexSet) -> bool {
        let mut blocked = vec![false; self.n];
        for &x in removed {
            if x < self.n {
                blocked[x] = true;
            }
        }
        let seen = self.reachable_avoiding(sources.iter().copied(), &blocked);
        targets.iter().any(|&t| t < self.n && seen[t])
    }

    /// Whether the subgraph induced by `set` is strongly connected (false for the empty set).
    pub fn induces_strong(&self, set: &VertexSet) -> bool {
        let Some(&root) = set.iter().next() else {
            return false;
        };
        let mut blocked = vec![true; self.n];
        for &v in set {
            blocked[v] = false;
        }
        let forward = self.reachable_avoiding([root], &blocked);
        if set.iter().any(|&v| !forward[v]) {
            return false;
        }
        let backward = self.reverse().reachable_avoiding([root], &blocked);
        set.iter().all(|&v| backward[v])
    }

    /// BFS shortest path from `from` to `to` using only vertices with `allowed[v]`.
    /// Neighbors are scanned in increasing id order, so ties go to smaller ids.
    pub fn shortest_path_within(&self, from: usize, to: usize, allowed: &[bool]) -> Option<Path> {
        if from >= self.n || to >= self.n || !allowed[from] || !allowed[to] {
            return None;
        }
        let mut parent = vec![usize::MAX; self.n];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to {
                break;
            }
            for &v in &self.out[u] {
                if allowed[v] && parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[to] == usize::MAX {
            return None;
        }
        let mut rev = vec![to];
        let mut cur = to;
        while cur != from {
            cur = parent[cur];
            rev.push(cur);
        }
        rev.reverse();
        Some(Path(rev))
    }
}

/// A non-empty sequence of pairwise distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn new(vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let mut seen = BTreeSet::new();
        for &v in &vertices {
            if !seen.insert(v) {
                return Err(Error::RepeatedVertex(v));
            }
        }
        Ok(Path(vertices))
    }

    pub fn single(v: usize) -> Self {
        Path(vec![v])
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.0
    }

    pub fn source(&self) -> usize {
        self.0[0]
    }

    pub fn sink(&self) -> usize {
        self.0[self.0.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    /// Vertices strictly between source and sink.
    pub fn internal(&self) -> &[usize] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    pub fn reversed(&self) -> Path {
        Path(self.0.iter().rev().copied().collect())
    }

    /// Prefix ending at position `pos` (inclusive).
    pub fn truncated(&self, pos: usize) -> Path {
        Path(self.0[..=pos].to_vec())
    }

    /// Every consecutive pair is an edge of `g`.
    pub fn is_path_in(&self, g: &Digraph) -> bool {
        self.0.iter().all(|&v| v < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

impl TryFrom<Vec<usize>> for Path {
    type Error = Error;

    fn try_from(value: Vec<usize>) -> Result<Self> {
        Path::new(value)
    }
}

/// A vertex sequence that may repeat vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk(pub Vec<usize>);

impl Walk {
    pub fn is_walk_in(&self, g: &Digraph) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| v < g.vertex_count())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Shortens a walk into a path by repeatedly excising the closed segment
/// between the first repeated vertex and its earlier occurrence.
pub fn shorten_walk(walk: &Walk) -> Result<Path> {
    if walk.0.is_empty() {
        return Err(Error::EmptyWalk);
    }
    let mut stack: Vec<usize> = Vec::with_capacity(walk.0.len());
    let mut position = std::collections::HashMap::new();
    for &v in &walk.0 {
        if let Some(&i) = position.get(&v) {
            for w in stack.drain(i + 1..) {
                position.remove(&w);
            }
        } else {
            position.insert(v, stack.len());
            stack.push(v);
        }
    }
    Ok(Path(stack))
}

/// Strongly connected components (iterative Tarjan). Each component is
/// sorted, and components are ordered by their smallest vertex.
pub fn strong_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, next neighbor offset)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call.last_mut() {
            let neighbors = g.out_neighbors(v);
            if *next < neighbors.len() {
                let w = neighbors[*next];
                *next += 1;
                if index[w] == UNSEEN {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components.sort_unstable_by_key(|c| c[0]);
    components
}

/// Vertex connectivity in the strong sense: the minimum size of a set whose
/// removal leaves a single vertex or a digraph that is not strongly connected.
pub fn strong_connectivity(g: &Digraph) -> usize {
    let n = g.vertex_count();
    if n <= 1 {
        return 0;
    }
    let mut best = n - 1;
    for u in 0..n {
        for v in 0..n {
            if u == v || g.has_edge(u, v) {
                continue;
            }
            // u and v stay; paths of length >= 2 start in N+(u) and end in N-(v).
            let keep: Vec<usize> = (0..n).filter(|&w| w != u && w != v).collect();
            let mut relabel = vec![usize::MAX; n];
            for (i, &w) in keep.iter().enumerate() {
                relabel[w] = i;
            }
            let edges = g
                .edges()
                .iter()
                .filter(|&&(a, b)| relabel[a] != usize::MAX && relabel[b] != usize::MAX)
                .map(|&(a, b)| (relabel[a], relabel[b]));
            let h = Digraph::from_checked(keep.len(), edges.collect());
            let from: VertexSet = g
                .out_neighbors(u)
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| relabel[w])
                .collect();
            let to: VertexSet = g
                .in_neighbors(v)
                .iter()
                .filter(|&&w| w != u)
                .map(|&w| relabel[w])
                .collect();
            let size = menger::min_separator_size(&h, &from, &to)
                .expect("relabelled vertices are in range");
            best = best.min(size);
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

/// At least `k + 1` vertices and no separator of size below `k`.
pub fn is_k_strong(g: &Digraph, k: usize) -> bool {
    k >= 1 && g.vertex_count() > k && strong_connectivity(g) >= k
}
