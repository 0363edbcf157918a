//! Maximum vertex-disjoint A→B paths and minimum (A,B)-separators through
//! the vertex-splitting reduction to unit-capacity max-flow.

use std::collections::VecDeque;

use crate::digraph::{Digraph, Path, VertexSet};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MengerCertificate {
    pub paths: Vec<Path>,
    pub separator: VertexSet,
}

impl MengerCertificate {
    pub fn value(&self) -> usize {
        self.paths.len()
    }
}

struct Arc {
    to: usize,
    cap: usize,
    rev: usize,
}

struct Network {
    arcs: Vec<Arc>,
    adj: Vec<Vec<usize>>,
    // original capacity of each arc, to read off flow
    initial: Vec<usize>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            arcs: Vec::new(),
            adj: vec![Vec::new(); nodes],
            initial: Vec::new(),
        }
    }

    fn add(&mut self, from: usize, to: usize, cap: usize) {
        let i = self.arcs.len();
        self.arcs.push(Arc { to, cap, rev: i + 1 });
        self.arcs.push(Arc { to: from, cap: 0, rev: i });
        self.initial.push(cap);
        self.initial.push(0);
        self.adj[from].push(i);
        self.adj[to].push(i + 1);
    }

    fn sort_adjacency(&mut self) {
        let arcs = &self.arcs;
        for list in &mut self.adj {
            list.sort_by_key(|&a| (arcs[a].to, a));
        }
    }

    /// One BFS augmentation of a single unit. Returns false when none exists.
    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        'bfs: while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = a;
                    if arc.to == sink {
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut v = sink;
        while v != source {
            let a = via[v];
            self.arcs[a].cap -= 1;
            let r = self.arcs[a].rev;
            self.arcs[r].cap += 1;
            v = self.arcs[r].to;
        }
        true
    }

    fn residual_reach(&self, source: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for &a in &self.adj[u] {
                let arc = &self.arcs[a];
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    fn flow(&self, a: usize) -> usize {
        self.initial[a].saturating_sub(self.arcs[a].cap)
    }
}

/// Maximum family of pairwise vertex-disjoint A→B paths together with a
/// minimum (A,B)-separator of the same size.
pub fn menger(g: &Digraph, a: &VertexSet, b: &VertexSet) -> Result<MengerCertificate> {
    g.check_vertices(a)?;
    g.check_vertices(b)?;
    let n = g.vertex_count();

    let mut blocked = vec![false; n];
    let mut shared = Vec::new();
    for &v in a.intersection(b) {
        blocked[v] = true;
        shared.push(v);
    }

    let source = 2 * n;
    let sink = 2 * n + 1;
    let big = n + 1;
    let mut net = Network::new(2 * n + 2);
    for v in (0..n).filter(|&v| !blocked[v]) {
        net.add(2 * v, 2 * v + 1, 1);
        for &w in g.out_neighbors(v) {
            if !blocked[w] {
                net.add(2 * v + 1, 2 * w, big);
            }
        }
    }
    for &v in a.iter().filter(|&&v| !blocked[v]) {
        net.add(source, 2 * v, big);
    }
    for &v in b.iter().filter(|&&v| !blocked[v]) {
        net.add(2 * v + 1, sink, big);
    }
    net.sort_adjacency();

    while net.augment(source, sink) {}

    let reach = net.residual_reach(source);
    let mut separator: VertexSet = shared.iter().copied().collect();
    separator.extend((0..n).filter(|&v| !blocked[v] && reach[2 * v] && !reach[2 * v + 1]));

    let mut paths: Vec<Path> = shared.iter().map(|&v| Path::single(v)).collect();
    paths.extend(decompose(&net, source, sink));
    paths.sort_by_key(|p| p.source());
    debug_assert_eq!(paths.len(), separator.len());

    Ok(MengerCertificate { paths, separator })
}

fn decompose(net: &Network, source: usize, sink: usize) -> Vec<Path> {
    let mut left: Vec<usize> = (0..net.arcs.len()).map(|a| net.flow(a)).collect();
    let mut paths = Vec::new();
    while let Some(&first) = net.adj[source].iter().find(|&&a| left[a] > 0) {
        left[first] -= 1;
        let mut node = net.arcs[first].to;
        let mut vertices = Vec::new();
        while node != sink {
            if node.is_multiple_of(2) {
                vertices.push(node / 2);
            }
            let a = *net.adj[node]
                .iter()
                .find(|&&a| left[a] > 0)
                .expect("flow conservation");
            left[a] -= 1;
            node = net.arcs[a].to;
        }
        paths.push(Path::new(vertices).expect("unit vertex capacities keep paths simple"));
    }
    paths
}

pub fn min_separator_size(g: &Digraph, a: &VertexSet, b: &VertexSet) -> Result<usize> {
    Ok(menger(g, a, b)?.separator.len())
}
