//! Simple connected cubic graphs, planarity and 3-edge-connectivity.
//!
//! Vertices are numbered `1..=V` in text and `0..V` internally. Each edge
//! keeps the orientation it was given in (`tail -> head`), which serves as the
//! reference orientation for path words.

use std::collections::{HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::dsu::DisjointSets;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("line {line}: expected two positive vertex ids, got {text:?}")]
    Malformed { line: usize, text: String },
    #[error("graph has no edges")]
    Empty,
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("repeated edge {0}-{1}")]
    RepeatedEdge(usize, usize),
    #[error("vertex {vertex} has degree {degree}, expected 3")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph is disconnected")]
    Disconnected,
}

/// One incidence at a vertex: the neighbor and the connecting edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Incidence {
    pub neighbor: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicGraph {
    edges: Vec<(usize, usize)>,
    /// Incidences at each vertex, sorted by neighbor.
    adjacency: Vec<[Incidence; 3]>,
}

impl CubicGraph {
    /// `edges` use 1-based vertex ids.
    pub fn from_edges(edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let vertex_count = edges.iter().map(|&(u, v)| u.max(v)).max().unwrap_or(0);
        let mut seen = HashSet::new();
        let mut incidences: Vec<Vec<Incidence>> = vec![Vec::new(); vertex_count];
        let mut internal = Vec::with_capacity(edges.len());
        for (e, &(u, v)) in edges.iter().enumerate() {
            if u == 0 || v == 0 {
                return Err(GraphError::Malformed {
                    line: e + 1,
                    text: format!("{u} {v}"),
                });
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::RepeatedEdge(u.min(v), u.max(v)));
            }
            let (a, b) = (u - 1, v - 1);
            incidences[a].push(Incidence { neighbor: b, edge: e });
            incidences[b].push(Incidence { neighbor: a, edge: e });
            internal.push((a, b));
        }
        let mut adjacency = Vec::with_capacity(vertex_count);
        for (v, mut inc) in incidences.into_iter().enumerate() {
            if inc.len() != 3 {
                return Err(GraphError::NotCubic {
                    vertex: v + 1,
                    degree: inc.len(),
                });
            }
            inc.sort_by_key(|i| i.neighbor);
            adjacency.push([inc[0], inc[1], inc[2]]);
        }
        let graph = Self {
            edges: internal,
            adjacency,
        };
        if !graph.is_connected_without(&[]) {
            return Err(GraphError::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Internal (0-based) endpoints `(tail, head)`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn incidences(&self, v: usize) -> &[Incidence; 3] {
        &self.adjacency[v]
    }

    /// Position of edge `e` among the incidences of `v`.
    pub fn slot_of(&self, v: usize, e: usize) -> Option<usize> {
        self.adjacency[v].iter().position(|i| i.edge == e)
    }

    fn is_connected_without(&self, removed: &[usize]) -> bool {
        let mut sets = DisjointSets::new(self.vertex_count());
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            if !removed.contains(&e) {
                sets.union(a, b);
            }
        }
        sets.set_count() == 1
    }
}

impl fmt::Display for CubicGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &(a, b) in &self.edges {
            writeln!(f, "{} {}", a + 1, b + 1)?;
        }
        Ok(())
    }
}

/// One `u v` pair per line; `#` starts a comment; blank lines are ignored.
pub fn parse_graph(text: &str) -> Result<CubicGraph, GraphError> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let malformed = || GraphError::Malformed {
            line: i + 1,
            text: raw.to_string(),
        };
        let ids: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().ok().filter(|&v| v > 0))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(malformed)?;
        let [u, v] = ids[..] else {
            return Err(malformed());
        };
        edges.push((u, v));
    }
    CubicGraph::from_edges(&edges)
}

/// Removing any one or two edges leaves the graph connected.
pub fn is_3_connected(g: &CubicGraph) -> bool {
    let m = g.edge_count();
    (0..m).all(|i| (i + 1..m).all(|j| g.is_connected_without(&[i, j])))
}

/// A rotation at every vertex: `next(v, s)` is the incidence slot following `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    /// `false`: slots cycle 0 -> 1 -> 2; `true`: 0 -> 2 -> 1.
    reversed: Vec<bool>,
}

impl RotationSystem {
    pub fn new(reversed: Vec<bool>) -> Self {
        Self { reversed }
    }

    pub fn is_reversed(&self, v: usize) -> bool {
        self.reversed[v]
    }

    pub fn next(&self, v: usize, slot: usize) -> usize {
        (slot + if self.reversed[v] { 2 } else { 1 }) % 3
    }

    /// Face boundaries as dart sequences `(from, slot at from)`, traced by
    /// leaving `v` along `next(v, slot of the arriving edge)`.
    pub fn faces(&self, g: &CubicGraph) -> Vec<Vec<(usize, usize)>> {
        let mut seen = vec![[false; 3]; g.vertex_count()];
        let mut faces = Vec::new();
        for v in 0..g.vertex_count() {
            for s in 0..3 {
                if seen[v][s] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut cv, mut cs) = (v, s);
                while !seen[cv][cs] {
                    seen[cv][cs] = true;
                    face.push((cv, cs));
                    let inc = g.incidences(cv)[cs];
                    let w = inc.neighbor;
                    let back = g.slot_of(w, inc.edge).expect("incidence is symmetric");
                    (cv, cs) = (w, self.next(w, back));
                }
                faces.push(face);
            }
        }
        faces
    }
}

/// Planarity test: Euler bound, then path-addition embedding of every block.
pub fn is_planar(g: &CubicGraph) -> bool {
    let (v, e) = (g.vertex_count(), g.edge_count());
    if v >= 3 && e > 3 * v - 6 {
        return false;
    }
    blocks(g).iter().all(|block| {
        if block.len() < 3 {
            return true;
        }
        let edges: Vec<(usize, usize)> = block.iter().map(|&e| g.edge(e)).collect();
        embed_biconnected(&edges).is_some()
    })
}

/// The rotation system of a planar embedding, for 2-connected planar graphs.
/// For 3-connected graphs it is unique up to reversing every vertex.
pub fn planar_rotation(g: &CubicGraph) -> Option<RotationSystem> {
    let faces = embed_biconnected(g.edges())?;
    let mut next_of: HashMap<(usize, usize), usize> = HashMap::new();
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let (prev, v, next) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
            next_of.insert((v, prev), next);
        }
    }
    let mut reversed = Vec::with_capacity(g.vertex_count());
    for v in 0..g.vertex_count() {
        let inc = g.incidences(v);
        let next = *next_of.get(&(v, inc[0].neighbor))?;
        reversed.push(next == inc[2].neighbor);
    }
    let rot = RotationSystem { reversed };
    (rot.faces(g).len() + g.vertex_count() == g.edge_count() + 2).then_some(rot)
}

/// Biconnected components (as edge-id lists) by an iterative Tarjan search.
fn blocks(g: &CubicGraph) -> Vec<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let n = g.vertex_count();
    let mut disc = vec![NONE; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut result = Vec::new();
    for root in 0..n {
        if disc[root] != NONE {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge to parent, next incidence index)
        let mut stack = vec![(root, NONE, 0usize)];
        while let Some(&mut (v, parent_edge, ref mut i)) = stack.last_mut() {
            if *i < 3 {
                let Incidence { neighbor: w, edge: e } = g.incidences(v)[*i];
                *i += 1;
                if e == parent_edge {
                    continue;
                }
                if disc[w] == NONE {
                    edge_stack.push(e);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, e, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == parent_edge {
                                break;
                            }
                        }
                        result.push(block);
                    }
                }
            }
        }
    }
    result
}

/// Path-addition planarity (Demoucron, Malgrange and Pertuiset) for a
/// 2-connected simple graph given by its edges. Returns the faces of a planar
/// embedding as consistently oriented vertex cycles.
fn embed_biconnected(edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    let mut local: HashMap<usize, usize> = HashMap::new();
    for &(a, b) in edges {
        for v in [a, b] {
            let next = local.len();
            local.entry(v).or_insert(next);
        }
    }
    let n = local.len();
    let mut global = vec![0; n];
    for (&g, &l) in &local {
        global[l] = g;
    }
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (e, &(a, b)) in edges.iter().enumerate() {
        let (a, b) = (local[&a], local[&b]);
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    let cycle = find_cycle(&adj)?;
    let mut vertex_in = vec![false; n];
    let mut edge_in = vec![false; edges.len()];
    let edge_between = |a: usize, b: usize| adj[a].iter().find(|&&(w, _)| w == b).map(|&(_, e)| e);
    for (i, &v) in cycle.iter().enumerate() {
        vertex_in[v] = true;
        let w = cycle[(i + 1) % cycle.len()];
        edge_in[edge_between(v, w)?] = true;
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    loop {
        let fragments = fragments(&adj, &vertex_in, &edge_in);
        if fragments.is_empty() {
            break;
        }
        let face_sets: Vec<HashSet<usize>> = faces.iter().map(|f| f.iter().copied().collect()).collect();
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&f| fr.attachments.iter().all(|a| face_sets[f].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(Vec::is_empty) {
            return None;
        }
        let chosen = admissible.iter().position(|a| a.len() == 1).unwrap_or(0);
        let face_index = admissible[chosen][0];
        let path = fragment_path(&adj, &vertex_in, &fragments[chosen])?;
        for w in path.windows(2) {
            edge_in[edge_between(w[0], w[1])?] = true;
        }
        for &v in &path {
            vertex_in[v] = true;
        }
        let face = faces.swap_remove(face_index);
        let (start, end) = (path[0], path[path.len() - 1]);
        let i = face.iter().position(|&v| v == start)?;
        let j = face.iter().position(|&v| v == end)?;
        let interior = &path[1..path.len() - 1];
        let mut first = cyclic_walk(&face, i, j);
        first.extend(interior.iter().rev());
        let mut second = cyclic_walk(&face, j, i);
        second.extend(interior.iter());
        faces.push(first);
        faces.push(second);
    }
    Some(
        faces
            .into_iter()
            .map(|f| f.into_iter().map(|v| global[v]).collect())
            .collect(),
    )
}

fn cyclic_walk(face: &[usize], from: usize, to: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = from;
    loop {
        out.push(face[k]);
        if k == to {
            return out;
        }
        k = (k + 1) % face.len();
    }
}

/// Any cycle, found by depth-first search.
fn find_cycle(adj: &[Vec<(usize, usize)>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(0usize, usize::MAX, 0usize)];
    depth[0] = 0;
    while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
        if *i >= adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, e) = adj[v][*i];
        *i += 1;
        if e == pe {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, e, 0));
        } else if depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            cycle.reverse();
            return Some(cycle);
        }
    }
    None
}

struct Fragment {
    attachments: Vec<usize>,
    /// Either a single chord edge between embedded vertices or a component of unembedded vertices.
    kind: FragmentKind,
}

enum FragmentKind {
    Chord(usize, usize),
    Component(Vec<usize>),
}

fn fragments(adj: &[Vec<(usize, usize)>], vertex_in: &[bool], edge_in: &[bool]) -> Vec<Fragment> {
    let n = adj.len();
    let mut out = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if vertex_in[s] || seen[s] {
            continue;
        }
        let mut component = vec![s];
        let mut attachments = HashSet::new();
        seen[s] = true;
        let mut k = 0;
        while k < component.len() {
            let v = component[k];
            k += 1;
            for &(w, _) in &adj[v] {
                if vertex_in[w] {
                    attachments.insert(w);
                } else if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
        }
        let mut attachments: Vec<usize> = attachments.into_iter().collect();
        attachments.sort_unstable();
        out.push(Fragment {
            attachments,
            kind: FragmentKind::Component(component),
        });
    }
    for (v, list) in adj.iter().enumerate() {
        for &(w, e) in list {
            if v < w && !edge_in[e] && vertex_in[v] && vertex_in[w] {
                out.push(Fragment {
                    attachments: vec![v, w],
                    kind: FragmentKind::Chord(v, w),
                });
            }
        }
    }
    out
}

/// A path through the fragment joining two distinct attachment vertices.
fn fragment_path(adj: &[Vec<(usize, usize)>], vertex_in: &[bool], fragment: &Fragment) -> Option<Vec<usize>> {
    let members = match &fragment.kind {
        FragmentKind::Chord(a, b) => return Some(vec![*a, *b]),
        FragmentKind::Component(members) => members,
    };
    let inside: HashSet<usize> = members.iter().copied().collect();
    let start = *fragment.attachments.first()?;
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::new();
    for &(w, _) in &adj[start] {
        if inside.contains(&w) && !parent.contains_key(&w) {
            parent.insert(w, start);
            queue.push_back(w);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &(w, _) in &adj[v] {
            if vertex_in[w] && w != start {
                let mut path = vec![w, v];
                let mut x = v;
                while let Some(&p) = parent.get(&x) {
                    path.push(p);
                    if p == start {
                        break;
                    }
                    x = p;
                }
                path.reverse();
                return Some(path);
            }
            if inside.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, v);
                queue.push_back(w);
            }
        }
    }
    None
}
