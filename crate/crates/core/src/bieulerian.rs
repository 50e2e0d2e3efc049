//! Bieulerian paths on cubic graphs: closed walks using every edge once in
//! each direction without immediately reversing an edge.
//!
//! At a cubic vertex the three transitions of such a path form a cyclic
//! permutation of the incident edges (arrive on `a`, leave on `rho(a)`), so a
//! path is the same thing as a rotation system with a single face.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{CubicGraph, RotationSystem};
use crate::word::{CyclicWord, QuadraticWord, SignedLetter, WicksForm, WordError};

pub const DEFAULT_SEARCH_BOUND: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path search is limited to {bound} edges, graph has {edges}")]
    SearchBound { bound: usize, edges: usize },
    #[error("path has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("edge {0} does not exist")]
    UnknownEdge(usize),
    #[error("traversal {0} does not start where the previous one ends")]
    Broken(usize),
    #[error("edge {edge} is traversed twice in the same direction")]
    RepeatedTraversal { edge: usize },
    #[error("traversal {0} is immediately reversed")]
    Backtrack(usize),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A traversal of edge `edge` along (`forward`) or against its reference orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Dart {
    pub edge: usize,
    pub forward: bool,
}

impl Dart {
    pub fn reversed(self) -> Self {
        Self {
            edge: self.edge,
            forward: !self.forward,
        }
    }

    pub fn tail(self, g: &CubicGraph) -> usize {
        let (a, b) = g.edge(self.edge);
        if self.forward {
            a
        } else {
            b
        }
    }

    pub fn head(self, g: &CubicGraph) -> usize {
        self.reversed().tail(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BieulerianPath {
    darts: Vec<Dart>,
}

impl BieulerianPath {
    pub fn new(g: &CubicGraph, darts: Vec<Dart>) -> Result<Self, PathError> {
        let path = Self { darts };
        path.validate(g)?;
        Ok(path)
    }

    /// Replays the path and checks every invariant.
    pub fn validate(&self, g: &CubicGraph) -> Result<(), PathError> {
        let len = self.darts.len();
        if len != 2 * g.edge_count() {
            return Err(PathError::WrongLength {
                expected: 2 * g.edge_count(),
                found: len,
            });
        }
        let mut used = vec![[false; 2]; g.edge_count()];
        for (i, d) in self.darts.iter().enumerate() {
            if d.edge >= g.edge_count() {
                return Err(PathError::UnknownEdge(d.edge));
            }
            let slot = &mut used[d.edge][usize::from(d.forward)];
            if *slot {
                return Err(PathError::RepeatedTraversal { edge: d.edge });
            }
            *slot = true;
            let next = self.darts[(i + 1) % len];
            if next.edge >= g.edge_count() {
                return Err(PathError::UnknownEdge(next.edge));
            }
            if d.head(g) != next.tail(g) {
                return Err(PathError::Broken((i + 1) % len));
            }
            if next == d.reversed() {
                return Err(PathError::Backtrack(i));
            }
        }
        Ok(())
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// The same walk in the opposite direction.
    pub fn reversed(&self) -> Self {
        Self {
            darts: self.darts.iter().rev().map(|d| d.reversed()).collect(),
        }
    }

    /// The rotation `rho_v(arrival edge) = departure edge` induced at every vertex.
    pub fn rotation(&self, g: &CubicGraph) -> RotationSystem {
        let mut reversed = vec![false; g.vertex_count()];
        for (d, next) in self.transitions() {
            let v = d.head(g);
            let from = g.slot_of(v, d.edge).expect("dart ends at v");
            let to = g.slot_of(v, next.edge).expect("dart starts at v");
            reversed[v] = to == (from + 2) % 3;
        }
        RotationSystem::new(reversed)
    }

    /// Consecutive pairs `(arriving dart, departing dart)`, including the wrap.
    pub fn transitions(&self) -> impl Iterator<Item = (Dart, Dart)> + '_ {
        let len = self.darts.len();
        (0..len).map(move |i| (self.darts[i], self.darts[(i + 1) % len]))
    }

    /// Edge letters `1..=E`; `+` for a forward traversal.
    pub fn to_text(&self) -> String {
        self.darts
            .iter()
            .map(|d| {
                let l = d.edge as i64 + 1;
                if d.forward { l } else { -l }.to_string()
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for BieulerianPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub fn bieulerian_search(g: &CubicGraph, limit: usize) -> Result<Vec<BieulerianPath>, PathError> {
    bieulerian_search_bounded(g, limit, DEFAULT_SEARCH_BOUND)
}

/// Depth-first search starting with edge 0 traversed forward. The rotation at
/// a vertex is chosen on first arrival, preferring the smaller neighbor as the
/// departure; afterwards every step is forced. Results come in search order.
pub fn bieulerian_search_bounded(
    g: &CubicGraph,
    limit: usize,
    bound: usize,
) -> Result<Vec<BieulerianPath>, PathError> {
    if g.edge_count() > bound {
        return Err(PathError::SearchBound {
            bound,
            edges: g.edge_count(),
        });
    }
    let mut search = Search {
        g,
        limit,
        rotation: vec![None; g.vertex_count()],
        darts: vec![Dart {
            edge: 0,
            forward: true,
        }],
        found: Vec::new(),
    };
    if limit > 0 {
        search.extend();
    }
    Ok(search.found)
}

struct Search<'a> {
    g: &'a CubicGraph,
    limit: usize,
    /// Chosen rotation per vertex: `Some(reversed)` once fixed.
    rotation: Vec<Option<bool>>,
    darts: Vec<Dart>,
    found: Vec<BieulerianPath>,
}

impl Search<'_> {
    fn departure(&self, v: usize, arrival: Dart, reversed: bool) -> Dart {
        let from = self.g.slot_of(v, arrival.edge).expect("dart ends at v");
        let slot = (from + if reversed { 2 } else { 1 }) % 3;
        let inc = self.g.incidences(v)[slot];
        Dart {
            edge: inc.edge,
            forward: self.g.edge(inc.edge).0 == v,
        }
    }

    fn extend(&mut self) {
        if self.found.len() >= self.limit {
            return;
        }
        let last = *self.darts.last().expect("path starts with a dart");
        let v = last.head(self.g);
        let choices: Vec<bool> = match self.rotation[v] {
            Some(r) => vec![r],
            None => {
                let mut options = vec![false, true];
                options.sort_by_key(|&r| {
                    let d = self.departure(v, last, r);
                    (d.head(self.g), d.edge)
                });
                options
            }
        };
        let fresh = self.rotation[v].is_none();
        for r in choices {
            let next = self.departure(v, last, r);
            self.rotation[v] = Some(r);
            if next == self.darts[0] {
                if self.darts.len() == 2 * self.g.edge_count() {
                    self.found.push(BieulerianPath {
                        darts: self.darts.clone(),
                    });
                }
            } else {
                self.darts.push(next);
                self.extend();
                self.darts.pop();
            }
            if self.found.len() >= self.limit {
                break;
            }
        }
        if fresh {
            self.rotation[v] = None;
        }
    }
}

/// Letter `e + 1` for edge `e`, inverted on backward traversals.
pub fn path_to_wicks(g: &CubicGraph, path: &BieulerianPath) -> Result<WicksForm, PathError> {
    path.validate(g)?;
    let symbols = path
        .darts()
        .iter()
        .map(|d| {
            let letter = d.edge as u32 + 1;
            if d.forward {
                SignedLetter::pos(letter)
            } else {
                SignedLetter::neg(letter)
            }
        })
        .collect();
    let word = QuadraticWord::new(CyclicWord::new(symbols))?;
    Ok(WicksForm::new(word)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexSign {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    /// 1-based vertex id.
    pub vertex: usize,
    /// Incident edge letters in the cyclic order arrival -> departure, starting from the smallest.
    pub orientation: [u32; 3],
    pub sign: VertexSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSignReport {
    pub vertices: Vec<VertexClass>,
    pub positive: usize,
    pub negative: usize,
}

/// A vertex is positive when its second transition along the path starts
/// from the edge the first transition departs on, matching the pattern
/// `a b^-1 ... b c^-1 ... c a^-1` with all three edges pointing into it.
pub fn classify_vertices(g: &CubicGraph, path: &BieulerianPath) -> Result<VertexSignReport, PathError> {
    path.validate(g)?;
    let mut seen: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.vertex_count()];
    for (d, next) in path.transitions() {
        seen[d.head(g)].push((d.edge, next.edge));
    }
    let mut vertices = Vec::with_capacity(g.vertex_count());
    for (v, ts) in seen.iter().enumerate() {
        let rho = |e: usize| ts.iter().find(|t| t.0 == e).map(|t| t.1).expect("three transitions");
        let start = g.incidences(v).iter().map(|i| i.edge).min().expect("cubic vertex");
        let orientation = [start, rho(start), rho(rho(start))].map(|e| e as u32 + 1);
        let sign = if ts[1].0 == ts[0].1 {
            VertexSign::Positive
        } else {
            VertexSign::Negative
        };
        vertices.push(VertexClass {
            vertex: v + 1,
            orientation,
            sign,
        });
    }
    let positive = vertices.iter().filter(|c| c.sign == VertexSign::Positive).count();
    Ok(VertexSignReport {
        negative: vertices.len() - positive,
        positive,
        vertices,
    })
}
