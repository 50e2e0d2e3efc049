//! Standard alternating knot diagrams from planar 3-connected cubic graphs
//! carrying a Bieulerian path.
//!
//! A vertex is of the first type when the path turns through it in the same
//! cyclic direction as the planar embedding, and of the second type otherwise.
//! Every edge joining two vertices of the same type receives a degree-two
//! vertex of the opposite type, which makes the subdivided graph bipartite.
//! Each edge of the subdivided graph becomes a crossing; the traversal running
//! from a first-type vertex to a second-type vertex is the over-passage.

use serde::Serialize;
use thiserror::Error;

use crate::bieulerian::{classify_vertices, path_to_wicks, BieulerianPath, PathError};
use crate::diagram::{is_alternating, is_reduced, seifert, KnotDiagram, Passage, Strand};
use crate::genus::{gamma_stats, genus_linear};
use crate::graph::{is_3_connected, is_planar, planar_rotation, CubicGraph};
use crate::word::{CyclicWord, QuadraticWord, SignedLetter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StandardError {
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph is not 3-connected")]
    NotThreeConnected,
    #[error(transparent)]
    Path(#[from] PathError),
    #[error("internal error: constructed diagram violates {0}")]
    Postcondition(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StandardReport {
    pub vertices: usize,
    pub edges: usize,
    /// Letters of the subdivided edges of the original graph.
    pub subdivided: Vec<u32>,
    pub genus: usize,
    pub positive: usize,
    pub negative: usize,
    pub crossings: usize,
    pub seifert_circles: usize,
    pub neighbored_classes: usize,
    pub alternating: bool,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardDiagram {
    pub diagram: KnotDiagram,
    /// Path word of the subdivided graph; letters are crossing ids.
    pub word: QuadraticWord,
    /// Path word of the original graph.
    pub base_word: QuadraticWord,
    pub report: StandardReport,
}

pub fn build_standard_diagram(g: &CubicGraph, path: &BieulerianPath) -> Result<StandardDiagram, StandardError> {
    path.validate(g)?;
    if !is_planar(g) {
        return Err(StandardError::NotPlanar);
    }
    if !is_3_connected(g) {
        return Err(StandardError::NotThreeConnected);
    }
    let planar = planar_rotation(g).ok_or(StandardError::NotPlanar)?;
    let turning = path.rotation(g);
    let first_type: Vec<bool> = (0..g.vertex_count())
        .map(|v| turning.is_reversed(v) == planar.is_reversed(v))
        .collect();

    // Crossing ids of the subdivided graph: one per plain edge, two per
    // subdivided edge (the half at the tail first).
    let mut crossing_of = Vec::with_capacity(g.edge_count());
    let mut subdivided = Vec::new();
    let mut next_id = 1u32;
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if first_type[a] == first_type[b] {
            crossing_of.push((next_id, Some(next_id + 1)));
            subdivided.push(e as u32 + 1);
            next_id += 2;
        } else {
            crossing_of.push((next_id, None));
            next_id += 1;
        }
    }
    let crossings = (next_id - 1) as usize;

    // Subdivision vertices are numbered after the original ones.
    let middle_vertex = |e: usize| g.vertex_count() + subdivided.iter().position(|&l| l as usize == e + 1).unwrap_or(0);

    // (crossing, traversed along its reference orientation, over-passage, vertex reached)
    let mut passages: Vec<(u32, bool, bool, usize)> = Vec::with_capacity(2 * crossings);
    for d in path.darts() {
        let (a, _) = g.edge(d.edge);
        let tail_first = first_type[d.tail(g)];
        match crossing_of[d.edge] {
            (id, None) => passages.push((id, d.forward, tail_first, d.head(g))),
            (x1, Some(x2)) => {
                // the middle vertex has the type opposite to both ends
                let halves = if d.tail(g) == a { [x1, x2] } else { [x2, x1] };
                passages.push((halves[0], d.forward, tail_first, middle_vertex(d.edge)));
                passages.push((halves[1], d.forward, !tail_first, d.head(g)));
            }
        }
    }

    let word = QuadraticWord::new(CyclicWord::new(
        passages
            .iter()
            .map(|&(id, forward, _, _)| if forward { SignedLetter::pos(id) } else { SignedLetter::neg(id) })
            .collect(),
    ))
    .map_err(|_| StandardError::Postcondition("quadratic word structure"))?;
    let diagram = KnotDiagram::new(
        passages
            .iter()
            .map(|&(id, _, over, _)| Passage::new(id, if over { Strand::Over } else { Strand::Under }))
            .collect(),
    )
    .map_err(|_| StandardError::Postcondition("one over and one under passage per crossing"))?;

    let base_word = path_to_wicks(g, path)?.into_word();
    let genus = genus_linear(&base_word).genus as usize;
    let signs = classify_vertices(g, path)?;
    let alternating = is_alternating(&diagram);
    let reduced = is_reduced(&diagram).reduced;
    let circles = seifert(&diagram);
    let stats = gamma_stats(&word);

    if !alternating {
        return Err(StandardError::Postcondition("alternation"));
    }
    if !reduced {
        return Err(StandardError::Postcondition("reducedness"));
    }
    if circles.genus != genus || genus_linear(&word).genus as usize != genus {
        return Err(StandardError::Postcondition("genus"));
    }
    if diagram.crossing_count() != crossings {
        return Err(StandardError::Postcondition("crossing count"));
    }
    if circles.s != g.vertex_count() + subdivided.len() {
        return Err(StandardError::Postcondition("one Seifert circle per vertex"));
    }
    let reached: Vec<usize> = passages.iter().map(|p| p.3).collect();
    if !seifert_circles_are_vertices(&reached, &circles.circles) {
        return Err(StandardError::Postcondition("Seifert circles at vertices"));
    }
    if stats.valences.iter().any(|&v| v != 2 && v != 3) {
        return Err(StandardError::Postcondition("valences 2 and 3"));
    }
    if genus >= 1 && stats.neighbored_class_count != 6 * genus - 3 {
        return Err(StandardError::Postcondition("neighbored class count"));
    }

    Ok(StandardDiagram {
        report: StandardReport {
            vertices: g.vertex_count(),
            edges: g.edge_count(),
            subdivided,
            genus,
            positive: signs.positive,
            negative: signs.negative,
            crossings,
            seifert_circles: circles.s,
            neighbored_classes: stats.neighbored_class_count,
            alternating,
            reduced,
        },
        diagram,
        word,
        base_word,
    })
}

/// Arc `i` of the diagram leaves passage `i`, so it lies at the vertex that
/// traversal reaches. Every circle must sit at a single vertex, and distinct
/// circles at distinct vertices.
fn seifert_circles_are_vertices(reached: &[usize], circles: &[Vec<usize>]) -> bool {
    let mut vertex_seen = vec![false; reached.len()];
    circles.iter().all(|circle| {
        let v = reached[circle[0]];
        circle.iter().all(|&i| reached[i] == v) && !std::mem::replace(&mut vertex_seen[v], true)
    })
}
