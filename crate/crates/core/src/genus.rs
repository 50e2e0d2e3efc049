//! Genus of quadratic words.
//!
//! Gluing the sides of the `2n`-gon labelled by a word `w` pairwise gives a
//! closed orientable surface carrying a graph Γ with `n` edges. Corner `p` of
//! the polygon is the start of side `p`; gluing the two sides `m < k` of a
//! letter identifies corner `m` with corner `k+1` and corner `k` with corner
//! `m+1`. These identifications are the edges of the auxiliary graph Δ on the
//! corners, and the components of Δ are the vertices of Γ. Hence
//! `κ = |V| - n + 1` and `g = (2 - κ) / 2`.
//!
//! Four independent routes compute `|V|`:
//! * [`genus_linear`]: connected components of Δ by union-find;
//! * [`genus_perm`]: cycles of `σ_w ∘ τ` on the `2n` signed symbols;
//! * [`genus_bounded`]: local pattern counting, valid when every Δ-component
//!   has two or three corners;
//! * [`genus_oracle_rank`]: half the GF(2) rank of the chord interlacement
//!   matrix, cubic time, used as a test oracle.

use serde::Serialize;
use thiserror::Error;

use crate::dsu::DisjointSets;
use crate::word::{OccurrenceTable, QuadraticWord};

pub const DEFAULT_ORACLE_BOUND: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("word is not standard: a Δ-component has {size} corners (expected 2 or 3)")]
    NotStandard { size: usize },
    #[error("rank oracle is limited to {bound} letters, word has {letters}")]
    OracleBound { bound: usize, letters: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenusMethod {
    Linear,
    Perm,
    Bounded,
    Oracle,
}

impl GenusMethod {
    pub fn name(self) -> &'static str {
        match self {
            GenusMethod::Linear => "linear",
            GenusMethod::Perm => "perm",
            GenusMethod::Bounded => "bounded",
            GenusMethod::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub n: usize,
    pub gamma_vertices: usize,
    pub euler: i64,
    pub genus: u64,
    pub method: GenusMethod,
}

impl GenusReport {
    pub fn from_vertex_count(n: usize, gamma_vertices: usize, method: GenusMethod) -> Self {
        let euler = gamma_vertices as i64 - n as i64 + 1;
        debug_assert!(euler <= 2 && euler % 2 == 0, "orientable surfaces have even κ ≤ 2");
        Self {
            n,
            gamma_vertices,
            euler,
            genus: ((2 - euler) / 2) as u64,
            method,
        }
    }

    /// Same counts regardless of the method tag.
    pub fn agrees_with(&self, other: &Self) -> bool {
        (self.n, self.gamma_vertices, self.euler, self.genus)
            == (other.n, other.gamma_vertices, other.euler, other.genus)
    }
}

/// Δ on the corner set `0..2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl DeltaGraph {
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn components(&self) -> DisjointSets {
        let mut sets = DisjointSets::new(self.vertex_count);
        for &(a, b) in &self.edges {
            sets.union(a, b);
        }
        sets
    }
}

/// Two edges per letter `(m, k)`: `{m, k+1}` and `{k, m+1}`, indices mod `2n`.
pub fn build_delta(table: &OccurrenceTable, n: usize) -> DeltaGraph {
    let len = 2 * n;
    let mut edges = Vec::with_capacity(len);
    for o in table.entries() {
        edges.push((o.first, (o.second + 1) % len));
        edges.push((o.second, (o.first + 1) % len));
    }
    DeltaGraph {
        vertex_count: len,
        edges,
    }
}

/// Traversal of Δ. Its edges `{m, k+1}` and `{k, m+1}` join every corner `c`
/// to `partner(c) + 1`, so following that successor from a corner traces its
/// whole component.
///
/// Several walks advance in lockstep so their memory accesses overlap. A walk
/// stops on reaching a visited corner; if that corner was claimed by another
/// walk it is the start of that walk, and the two walks cover one component.
pub fn genus_linear(word: &QuadraticWord) -> GenusReport {
    const WALKERS: usize = 64;
    const UNSEEN: u32 = u32::MAX;
    let n = word.letter_count();
    let len = word.len();
    let partners = word.partners();
    let succ = |c: usize| if partners[c] + 1 == len { 0 } else { partners[c] + 1 };
    let mut owner = vec![UNSEEN; len];
    let mut walks = DisjointSets::new(0);
    let mut active: Vec<(usize, u32)> = Vec::with_capacity(WALKERS);
    let mut next_start = 0;
    let mut merged = 0;
    loop {
        while active.len() < WALKERS {
            while next_start < len && owner[next_start] != UNSEEN {
                next_start += 1;
            }
            if next_start == len {
                break;
            }
            let id = walks.push() as u32;
            owner[next_start] = id;
            active.push((succ(next_start), id));
        }
        if active.is_empty() {
            break;
        }
        let mut i = 0;
        while i < active.len() {
            let (c, id) = active[i];
            let seen_by = owner[c];
            if seen_by == UNSEEN {
                owner[c] = id;
                active[i].0 = succ(c);
                i += 1;
            } else {
                if walks.union(seen_by as usize, id as usize) {
                    merged += 1;
                }
                active.swap_remove(i);
            }
        }
    }
    GenusReport::from_vertex_count(n, walks.len() - merged, GenusMethod::Linear)
}

/// Counts cycles of `π = σ_w ∘ τ`, where `σ_w` sends each symbol of `w` to the
/// cyclically next one and `τ` swaps every letter with its inverse.
pub fn genus_perm(word: &QuadraticWord) -> GenusReport {
    let n = word.letter_count();
    let len = word.len();
    // symbol index: 2 * slot + (1 if inverse)
    let symbol_at: Vec<usize> = (0..len)
        .map(|p| 2 * word.slot(p) + usize::from(word.symbols()[p].is_inverse()))
        .collect();
    let mut position_of = vec![0usize; len];
    for (p, &s) in symbol_at.iter().enumerate() {
        position_of[s] = p;
    }
    let sigma = |s: usize| symbol_at[(position_of[s] + 1) % len];
    let tau = |s: usize| s ^ 1;
    let mut seen = vec![false; len];
    let mut cycles = 0;
    for start in 0..len {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            s = sigma(tau(s));
        }
    }
    GenusReport::from_vertex_count(n, cycles, GenusMethod::Perm)
}

/// Δ read as the permutation `p ↦ partner(p) + 1`, each edge `(p, σ(p))`
/// presented pointwise. Chained edge pairs `(i,j),(j,k)` with `k ≠ i` give
/// ordered triples, back-and-forth pairs give 2-components; the vertex count
/// is `#triples / 3 + #pairs`.
pub fn genus_bounded(word: &QuadraticWord) -> Result<GenusReport, GenusError> {
    let n = word.letter_count();
    let len = word.len();
    let sigma = |p: usize| (word.partner(p) + 1) % len;
    let mut triples = 0usize;
    let mut pairs = 0usize;
    for i in 0..len {
        let j = sigma(i);
        let k = sigma(j);
        if j == i {
            return Err(GenusError::NotStandard { size: 1 });
        } else if k == i {
            if i < j {
                pairs += 1;
            }
        } else if sigma(k) == i {
            triples += 1;
        } else {
            return Err(GenusError::NotStandard {
                size: cycle_length(i, sigma),
            });
        }
    }
    debug_assert_eq!(triples % 3, 0);
    Ok(GenusReport::from_vertex_count(n, triples / 3 + pairs, GenusMethod::Bounded))
}

fn cycle_length(start: usize, f: impl Fn(usize) -> usize) -> usize {
    let mut len = 1;
    let mut p = f(start);
    while p != start {
        p = f(p);
        len += 1;
    }
    len
}

/// Symmetric 0/1 matrix over GF(2), rows packed into `u64` words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Rank over the two-element field by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let w = self.words;
        let mut rows: Vec<Vec<u64>> = self.bits.chunks(w).map(<[u64]>::to_vec).collect();
        let mut rank = 0;
        for col in 0..self.n {
            let (word, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[word] & bit != 0 {
                    for (a, b) in row.iter_mut().zip(&pivot_row) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `M[i][j] = 1` iff exactly one occurrence of letter `j` lies strictly between
/// the two occurrences of letter `i`.
pub fn interlacement_matrix(table: &OccurrenceTable) -> BitMatrix {
    let entries = table.entries();
    let mut m = BitMatrix::zeros(entries.len());
    for (i, a) in entries.iter().enumerate() {
        for (j, b) in entries.iter().enumerate() {
            let inside = |p: usize| a.first < p && p < a.second;
            if i != j && inside(b.first) != inside(b.second) {
                m.set(i, j);
            }
        }
    }
    m
}

pub fn genus_oracle_rank(word: &QuadraticWord, bound: usize) -> Result<GenusReport, GenusError> {
    let n = word.letter_count();
    if n > bound {
        return Err(GenusError::OracleBound { bound, letters: n });
    }
    let rank = interlacement_matrix(word.occurrence_table()).rank();
    let genus = rank / 2;
    Ok(GenusReport::from_vertex_count(n, n + 1 - 2 * genus, GenusMethod::Oracle))
}

/// Valence profile of Γ and its neighbored edge classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaStats {
    /// Valence of each Γ-vertex, in decreasing order.
    pub valences: Vec<usize>,
    pub edge_count: usize,
    /// Classes of Γ-edges under "share an endpoint of valence 2".
    pub neighbored_class_count: usize,
    /// Endpoints (vertex labels) of the Γ-edge of each letter, in occurrence-table order.
    #[serde(skip)]
    pub edge_ends: Vec<(usize, usize)>,
    /// Γ-vertex label of every corner.
    #[serde(skip)]
    pub corner_vertex: Vec<usize>,
}

pub fn gamma_stats(word: &QuadraticWord) -> GammaStats {
    let n = word.letter_count();
    let len = word.len();
    let corner_vertex = build_delta(word.occurrence_table(), n).components().labels();
    let vertex_count = corner_vertex.iter().max().map_or(0, |&m| m + 1);
    // The Δ-edge leaving corner p along σ belongs to the letter at p, so the
    // letters sitting at the corners of a Γ-vertex are its edge ends.
    let mut corners: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
    for (p, &v) in corner_vertex.iter().enumerate() {
        corners[v].push(p);
    }
    let mut classes = DisjointSets::new(n);
    for cs in corners.iter().filter(|c| c.len() == 2) {
        classes.union(word.slot(cs[0]), word.slot(cs[1]));
    }
    let edge_ends = word
        .occurrence_table()
        .entries()
        .iter()
        .map(|o| (corner_vertex[o.first], corner_vertex[o.second]))
        .collect();
    let mut valences: Vec<usize> = corners.iter().map(Vec::len).collect();
    valences.sort_unstable_by(|a, b| b.cmp(a));
    debug_assert_eq!(valences.iter().sum::<usize>(), len);
    GammaStats {
        valences,
        edge_count: n,
        neighbored_class_count: classes.set_count(),
        edge_ends,
        corner_vertex,
    }
}

/// Combined JSON record for one word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenusRecord {
    pub n: usize,
    pub gamma_vertices: usize,
    pub euler: i64,
    pub genus: u64,
    pub method: GenusMethod,
    pub valences: Vec<usize>,
    pub neighbored_classes: usize,
}

impl GenusRecord {
    pub fn new(report: &GenusReport, stats: &GammaStats) -> Self {
        Self {
            n: report.n,
            gamma_vertices: report.gamma_vertices,
            euler: report.euler,
            genus: report.genus,
            method: report.method,
            valences: stats.valences.clone(),
            neighbored_classes: stats.neighbored_class_count,
        }
    }
}
