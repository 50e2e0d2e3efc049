//! Knot diagrams given by Gauss codes.
//!
//! A diagram with `n` crossings is the cyclic sequence of its `2n` passages.
//! Arc `i` runs from passage `i` to passage `i+1 (mod 2n)`.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::word::{CyclicWord, QuadraticWord, SignedLetter, WordError};

pub const DEFAULT_EXACT_BOUND: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed Gauss token {0:?}")]
    MalformedToken(String),
    #[error("crossing {crossing} appears {count} times, expected 2")]
    CrossingCount { crossing: u32, count: usize },
    #[error("both passages of crossing {0} have the same strand type")]
    SameStrand(u32),
    #[error("sign annotations must be given on every passage or on none")]
    MixedSigns,
    #[error("passages of crossing {0} carry different signs")]
    SignMismatch(u32),
    #[error("crossing {0} has adjacent passages (kink); its word is not cyclically reduced")]
    Kink(u32),
    #[error("exact realizability search is limited to {bound} crossings, diagram has {crossings}")]
    ExactBound { bound: usize, crossings: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn flipped(self) -> Self {
        match self {
            Strand::Over => Strand::Under,
            Strand::Under => Strand::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CrossingSign {
    Positive,
    Negative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Passage {
    pub crossing: u32,
    pub strand: Strand,
    pub sign: Option<CrossingSign>,
}

impl Passage {
    pub fn new(crossing: u32, strand: Strand) -> Self {
        Self {
            crossing,
            strand,
            sign: None,
        }
    }
}

impl fmt::Display for Passage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.strand {
            Strand::Over => 'O',
            Strand::Under => 'U',
        };
        write!(f, "{s}{}", self.crossing)?;
        match self.sign {
            Some(CrossingSign::Positive) => write!(f, "+"),
            Some(CrossingSign::Negative) => write!(f, "-"),
            None => Ok(()),
        }
    }
}

/// Chords on a circle of `2n` points: `partner[p]` is the other end of the chord at `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    labels: Vec<u32>,
    partner: Vec<usize>,
}

impl ChordDiagram {
    /// Every label must occur exactly twice.
    pub fn from_labels(labels: Vec<u32>) -> Result<Self, DiagramError> {
        let mut first: HashMap<u32, usize> = HashMap::new();
        let mut count: HashMap<u32, usize> = HashMap::new();
        let mut partner = vec![usize::MAX; labels.len()];
        for (p, &l) in labels.iter().enumerate() {
            *count.entry(l).or_default() += 1;
            if let Some(&q) = first.get(&l) {
                if partner[q] == usize::MAX {
                    partner[q] = p;
                    partner[p] = q;
                }
            } else {
                first.insert(l, p);
            }
        }
        let mut bad: Vec<(u32, usize)> = count.into_iter().filter(|&(_, c)| c != 2).collect();
        bad.sort_unstable();
        if let Some(&(crossing, count)) = bad.first() {
            return Err(DiagramError::CrossingCount { crossing, count });
        }
        Ok(Self { labels, partner })
    }

    /// Whitespace-separated integer labels.
    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        let labels = text
            .split_whitespace()
            .map(|t| t.parse::<u32>().map_err(|_| DiagramError::MalformedToken(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_labels(labels)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn chord_count(&self) -> usize {
        self.labels.len() / 2
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    /// Chords as `(first, second)` position pairs, ordered by first position.
    pub fn chords(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter(|&p| p < self.partner[p])
            .map(|p| (p, self.partner[p]))
            .collect()
    }

    /// For every chord (ordered by first position), how many chords it interlaces.
    pub fn interlace_counts(&self) -> Vec<usize> {
        let chords = self.chords();
        // chords nested inside (p, q): count chords (a, b) with p < a < b < q,
        // sweeping by right endpoint with a Fenwick tree over left endpoints
        let len = self.len();
        let mut by_end: Vec<usize> = (0..chords.len()).collect();
        by_end.sort_unstable_by_key(|&c| chords[c].1);
        let mut tree = Fenwick::new(len);
        let mut nested = vec![0usize; chords.len()];
        for (inserted, c) in by_end.into_iter().enumerate() {
            let (p, _) = chords[c];
            nested[c] = inserted - tree.prefix(p + 1);
            tree.add(p);
        }
        chords
            .iter()
            .zip(nested)
            .map(|(&(p, q), inside)| (q - p - 1) - 2 * inside)
            .collect()
    }
}

struct Fenwick(Vec<usize>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over indices `< i`.
    fn prefix(&self, i: usize) -> usize {
        let mut i = i;
        let mut s = 0;
        while i > 0 {
            s += self.0[i];
            i &= i - 1;
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnotDiagram {
    passages: Vec<Passage>,
    chords: ChordDiagram,
}

impl KnotDiagram {
    /// The empty passage list is the crossing-free unknot diagram.
    pub fn new(passages: Vec<Passage>) -> Result<Self, DiagramError> {
        let chords = ChordDiagram::from_labels(passages.iter().map(|p| p.crossing).collect())?;
        let signed = passages.iter().filter(|p| p.sign.is_some()).count();
        if signed != 0 && signed != passages.len() {
            return Err(DiagramError::MixedSigns);
        }
        for (p, q) in chords.chords() {
            let (a, b) = (passages[p], passages[q]);
            if a.strand == b.strand {
                return Err(DiagramError::SameStrand(a.crossing));
            }
            if a.sign != b.sign {
                return Err(DiagramError::SignMismatch(a.crossing));
            }
        }
        Ok(Self { passages, chords })
    }

    pub fn parse(text: &str) -> Result<Self, DiagramError> {
        parse_gauss(text)
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    pub fn crossing_count(&self) -> usize {
        self.passages.len() / 2
    }

    pub fn chords(&self) -> &ChordDiagram {
        &self.chords
    }

    pub fn partner(&self, p: usize) -> usize {
        self.chords.partner(p)
    }

    pub fn rotated(&self, offset: usize) -> Self {
        let mut passages = self.passages.clone();
        if !passages.is_empty() {
            let len = passages.len();
            passages.rotate_left(offset % len);
        }
        Self::new(passages).expect("rotation preserves validity")
    }

    /// Swaps every over and under mark.
    pub fn mirrored(&self) -> Self {
        let passages = self
            .passages
            .iter()
            .map(|p| Passage {
                strand: p.strand.flipped(),
                ..*p
            })
            .collect();
        Self::new(passages).expect("mirroring preserves validity")
    }

    /// `O<id>`/`U<id>` tokens, space-separated.
    pub fn to_gauss(&self) -> String {
        self.passages.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_gauss())
    }
}

/// Accepts `O3`, `U3`, `o3`, `O3+`, `U3-`, or signed integers (positive = over).
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, DiagramError> {
    let passages = text
        .split_whitespace()
        .map(parse_passage)
        .collect::<Result<Vec<_>, _>>()?;
    KnotDiagram::new(passages)
}

fn parse_passage(token: &str) -> Result<Passage, DiagramError> {
    let malformed = || DiagramError::MalformedToken(token.to_string());
    let strand = match token.chars().next() {
        Some('O' | 'o') => Some(Strand::Over),
        Some('U' | 'u') => Some(Strand::Under),
        _ => None,
    };
    let Some(strand) = strand else {
        let v: i64 = token.parse().map_err(|_| malformed())?;
        let crossing = u32::try_from(v.unsigned_abs()).ok().filter(|&c| c > 0).ok_or_else(malformed)?;
        let strand = if v > 0 { Strand::Over } else { Strand::Under };
        return Ok(Passage::new(crossing, strand));
    };
    let rest = &token[1..];
    let (digits, sign) = match rest.as_bytes().last() {
        Some(b'+') => (&rest[..rest.len() - 1], Some(CrossingSign::Positive)),
        Some(b'-') => (&rest[..rest.len() - 1], Some(CrossingSign::Negative)),
        _ => (rest, None),
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let crossing: u32 = digits.parse().map_err(|_| malformed())?;
    if crossing == 0 {
        return Err(malformed());
    }
    Ok(Passage {
        crossing,
        strand,
        sign,
    })
}

pub fn is_alternating(d: &KnotDiagram) -> bool {
    let ps = d.passages();
    (0..ps.len()).all(|i| ps[i].strand != ps[(i + 1) % ps.len()].strand)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedReport {
    pub reduced: bool,
    pub nugatory: Vec<u32>,
}

/// A crossing is nugatory when its chord interlaces no other chord.
pub fn is_reduced(d: &KnotDiagram) -> ReducedReport {
    let chords = d.chords();
    let mut nugatory: Vec<u32> = chords
        .chords()
        .iter()
        .zip(chords.interlace_counts())
        .filter(|&(_, count)| count == 0)
        .map(|(&(p, _), _)| chords.labels()[p])
        .collect();
    nugatory.sort_unstable();
    ReducedReport {
        reduced: nugatory.is_empty(),
        nugatory,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertReport {
    pub c: usize,
    pub s: usize,
    pub genus: usize,
    /// Arc indices of each Seifert circle, each sorted, circles ordered by smallest arc.
    pub circles: Vec<Vec<usize>>,
}

/// Oriented smoothing of every crossing: the arc entering passage `i+1`
/// continues along the arc leaving the other passage of that crossing, so
/// `succ(i) = partner(i+1)`. Circles are the cycles of `succ`.
pub fn seifert(d: &KnotDiagram) -> SeifertReport {
    let c = d.crossing_count();
    if c == 0 {
        return SeifertReport {
            c: 0,
            s: 1,
            genus: 0,
            circles: vec![Vec::new()],
        };
    }
    let len = 2 * c;
    let succ = |i: usize| d.partner((i + 1) % len);
    let mut seen = vec![false; len];
    let mut circles = Vec::new();
    for start in 0..len {
        if seen[start] {
            continue;
        }
        let mut circle = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            circle.push(i);
            i = succ(i);
        }
        circle.sort_unstable();
        circles.push(circle);
    }
    let s = circles.len();
    debug_assert!((c + 1 - s).is_multiple_of(2));
    SeifertReport {
        c,
        s,
        genus: (c + 1 - s) / 2,
        circles,
    }
}

/// Letter = crossing id; exponent +1 at the first passage, -1 at the second.
pub fn word_from_diagram(d: &KnotDiagram) -> Result<QuadraticWord, DiagramError> {
    let len = d.passages().len();
    let symbols: Vec<SignedLetter> = d
        .passages()
        .iter()
        .enumerate()
        .map(|(p, pass)| {
            if p < d.partner(p) {
                SignedLetter::pos(pass.crossing)
            } else {
                SignedLetter::neg(pass.crossing)
            }
        })
        .collect();
    if let Some(p) = (0..len).find(|&p| d.partner(p) == (p + 1) % len) {
        return Err(DiagramError::Kink(d.passages()[p].crossing));
    }
    Ok(QuadraticWord::new(CyclicWord::new(symbols))?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizabilityMode {
    /// Necessary condition: every chord interlaces an even number of chords.
    Parity,
    /// Exhaustive search over the two local rotations at every crossing.
    Exact,
}

pub fn realizability_check(
    chords: &ChordDiagram,
    mode: RealizabilityMode,
    bound: usize,
) -> Result<bool, DiagramError> {
    match mode {
        RealizabilityMode::Parity => Ok(chords.interlace_counts().iter().all(|c| c % 2 == 0)),
        RealizabilityMode::Exact => {
            let n = chords.chord_count();
            if n > bound {
                return Err(DiagramError::ExactBound { bound, crossings: n });
            }
            Ok(exact_realizable(chords))
        }
    }
}

/// The 4-valent graph with crossings as vertices and arcs as edges has a
/// planar rotation system (`F = n + 2` faces) for some choice of the two
/// transverse rotations at every crossing.
fn exact_realizable(chords: &ChordDiagram) -> bool {
    let n = chords.chord_count();
    if n == 0 {
        return true;
    }
    let len = 2 * n;
    let pairs = chords.chords();
    // darts: 2*i = tail of arc i (leaving passage i), 2*i+1 = head of arc i (entering passage i+1)
    let tail = |arc: usize| 2 * arc;
    let head = |arc: usize| 2 * arc + 1;
    let mut rot = vec![0usize; 2 * len];
    // the global mirror swaps both choices everywhere, so crossing 0 is fixed
    for mask in 0u64..(1u64 << (n - 1)) {
        for (c, &(p, q)) in pairs.iter().enumerate() {
            let in_p = head((p + len - 1) % len);
            let out_p = tail(p);
            let in_q = head((q + len - 1) % len);
            let out_q = tail(q);
            let flip = c > 0 && (mask >> (c - 1)) & 1 == 1;
            let cycle = if flip {
                [in_p, out_q, out_p, in_q]
            } else {
                [in_p, in_q, out_p, out_q]
            };
            for k in 0..4 {
                rot[cycle[k]] = cycle[(k + 1) % 4];
            }
        }
        if count_faces(&rot) == n + 2 {
            return true;
        }
    }
    false
}

/// Orbits of `d ↦ rot(twin(d))`, with `twin` pairing darts `2i` and `2i+1`.
fn count_faces(rot: &[usize]) -> usize {
    let mut seen = vec![false; rot.len()];
    let mut faces = 0;
    for start in 0..rot.len() {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = rot[d ^ 1];
        }
    }
    faces
}
