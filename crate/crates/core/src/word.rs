//! Cyclic quadratic words and (extended) Wicks forms.
//!
//! A word is stored as a linear sequence with a distinguished origin; every
//! position is read modulo the length. Letters are arbitrary positive ids and
//! may be sparse.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("malformed token {0:?}")]
    MalformedToken(String),
    #[error("zero is not a letter (token {0})")]
    ZeroToken(usize),
    #[error("letter id {0} is out of range")]
    LetterOutOfRange(u64),
    #[error("empty word")]
    Empty,
    #[error("word has odd length {0}")]
    OddLength(usize),
    #[error("letter {letter} occurs {count} times, expected exactly 2")]
    LetterCount { letter: u32, count: usize },
    #[error("letter {letter} occurs twice with the same exponent (non-orientable)")]
    SameExponent { letter: u32 },
    #[error("cancellation of letter {letter} at positions {position} and {next}")]
    Cancellation {
        letter: u32,
        position: usize,
        next: usize,
    },
    #[error("letter {0} does not occur in the word")]
    UnknownLetter(u32),
    #[error("extension count must be at least 1")]
    ZeroExtension,
    #[error("word is not a Wicks form: factor at {0} has its inverse factor at {1}")]
    NotWicks(usize, usize),
    #[error("letter id {0} cannot be written in the a-z alphabet")]
    AlphabetOverflow(u32),
}

/// A letter `a_i` or its inverse `a_i^-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedLetter {
    id: u32,
    inverted: bool,
}

impl SignedLetter {
    /// `exponent` must be `1` or `-1`; `id` must be positive.
    pub fn new(id: u32, exponent: i8) -> Option<Self> {
        match (id, exponent) {
            (0, _) => None,
            (_, 1) => Some(Self { id, inverted: false }),
            (_, -1) => Some(Self { id, inverted: true }),
            _ => None,
        }
    }

    pub fn pos(id: u32) -> Self {
        assert!(id > 0, "letter ids are positive");
        Self { id, inverted: false }
    }

    pub fn neg(id: u32) -> Self {
        assert!(id > 0, "letter ids are positive");
        Self { id, inverted: true }
    }

    pub fn id(self) -> u32 {
        self.id
    }

    pub fn exponent(self) -> i8 {
        if self.inverted {
            -1
        } else {
            1
        }
    }

    pub fn is_inverse(self) -> bool {
        self.inverted
    }

    pub fn inverse(self) -> Self {
        Self {
            id: self.id,
            inverted: !self.inverted,
        }
    }

    /// `self` raised to `exponent` (±1).
    pub fn pow(self, exponent: i8) -> Self {
        if exponent < 0 {
            self.inverse()
        } else {
            self
        }
    }

    pub fn to_int(self) -> i64 {
        i64::from(self.id) * i64::from(self.exponent())
    }

    pub fn from_int(v: i64) -> Option<Self> {
        let id = u32::try_from(v.unsigned_abs()).ok()?;
        Self::new(id, if v < 0 { -1 } else { 1 })
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_int())
    }
}

/// Output alphabet for word serialization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum WordFormat {
    /// Space-separated signed integers.
    #[default]
    Int,
    /// `a`..`z` for letters 1..26, uppercase for inverses, space-separated.
    Alpha,
}

/// A sequence of signed letters read cyclically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CyclicWord {
    symbols: Vec<SignedLetter>,
}

impl CyclicWord {
    pub fn new(symbols: Vec<SignedLetter>) -> Self {
        Self { symbols }
    }

    /// Builds a word from signed integers; panics on zero.
    pub fn from_ints(ints: &[i64]) -> Self {
        Self::new(
            ints.iter()
                .map(|&v| SignedLetter::from_int(v).expect("nonzero letter"))
                .collect(),
        )
    }

    pub fn symbols(&self) -> &[SignedLetter] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<SignedLetter> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Symbol at a position taken modulo the length.
    pub fn at(&self, position: usize) -> SignedLetter {
        self.symbols[position % self.symbols.len()]
    }

    /// The word read from `offset`: result position `i` holds `self[(i + offset) mod L]`.
    pub fn rotated(&self, offset: usize) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let mut symbols = self.symbols.clone();
        symbols.rotate_left(offset % self.len());
        Self { symbols }
    }

    /// Reversal with every exponent inverted.
    pub fn mirrored(&self) -> Self {
        Self {
            symbols: self.symbols.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// True iff `other` is a rotation of `self`.
    pub fn is_rotation_of(&self, other: &Self) -> bool {
        if self.len() != other.len() {
            return false;
        }
        self.is_empty() || crate::kmp::first_cyclic_offset(&other.symbols, &self.symbols).is_some()
    }

    /// Renames letters to `1, 2, 3, ...` in order of first occurrence, keeping exponents.
    pub fn canonical(&self) -> Self {
        let mut names: HashMap<u32, u32> = HashMap::new();
        let symbols = self
            .symbols
            .iter()
            .map(|s| {
                let next = names.len() as u32 + 1;
                let id = *names.entry(s.id).or_insert(next);
                SignedLetter {
                    id,
                    inverted: s.inverted,
                }
            })
            .collect();
        Self { symbols }
    }

    pub fn max_letter(&self) -> u32 {
        self.symbols.iter().map(|s| s.id).max().unwrap_or(0)
    }

    pub fn to_text(&self, format: WordFormat) -> Result<String, WordError> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.symbols {
            match format {
                WordFormat::Int => out.push(s.to_int().to_string()),
                WordFormat::Alpha => {
                    if s.id > 26 {
                        return Err(WordError::AlphabetOverflow(s.id));
                    }
                    let base = if s.inverted { b'A' } else { b'a' };
                    out.push(char::from(base + (s.id - 1) as u8).to_string());
                }
            }
        }
        Ok(out.join(" "))
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_text(WordFormat::Int) {
            Ok(s) => f.write_str(&s),
            Err(_) => Err(fmt::Error),
        }
    }
}

/// Parses whitespace-separated tokens. A token is either a nonzero integer
/// (the sign is the exponent) or a run of Latin letters, each letter read as
/// one symbol (`a`=1 .. `z`=26, uppercase = inverse).
pub fn parse_word(text: &str) -> Result<CyclicWord, WordError> {
    let mut symbols = Vec::new();
    for (index, token) in text.split_whitespace().enumerate() {
        if token.chars().all(|c| c.is_ascii_alphabetic()) {
            for c in token.bytes() {
                let s = if c.is_ascii_lowercase() {
                    SignedLetter::pos(u32::from(c - b'a') + 1)
                } else {
                    SignedLetter::neg(u32::from(c - b'A') + 1)
                };
                symbols.push(s);
            }
            continue;
        }
        let value: i64 = token
            .parse()
            .map_err(|_| WordError::MalformedToken(token.to_string()))?;
        if value == 0 {
            return Err(WordError::ZeroToken(index));
        }
        let s = SignedLetter::from_int(value)
            .ok_or(WordError::LetterOutOfRange(value.unsigned_abs()))?;
        symbols.push(s);
    }
    Ok(CyclicWord::new(symbols))
}

/// First and second occurrence (in the stored linearization) of one letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Occurrence {
    pub letter: u32,
    pub first: usize,
    pub second: usize,
}

/// One entry per letter, in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceTable {
    entries: Vec<Occurrence>,
}

impl OccurrenceTable {
    pub fn entries(&self) -> &[Occurrence] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, letter: u32) -> Option<Occurrence> {
        self.entries.iter().copied().find(|o| o.letter == letter)
    }
}

/// Letter id -> dense slot, dense array when ids are compact.
enum SlotIndex {
    Dense(Vec<u32>),
    Sparse(HashMap<u32, u32>),
}

impl SlotIndex {
    const NONE: u32 = u32::MAX;

    fn for_word(word: &CyclicWord) -> Self {
        let max = word.max_letter() as usize;
        if max <= 4 * word.len() + 64 {
            SlotIndex::Dense(vec![Self::NONE; max + 1])
        } else {
            SlotIndex::Sparse(HashMap::with_capacity(word.len() / 2))
        }
    }

    fn get(&self, id: u32) -> Option<u32> {
        match self {
            SlotIndex::Dense(v) => Some(v[id as usize]).filter(|&s| s != Self::NONE),
            SlotIndex::Sparse(m) => m.get(&id).copied(),
        }
    }

    fn insert(&mut self, id: u32, slot: u32) {
        match self {
            SlotIndex::Dense(v) => v[id as usize] = slot,
            SlotIndex::Sparse(m) => {
                m.insert(id, slot);
            }
        }
    }
}

/// A validated, orientable, cyclically reduced quadratic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticWord {
    word: CyclicWord,
    partner: Vec<usize>,
    slot: Vec<u32>,
    table: OccurrenceTable,
}

pub fn validate_quadratic(word: CyclicWord) -> Result<QuadraticWord, WordError> {
    QuadraticWord::new(word)
}

impl QuadraticWord {
    pub fn new(word: CyclicWord) -> Result<Self, WordError> {
        let len = word.len();
        if len == 0 {
            return Err(WordError::Empty);
        }
        if len % 2 == 1 {
            return Err(WordError::OddLength(len));
        }
        let mut index = SlotIndex::for_word(&word);
        let mut entries: Vec<Occurrence> = Vec::with_capacity(len / 2);
        let mut counts: Vec<usize> = Vec::with_capacity(len / 2);
        let mut slot = Vec::with_capacity(len);
        let mut partner = vec![usize::MAX; len];
        for (p, s) in word.symbols().iter().enumerate() {
            match index.get(s.id) {
                None => {
                    let k = entries.len() as u32;
                    index.insert(s.id, k);
                    entries.push(Occurrence {
                        letter: s.id,
                        first: p,
                        second: usize::MAX,
                    });
                    counts.push(1);
                    slot.push(k);
                }
                Some(k) => {
                    let k_us = k as usize;
                    counts[k_us] += 1;
                    if counts[k_us] == 2 {
                        let first = entries[k_us].first;
                        if word.symbols()[first].inverted == s.inverted {
                            return Err(WordError::SameExponent { letter: s.id });
                        }
                        entries[k_us].second = p;
                        partner[first] = p;
                        partner[p] = first;
                    }
                    slot.push(k);
                }
            }
        }
        if let Some((k, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(WordError::LetterCount {
                letter: entries[k].letter,
                count,
            });
        }
        for (p, &q) in partner.iter().enumerate() {
            let next = (p + 1) % len;
            if q == next {
                return Err(WordError::Cancellation {
                    letter: word.symbols()[p].id,
                    position: p,
                    next,
                });
            }
        }
        Ok(Self {
            word,
            partner,
            slot,
            table: OccurrenceTable { entries },
        })
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        Self::new(parse_word(text)?)
    }

    pub fn from_ints(ints: &[i64]) -> Result<Self, WordError> {
        Self::new(CyclicWord::from_ints(ints))
    }

    pub fn word(&self) -> &CyclicWord {
        &self.word
    }

    pub fn symbols(&self) -> &[SignedLetter] {
        self.word.symbols()
    }

    /// Length `2n`.
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// Never true: validation rejects the empty word.
    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Number of distinct letters `n`.
    pub fn letter_count(&self) -> usize {
        self.table.len()
    }

    /// Position of the other occurrence of the letter at `position`.
    pub fn partner(&self, position: usize) -> usize {
        self.partner[position]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Index into the occurrence table of the letter at `position`.
    pub fn slot(&self, position: usize) -> usize {
        self.slot[position] as usize
    }

    pub fn occurrence_table(&self) -> &OccurrenceTable {
        &self.table
    }

    pub fn rotated(&self, offset: usize) -> Self {
        Self::new(self.word.rotated(offset)).expect("rotation preserves validity")
    }

    pub fn mirrored(&self) -> Self {
        Self::new(self.word.mirrored()).expect("mirroring preserves validity")
    }

    pub fn canonical(&self) -> Self {
        Self::new(self.word.canonical()).expect("relabeling preserves validity")
    }

    /// Applies a letter bijection given as a map from letter id to the image of
    /// its positive symbol.
    pub fn relabeled(&self, map: &HashMap<u32, SignedLetter>) -> Result<Self, WordError> {
        let symbols = self
            .symbols()
            .iter()
            .map(|s| {
                map.get(&s.id)
                    .map(|img| img.pow(s.exponent()))
                    .ok_or(WordError::UnknownLetter(s.id))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(CyclicWord::new(symbols))
    }

    /// Canonical serialization: signed integers of the canonically relabeled word.
    pub fn serialize(&self) -> String {
        self.word.canonical().to_string()
    }
}

impl fmt::Display for QuadraticWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

pub fn occurrence_table(word: &QuadraticWord) -> &OccurrenceTable {
    word.occurrence_table()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WicksReport {
    pub is_wicks: bool,
    /// `(p, q)` with `p < q`: the factor at `p` is the inverse of the factor at `q`.
    pub violations: Vec<(usize, usize)>,
}

/// Checks that no cyclic factor `x y` has its inverse `y^-1 x^-1` elsewhere in the word.
pub fn wicks_check(word: &QuadraticWord) -> WicksReport {
    let violations: Vec<_> = inverse_factor_pairs(word).collect();
    WicksReport {
        is_wicks: violations.is_empty(),
        violations,
    }
}

/// The factor at `p` is `w_p w_{p+1}`; its inverse factor starts at
/// `q = partner(p+1)` exactly when `partner(q+1) = p`.
fn inverse_factor_pairs(word: &QuadraticWord) -> impl Iterator<Item = (usize, usize)> + '_ {
    let len = word.len();
    (0..len).filter_map(move |p| {
        let q = word.partner((p + 1) % len);
        (word.partner(p) == (q + 1) % len && p < q).then_some((p, q))
    })
}

/// A quadratic word satisfying the no-inverse-factor condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WicksForm {
    base: QuadraticWord,
}

impl WicksForm {
    pub fn new(base: QuadraticWord) -> Result<Self, WordError> {
        let violation = inverse_factor_pairs(&base).next();
        match violation {
            Some((p, q)) => Err(WordError::NotWicks(p, q)),
            None => Ok(Self { base }),
        }
    }

    pub fn word(&self) -> &QuadraticWord {
        &self.base
    }

    pub fn into_word(self) -> QuadraticWord {
        self.base
    }
}

/// Replaces `a` by `a_1 ... a_k` and `a^-1` by `a_k^-1 ... a_1^-1`.
///
/// `a_1` keeps the id of `a`; `a_2 .. a_k` get fresh ids above the current maximum.
pub fn extend_letter(word: &QuadraticWord, letter: u32, k: usize) -> Result<QuadraticWord, WordError> {
    if k == 0 {
        return Err(WordError::ZeroExtension);
    }
    if word.occurrence_table().get(letter).is_none() {
        return Err(WordError::UnknownLetter(letter));
    }
    let base = word.word().max_letter();
    let block: Vec<u32> = std::iter::once(letter)
        .chain((1..k as u32).map(|i| base + i))
        .collect();
    let mut symbols = Vec::with_capacity(word.len() + 2 * (k - 1));
    for &s in word.symbols() {
        if s.id != letter {
            symbols.push(s);
        } else if s.is_inverse() {
            symbols.extend(block.iter().rev().map(|&id| SignedLetter::neg(id)));
        } else {
            symbols.extend(block.iter().map(|&id| SignedLetter::pos(id)));
        }
    }
    QuadraticWord::new(CyclicWord::new(symbols))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collapse {
    pub base: WicksForm,
    /// Letter of `base` -> number of letters of the input word it absorbed.
    pub multiplicities: BTreeMap<u32, usize>,
}

/// Undoes letter extensions: merges inverse factor pairs (smallest starting
/// position first) until the word is a Wicks form.
pub fn collapse_extensions(word: &QuadraticWord) -> Collapse {
    let mut multiplicities: BTreeMap<u32, usize> =
        word.occurrence_table().entries().iter().map(|o| (o.letter, 1)).collect();
    let mut fresh = word.word().max_letter();
    let mut current = word.clone();
    loop {
        let Some((p, q)) = inverse_factor_pairs(&current).next() else {
            break;
        };
        let len = current.len();
        let x = current.symbols()[p];
        let y = current.symbols()[(p + 1) % len];
        fresh += 1;
        let z = SignedLetter::pos(fresh);
        let absorbed = multiplicities.remove(&x.id).unwrap_or(1) + multiplicities.remove(&y.id).unwrap_or(1);
        multiplicities.insert(fresh, absorbed);
        let (p_next, q_next) = ((p + 1) % len, (q + 1) % len);
        let symbols: Vec<SignedLetter> = current
            .symbols()
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| {
                if i == p {
                    Some(z)
                } else if i == q {
                    Some(z.inverse())
                } else if i == p_next || i == q_next {
                    None
                } else {
                    Some(s)
                }
            })
            .collect();
        current = QuadraticWord::new(CyclicWord::new(symbols)).expect("merging an inverse factor pair preserves validity");
    }
    Collapse {
        base: WicksForm { base: current },
        multiplicities,
    }
}
