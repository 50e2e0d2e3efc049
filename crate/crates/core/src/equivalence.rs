//! Isomorphism of quadratic words up to rotation and letter renaming.
//!
//! Two words are isomorphic when some rotation of one, after renaming its
//! letters, equals the other. The chord structure of a word is captured by its
//! distance sequence `d_p = (partner(p) - p) mod 2n`; a rotation offset works
//! for some renaming iff the distance sequences agree at that offset, which
//! reduces the search to cyclic pattern matching over an integer alphabet.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::kmp;
use crate::word::{QuadraticWord, SignedLetter};

pub const DEFAULT_BRUTEFORCE_BOUND: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("brute-force comparison is limited to {bound} letters, word has {letters}")]
    BoundExceeded { bound: usize, letters: usize },
    #[error("internal error: isomorphism witness failed reconstruction")]
    WitnessRejected,
}

/// Forward cyclic distance from each position to its partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DSequence(pub Vec<usize>);

impl DSequence {
    pub fn values(&self) -> &[usize] {
        &self.0
    }
}

pub fn d_sequence(word: &QuadraticWord) -> DSequence {
    let len = word.len();
    DSequence(
        (0..len)
            .map(|p| (word.partner(p) + len - p) % len)
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct IsoOptions {
    /// Also try the reversal-with-inversion of the second word.
    pub mirror: bool,
    /// Letters must map to letters (never to inverse letters).
    pub strict_exponents: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoResult {
    pub isomorphic: bool,
    /// `r` such that `w1[(i + r) mod L] = φ(w2')[i]`, where `w2'` is `w2` or its mirror.
    pub rotation_offset: Option<usize>,
    /// `(letter of w2', image of its positive symbol in w1)`, sorted by letter.
    pub letter_map: Option<Vec<(u32, SignedLetter)>>,
    pub mirrored: bool,
}

impl IsoResult {
    fn negative() -> Self {
        Self {
            isomorphic: false,
            rotation_offset: None,
            letter_map: None,
            mirrored: false,
        }
    }
}

/// Checks a positive result by applying the map, rotating and comparing symbol by symbol.
pub fn verify_witness(w1: &QuadraticWord, w2: &QuadraticWord, result: &IsoResult) -> bool {
    let (Some(offset), Some(map)) = (result.rotation_offset, result.letter_map.as_ref()) else {
        return !result.isomorphic;
    };
    if !result.isomorphic || w1.len() != w2.len() {
        return false;
    }
    let source = if result.mirrored { w2.mirrored() } else { w2.clone() };
    let map: HashMap<u32, SignedLetter> = map.iter().copied().collect();
    if map.len() != source.letter_count() {
        return false;
    }
    let len = w1.len();
    source.symbols().iter().enumerate().all(|(i, s)| {
        map.get(&s.id())
            .is_some_and(|img| img.pow(s.exponent()) == w1.symbols()[(i + offset) % len])
    })
}

/// Renaming read off position-wise at a rotation offset, if consistent.
fn letter_map_at(
    w1: &QuadraticWord,
    w2: &QuadraticWord,
    offset: usize,
    strict: bool,
) -> Option<Vec<(u32, SignedLetter)>> {
    let len = w1.len();
    let mut images: Vec<Option<SignedLetter>> = vec![None; w2.letter_count()];
    for (i, &s) in w2.symbols().iter().enumerate() {
        let target = w1.symbols()[(i + offset) % len];
        let image = target.pow(s.exponent());
        if strict && image.is_inverse() {
            return None;
        }
        let slot = &mut images[w2.slot(i)];
        match slot {
            None => *slot = Some(image),
            Some(prev) if *prev == image => {}
            Some(_) => return None,
        }
    }
    let mut map: Vec<(u32, SignedLetter)> = w2
        .occurrence_table()
        .entries()
        .iter()
        .zip(images)
        .map(|(o, img)| (o.letter, img.expect("every letter occurs")))
        .collect();
    map.sort_unstable_by_key(|&(l, _)| l);
    Some(map)
}

fn kmp_offset(w1: &QuadraticWord, w2: &QuadraticWord, strict: bool) -> Option<usize> {
    let d1 = d_sequence(w1).0;
    let d2 = d_sequence(w2).0;
    if strict {
        let t1: Vec<(usize, bool)> = d1.into_iter().zip(w1.symbols().iter().map(|s| s.is_inverse())).collect();
        let t2: Vec<(usize, bool)> = d2.into_iter().zip(w2.symbols().iter().map(|s| s.is_inverse())).collect();
        kmp::first_cyclic_offset(&t2, &t1)
    } else {
        kmp::first_cyclic_offset(&d2, &d1)
    }
}

/// Isomorphism test by cyclic KMP search of `d(w2)` inside `d(w1) d(w1)`.
pub fn iso_words(w1: &QuadraticWord, w2: &QuadraticWord, options: IsoOptions) -> Result<IsoResult, IsoError> {
    if w1.len() != w2.len() {
        return Ok(IsoResult::negative());
    }
    let strict = options.strict_exponents;
    let mut attempts = vec![(false, w2.clone())];
    if options.mirror {
        attempts.push((true, w2.mirrored()));
    }
    for (mirrored, candidate) in attempts {
        let Some(offset) = kmp_offset(w1, &candidate, strict) else {
            continue;
        };
        let map = letter_map_at(w1, &candidate, offset, strict).ok_or(IsoError::WitnessRejected)?;
        let result = IsoResult {
            isomorphic: true,
            rotation_offset: Some(offset),
            letter_map: Some(map),
            mirrored,
        };
        if !verify_witness(w1, w2, &result) {
            return Err(IsoError::WitnessRejected);
        }
        return Ok(result);
    }
    Ok(IsoResult::negative())
}

/// Tries every rotation and reads the renaming off position-wise.
pub fn iso_bruteforce(
    w1: &QuadraticWord,
    w2: &QuadraticWord,
    options: IsoOptions,
    bound: usize,
) -> Result<IsoResult, IsoError> {
    for w in [w1, w2] {
        if w.letter_count() > bound {
            return Err(IsoError::BoundExceeded {
                bound,
                letters: w.letter_count(),
            });
        }
    }
    if w1.len() != w2.len() {
        return Ok(IsoResult::negative());
    }
    let mut attempts = vec![(false, w2.clone())];
    if options.mirror {
        attempts.push((true, w2.mirrored()));
    }
    for (mirrored, candidate) in attempts {
        for offset in 0..w1.len() {
            if let Some(map) = letter_map_at(w1, &candidate, offset, options.strict_exponents) {
                return Ok(IsoResult {
                    isomorphic: true,
                    rotation_offset: Some(offset),
                    letter_map: Some(map),
                    mirrored,
                });
            }
        }
    }
    Ok(IsoResult::negative())
}
