//! Seeded generators for words, relabelings and diagrams.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::diagram::{KnotDiagram, Passage, Strand};
use crate::word::{CyclicWord, QuadraticWord, SignedLetter};

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random perfect matching of `2n` positions with no adjacent pair
/// (cyclically), redrawn until one is found. Returns `partner`.
fn random_reduced_matching<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let len = 2 * n;
    let mut order: Vec<usize> = (0..len).collect();
    let mut partner = vec![0; len];
    loop {
        order.shuffle(rng);
        for pair in order.chunks_exact(2) {
            partner[pair[0]] = pair[1];
            partner[pair[1]] = pair[0];
        }
        if (0..len).all(|p| partner[p] != (p + 1) % len) {
            return partner;
        }
    }
}

/// Random cyclically reduced quadratic word on letters `1..=n`: the earlier
/// occurrence of each letter gets exponent +1. `None` for `n < 2`, where no
/// reduced word exists.
pub fn random_quadratic_word<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<QuadraticWord> {
    if n < 2 {
        return None;
    }
    let partner = random_reduced_matching(n, rng);
    let mut next = 0u32;
    let mut ids = vec![0u32; 2 * n];
    let symbols = (0..2 * n)
        .map(|p| {
            if p < partner[p] {
                next += 1;
                ids[p] = next;
                SignedLetter::pos(next)
            } else {
                SignedLetter::neg(ids[partner[p]])
            }
        })
        .collect();
    Some(QuadraticWord::new(CyclicWord::new(symbols)).expect("generator emits valid words"))
}

/// Random bijection from the letters of `word` onto a shuffled set of ids, each
/// image optionally inverted.
pub fn random_letter_map<R: Rng + ?Sized>(
    word: &QuadraticWord,
    allow_inversions: bool,
    rng: &mut R,
) -> HashMap<u32, SignedLetter> {
    let letters: Vec<u32> = word.occurrence_table().entries().iter().map(|o| o.letter).collect();
    let mut targets: Vec<u32> = (1..=letters.len() as u32).map(|i| i * 3 + 5).collect();
    targets.shuffle(rng);
    letters
        .into_iter()
        .zip(targets)
        .map(|(l, t)| {
            let inverted = allow_inversions && rng.gen_bool(0.5);
            (l, if inverted { SignedLetter::neg(t) } else { SignedLetter::pos(t) })
        })
        .collect()
}

/// A random rotation and relabeling of `word`.
pub fn random_isomorphic_copy<R: Rng + ?Sized>(
    word: &QuadraticWord,
    allow_inversions: bool,
    rng: &mut R,
) -> QuadraticWord {
    let map = random_letter_map(word, allow_inversions, rng);
    let offset = rng.gen_range(0..word.len());
    word.relabeled(&map).expect("map covers every letter").rotated(offset)
}

/// Swaps two random symbols, keeping the result only if it is still a valid word.
pub fn perturb<R: Rng + ?Sized>(word: &QuadraticWord, rng: &mut R) -> Option<QuadraticWord> {
    let len = word.len();
    for _ in 0..64 {
        let (a, b) = (rng.gen_range(0..len), rng.gen_range(0..len));
        if a == b || word.symbols()[a] == word.symbols()[b] {
            continue;
        }
        let mut symbols = word.symbols().to_vec();
        symbols.swap(a, b);
        if let Ok(w) = QuadraticWord::new(CyclicWord::new(symbols)) {
            return Some(w);
        }
    }
    None
}

/// Random Gauss code on crossings `1..=n` with no kinks; over/under chosen
/// independently for each crossing, so the result is usually non-alternating.
pub fn random_diagram<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Option<KnotDiagram> {
    if n < 2 {
        return None;
    }
    let partner = random_reduced_matching(n, rng);
    let mut next = 0u32;
    let mut ids = vec![0u32; 2 * n];
    let mut over_first = vec![false; 2 * n];
    let passages = (0..2 * n)
        .map(|p| {
            if p < partner[p] {
                next += 1;
                ids[p] = next;
                over_first[p] = rng.gen_bool(0.5);
                let strand = if over_first[p] { Strand::Over } else { Strand::Under };
                Passage::new(next, strand)
            } else {
                let q = partner[p];
                let strand = if over_first[q] { Strand::Under } else { Strand::Over };
                Passage::new(ids[q], strand)
            }
        })
        .collect();
    Some(KnotDiagram::new(passages).expect("generator emits valid diagrams"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_are_valid_and_reproducible() {
        let a = random_quadratic_word(50, &mut seeded(3)).unwrap();
        let b = random_quadratic_word(50, &mut seeded(3)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.letter_count(), 50);
        assert!(random_quadratic_word(1, &mut seeded(3)).is_none());
    }

    #[test]
    fn copies_are_valid() {
        let mut rng = seeded(11);
        let w = random_quadratic_word(20, &mut rng).unwrap();
        let c = random_isomorphic_copy(&w, true, &mut rng);
        assert_eq!(c.len(), w.len());
        assert!(perturb(&w, &mut rng).is_some());
    }

    #[test]
    fn diagrams_are_kink_free() {
        let d = random_diagram(12, &mut seeded(5)).unwrap();
        assert_eq!(d.crossing_count(), 12);
        assert!(crate::diagram::word_from_diagram(&d).is_ok());
    }
}
