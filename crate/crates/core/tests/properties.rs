use std::collections::HashMap;

use proptest::prelude::*;
use wicks_core::diagram::{parse_gauss, seifert, word_from_diagram};
use wicks_core::equivalence::{d_sequence, iso_bruteforce, iso_words, verify_witness, IsoOptions};
use wicks_core::genus::{gamma_stats, genus_bounded, genus_linear, genus_oracle_rank, genus_perm};
use wicks_core::random::{perturb, random_diagram, random_isomorphic_copy, random_letter_map, random_quadratic_word, seeded};
use wicks_core::word::{collapse_extensions, extend_letter, wicks_check, QuadraticWord, WordFormat};

fn word(n: usize, seed: u64) -> QuadraticWord {
    random_quadratic_word(n, &mut seeded(seed)).expect("n >= 2")
}

fn genus(w: &QuadraticWord) -> u64 {
    genus_linear(w).genus
}

const ALLOW: IsoOptions = IsoOptions {
    mirror: false,
    strict_exponents: false,
};
const STRICT: IsoOptions = IsoOptions {
    mirror: false,
    strict_exponents: true,
};
const MIRROR: IsoOptions = IsoOptions {
    mirror: true,
    strict_exponents: false,
};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn genus_methods_agree(n in 2usize..60, seed in any::<u64>()) {
        let w = word(n, seed);
        let linear = genus_linear(&w);
        prop_assert!(linear.agrees_with(&genus_perm(&w)));
        prop_assert!(linear.agrees_with(&genus_oracle_rank(&w, 512).unwrap()));
        if let Ok(b) = genus_bounded(&w) {
            prop_assert!(linear.agrees_with(&b));
        }
        prop_assert!(2 * linear.genus <= n as u64);
        let stats = gamma_stats(&w);
        prop_assert_eq!(stats.valences.len(), linear.gamma_vertices);
        prop_assert_eq!(stats.valences.iter().sum::<usize>(), 2 * n);
    }

    #[test]
    fn genus_is_invariant(n in 2usize..40, seed in any::<u64>(), offset in any::<usize>()) {
        let w = word(n, seed);
        let g = genus(&w);
        let mut rng = seeded(seed ^ 0x5eed);
        prop_assert_eq!(genus(&w.rotated(offset % w.len())), g);
        prop_assert_eq!(genus(&w.mirrored()), g);
        prop_assert_eq!(genus(&w.relabeled(&random_letter_map(&w, false, &mut rng)).unwrap()), g);
        prop_assert_eq!(genus(&w.relabeled(&random_letter_map(&w, true, &mut rng)).unwrap()), g);
        prop_assert_eq!(genus(&w.canonical()), g);
    }

    #[test]
    fn extension_preserves_genus_and_collapse_undoes_it(n in 2usize..20, seed in any::<u64>(), k in 1usize..=5, pick in any::<usize>()) {
        let w = word(n, seed);
        let base = collapse_extensions(&w).base.into_word();
        prop_assert!(wicks_check(&base).is_wicks);
        prop_assert_eq!(genus(&base), genus(&w));
        let letters: Vec<u32> = base.occurrence_table().entries().iter().map(|o| o.letter).collect();
        let letter = letters[pick % letters.len()];
        let extended = extend_letter(&base, letter, k).unwrap();
        prop_assert_eq!(extended.len(), base.len() + 2 * (k - 1));
        prop_assert_eq!(genus(&extended), genus(&base));
        let collapsed = collapse_extensions(&extended);
        prop_assert!(iso_words(collapsed.base.word(), &base, ALLOW).unwrap().isomorphic);
        prop_assert_eq!(collapsed.multiplicities.values().sum::<usize>(), extended.letter_count());
    }

    #[test]
    fn collapse_is_rotation_invariant(n in 2usize..20, seed in any::<u64>(), offset in any::<usize>()) {
        let w = word(n, seed);
        let a = collapse_extensions(&w).base.into_word();
        let b = collapse_extensions(&w.rotated(offset % w.len())).base.into_word();
        prop_assert!(iso_words(&a, &b, ALLOW).unwrap().isomorphic);
    }

    #[test]
    fn d_sequence_identities(n in 2usize..80, seed in any::<u64>(), offset in any::<usize>()) {
        let w = word(n, seed);
        let d = d_sequence(&w).0;
        let len = 2 * n;
        for p in 0..len {
            prop_assert_eq!(d[p] + d[w.partner(p)], len);
            prop_assert!(d[p] > 1 && d[p] < len - 1);
        }
        prop_assert_eq!(d.iter().sum::<usize>(), 2 * n * n);
        let r = offset % len;
        let mut rotated = d.clone();
        rotated.rotate_left(r);
        prop_assert_eq!(d_sequence(&w.rotated(r)).0, rotated);
        let mut reversed: Vec<usize> = d.iter().map(|&x| len - x).collect();
        reversed.reverse();
        prop_assert_eq!(d_sequence(&w.mirrored()).0, reversed);
    }

    #[test]
    fn iso_detects_constructed_copies(n in 2usize..40, seed in any::<u64>()) {
        let w = word(n, seed);
        let mut rng = seeded(seed.wrapping_add(1));
        let copy = random_isomorphic_copy(&w, true, &mut rng);
        let fast = iso_words(&w, &copy, ALLOW).unwrap();
        prop_assert!(fast.isomorphic);
        prop_assert!(verify_witness(&w, &copy, &fast));
        prop_assert_eq!(fast, iso_bruteforce(&w, &copy, ALLOW, 2000).unwrap());
        let plain = random_isomorphic_copy(&w, false, &mut rng);
        prop_assert!(iso_words(&w, &plain, STRICT).unwrap().isomorphic);
        prop_assert!(iso_words(&w, &w.mirrored(), MIRROR).unwrap().isomorphic);
    }

    #[test]
    fn iso_matches_bruteforce_on_perturbations(n in 2usize..30, seed in any::<u64>()) {
        let w = word(n, seed);
        let mut rng = seeded(!seed);
        let copy = random_isomorphic_copy(&w, true, &mut rng);
        if let Some(other) = perturb(&copy, &mut rng) {
            for opts in [ALLOW, STRICT, MIRROR] {
                let fast = iso_words(&w, &other, opts).unwrap();
                prop_assert_eq!(&fast, &iso_bruteforce(&w, &other, opts, 2000).unwrap());
                prop_assert!(verify_witness(&w, &other, &fast));
            }
        }
    }

    #[test]
    fn iso_is_an_equivalence(n in 2usize..25, seed in any::<u64>(), other in any::<u64>()) {
        let a = word(n, seed);
        let mut rng = seeded(other);
        let b = random_isomorphic_copy(&a, true, &mut rng);
        let c = random_isomorphic_copy(&b, true, &mut rng);
        let d = word(n, other);
        prop_assert!(iso_words(&a, &a, ALLOW).unwrap().isomorphic);
        prop_assert!(iso_words(&b, &a, ALLOW).unwrap().isomorphic);
        prop_assert!(iso_words(&a, &c, ALLOW).unwrap().isomorphic);
        let ad = iso_words(&a, &d, ALLOW).unwrap().isomorphic;
        prop_assert_eq!(ad, iso_words(&d, &a, ALLOW).unwrap().isomorphic);
        prop_assert_eq!(ad, iso_words(&c, &d, ALLOW).unwrap().isomorphic);
        let r = (seed as usize) % a.len();
        prop_assert_eq!(ad, iso_words(&a.rotated(r), &d, ALLOW).unwrap().isomorphic);
        if ad {
            prop_assert_eq!(genus(&a), genus(&d));
        }
    }

    #[test]
    fn seifert_circles_are_shifted_delta_components(n in 2usize..40, seed in any::<u64>()) {
        let d = random_diagram(n, &mut seeded(seed)).unwrap();
        let w = word_from_diagram(&d).unwrap();
        let report = seifert(&d);
        prop_assert_eq!(report.genus as u64, genus(&w));
        let corners = gamma_stats(&w).corner_vertex;
        let len = w.len();
        let mut labels: Vec<usize> = report
            .circles
            .iter()
            .map(|circle| corners[(circle[0] + 1) % len])
            .collect();
        for circle in &report.circles {
            let v = corners[(circle[0] + 1) % len];
            prop_assert!(circle.iter().all(|&i| corners[(i + 1) % len] == v));
        }
        labels.sort_unstable();
        labels.dedup();
        prop_assert_eq!(labels.len(), report.s);
    }

    #[test]
    fn text_round_trips(n in 2usize..40, seed in any::<u64>()) {
        let w = word(n, seed);
        prop_assert_eq!(QuadraticWord::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert_eq!(QuadraticWord::parse(&w.serialize()).unwrap(), w.canonical());
        if n <= 26 {
            let alpha = w.canonical().word().to_text(WordFormat::Alpha).unwrap();
            prop_assert_eq!(QuadraticWord::parse(&alpha).unwrap(), w.canonical());
        }
        let d = random_diagram(n, &mut seeded(seed)).unwrap();
        prop_assert_eq!(parse_gauss(&d.to_gauss()).unwrap(), d.clone());
        let json = serde_json::to_string(w.symbols()).unwrap();
        let back: Vec<wicks_core::SignedLetter> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.as_slice(), w.symbols());
    }
}

#[test]
fn relabel_requires_a_total_map() {
    let w = word(5, 1);
    assert!(w.relabeled(&HashMap::new()).is_err());
}
