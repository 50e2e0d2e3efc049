//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the timing checks are not disturbed by parallel tests.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use wicks_core::bieulerian::{bieulerian_search, classify_vertices, path_to_wicks};
use wicks_core::diagram::{parse_gauss, realizability_check, seifert, word_from_diagram, ChordDiagram, RealizabilityMode};
use wicks_core::equivalence::{d_sequence, iso_bruteforce, iso_words, verify_witness, IsoOptions};
use wicks_core::genus::{gamma_stats, genus_bounded, genus_linear, genus_oracle_rank, genus_perm, GenusError};
use wicks_core::graph::parse_graph;
use wicks_core::random::{perturb, random_diagram, random_isomorphic_copy, random_letter_map, random_quadratic_word, seeded};
use wicks_core::standard::build_standard_diagram;
use wicks_core::word::{extend_letter, wicks_check, QuadraticWord};

type Outcome = Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("took {:.3} s, limit {:.0} s", elapsed.as_secs_f64(), limit.as_secs_f64())
    })
}

fn q(text: &str) -> QuadraticWord {
    QuadraticWord::parse(text).expect("fixture word")
}

fn genus_exactness() -> Outcome {
    let start = Instant::now();
    for (text, expected) in [("abcABC", 1), ("abAB", 1), ("abABcdCD", 2), ("abcdABCD", 2), ("abcdBADC", 1)] {
        let w = q(text);
        let values = [
            genus_linear(&w).genus,
            genus_perm(&w).genus,
            genus_oracle_rank(&w, 512).map_err(|e| e.to_string())?.genus,
        ];
        ensure(values.iter().all(|&g| g == expected), || {
            format!("{text}: linear/perm/oracle gave {values:?}, expected {expected}")
        })?;
    }
    let bounded = genus_bounded(&q("abcABC")).map_err(|e| e.to_string())?;
    ensure(bounded.genus == 1, || format!("bounded genus of abcABC is {}", bounded.genus))?;
    ensure(
        matches!(genus_bounded(&q("abABcdCD")), Err(GenusError::NotStandard { .. })),
        || "bounded method accepted abABcdCD".into(),
    )?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{:.4} s", start.elapsed().as_secs_f64()))
}

fn cross_method_agreement() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(2024);
    let (mut oracle_runs, mut bounded_runs) = (0, 0);
    let total = 1200;
    for i in 0..total {
        let n = 2 + i % 199;
        let w = random_quadratic_word(n, &mut rng).expect("n >= 2");
        let linear = genus_linear(&w);
        ensure(linear.agrees_with(&genus_perm(&w)), || format!("perm disagrees at n={n}"))?;
        if let Ok(b) = genus_bounded(&w) {
            bounded_runs += 1;
            ensure(linear.agrees_with(&b), || format!("bounded disagrees at n={n}"))?;
        }
        if n <= 128 {
            oracle_runs += 1;
            let o = genus_oracle_rank(&w, 512).map_err(|e| e.to_string())?;
            ensure(linear.agrees_with(&o), || format!("oracle disagrees at n={n}"))?;
        }
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{total} words, {oracle_runs} oracle checks, {bounded_runs} bounded checks, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn isomorphism_correctness() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(99);
    let opts = IsoOptions::default();
    let (mut positives, mut perturbed) = (0, 0);
    let pairs = 1000;
    for i in 0..pairs {
        let n = 2 + i % 120;
        let w = random_quadratic_word(n, &mut rng).expect("n >= 2");
        let copy = random_isomorphic_copy(&w, true, &mut rng);
        let other = if i % 2 == 0 {
            copy
        } else {
            perturbed += 1;
            perturb(&copy, &mut rng).unwrap_or(copy)
        };
        let fast = iso_words(&w, &other, opts).map_err(|e| e.to_string())?;
        let slow = iso_bruteforce(&w, &other, opts, 2000).map_err(|e| e.to_string())?;
        ensure(fast == slow, || format!("pair {i}: KMP {fast:?} vs brute force {slow:?}"))?;
        ensure(verify_witness(&w, &other, &fast), || format!("pair {i}: witness rejected"))?;
        ensure(i % 2 == 1 || fast.isomorphic, || format!("pair {i}: constructed copy missed"))?;
        positives += usize::from(fast.isomorphic);
    }
    within(start.elapsed(), Duration::from_secs(60))?;
    Ok(format!(
        "{pairs} pairs ({perturbed} perturbed), {positives} isomorphic, {:.2} s",
        start.elapsed().as_secs_f64()
    ))
}

fn seifert_pipeline() -> Outcome {
    for (code, expected) in [
        ("O1 U2 O3 U1 O2 U3", (3, 2, 1)),
        ("O1 U2 O3 U4 O2 U1 O4 U3", (4, 3, 1)),
        ("O1 O2 O3 O4 U1 U2 U3 U4", (4, 1, 2)),
    ] {
        let d = parse_gauss(code).map_err(|e| e.to_string())?;
        let r = seifert(&d);
        ensure((r.c, r.s, r.genus) == expected, || {
            format!("{code}: (c,s,g) = {:?}, expected {expected:?}", (r.c, r.s, r.genus))
        })?;
    }
    let mut rng = seeded(4);
    for i in 0..500 {
        let d = random_diagram(2 + i % 60, &mut rng).expect("n >= 2");
        let w = word_from_diagram(&d).map_err(|e| e.to_string())?;
        let (s, g) = (seifert(&d).genus as u64, genus_linear(&w).genus);
        ensure(s == g, || format!("diagram {i}: seifert genus {s}, word genus {g}"))?;
    }
    Ok("3 fixed codes, 500 random diagrams".into())
}

const PRISM: &str = "1 2\n2 3\n3 1\n4 5\n5 6\n6 4\n1 4\n2 5\n3 6\n";

fn prism_end_to_end() -> Outcome {
    let start = Instant::now();
    let g = parse_graph(PRISM).map_err(|e| e.to_string())?;
    let paths = bieulerian_search(&g, usize::MAX).map_err(|e| e.to_string())?;
    ensure(!paths.is_empty(), || "no Bieulerian path".into())?;
    for path in &paths {
        let w = path_to_wicks(&g, path).map_err(|e| e.to_string())?.into_word();
        ensure(w.len() == 18, || format!("word length {}", w.len()))?;
        ensure(wicks_check(&w).is_wicks, || format!("{w} is not a Wicks form"))?;
        let signs = classify_vertices(&g, path).map_err(|e| e.to_string())?;
        ensure((signs.positive, signs.negative) == (2, 4), || {
            format!("signs ({}, {})", signs.positive, signs.negative)
        })?;
        let s = build_standard_diagram(&g, path).map_err(|e| e.to_string())?;
        let r = &s.report;
        ensure(r.alternating && r.reduced, || "diagram not alternating and reduced".into())?;
        ensure(r.genus == 2 && seifert(&s.diagram).genus == 2, || format!("genus {}", r.genus))?;
        ensure(r.neighbored_classes == 9, || format!("{} neighbored classes", r.neighbored_classes))?;
        let stats = gamma_stats(&s.word);
        ensure(stats.neighbored_class_count == 9, || "gamma stats disagree".into())?;
    }
    within(start.elapsed(), Duration::from_secs(10))?;
    Ok(format!("{} paths, {:.3} s", paths.len(), start.elapsed().as_secs_f64()))
}

fn invariance_suite() -> Outcome {
    let mut rng = seeded(6);
    let allow = IsoOptions::default();
    let strict = IsoOptions {
        strict_exponents: true,
        ..IsoOptions::default()
    };
    let words = 400;
    for i in 0..words {
        let n = 2 + i % 40;
        let w = random_quadratic_word(n, &mut rng).expect("n >= 2");
        let g = genus_linear(&w).genus;
        let r = (i * 7) % w.len();
        let genus_of = |x: &QuadraticWord| genus_linear(x).genus;
        let relabeled = w.relabeled(&random_letter_map(&w, false, &mut rng)).map_err(|e| e.to_string())?;
        let inverted = w.relabeled(&random_letter_map(&w, true, &mut rng)).map_err(|e| e.to_string())?;
        for (what, x) in [
            ("rotation", w.rotated(r)),
            ("relabeling", relabeled.clone()),
            ("relabeling with inversions", inverted.clone()),
            ("mirroring", w.mirrored()),
        ] {
            ensure(genus_of(&x) == g, || format!("word {i}: genus changed under {what}"))?;
        }
        let letter = w.occurrence_table().entries()[i % n].letter;
        for k in 1..=5 {
            let e = extend_letter(&w, letter, k).map_err(|e| e.to_string())?;
            ensure(genus_of(&e) == g, || format!("word {i}: genus changed under extension k={k}"))?;
        }

        let other = if i % 2 == 0 {
            random_isomorphic_copy(&w, false, &mut rng)
        } else {
            random_quadratic_word(n, &mut rng).expect("n >= 2")
        };
        for (opts, image) in [(allow, &inverted), (strict, &relabeled)] {
            let verdict = iso_words(&w, &other, opts).map_err(|e| e.to_string())?.isomorphic;
            for (what, a, b) in [
                ("rotation", w.rotated(r), other.clone()),
                ("relabeling", image.clone(), other.clone()),
                ("rotation of the second word", w.clone(), other.rotated((r + 1) % other.len())),
            ] {
                let v = iso_words(&a, &b, opts).map_err(|e| e.to_string())?.isomorphic;
                ensure(v == verdict, || format!("word {i}: iso verdict changed under {what}"))?;
            }
        }

        let d = d_sequence(&w).0;
        let len = w.len();
        ensure((0..len).all(|p| d[p] + d[w.partner(p)] == len), || format!("word {i}: d_p + d_partner != 2n"))?;
        ensure(d.iter().sum::<usize>() == 2 * n * n, || format!("word {i}: sum of d != 2n^2"))?;
    }
    Ok(format!("{words} words"))
}

fn realizability() -> Outcome {
    let chords = |text: &str| ChordDiagram::parse(text).map_err(|e| e.to_string());
    let trefoil = realizability_check(&chords("1 2 3 1 2 3")?, RealizabilityMode::Exact, 16).map_err(|e| e.to_string())?;
    ensure(trefoil, || "123123 not realizable in exact mode".into())?;
    for text in ["1 2 1 3 2 3", "1 2 3 4 1 2 3 4"] {
        let r = realizability_check(&chords(text)?, RealizabilityMode::Parity, 16).map_err(|e| e.to_string())?;
        ensure(!r, || format!("{text} passed the parity test"))?;
    }
    let big: Vec<String> = (1..=17).chain(1..=17).map(|i| i.to_string()).collect();
    ensure(
        realizability_check(&chords(&big.join(" "))?, RealizabilityMode::Exact, 16).is_err(),
        || "exact mode ran above its bound".into(),
    )?;
    Ok("exact and parity verdicts, bound enforced".into())
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

/// Median over `samples` of the mean time of `batch` back-to-back calls.
fn median_time(samples: usize, batch: u32, word: &QuadraticWord) -> Duration {
    let mut times: Vec<Duration> = (0..samples)
        .map(|_| {
            timed(|| {
                for _ in 0..batch {
                    std::hint::black_box(genus_linear(std::hint::black_box(word)));
                }
            })
            .1
                / batch
        })
        .collect();
    times.sort_unstable();
    times[samples / 2]
}

fn scaling() -> Outcome {
    let mut rng = seeded(8);
    let small = random_quadratic_word(100_000, &mut rng).expect("n >= 2");
    let large = random_quadratic_word(1_000_000, &mut rng).expect("n >= 2");
    let large_time = median_time(9, 1, &large);
    within(large_time, Duration::from_secs(5))?;
    let small_time = median_time(9, 10, &small);
    let ratio = large_time.as_secs_f64() / small_time.as_secs_f64();
    ensure((5.0..=20.0).contains(&ratio), || {
        format!(
            "time ratio {ratio:.2} outside [5, 20] ({:.4} s vs {:.4} s)",
            large_time.as_secs_f64(),
            small_time.as_secs_f64()
        )
    })?;

    let half = random_quadratic_word(500_000, &mut rng).expect("n >= 2");
    let copy = random_isomorphic_copy(&half, true, &mut rng);
    let (result, iso_time) = timed(|| iso_words(&half, &copy, IsoOptions::default()));
    let result = result.map_err(|e| e.to_string())?;
    ensure(result.isomorphic, || "isomorphic copy of length 10^6 missed".into())?;
    within(iso_time, Duration::from_secs(10))?;
    Ok(format!(
        "genus_linear 2e6: {:.3} s, 2e5: {:.4} s, ratio {ratio:.2}; iso_words 1e6: {:.3} s",
        large_time.as_secs_f64(),
        small_time.as_secs_f64(),
        iso_time.as_secs_f64()
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("genus exactness", genus_exactness),
        ("cross-method agreement", cross_method_agreement),
        ("isomorphism correctness", isomorphism_correctness),
        ("Seifert pipeline", seifert_pipeline),
        ("prism end-to-end", prism_end_to_end),
        ("invariance suite", invariance_suite),
        ("realizability", realizability),
        ("scaling", scaling),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
