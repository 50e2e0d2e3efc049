use std::time::Instant;

use serde_json::{json, Map, Value};
use wicks_core::bieulerian::{bieulerian_search, classify_vertices, path_to_wicks, PathError};
use wicks_core::diagram::{
    is_alternating, is_reduced, parse_gauss, ChordDiagram, realizability_check, seifert, word_from_diagram, RealizabilityMode,
};
use wicks_core::equivalence::{iso_bruteforce, iso_words, IsoError, IsoOptions, IsoResult, DEFAULT_BRUTEFORCE_BOUND};
use wicks_core::genus::{
    gamma_stats, genus_bounded, genus_linear, genus_oracle_rank, genus_perm, GenusRecord, GenusReport,
    DEFAULT_ORACLE_BOUND,
};
use wicks_core::graph::{is_3_connected, is_planar, parse_graph};
use wicks_core::random::{random_isomorphic_copy, random_quadratic_word, seeded};
use wicks_core::standard::{build_standard_diagram, StandardError};
use wicks_core::word::{parse_word, wicks_check, QuadraticWord, SignedLetter, WordFormat};

use crate::args::{Format, Method, Realizability};

/// Result of one instance: human text, JSON, and whether the verdict is positive.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub json: Value,
    pub positive: bool,
}

impl Report {
    fn positive(text: String, json: Value) -> Self {
        Self {
            text,
            json,
            positive: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    Input(String),
    Internal(String),
}

impl Failure {
    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Internal(m) => m,
        }
    }
}

pub type Outcome = Result<Report, Failure>;

fn input(e: impl ToString) -> Failure {
    Failure::Input(e.to_string())
}

fn word_format(f: Format) -> WordFormat {
    match f {
        Format::Int => WordFormat::Int,
        Format::Alpha => WordFormat::Alpha,
    }
}

fn render(word: &QuadraticWord, f: Format) -> Result<String, Failure> {
    word.word().to_text(word_format(f)).map_err(input)
}

fn render_letter(s: SignedLetter, f: Format) -> Result<String, Failure> {
    match f {
        Format::Int => Ok(s.to_int().to_string()),
        Format::Alpha if s.id() <= 26 => {
            let base = if s.is_inverse() { b'A' } else { b'a' };
            Ok(char::from(base + (s.id() - 1) as u8).to_string())
        }
        Format::Alpha => Err(input(format!("letter id {} cannot be written in the a-z alphabet", s.id()))),
    }
}

fn parse_quadratic(text: &str) -> Result<QuadraticWord, Failure> {
    QuadraticWord::parse(text).map_err(input)
}

pub fn validate(text: &str, require_wicks: bool, f: Format) -> Outcome {
    let cyclic = parse_word(text).map_err(input)?;
    let word = match QuadraticWord::new(cyclic) {
        Ok(w) => w,
        Err(e) => {
            return Ok(Report {
                text: format!("invalid: {e}"),
                json: json!({ "valid": false, "reason": e.to_string() }),
                positive: false,
            })
        }
    };
    let wicks = wicks_check(&word);
    let text = format!(
        "valid quadratic word: {} letters, length {}, {}",
        word.letter_count(),
        word.len(),
        if wicks.is_wicks {
            "Wicks form".to_string()
        } else {
            format!("not a Wicks form (inverse factors at {:?})", wicks.violations)
        }
    );
    Ok(Report {
        text,
        json: json!({
            "valid": true,
            "word": render(&word, f)?,
            "canonical": word.serialize(),
            "letters": word.letter_count(),
            "length": word.len(),
            "wicks": wicks.is_wicks,
            "violations": wicks.violations,
        }),
        positive: wicks.is_wicks || !require_wicks,
    })
}

fn genus_text(r: &GenusReport) -> String {
    format!(
        "genus {} (n={}, |V|={}, euler {}, {})",
        r.genus,
        r.n,
        r.gamma_vertices,
        r.euler,
        r.method.name()
    )
}

pub fn genus(text: &str, method: Method, oracle_bound: usize) -> Outcome {
    let word = parse_quadratic(text)?;
    let report = match method {
        Method::Linear => genus_linear(&word),
        Method::Perm => genus_perm(&word),
        Method::Bounded => genus_bounded(&word).map_err(input)?,
        Method::Oracle => genus_oracle_rank(&word, oracle_bound).map_err(input)?,
        Method::All => {
            let linear = genus_linear(&word);
            let mut checked = vec![linear, genus_perm(&word)];
            checked.extend(genus_bounded(&word).ok());
            checked.extend(genus_oracle_rank(&word, oracle_bound).ok());
            if let Some(bad) = checked.iter().find(|r| !r.agrees_with(&linear)) {
                return Err(Failure::Internal(format!(
                    "genus methods disagree: linear {} vs {} {}",
                    linear.genus,
                    bad.method.name(),
                    bad.genus
                )));
            }
            let names: Vec<&str> = checked.iter().map(|r| r.method.name()).collect();
            let mut json = serde_json::to_value(GenusRecord::new(&linear, &gamma_stats(&word))).map_err(|e| Failure::Internal(e.to_string()))?;
            json["checked"] = json!(names);
            return Ok(Report::positive(
                format!("{} [agree: {}]", genus_text(&linear), names.join(", ")),
                json,
            ));
        }
    };
    let json = serde_json::to_value(GenusRecord::new(&report, &gamma_stats(&word))).map_err(|e| Failure::Internal(e.to_string()))?;
    Ok(Report::positive(genus_text(&report), json))
}

pub struct IsoFlags {
    pub mirror: bool,
    pub strict: bool,
    pub bruteforce: bool,
}

pub fn iso(first: &str, second: &str, flags: &IsoFlags, f: Format) -> Outcome {
    let (w1, w2) = (parse_quadratic(first)?, parse_quadratic(second)?);
    let options = IsoOptions {
        mirror: flags.mirror,
        strict_exponents: flags.strict,
    };
    let result = if flags.bruteforce {
        iso_bruteforce(&w1, &w2, options, DEFAULT_BRUTEFORCE_BOUND)
    } else {
        iso_words(&w1, &w2, options)
    };
    let result = result.map_err(|e| match e {
        IsoError::BoundExceeded { .. } => input(e),
        IsoError::WitnessRejected => Failure::Internal(e.to_string()),
    })?;
    iso_report(&result, f)
}

fn iso_report(result: &IsoResult, f: Format) -> Outcome {
    let Some(map) = &result.letter_map else {
        return Ok(Report {
            text: "not isomorphic".into(),
            json: json!({ "isomorphic": false }),
            positive: false,
        });
    };
    let mut letters = Map::new();
    let mut pairs = Vec::with_capacity(map.len());
    for &(letter, image) in map {
        let from = render_letter(SignedLetter::pos(letter), f)?;
        let to = render_letter(image, f)?;
        pairs.push(format!("{from}->{to}"));
        letters.insert(from, Value::String(to));
    }
    let offset = result.rotation_offset.unwrap_or(0);
    Ok(Report::positive(
        format!(
            "isomorphic{}: offset {offset}, map {}",
            if result.mirrored { " (mirrored)" } else { "" },
            pairs.join(" ")
        ),
        json!({
            "isomorphic": true,
            "mirrored": result.mirrored,
            "rotation_offset": offset,
            "letter_map": letters,
        }),
    ))
}

fn realizability_mode(mode: Realizability) -> RealizabilityMode {
    match mode {
        Realizability::Parity => RealizabilityMode::Parity,
        Realizability::Exact => RealizabilityMode::Exact,
    }
}

pub fn chords(code: &str, realizable: Option<Realizability>, exact_bound: usize) -> Outcome {
    let chords = ChordDiagram::parse(code).map_err(input)?;
    let mode = realizable.unwrap_or(Realizability::Parity);
    let verdict = realizability_check(&chords, realizability_mode(mode), exact_bound).map_err(input)?;
    let mode_name = match mode {
        Realizability::Parity => "parity",
        Realizability::Exact => "exact",
    };
    Ok(Report {
        text: format!(
            "chords={} realizable={} ({mode_name})",
            chords.chord_count(),
            if verdict { "yes" } else { "no" }
        ),
        json: json!({
            "chords": chords.chord_count(),
            "interlace_counts": chords.interlace_counts(),
            "mode": mode_name,
            "realizable": verdict,
        }),
        positive: verdict,
    })
}

pub fn diagram(code: &str, realizable: Option<Realizability>, exact_bound: usize) -> Outcome {
    let d = parse_gauss(code).map_err(input)?;
    let s = seifert(&d);
    let alternating = is_alternating(&d);
    let reduced = is_reduced(&d);
    let verdict = match realizable {
        None => None,
        Some(mode) => Some(realizability_check(d.chords(), realizability_mode(mode), exact_bound).map_err(input)?),
    };
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut text = format!(
        "c={} s={} g={} alternating={} reduced={}",
        s.c,
        s.s,
        s.genus,
        yes_no(alternating),
        yes_no(reduced.reduced)
    );
    if let Some(v) = verdict {
        text.push_str(&format!(" realizable={}", yes_no(v)));
    }
    let mut json = json!({
        "gauss": d.to_gauss(),
        "c": s.c,
        "s": s.s,
        "genus": s.genus,
        "circles": s.circles,
        "alternating": alternating,
        "reduced": reduced.reduced,
        "nugatory": reduced.nugatory,
    });
    if let Some(v) = verdict {
        json["realizable"] = json!(v);
    }
    Ok(Report {
        text,
        json,
        positive: verdict.unwrap_or(true),
    })
}

pub fn word_from_gauss(code: &str, f: Format) -> Outcome {
    let d = parse_gauss(code).map_err(input)?;
    let w = word_from_diagram(&d).map_err(input)?;
    let text = render(&w, f)?;
    Ok(Report::positive(
        text.clone(),
        json!({ "gauss": d.to_gauss(), "word": text }),
    ))
}

fn path_error(e: PathError) -> Failure {
    input(e)
}

pub fn graph(text: &str, limit: usize, f: Format) -> Outcome {
    let g = parse_graph(text).map_err(input)?;
    let planar = is_planar(&g);
    let connected = is_3_connected(&g);
    let paths = bieulerian_search(&g, limit).map_err(path_error)?;
    let mut lines = vec![format!(
        "V={} E={} planar={} 3-connected={} paths={}",
        g.vertex_count(),
        g.edge_count(),
        planar,
        connected,
        paths.len()
    )];
    let mut records = Vec::with_capacity(paths.len());
    for (i, p) in paths.iter().enumerate() {
        let w = path_to_wicks(&g, p).map_err(|e| Failure::Internal(e.to_string()))?.into_word();
        let signs = classify_vertices(&g, p).map_err(|e| Failure::Internal(e.to_string()))?;
        let word = render(&w, f)?;
        lines.push(format!(
            "path {}: {word}  genus {} positive {} negative {}",
            i + 1,
            genus_linear(&w).genus,
            signs.positive,
            signs.negative
        ));
        records.push(json!({
            "word": word,
            "genus": genus_linear(&w).genus,
            "positive": signs.positive,
            "negative": signs.negative,
            "vertices": signs.vertices,
        }));
    }
    Ok(Report {
        text: lines.join("\n"),
        json: json!({
            "V": g.vertex_count(),
            "E": g.edge_count(),
            "planar": planar,
            "three_connected": connected,
            "paths_found": paths.len(),
            "paths": records,
        }),
        positive: !paths.is_empty(),
    })
}

pub fn standard_knot(text: &str, limit: usize, index: usize, f: Format) -> Outcome {
    let g = parse_graph(text).map_err(input)?;
    let paths = bieulerian_search(&g, limit).map_err(path_error)?;
    if paths.is_empty() {
        return Ok(Report {
            text: "no Bieulerian path".into(),
            json: json!({ "V": g.vertex_count(), "E": g.edge_count(), "paths_found": 0 }),
            positive: false,
        });
    }
    let path = index
        .checked_sub(1)
        .and_then(|i| paths.get(i))
        .ok_or_else(|| input(format!("path index {index} out of range 1..={}", paths.len())))?;
    let s = build_standard_diagram(&g, path).map_err(|e| match e {
        StandardError::Postcondition(_) => Failure::Internal(e.to_string()),
        _ => input(e),
    })?;
    let r = &s.report;
    let word = render(&s.base_word, f)?;
    let standard_word = render(&s.word, f)?;
    let text = [
        format!("V={} E={} paths_found={}", r.vertices, r.edges, paths.len()),
        format!("word: {word}"),
        format!("genus {} positive {} negative {}", r.genus, r.positive, r.negative),
        format!(
            "crossings {} (subdivided edges {:?}) alternating={} reduced={} seifert_circles={} neighbored_classes={}",
            r.crossings, r.subdivided, r.alternating, r.reduced, r.seifert_circles, r.neighbored_classes
        ),
        format!("gauss: {}", s.diagram.to_gauss()),
    ]
    .join("\n");
    Ok(Report::positive(
        text,
        json!({
            "V": r.vertices,
            "E": r.edges,
            "paths_found": paths.len(),
            "word": word,
            "genus": r.genus,
            "positive": r.positive,
            "negative": r.negative,
            "crossings": r.crossings,
            "alternating": r.alternating,
            "reduced": r.reduced,
            "subdivided": r.subdivided,
            "seifert_circles": r.seifert_circles,
            "neighbored_classes": r.neighbored_classes,
            "gauss": s.diagram.to_gauss(),
            "standard_word": standard_word,
        }),
    ))
}

/// One measurement per length; every length must be even and at least 4.
pub fn bench_length(length: usize, method: Method, seed: u64) -> Outcome {
    if length < 4 || length % 2 == 1 {
        return Err(input(format!("bench length {length} must be even and at least 4")));
    }
    let n = length / 2;
    let mut rng = seeded(seed ^ length as u64);
    let word = random_quadratic_word(n, &mut rng).ok_or_else(|| input("no word of this length"))?;
    let start = Instant::now();
    let report = match method {
        Method::Linear | Method::All => genus_linear(&word),
        Method::Perm => genus_perm(&word),
        Method::Bounded => genus_bounded(&word).map_err(input)?,
        Method::Oracle => genus_oracle_rank(&word, DEFAULT_ORACLE_BOUND).map_err(input)?,
    };
    let genus_seconds = start.elapsed().as_secs_f64();
    let copy = random_isomorphic_copy(&word, true, &mut rng);
    let start = Instant::now();
    let iso = iso_words(&word, &copy, IsoOptions::default()).map_err(|e| Failure::Internal(e.to_string()))?;
    let iso_seconds = start.elapsed().as_secs_f64();
    if !iso.isomorphic {
        return Err(Failure::Internal("isomorphic copy not recognized".into()));
    }
    Ok(Report::positive(
        format!(
            "length {length}: genus {} by {} in {genus_seconds:.6} s, iso in {iso_seconds:.6} s",
            report.genus,
            report.method.name()
        ),
        json!({
            "length": length,
            "n": n,
            "genus": report.genus,
            "method": report.method.name(),
            "genus_seconds": genus_seconds,
            "iso_seconds": iso_seconds,
        }),
    ))
}
