mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use args::{Cli, Command};
use commands::{Failure, IsoFlags, Outcome};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

/// One unit of batch input and the line it starts on.
struct Item {
    line: usize,
    text: String,
}

fn line_items(text: &str) -> Vec<Item> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| Item {
            line: i + 1,
            text: l.trim().to_string(),
        })
        .collect()
}

/// Blocks separated by blank lines; blocks holding only comments are skipped.
fn block_items(text: &str) -> Vec<Item> {
    let mut items = Vec::new();
    let mut current: Option<Item> = None;
    for (i, l) in text.lines().enumerate() {
        if l.trim().is_empty() {
            items.extend(current.take());
            continue;
        }
        let item = current.get_or_insert_with(|| Item {
            line: i + 1,
            text: String::new(),
        });
        item.text.push_str(l);
        item.text.push('\n');
    }
    items.extend(current);
    items.retain(|item| {
        item.text
            .lines()
            .any(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
    });
    items
}

fn exit_code(outcome: &Outcome) -> u8 {
    match outcome {
        Ok(r) if r.positive => EXIT_OK,
        Ok(_) => EXIT_NEGATIVE,
        Err(Failure::Input(_)) => EXIT_INPUT,
        Err(Failure::Internal(_)) => EXIT_INTERNAL,
    }
}

/// Internal errors dominate input errors, which dominate negative verdicts.
fn combined_exit(codes: impl IntoIterator<Item = u8>) -> u8 {
    codes.into_iter().fold(EXIT_OK, |acc, c| {
        let rank = |c: u8| match c {
            EXIT_INTERNAL => 3,
            EXIT_INPUT => 2,
            EXIT_NEGATIVE => 1,
            _ => 0,
        };
        if rank(c) > rank(acc) {
            c
        } else {
            acc
        }
    })
}

/// Writes one line to stdout. A closed pipe ends the process quietly.
fn emit(line: impl std::fmt::Display) {
    use std::io::Write;
    if let Err(e) = writeln!(std::io::stdout().lock(), "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(EXIT_OK.into());
        }
        eprintln!("error: {e}");
        std::process::exit(EXIT_INTERNAL.into());
    }
}

fn print_single(outcome: &Outcome, json: bool) {
    match (outcome, json) {
        (Ok(r), false) => emit(&r.text),
        (Ok(r), true) => emit(&r.json),
        (Err(e), false) => eprintln!("error: {}", e.message()),
        (Err(e), true) => emit(serde_json::json!({ "error": e.message() })),
    }
}

fn print_batch(results: &[(usize, Outcome)], json: bool) -> u8 {
    for (line, outcome) in results {
        match (outcome, json) {
            (Ok(r), false) => emit(&r.text),
            (Ok(r), true) => emit(&r.json),
            (Err(e), false) => emit(format_args!("line {line}: error: {}", e.message())),
            (Err(e), true) => emit(serde_json::json!({ "line": line, "error": e.message() })),
        }
    }
    let errors = results.iter().filter(|(_, o)| o.is_err()).count();
    let negative = results.iter().filter(|(_, o)| matches!(o, Ok(r) if !r.positive)).count();
    eprintln!(
        "{} instances: {} positive, {negative} negative, {errors} errors",
        results.len(),
        results.len() - errors - negative
    );
    combined_exit(results.iter().map(|(_, o)| exit_code(o)))
}

fn run_items(items: Vec<Item>, parallel: bool, f: impl Fn(&str) -> Outcome + Sync) -> Vec<(usize, Outcome)> {
    if parallel {
        items.into_par_iter().map(|item| (item.line, f(&item.text))).collect()
    } else {
        items.into_iter().map(|item| (item.line, f(&item.text))).collect()
    }
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Inline argument words joined by spaces, or an error if none were given.
fn inline(parts: &[String]) -> Result<String, Failure> {
    if parts.is_empty() {
        Err(Failure::Input("no input given (pass it inline or with --file)".into()))
    } else {
        Ok(parts.join(" "))
    }
}

fn run(cli: Cli) -> u8 {
    let g = cli.global;
    let fmt = g.format;
    let limit = g.limit.unwrap_or(usize::MAX);
    let batch_text = match g.file.as_deref().map(read).transpose() {
        Ok(t) => t,
        Err(e) => {
            print_single(&Err(e), g.json);
            return EXIT_INPUT;
        }
    };
    let word_verb = |parts: &[String], f: &(dyn Fn(&str) -> Outcome + Sync)| -> u8 {
        match &batch_text {
            Some(text) => print_batch(&run_items(line_items(text), g.parallel, f), g.json),
            None => {
                let outcome = inline(parts).and_then(|t| f(&t));
                print_single(&outcome, g.json);
                exit_code(&outcome)
            }
        }
    };
    let graph_verb = |path: &Option<std::path::PathBuf>, f: &(dyn Fn(&str) -> Outcome + Sync)| -> u8 {
        match &batch_text {
            Some(text) => print_batch(&run_items(block_items(text), g.parallel, f), g.json),
            None => {
                let outcome = path
                    .as_deref()
                    .ok_or_else(|| Failure::Input("no graph file given".into()))
                    .and_then(read)
                    .and_then(|t| f(&t));
                print_single(&outcome, g.json);
                exit_code(&outcome)
            }
        }
    };
    match cli.command {
        Command::Validate { word, wicks } => word_verb(&word, &|t| commands::validate(t, wicks, fmt)),
        Command::Genus {
            word,
            method,
            oracle_bound,
        } => word_verb(&word, &|t| commands::genus(t, method, oracle_bound)),
        Command::Iso {
            first,
            second,
            mirror,
            strict,
            bruteforce,
        } => {
            let flags = IsoFlags {
                mirror,
                strict,
                bruteforce,
            };
            let pair = |t: &str| match t.split_once('|') {
                Some((a, b)) => commands::iso(a, b, &flags, fmt),
                None => Err(Failure::Input("expected two words separated by '|'".into())),
            };
            match (&batch_text, first, second) {
                (Some(_), _, _) => word_verb(&[], &pair),
                (None, Some(a), Some(b)) => {
                    let outcome = commands::iso(&a, &b, &flags, fmt);
                    print_single(&outcome, g.json);
                    exit_code(&outcome)
                }
                (None, _, _) => {
                    let outcome = Err(Failure::Input("iso needs two words".into()));
                    print_single(&outcome, g.json);
                    EXIT_INPUT
                }
            }
        }
        Command::Diagram {
            code,
            chords,
            realizable,
            exact_bound,
        } => {
            if chords {
                word_verb(&code, &|t| commands::chords(t, realizable, exact_bound))
            } else {
                word_verb(&code, &|t| commands::diagram(t, realizable, exact_bound))
            }
        }
        Command::WordFromGauss { code } => word_verb(&code, &|t| commands::word_from_gauss(t, fmt)),
        Command::Graph { path } => graph_verb(&path, &|t| commands::graph(t, limit, fmt)),
        Command::StandardKnot { path, path_index } => {
            graph_verb(&path, &|t| commands::standard_knot(t, limit, path_index, fmt))
        }
        Command::Bench { lengths, method } => {
            let results: Vec<(usize, Outcome)> = lengths
                .iter()
                .enumerate()
                .map(|(i, &len)| (i + 1, commands::bench_length(len, method, g.seed)))
                .collect();
            print_batch(&results, g.json)
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(Cli::parse()))
}
