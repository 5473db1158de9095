//! `discocat`: command-line front end for the compositional meaning library.
//!
//! Exit codes: 0 success, 1 negative result, 2 input error, 3 numeric failure.

mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use discocat::io::{to_json, DictionaryDoc, MatrixDoc};
use discocat::{
    apply_reduction, build_dictionary, check_naturality, fit_alpha, format_g12, lex_phrase, nearest_unitary,
    normalize_sentence, phrase_meaning_detailed, reduce_search, translate_object, DictionaryQuery, Error, Matrix,
    Phrase, PregroupType, Reduction, Tensor,
};

use workspace::Workspace;

#[derive(Parser)]
#[command(
    name = "discocat",
    version,
    about = "Compositional distributional meaning and translation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the reductions from one pregroup type to another.
    Parse {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Restrict the basic types to those of a model file.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Stop after this many reductions.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Compute the meaning of a phrase reduced to a target type.
    Meaning {
        #[arg(long)]
        lex: PathBuf,
        #[arg(long)]
        phrase: String,
        #[arg(long)]
        to: String,
        /// Comma-separated sense index per word.
        #[arg(long)]
        senses: Option<String>,
        /// Report a one-entry meaning as 0 (zero) or 1 (anything else).
        #[arg(long)]
        normalize: bool,
    },
    /// Translate a phrase, then reduce it in the target grammar.
    Translate {
        #[arg(long)]
        translation: PathBuf,
        #[arg(long)]
        lex: PathBuf,
        #[arg(long)]
        phrase: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        senses: Option<String>,
        /// Report a one-entry meaning as 0 (zero) or 1 (anything else).
        #[arg(long)]
        normalize: bool,
    },
    /// Check that a translation commutes with the reductions between two types.
    Check {
        #[arg(long)]
        translation: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
    },
    /// Nearest orthogonal matrix in Frobenius norm.
    Procrustes {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Least-squares linear map from (source, target) vector pairs.
    Fit {
        #[arg(long)]
        pairs: PathBuf,
        /// Project the fit onto the nearest orthogonal matrix.
        #[arg(long)]
        unitary: bool,
        #[arg(long)]
        json: bool,
    },
    /// Build the dictionary between two lexicons over a translation.
    Dict {
        #[arg(long)]
        source_lex: PathBuf,
        #[arg(long)]
        target_lex: PathBuf,
        #[arg(long)]
        translation: PathBuf,
        #[arg(long, default_value_t = 1)]
        max_source_len: usize,
        #[arg(long, default_value_t = 1)]
        max_target_len: usize,
        /// Keep entries with distance at most k.
        #[arg(long)]
        k: Option<f64>,
        /// Keep only pairs where both sides reduce to the type given by --to.
        #[arg(long)]
        reduced_only: bool,
        #[arg(long, default_value = "s")]
        to: String,
        #[arg(long, default_value_t = 1_000_000)]
        max_pairs: usize,
        #[arg(long, default_value_t = 16)]
        max_reductions: usize,
        #[arg(long)]
        json: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Success,
    Negative,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NoReduction { .. } | Error::NonFunctorial(_) => 1,
        e if e.is_numeric() => 3,
        _ => 2,
    }
}

fn run(command: Command) -> discocat::Result<Outcome> {
    let mut ws = Workspace::default();
    match command {
        Command::Parse { from, to, model, max } => {
            let (from, to) = match model {
                Some(path) => {
                    let m = ws.model(&path)?;
                    (m.parse_type(&from)?, m.parse_type(&to)?)
                }
                None => (from.parse::<PregroupType>()?, to.parse::<PregroupType>()?),
            };
            let found = reduce_search(&from, &to, max.unwrap_or(usize::MAX));
            if found.is_empty() {
                println!("no reduction");
                return Ok(Outcome::Negative);
            }
            for r in &found {
                println!("{}", describe(r));
            }
            Ok(Outcome::Success)
        }
        Command::Meaning {
            lex,
            phrase,
            to,
            senses,
            normalize,
        } => {
            let lex = ws.lexicon(&lex)?;
            let phrase = with_senses(phrase.parse()?, senses.as_deref())?;
            let to = lex.model().parse_type(&to)?;
            let found = phrase_meaning_detailed(lex, &phrase, &to)?;
            let pinned = phrase.clone().with_senses(found.senses.clone())?;
            println!("phrase: {pinned}");
            println!("reduction: {}", describe(&found.reduction));
            print_tensor(&found.meaning, normalize)?;
            Ok(Outcome::Success)
        }
        Command::Translate {
            translation,
            lex,
            phrase,
            to,
            senses,
            normalize,
        } => {
            let t = ws.translation(&translation)?.clone();
            let lex = ws.lexicon(&lex)?;
            Workspace::check_link(lex, t.source())?;
            let phrase: Phrase = with_senses(phrase.parse()?, senses.as_deref())?;
            let to = t.target().parse_type(&to)?;
            let choices = match phrase.senses() {
                Some(s) => vec![s.to_vec()],
                None => lex.sense_choices(phrase.words())?,
            };
            for choice in choices {
                let pinned = phrase.clone().with_senses(choice)?;
                let object = translate_object(&t, &lex_phrase(lex, &pinned)?)?;
                if let Some(r) = reduce_search(object.ty(), &to, 1).into_iter().next() {
                    let meaning = apply_reduction(t.target(), &r, object.meaning())?;
                    println!("phrase: {pinned}");
                    println!("translated type: {}", object.ty());
                    println!("reduction: {}", describe(&r));
                    print_tensor(&meaning, normalize)?;
                    return Ok(Outcome::Success);
                }
            }
            Err(Error::NoReduction {
                from: format!("translation of `{phrase}`"),
                to: to.to_string(),
            })
        }
        Command::Check {
            translation,
            from,
            to,
            tolerance,
        } => {
            let t = ws.translation(&translation)?;
            let (from, to) = (t.source().parse_type(&from)?, t.source().parse_type(&to)?);
            let found = reduce_search(&from, &to, usize::MAX);
            if found.is_empty() {
                println!("no reduction");
                return Ok(Outcome::Negative);
            }
            let mut all_passed = true;
            for r in &found {
                let report = check_naturality(t, r, tolerance)?;
                all_passed &= report.passed();
                println!(
                    "{}\tresidual {}\t{}",
                    describe(r),
                    format_g12(report.max_residual),
                    if report.passed() {
                        "commutes"
                    } else {
                        "does not commute"
                    }
                );
            }
            Ok(if all_passed {
                Outcome::Success
            } else {
                Outcome::Negative
            })
        }
        Command::Procrustes { matrix, json } => {
            let a = discocat::io::load_matrix(&matrix)?;
            print_matrix(&nearest_unitary(&a)?, json);
            Ok(Outcome::Success)
        }
        Command::Fit { pairs, unitary, json } => {
            let pairs = discocat::io::load_pairs(&pairs)?;
            let fit = fit_alpha(&pairs, unitary)?;
            if fit.underdetermined {
                eprintln!(
                    "warning: the source vectors span only a rank-{} subspace; reporting the minimal-norm solution",
                    fit.rank
                );
            }
            print_matrix(&fit.matrix, json);
            Ok(Outcome::Success)
        }
        Command::Dict {
            source_lex,
            target_lex,
            translation,
            max_source_len,
            max_target_len,
            k,
            reduced_only,
            to,
            max_pairs,
            max_reductions,
            json,
        } => {
            let t = ws.translation(&translation)?.clone();
            let source = ws.lexicon(&source_lex)?.clone();
            let target = ws.lexicon(&target_lex)?;
            let target_type = if reduced_only {
                Some(t.target().parse_type(&to)?)
            } else {
                None
            };
            let q = DictionaryQuery {
                max_source_len,
                max_target_len,
                target_type,
                threshold: k,
                max_pairs,
                max_reductions,
            };
            let entries = build_dictionary(&source, target, &t, &q)?;
            if json {
                println!("{}", to_json(&DictionaryDoc::from_entries(&entries)));
            } else {
                for e in &entries {
                    println!("{}", e.to_tsv_row());
                }
            }
            Ok(Outcome::Success)
        }
    }
}

fn with_senses(phrase: Phrase, senses: Option<&str>) -> discocat::Result<Phrase> {
    let Some(senses) = senses else { return Ok(phrase) };
    let indices = senses
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidInput(format!("bad sense index `{s}`")))
        })
        .collect::<discocat::Result<Vec<_>>>()?;
    phrase.with_senses(indices)
}

fn describe(r: &Reduction) -> String {
    if r.is_identity() {
        format!("identity {r}")
    } else {
        r.to_string()
    }
}

fn print_tensor(t: &Tensor, normalize: bool) -> discocat::Result<()> {
    let t = if normalize { normalize_sentence(t)? } else { t.clone() };
    println!("type: {}", t.ty());
    let values: Vec<String> = t.data().iter().map(|&v| format_g12(v)).collect();
    println!("value: {}", values.join(" "));
    Ok(())
}

fn print_matrix(m: &Matrix, json: bool) {
    if json {
        println!("{}", to_json(&MatrixDoc::new(m.clone())));
        return;
    }
    for row in m.to_rows() {
        let cells: Vec<String> = row.iter().map(|&v| format_g12(v)).collect();
        println!("{}", cells.join(" "));
    }
}
