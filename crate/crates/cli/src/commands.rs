use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use sirenless_core::discourse::{evaluate, evaluate_with, read_corpus, train, EvalReport, Labeler};
use sirenless_core::scoring::Evidence;
use sirenless_core::{AnalysisConfig, AnalysisResult, AnalysisStore, Analyzer, DiscourseModel, Thresholds};

use crate::server::{self, AppState, DEFAULT_BODY_LIMIT};

#[derive(Debug, Parser)]
#[command(name = "sirenless", version, about = "Linguistic analysis of news articles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Summary,
}

#[derive(Debug, clap::Args)]
pub struct EngineArgs {
    /// Sentiment lexicon TSV (word, polarity, subjectivity)
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Trained discourse model; the rule baseline is used without one
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Pattern thresholds TOML
    #[arg(long)]
    pub thresholds: Option<PathBuf>,
}

impl EngineArgs {
    fn config(&self) -> Result<AnalysisConfig> {
        let thresholds = match &self.thresholds {
            Some(path) => Thresholds::load(path)?,
            None => Thresholds::default(),
        };
        Ok(AnalysisConfig {
            lexicon_path: self.lexicon.clone(),
            model_path: self.model.clone(),
            thresholds,
            ..AnalysisConfig::default()
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one article
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of LDA topics
        #[arg(long, default_value_t = 3)]
        topics: usize,
        #[arg(long)]
        title: Option<String>,
        /// Write output here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        engine: EngineArgs,
    },
    /// Train the discourse classifier on a JSONL corpus
    TrainDiscourse {
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        epochs: u32,
    },
    /// Print per-class scores of a model on a labeled corpus
    EvalDiscourse {
        /// Model file, or `rules` for the rule baseline
        model: String,
        corpus: PathBuf,
    },
    /// Run the HTTP API
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        bind: std::net::IpAddr,
        /// Directory holding stored analyses
        #[arg(long, env = "SIRENLESS_DATA", default_value = "sirenless-data")]
        data: PathBuf,
        /// UI bundle to serve at /
        #[arg(long = "static")]
        static_dir: Option<PathBuf>,
        /// Largest accepted request body in bytes
        #[arg(long, default_value_t = DEFAULT_BODY_LIMIT)]
        body_limit: usize,
        #[command(flatten)]
        engine: EngineArgs,
    },
}

/// Parses `args` and runs the command. Returns the process exit code: 0 on
/// success, 1 for usage errors, 2 when the command itself fails.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze {
            file,
            format,
            seed,
            topics,
            title,
            out,
            engine,
        } => {
            let bytes = std::fs::read(&file).with_context(|| format!("reading {}", file.display()))?;
            let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", file.display()))?;
            let config = AnalysisConfig {
                seed,
                topics,
                ..engine.config()?
            };
            let result = Analyzer::new(config)?.analyze(text, title)?;
            let output = match format {
                Format::Json => result.to_json()?,
                Format::Summary => summary_text(&result),
            };
            write_output(out.as_deref(), &output)
        }
        Command::TrainDiscourse {
            corpus,
            out,
            seed,
            epochs,
        } => {
            let docs = read_corpus(&corpus)?;
            let model = train(&docs, epochs, seed)?;
            model.save(&out)?;
            let report = evaluate(&model, &docs)?;
            println!(
                "trained on {} sentences, {} epochs, seed {}; training accuracy {:.3}",
                model.metadata.examples, epochs, seed, report.accuracy
            );
            println!("wrote {}", out.display());
            Ok(())
        }
        Command::EvalDiscourse { model, corpus } => {
            let docs = read_corpus(&corpus)?;
            let report = if model == "rules" {
                evaluate_with(Labeler::Rules, &docs)?
            } else {
                evaluate(&DiscourseModel::load(Path::new(&model))?, &docs)?
            };
            print!("{}", eval_text(&report));
            Ok(())
        }
        Command::Serve {
            port,
            bind,
            data,
            static_dir,
            body_limit,
            engine,
        } => {
            tracing_subscriber::fmt()
                .with_env_filter(
                    tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()),
                )
                .with_writer(std::io::stderr)
                .init();
            let state = Arc::new(AppState {
                analyzer: Analyzer::new(engine.config()?)?,
                store: AnalysisStore::open(&data)?,
            });
            let app = server::router(state, body_limit, static_dir);
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(async {
                let listener = tokio::net::TcpListener::bind((bind, port))
                    .await
                    .with_context(|| format!("binding {bind}:{port}"))?;
                server::serve(listener, app).await?;
                Ok(())
            })
        }
    }
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

/// The summary header followed by one line per pattern finding.
pub fn summary_text(result: &AnalysisResult) -> String {
    let s = &result.summary;
    let mut out = String::new();
    let _ = writeln!(out, "Writing style: {:?} ({:.3})", s.writing_style.level, s.writing_style.grade);
    let _ = writeln!(out, "Sentiment: {:?} ({:.3})", s.sentiment.level, s.sentiment.grade);
    let _ = writeln!(out, "Readability: {:?} ({:.1})", s.readability.level, s.readability.grade);
    let _ = writeln!(out, "Reliability: {:?} ({:.1})", s.reliability.level, s.reliability.grade);
    if result.patterns.findings.is_empty() {
        out.push_str("Findings: none\n");
        return out;
    }
    out.push_str("Findings:\n");
    for f in &result.patterns.findings {
        let evidence = match &f.evidence {
            Evidence::Sentences(ids) if ids.is_empty() => String::new(),
            Evidence::Sentences(ids) => format!(" [sentences {}]", join(ids)),
            Evidence::Characters(ids) => {
                let names: Vec<&str> = ids
                    .iter()
                    .filter_map(|id| result.characters.iter().find(|c| c.id == *id))
                    .map(|c| c.canonical.as_str())
                    .collect();
                format!(" [characters {}]", names.join(", "))
            }
        };
        let _ = writeln!(out, "  {} {}: {}{}", f.severity.as_str(), f.kind.as_str(), f.detail, evidence);
    }
    out
}

fn join(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

pub fn eval_text(report: &EvalReport) -> String {
    let mut out = format!("{:<12} {:>9} {:>9} {:>9} {:>8}\n", "mode", "precision", "recall", "f1", "support");
    for c in &report.per_class {
        let _ = writeln!(
            out,
            "{:<12} {:>9.3} {:>9.3} {:>9.3} {:>8}{}",
            c.mode.as_str(),
            c.precision,
            c.recall,
            c.f1,
            c.support,
            if c.absent_from_gold { "  (absent from gold)" } else { "" }
        );
    }
    let _ = writeln!(out, "macro-F1 {:.3}", report.macro_f1);
    let _ = writeln!(out, "accuracy {:.3} (majority class {:.3})", report.accuracy, report.majority_rate);
    out
}
