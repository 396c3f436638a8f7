//! Command-line front end. The binary is a thin wrapper around [`run`].

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::check::{run_checks, CheckOptions};
use crate::config::{ConfigError, ConfigLayer, Format, RunConfig, CONFIG_ENV};
use crate::hopf::{HopfContext, Side};
use crate::parenword::{Alphabet, NotIrreducible, ParseError, Word};
use crate::toymodel::{
    default_window, forest_formula, laurent_expand, phi, quadrature_oracle, ExpansionError,
    LaurentSeries, QuadratureError, RegValue, ToyModel,
};

/// Default word-length bound for `check`.
pub const DEFAULT_CHECK_LEN: usize = 4;
/// Default scale for `oracle` when `--c` is absent.
pub const DEFAULT_ORACLE_C: f64 = 2.0;
/// Relative tolerance for `oracle` agreement.
pub const ORACLE_REL_TOL: f64 = 1e-6;

#[derive(Debug, Parser)]
#[command(
    name = "hopfren",
    version,
    about = "Hopf algebra of renormalization on parenthesized words"
)]
pub struct Cli {
    /// TOML config file (also read from $HOPFREN_CONFIG); flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Letters and weights, e.g. `x1,x2` or `a:1,b:3`.
    #[arg(long, global = true)]
    pub alphabet: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Highest power of ε kept in Laurent expansions.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub order: Option<i32>,
    /// Numeric value of the scale c.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Regulator value for the quadrature oracle.
    #[arg(long, global = true)]
    pub eps: Option<f64>,
    /// Word-length bound for `check`.
    #[arg(long, global = true)]
    pub max_len: Option<usize>,
    #[arg(long, global = true)]
    pub max_len_cap: Option<usize>,
    /// Reserved.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum SideArg {
    Left,
    Right,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical form, length and irreducibility of a word.
    Parse { word: String },
    /// Coproduct Δ of a word.
    Coproduct {
        word: String,
        /// Sum over subwords instead of the recursive definition.
        #[arg(long)]
        sweedler: bool,
    },
    /// Antipode S of a word.
    Antipode {
        word: String,
        #[arg(long, value_enum, default_value = "left")]
        side: SideArg,
    },
    /// Counter term S_R of a word in the toy model.
    Counterterm { word: String },
    /// Renormalized value m(S_R ⊗ φ)Δ of an irreducible word.
    Renormalize { word: String },
    /// Counter term from the BPHZ forest recursion.
    Forest { word: String },
    /// Run every invariant suite over enumerated words.
    Check,
    /// Compare exact φ(w) with adaptive quadrature at (c, ε).
    Oracle { word: String },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cannot parse `{input}`: {source}\n  {input}\n  {caret}")]
    Parse {
        input: String,
        caret: String,
        source: ParseError,
    },
    #[error(transparent)]
    NotIrreducible(#[from] NotIrreducible),
    #[error(transparent)]
    Expansion(#[from] ExpansionError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Rendered output plus whether the command succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub success: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            success: true,
        }
    }
}

pub fn load_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let file = match path {
        Some(p) => ConfigLayer::from_file(&p)?,
        None => ConfigLayer::default(),
    };
    let flags = ConfigLayer {
        alphabet: cli.alphabet.clone(),
        format: cli.format.map(|f| match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        }),
        order: cli.order,
        c: cli.c,
        eps: cli.eps,
        max_len: cli.max_len,
        max_len_cap: cli.max_len_cap,
        seed: cli.seed,
    };
    Ok(RunConfig::from_layer(file.merged(flags))?)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = load_config(cli)?;
    match &cli.command {
        Command::Parse { word } => cmd_parse(&cfg, word),
        Command::Coproduct { word, sweedler } => cmd_coproduct(&cfg, word, *sweedler),
        Command::Antipode { word, side } => {
            let side = match side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            cmd_antipode(&cfg, word, side)
        }
        Command::Counterterm { word } => cmd_counterterm(&cfg, word),
        Command::Renormalize { word } => cmd_renormalize(&cfg, word),
        Command::Forest { word } => cmd_forest(&cfg, word),
        Command::Check => cmd_check(&cfg),
        Command::Oracle { word } => cmd_oracle(&cfg, word),
    }
}

fn parse_word(alphabet: &Alphabet, input: &str) -> Result<Word, CliError> {
    crate::parenword::parse(input, alphabet).map_err(|source| {
        let column = input[..source.position().min(input.len())].chars().count();
        CliError::Parse {
            input: input.to_string(),
            caret: format!("{}^", " ".repeat(column)),
            source,
        }
    })
}

fn emit(cfg: &RunConfig, text: String, json: Value) -> String {
    match cfg.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&json).expect("serializable"),
    }
}

pub fn cmd_parse(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let w = parse_word(&cfg.alphabet_or_default(), input)?;
    let factors: Vec<String> = w.factors().iter().map(|f| f.to_string()).collect();
    let text = format!(
        "{w}\nlength: {}\nirreducible: {}",
        w.length(),
        w.is_irreducible()
    );
    let json = json!({
        "word": w.to_string(),
        "length": w.length(),
        "irreducible": w.is_irreducible(),
        "factors": factors,
    });
    Ok(Outcome::ok(emit(cfg, text, json)))
}

pub fn cmd_coproduct(cfg: &RunConfig, input: &str, sweedler: bool) -> Result<Outcome, CliError> {
    let hopf = HopfContext::new(cfg.alphabet_or_default());
    let w = parse_word(hopf.alphabet(), input)?;
    let delta = if sweedler {
        hopf.coproduct_sweedler(&w)
    } else {
        hopf.coproduct(&w)
    };
    let text = delta
        .iter()
        .map(|((u, v), q)| format!("{q} {u} ⊗ {v}"))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({ "word": w.to_string(), "coproduct": delta.to_json() });
    Ok(Outcome::ok(emit(cfg, text, json)))
}

pub fn cmd_antipode(cfg: &RunConfig, input: &str, side: Side) -> Result<Outcome, CliError> {
    let hopf = HopfContext::new(cfg.alphabet_or_default());
    let w = parse_word(hopf.alphabet(), input)?;
    let s = hopf.antipode(&w, side);
    let json = json!({ "word": w.to_string(), "antipode": s.to_json() });
    Ok(Outcome::ok(emit(cfg, s.to_string(), json)))
}

fn value_report(label: &str, w: &Word, v: &RegValue, series: &LaurentSeries) -> (String, Value) {
    let text = format!("{label}[{w}] = {v}\n{series}");
    let json = json!({
        "word": w.to_string(),
        "value": v.to_json(),
        "laurent": series.to_json(),
    });
    (text, json)
}

pub fn cmd_counterterm(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let hopf = HopfContext::new(cfg.alphabet_or_default());
    let w = parse_word(hopf.alphabet(), input)?;
    let z = ToyModel::new(&hopf).counterterm(&w);
    let (min_pow, max_pow) = default_window(&w, cfg.order);
    let series = laurent_expand(&z, min_pow, max_pow)?;
    let (text, json) = value_report("S_R", &w, &z, &series);
    Ok(Outcome::ok(emit(cfg, text, json)))
}

pub fn cmd_forest(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let w = parse_word(&cfg.alphabet_or_default(), input)?;
    let z = forest_formula(&w)?;
    let (min_pow, max_pow) = default_window(&w, cfg.order);
    let series = laurent_expand(&z, min_pow, max_pow)?;
    let (text, json) = value_report("Z", &w, &z, &series);
    Ok(Outcome::ok(emit(cfg, text, json)))
}

pub fn cmd_renormalize(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let hopf = HopfContext::new(cfg.alphabet_or_default());
    let w = parse_word(hopf.alphabet(), input)?;
    let v = ToyModel::new(&hopf).renormalize(&w)?;
    let (min_pow, max_pow) = default_window(&w, cfg.order.max(0));
    let series = laurent_expand(&v, min_pow, max_pow)?;
    let limit = series.constant_term().unwrap_or_default();
    let (mut text, mut json) = value_report("Γ_ren", &w, &v, &series);
    text.push_str(&format!("\nlimit ε→0: {limit}   (L = ln c)"));
    json["finite"] = json!(series.is_finite());
    json["limit"] = json!(limit.to_json());
    if let Some(c) = cfg.c {
        let numeric = limit.eval_f64(c.ln());
        text.push_str(&format!("\nat c = {c}: {numeric:.12}"));
        json["c"] = json!(c);
        json["numeric"] = json!(numeric);
    }
    Ok(Outcome {
        output: emit(cfg, text, json),
        success: series.is_finite(),
    })
}

pub fn cmd_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let alphabet = match &cfg.alphabet {
        Some(a) => a.clone(),
        None => Alphabet::numbered(2),
    };
    let max_len = cfg.max_len.unwrap_or(DEFAULT_CHECK_LEN);
    let report = run_checks(&alphabet, &CheckOptions::new(max_len));
    let json = serde_json::to_value(&report).expect("serializable");
    Ok(Outcome {
        output: emit(cfg, report.to_string(), json),
        success: report.passed(),
    })
}

pub fn cmd_oracle(cfg: &RunConfig, input: &str) -> Result<Outcome, CliError> {
    let w = parse_word(&cfg.alphabet_or_default(), input)?;
    let c = cfg.c.unwrap_or(DEFAULT_ORACLE_C);
    let exact = phi(&w).eval_f64(c, cfg.eps);
    let numeric = quadrature_oracle(&w, c, cfg.eps)?;
    let rel = ((numeric - exact) / exact).abs();
    let agree = rel <= ORACLE_REL_TOL;
    let text = format!(
        "φ({w}) at c = {c}, ε = {}\nexact:      {exact:.12e}\nquadrature: {numeric:.12e}\nrelative difference: {rel:.3e} ({})",
        cfg.eps,
        if agree { "agree" } else { "DISAGREE" }
    );
    let json = json!({
        "word": w.to_string(),
        "c": c,
        "eps": cfg.eps,
        "exact": exact,
        "quadrature": numeric,
        "relative_difference": rel,
        "agree": agree,
    });
    Ok(Outcome {
        output: emit(cfg, text, json),
        success: agree,
    })
}
