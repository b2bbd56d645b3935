//! The `mdskit` command line.
//!
//! Reports go to stdout as `key = value` lines in a fixed order; sets are
//! rendered ascending as `{a,b,c}`. Diagnostics go to stderr. Exit codes:
//! 0 success, 1 verification failure, 2 usage or input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::code::{is_mds, Code};
use crate::codefile;
use crate::constructions::{
    cyclic_mols, doubly_extended_rs, extended_rs_code, mols_to_code, repetition_code, rs_code, sum_zero_code,
    universe_code,
};
use crate::galois::Field;
use crate::search::{check_theorems, enumerate_mds, SearchError, SearchLimits, SearchMode, SearchSpec};
use crate::spectra::{
    distance_distribution_from, partition_distance_enumerator, partition_weight_enumerator_bruteforce,
    partition_weight_enumerator_formula, predicted_spectrum, weight_distribution_bruteforce,
    weight_distribution_formula, PartitionSpec, Regime, WeightDistribution, WeightProfile,
};
use crate::transforms::{classify_binary, normalize_to_zero, residual, ResidualSpec, TransformError};

#[derive(Debug, Parser)]
#[command(name = "mdskit", version, about = "Construct MDS codes and check their weight spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code from one of the standard families.
    Construct(ConstructArgs),
    /// Report minimum distance and whether the code is MDS.
    Verify { file: PathBuf },
    /// Weight spectrum and distribution, checked against the closed forms.
    Spectrum { file: PathBuf },
    /// Partition weight enumerator for one profile.
    Pwe {
        file: PathBuf,
        /// Blocks of 1-based positions, e.g. `1,2/3,4`.
        #[arg(long)]
        partition: String,
        /// Per-block weights, e.g. `1,2`.
        #[arg(long)]
        profile: String,
    },
    /// Distance distribution from one codeword.
    Distances {
        file: PathBuf,
        /// The codeword, comma separated.
        #[arg(long)]
        word: String,
        #[arg(long, requires = "profile")]
        partition: Option<String>,
        #[arg(long, requires = "partition")]
        profile: Option<String>,
    },
    /// Fix values at positions and delete those coordinates.
    Residual {
        file: PathBuf,
        /// 1-based positions, comma separated (may be empty).
        #[arg(long, default_value = "")]
        positions: String,
        #[arg(long, default_value = "")]
        values: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Map a codeword to the zero word by symbol transpositions.
    Normalize {
        file: PathBuf,
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Identify the linear binary code a binary MDS code is equivalent to.
    ClassifyBinary { file: PathBuf },
    /// Exhaustive search for MDS codes.
    Search(SearchArgs),
    /// Check the spectrum, distribution and length results on every small code.
    CheckTheorems {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        max_n: usize,
        /// Largest ambient space q^n searched (overrides MDSKIT_MAX_SEARCH).
        #[arg(long)]
        max_search: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    Repetition,
    Universe,
    SumZero,
    Rs,
    ExtRs,
    DoublyExtRs,
    Mols,
}

#[derive(Debug, Args)]
struct ConstructArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Evaluation points for `rs` (default: every field element).
    #[arg(long)]
    points: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Count,
    Exists,
    Collect,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: usize,
    #[arg(long)]
    require_zero: bool,
    #[arg(long, value_enum, default_value = "count")]
    mode: ModeArg,
    /// Maximum number of codes kept in collect mode.
    #[arg(long)]
    limit: Option<usize>,
    /// Write every code found into this directory.
    #[arg(long)]
    emit_codes: Option<PathBuf>,
    /// Largest ambient space q^n searched (overrides MDSKIT_MAX_SEARCH).
    #[arg(long)]
    max_search: Option<usize>,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    /// Exit 1: a check ran and failed. The partial report is kept.
    Check(String),
    /// Exit 2: bad flags, unreadable or invalid input.
    Usage(String),
}

type CmdResult = Result<(String, bool), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { exit_code: 0, stdout: text, stderr: String::new() }
            } else {
                Outcome { exit_code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((report, true)) => Outcome { exit_code: 0, stdout: report, stderr: String::new() },
        Ok((report, false)) => Outcome { exit_code: 1, stdout: report, stderr: String::new() },
        Err(Failure::Check(msg)) => Outcome { exit_code: 1, stdout: String::new(), stderr: format!("mdskit: {msg}\n") },
        Err(Failure::Usage(msg)) => Outcome { exit_code: 2, stdout: String::new(), stderr: format!("mdskit: {msg}\n") },
    }
}

fn dispatch(command: Command) -> CmdResult {
    match command {
        Command::Construct(args) => construct(args),
        Command::Verify { file } => verify(&load(&file)?),
        Command::Spectrum { file } => spectrum(&load(&file)?),
        Command::Pwe { file, partition, profile } => pwe(&load(&file)?, &partition, &profile),
        Command::Distances { file, word, partition, profile } => {
            distances(&load(&file)?, &word, partition.as_deref().zip(profile.as_deref()))
        }
        Command::Residual { file, positions, values, out } => {
            residual_cmd(&load(&file)?, &positions, &values, out.as_deref())
        }
        Command::Normalize { file, word, out } => normalize(&load(&file)?, &word, &out),
        Command::ClassifyBinary { file } => classify(&load(&file)?),
        Command::Search(args) => search(args),
        Command::CheckTheorems { q, max_n, max_search } => theorems(q, max_n, max_search),
    }
}

fn load(path: &Path) -> Result<Code, Failure> {
    codefile::read(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_list(raw: &str, what: &str) -> Result<Vec<usize>, Failure> {
    if raw.trim().is_empty() {
        return Ok(Vec::new());
    }
    raw.split(',').map(|tok| tok.trim().parse().map_err(|_| usage(format!("bad {what} `{raw}`")))).collect()
}

fn parse_positions(raw: &str, n: usize) -> Result<Vec<usize>, Failure> {
    parse_list(raw, "position list")?
        .into_iter()
        .map(|p| if (1..=n).contains(&p) { Ok(p - 1) } else { Err(usage(format!("position {p} is not in 1..={n}"))) })
        .collect()
}

fn parse_word(raw: &str, code: &Code) -> Result<Vec<u8>, Failure> {
    let word = parse_list(raw, "word")?;
    if word.len() != code.n() || word.iter().any(|&s| s >= code.q()) {
        return Err(usage(format!("`{raw}` is not a word of length {} over q={}", code.n(), code.q())));
    }
    Ok(word.into_iter().map(|s| s as u8).collect())
}

fn parse_partition(raw: &str, n: usize) -> Result<PartitionSpec, Failure> {
    let blocks = raw.split('/').map(|block| parse_positions(block, n)).collect::<Result<Vec<_>, _>>()?;
    PartitionSpec::new(n, blocks).map_err(usage)
}

fn render_set(set: &std::collections::BTreeSet<usize>) -> String {
    crate::search::render_set(set)
}

fn render_word(w: &[u8]) -> String {
    w.iter().map(u8::to_string).collect::<Vec<_>>().join(",")
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::Stated => "stated",
        Regime::OutOfStatedRegime => "out-of-stated-regime",
    }
}

fn header(out: &mut String, code: &Code) {
    let _ = writeln!(out, "n = {}", code.n());
    let _ = writeln!(out, "k = {}", code.k());
    let _ = writeln!(out, "q = {}", code.q());
}

fn mds_flag(code: &Code) -> bool {
    code.len() >= 2 && is_mds(code).map(|r| r.is_mds).unwrap_or(false)
}

fn write_distribution(out: &mut String, dist: &WeightDistribution) {
    for (w, c) in dist.counts().iter().enumerate() {
        let _ = writeln!(out, "E({w}) = {c}");
    }
}

fn emit_code(code: &Code, path: Option<&Path>) -> CmdResult {
    match path {
        None => Ok((codefile::to_string(code), true)),
        Some(path) => {
            codefile::write(path, code).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            let mut out = String::new();
            header(&mut out, code);
            let _ = writeln!(out, "words = {}", code.len());
            let _ = writeln!(out, "file = {}", path.display());
            Ok((out, true))
        }
    }
}

fn construct(args: ConstructArgs) -> CmdResult {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this family")));
    let field = || Field::new(args.q).map_err(usage);
    let code = match args.family {
        Family::Repetition => repetition_code(need(args.n, "n")?, args.q),
        Family::Universe => universe_code(need(args.k, "k")?, args.q),
        Family::SumZero => sum_zero_code(need(args.k, "k")?, &field()?),
        Family::Rs => {
            let f = field()?;
            let points: Vec<u8> = match (&args.points, args.n) {
                (Some(raw), _) => parse_list(raw, "point list")?
                    .into_iter()
                    .map(|p| f.element(p).map_err(usage))
                    .collect::<Result<_, _>>()?,
                (None, Some(n)) => f.elements().take(n).collect(),
                (None, None) => f.elements().collect(),
            };
            rs_code(&f, need(args.k, "k")?, &points)
        }
        Family::ExtRs => extended_rs_code(&field()?, need(args.k, "k")?),
        Family::DoublyExtRs => {
            if args.k.is_some_and(|k| k != 3) {
                return Err(usage("the doubly extended family is only built for k = 3"));
            }
            doubly_extended_rs(&field()?)
        }
        Family::Mols => cyclic_mols(args.q).and_then(|m| mols_to_code(&m)),
    }
    .map_err(usage)?;
    emit_code(&code, args.out.as_deref())
}

fn verify(code: &Code) -> CmdResult {
    let report = is_mds(code).map_err(|e| Failure::Check(e.to_string()))?;
    let mut out = String::new();
    header(&mut out, code);
    let _ = writeln!(out, "d = {}", report.d);
    let _ = writeln!(out, "singleton_bound = {}", report.singleton_bound);
    let _ = writeln!(out, "is_mds = {}", report.is_mds);
    Ok((out, report.is_mds))
}

fn spectrum(code: &Code) -> CmdResult {
    if !code.contains_zero() {
        return Err(Failure::Check("code does not contain the zero word; run `normalize` first".into()));
    }
    let observed = weight_distribution_bruteforce(code);
    let mds = mds_flag(code);
    let mut out = String::new();
    header(&mut out, code);
    let _ = writeln!(out, "is_mds = {mds}");
    let _ = writeln!(out, "W = {}", render_set(&observed.spectrum()));
    write_distribution(&mut out, &observed);
    if !mds {
        return Ok((out, false));
    }
    let (n, k, q) = (code.n(), code.k(), code.q());
    let mut ok = true;
    match predicted_spectrum(n, k, q) {
        Ok(pred) => {
            let agrees = pred == observed.spectrum();
            ok &= agrees;
            let _ = writeln!(out, "predicted = {}", render_set(&pred));
            let _ = writeln!(out, "spectrum_agrees = {agrees}");
        }
        Err(_) => {
            ok = false;
            let _ = writeln!(out, "predicted = inadmissible");
            let _ = writeln!(out, "spectrum_agrees = false");
        }
    }
    let formula = weight_distribution_formula(n, k, q).map_err(|e| Failure::Check(e.to_string()))?;
    let agrees = formula.distribution == observed;
    if formula.regime == Regime::Stated {
        ok &= agrees;
    }
    let _ = writeln!(out, "formula_regime = {}", regime_name(formula.regime));
    let _ = writeln!(out, "formula_agrees = {agrees}");
    Ok((out, ok))
}

fn pwe(code: &Code, partition: &str, profile: &str) -> CmdResult {
    let t = parse_partition(partition, code.n())?;
    let w = WeightProfile(parse_list(profile, "profile")?);
    if !code.contains_zero() {
        return Err(Failure::Check("code does not contain the zero word; run `normalize` first".into()));
    }
    let observed = partition_weight_enumerator_bruteforce(code, &t, &w).map_err(usage)?;
    let mds = mds_flag(code);
    let mut out = String::new();
    let _ = writeln!(out, "partition = {partition}");
    let _ = writeln!(out, "profile = {profile}");
    let _ = writeln!(out, "is_mds = {mds}");
    let _ = writeln!(out, "A = {observed}");
    if !mds {
        return Ok((out, false));
    }
    let formula = partition_weight_enumerator_formula(code.n(), code.k(), code.q(), &t, &w)
        .map_err(|e| Failure::Check(e.to_string()))?;
    let regime = Regime::of(code.k(), code.q());
    let agrees = formula == observed;
    let _ = writeln!(out, "formula = {formula}");
    let _ = writeln!(out, "formula_regime = {}", regime_name(regime));
    let _ = writeln!(out, "agrees = {agrees}");
    Ok((out, agrees || regime == Regime::OutOfStatedRegime))
}

fn distances(code: &Code, word: &str, partition: Option<(&str, &str)>) -> CmdResult {
    let c = parse_word(word, code)?;
    let dist = distance_distribution_from(code, &c).map_err(usage)?;
    let mds = mds_flag(code);
    let mut out = String::new();
    let _ = writeln!(out, "word = {}", render_word(&c));
    let _ = writeln!(out, "is_mds = {mds}");
    write_distribution(&mut out, &dist);
    let mut ok = mds;
    if mds {
        let formula =
            weight_distribution_formula(code.n(), code.k(), code.q()).map_err(|e| Failure::Check(e.to_string()))?;
        let agrees = formula.distribution == dist;
        let _ = writeln!(out, "formula_regime = {}", regime_name(formula.regime));
        let _ = writeln!(out, "formula_agrees = {agrees}");
        ok = agrees || formula.regime == Regime::OutOfStatedRegime;
    }
    if let Some((partition, profile)) = partition {
        let t = parse_partition(partition, code.n())?;
        let w = WeightProfile(parse_list(profile, "profile")?);
        let a = partition_distance_enumerator(code, &c, &t, &w).map_err(usage)?;
        let _ = writeln!(out, "partition = {partition}");
        let _ = writeln!(out, "profile = {profile}");
        let _ = writeln!(out, "A = {a}");
        if mds {
            let formula = partition_weight_enumerator_formula(code.n(), code.k(), code.q(), &t, &w)
                .map_err(|e| Failure::Check(e.to_string()))?;
            let _ = writeln!(out, "formula = {formula}");
            let _ = writeln!(out, "agrees = {}", formula == a);
            ok &= formula == a || Regime::of(code.k(), code.q()) == Regime::OutOfStatedRegime;
        }
    }
    Ok((out, ok))
}

fn residual_cmd(code: &Code, positions: &str, values: &str, out: Option<&Path>) -> CmdResult {
    let positions = parse_positions(positions, code.n())?;
    let values = parse_list(values, "value list")?;
    if values.iter().any(|&v| v >= code.q()) {
        return Err(usage(format!("values must be below q={}", code.q())));
    }
    let spec = ResidualSpec::new(positions, values.into_iter().map(|v| v as u8).collect());
    let res = residual(code, &spec).map_err(|e| match e {
        TransformError::NotMds => Failure::Check(e.to_string()),
        other => usage(other),
    })?;
    emit_code(&res, out)
}

fn normalize(code: &Code, word: &str, out_path: &Path) -> CmdResult {
    let c = parse_word(word, code)?;
    let (normalized, moves) = normalize_to_zero(code, &c).map_err(usage)?;
    codefile::write(out_path, &normalized).map_err(|e| usage(format!("{}: {e}", out_path.display())))?;
    let mut out = String::new();
    let _ = writeln!(out, "word = {}", render_word(&c));
    let _ = writeln!(out, "file = {}", out_path.display());
    let _ = writeln!(out, "moves = {}", moves.len());
    for mv in &moves {
        let _ = writeln!(out, "{mv}");
    }
    Ok((out, true))
}

fn classify(code: &Code) -> CmdResult {
    let mut out = String::new();
    let _ = writeln!(out, "n = {}", code.n());
    let _ = writeln!(out, "k = {}", code.k());
    match classify_binary(code) {
        Ok(class) => {
            let _ = writeln!(out, "class = {}", class.family);
            let _ = writeln!(out, "moves = {}", class.witness.len());
            for mv in &class.witness {
                let _ = writeln!(out, "{mv}");
            }
            Ok((out, true))
        }
        Err(TransformError::NotBinary(q)) => Err(usage(format!("expected a binary code, got q={q}"))),
        Err(e) => Err(Failure::Check(e.to_string())),
    }
}

fn limits(max_search: Option<usize>) -> Result<SearchLimits, Failure> {
    let mut limits = SearchLimits::from_env().map_err(usage)?;
    if let Some(max) = max_search {
        limits.max_space = max;
    }
    Ok(limits)
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::SearchSpaceTooLarge(_) => usage(format!("{e} (raise --max-search to override)")),
        other => usage(other),
    }
}

fn search(args: SearchArgs) -> CmdResult {
    let mode = match args.mode {
        ModeArg::Count => SearchMode::Count,
        ModeArg::Exists => SearchMode::Exists,
        ModeArg::Collect => SearchMode::Collect,
    };
    let mut spec = SearchSpec::new(args.n, args.k, args.q)
        .require_zero(args.require_zero)
        .mode(mode)
        .limits(limits(args.max_search)?);
    if let Some(limit) = args.limit {
        spec = spec.limit(limit);
    }
    let outcome = enumerate_mds(&spec).map_err(search_failure)?;

    let mut out = String::new();
    let _ = writeln!(out, "n = {}", args.n);
    let _ = writeln!(out, "k = {}", args.k);
    let _ = writeln!(out, "q = {}", args.q);
    let _ = writeln!(out, "require_zero = {}", args.require_zero);
    match mode {
        SearchMode::Count => {
            let _ = writeln!(out, "mode = count");
            let _ = writeln!(out, "count = {}", outcome.count);
        }
        SearchMode::Exists => {
            let _ = writeln!(out, "mode = exists");
            let _ = writeln!(out, "exists = {}", outcome.count > 0);
        }
        SearchMode::Collect => {
            let _ = writeln!(out, "mode = collect");
            let _ = writeln!(out, "count = {}", outcome.count);
            let _ = writeln!(out, "truncated = {}", outcome.truncated);
        }
    }
    if let Some(dir) = &args.emit_codes {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
        for (i, code) in outcome.codes.iter().enumerate() {
            let path = dir.join(format!("code_{:04}.code", i + 1));
            codefile::write(&path, code).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        }
        let _ = writeln!(out, "emitted = {}", outcome.codes.len());
    }
    Ok((out, true))
}

fn theorems(q: usize, max_n: usize, max_search: Option<usize>) -> CmdResult {
    let reports = check_theorems(q, max_n, limits(max_search)?).map_err(search_failure)?;
    let mut out = String::new();
    let failures = reports.iter().filter(|r| r.verdict.is_failure()).count();
    for r in &reports {
        let _ = writeln!(out, "{r}");
    }
    let _ = writeln!(out, "reports = {}", reports.len());
    let _ = writeln!(out, "failures = {failures}");
    Ok((out, failures == 0))
}
