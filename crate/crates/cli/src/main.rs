//! `invlim`: invariants, isomorphism decisions, intertwiner certificates,
//! Bratteli diagrams and dimension groups for presented direct limits.
//!
//! Exit codes: 0 isomorphic or success, 1 not isomorphic (or a failed
//! self-test suite), 2 usage or schema error, 3 undetermined, 4 search
//! limits exhausted, 5 a certificate failed its own verification.

mod input;

use clap::{Parser, Subcommand, ValueEnum};
use input::{read_all, Document};
use invlim::bratteli;
use invlim::classify::{isomorphic, ClassifyOptions, Decision, Verdict};
use invlim::intertwine::{
    build_diagram, certify, verify_certificate, verify_diagram, DiagramOptions, IntertwineError, IntertwinerDiagram,
    Presented,
};
use invlim::matrixlab::{replay_diagram, suites, ExactField, MatrixLabError};
use invlim::seqspec::{AlgebraType, SpecEntry, TripleSequence};
use invlim::supernat::agreement_check;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "invlim", version, about = "Classify direct limits of involution simple matrix algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant profile of each algebra.
    Invariants { files: Vec<PathBuf> },
    /// Decide whether two algebras are isomorphic.
    Classify {
        files: Vec<PathBuf>,
        /// Declare that opaque symmetry indices of the two profiles agree.
        #[arg(long)]
        sigma_equal: bool,
    },
    /// Build an intertwiner certificate for two isomorphic presented algebras.
    Intertwine {
        files: Vec<PathBuf>,
        #[arg(long)]
        depth: Option<usize>,
        /// Re-check the certificate, and replay it with matrices when degrees allow.
        #[arg(long)]
        verify: bool,
    },
    /// Emit the Bratteli diagram of a presented algebra.
    Bratteli {
        file: PathBuf,
        #[arg(long)]
        levels: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Print the dimension group presentation of a presented algebra.
    K0 {
        file: PathBuf,
        #[arg(long)]
        levels: Option<usize>,
    },
    /// Run the brute-force oracle suites.
    Selftest {
        /// Hexadecimal seed for the randomized suites.
        #[arg(long, value_parser = parse_hex_seed)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 32)]
        max_degree: usize,
        /// Horizon of the bounded divisibility criterion.
        #[arg(long, default_value_t = 12)]
        horizon: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

const DEFAULT_LEVELS: usize = 4;
const DEFAULT_DEPTH: usize = 4;

fn parse_hex_seed(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("`{s}` is not a hexadecimal seed: {e}"))
}

/// A failed command: the message goes to stderr and `code` becomes the
/// exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

type Outcome = Result<u8, Failure>;

/// Writes to stdout, ignoring a closed pipe so `invlim ... | head` exits quietly.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(value: &impl serde::Serialize) {
    emit(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable output")));
}

fn load(paths: &[PathBuf], count: std::ops::RangeInclusive<usize>) -> Result<Document, Failure> {
    if paths.is_empty() {
        return Err(Failure::usage("no input files"));
    }
    let doc = read_all(paths).map_err(Failure::usage)?;
    if !count.contains(&doc.entries.len()) {
        return Err(Failure::usage(format!(
            "expected {} to {} algebras, found {}",
            count.start(),
            count.end(),
            doc.entries.len()
        )));
    }
    Ok(doc)
}

fn presented(entry: &SpecEntry) -> Result<(&TripleSequence, AlgebraType), Failure> {
    entry
        .sequence()
        .map(|s| (s, entry.algebra_type()))
        .ok_or_else(|| Failure::usage("this command needs a presented sequence, not a profile"))
}

fn decision_code(v: &Verdict) -> u8 {
    match v.isomorphic {
        Decision::Isomorphic => 0,
        Decision::NotIsomorphic => 1,
        Decision::Undetermined => 3,
    }
}

fn cmd_invariants(files: &[PathBuf]) -> Outcome {
    let doc = load(files, 1..=usize::MAX)?;
    let profiles = doc
        .entries
        .iter()
        .map(|e| e.profile().map_err(|err| Failure::usage(err.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    if let [single] = &profiles[..] {
        print_json(single);
    } else {
        print_json(&profiles);
    }
    Ok(0)
}

fn classify_pair(doc: &Document, sigma_equal: bool) -> Result<Verdict, Failure> {
    let p = doc.entries[0].profile().map_err(|e| Failure::usage(e.to_string()))?;
    let q = doc.entries[1].profile().map_err(|e| Failure::usage(e.to_string()))?;
    let opts = ClassifyOptions { sigma_equal: sigma_equal || doc.options.sigma_equal.unwrap_or(false) };
    isomorphic(&p, &q, opts).map_err(|e| Failure::usage(e.to_string()))
}

fn cmd_classify(files: &[PathBuf], sigma_equal: bool) -> Outcome {
    let doc = load(files, 2..=2)?;
    let verdict = classify_pair(&doc, sigma_equal)?;
    print_json(&verdict);
    Ok(decision_code(&verdict))
}

fn intertwine_failure(e: IntertwineError) -> Failure {
    let code = match &e {
        IntertwineError::NotIsomorphic(_) => 1,
        IntertwineError::Sequence(_) => 2,
        IntertwineError::DepthExceeded { .. } => 4,
        _ => 5,
    };
    let message = match &e {
        IntertwineError::NotIsomorphic(_) => format!("NotIsomorphic: {e}"),
        _ => e.to_string(),
    };
    Failure { code, message }
}

fn field_for(characteristic: u64) -> Result<ExactField, Failure> {
    ExactField::with_characteristic(characteristic)
        .ok_or_else(|| Failure::usage(format!("characteristic {characteristic} is not prime")))
}

fn replay(d: &IntertwinerDiagram, field: ExactField) -> Result<(), Failure> {
    match replay_diagram(d, field) {
        Ok(report) => {
            eprintln!(
                "matrix replay over {}: {} triangles commute, {} legs checked",
                report.field, report.triangles, report.legs
            );
            Ok(())
        }
        Err(MatrixLabError::Unsupported(why)) => {
            eprintln!("matrix replay skipped: {why}");
            Ok(())
        }
        Err(e) => Err(Failure { code: 5, message: e.to_string() }),
    }
}

fn cmd_intertwine(files: &[PathBuf], depth: Option<usize>, verify: bool) -> Outcome {
    let doc = load(files, 2..=2)?;
    let (first, first_kind) = presented(&doc.entries[0])?;
    let (second, second_kind) = presented(&doc.entries[1])?;
    let characteristic = doc.entries[0].characteristic();
    let opts = DiagramOptions { depth: depth.or(doc.options.depth).unwrap_or(DEFAULT_DEPTH), scan_cap: None };
    let verdict = classify_pair(&doc, false)?;
    if verdict.isomorphic != Decision::Isomorphic {
        let code = decision_code(&verdict);
        let label = if code == 3 { "Undetermined" } else { "NotIsomorphic" };
        return Err(Failure { code, message: format!("{label}: {verdict}") });
    }
    let field = field_for(characteristic)?;
    if first_kind == second_kind {
        let d = build_diagram(first, second, first_kind, &verdict, &opts).map_err(intertwine_failure)?;
        if verify {
            verify_diagram(&d).map_err(intertwine_failure)?;
            eprintln!("composition identities hold at all {} steps", d.depth);
            replay(&d, field)?;
        }
        print_json(&d);
    } else {
        let c = certify(
            Presented { sequence: first, kind: first_kind },
            Presented { sequence: second, kind: second_kind },
            characteristic,
            ClassifyOptions::default(),
            &opts,
        )
        .map_err(intertwine_failure)?;
        if verify {
            verify_certificate(&c).map_err(intertwine_failure)?;
            eprintln!("bridges and composition identities hold");
            replay(&c.diagram, field)?;
        }
        print_json(&c);
    }
    Ok(0)
}

fn cmd_bratteli(file: PathBuf, levels: Option<usize>, format: Option<Format>) -> Outcome {
    let doc = load(&[file], 1..=1)?;
    let (seq, kind) = presented(&doc.entries[0])?;
    let format = match (format, doc.options.format.as_deref()) {
        (Some(f), _) => f,
        (None, None | Some("dot")) => Format::Dot,
        (None, Some("json")) => Format::Json,
        (None, Some(other)) => return Err(Failure::usage(format!("unknown format `{other}`"))),
    };
    let levels = levels.or(doc.options.levels).unwrap_or(DEFAULT_LEVELS);
    let d = bratteli::build(seq, kind, levels).map_err(|e| Failure::usage(e.to_string()))?;
    match format {
        Format::Dot => emit(&d.to_dot()),
        Format::Json => print_json(&d.to_json()),
    }
    Ok(0)
}

fn cmd_k0(file: PathBuf, levels: Option<usize>) -> Outcome {
    let doc = load(&[file], 1..=1)?;
    let (seq, kind) = presented(&doc.entries[0])?;
    let levels = levels.or(doc.options.levels).unwrap_or(DEFAULT_LEVELS);
    let p = bratteli::k0_presentation(seq, kind, levels).map_err(|e| Failure::usage(e.to_string()))?;
    print_json(&p);
    Ok(0)
}

fn cmd_selftest(seed: Option<u64>, max_degree: usize, horizon: usize) -> Outcome {
    let seed = seed.unwrap_or(suites::DEFAULT_SEED);
    emit(&format!("seed: {seed:#x}, max degree: {max_degree}\n"));
    let mut all_passed = true;
    for report in suites::standard_suites(seed, max_degree) {
        all_passed &= report.passed();
        emit(&format!("{report}\n"));
    }
    let agreement = agreement_check(200, horizon, seed);
    all_passed &= agreement.agrees();
    emit(&format!(
        "divisibility criterion vs exact membership: {} ({} instances, {} conclusive, {} disagreements)\n",
        if agreement.agrees() { "ok" } else { "FAILED" },
        agreement.instances,
        agreement.conclusive,
        agreement.disagreements.len()
    ));
    Ok(if all_passed { 0 } else { 1 })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Invariants { files } => cmd_invariants(&files),
        Command::Classify { files, sigma_equal } => cmd_classify(&files, sigma_equal),
        Command::Intertwine { files, depth, verify } => cmd_intertwine(&files, depth, verify),
        Command::Bratteli { file, levels, format } => cmd_bratteli(file, levels, format),
        Command::K0 { file, levels } => cmd_k0(file, levels),
        Command::Selftest { seed, max_degree, horizon } => cmd_selftest(seed, max_degree, horizon),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("invlim: {message}");
            ExitCode::from(code)
        }
    }
}
