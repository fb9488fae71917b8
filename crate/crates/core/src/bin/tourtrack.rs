use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use tourtrack::bijection::{
    decompose_blocks, format_blocks, score_vector_from_string, string_dual, string_to_tournament,
    tournament_to_string,
};
use tourtrack::counting::{
    count_by_enumeration, count_by_transfer_matrix, ntr_terms, ut, SequenceTable, MAX_ENUMERATION,
};
use tourtrack::dfa::{build_dfa, minimize_dfa};
use tourtrack::oeis::{self, UNIQUE_TOURNAMENTS_ID};
use tourtrack::rule::is_tracking_oracle;
use tourtrack::tournament::{unique_census, MAX_CENSUS};
use tourtrack::verify::{self, Level};
use tourtrack::{BinaryString, Error, IlString, Tournament, TrackingRule};

#[derive(Parser)]
#[command(
    name = "tourtrack",
    version,
    about = "Radar tracking strings and unique tournaments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an observation string as tracking or non-tracking.
    TrackCheck {
        string: String,
        #[arg(long, default_value = "3,5,2")]
        rule: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Count tracking and non-tracking strings of length 0..=K.
    Counts {
        #[arg(long, default_value_t = 14)]
        max_k: usize,
        #[arg(long, default_value = "3,5,2")]
        rule: String,
        #[arg(long, value_enum, default_value_t = Method::Matrix)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Map between initial-loss strings and unique tournaments.
    Bijection {
        #[arg(value_enum)]
        action: BijectionAction,
        /// Initial-loss string, or a tournament ("n:hex" or JSON) for to-string.
        argument: String,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Count unique tournaments on N nodes by brute force.
    Census {
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Run the self-verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
    },
    /// Compare UT(n) with the OEIS A000570 b-file.
    OeisCheck {
        /// Never touch the network; use the cache or the bundled snapshot.
        #[arg(long)]
        offline: bool,
        /// Read the b-file from this path instead.
        #[arg(long)]
        snapshot: Option<PathBuf>,
        /// Cache directory (default: $TOURTRACK_CACHE_DIR or the user cache).
        #[arg(long)]
        cache_dir: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Enum,
    Matrix,
    Recurrence,
    All,
}

impl Method {
    fn label(self) -> &'static str {
        match self {
            Method::Enum => "enum",
            Method::Matrix => "matrix",
            Method::Recurrence => "recurrence",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum BijectionAction {
    Decompose,
    ToTournament,
    ToString,
    Score,
    Dual,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Quick,
    Full,
}

enum Failure {
    /// Exit 1: mismatch, not unique, not decomposable.
    Domain(String),
    /// Exit 2: bad arguments.
    Usage(String),
    /// Exit 3: missing files or network.
    Environment(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Domain(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Environment(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Domain(m) | Failure::Usage(m) | Failure::Environment(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        match e {
            Error::NotUnique
            | Error::NotDecomposable
            | Error::InputTracks(_)
            | Error::TooShort
            | Error::Parse { .. }
            | Error::Gap { .. }
            | Error::NoOverlap => Failure::Domain(message),
            Error::Network(_) | Error::Unavailable(_) | Error::Io(_) => {
                Failure::Environment(message)
            }
            _ => Failure::Usage(message),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::TrackCheck {
            string,
            rule,
            format,
        } => track_check(&string, &rule, format),
        Command::Counts {
            max_k,
            rule,
            method,
            format,
        } => counts(max_k, &rule, method, format),
        Command::Bijection {
            action,
            argument,
            format,
        } => bijection(action, &argument, format),
        Command::Census { n, format } => census(n, format),
        Command::Verify { level } => run_verify(level),
        Command::OeisCheck {
            offline,
            snapshot,
            cache_dir,
        } => oeis_check(offline, snapshot, cache_dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}

fn require_format(format: Format, allowed: &[Format], command: &str) -> Outcome {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "{command} does not support this output format"
        )))
    }
}

fn track_check(string: &str, rule: &str, format: Format) -> Outcome {
    require_format(format, &[Format::Plain, Format::Json], "track-check")?;
    let rule: TrackingRule = rule.parse()?;
    let s: BinaryString = string.parse()?;
    let dfa = minimize_dfa(&build_dfa(&rule)?);
    let by_oracle = is_tracking_oracle(&s, &rule);
    let by_dfa = dfa.run(&s);
    if by_oracle != by_dfa {
        return Err(Failure::Domain(format!(
            "oracle ({by_oracle}) and automaton ({by_dfa}) disagree on {s}"
        )));
    }
    let label = if by_oracle {
        "tracking"
    } else {
        "non-tracking"
    };
    match format {
        Format::Json => println!(
            "{}",
            json!({"string": s.to_string(), "rule": rule.to_string(), "tracking": by_oracle})
        ),
        _ => println!("{label}"),
    }
    Ok(())
}

struct MethodCounts {
    method: Method,
    non_tracking: Vec<BigUint>,
}

fn counts(max_k: usize, rule: &str, method: Method, format: Format) -> Outcome {
    require_format(
        format,
        &[Format::Plain, Format::Json, Format::Csv],
        "counts",
    )?;
    let rule: TrackingRule = rule.parse()?;
    let methods: Vec<Method> = match method {
        Method::All if rule.is_standard() => vec![Method::Enum, Method::Matrix, Method::Recurrence],
        Method::All => vec![Method::Enum, Method::Matrix],
        single => vec![single],
    };
    if methods.contains(&Method::Recurrence) && !rule.is_standard() {
        return Err(Failure::Usage(
            "the recurrence method only applies to rule 3,5,2".into(),
        ));
    }
    if methods.contains(&Method::Enum) && max_k > MAX_ENUMERATION {
        return Err(Failure::Usage(format!(
            "enumeration is limited to k <= {MAX_ENUMERATION}"
        )));
    }

    let dfa = minimize_dfa(&build_dfa(&rule)?);
    let mut results = Vec::new();
    for &m in &methods {
        let non_tracking = match m {
            Method::Enum => (0..=max_k)
                .map(|k| count_by_enumeration(k, &rule).map(|(_, ntr)| BigUint::from(ntr)))
                .collect::<Result<Vec<_>, _>>()?,
            Method::Matrix => (0..=max_k)
                .map(|k| count_by_transfer_matrix(k, &dfa))
                .collect(),
            Method::Recurrence => ntr_terms(max_k + 1),
            Method::All => unreachable!("expanded above"),
        };
        results.push(MethodCounts {
            method: m,
            non_tracking,
        });
    }
    let agree = results
        .windows(2)
        .all(|w| w[0].non_tracking == w[1].non_tracking);
    let tracking = |k: usize, ntr: &BigUint| (BigUint::from(1u8) << k) - ntr;

    match format {
        Format::Json => {
            let mut tables = Vec::new();
            for r in &results {
                let label = r.method.label();
                let tr = r
                    .non_tracking
                    .iter()
                    .enumerate()
                    .map(|(k, v)| tracking(k, v))
                    .collect();
                tables.push(SequenceTable::new(
                    format!("NTr/{label}"),
                    0,
                    r.non_tracking.clone(),
                ));
                tables.push(SequenceTable::new(format!("Tr/{label}"), 0, tr));
            }
            let out = json!({
                "rule": rule.to_string(),
                "agree": agree,
                "tables": tables,
            });
            println!("{out}");
        }
        Format::Csv => {
            let table = SequenceTable::new("NTr", 0, results[0].non_tracking.clone());
            print!("{}", table.to_csv());
        }
        _ => {
            println!(
                "{:>3} {:<10} {:>12} {:>12}",
                "k", "method", "non-tracking", "tracking"
            );
            for k in 0..=max_k {
                for r in &results {
                    let ntr = &r.non_tracking[k];
                    println!(
                        "{k:>3} {:<10} {ntr:>12} {:>12}",
                        r.method.label(),
                        tracking(k, ntr)
                    );
                }
            }
            if results.len() > 1 && agree {
                println!("all methods agree");
            }
        }
    }
    if agree {
        Ok(())
    } else {
        Err(Failure::Domain("counting methods disagree".into()))
    }
}

fn bijection(action: BijectionAction, argument: &str, format: Format) -> Outcome {
    let dot_ok = matches!(action, BijectionAction::ToTournament);
    let allowed: &[Format] = if dot_ok {
        &[Format::Plain, Format::Json, Format::Dot]
    } else {
        &[Format::Plain, Format::Json]
    };
    require_format(format, allowed, "this bijection action")?;
    let json_out = format == Format::Json;

    if let BijectionAction::ToString = action {
        let t: Tournament = argument.parse()?;
        let il = tournament_to_string(&t)?;
        if json_out {
            println!("{}", json!(il.to_string()));
        } else {
            println!("{il}");
        }
        return Ok(());
    }

    let bits: BinaryString = argument.parse()?;
    let il = IlString::new(bits)?;
    match action {
        BijectionAction::Decompose => {
            let blocks = decompose_blocks(il.bits())?;
            if json_out {
                println!("{}", serde_json::to_string(&blocks).map_err(Error::from)?);
            } else {
                println!("{}", format_blocks(&blocks));
            }
        }
        BijectionAction::ToTournament => {
            let t = string_to_tournament(&il)?;
            match format {
                Format::Dot => print!("{}", t.to_dot()),
                Format::Json => println!("{}", t.to_json()?),
                _ => println!("{}", t.to_hex()),
            }
        }
        BijectionAction::Score => {
            let scores = score_vector_from_string(&il)?;
            if json_out {
                println!("{}", serde_json::to_string(&scores).map_err(Error::from)?);
            } else {
                println!("{scores}");
            }
        }
        BijectionAction::Dual => {
            let d = string_dual(&il)?;
            if json_out {
                println!("{}", json!(d.to_string()));
            } else {
                println!("{d}");
            }
        }
        BijectionAction::ToString => unreachable!("handled above"),
    }
    Ok(())
}

fn census(n: usize, format: Format) -> Outcome {
    require_format(format, &[Format::Plain, Format::Json], "census")?;
    if !(1..=MAX_CENSUS).contains(&n) {
        return Err(Failure::Usage(format!(
            "census needs 1 <= n <= {MAX_CENSUS}"
        )));
    }
    let c = unique_census(n)?;
    let expected = ut(n)?;
    let found = BigUint::from(c.unique_count());
    let matches = found == expected;
    if format == Format::Json {
        let non_unique: Vec<_> = c
            .non_unique()
            .into_iter()
            .map(|s| json!({"scores": s, "classes": c.classes[&s]}))
            .collect();
        let out = json!({
            "n": n,
            "unique": c.unique_count(),
            "score_vectors": c.classes.len(),
            "isomorphism_classes": c.class_count(),
            "non_unique": non_unique,
            "ut": expected.to_string().parse::<serde_json::Number>().expect("decimal"),
            "match": matches,
        });
        println!("{out}");
    } else {
        println!("n = {n}");
        println!("unique tournaments: {}", c.unique_count());
        println!(
            "score vectors: {}, isomorphism classes: {}",
            c.classes.len(),
            c.class_count()
        );
        let non_unique = c.non_unique();
        if non_unique.is_empty() {
            println!("non-unique score vectors: none");
        } else {
            println!("non-unique score vectors:");
            for s in non_unique {
                println!("  {} ({} classes)", s.braced(), c.classes[&s]);
            }
        }
        let verdict = if matches { "match" } else { "MISMATCH" };
        println!("ut({n}) = {expected}: {verdict}");
    }
    if matches {
        Ok(())
    } else {
        Err(Failure::Domain(format!(
            "census found {found} unique tournaments, ut({n}) = {expected}"
        )))
    }
}

fn run_verify(level: VerifyLevel) -> Outcome {
    let level = match level {
        VerifyLevel::Quick => Level::Quick,
        VerifyLevel::Full => Level::Full,
    };
    let report = verify::run_with(level, |o| println!("{o}"));
    let total = report.outcomes.len();
    let failed = report.failures().count();
    println!(
        "{} properties, {} cases checked, {failed} failed",
        total,
        report.total_checked()
    );
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<String> = report
            .failures()
            .map(|o| format!("{}::{}", o.module, o.invariant))
            .collect();
        Err(Failure::Domain(format!("failed: {}", names.join(", "))))
    }
}

fn oeis_check(offline: bool, snapshot: Option<PathBuf>, cache_dir: Option<PathBuf>) -> Outcome {
    let remote = match snapshot {
        Some(path) => oeis::load_bfile(UNIQUE_TOURNAMENTS_ID, &path),
        None => {
            let dir = cache_dir.unwrap_or_else(oeis::default_cache_dir);
            oeis::fetch_bfile(UNIQUE_TOURNAMENTS_ID, &dir, offline)
        }
    }?;
    let last = remote
        .last_index()
        .ok_or_else(|| Failure::Domain("b-file has no entries".into()))?;
    let local = SequenceTable::ut(last as usize);
    let report = oeis::compare(&local, &remote, 0)?;
    if let Some(bad) = report.first_mismatch() {
        println!(
            "{UNIQUE_TOURNAMENTS_ID}: mismatch at index {}: local {}, remote {}",
            bad.index, bad.local, bad.remote
        );
        return Err(Failure::Domain(format!(
            "{} of {} terms differ",
            report.mismatches().count(),
            report.len()
        )));
    }
    println!(
        "{UNIQUE_TOURNAMENTS_ID}: {} terms match (n = {}..={})",
        report.len(),
        report.terms[0].index,
        last
    );
    Ok(())
}
