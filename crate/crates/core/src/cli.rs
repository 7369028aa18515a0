//! The `rnacount` command line. [`run`] is pure: it maps arguments (and the
//! optional size-guard override from the environment) to output text and an
//! exit code, so it can be tested without spawning a process.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::bijection::{
    chen_forward, chen_inverse, forest_decode, forest_encode, sw_forward, sw_inverse, LabelledTree, SmallForest,
};
use crate::counting::{self, CountError, CountingResult, SizeDistribution};
use crate::structure::{enumerate_structures, SecondaryStructure, StructureStats};
use crate::tree::PlaneTree;
use crate::verify::{self, Suite};

/// Default bound on `2b + k` for `enumerate`.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 20;

/// Environment variable overriding [`DEFAULT_ENUMERATION_LIMIT`].
pub const LIMIT_ENV: &str = "RNACOUNT_MAX_SIZE";

#[derive(Debug, Parser)]
#[command(name = "rnacount", version, about = "Exact counts of RNA secondary structures and plane trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a closed-form count.
    Count(CountArgs),
    /// List every structure with b arcs and k isolated bases.
    Enumerate(EnumerateArgs),
    /// Print a helix-count table (1: any size, 2: size at least 2).
    Table(TableArgs),
    /// Apply a bijection to one input.
    Bijection(BijectionArgs),
    /// Check formulas and bijections against exhaustive enumeration.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Formula {
    Narayana,
    PartialStacks,
    MaxStack,
    MaxLoop,
    MaxBoth,
    Joint,
    JointMarginal,
    HelixDist,
    Helices,
    Probability,
    ExpectedStacks,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    formula: Formula,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Number of partial stacks, or the loop-size bound.
    #[arg(long)]
    l: Option<usize>,
    /// Partial-stack length bound.
    #[arg(long)]
    h: Option<usize>,
    /// Number of helices.
    #[arg(long)]
    s: Option<usize>,
    /// Minimum helix size.
    #[arg(long)]
    sigma: Option<usize>,
    /// Helix size distribution, e.g. "1:1,2:2".
    #[arg(long)]
    helix_dist: Option<String>,
    /// Loop size distribution, e.g. "1:1,2:2".
    #[arg(long)]
    loop_dist: Option<String>,
    /// Number of partial stacks for the joint count.
    #[arg(long)]
    le: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumerateFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    b: usize,
    #[arg(long)]
    k: usize,
    /// Keep structures whose statistic equals the value. Keys: s, l_e, l_o,
    /// max_stack, max_loop, min_helix (numbers); helices, loops, stacks
    /// (distributions such as "1:1,2:2"). Repeatable.
    #[arg(long = "filter", value_name = "KEY=VALUE")]
    filters: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: EnumerateFormat,
    /// Append statistics to each text line.
    #[arg(long)]
    stats: bool,
    /// Raise the bound on 2b + k.
    #[arg(long, value_name = "N")]
    unsafe_limit: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct TableArgs {
    id: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: TableFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Sw,
    Chen,
    Forest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Args)]
struct BijectionArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long, value_enum, default_value = "forward")]
    direction: Direction,
    /// Dot-bracket structure, parenthesized tree, or JSON for the forest map.
    #[arg(long, allow_hyphen_values = true)]
    input: String,
    /// Also apply the opposite direction and fail unless it restores the input.
    #[arg(long)]
    round_trip: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Largest structure length 2b + k swept (at most 16).
    #[arg(long, default_value_t = 12)]
    max_size: usize,
    /// Comma-separated suites; all by default.
    #[arg(long, value_delimiter = ',')]
    suites: Vec<String>,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Runs the command line `args` (including the program name). `env_limit`
/// is the raw value of [`LIMIT_ENV`], if set.
pub fn run<I, T>(args: I, env_limit: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { stdout: String::new(), stderr: text, code: 2 }
            } else {
                Outcome { stdout: text, stderr: String::new(), code: 0 }
            };
        }
    };
    let mut out = String::new();
    let result = match cli.command {
        Command::Count(a) => count(&a, &mut out),
        Command::Enumerate(a) => enumerate(&a, env_limit, &mut out),
        Command::Table(a) => table(&a, &mut out),
        Command::Bijection(a) => bijection(&a, &mut out),
        Command::Verify(a) => run_verify(&a, &mut out),
    };
    match result {
        Ok(()) => Outcome { stdout: out, stderr: String::new(), code: 0 },
        Err(CliError::Usage(msg)) => Outcome { stdout: out, stderr: format!("error: {msg}\n"), code: 2 },
        Err(CliError::Failure(msg)) => Outcome { stdout: out, stderr: format!("error: {msg}\n"), code: 1 },
    }
}

fn need(value: Option<usize>, flag: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("this formula needs --{flag}")))
}

fn need_dist(value: &Option<String>, flag: &str) -> Result<SizeDistribution, CliError> {
    let text = value.as_deref().ok_or_else(|| CliError::Usage(format!("this formula needs --{flag}")))?;
    Ok(text.parse()?)
}

fn count(a: &CountArgs, out: &mut String) -> Result<(), CliError> {
    let b = need(a.b, "b")?;
    let k = need(a.k, "k")?;
    let result: CountingResult = match a.formula {
        Formula::Narayana => counting::narayana(b, k)?.into(),
        Formula::PartialStacks => counting::count_by_partial_stacks(b, k, need(a.l, "l")?)?.into(),
        Formula::MaxStack => counting::count_max_partial_stack(b, k, need(a.h, "h")?)?.into(),
        Formula::MaxLoop => counting::count_max_loop_size(b, k, need(a.l, "l")?)?.into(),
        Formula::MaxBoth => counting::count_max_both(b, k, need(a.h, "h")?, need(a.l, "l")?)?.into(),
        Formula::Joint => counting::count_joint(
            b,
            k,
            &need_dist(&a.helix_dist, "helix-dist")?,
            &need_dist(&a.loop_dist, "loop-dist")?,
            need(a.le, "le")?,
        )?
        .into(),
        Formula::JointMarginal => counting::count_joint_marginal(
            b,
            k,
            &need_dist(&a.helix_dist, "helix-dist")?,
            &need_dist(&a.loop_dist, "loop-dist")?,
        )?
        .into(),
        Formula::HelixDist => {
            counting::count_by_helix_distribution(b, k, &need_dist(&a.helix_dist, "helix-dist")?)?.into()
        }
        Formula::Helices => counting::count_by_num_helices(b, k, need(a.s, "s")?, a.sigma.unwrap_or(1))?.into(),
        Formula::Probability => counting::helix_distribution_probability(
            b,
            k,
            need(a.s, "s")?,
            a.sigma.unwrap_or(1),
            &need_dist(&a.helix_dist, "helix-dist")?,
        )?
        .into(),
        Formula::ExpectedStacks => counting::expected_partial_stacks(b, k)?.into(),
    };
    writeln!(out, "{result}").unwrap();
    Ok(())
}

enum Filter {
    Number(fn(&StructureStats) -> usize, usize),
    Dist(fn(&StructureStats) -> &[usize], SizeDistribution),
}

impl Filter {
    fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |msg: String| CliError::Usage(format!("bad filter {text:?}: {msg}"));
        let (key, value) = text.split_once('=').ok_or_else(|| bad("expected KEY=VALUE".into()))?;
        let number = |f: fn(&StructureStats) -> usize| {
            value.trim().parse().map(|v| Filter::Number(f, v)).map_err(|_| bad("value is not a number".into()))
        };
        let dist = |f: fn(&StructureStats) -> &[usize]| {
            value.parse().map(|d| Filter::Dist(f, d)).map_err(|e: CountError| bad(e.to_string()))
        };
        match key.trim() {
            "s" => number(|s| s.helix_count),
            "l_e" | "le" => number(|s| s.partial_stack_count),
            "l_o" | "lo" => number(|s| s.nontrivial_loop_count),
            "max_stack" => number(StructureStats::max_partial_stack),
            "max_loop" => number(StructureStats::max_loop_size),
            "min_helix" => number(StructureStats::min_helix_size),
            "helices" => dist(|s| &s.helix_sizes),
            "loops" => dist(|s| &s.loop_sizes),
            "stacks" => dist(|s| &s.partial_stack_lengths),
            other => Err(bad(format!("unknown key {other:?}"))),
        }
    }

    fn keeps(&self, st: &StructureStats) -> bool {
        match self {
            Filter::Number(f, v) => f(st) == *v,
            Filter::Dist(f, d) => SizeDistribution::from_sizes(f(st)) == *d,
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn enumerate(a: &EnumerateArgs, env_limit: Option<&str>, out: &mut String) -> Result<(), CliError> {
    let limit = match (a.unsafe_limit, env_limit) {
        (Some(n), _) => n,
        (None, Some(raw)) => {
            raw.trim().parse().map_err(|_| CliError::Usage(format!("{LIMIT_ENV}={raw:?} is not a number")))?
        }
        (None, None) => DEFAULT_ENUMERATION_LIMIT,
    };
    let size = 2 * a.b + a.k;
    if size > limit {
        return Err(CliError::Usage(format!(
            "2b + k = {size} exceeds the enumeration limit {limit}; raise it with --unsafe-limit"
        )));
    }
    let filters = a.filters.iter().map(|f| Filter::parse(f)).collect::<Result<Vec<_>, _>>()?;
    for s in enumerate_structures(a.b, a.k) {
        let st = s.stats();
        if !filters.iter().all(|f| f.keeps(&st)) {
            continue;
        }
        match a.format {
            EnumerateFormat::Text if a.stats => writeln!(
                out,
                "{s}\ts={} l_e={} l_o={} stacks={} helices={} loops={}",
                st.helix_count,
                st.partial_stack_count,
                st.nontrivial_loop_count,
                join(&st.partial_stack_lengths),
                join(&st.helix_sizes),
                join(&st.loop_sizes)
            ),
            EnumerateFormat::Text => writeln!(out, "{s}"),
            EnumerateFormat::Json => {
                let value = serde_json::json!({ "structure": s.to_dot_bracket(), "stats": st });
                writeln!(out, "{value}")
            }
        }
        .unwrap();
    }
    Ok(())
}

fn table(a: &TableArgs, out: &mut String) -> Result<(), CliError> {
    let rows = counting::helix_table(a.id)?;
    match a.format {
        TableFormat::Csv => {
            writeln!(out, "s,b,k,count").unwrap();
            for r in rows {
                writeln!(out, "{},{},{},{}", r.s, r.b, r.k, r.count).unwrap();
            }
        }
        TableFormat::Json => {
            for r in rows {
                writeln!(out, r#"{{"s":{},"b":{},"k":{},"count":{}}}"#, r.s, r.b, r.k, r.count).unwrap();
            }
        }
    }
    Ok(())
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

fn bijection(a: &BijectionArgs, out: &mut String) -> Result<(), CliError> {
    let input = a.input.trim();
    // Each arm yields the output text and, for --round-trip, whether the
    // opposite map restores the input.
    let (text, restored) = match (a.which, a.direction) {
        (Which::Sw | Which::Chen, Direction::Forward) => {
            let s: SecondaryStructure = input.parse().map_err(usage)?;
            let t = match a.which {
                Which::Sw => sw_forward(&s),
                _ => chen_forward(&s).map_err(usage)?,
            };
            let back = match a.which {
                Which::Sw => sw_inverse(&t),
                _ => chen_inverse(&t),
            };
            (t.to_string(), back.as_ref() == Ok(&s))
        }
        (Which::Sw | Which::Chen, Direction::Inverse) => {
            let t: PlaneTree = input.parse().map_err(usage)?;
            let s = match a.which {
                Which::Sw => sw_inverse(&t),
                _ => chen_inverse(&t),
            }
            .map_err(usage)?;
            let back = match a.which {
                Which::Sw => Ok(sw_forward(&s)),
                _ => chen_forward(&s),
            };
            (s.to_string(), back.as_ref() == Ok(&t))
        }
        (Which::Forest, Direction::Forward) => {
            let t: LabelledTree = serde_json::from_str(input).map_err(usage)?;
            let f = forest_encode(&t).map_err(usage)?;
            (serde_json::to_string(&f).unwrap(), forest_decode(&f).as_ref() == Ok(&t))
        }
        (Which::Forest, Direction::Inverse) => {
            let f: SmallForest = serde_json::from_str(input).map_err(usage)?;
            let t = forest_decode(&f).map_err(usage)?;
            (serde_json::to_string(&t).unwrap(), forest_encode(&t).as_ref() == Ok(&f))
        }
    };
    writeln!(out, "{text}").unwrap();
    if a.round_trip && !restored {
        return Err(CliError::Failure("round trip did not restore the input".into()));
    }
    Ok(())
}

fn run_verify(a: &VerifyArgs, out: &mut String) -> Result<(), CliError> {
    let suites = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites.iter().map(|s| s.trim().parse()).collect::<Result<Vec<Suite>, _>>().map_err(CliError::Usage)?
    };
    let reports = verify::run(&suites, a.max_size).map_err(CliError::Usage)?;
    for r in &reports {
        writeln!(out, "{r}").unwrap();
    }
    let failed = reports.iter().filter(|r| !r.ok()).count();
    if failed > 0 {
        return Err(CliError::Failure(format!("{failed} suite(s) failed")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> Outcome {
        run(std::iter::once("rnacount").chain(args.split_whitespace()), None)
    }

    #[test]
    fn count_examples() {
        assert_eq!(call("count --formula helices --b 2 --k 3 --s 3 --sigma 1").stdout, "9\n");
        assert_eq!(call("count --formula narayana --b 3 --k 4").stdout, "175\n");
        let p = call("count --formula probability --b 3 --k 4 --s 2 --sigma 1 --helix-dist 2:2");
        assert_eq!((p.stdout.as_str(), p.code), ("1/3\n", 0));
        assert_eq!(call("count --formula expected-stacks --b 2 --k 3").stdout, "9/5\n");
    }

    #[test]
    fn count_usage_errors() {
        assert_eq!(call("count --formula max-stack --b 2 --k 3").code, 2);
        assert_eq!(call("count --formula nope --b 2 --k 3").code, 2);
        assert_eq!(call("count --formula joint --b 2 --k 1 --helix-dist 1:3 --loop-dist 1:3 --le 1").code, 2);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(call("enumerate --b 2 --k 3 --filter s=3").stdout.lines().count(), 9);
        assert_eq!(call("enumerate --b 0 --k 2").stdout, "..\n");
        assert_eq!(call("enumerate --b 1 --k 1").stdout, "(.)\n");
        let both = call("enumerate --b 2 --k 3 --filter s=3 --filter l_e=2");
        assert_eq!(both.stdout.lines().count(), 6);
        assert_eq!(call("enumerate --b 2 --k 3 --filter helices=1:1,2:1").stdout.lines().count(), 10);
        assert_eq!(call("enumerate --b 2 --k 3 --filter bogus=1").code, 2);
    }

    #[test]
    fn enumeration_guard() {
        assert_eq!(call("enumerate --b 10 --k 1").code, 2);
        let env = run(["rnacount", "enumerate", "--b", "2", "--k", "3"], Some("6"));
        assert_eq!(env.code, 2);
        assert_eq!(call("enumerate --b 1 --k 1 --unsafe-limit 3").code, 0);
    }

    #[test]
    fn table_output() {
        let t = call("table 1");
        let lines: Vec<&str> = t.stdout.lines().collect();
        assert_eq!(lines[0], "s,b,k,count");
        assert_eq!(lines.len(), 46);
        assert!(lines.contains(&"4,3,5,219"));
        assert!(call("table 2 --format json").stdout.contains(r#"{"s":2,"b":4,"k":5,"count":28}"#));
        assert_eq!(call("table 3").code, 2);
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(call("bijection --which chen --input (.)").stdout, "()()\n");
        assert_eq!(call("bijection --which sw --input (.)").stdout, "(())\n");
        assert_eq!(call("bijection --which chen --input (.) --round-trip").code, 0);
        assert_eq!(call("bijection --which chen --direction inverse --input ()()").stdout, "(.)\n");
        assert_eq!(call("bijection --which chen --input (..").code, 2);
    }

    #[test]
    fn forest_round_trip() {
        let tree = r#"{"label":"E1","starred":false,"children":[{"label":"O1","starred":false,"children":[{"label":"E2","starred":false}]}]}"#;
        let out = run(["rnacount", "bijection", "--which", "forest", "--input", tree, "--round-trip"], None);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let back = run(
            ["rnacount", "bijection", "--which", "forest", "--direction", "inverse", "--input", out.stdout.trim()],
            None,
        );
        let parse = |s: &str| serde_json::from_str::<serde_json::Value>(s).unwrap();
        assert_eq!(
            parse(back.stdout.trim()),
            parse(&tree.replace(r#""starred":false}"#, r#""starred":false,"children":[]}"#))
        );
    }

    #[test]
    fn verify_guard_and_suites() {
        assert_eq!(call("verify --max-size 17").code, 2);
        assert_eq!(call("verify --suites nope").code, 2);
        let ok = call("verify --suites tables");
        assert_eq!(ok.code, 0);
        assert!(ok.stdout.starts_with("PASS tables"));
    }

    #[test]
    fn help_exits_zero() {
        let h = call("--help");
        assert_eq!(h.code, 0);
        assert!(h.stdout.contains("enumerate"));
    }
}
