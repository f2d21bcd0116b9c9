use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vincular_eco::counting::{
    callan_3142, check_functional_equation, check_pde, compare_with_counts,
    continued_fraction_series, count_avoiders_upto, u_triangle, v_triangle,
};
use vincular_eco::gentree::{
    count_levels, export_tree, generate_level_parallel, verify_labelling, ExportFormat,
};
use vincular_eco::oracle::{
    brute_census_with_cap, brute_count_with_cap, census_csv, verify_eco_with_cap, Statistic,
    CENSUS_CAP, ECO_CAP, ENUMERATION_CAP,
};
use vincular_eco::DashedPattern;

const LABELLING_CAP: usize = 10;
const SERIES_CAP: usize = 14;

#[derive(Parser)]
#[command(
    name = "vincular-eco",
    version,
    about = "Generating tree for 1-32-4 avoiders"
)]
struct Cli {
    /// Worker threads for generation and brute force (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Lift the per-command size caps.
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Avoider counts for lengths 0..=n, one per line.
    Count {
        #[arg(long, default_value = "1-32-4")]
        pattern: DashedPattern,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
    },
    /// All 1-32-4 avoiders of length n in tree order.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GenerateFormat::Lines)]
        format: GenerateFormat,
    },
    /// A counting triangle as CSV.
    Triangle {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
    },
    /// The generating tree down to length n.
    Tree {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TreeFormat::Dot)]
        format: TreeFormat,
    },
    /// Run property checks; exits nonzero on the first failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Tree,
    Recurrence,
    Brute,
    Cfrac,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateFormat {
    Lines,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    U,
    V,
    Census,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Eco,
    Labelling,
    Series,
    Pde,
    All,
}

/// Output text plus the exit status it should end with.
struct Outcome {
    stdout: String,
    ok: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, ok: true }
    }
}

struct Caps {
    force: bool,
}

impl Caps {
    /// The effective cap, warning once per lifted cap that is exceeded.
    fn get(&self, what: &str, n: usize, cap: usize) -> Result<usize> {
        if n <= cap {
            return Ok(cap);
        }
        if self.force {
            eprintln!("warning: {what} with n = {n} exceeds the default cap {cap}; continuing because of --force");
            Ok(usize::MAX)
        } else {
            bail!("{what} is capped at n <= {cap} (got {n}); pass --force to override")
        }
    }
}

fn lines<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for item in items {
        out.push_str(&item.to_string());
        out.push('\n');
    }
    out
}

fn cmd_count(pattern: &DashedPattern, n: usize, method: Method, caps: &Caps) -> Result<Outcome> {
    let is_main = *pattern == DashedPattern::one_32_four();
    let is_3142 = pattern.to_string() == "31-4-2";
    let unsupported = |m: &str| {
        anyhow::anyhow!("method {m} is not available for pattern {pattern}; use --method brute")
    };
    let out = match method {
        Method::Brute => {
            let cap = caps.get("brute-force counting", n, ENUMERATION_CAP)?;
            let counts = (0..=n)
                .map(|m| brute_count_with_cap(pattern, m, cap))
                .collect::<vincular_eco::Result<Vec<_>>>()?;
            lines(counts)
        }
        Method::Recurrence if is_main => lines(count_avoiders_upto(n)),
        Method::Recurrence if is_3142 => lines(callan_3142(n)),
        Method::Recurrence => return Err(unsupported("recurrence")),
        Method::Tree if is_main => {
            let mut counts = vec![1u64];
            counts.extend(count_levels(n));
            lines(counts)
        }
        Method::Tree => return Err(unsupported("tree")),
        Method::Cfrac if is_main => {
            let series = continued_fraction_series(n, n + 2)?;
            let cmp = compare_with_counts(&series, &count_avoiders_upto(n));
            if !cmp.agrees {
                eprintln!("warning: continued fraction disagrees with the avoider counts: {cmp}");
            }
            lines(series.coeffs())
        }
        Method::Cfrac => return Err(unsupported("cfrac")),
    };
    Ok(Outcome::ok(out))
}

fn cmd_generate(n: usize, format: GenerateFormat) -> Result<Outcome> {
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let level = generate_level_parallel(n);
    let out = match format {
        GenerateFormat::Lines => lines(&level),
        GenerateFormat::Json => {
            let mut s = serde_json::to_string(&level)?;
            s.push('\n');
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_triangle(which: Which, n: usize, caps: &Caps) -> Result<Outcome> {
    let out = match which {
        Which::U => u_triangle(n).to_csv(),
        Which::V => v_triangle(n).to_csv(),
        Which::Census => {
            let cap = caps.get("census", n, CENSUS_CAP)?;
            let pattern = DashedPattern::one_32_four();
            let mut rows = Vec::new();
            for m in 1..=n {
                rows.extend(brute_census_with_cap(&pattern, m, Statistic::Label, cap)?);
            }
            census_csv(&rows)
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_tree(n: usize, format: TreeFormat, caps: &Caps) -> Result<Outcome> {
    let format = match format {
        TreeFormat::Dot => ExportFormat::Dot,
        TreeFormat::Json => ExportFormat::Json,
    };
    if n == 0 {
        bail!("--n must be at least 1");
    }
    let cap = caps.get("tree export", n, format.default_cap())?;
    Ok(Outcome::ok(export_tree(n, format, Some(cap))?))
}

/// One suite's verdict: a summary line and the JSON detail.
struct SuiteResult {
    name: &'static str,
    ok: bool,
    summary: String,
    detail: Value,
}

fn suite_eco(n: usize, caps: &Caps) -> Result<SuiteResult> {
    let cap = caps.get("eco suite", n, ECO_CAP)?;
    let r = verify_eco_with_cap(n, cap)?;
    let summary = match &r.first_violation {
        None => format!(
            "{} parents of length <= {n} checked, {} children each reduce to their parent and cover every avoider of length <= {} once",
            r.parents_checked,
            r.children_checked,
            n + 1
        ),
        Some(v) => format!("counterexample: {}", serde_json::to_string(v)?),
    };
    Ok(SuiteResult {
        name: "eco",
        ok: r.ok,
        summary,
        detail: serde_json::to_value(&r)?,
    })
}

fn suite_labelling(n: usize, caps: &Caps) -> Result<SuiteResult> {
    caps.get("labelling suite", n, LABELLING_CAP)?;
    let r = verify_labelling(n);
    let summary = match &r.first_violation {
        None => format!(
            "{} nodes of length <= {n} carry the Omega productions",
            r.nodes_checked
        ),
        Some(v) => format!(
            "counterexample: {} with label {} has child labels {:?}, expected {:?}",
            v.node, v.label, v.actual, v.expected
        ),
    };
    Ok(SuiteResult {
        name: "labelling",
        ok: r.ok,
        summary,
        detail: serde_json::to_value(&r)?,
    })
}

fn suite_series(n: usize, caps: &Caps) -> Result<SuiteResult> {
    caps.get("series suite", n, SERIES_CAP)?;
    let fe = check_functional_equation(n);
    let through = n.saturating_sub(1);
    let mut summary = if fe.ok {
        format!("functional equation residual vanishes through z^{through}")
    } else {
        format!(
            "counterexample: functional equation residual starts at z^{}: {}",
            fe.residual.lowest_z_order().unwrap_or(0),
            fe.residual
        )
    };
    // The continued fraction is reported, never gated on.
    let cf = continued_fraction_series(n, n + 2)?;
    let cmp = compare_with_counts(&cf, &count_avoiders_upto(n));
    write!(summary, "; continued fraction (informational): {cmp}")?;
    Ok(SuiteResult {
        name: "series",
        ok: fe.ok,
        summary,
        detail: json!({
            "functional_equation": {
                "ok": fe.ok,
                "vanishes_through": through,
                "residual": fe.residual.to_string(),
            },
            "continued_fraction": serde_json::to_value(&cmp)?,
        }),
    })
}

fn suite_pde(n: usize, caps: &Caps) -> Result<SuiteResult> {
    caps.get("pde suite", n, SERIES_CAP)?;
    let r = check_pde(n);
    let through = n.saturating_sub(1);
    let summary = match r.convention {
        Some(c) => format!(
            "residual vanishes through z^{through} under {}",
            c.describe()
        ),
        None => format!(
            "counterexample: no convention works; first residual {}",
            r.residual
        ),
    };
    let attempts: Vec<Value> = r
        .attempts
        .iter()
        .map(|a| {
            json!({
                "convention": a.convention.describe(),
                "ok": a.ok,
                "residual": a.residual.to_string(),
            })
        })
        .collect();
    Ok(SuiteResult {
        name: "pde",
        ok: r.ok,
        summary,
        detail: json!({
            "convention": r.convention.map(|c| c.describe()),
            "vanishes_through": through,
            "attempts": attempts,
        }),
    })
}

fn cmd_verify(suite: Suite, n: usize, as_json: bool, caps: &Caps) -> Result<Outcome> {
    let mut results = Vec::new();
    if matches!(suite, Suite::Eco | Suite::All) {
        results.push(suite_eco(n, caps)?);
    }
    if matches!(suite, Suite::Labelling | Suite::All) {
        results.push(suite_labelling(n, caps)?);
    }
    if matches!(suite, Suite::Series | Suite::All) {
        results.push(suite_series(n, caps)?);
    }
    if matches!(suite, Suite::Pde | Suite::All) {
        results.push(suite_pde(n, caps)?);
    }
    let ok = results.iter().all(|r| r.ok);
    let stdout = if as_json {
        let suites: Vec<Value> = results
            .iter()
            .map(|r| json!({ "suite": r.name, "ok": r.ok, "summary": r.summary, "detail": r.detail }))
            .collect();
        let mut s = serde_json::to_string_pretty(&json!({ "n": n, "ok": ok, "suites": suites }))?;
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for r in &results {
            writeln!(
                s,
                "{}: {} ({})",
                r.name,
                if r.ok { "PASS" } else { "FAIL" },
                r.summary
            )?;
        }
        writeln!(
            s,
            "{}",
            if ok {
                "all checks passed"
            } else {
                "some checks failed"
            }
        )?;
        s
    };
    Ok(Outcome { stdout, ok })
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let caps = Caps { force: cli.force };
    match cli.command {
        Command::Count { pattern, n, method } => cmd_count(&pattern, n, method, &caps),
        Command::Generate { n, format } => cmd_generate(n, format),
        Command::Triangle { which, n } => cmd_triangle(which, n, &caps),
        Command::Tree { n, format } => cmd_tree(n, format, &caps),
        Command::Verify { suite, n, json } => cmd_verify(suite, n, json, &caps),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::from(2);
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
