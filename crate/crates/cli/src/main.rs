//! `pavoid`: command-line workbench for forbidden-pattern problems.
//!
//! Every command prints a JSON run report (or CSV with `--format csv`) on
//! stdout and diagnostics on stderr. Exit codes: 0 success or "yes",
//! 1 "no" / not found / a failed check, 2 usage or input error,
//! 3 size limit or exhausted budget, 4 internal error.

mod input;
mod output;

use std::io;
use std::process::ExitCode;
use std::time::Instant;

use clap::parser::ValueSource;
use clap::{ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use pavoid_core::bounds::{self, BoundValue};
use pavoid_core::constructions::{self, NamedFamily};
use pavoid_core::counting;
use pavoid_core::extremal::{self, Budget, DensityStatus, ExtremalResult, Status};
use pavoid_core::greedy;
use pavoid_core::highdim::{self, AntichainMode, AntichainProbability};
use pavoid_core::repetition;
use pavoid_core::rng::SeededRng;
use pavoid_core::verify::{self, Scale};
use pavoid_core::{contains, is_interval_minor, BinaryMatrix, Embedding, Error, Symmetry};

use output::{Format, Outcome, RunReport, Table};

#[derive(Parser, Debug)]
#[command(name = "pavoid", version, about = "Forbidden-pattern workbench for binary and permutation matrices")]
struct Cli {
    /// Cap on worker threads (results do not depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Seed for randomized commands
    #[arg(long, global = true, env = "PAVOID_SEED")]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Test whether a host matrix contains a pattern
    Contain(ContainArgs),
    /// Test whether a pattern is an interval minor of a host
    Minor(PairArgs),
    /// Build a named matrix or combine two matrices
    Construct(ConstructArgs),
    /// Distance-vector statistics and censuses
    #[command(subcommand)]
    Repetition(RepetitionCmd),
    /// Run the greedy tight-occurrence search
    Greedy(GreedyArgs),
    /// Exact extremal functions
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Count permutations avoiding a pattern
    Count(CountArgs),
    /// Evaluate bound formulas
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// d-dimensional permutation matrices
    #[command(subcommand)]
    Highdim(HighdimCmd),
    /// Check implemented properties against brute-force oracles
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Host matrix: a file, or inline text with `;` between lines
    #[arg(long)]
    host: String,
    /// Pattern matrix or permutation
    #[arg(long)]
    pattern: String,
}

#[derive(Args, Debug)]
struct ContainArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Apply a symmetry (transpose, rotate90, flip_rows, flip_cols) to both first
    #[arg(long)]
    symmetry: Option<String>,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    /// identity, reversal, cross, fox_grid, x_matrix, all_ones, random,
    /// layered, grid_product, direct_sum, skew_sum, minkowski_sum
    kind: String,
    /// Size parameters
    sizes: Vec<usize>,
    /// First operand for the binary operations
    #[arg(long)]
    left: Option<String>,
    /// Second operand for the binary operations
    #[arg(long)]
    right: Option<String>,
    /// Print only the matrix in the text file format
    #[arg(long)]
    raw: bool,
}

#[derive(Subcommand, Debug)]
enum RepetitionCmd {
    /// Distance-vector histogram of one permutation
    Histogram {
        #[arg(long)]
        pattern: String,
    },
    /// Exhaustive count of k-permutations with an r-repetition, for every r < k
    Census {
        #[arg(long)]
        k: usize,
    },
    /// Per-vector census at fixed k and r
    PerVector {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
    },
    /// Fraction of non-scattered k-permutations (exact for k <= 8, else sampled)
    Scattered {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Greedy-analysis parameters w, v and zero budgets
    Params {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        r: u64,
    },
}

#[derive(Args, Debug)]
struct GreedyArgs {
    #[command(flatten)]
    pair: PairArgs,
    /// Emit every step of every instance
    #[arg(long)]
    trace: bool,
    /// Drop the k worst rows and columns of a 4k x 4k host first
    #[arg(long)]
    robust: bool,
}

#[derive(Args, Debug)]
struct BudgetArg {
    /// Node limit for the search
    #[arg(long, default_value_t = 50_000_000)]
    budget: u64,
}

#[derive(Subcommand, Debug)]
enum ExtremalCmd {
    /// ex(n, P)
    Ex {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// exm(n, B), the interval-minor version
    Exm {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// f_P(z, y), or g_P(z, y) with --transposed
    Density {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        y: usize,
        #[arg(long)]
        transposed: bool,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// max ex(n, P) / n over n <= nmax
    Fh {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
    /// q = (ex(u, P) + 1) / u^2
    FrameworkQ {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        u: usize,
        #[command(flatten)]
        budget: BudgetArg,
    },
}

#[derive(Args, Debug)]
struct CountArgs {
    #[arg(long)]
    pattern: String,
    /// Count for this n only
    #[arg(long, conflicts_with = "nmax")]
    n: Option<usize>,
    /// Count every n up to nmax
    #[arg(long)]
    nmax: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum BoundsCmd {
    /// Evaluate a catalog formula
    Eval {
        #[arg(long)]
        name: String,
        /// name=value, value an integer or fraction
        #[arg(long = "param", value_name = "NAME=VALUE")]
        params: Vec<String>,
    },
    /// List catalog formulas
    List,
    /// Density schedule q_i = max(1/u, q^i) with bounds h^i
    Cascade {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        q: String,
        #[arg(long)]
        h: String,
        #[arg(long, default_value_t = 10)]
        imax: u64,
    },
    /// Unfolded recurrence for f_{r,k}(t, s)
    Frk {
        #[arg(long)]
        r: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        s: u64,
    },
    /// ex(s-1) ex(n) + ex(t) n (f + g)
    MtStep {
        #[arg(long)]
        ex_sm1: u64,
        #[arg(long)]
        ex_n: u64,
        #[arg(long)]
        ex_t: u64,
        #[arg(long)]
        f: u64,
        #[arg(long)]
        g: u64,
        #[arg(long)]
        n: u64,
    },
}

#[derive(Subcommand, Debug)]
enum HighdimCmd {
    /// Count d-dimensional n-permutations avoiding P (all matrices with --all)
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        all: bool,
    },
    /// Test whether a d-dimensional permutation contains another
    Contains {
        #[arg(long)]
        host: String,
        #[arg(long)]
        pattern: String,
    },
    /// Probability that d random linear orders intersect to an antichain
    Antichain {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Sample this many times instead of enumerating
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Monotone subpattern by repeated longest monotone subsequences
    Monotone {
        #[arg(long)]
        pattern: String,
    },
    /// Merge l random I^d_2-avoiding m-permutations along random interleavings
    Merge {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// Use these parts instead of random ones
        #[arg(long = "part")]
        parts: Vec<String>,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Full instance counts instead of the quick defaults
    #[arg(long)]
    full: bool,
    /// Run only these checks
    #[arg(long = "check")]
    checks: Vec<String>,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeLimit(_) | Error::Unavailable(_) => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn big(x: &BigUint) -> Value {
    Value::String(x.to_string())
}

fn rational(x: &BigRational) -> Value {
    Value::String(x.to_string())
}

fn embedding_json(e: &Embedding) -> Value {
    json!({ "rows": e.row_map, "cols": e.col_map })
}

fn matrix_json(m: &BinaryMatrix) -> Value {
    let rows: Vec<String> = m.to_string().lines().skip(1).map(str::to_string).collect();
    json!({ "rows": m.rows(), "cols": m.cols(), "entries": rows })
}

fn status_exit(status: Status) -> i32 {
    if status == Status::Exact {
        0
    } else {
        3
    }
}

fn extremal_json(r: &ExtremalResult) -> Value {
    let mut v = json!({
        "n": r.n,
        "value": r.value,
        "status": r.status.name(),
        "nodes": r.nodes_explored,
    });
    if let Some(w) = &r.witness {
        v["witness"] = matrix_json(w);
    }
    v
}

fn bound_json(b: &BoundValue) -> Value {
    let params: Map<String, Value> = b.params.iter().map(|(k, v)| (k.clone(), rational(v))).collect();
    json!({
        "name": b.name,
        "params": params,
        "value": b.value.as_ref().map(rational),
        "log2": b.log2,
        "rounding": b.rounding.name(),
    })
}

fn contain(args: &ContainArgs) -> pavoid_core::Result<Outcome> {
    let mut host = input::matrix(&args.pair.host)?;
    let mut pattern = input::matrix(&args.pair.pattern)?;
    if let Some(name) = &args.symmetry {
        let op = Symmetry::from_name(name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown symmetry `{name}`")))?;
        host = host.symmetry(op);
        pattern = pattern.symmetry(op);
    }
    let found = contains(&host, &pattern);
    let exit = if found.is_some() { 0 } else { 1 };
    Ok(Outcome::new(json!({
        "contains": found.is_some(),
        "embedding": found.as_ref().map(embedding_json),
    }))
    .with_exit(exit))
}

fn minor(args: &PairArgs) -> pavoid_core::Result<Outcome> {
    let host = input::matrix(&args.host)?;
    let pattern = input::matrix(&args.pattern)?;
    let yes = is_interval_minor(&pattern, &host)?;
    Ok(Outcome::new(json!({ "interval_minor": yes })).with_exit(if yes { 0 } else { 1 }))
}

fn construct(args: &ConstructArgs, seed: u64) -> pavoid_core::Result<(Outcome, Option<String>)> {
    let operand = |arg: &Option<String>, side: &str| {
        arg.as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("{} needs --{side}", args.kind)))
            .and_then(input::load)
    };
    let (matrix, perm) = match args.kind.as_str() {
        "random" => {
            let [k] = args.sizes[..] else {
                return Err(Error::InvalidArgument("random takes one size".into()));
            };
            let p = constructions::random_permutation(k, seed)?;
            (p.to_matrix(), Some(p))
        }
        "layered" => (constructions::layered(&args.sizes)?, None),
        "grid_product" => {
            let p = constructions::grid_product(
                &operand(&args.left, "left")?.into_permutation()?,
                &operand(&args.right, "right")?.into_permutation()?,
            );
            (p.to_matrix(), Some(p))
        }
        op @ ("direct_sum" | "skew_sum" | "minkowski_sum") => {
            let a = operand(&args.left, "left")?.into_matrix()?;
            let b = operand(&args.right, "right")?.into_matrix()?;
            let m = match op {
                "direct_sum" => constructions::direct_sum(&a, &b)?,
                "skew_sum" => constructions::skew_sum(&a, &b)?,
                _ => constructions::minkowski_sum(&a, &b)?,
            };
            (m, None)
        }
        kind => {
            let fam = NamedFamily::parse(kind, &args.sizes)?;
            let m = constructions::make(fam)?;
            (m, fam.permutation().ok())
        }
    };
    // permutations print in one-line form, everything else as a matrix
    let raw = args.raw.then(|| match &perm {
        Some(p) => format!("{p}\n"),
        None => matrix.to_string(),
    });
    let results = json!({
        "kind": args.kind,
        "permutation": perm.as_ref().map(|p| p.to_string()),
        "matrix": matrix_json(&matrix),
    });
    Ok((Outcome::new(results), raw))
}

fn repetition_cmd(cmd: &RepetitionCmd, seed: u64) -> pavoid_core::Result<Outcome> {
    match cmd {
        RepetitionCmd::Histogram { pattern } => {
            let p = input::permutation(pattern)?;
            let h = repetition::distance_histogram(&p);
            let mut table = Table::new(&["d", "d_prime", "count"]);
            let vectors: Vec<Value> = h
                .counts
                .iter()
                .map(|(&(a, b), &c)| {
                    table.push(vec![a.to_string(), b.to_string(), c.to_string()]);
                    json!([a, b, c])
                })
                .collect();
            let mut results = json!({
                "pattern": p.to_string(),
                "vectors": vectors,
                "max_repetition": h.max_count(),
            });
            if p.size() >= 3 {
                results["scattered_threshold"] = json!(repetition::scattered_threshold(p.size())?);
                results["scattered"] = json!(repetition::is_scattered(&p)?);
            }
            Ok(Outcome::new(results).with_table(table))
        }
        RepetitionCmd::Census { k } => {
            let rows = repetition::repetition_census(*k)?;
            let mut table = Table::new(&["k", "r", "count", "bound"]);
            let json_rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    table.push(vec![r.k.to_string(), r.r.to_string(), r.count.to_string(), r.bound.to_string()]);
                    json!({ "r": r.r, "count": r.count.to_string(), "bound": r.bound.to_string() })
                })
                .collect();
            Ok(Outcome::new(json!({ "k": k, "rows": json_rows })).with_table(table))
        }
        RepetitionCmd::PerVector { k, r } => {
            let c = repetition::per_vector_census(*k, *r)?;
            let mut table = Table::new(&["d", "d_prime", "permutations"]);
            for (&(a, b), n) in &c.counts {
                table.push(vec![a.to_string(), b.to_string(), n.to_string()]);
            }
            Ok(Outcome::new(json!({
                "k": k,
                "r": r,
                "max": c.max.to_string(),
                "argmax": c.argmax.map(|(a, b)| json!([a, b])),
                "bound": c.bound.to_string(),
            }))
            .with_table(table))
        }
        RepetitionCmd::Scattered { k, samples } => {
            if *k <= repetition::CENSUS_LIMIT {
                let (failing, total) = repetition::scattered_census(*k)?;
                Ok(Outcome::new(json!({
                    "k": k,
                    "mode": "exact",
                    "threshold": repetition::scattered_threshold(*k)?,
                    "not_scattered": failing.to_string(),
                    "total": total.to_string(),
                })))
            } else {
                let e = repetition::scattered_fraction_mc(*k, *samples, seed)?;
                Ok(Outcome::new(json!({
                    "k": k,
                    "mode": "monte_carlo",
                    "threshold": repetition::scattered_threshold(*k)?,
                    "samples": e.samples,
                    "not_scattered": e.hits,
                    "fraction": e.fraction,
                    "std_error": e.std_error,
                })))
            }
        }
        RepetitionCmd::Params { k, r } => {
            let p = greedy::repfree_params(*k, *r)?;
            Ok(Outcome::new(json!({
                "k": p.k,
                "r": p.r,
                "w": p.w,
                "v": p.v,
                "line_zero_budget": p.line_zero_budget,
                "total_zero_budget": p.total_zero_budget,
            })))
        }
    }
}

fn greedy_cmd(args: &GreedyArgs) -> pavoid_core::Result<Outcome> {
    let host = input::matrix(&args.pair.host)?;
    let p = input::permutation(&args.pair.pattern)?;
    let found = if args.robust { greedy::robust_find(&host, &p)? } else { greedy::find_tight_occurrence(&host, &p)? };
    let mut results = json!({
        "found": found.is_some(),
        "embedding": found.as_ref().map(embedding_json),
    });
    let mut outcome_table = None;
    if args.trace {
        let traces = greedy::run_all_instances(&host, &p)?;
        let mut table = Table::new(&["base_row", "step", "column", "row", "outcome"]);
        let mut instances = Vec::with_capacity(traces.len());
        for t in &traces {
            for (i, s) in t.steps.iter().enumerate() {
                table.push(vec![
                    t.base_row.to_string(),
                    (i + 1).to_string(),
                    s.column.to_string(),
                    s.row.to_string(),
                    s.outcome.name().to_string(),
                ]);
            }
            instances.push(json!({
                "base_row": t.base_row,
                "found": t.found(),
                "moves": t.moves(),
                "steps": t.steps.len(),
            }));
        }
        results["instances"] = Value::Array(instances);
        outcome_table = Some(table);
    }
    let mut out = Outcome::new(results).with_exit(if found.is_some() { 0 } else { 1 });
    out.table = outcome_table;
    Ok(out)
}

fn extremal_cmd(cmd: &ExtremalCmd) -> pavoid_core::Result<Outcome> {
    match cmd {
        ExtremalCmd::Ex { n, pattern, budget } => {
            let r = extremal::ex_exact(*n, &input::matrix(pattern)?, Budget(budget.budget))?;
            Ok(Outcome::new(extremal_json(&r)).with_exit(status_exit(r.status)))
        }
        ExtremalCmd::Exm { n, pattern, budget } => {
            let r = extremal::exm_exact(*n, &input::matrix(pattern)?, Budget(budget.budget))?;
            Ok(Outcome::new(extremal_json(&r)).with_exit(status_exit(r.status)))
        }
        ExtremalCmd::Density { pattern, z, y, transposed, budget } => {
            let p = input::permutation(pattern)?;
            let r = extremal::row_density_extremal(&p, *z, *y, *transposed, Budget(budget.budget))?;
            let status = match r.status {
                DensityStatus::Exact => "exact",
                DensityStatus::LowerBound => "lower_bound",
                DensityStatus::Unbounded => "unbounded",
            };
            let mut v = json!({
                "function": if *transposed { "g" } else { "f" },
                "z": z,
                "y": y,
                "value": r.value,
                "status": status,
                "nodes": r.nodes_explored,
            });
            if let Some(w) = &r.witness {
                v["witness"] = matrix_json(w);
            }
            let exit = if r.status == DensityStatus::LowerBound { 3 } else { 0 };
            Ok(Outcome::new(v).with_exit(exit))
        }
        ExtremalCmd::Fh { pattern, nmax, budget } => {
            let p = input::permutation(pattern)?;
            let f = extremal::fh_lower_estimate(&p, *nmax, Budget(budget.budget))?;
            let mut table = Table::new(&["n", "value", "status", "nodes"]);
            for r in &f.results {
                table.push(vec![r.n.to_string(), r.value.to_string(), r.status.name().into(), r.nodes_explored.to_string()]);
            }
            let values: Vec<Value> =
                f.results.iter().map(|r| json!({ "n": r.n, "value": r.value, "status": r.status.name() })).collect();
            Ok(Outcome::new(json!({
                "lower_bound": f.ratio.to_string(),
                "argmax": f.argmax,
                "values": values,
            }))
            .with_table(table))
        }
        ExtremalCmd::FrameworkQ { pattern, u, budget } => {
            let p = input::permutation(pattern)?;
            let f = extremal::framework_q(&p, *u, Budget(budget.budget))?;
            Ok(Outcome::new(json!({
                "u": f.u,
                "ex": f.ex_value,
                "q": f.q.to_string(),
                "vacuous": f.vacuous,
            })))
        }
    }
}

fn count_cmd(args: &CountArgs) -> pavoid_core::Result<Outcome> {
    let p = input::permutation(&args.pattern)?;
    let ns: Vec<usize> = match (args.n, args.nmax) {
        (Some(n), _) => vec![n],
        (None, Some(nmax)) => (1..=nmax).collect(),
        (None, None) => return Err(Error::InvalidArgument("count needs --n or --nmax".into())),
    };
    let mut table = Table::new(&["n", "count", "root"]);
    let mut rows = Vec::new();
    let mut counts = Vec::new();
    for &n in &ns {
        let c = counting::count_avoiders(&p, n)?;
        let root = counting::floor_root(&c, n as u32, counting::ROOT_DIGITS);
        table.push(vec![n.to_string(), c.to_string(), decimal(&root)]);
        rows.push(json!({ "n": n, "count": big(&c), "root": decimal(&root) }));
        counts.push(c);
    }
    let mut results = json!({ "pattern": p.to_string(), "rows": rows });
    if args.nmax.is_some() {
        let lower = table.rows.iter().map(|r| r[2].clone()).max_by(|a, b| a.parse::<f64>().unwrap().total_cmp(&b.parse().unwrap()));
        results["certified_lower"] = json!(lower);
        results["supermultiplicative"] = json!(counting::supermultiplicativity_violations(&counts).is_empty());
    }
    Ok(Outcome::new(results).with_table(table))
}

/// `x` with `ROOT_DIGITS` decimals; `x` must have a power-of-ten denominator dividing `10^ROOT_DIGITS`.
fn decimal(x: &BigRational) -> String {
    let scale = BigUint::from(10u32).pow(counting::ROOT_DIGITS);
    let scaled = (x * BigRational::from_integer(scale.clone().into())).to_integer();
    let digits = counting::ROOT_DIGITS as usize;
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    format!("{}.{}", &s[..s.len() - digits], &s[s.len() - digits..])
}

fn bounds_cmd(cmd: &BoundsCmd) -> pavoid_core::Result<Outcome> {
    match cmd {
        BoundsCmd::Eval { name, params } => {
            let params = params.iter().map(|p| bounds::parse_param(p)).collect::<pavoid_core::Result<_>>()?;
            let b = bounds::eval(name, &params)?;
            Ok(Outcome::new(bound_json(&b)))
        }
        BoundsCmd::List => {
            let mut table = Table::new(&["name"]);
            for f in bounds::FORMULAS {
                table.push(vec![f.to_string()]);
            }
            Ok(Outcome::new(json!({ "formulas": bounds::FORMULAS })).with_table(table))
        }
        BoundsCmd::Cascade { u, q, h, imax } => {
            let c = bounds::density_cascade(*u, &bounds::parse_rational(q)?, &bounds::parse_rational(h)?, *imax)?;
            let mut table = Table::new(&["i", "q_i", "bound"]);
            let steps: Vec<Value> = c
                .steps
                .iter()
                .map(|s| {
                    table.push(vec![s.i.to_string(), s.q_i.to_string(), s.bound.to_string()]);
                    json!({ "i": s.i, "q_i": rational(&s.q_i), "bound": rational(&s.bound) })
                })
                .collect();
            Ok(Outcome::new(json!({ "i0": c.i0, "steps": steps })).with_table(table))
        }
        BoundsCmd::Frk { r, k, t, s } => {
            let v = bounds::frk_recurrence(*r, *k, *t, *s)?;
            Ok(Outcome::new(json!({
                "recurrence": big(&v.recurrence),
                "closed": big(&v.closed),
                "value": big(&v.value),
            })))
        }
        BoundsCmd::MtStep { ex_sm1, ex_n, ex_t, f, g, n } => {
            let v = bounds::mt_recursion_step(*ex_sm1, *ex_n, *ex_t, *f, *g, *n);
            Ok(Outcome::new(json!({ "bound": big(&v) })))
        }
    }
}

fn highdim_cmd(cmd: &HighdimCmd, seed: u64) -> pavoid_core::Result<Outcome> {
    match cmd {
        HighdimCmd::Count { pattern, n, all } => {
            let p = input::ddim(pattern)?;
            let c = if *all { highdim::count_all_avoiders_dd(&p, *n)? } else { highdim::count_avoiders_dd(&p, *n)? };
            Ok(Outcome::new(json!({
                "d": p.d(),
                "n": n,
                "what": if *all { "all_matrices" } else { "permutations" },
                "count": big(&c),
            })))
        }
        HighdimCmd::Contains { host, pattern } => {
            let h = input::ddim(host)?;
            let p = input::ddim(pattern)?;
            let found = highdim::find_dd(&h.to_matrix(), &p)?;
            let exit = if found.is_some() { 0 } else { 1 };
            Ok(Outcome::new(json!({ "contains": found.is_some(), "occurrence": found })).with_exit(exit))
        }
        HighdimCmd::Antichain { d, n, samples } => {
            let mode = match samples {
                Some(s) => AntichainMode::MonteCarlo { samples: *s, seed },
                None => AntichainMode::Exact,
            };
            match highdim::antichain_probability(*d, *n, mode)? {
                AntichainProbability::Exact(q) => Ok(Outcome::new(json!({
                    "d": d,
                    "n": n,
                    "mode": "exact",
                    "probability": rational(&q),
                }))),
                AntichainProbability::MonteCarlo(e) => Ok(Outcome::new(json!({
                    "d": d,
                    "n": n,
                    "mode": "monte_carlo",
                    "samples": e.samples,
                    "hits": e.hits,
                    "estimate": e.fraction,
                    "std_error": e.std_error,
                }))),
            }
        }
        HighdimCmd::Monotone { pattern } => {
            let p = input::ddim(pattern)?;
            let (sub, positions) = highdim::monotone_subpattern(&p);
            Ok(Outcome::new(json!({
                "size": sub.size(),
                "guaranteed": highdim::monotone_guarantee(p.size(), p.d()),
                "positions": positions,
                "points": sub.points(),
            })))
        }
        HighdimCmd::Merge { d, l, m, parts } => {
            let mut rng = SeededRng::new(seed);
            let parts = if parts.is_empty() {
                (0..*l)
                    .map(|_| highdim::random_antichain_part(*d, *m, &mut rng, 100_000))
                    .collect::<pavoid_core::Result<Vec<_>>>()?
            } else {
                parts.iter().map(|s| input::ddim(s)).collect::<pavoid_core::Result<Vec<_>>>()?
            };
            let (l, m, d) = (parts.len(), parts[0].size(), parts[0].d());
            let inter: Vec<Vec<usize>> = (0..d).map(|_| highdim::random_interleaving(l, m, &mut rng)).collect();
            let merged = highdim::merge_avoiders(&parts, &inter)?;
            Ok(Outcome::new(json!({
                "d": d,
                "l": l,
                "m": m,
                "interleavings": inter,
                "points": merged.points(),
                "avoids": format!("I^{d}_{}", l + 1),
            })))
        }
    }
}

fn verify_cmd(args: &VerifyArgs, seed: u64) -> pavoid_core::Result<Outcome> {
    let scale = if args.full { Scale::Full } else { Scale::Quick };
    let checks = verify::run(&args.checks, scale, seed)?;
    let mut table = Table::new(&["check", "passed", "detail"]);
    let mut all = true;
    let rows: Vec<Value> = checks
        .iter()
        .map(|c| {
            eprintln!("{} {} ({:.2?}): {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.elapsed, c.detail);
            all &= c.passed;
            table.push(vec![c.name.to_string(), c.passed.to_string(), c.detail.clone()]);
            json!({ "check": c.name, "passed": c.passed, "detail": c.detail })
        })
        .collect();
    Ok(Outcome::new(json!({ "passed": all, "checks": rows })).with_table(table).with_exit(if all { 0 } else { 1 }))
}

/// Subcommand path (`extremal ex`) and every explicitly given argument.
fn invocation(matches: &ArgMatches) -> (String, Map<String, Value>) {
    let mut path = Vec::new();
    let mut params = Map::new();
    let mut m = matches;
    let mut cmd = Cli::command();
    loop {
        for id in m.ids() {
            let id = id.as_str();
            // ids also include argument groups, which carry no value of their own
            let is_arg = cmd.get_arguments().any(|a| a.get_id() == id);
            if !is_arg || m.value_source(id) == Some(ValueSource::DefaultValue) {
                continue;
            }
            let Ok(Some(vals)) = m.try_get_raw(id) else { continue };
            let vals: Vec<Value> = vals.map(|v| Value::String(v.to_string_lossy().into_owned())).collect();
            let v = match <[Value; 1]>::try_from(vals) {
                Ok([one]) => one,
                Err(many) => Value::Array(many),
            };
            params.insert(id.to_string(), v);
        }
        match m.subcommand() {
            Some((name, sub)) => {
                path.push(name.to_string());
                cmd = cmd.find_subcommand(name).expect("parsed subcommand exists").clone();
                m = sub;
            }
            None => break,
        }
    }
    (path.join(" "), params)
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let seed = cli.seed.unwrap_or(0);
    let start = Instant::now();
    let mut raw = None;
    let result = match &cli.command {
        Command::Contain(a) => contain(a),
        Command::Minor(a) => minor(a),
        Command::Construct(a) => construct(a, seed).map(|(o, r)| {
            raw = r;
            o
        }),
        Command::Repetition(c) => repetition_cmd(c, seed),
        Command::Greedy(a) => greedy_cmd(a),
        Command::Extremal(c) => extremal_cmd(c),
        Command::Count(a) => count_cmd(a),
        Command::Bounds(c) => bounds_cmd(c),
        Command::Highdim(c) => highdim_cmd(c, seed),
        Command::Verify(a) => verify_cmd(a, seed),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    if let Some(text) = raw {
        print!("{text}");
        return ExitCode::from(outcome.exit as u8);
    }
    let (name, params) = invocation(&matches);
    let report = RunReport {
        command: &name,
        params,
        results: &outcome.results,
        elapsed: start.elapsed(),
        seed: cli.seed,
    };
    let stdout = io::stdout();
    if let Err(e) = output::write(&mut stdout.lock(), cli.format, &report, outcome.table.as_ref()) {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return ExitCode::from(outcome.exit as u8);
        }
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(4);
    }
    ExitCode::from(outcome.exit as u8)
}
