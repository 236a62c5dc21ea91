mod input;

use std::io::Write;
use std::process::ExitCode;

use ci_kernel::catalog::{self, CatalogEntry, VerificationReport, Verdict};
use ci_kernel::ci::{CiModel, CiStatement, GaussianContext, ModelSpec};
use ci_kernel::ideal::Ideal;
use ci_kernel::mixed::{
    check_vanishing_minor, enumerate_treks, find_tsep_certificate, sigma_matrix_formula, sigma_trek_rule, MixedGraph,
    MixedGraphSpec, SemParameters,
};
use ci_kernel::poly::{MonomialOrder, Polynomial, RingContext};
use ci_kernel::toric::{design_matrix, integer_kernel, toric_ideal, GraphSpec, IntMatrix};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use input::{load_json, load_problem, parse_index_list, parse_order, parse_poly, CliError, CliResult, IdealArgs};

#[derive(Parser, Debug)]
#[command(name = "ci-kernel", version, about = "Exact ideal computations for conditional independence models")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Drop wall-clock timings from reports so output is reproducible.
    #[arg(long, global = true)]
    no_timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct IdealOpts {
    /// JSON problem file (or inline JSON) with ring, order, ideal(s), poly, vars.
    #[arg(long)]
    problem: Option<String>,
    /// Variables, e.g. 'x, y, z'.
    #[arg(long)]
    ring: Option<String>,
    /// lex, grevlex or block:K.
    #[arg(long)]
    order: Option<String>,
    /// Generators, e.g. '<x^2 - y, x*y>'. Repeat for several ideals.
    #[arg(long = "ideal")]
    ideals: Vec<String>,
}

impl IdealOpts {
    fn args<'a>(&'a self, poly: Option<&'a str>, vars: Option<&'a str>) -> IdealArgs<'a> {
        IdealArgs {
            problem: self.problem.as_deref(),
            ring: self.ring.as_deref(),
            order: self.order.as_deref(),
            ideals: &self.ideals,
            poly,
            vars,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduced Gröbner basis.
    Gb {
        #[command(flatten)]
        ideal: IdealOpts,
    },
    /// Ideal membership (exit 1 if not a member).
    Member {
        #[command(flatten)]
        ideal: IdealOpts,
        #[arg(long)]
        poly: Option<String>,
        /// Test membership in the radical instead.
        #[arg(long)]
        radical: bool,
    },
    /// Intersection of two or more ideals.
    Intersect {
        #[command(flatten)]
        ideal: IdealOpts,
    },
    /// Eliminate variables.
    Eliminate {
        #[command(flatten)]
        ideal: IdealOpts,
        /// Variables to eliminate, e.g. 't, u'.
        #[arg(long)]
        vars: Option<String>,
    },
    /// Saturation I : f^∞.
    Saturate {
        #[command(flatten)]
        ideal: IdealOpts,
        #[arg(long)]
        poly: Option<String>,
    },
    /// CI ideal of one or more statements in a discrete or Gaussian model.
    CiIdeal {
        /// Model JSON, e.g. '{"type":"discrete","sizes":[2,2,2]}', or a file.
        #[arg(long)]
        model: String,
        /// Statement JSON, e.g. '{"A":[1],"B":[3],"C":[2]}', a list of them, or a file.
        #[arg(long = "stmt", required = true)]
        stmts: Vec<String>,
        /// Also print the reduced Gröbner basis.
        #[arg(long)]
        gb: bool,
    },
    /// Gaussian CI ideal on m variables.
    GaussCi {
        #[arg(long)]
        m: usize,
        #[arg(long = "stmt", required = true)]
        stmts: Vec<String>,
        /// Compare with the ideal of the single minors det Σ_{a∪C, b∪C}.
        #[arg(long)]
        alt: bool,
        #[arg(long)]
        gb: bool,
    },
    /// Toric ideal of an integer matrix or of an undirected graphical model.
    Toric {
        /// Integer matrix as JSON rows, or a file.
        #[arg(long, conflicts_with = "graph")]
        matrix: Option<String>,
        /// Graph JSON '{"vertices":3,"edges":[[1,2],[2,3]]}' or a file.
        #[arg(long)]
        graph: Option<String>,
        /// State-space sizes for --graph, e.g. 2,2,2.
        #[arg(long, requires = "graph")]
        sizes: Option<String>,
        /// Print the design matrix as CSV and stop.
        #[arg(long, requires = "graph")]
        csv: bool,
    },
    /// Search for a t-separation certificate of (A, B) (exit 1 if none).
    Tsep {
        /// Mixed graph JSON or a file.
        #[arg(long)]
        graph: String,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
    },
    /// Covariance matrix of a linear SEM via the trek rule.
    TrekSigma {
        #[arg(long)]
        graph: String,
        /// Only this entry, with its treks, e.g. 1,4.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Verify a decomposition claim file (exit 1 if it fails).
    Verify {
        /// Claim JSON or a file.
        #[arg(long)]
        claim: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// List the built-in claims.
    CatalogList,
    /// Verify built-in claims.
    CatalogRun {
        /// Claim name; see catalog-list.
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// Worker threads for --all.
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Include slow claims (also enabled by CI_KERNEL_SLOW=1).
        #[arg(long)]
        slow: bool,
    },
}

/// A finished command: its JSON form, its text form and whether the answer
/// was affirmative.
struct Outcome {
    json: Value,
    text: String,
    ok: bool,
}

impl Outcome {
    fn yes(json: Value, text: String) -> Self {
        Outcome { json, text, ok: true }
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn lines(ps: &[Polynomial]) -> String {
    strings(ps).join("\n")
}

fn ring_json(ring: &RingContext) -> Value {
    json!({ "variables": ring.variables(), "order": ring.order().to_string() })
}

fn gb_outcome(ideal: &Ideal) -> Outcome {
    let gb = ideal.groebner_basis().elements();
    Outcome::yes(
        json!({ "ring": ring_json(ideal.ring()), "groebner_basis": strings(gb) }),
        lines(gb),
    )
}

fn single_ideal(loaded: &input::Loaded) -> CliResult<Ideal> {
    match loaded.ideals.as_slice() {
        [gens] => Ok(Ideal::new(&loaded.ring, gens.clone())?),
        [] => Err(CliError("no ideal given (use --ideal or a problem file)".into())),
        _ => Err(CliError("expected exactly one ideal".into())),
    }
}

fn required<'a>(v: &'a Option<String>, what: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError(format!("missing {what}")))
}

fn cmd_member(opts: &IdealOpts, poly: Option<&str>, radical: bool) -> CliResult<Outcome> {
    let loaded = load_problem(&opts.args(poly, None))?;
    let ideal = single_ideal(&loaded)?;
    let text = required(&loaded.poly, "--poly")?;
    let f = parse_poly("poly", text, &loaded.ring)?;
    let member = if radical {
        ideal.radical_member(&f)?
    } else {
        ideal.is_member(&f)?
    };
    let remainder = ideal.groebner_basis().reduce(&f)?;
    let mut j = json!({ "poly": f.to_string(), "radical": radical, "member": member });
    if !radical {
        j["normal_form"] = json!(remainder.to_string());
    }
    Ok(Outcome { json: j, text: member.to_string(), ok: member })
}

fn cmd_intersect(opts: &IdealOpts) -> CliResult<Outcome> {
    let loaded = load_problem(&opts.args(None, None))?;
    if loaded.ideals.len() < 2 {
        return Err(CliError("intersect needs at least two ideals".into()));
    }
    let ideals = loaded
        .ideals
        .iter()
        .map(|g| Ideal::new(&loaded.ring, g.clone()))
        .collect::<ci_kernel::Result<Vec<_>>>()?;
    Ok(gb_outcome(&Ideal::intersect_all(&loaded.ring, &ideals)?))
}

fn cmd_eliminate(opts: &IdealOpts, vars: Option<&str>) -> CliResult<Outcome> {
    let loaded = load_problem(&opts.args(None, vars))?;
    let ideal = single_ideal(&loaded)?;
    let vars = required(&loaded.vars, "--vars")?;
    let names: Vec<&str> = vars
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    Ok(gb_outcome(&ideal.eliminate(&names)?))
}

fn cmd_saturate(opts: &IdealOpts, poly: Option<&str>) -> CliResult<Outcome> {
    let loaded = load_problem(&opts.args(poly, None))?;
    let ideal = single_ideal(&loaded)?;
    let f = parse_poly("poly", required(&loaded.poly, "--poly")?, &loaded.ring)?;
    Ok(gb_outcome(&ideal.saturate(&f)?))
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(CiStatement),
    Many(Vec<CiStatement>),
}

fn load_statements(args: &[String]) -> CliResult<Vec<CiStatement>> {
    let mut out = Vec::new();
    for a in args {
        match load_json::<OneOrMany>(a)? {
            OneOrMany::One(s) => out.push(s),
            OneOrMany::Many(v) => out.extend(v),
        }
    }
    Ok(out
        .into_iter()
        .map(|s| CiStatement::new(&s.a, &s.b, &s.c))
        .collect())
}

fn ci_outcome(model: &dyn CiModel, spec: Value, stmts: &[CiStatement], gb: bool) -> CliResult<Outcome> {
    let ideal = model.ci_collection_ideal(stmts)?;
    let gens = ideal.generators();
    let mut j = json!({
        "model": spec,
        "statements": stmts,
        "ring": ring_json(model.ring()),
        "generators": strings(gens),
    });
    let mut text = lines(gens);
    if gb {
        let basis = ideal.groebner_basis().elements();
        j["groebner_basis"] = json!(strings(basis));
        text = format!("generators:\n{text}\ngroebner basis:\n{}", lines(basis));
    }
    Ok(Outcome::yes(j, text))
}

fn cmd_ci_ideal(model: &str, stmts: &[String], gb: bool) -> CliResult<Outcome> {
    let spec: ModelSpec = load_json(model)?;
    let built = spec.build()?;
    let stmts = load_statements(stmts)?;
    ci_outcome(&built, json!(spec), &stmts, gb)
}

fn cmd_gauss_ci(m: usize, stmts: &[String], alt: bool, gb: bool) -> CliResult<Outcome> {
    let ctx = GaussianContext::new(m)?;
    let stmts = load_statements(stmts)?;
    let mut out = ci_outcome(&ctx, json!({ "type": "gaussian", "m": m }), &stmts, gb)?;
    if alt {
        let parts = stmts
            .iter()
            .map(|s| ctx.alt_gaussian_generators(s))
            .collect::<ci_kernel::Result<Vec<_>>>()?;
        let gens: Vec<Polynomial> = parts.iter().flat_map(|p| p.generators().iter().cloned()).collect();
        let alt_ideal = Ideal::new(ctx.ring(), gens)?;
        let equal = alt_ideal.equals(&ctx.ci_collection_ideal(&stmts)?)?;
        out.json["alternative"] = json!({ "generators": strings(alt_ideal.generators()), "equal": equal });
        out.text = format!("{}\nalternative generators:\n{}\nequal: {equal}", out.text, lines(alt_ideal.generators()));
    }
    Ok(out)
}

fn int_json(v: &impl ToString) -> Value {
    let s = v.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn cmd_toric(matrix: Option<&str>, graph: Option<&str>, sizes: Option<&str>, csv: bool) -> CliResult<Outcome> {
    let (a, ring, extra) = match (matrix, graph) {
        (Some(m), _) => {
            let rows: Vec<Vec<i64>> = load_json(m)?;
            let a = IntMatrix::from_i64(&rows)?;
            let names: Vec<String> = (1..=a.cols()).map(|i| format!("x{i}")).collect();
            let ring = RingContext::new(&names, MonomialOrder::Grevlex)?;
            (a, ring, json!({}))
        }
        (None, Some(g)) => {
            let spec: GraphSpec = load_json(g)?;
            let graph = spec.build()?;
            let sizes = match sizes {
                Some(s) => parse_index_list("sizes", s)?,
                None => vec![2; graph.vertices()],
            };
            let model = ci_kernel::ci::DiscreteModel::new(&sizes)?;
            let a = design_matrix(&graph, &sizes)?;
            if csv {
                let text = a.to_csv();
                return Ok(Outcome::yes(json!({ "csv": text }), text.trim_end().to_string()));
            }
            let extra = json!({
                "sizes": sizes,
                "cliques": graph.maximal_cliques(),
                "chordal": graph.is_chordal(),
            });
            (a, model.ring().clone(), extra)
        }
        (None, None) => return Err(CliError("give --matrix or --graph".into())),
    };
    let kernel = integer_kernel(&a);
    let kernel_json: Vec<Vec<Value>> = kernel.vectors.iter().map(|v| v.iter().map(int_json).collect()).collect();
    let ideal = toric_ideal(&a, &ring)?;
    let gb = ideal.groebner_basis().elements();
    let mut j = json!({ "ring": ring_json(&ring), "kernel": kernel_json });
    if let (Value::Object(dst), Value::Object(src)) = (&mut j, extra) {
        dst.extend(src);
    }
    j["groebner_basis"] = json!(strings(gb));
    Ok(Outcome::yes(j, lines(gb)))
}

fn load_mixed(arg: &str) -> CliResult<MixedGraph> {
    let spec: MixedGraphSpec = load_json(arg)?;
    Ok(spec.build()?)
}

fn fmt_set(v: &[usize]) -> String {
    if v.is_empty() {
        "∅".to_string()
    } else {
        format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

fn cmd_tsep(graph: &str, a: &str, b: &str) -> CliResult<Outcome> {
    let g = load_mixed(graph)?;
    let a = parse_index_list("A", a)?;
    let b = parse_index_list("B", b)?;
    let cert = find_tsep_certificate(&g, &a, &b)?;
    let vanishes = check_vanishing_minor(&g, &a, &b)?;
    let (cj, text) = match &cert {
        Some((ca, cb)) => (
            json!({ "C_A": ca, "C_B": cb }),
            format!("certificate ({}, {})", fmt_set(ca), fmt_set(cb)),
        ),
        None => (Value::Null, "no certificate".to_string()),
    };
    Ok(Outcome {
        json: json!({ "A": a, "B": b, "certificate": cj, "minor_vanishes": vanishes }),
        text: format!("{text}\nminor vanishes: {vanishes}"),
        ok: cert.is_some(),
    })
}

fn cmd_trek_sigma(graph: &str, pair: Option<&str>) -> CliResult<Outcome> {
    let g = load_mixed(graph)?;
    let params = SemParameters::new(&g);
    let m = g.vertices();
    if let Some(p) = pair {
        let ij = parse_index_list("pair", p)?;
        let &[i, j] = ij.as_slice() else {
            return Err(CliError("--pair takes two vertices, e.g. 1,4".into()));
        };
        if i == 0 || j == 0 || i > m || j > m {
            return Err(CliError(format!("--pair: vertices must lie in 1..={m}")));
        }
        let treks = enumerate_treks(&g, i, j);
        let sigma = sigma_trek_rule(&g, &params, i, j);
        let text = treks
            .iter()
            .map(|t| format!("{:?} {:?} {:?}", t.left, t.right, t.source))
            .chain(std::iter::once(format!("sigma_{i}_{j} = {sigma}")))
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Outcome::yes(
            json!({ "i": i, "j": j, "treks": treks, "sigma": sigma.to_string() }),
            text,
        ));
    }
    let formula = sigma_matrix_formula(&g, &params);
    let mut rows = Vec::new();
    let mut agree = true;
    for i in 1..=m {
        let mut row = Vec::new();
        for j in 1..=m {
            let s = sigma_trek_rule(&g, &params, i, j);
            agree &= s == formula[i - 1][j - 1];
            row.push(s.to_string());
        }
        rows.push(row);
    }
    let text = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, s)| format!("sigma_{}_{} = {s}", i + 1, j + 1)))
        .chain(std::iter::once(format!("matches matrix formula: {agree}")))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Outcome {
        json: json!({ "ring": ring_json(params.ring()), "sigma": rows, "matches_matrix_formula": agree }),
        text,
        ok: agree,
    })
}

fn report_json(r: &VerificationReport, timings: bool) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    if !timings {
        if let Value::Object(map) = &mut v {
            map.shift_remove("millis");
        }
    }
    v
}

fn yes_no(b: Option<bool>) -> &'static str {
    match b {
        Some(true) => "yes",
        Some(false) => "no",
        None => "n/a",
    }
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Verified => "verified",
        Verdict::Failed => "failed",
    }
}

fn report_text(r: &VerificationReport, timings: bool) -> String {
    let mut s = format!("{}: {}", r.claim, verdict_name(r.verdict));
    if timings {
        s += &format!(" [{} ms]", r.millis);
    }
    s += &format!("\n  intersection equal: {}", r.intersection_equal);
    if let Some(c) = r.radical_contained {
        s += &format!("\n  intersection in radical: {c}");
    }
    s += &format!("\n  minimal: {}", r.minimal);
    for c in &r.components {
        s += &format!(
            "\n  {}: contains target {}, pruned simplex {}, pruned pd-cone {}",
            c.name,
            c.contains_target,
            yes_no(c.pruned_simplex),
            yes_no(c.pruned_pdcone)
        );
    }
    s
}

fn cmd_verify(claim: &str, order: Option<&str>, timings: bool) -> CliResult<Outcome> {
    let file: input::ClaimFile = load_json(claim)?;
    let claim = file.build(order)?;
    let r = catalog::verify_decomposition(&claim)?;
    Ok(Outcome {
        json: report_json(&r, timings),
        text: report_text(&r, timings),
        ok: r.verdict == Verdict::Verified,
    })
}

fn cmd_catalog_list() -> Outcome {
    let entries = catalog::catalog();
    let j: Vec<Value> = entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "statement": e.statement,
                "slow": e.slow,
                "expected": verdict_name(e.expected),
            })
        })
        .collect();
    let text = entries
        .iter()
        .map(|e| {
            let tag = if e.slow { " (slow)" } else { "" };
            format!("{}{tag} [expect {}]\n    {}", e.name, verdict_name(e.expected), e.statement)
        })
        .collect::<Vec<_>>()
        .join("\n");
    Outcome::yes(Value::Array(j), text)
}

fn slow_enabled(flag: bool) -> bool {
    flag || std::env::var("CI_KERNEL_SLOW").is_ok_and(|v| v == "1")
}

fn cmd_catalog_run(name: Option<&str>, all: bool, workers: usize, slow: bool, timings: bool) -> CliResult<Outcome> {
    let slow = slow_enabled(slow);
    if !all {
        let name = name.expect("clap requires a name without --all");
        let entry = catalog::find(name).ok_or_else(|| CliError(format!("no claim named `{name}`; see catalog-list")))?;
        if entry.slow && !slow {
            return Err(CliError(format!("`{name}` is slow; pass --slow or set CI_KERNEL_SLOW=1")));
        }
        let r = entry.run()?;
        return Ok(Outcome {
            json: report_json(&r, timings),
            text: report_text(&r, timings),
            ok: r.verdict == Verdict::Verified,
        });
    }
    let (run, skipped): (Vec<CatalogEntry>, Vec<CatalogEntry>) =
        catalog::catalog().into_iter().partition(|e| slow || !e.slow);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| CliError(e.to_string()))?;
    let results: Vec<ci_kernel::Result<VerificationReport>> = pool.install(|| run.par_iter().map(|e| e.run()).collect());
    let mut reports = Vec::new();
    let mut text = Vec::new();
    let mut as_expected = true;
    for (e, r) in run.iter().zip(results) {
        let r = r?;
        let matches = r.verdict == e.expected;
        as_expected &= matches;
        let mut j = report_json(&r, timings);
        j["expected"] = json!(verdict_name(e.expected));
        reports.push(j);
        let note = if matches { "as expected" } else { "UNEXPECTED" };
        let ms = if timings { format!(" [{} ms]", r.millis) } else { String::new() };
        text.push(format!("{:<28} {:<9} {note}{ms}", r.claim, verdict_name(r.verdict)));
    }
    let skipped: Vec<&str> = skipped.iter().map(|e| e.name).collect();
    if !skipped.is_empty() {
        text.push(format!("skipped (slow): {}", skipped.join(", ")));
    }
    Ok(Outcome {
        json: json!({ "reports": reports, "skipped": skipped, "all_as_expected": as_expected }),
        text: text.join("\n"),
        ok: as_expected,
    })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    let timings = !cli.no_timings;
    match &cli.command {
        Command::Gb { ideal } => {
            let loaded = load_problem(&ideal.args(None, None))?;
            Ok(gb_outcome(&single_ideal(&loaded)?))
        }
        Command::Member { ideal, poly, radical } => cmd_member(ideal, poly.as_deref(), *radical),
        Command::Intersect { ideal } => cmd_intersect(ideal),
        Command::Eliminate { ideal, vars } => cmd_eliminate(ideal, vars.as_deref()),
        Command::Saturate { ideal, poly } => cmd_saturate(ideal, poly.as_deref()),
        Command::CiIdeal { model, stmts, gb } => cmd_ci_ideal(model, stmts, *gb),
        Command::GaussCi { m, stmts, alt, gb } => cmd_gauss_ci(*m, stmts, *alt, *gb),
        Command::Toric { matrix, graph, sizes, csv } => {
            cmd_toric(matrix.as_deref(), graph.as_deref(), sizes.as_deref(), *csv)
        }
        Command::Tsep { graph, a, b } => cmd_tsep(graph, a, b),
        Command::TrekSigma { graph, pair } => cmd_trek_sigma(graph, pair.as_deref()),
        Command::Verify { claim, order } => {
            if let Some(o) = order {
                parse_order(o)?;
            }
            cmd_verify(claim, order.as_deref(), timings)
        }
        Command::CatalogList => Ok(cmd_catalog_list()),
        Command::CatalogRun { name, all, workers, slow } => {
            cmd_catalog_run(name.as_deref(), *all, *workers, *slow, timings)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("json")
            } else {
                out.text
            };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
