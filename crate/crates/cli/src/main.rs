use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;
use wzeta_core::dims::{casimir_type_I, dim_class_one_numeric, dim_via_c_function, DimEvaluator};
use wzeta_core::genseries::{
    gen_series_direct, gen_series_mf, partial_fraction_coefficients, pi_series, zero_identity_check,
    zeta_values_from_rank_one, PiData,
};
use wzeta_core::partition::{boundary_state, partition_type_I, partition_type_II, SurfaceParams};
use wzeta_core::rat::{fmt_q, parse_q, to_f64};
use wzeta_core::rootdata::{catalog, catalog_record};
use wzeta_core::selfcheck::run_selfcheck;
use wzeta_core::sphere_oracle::{delta_kernel_test, kernel_at_zero, orthogonality_check};
use wzeta_core::weights::box_weights;
use wzeta_core::zeta::{zeta_type_I, zeta_type_II, ZetaRequest};
use wzeta_core::{lookup_space, ClassOneWeight, Error, VERSION};

#[derive(Parser, Debug)]
#[command(
    name = "wzeta",
    version,
    about = "Witten zeta functions of compact groups and symmetric spaces"
)]
struct Cli {
    /// Add wall-clock time to the output record (makes output nondeterministic).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List the symmetric-space catalog.
    Spaces(SpacesArgs),
    /// Class-one dimension of one weight by every available path.
    Dim(DimArgs),
    /// Dimensions and d^-s over a box of weights.
    DimsTable(DimsTableArgs),
    /// Type I zeta of a symmetric space.
    Zeta(ZetaArgs),
    /// Type II zeta of a compact group.
    Zeta2(Zeta2Args),
    /// Type I partition function of a closed surface.
    Partition(PartitionArgs),
    /// Type II partition function of a closed surface.
    Partition2(Partition2Args),
    /// Partition function with boundary holonomies (S:2 and S:3).
    Boundary(BoundaryArgs),
    /// First-order generating series: direct sum and partial fractions.
    Genseries(GenseriesArgs),
    /// The multi-factor series zeta[Pi].
    Pizeta(PizetaArgs),
    /// Rank-one type I zeta through the generating-series route.
    Zetagen(ZetagenArgs),
    /// Legendre-polynomial checks on S^2.
    OracleS2(OracleArgs),
    /// Run the invariant suite.
    Selfcheck,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize, PartialEq)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Serialize)]
struct SpacesArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct DimArgs {
    #[arg(long)]
    space: String,
    /// Weight coordinates, comma separated (one per rank).
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
}

#[derive(Args, Debug, Serialize)]
struct DimsTableArgs {
    #[arg(long)]
    space: String,
    /// Largest coordinate in the weight box.
    #[arg(long, default_value_t = 10)]
    max: u64,
    #[arg(long, default_value_t = 2.0)]
    s: f64,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args, Debug, Serialize)]
struct ZetaArgs {
    #[arg(long)]
    space: String,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 4096)]
    max_box: u64,
}

#[derive(Args, Debug, Serialize)]
struct Zeta2Args {
    #[arg(long)]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 4096)]
    max_box: u64,
}

#[derive(Args, Debug, Serialize)]
struct PartitionArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    genus: u32,
    #[arg(long, allow_hyphen_values = true)]
    area: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct Partition2Args {
    #[arg(long)]
    group: String,
    #[arg(long)]
    genus: u32,
    #[arg(long, allow_hyphen_values = true)]
    area: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct BoundaryArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    genus: u32,
    /// Holonomy angles of the holes, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    theta: Vec<f64>,
    #[arg(long, allow_hyphen_values = true)]
    area: f64,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct GenseriesArgs {
    /// Shifts kappa_j; rationals such as 1/2 are accepted.
    #[arg(long, value_delimiter = ',', required = true)]
    kappa: Vec<String>,
    /// Generating variables T_j (default all zero).
    #[arg(long = "T", value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<f64>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct PizetaArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pi: Vec<u32>,
    #[arg(long, value_delimiter = ',', required = true)]
    kappa: Vec<String>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args, Debug, Serialize)]
struct ZetagenArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    s: u32,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Check {
    Orthogonality,
    Delta,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum TestFunction {
    Cos,
    Gauss,
    One,
}

#[derive(Args, Debug, Serialize)]
struct OracleArgs {
    #[arg(long, value_enum)]
    check: Check,
    /// Degree n (orthogonality) or truncation N (delta).
    #[arg(long, default_value_t = 5)]
    n: usize,
    #[arg(long, default_value_t = 7)]
    m: usize,
    #[arg(long, default_value_t = 128)]
    quad: usize,
    #[arg(long, value_enum, default_value = "gauss")]
    f: TestFunction,
}

#[derive(Serialize)]
struct OutputRecord {
    command: String,
    inputs: Value,
    result: Value,
    version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    timing_ms: Option<f64>,
}

enum Output {
    Json(Value),
    Text(String),
}

enum Failure {
    Core(Error),
    Usage(String),
    Checks(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type CmdResult = Result<Output, Failure>;

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn parse_kappas(raw: &[String]) -> Result<Vec<f64>, Failure> {
    raw.iter()
        .map(|s| {
            parse_q(s)
                .map(|q| to_f64(&q))
                .ok_or_else(|| Failure::Usage(format!("cannot parse `{s}` as a rational number")))
        })
        .collect()
}

fn csv_text(write: impl FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    write(&mut w).expect("csv to memory");
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

fn cmd_spaces(a: &SpacesArgs) -> CmdResult {
    let records: Vec<_> = catalog().into_iter().map(|e| catalog_record(e.id, &e.space)).collect();
    if a.format == Format::Json {
        return Ok(Output::Json(to_json(&records)));
    }
    Ok(Output::Text(csv_text(|w| {
        w.write_record([
            "id",
            "label",
            "root_system",
            "rank",
            "dim",
            "m",
            "m2",
            "normal_marker",
            "blocked",
        ])?;
        for r in &records {
            let join = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            w.write_record([
                r.id.clone(),
                r.label.clone().unwrap_or_default(),
                r.root_system.clone().unwrap_or_default(),
                r.rank.map(|x| x.to_string()).unwrap_or_default(),
                r.dim.map(|x| x.to_string()).unwrap_or_default(),
                join(&r.m),
                join(&r.m2),
                r.normal_marker.to_string(),
                r.blocked.clone().unwrap_or_default(),
            ])?;
        }
        Ok(())
    })))
}

fn cmd_dim(a: &DimArgs) -> CmdResult {
    let s = lookup_space(&a.space)?;
    let ev = DimEvaluator::new(&s)?;
    let d = ev.eval(&a.n)?;
    let w = ClassOneWeight::new(a.n.clone());
    let gamma = dim_class_one_numeric(&s, &w);
    let cfun = dim_via_c_function(&s, &w);
    Ok(Output::Json(json!({
        "space": s.space_id,
        "weight": a.n,
        "exact": fmt_q(&d),
        "value": to_f64(&d),
        "gamma_ratio": gamma.as_ref().ok(),
        "gamma_ratio_rel_error": gamma.as_ref().ok().map(|g| ((g - to_f64(&d)) / to_f64(&d)).abs()),
        "c_function": cfun.as_ref().ok(),
        "c_function_rel_error": cfun.as_ref().ok().map(|c| ((c - to_f64(&d)) / to_f64(&d)).abs()),
        "casimir": fmt_q(&casimir_type_I(&s, &w)?),
    })))
}

#[derive(Serialize)]
struct DimRow {
    weight: String,
    d: String,
    d_float: f64,
    d_pow_minus_s: f64,
}

fn cmd_dims_table(a: &DimsTableArgs) -> CmdResult {
    let s = lookup_space(&a.space)?;
    let ev = DimEvaluator::new(&s)?;
    let mut rows = Vec::new();
    for w in box_weights(s.rank, a.max)? {
        let d = ev.eval(&w)?;
        let df = to_f64(&d);
        rows.push(DimRow {
            weight: w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            d: fmt_q(&d),
            d_float: df,
            d_pow_minus_s: df.powf(-a.s),
        });
    }
    if a.format == Format::Json {
        return Ok(Output::Json(to_json(&rows)));
    }
    Ok(Output::Text(csv_text(|w| {
        for r in &rows {
            w.serialize(r)?;
        }
        Ok(())
    })))
}

fn cmd_zeta(a: &ZetaArgs) -> CmdResult {
    let r = zeta_type_I(&ZetaRequest::new(&a.space, a.s).tol(a.tol).max_box(a.max_box))?;
    Ok(Output::Json(to_json(&r)))
}

fn cmd_zeta2(a: &Zeta2Args) -> CmdResult {
    let r = zeta_type_II(&ZetaRequest::new(&a.group, a.s).tol(a.tol).max_box(a.max_box))?;
    Ok(Output::Json(to_json(&r)))
}

fn cmd_partition(a: &PartitionArgs) -> CmdResult {
    let r = partition_type_I(&a.space, &SurfaceParams::closed(a.genus, a.area), a.tol)?;
    Ok(Output::Json(to_json(&r)))
}

fn cmd_partition2(a: &Partition2Args) -> CmdResult {
    let r = partition_type_II(&a.group, &SurfaceParams::closed(a.genus, a.area), a.tol)?;
    Ok(Output::Json(to_json(&r)))
}

fn cmd_boundary(a: &BoundaryArgs) -> CmdResult {
    let r = boundary_state(
        &a.space,
        &SurfaceParams::with_holes(a.genus, a.area, a.theta.clone()),
        a.tol,
    )?;
    Ok(Output::Json(to_json(&r)))
}

fn cmd_genseries(a: &GenseriesArgs) -> CmdResult {
    let kappa = parse_kappas(&a.kappa)?;
    let t = if a.t.is_empty() {
        vec![0.0; kappa.len()]
    } else {
        a.t.clone()
    };
    let direct = gen_series_direct(&kappa, &t, a.tol)?;
    let mf = gen_series_mf(&kappa, &t)?;
    Ok(Output::Json(json!({
        "direct": direct,
        "partial_fractions": mf,
        "difference": (mf - direct.value).abs(),
        "coefficients": partial_fraction_coefficients(&kappa, &t)?,
        "zero_identity_residual": zero_identity_check(&kappa, &t)?,
    })))
}

fn cmd_pizeta(a: &PizetaArgs) -> CmdResult {
    let data = PiData::new(a.pi.clone(), parse_kappas(&a.kappa)?)?;
    Ok(Output::Json(to_json(&pi_series(&data, a.tol)?)))
}

fn cmd_zetagen(a: &ZetagenArgs) -> CmdResult {
    let s = lookup_space(&a.space)?;
    let via = zeta_values_from_rank_one(&s, a.s, a.tol)?;
    let direct = zeta_type_I(&ZetaRequest::new(&a.space, a.s as f64).tol(a.tol))?;
    Ok(Output::Json(json!({
        "generating_series": via,
        "direct": direct,
        "difference": (via.value - direct.value).abs(),
    })))
}

fn cmd_oracle(a: &OracleArgs) -> CmdResult {
    match a.check {
        Check::Orthogonality => Ok(Output::Json(to_json(&orthogonality_check(a.n, a.m, a.quad)?))),
        Check::Delta => {
            let f: fn(f64) -> f64 = match a.f {
                TestFunction::Cos => f64::cos,
                TestFunction::Gauss => |t| (-t * t).exp(),
                TestFunction::One => |_| 1.0,
            };
            Ok(Output::Json(json!({
                "N": a.n,
                "error": delta_kernel_test(a.n, f)?,
                "kernel_at_zero": kernel_at_zero(a.n)?,
            })))
        }
    }
}

fn cmd_selfcheck() -> CmdResult {
    let checks = run_selfcheck();
    let v = to_json(&checks);
    if checks.iter().all(|c| c.passed) {
        Ok(Output::Json(v))
    } else {
        Err(Failure::Checks(v))
    }
}

fn dispatch(cmd: &Cmd) -> (&'static str, Value, CmdResult) {
    match cmd {
        Cmd::Spaces(a) => ("spaces", to_json(a), cmd_spaces(a)),
        Cmd::Dim(a) => ("dim", to_json(a), cmd_dim(a)),
        Cmd::DimsTable(a) => ("dims-table", to_json(a), cmd_dims_table(a)),
        Cmd::Zeta(a) => ("zeta", to_json(a), cmd_zeta(a)),
        Cmd::Zeta2(a) => ("zeta2", to_json(a), cmd_zeta2(a)),
        Cmd::Partition(a) => ("partition", to_json(a), cmd_partition(a)),
        Cmd::Partition2(a) => ("partition2", to_json(a), cmd_partition2(a)),
        Cmd::Boundary(a) => ("boundary", to_json(a), cmd_boundary(a)),
        Cmd::Genseries(a) => ("genseries", to_json(a), cmd_genseries(a)),
        Cmd::Pizeta(a) => ("pizeta", to_json(a), cmd_pizeta(a)),
        Cmd::Zetagen(a) => ("zetagen", to_json(a), cmd_zetagen(a)),
        Cmd::OracleS2(a) => ("oracle-s2", to_json(a), cmd_oracle(a)),
        Cmd::Selfcheck => ("selfcheck", json!({}), cmd_selfcheck()),
    }
}

/// Write to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let start = Instant::now();
    let (command, inputs, result) = dispatch(&cli.cmd);
    let timing_ms = cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
    let record = |result: Value| OutputRecord {
        command: command.into(),
        inputs: inputs.clone(),
        result,
        version: VERSION,
        timing_ms,
    };
    match result {
        Ok(Output::Json(v)) => {
            emit(&(serde_json::to_string_pretty(&record(v)).expect("json") + "\n"));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            if let Some(ms) = timing_ms {
                eprintln!("elapsed {ms:.3} ms");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(v)) => {
            emit(&(serde_json::to_string_pretty(&record(v)).expect("json") + "\n"));
            eprintln!("wzeta: one or more checks failed");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("wzeta: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            eprintln!("wzeta: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
