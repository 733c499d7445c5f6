use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use helastica::{
    chord_parameter, read_curve_csv, read_jsonl, record_caption, render_svg, resolve_out_dir, write_curve_csv,
    write_diagnostics_csv, write_jsonl, CatalogEntry, CliError, Outputs, EXIT_CODES,
};
use helastica_core::closing::{self, CatalogCell, CertifyOptions, ClosedElasticaRecord};
use helastica_core::elastica::{self, ElasticaCase, ElasticaParams};
use helastica_core::flow::{self, FlowOptions, FlowState, StopReason, ZeroTurningStyle};
use helastica_core::hypgeo::SampledCurve;

#[derive(Parser, Debug)]
#[command(name = "helastica", version, about = "Elastic curves in the hyperbolic plane", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classify (λ, κ₀²) or (λ, C) and print the profile parameters as JSON
    Classify(ProfileArgs),
    /// Sample the elastica with the given profile, starting at height 1
    Sample(SampleArgs),
    /// Solve the closing condition for a rotational elastica with n curvature periods
    Close(CloseArgs),
    /// Solve for the λ-figure-eight, or sweep λ to show the energy approaching 16
    FigureEight(FigureEightArgs),
    /// Run the elastic flow from a curve CSV or a built-in initial curve
    Flow(FlowArgs),
    /// Minimum E/L over catalog records below an energy cap
    ReillyScan(ReillyArgs),
    /// Build a catalog of certified closed elastica (JSON lines)
    Catalog(CatalogArgs),
}

#[derive(Args, Debug)]
struct ProfileArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long = "kappa0-sq", allow_hyphen_values = true, conflicts_with = "c", required_unless_present = "c")]
    kappa0_sq: Option<f64>,
    /// integration constant C instead of κ₀²
    #[arg(long = "c", allow_hyphen_values = true)]
    c: Option<f64>,
}

impl ProfileArgs {
    fn params(&self) -> Result<ElasticaParams, CliError> {
        Ok(match (self.kappa0_sq, self.c) {
            (Some(k), _) => elastica::classify(self.lambda, k)?,
            (None, Some(c)) => elastica::classify_from_c(self.lambda, c)?,
            (None, None) => return Err(CliError::Usage("need --kappa0-sq or --c".into())),
        })
    }
}

#[derive(Args, Debug)]
struct OutArgs {
    /// output directory (default: $HELASTICA_OUT, else the working directory)
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// also write an SVG rendering next to each curve CSV
    #[arg(long)]
    svg: bool,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// arclength to trace (default: two curvature periods, or one turn of a circle)
    #[arg(long)]
    length: Option<f64>,
    #[arg(long = "samples", default_value_t = 1024)]
    samples: usize,
    #[arg(long, default_value_t = 1.0)]
    y0: f64,
    /// output CSV file name (inside the output directory)
    #[arg(long, default_value = "sample.csv")]
    out: String,
    #[command(flatten)]
    out_args: OutArgs,
}

#[derive(Args, Debug)]
struct CloseArgs {
    #[arg(long, allow_hyphen_values = true)]
    lambda: f64,
    #[arg(long)]
    n: u32,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<i64>,
    #[arg(long = "samples", default_value_t = 4096)]
    samples: usize,
    #[command(flatten)]
    out_args: OutArgs,
}

#[derive(Args, Debug)]
struct FigureEightArgs {
    #[arg(long, allow_hyphen_values = true, required_unless_present = "sweep")]
    lambda: Option<f64>,
    /// solve at each of these λ (comma separated) and print the energy table
    #[arg(long, value_delimiter = ',', num_args = 0.., default_missing_value = "0.6,0.3,0.1,0.03,0.01")]
    sweep: Option<Vec<f64>>,
    #[arg(long = "samples", default_value_t = 4096)]
    samples: usize,
    #[command(flatten)]
    out_args: OutArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InitialCurve {
    /// Gerono lemniscate (turning number 0)
    Lemniscate,
    /// sampled λ-figure-eight with λ = --fe-lambda (turning number 0)
    FigureEight,
}

#[derive(Args, Debug)]
struct FlowArgs {
    /// initial curve CSV
    #[arg(long = "in", conflicts_with_all = ["circle", "zero_turning"])]
    input: Option<PathBuf>,
    /// start from the geodesic circle of this radius about i
    #[arg(long, conflicts_with = "zero_turning")]
    circle: Option<f64>,
    #[arg(long, value_enum)]
    zero_turning: Option<InitialCurve>,
    #[arg(long, default_value_t = 0.1)]
    fe_lambda: f64,
    /// resample the initial curve to this many points (default: keep, 512 for built-ins)
    #[arg(long = "samples")]
    samples: Option<usize>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    lambda: f64,
    #[arg(long, default_value_t = 5.0)]
    t_end: f64,
    #[arg(long, default_value_t = 1e-5)]
    dt0: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt_max: f64,
    /// give up (exit 8) when the accepted step would fall below this
    #[arg(long, default_value_t = 1e-14)]
    dt_min: f64,
    #[arg(long, default_value_t = 50)]
    sample_every: u64,
    /// write the curve at the first diagnostic sample after every this many accepted steps (0: never)
    #[arg(long, default_value_t = 0)]
    snapshot_every: u64,
    #[command(flatten)]
    out_args: OutArgs,
}

#[derive(Args, Debug)]
struct ReillyArgs {
    /// catalog to scan (default: build the standard catalog in memory)
    #[arg(long)]
    catalog: Option<PathBuf>,
    #[arg(long, default_value_t = 15.0)]
    energy_cap: f64,
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Args, Debug)]
struct CatalogArgs {
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-0.9,-0.75,-0.5,-0.25,0,0.1,0.3,0.39,0.6,1")]
    lambdas: Vec<f64>,
    #[arg(long, default_value_t = 9)]
    n_max: u32,
    /// worker threads (0: all cores)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long = "samples", default_value_t = 4096)]
    samples: usize,
    /// also write one curve CSV per record
    #[arg(long)]
    curves: bool,
    #[arg(long, default_value = "catalog.jsonl")]
    out: String,
    #[command(flatten)]
    out_args: OutArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 64 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Sample(a) => sample(a),
        Command::Close(a) => close(a),
        Command::FigureEight(a) => figure_eight(a),
        Command::Flow(a) => run_flow(a),
        Command::ReillyScan(a) => reilly_scan(a),
        Command::Catalog(a) => catalog(a),
    }
}

fn emit(v: serde_json::Value) {
    println!("{v}");
}

fn classify(a: ProfileArgs) -> Result<(), CliError> {
    let p = a.params()?;
    if p.p_near_one {
        eprintln!("note: modulus p is within 1e-9 of 1 (close to the asymptotically geodesic case)");
    }
    println!("{}", serde_json::to_string(&p).expect("params serialize"));
    Ok(())
}

fn write_curve(
    outputs: &mut Outputs,
    dir: &Path,
    name: &str,
    t: &[f64],
    curve: &SampledCurve,
    svg_caption: Option<&str>,
) -> Result<PathBuf, CliError> {
    let path = dir.join(name);
    outputs.track(&path);
    write_curve_csv(&path, t, curve)?;
    if let Some(caption) = svg_caption {
        let svg = path.with_extension("svg");
        outputs.track(&svg);
        std::fs::write(&svg, render_svg(curve, caption)).map_err(|e| CliError::Io(svg.clone(), e))?;
    }
    Ok(path)
}

fn sample(a: SampleArgs) -> Result<(), CliError> {
    let params = a.profile.params()?;
    if a.samples < 8 {
        return Err(CliError::Usage("--samples must be at least 8".into()));
    }
    let length = match a.length {
        Some(l) if l > 0.0 => l,
        Some(_) => return Err(CliError::Usage("--length must be positive".into())),
        None => match params.case {
            ElasticaCase::Circular => closing::circular_record(params.lambda, a.y0).map(|r| r.length).unwrap_or(20.0),
            ElasticaCase::AsymptoticallyGeodesic => 20.0,
            _ => 2.0 * elastica::Profile::new(&params).half_period().expect("elliptic profile"),
        },
    };
    let grid = elastica::uniform_grid(length, a.samples);
    let curve = if params.case == ElasticaCase::Circular {
        elastica::circle_with_curvature(params.kappa0_sq.sqrt(), a.y0, a.samples)?
    } else {
        elastica::sample_curve(&params, &elastica::killing_params_plus(&params, a.y0)?, &grid)?
    };
    let dir = resolve_out_dir(a.out_args.out_dir)?;
    let mut outputs = Outputs::new();
    let caption = format!("λ={} C={:.7} {} s∈[0,{:.4})", params.lambda, params.c, params.case.as_str(), length);
    let path = write_curve(&mut outputs, &dir, &a.out, &grid, &curve, a.out_args.svg.then_some(caption.as_str()))?;
    outputs.commit();
    eprintln!("sampled {} points of the {} elastica over arclength {length:.6}", a.samples, params.case.as_str());
    emit(json!({
        "case": params.case.as_str(),
        "lambda": params.lambda,
        "C": params.c,
        "length": length,
        "samples": a.samples,
        "min_y": curve.min_y(),
        "max_y": curve.max_y(),
        "curve": path,
    }));
    Ok(())
}

fn certify_opts(samples: usize) -> Result<CertifyOptions, CliError> {
    if samples < 64 {
        return Err(CliError::Usage("--samples must be at least 64".into()));
    }
    Ok(CertifyOptions { samples, ..Default::default() })
}

fn record_file_name(r: &ClosedElasticaRecord) -> String {
    match r.params.case {
        ElasticaCase::Wavelike => format!("figure_eight_l{}.csv", helastica::num_tag(r.params.lambda)),
        _ => format!(
            "closed_l{}_n{}_m{}.csv",
            helastica::num_tag(r.params.lambda),
            r.n,
            helastica::num_tag(r.m.unwrap_or(0) as f64)
        ),
    }
}

fn write_record_curve(
    outputs: &mut Outputs,
    dir: &Path,
    r: &ClosedElasticaRecord,
    svg: bool,
) -> Result<PathBuf, CliError> {
    let n = r.residuals.samples.max(64);
    let curve = closing::record_curve(r, n)?;
    let t = elastica::uniform_grid(r.length, n);
    let caption = record_caption(r);
    write_curve(outputs, dir, &record_file_name(r), &t, &curve, svg.then_some(caption.as_str()))
}

fn record_json(r: &ClosedElasticaRecord, curve: Option<&Path>) -> serde_json::Value {
    let mut v = serde_json::to_value(r).expect("record serializes");
    v["reilly_quotient"] = json!(closing::reilly_quotient(r));
    if let Some(p) = curve {
        v["curve"] = json!(p);
    }
    v
}

fn close(a: CloseArgs) -> Result<(), CliError> {
    let opts = certify_opts(a.samples)?;
    let r = closing::solve_rotational_closed_with(a.lambda, a.n, a.m, &opts)?;
    let dir = resolve_out_dir(a.out_args.out_dir)?;
    let mut outputs = Outputs::new();
    let path = write_record_curve(&mut outputs, &dir, &r, a.out_args.svg)?;
    outputs.commit();
    eprintln!("closed rotational elastica: {}", record_caption(&r));
    emit(record_json(&r, Some(&path)));
    Ok(())
}

fn figure_eight(a: FigureEightArgs) -> Result<(), CliError> {
    let opts = certify_opts(a.samples)?;
    if let Some(lams) = a.sweep {
        let recs = lams
            .par_iter()
            .map(|&l| closing::solve_figure_eight_with(l, &opts))
            .collect::<Result<Vec<_>, _>>()?;
        eprintln!("{:>8}  {:>11}  {:>10}  {:>10}  {:>8}", "lambda", "C", "energy", "L", "E/L");
        for r in &recs {
            eprintln!(
                "{:>8}  {:>11.7}  {:>10.6}  {:>10.5}  {:>8.5}",
                r.params.lambda,
                r.params.c,
                r.energy,
                r.length,
                closing::reilly_quotient(r)
            );
        }
        let rows: Vec<_> = recs
            .iter()
            .map(|r| {
                json!({"lambda": r.params.lambda, "C": r.params.c, "energy": r.energy, "L": r.length,
                       "ratio": closing::reilly_quotient(r)})
            })
            .collect();
        emit(json!({ "sweep": rows }));
        return Ok(());
    }
    let lambda = a.lambda.ok_or_else(|| CliError::Usage("need --lambda or --sweep".into()))?;
    let r = closing::solve_figure_eight_with(lambda, &opts)?;
    let dir = resolve_out_dir(a.out_args.out_dir)?;
    let mut outputs = Outputs::new();
    let path = write_record_curve(&mut outputs, &dir, &r, a.out_args.svg)?;
    outputs.commit();
    eprintln!("λ-figure-eight: {}", record_caption(&r));
    emit(record_json(&r, Some(&path)));
    Ok(())
}

fn run_flow(a: FlowArgs) -> Result<(), CliError> {
    if !(a.t_end > 0.0 && a.dt_min > 0.0 && a.dt0 >= a.dt_min && a.dt_max >= a.dt0) {
        return Err(CliError::Usage("need t_end > 0 and 0 < dt_min <= dt0 <= dt_max".into()));
    }
    let n = a.samples;
    let curve = match (&a.input, a.circle, a.zero_turning) {
        (Some(path), _, _) => {
            let (_, c) = read_curve_csv(path)?;
            match n {
                Some(n) => flow::reparametrize(&c, n)?,
                None => c,
            }
        }
        (None, Some(rho), _) => flow::geodesic_circle(rho, n.unwrap_or(512))?,
        (None, None, Some(InitialCurve::Lemniscate)) => {
            flow::make_zero_turning_curve(ZeroTurningStyle::Lemniscate, 1.0, n.unwrap_or(512))?
        }
        (None, None, Some(InitialCurve::FigureEight)) => flow::make_zero_turning_curve(
            ZeroTurningStyle::FigureEight { lambda: a.fe_lambda },
            1.0,
            n.unwrap_or(512),
        )?,
        (None, None, None) => return Err(CliError::Usage("need --in, --circle or --zero-turning".into())),
    };
    let opts = FlowOptions { dt0: a.dt0, dt_max: a.dt_max, dt_min: a.dt_min, ..Default::default() };
    let mut state = FlowState::new(curve, a.lambda, a.dt0)?;
    let dir = resolve_out_dir(a.out_args.out_dir)?;
    let mut outputs = Outputs::new();
    let mut snap_err = None;
    let mut last_snap = 0;
    let snapshot_every = a.snapshot_every;
    let svg = a.out_args.svg;
    let diag = {
        let outputs = &mut outputs;
        let dir = &dir;
        flow::evolve_with(&mut state, a.t_end, a.sample_every, &opts, |s, _| {
            if snapshot_every > 0 && s.step_count >= last_snap + snapshot_every && snap_err.is_none() {
                last_snap = s.step_count;
                let name = format!("snapshot_{:08}.csv", s.step_count);
                let caption = format!("t={:.5} E={:.5}", s.time, s.energy);
                if let Err(e) = write_curve(outputs, dir, &name, &chord_parameter(&s.curve), &s.curve,
                    svg.then_some(caption.as_str()))
                {
                    snap_err = Some(e);
                }
            }
        })
    };
    if let Some(e) = snap_err {
        return Err(e);
    }
    if let StopReason::Failed(e) = diag.stop {
        // partial outputs go; the last accepted state is kept for inspection
        drop(outputs);
        let dump = dir.join("flow_failure_state.csv");
        write_curve_csv(&dump, &chord_parameter(&state.curve), &state.curve)?;
        eprintln!("flow failed at t = {}; last accepted curve written to {}", state.time, dump.display());
        return Err(e.into());
    }
    let diag_path = dir.join("diagnostics.csv");
    outputs.track(&diag_path);
    write_diagnostics_csv(&diag_path, &diag.samples)?;
    let last = *diag.last().expect("at least one sample");
    let caption = format!("t={:.5} E={:.5} L={:.5} T={}", last.t, last.energy, last.length, last.turning);
    let final_path =
        write_curve(&mut outputs, &dir, "final.csv", &chord_parameter(&state.curve), &state.curve, svg.then_some(caption.as_str()))?;
    outputs.commit();
    let stop = match diag.stop {
        StopReason::EndTime => "end-time",
        StopReason::BlowUp => "blow-up-sentinel",
        StopReason::Failed(_) => unreachable!(),
    };
    eprintln!(
        "flow stopped ({stop}) at t = {:.6} after {} steps ({} rejected): E = {:.6}, L = {:.6}, max κ = {:.6}",
        last.t, state.step_count, state.rejected, last.energy, last.length, last.max_kappa
    );
    emit(json!({
        "stop": stop,
        "t": last.t,
        "steps": state.step_count,
        "rejected": state.rejected,
        "remeshes": state.remeshes,
        "forced_remeshes": state.forced_remeshes,
        "remesh_energy_rise": state.remesh_energy_rise,
        "energy": last.energy,
        "length": last.length,
        "ratio": last.ratio,
        "turning": last.turning,
        "min_y": last.min_y,
        "max_kappa": last.max_kappa,
        "turning_constant": diag.turning_constant(),
        "diagnostics": diag_path,
        "final": final_path,
    }));
    Ok(())
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| CliError::Usage(e.to_string()))
}

/// Certified records of every (λ, n) cell plus the figure-eights, in deterministic order.
fn build_catalog(lambdas: &[f64], n_max: u32, opts: &CertifyOptions, jobs: usize) -> Result<Vec<ClosedElasticaRecord>, CliError> {
    let cells = closing::catalog_cells(lambdas, n_max);
    let pool = thread_pool(jobs)?;
    let (rot, fe) = pool.install(|| {
        let rot: Vec<_> = cells.par_iter().map(|&c: &CatalogCell| closing::solve_cell(c, opts)).collect();
        let fe: Vec<_> = lambdas
            .par_iter()
            .filter(|&&l| l > 0.0 && l < closing::figure_eight_lambda_max())
            .map(|&l| closing::solve_figure_eight_with(l, opts))
            .collect();
        (rot, fe)
    });
    let mut out = Vec::new();
    for (cell, res) in cells.iter().zip(rot) {
        match res {
            Ok(v) => out.extend(v),
            Err(e) => eprintln!("warning: cell λ={} n={} skipped: {e}", cell.lambda, cell.n),
        }
    }
    for r in fe {
        match r {
            Ok(r) => out.push(r),
            Err(e) => eprintln!("warning: figure-eight skipped: {e}"),
        }
    }
    for &l in lambdas {
        if let Ok(r) = closing::circular_record(l, 1.0) {
            out.push(r);
        }
    }
    closing::sort_catalog(&mut out);
    Ok(out)
}

fn catalog(a: CatalogArgs) -> Result<(), CliError> {
    let opts = certify_opts(a.samples)?;
    let recs = build_catalog(&a.lambdas, a.n_max, &opts, a.jobs)?;
    let dir = resolve_out_dir(a.out_args.out_dir)?;
    let mut outputs = Outputs::new();
    let mut entries = Vec::with_capacity(recs.len());
    for r in &recs {
        let curve = if a.curves {
            let p = write_record_curve(&mut outputs, &dir, r, a.out_args.svg)?;
            Some(p.file_name().expect("file name").to_string_lossy().into_owned())
        } else {
            None
        };
        entries.push(CatalogEntry { record: *r, curve });
    }
    let path = dir.join(&a.out);
    outputs.track(&path);
    write_jsonl(&path, &entries)?;
    outputs.commit();
    let scan = closing::reilly_scan(&recs, 15.0);
    eprintln!(
        "catalog: {} records written to {}; below E = 15: {} records, min E/L = {:.6}",
        recs.len(),
        path.display(),
        scan.count,
        scan.min_ratio
    );
    emit(json!({
        "records": recs.len(),
        "catalog": path,
        "reilly_count": scan.count,
        "reilly_min_ratio": scan.min_ratio,
    }));
    Ok(())
}

fn reilly_scan(a: ReillyArgs) -> Result<(), CliError> {
    let recs: Vec<ClosedElasticaRecord> = match &a.catalog {
        Some(p) => read_jsonl::<CatalogEntry>(p)?.into_iter().map(|e| e.record).collect(),
        None => build_catalog(
            &[-0.9, -0.75, -0.5, -0.25, 0.0, 0.1, 0.3, 0.39, 0.6, 1.0],
            9,
            &CertifyOptions::default(),
            a.jobs,
        )?,
    };
    let scan = closing::reilly_scan(&recs, a.energy_cap);
    if scan.count == 0 {
        return Err(CliError::Core(helastica_core::Error::NoRoot("no catalog record below the energy cap")));
    }
    eprintln!(
        "{} records with E ≤ {}: min E/L = {:.6}; smallest margin E/L − 1/K(p) over orbitlike records = {:.6}",
        scan.count, a.energy_cap, scan.min_ratio, scan.min_margin
    );
    let per_record: Vec<_> = recs
        .iter()
        .filter(|r| r.energy <= a.energy_cap)
        .map(|r| {
            json!({
                "case": r.params.case.as_str(), "lambda": r.params.lambda, "C": r.params.c, "n": r.n, "m": r.m,
                "energy": r.energy, "ratio": closing::reilly_quotient(r),
                "inverse_k": r.params.p.filter(|_| r.params.case == ElasticaCase::Orbitlike).map(closing::inverse_k),
            })
        })
        .collect();
    emit(json!({
        "energy_cap": a.energy_cap,
        "count": scan.count,
        "min_ratio": scan.min_ratio,
        "min_margin": if scan.min_margin.is_finite() { json!(scan.min_margin) } else { json!(null) },
        "records": per_record,
    }));
    Ok(())
}
