//! File formats and plumbing for the `helastica` binary: curve CSV, diagnostics CSV,
//! JSON-lines catalogs, SVG renderings and the exit-code contract.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use helastica_core::closing::ClosedElasticaRecord;
use helastica_core::flow::DiagnosticSample;
use helastica_core::hypgeo::{HPoint, Parametrization, SampledCurve};
use helastica_core::Error;
use serde::{Deserialize, Serialize};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "HELASTICA_OUT";

pub const CURVE_HEADER: &str = "t,x,y";
pub const DIAGNOSTICS_HEADER: &str = "t,energy,length,ratio,turning,min_y,max_kappa";

/// Failures of the command line tool, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
    Format(String),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Format(m) => write!(f, "malformed input: {m}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => core_exit_code(e),
            CliError::Io(..) => 12,
            CliError::Format(_) => 13,
            CliError::Usage(_) => 64,
        }
    }
}

/// Exit code for a numerical failure; see [`EXIT_CODES`].
pub fn core_exit_code(e: &Error) -> u8 {
    match e {
        Error::NoElastica { .. } => 2,
        Error::Degenerate { .. } => 3,
        Error::Domain(_) | Error::Circular | Error::BadMobius { .. } | Error::NotUnitTangent { .. } => 4,
        Error::NoRoot(_) => 5,
        Error::MOutOfWindow { .. } => 6,
        Error::Certificate { .. } | Error::NotAnElastica { .. } | Error::AmbiguousTurning { .. } => 7,
        Error::Stiffness { .. } => 8,
        Error::ModelBreakdown { .. } => 9,
        Error::InvalidCurve(_) | Error::DegenerateSegment { .. } => 10,
        Error::Quadrature { .. } => 11,
    }
}

pub const EXIT_CODES: &str = "\
Exit codes:
  0   success
  2   no elastica for these parameters (kappa0^2 < lambda + 2)
  3   parameters on the degenerate locus kappa0^2 = lambda + 4
  4   argument outside the domain of the operation
  5   no root in bracket (the requested closed curve does not exist)
  6   m out of window
  7   certificate failed (closure, energy, turning number)
  8   flow stiffness failure (time step underflow)
  9   flow left the half-plane (model breakdown)
  10  invalid curve
  11  quadrature did not converge
  12  I/O error
  13  malformed input file
  64  usage error";

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(path.to_path_buf(), e)
}

/// Tracks files written by a command so they can be removed if it fails.
#[derive(Debug, Default)]
pub struct Outputs {
    written: Vec<PathBuf>,
    keep: bool,
}

impl Outputs {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn track(&mut self, path: &Path) {
        self.written.push(path.to_path_buf());
    }

    pub fn paths(&self) -> &[PathBuf] {
        &self.written
    }

    /// Marks the outputs as complete; they survive the drop.
    pub fn commit(mut self) -> Vec<PathBuf> {
        self.keep = true;
        std::mem::take(&mut self.written)
    }
}

impl Drop for Outputs {
    fn drop(&mut self) {
        if !self.keep {
            for p in &self.written {
                let _ = fs::remove_file(p);
            }
        }
    }
}

/// Hyperbolic chord-length parameter of each sample, starting at 0.
pub fn chord_parameter(curve: &SampledCurve) -> Vec<f64> {
    let pts = curve.points();
    let mut t = Vec::with_capacity(pts.len());
    let mut acc = 0.0;
    for i in 0..pts.len() {
        t.push(acc);
        if i + 1 < pts.len() {
            acc += helastica_core::flow::distance(pts[i], pts[i + 1]);
        }
    }
    t
}

/// Writes `t,x,y` rows with 17 significant digits, so reading back is bit-exact.
pub fn write_curve_csv(path: &Path, t: &[f64], curve: &SampledCurve) -> Result<(), CliError> {
    if t.len() != curve.len() {
        return Err(CliError::Format(format!("{} parameter values for {} samples", t.len(), curve.len())));
    }
    let f = fs::File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(f);
    let mut write = || -> io::Result<()> {
        writeln!(w, "{CURVE_HEADER}")?;
        for (t, p) in t.iter().zip(curve.points()) {
            writeln!(w, "{t:.16e},{:.16e},{:.16e}", p.x, p.y)?;
        }
        w.flush()
    };
    write().map_err(io_err(path))
}

/// Reads a curve CSV; validates the header, y > 0 and the sampled-curve invariants.
pub fn read_curve_csv(path: &Path) -> Result<(Vec<f64>, SampledCurve), CliError> {
    let f = fs::File::open(path).map_err(io_err(path))?;
    let mut lines = BufReader::new(f).lines();
    let header = lines.next().transpose().map_err(io_err(path))?.unwrap_or_default();
    if header.trim() != CURVE_HEADER {
        return Err(CliError::Format(format!("{}: expected header `{CURVE_HEADER}`", path.display())));
    }
    let mut t = Vec::new();
    let mut pts = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line.map_err(io_err(path))?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Format(format!("{} line {}: {e}", path.display(), i + 2)))?;
        if v.len() != 3 {
            return Err(CliError::Format(format!("{} line {}: expected 3 columns", path.display(), i + 2)));
        }
        t.push(v[0]);
        pts.push(HPoint::new(v[1], v[2])?);
    }
    let curve = SampledCurve::new(pts, Parametrization::UniformParameter, None)?;
    Ok((t, curve))
}

pub fn write_diagnostics_csv(path: &Path, samples: &[DiagnosticSample]) -> Result<(), CliError> {
    let mut s = String::with_capacity(64 * (samples.len() + 1));
    s.push_str(DIAGNOSTICS_HEADER);
    s.push('\n');
    for d in samples {
        let _ = writeln!(
            s,
            "{:.16e},{:.16e},{:.16e},{:.16e},{},{:.16e},{:.16e}",
            d.t, d.energy, d.length, d.ratio, d.turning, d.min_y, d.max_kappa
        );
    }
    fs::write(path, s).map_err(io_err(path))
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticSample>, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(DIAGNOSTICS_HEADER) {
        return Err(CliError::Format(format!("{}: expected header `{DIAGNOSTICS_HEADER}`", path.display())));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let c: Vec<&str> = l.split(',').collect();
            let num = |i: usize| -> Result<f64, CliError> {
                c.get(i)
                    .ok_or_else(|| CliError::Format(format!("short diagnostics row `{l}`")))?
                    .parse()
                    .map_err(|e| CliError::Format(format!("`{l}`: {e}")))
            };
            Ok(DiagnosticSample {
                t: num(0)?,
                energy: num(1)?,
                length: num(2)?,
                ratio: num(3)?,
                turning: num(4)? as i64,
                min_y: num(5)?,
                max_kappa: num(6)?,
            })
        })
        .collect()
}

/// One catalog line: the record plus the relative path of its sampled curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(flatten)]
    pub record: ClosedElasticaRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: &[T]) -> Result<(), CliError> {
    let mut s = String::new();
    for it in items {
        s.push_str(&serde_json::to_string(it).map_err(|e| CliError::Format(e.to_string()))?);
        s.push('\n');
    }
    fs::write(path, s).map_err(io_err(path))
}

pub fn read_jsonl<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CliError::Format(format!("{} line {}: {e}", path.display(), i + 1))))
        .collect()
}

/// SVG of the curve in the upper half-plane with the x-axis drawn and a caption.
pub fn render_svg(curve: &SampledCurve, caption: &str) -> String {
    let pts = curve.points();
    let (mut x0, mut x1) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y1 = f64::NEG_INFINITY;
    for p in pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    // the frame always contains the boundary y = 0
    let pad = 0.05 * (x1 - x0).max(y1);
    let (fx0, fx1, fy1) = (x0 - pad, x1 + pad, y1 + pad);
    let (w, h) = (800.0, 800.0 * (fy1 + pad) / (fx1 - fx0)).min_height(200.0);
    let sx = |x: f64| (x - fx0) / (fx1 - fx0) * w;
    let sy = |y: f64| (fy1 - y) / (fy1 + pad) * (h - 40.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<line x1="0" y1="{0:.2}" x2="{w:.0}" y2="{0:.2}" stroke="#888" stroke-width="1"/>"##,
        sy(0.0)
    );
    s.push_str(r##"<polygon fill="none" stroke="#1f4e9c" stroke-width="1.2" points=""##);
    for p in pts {
        let _ = write!(s, "{:.2},{:.2} ", sx(p.x), sy(p.y));
    }
    s.push_str("\"/>\n");
    let _ = writeln!(
        s,
        r#"<text x="10" y="{:.0}" font-family="monospace" font-size="14">{}</text>"#,
        h - 12.0,
        escape(caption)
    );
    s.push_str("</svg>\n");
    s
}

trait MinHeight {
    fn min_height(self, m: f64) -> Self;
}

impl MinHeight for (f64, f64) {
    fn min_height(self, m: f64) -> Self {
        (self.0, self.1.clamp(m, 4000.0) + 40.0)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Caption with λ, C, n, m, T, E, L for a closed record.
pub fn record_caption(r: &ClosedElasticaRecord) -> String {
    let m = r.m.map_or_else(|| "-".to_string(), |m| m.to_string());
    format!(
        "λ={:.6} C={:.7} n={} m={} T={} E={:.5} L={:.5}",
        r.params.lambda, r.params.c, r.n, m, r.total_curvature, r.energy, r.length
    )
}

/// Output directory: the flag, else $HELASTICA_OUT, else the working directory.
pub fn resolve_out_dir(flag: Option<PathBuf>) -> Result<PathBuf, CliError> {
    let dir = flag
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(io_err(&dir))?;
    Ok(dir)
}

/// File-name-safe tag for a real parameter, e.g. 0.39 → "0.39", −0.5 → "m0.5".
pub fn num_tag(x: f64) -> String {
    let s = format!("{x}");
    s.replace('-', "m")
}
