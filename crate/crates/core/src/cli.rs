//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and validation errors, 1 for
//! numerical failures (and for failed checks in `verify`).

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::cavity::{enumerate_modes_below, histogram_of, Geometry, ModeIndex, MAX_BINS};
use crate::error::Error;
use crate::fields::{linspace, sample_grid, Azimuth, ModeField, Sign};
use crate::output::{json_float, Cell, Table, SCHEMA};
use crate::roots::{bessel_zeros, cross_product_zeros};
use crate::verify::{run_checks, Module};

/// Largest number of grid points `field` will sample.
pub const MAX_GRID_POINTS: usize = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "coaxmode",
    version,
    about = "TM resonance spectra and fields of cylindrical and coaxial cavities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Zeros of J_m or of the annulus cross-product determinant.
    Zeros(ZerosArgs),
    /// TM mode spectrum below a frequency cutoff.
    Modes(ModesArgs),
    /// Field components of one mode on a grid.
    Field(FieldArgs),
    /// Run the built-in invariant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Flat key=value file of default flag values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ZeroKindArg {
    Bessel,
    Cross,
}

#[derive(Debug, Args)]
struct ZerosArgs {
    #[arg(long, value_enum, default_value_t = ZeroKindArg::Bessel)]
    kind: ZeroKindArg,
    /// Order; zeros depend on |m| only.
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Inner radius for --kind cross, m.
    #[arg(long)]
    a: Option<f64>,
    /// Outer radius for --kind cross, m.
    #[arg(long)]
    b: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GeometryKind {
    Cylinder,
    Annulus,
}

#[derive(Debug, Args)]
struct GeometryArgs {
    #[arg(long, value_enum, default_value_t = GeometryKind::Cylinder)]
    geometry: GeometryKind,
    /// Inner radius (annulus), m.
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    /// Outer radius, m.
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Height, m.
    #[arg(long, allow_negative_numbers = true)]
    l: f64,
}

impl GeometryArgs {
    fn build(&self) -> Result<Geometry, Failure> {
        let g = match self.geometry {
            GeometryKind::Cylinder => {
                if self.a.is_some() {
                    return Err(Failure::usage("--a applies only to --geometry annulus"));
                }
                Geometry::cylinder(self.b, self.l)
            }
            GeometryKind::Annulus => {
                let a = self
                    .a
                    .ok_or_else(|| Failure::usage("--geometry annulus requires --a"))?;
                Geometry::annulus(a, self.b, self.l)
            }
        };
        g.map_err(|e| Failure::from_error("--a/--b/--l", e))
    }

    fn params(&self, p: &mut Map<String, Value>) {
        p.insert(
            "geometry".into(),
            match self.geometry {
                GeometryKind::Cylinder => "cylinder",
                GeometryKind::Annulus => "annulus",
            }
            .into(),
        );
        if let Some(a) = self.a {
            p.insert("a".into(), json_float(a));
        }
        p.insert("b".into(), json_float(self.b));
        p.insert("l".into(), json_float(self.l));
    }
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("cutoff").required(true).args(["omega_max", "freq_max_hz"])))]
struct ModesArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Cutoff angular frequency, rad/s.
    #[arg(long, allow_negative_numbers = true)]
    omega_max: Option<f64>,
    /// Cutoff frequency, Hz.
    #[arg(long, allow_negative_numbers = true)]
    freq_max_hz: Option<f64>,
    /// Emit cumulative mode counts on this many bins instead of the spectrum.
    #[arg(long, value_name = "BINS")]
    histogram: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BasisArg {
    /// exp(+-i m phi), selected by --sign.
    Exp,
    Cos,
    Sin,
}

#[derive(Debug, Args)]
struct FieldArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Mode index as m,n,p.
    #[arg(long, value_name = "M,N,P")]
    mode: String,
    /// Sign of the azimuthal exponent.
    #[arg(long, default_value = "+", value_parser = ["+", "-"], allow_hyphen_values = true)]
    sign: String,
    /// Azimuthal basis.
    #[arg(long, value_enum, default_value_t = BasisArg::Exp)]
    basis: BasisArg,
    /// Complex amplitude as re,im.
    #[arg(
        long,
        default_value = "1,0",
        allow_hyphen_values = true,
        value_name = "RE,IM"
    )]
    amplitude: String,
    /// Radial grid START:END:COUNT (default: the full radial span, 11 points).
    #[arg(long, allow_hyphen_values = true, value_name = "START:END:COUNT")]
    rho: Option<String>,
    /// Azimuthal grid START:END:COUNT (default 0:0:1).
    #[arg(long, allow_hyphen_values = true, value_name = "START:END:COUNT")]
    phi: Option<String>,
    /// Axial grid START:END:COUNT (default 0:l:5).
    #[arg(long, allow_hyphen_values = true, value_name = "START:END:COUNT")]
    z: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Restrict to one module: specfun, roots, cavity or fields.
    #[arg(long)]
    module: Option<String>,
    #[arg(long, hide = true)]
    inject_tolerance: Option<f64>,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Flat key=value file of default flag values.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn numerical(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    /// Input errors are attributed to `flags`; numerical ones are reported as is.
    fn from_error(flags: &str, e: Error) -> Self {
        if e.is_input_error() {
            Failure::usage(format!("{flags}: {e}"))
        } else {
            Failure::numerical(e.to_string())
        }
    }
}

struct Output {
    bytes: Vec<u8>,
    path: Option<PathBuf>,
    code: i32,
}

fn render(
    table: &Table,
    command: &str,
    params: Map<String, Value>,
    common: &Common,
) -> Result<Output, Failure> {
    let mut bytes = Vec::new();
    let io = match common.format {
        Format::Csv => table.write_csv(&mut bytes),
        Format::Json => table.write_json(&mut bytes, command, params),
    };
    io.map_err(|e| Failure::numerical(format!("formatting output: {e}")))?;
    Ok(Output {
        bytes,
        path: common.out.clone(),
        code: 0,
    })
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn cmd_zeros(args: &ZerosArgs) -> Result<Output, Failure> {
    let m = i32::try_from(args.m).map_err(|_| {
        Failure::from_error(
            "--m",
            Error::OrderRange {
                m: args.m,
                max: crate::specfun::MAX_ORDER,
            },
        )
    })?;
    let table = match args.kind {
        ZeroKindArg::Bessel => {
            if args.a.is_some() || args.b.is_some() {
                return Err(Failure::usage("--a/--b apply only to --kind cross"));
            }
            bessel_zeros(m, args.count)
        }
        ZeroKindArg::Cross => {
            let (a, b) = match (args.a, args.b) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Failure::usage("--kind cross requires --a and --b")),
            };
            cross_product_zeros(m, a, b, args.count)
        }
    }
    .map_err(|e| {
        let flag = match e {
            Error::OrderRange { .. } => "--m",
            Error::CountRange { .. } => "--count",
            _ => "--a/--b",
        };
        Failure::from_error(flag, e)
    })?;

    let mut out = Table::new(["n", "value", "residual", "error_bound"]);
    for (i, z) in table.zeros.iter().enumerate() {
        out.push(vec![
            (i + 1).into(),
            z.value.into(),
            z.residual.into(),
            z.error_bound.into(),
        ]);
    }
    let mut p = Map::new();
    p.insert(
        "kind".into(),
        match args.kind {
            ZeroKindArg::Bessel => "bessel",
            ZeroKindArg::Cross => "cross",
        }
        .into(),
    );
    p.insert("m".into(), args.m.into());
    p.insert("count".into(), args.count.into());
    if let Some(a) = args.a {
        p.insert("a".into(), json_float(a));
    }
    if let Some(b) = args.b {
        p.insert("b".into(), json_float(b));
    }
    p.insert("format".into(), format_name(args.common.format).into());
    render(&out, "zeros", p, &args.common)
}

fn cmd_modes(args: &ModesArgs) -> Result<Output, Failure> {
    let geometry = args.geometry.build()?;
    let omega_max = match (args.omega_max, args.freq_max_hz) {
        (Some(w), _) => w,
        (None, Some(f)) => std::f64::consts::TAU * f,
        (None, None) => {
            return Err(Failure::usage(
                "one of --omega-max or --freq-max-hz is required",
            ))
        }
    };
    if let Some(bins) = args.histogram {
        if bins == 0 || bins > MAX_BINS {
            return Err(Failure::usage(format!(
                "--histogram: bins = {bins} must lie in 1..={MAX_BINS}"
            )));
        }
    }
    let modes = enumerate_modes_below(&geometry, omega_max)
        .map_err(|e| Failure::from_error("--omega-max/--freq-max-hz", e))?;

    let table = match args.histogram {
        Some(bins) => {
            let mut t = Table::new(["omega_bin_edge", "cumulative_count"]);
            for b in histogram_of(&modes, omega_max, bins) {
                t.push(vec![b.omega_bin_edge.into(), b.cumulative_count.into()]);
            }
            t
        }
        None => {
            let mut t = Table::new(["m", "n", "p", "gamma", "omega_rad_s", "degeneracy"]);
            for e in &modes {
                t.push(vec![
                    e.index.m.into(),
                    e.index.n.into(),
                    e.index.p.into(),
                    e.gamma.into(),
                    e.omega.into(),
                    (e.degeneracy as u32).into(),
                ]);
            }
            t
        }
    };
    let mut p = Map::new();
    args.geometry.params(&mut p);
    p.insert("omega_max".into(), json_float(omega_max));
    if let Some(f) = args.freq_max_hz {
        p.insert("freq_max_hz".into(), json_float(f));
    }
    if let Some(bins) = args.histogram {
        p.insert("histogram".into(), bins.into());
    }
    p.insert("format".into(), format_name(args.common.format).into());
    render(&table, "modes", p, &args.common)
}

fn parse_list<const N: usize>(flag: &str, s: &str, what: &str) -> Result<[String; N], Failure> {
    let parts: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    parts
        .try_into()
        .map_err(|_| Failure::usage(format!("{flag}: expected {what}, got {s:?}")))
}

fn parse_num<T: std::str::FromStr>(flag: &str, s: &str) -> Result<T, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::usage(format!("{flag}: cannot parse {s:?}")))
}

fn parse_grid(flag: &str, spec: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let [start, end, count] = parts[..] else {
        return Err(Failure::usage(format!(
            "{flag}: expected START:END:COUNT, got {spec:?}"
        )));
    };
    let start: f64 = parse_num(flag, start)?;
    let end: f64 = parse_num(flag, end)?;
    let count: usize = parse_num(flag, count)?;
    if count == 0 || !start.is_finite() || !end.is_finite() {
        return Err(Failure::usage(format!(
            "{flag}: need finite bounds and COUNT >= 1, got {spec:?}"
        )));
    }
    Ok(linspace(start, end, count))
}

fn cmd_field(args: &FieldArgs) -> Result<Output, Failure> {
    let geometry = args.geometry.build()?;
    let [m, n, p] = parse_list::<3>("--mode", &args.mode, "M,N,P")?;
    let index = ModeIndex::new(
        parse_num("--mode", &m)?,
        parse_num("--mode", &n)?,
        parse_num("--mode", &p)?,
    )
    .map_err(|e| Failure::from_error("--mode", e))?;
    let [re, im] = parse_list::<2>("--amplitude", &args.amplitude, "RE,IM")?;
    let amplitude = Complex64::new(
        parse_num("--amplitude", &re)?,
        parse_num("--amplitude", &im)?,
    );
    let sign = if args.sign == "-" {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let azimuth = match args.basis {
        BasisArg::Exp => Azimuth::Exp(sign),
        BasisArg::Cos => Azimuth::Cos,
        BasisArg::Sin => Azimuth::Sin,
    };

    let inner = geometry.inner_radius().unwrap_or(0.0);
    let rho = match &args.rho {
        Some(s) => parse_grid("--rho", s)?,
        None => linspace(inner, geometry.outer_radius(), 11),
    };
    let phi = match &args.phi {
        Some(s) => parse_grid("--phi", s)?,
        None => vec![0.0],
    };
    let z = match &args.z {
        Some(s) => parse_grid("--z", s)?,
        None => linspace(0.0, geometry.height(), 5),
    };
    let total = rho
        .len()
        .checked_mul(phi.len())
        .and_then(|v| v.checked_mul(z.len()))
        .filter(|&v| v <= MAX_GRID_POINTS)
        .ok_or_else(|| {
            Failure::usage(format!(
                "--rho/--phi/--z: grid exceeds {MAX_GRID_POINTS} points"
            ))
        })?;

    let mode = ModeField::new(&geometry, index, azimuth, amplitude)
        .map_err(|e| Failure::from_error("--mode", e))?;
    let samples = sample_grid(&mode, &rho, &phi, &z)
        .map_err(|e| Failure::from_error("--rho/--phi/--z", e))?;
    debug_assert_eq!(samples.len(), total);

    let mut table = Table::new([
        "rho", "phi", "z", "re_ez", "im_ez", "re_erho", "im_erho", "re_ephi", "im_ephi", "re_brho",
        "im_brho", "re_bphi", "im_bphi",
    ]);
    let mut it = samples.iter();
    for &r in &rho {
        for &ph in &phi {
            for &zz in &z {
                let s = it.next().expect("one sample per grid point");
                let mut row: Vec<Cell> = vec![r.into(), ph.into(), zz.into()];
                for c in s.components() {
                    row.push(c.re.into());
                    row.push(c.im.into());
                }
                table.push(row);
            }
        }
    }

    let mut params = Map::new();
    args.geometry.params(&mut params);
    params.insert("mode".into(), json!([index.m, index.n, index.p]));
    params.insert("sign".into(), args.sign.clone().into());
    params.insert(
        "basis".into(),
        match args.basis {
            BasisArg::Exp => "exp",
            BasisArg::Cos => "cos",
            BasisArg::Sin => "sin",
        }
        .into(),
    );
    params.insert(
        "amplitude".into(),
        json!([json_float(amplitude.re), json_float(amplitude.im)]),
    );
    for (name, grid) in [("rho", &rho), ("phi", &phi), ("z", &z)] {
        params.insert(
            name.into(),
            json!({
                "start": json_float(grid[0]),
                "end": json_float(grid[grid.len() - 1]),
                "count": grid.len(),
            }),
        );
    }
    params.insert("format".into(), format_name(args.common.format).into());
    render(&table, "field", params, &args.common)
}

fn cmd_verify(args: &VerifyArgs) -> Result<Output, Failure> {
    let modules = match &args.module {
        Some(name) => vec![name
            .parse::<Module>()
            .map_err(|e| Failure::from_error("--module", e))?],
        None => Vec::new(),
    };
    let results = run_checks(&modules, args.inject_tolerance);
    let mut bytes = Vec::new();
    for r in &results {
        let _ = writeln!(bytes, "{r}");
    }
    let passed = results.iter().filter(|r| r.passed).count();
    let failed = results.len() - passed;
    let rows: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "module": r.module.name(),
                "check": r.name,
                "measured": json_float(r.measured),
                "tolerance": json_float(r.tolerance),
                "passed": r.passed,
            })
        })
        .collect();
    let mut params = Map::new();
    params.insert(
        "module".into(),
        args.module.clone().map_or(Value::Null, Value::from),
    );
    if let Some(t) = args.inject_tolerance {
        params.insert("inject_tolerance".into(), json_float(t));
    }
    let summary = json!({
        "schema": SCHEMA,
        "command": "verify",
        "params": params,
        "passed": passed,
        "failed": failed,
        "rows": rows,
    });
    let _ = writeln!(bytes, "summary: {summary}");
    Ok(Output {
        bytes,
        path: args.out.clone(),
        code: if failed == 0 { 0 } else { 1 },
    })
}

/// Flags whose values are mutually exclusive; setting one on the command line
/// drops the others from the config file.
const EXCLUSIVE: [&[&str]; 1] = [&["omega-max", "freq-max-hz"]];

fn config_path(args: &[OsString]) -> Option<PathBuf> {
    let mut it = args.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(PathBuf::from(v));
        }
    }
    None
}

/// Parses `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, String> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected key=value", i + 1))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() || key == "config" {
            return Err(format!("line {}: invalid key {:?}", i + 1, k.trim()));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

/// Inserts config values as flags right after the subcommand, skipping any
/// flag already given on the command line.
fn merge_config(args: Vec<OsString>, path: &Path) -> Result<Vec<OsString>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("--config: cannot read {}: {e}", path.display())))?;
    let entries = parse_config(&text)
        .map_err(|e| Failure::usage(format!("--config {}: {e}", path.display())))?;
    let given: Vec<String> = args
        .iter()
        .filter_map(|a| a.to_str())
        .filter_map(|a| a.strip_prefix("--"))
        .map(|a| a.split('=').next().unwrap_or(a).to_string())
        .collect();
    let is_given = |key: &str| {
        given.iter().any(|g| g == key)
            || EXCLUSIVE
                .iter()
                .any(|set| set.contains(&key) && set.iter().any(|k| given.iter().any(|g| g == k)))
    };
    let mut injected = Vec::new();
    for (k, v) in entries {
        if !is_given(&k) {
            injected.push(OsString::from(format!("--{k}={v}")));
        }
    }
    let split = args.len().min(2);
    let mut merged: Vec<OsString> = args[..split].to_vec();
    merged.extend(injected);
    merged.extend_from_slice(&args[split..]);
    Ok(merged)
}

fn execute(args: Vec<OsString>) -> Result<Output, Failure> {
    let args = match config_path(&args) {
        Some(p) => merge_config(args, &p)?,
        None => args,
    };
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { 2 } else { 0 };
        Failure {
            code,
            message: e.render().to_string(),
        }
    })?;
    match &cli.command {
        Command::Zeros(a) => cmd_zeros(a),
        Command::Modes(a) => cmd_modes(a),
        Command::Field(a) => cmd_field(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    match execute(args) {
        Ok(o) => {
            let written = match &o.path {
                Some(p) => {
                    fs::write(p, &o.bytes).map_err(|e| format!("cannot write {}: {e}", p.display()))
                }
                None => out
                    .write_all(&o.bytes)
                    .map_err(|e| format!("cannot write output: {e}")),
            };
            match written {
                Ok(()) => o.code,
                Err(m) => {
                    let _ = writeln!(err, "error: {m}");
                    1
                }
            }
        }
        Err(f) if f.code == 0 => {
            // --help and --version
            let _ = write!(out, "{}", f.message);
            0
        }
        Err(f) => {
            let msg = f.message.trim_end();
            if msg.starts_with("error:") {
                let _ = writeln!(err, "{msg}");
            } else {
                let _ = writeln!(err, "error: {msg}");
            }
            f.code
        }
    }
}
