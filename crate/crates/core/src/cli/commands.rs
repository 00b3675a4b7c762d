use std::ffi::OsString;
use std::time::SystemTime;

use rayon::ThreadPool;

use super::output::{emit, render_table, BandsDocument, RunInfo, Table, Value, SCHEMA_VERSION};
use super::{sweep, CliError, Command, Common, DirectionArg, Format, StatisticsArg, THREADS_ENV};
use crate::bands::{default_eps_min, discrete_spectrum_critical, enumerate_bands, Band, EdgeKind, ScanOptions};
use crate::dos::{density_of_states_many, occupation, OccupationSpec, Statistics};
use crate::error::Error;
use crate::limits::{merge, MergeDirection};
use crate::params::Comb;
use crate::units::{to_dimensionless, PhysicalUnitsSpec};

pub(crate) const DEFAULT_EMAX: f64 = 100.0;

pub(crate) fn thread_pool() -> Result<ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::Param(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::Numerical(format!("cannot start worker pool: {e}")))
}

pub(crate) fn scan_options(common: &Common, comb: &Comb) -> ScanOptions {
    let mut opts =
        ScanOptions::new(common.emin.unwrap_or_else(|| default_eps_min(comb)), common.emax.unwrap_or(DEFAULT_EMAX));
    if let Some(tol) = common.tol {
        opts.tol_edge = tol;
    }
    opts
}

fn transparent_comb(common: &Common) -> Result<Comb, CliError> {
    let comb = common.comb()?;
    if comb.is_opaque() {
        return Err(Error::OpaqueRegime.into());
    }
    Ok(comb)
}

fn kind(k: EdgeKind) -> Value {
    Value::Text(match k {
        EdgeKind::Plus => "plus".into(),
        EdgeKind::Minus => "minus".into(),
    })
}

fn band_rows(bands: &[Band]) -> Table {
    let mut t = Table::new(["band", "lower", "upper", "lower_kind", "upper_kind", "width", "curvature_sign"]);
    for b in bands {
        t.rows.push(vec![
            Value::Int(b.index as i64),
            Value::Float(b.lower.epsilon),
            Value::Float(b.upper.epsilon),
            kind(b.lower.kind),
            kind(b.upper.kind),
            Value::Float(b.width()),
            Value::Int(b.curvature_sign as i64),
        ]);
    }
    t
}

struct Emitted {
    data: Vec<u8>,
    rows: usize,
}

fn table_output(table: Table, format: Format, command: &str, comb: Option<&Comb>) -> Result<Emitted, CliError> {
    let rows = table.rows.len();
    Ok(Emitted { data: render_table(&table, format, command, comb)?, rows })
}

pub(crate) fn execute(command: Command, argv: &[OsString]) -> Result<(), CliError> {
    let started = SystemTime::now();
    let pool = thread_pool()?;
    let (name, format, output) = match &command {
        Command::Bands(a) => ("bands", a.common.format, a.common.output.clone()),
        Command::Dispersion(a) => ("dispersion", a.common.format, a.common.output.clone()),
        Command::Dos(a) => ("dos", a.common.format, a.common.output.clone()),
        Command::Discrete(a) => ("discrete", a.common.format, a.common.output.clone()),
        Command::Merge(a) => ("merge", a.common.format, a.common.output.clone()),
        Command::Sweep(a) => ("sweep", a.common.format, a.common.output.clone()),
        Command::Units(a) => ("units", a.format, a.output.clone()),
    };
    let emitted = pool.install(|| -> Result<Emitted, CliError> {
        match command {
            Command::Bands(args) => {
                let comb = transparent_comb(&args.common)?;
                let opts = scan_options(&args.common, &comb);
                let bands = enumerate_bands(&comb, &opts, args.common.grid.unwrap_or(33).max(2))?;
                match format {
                    Format::Json => {
                        let rows = bands.len();
                        let doc = BandsDocument {
                            schema_version: SCHEMA_VERSION,
                            comb,
                            emin: opts.eps_min,
                            emax: opts.eps_max,
                            bands,
                        };
                        Ok(Emitted { data: doc.to_json().into_bytes(), rows })
                    }
                    Format::Csv => table_output(band_rows(&bands), format, name, Some(&comb)),
                }
            }
            Command::Dispersion(args) => {
                let comb = transparent_comb(&args.common)?;
                let opts = scan_options(&args.common, &comb);
                let bands = enumerate_bands(&comb, &opts, args.common.grid.unwrap_or(101).max(2))?;
                for &i in &args.bands {
                    if i >= bands.len() {
                        return Err(CliError::Param(format!(
                            "band {i} is not in the window, which holds {} complete bands",
                            bands.len()
                        )));
                    }
                }
                let mut t = Table::new(["band", "q", "epsilon"]);
                for b in bands.iter().filter(|b| args.bands.is_empty() || args.bands.contains(&b.index)) {
                    for s in &b.samples {
                        t.rows.push(vec![Value::Int(b.index as i64), Value::Float(s.q), Value::Float(s.epsilon)]);
                    }
                }
                table_output(t, format, name, Some(&comb))
            }
            Command::Dos(args) => {
                let comb = transparent_comb(&args.common)?;
                let opts = scan_options(&args.common, &comb);
                let (lo, hi) = (opts.eps_min, opts.eps_max);
                if !(lo <= hi) {
                    return Err(CliError::Param(format!("need emin <= emax, got [{lo}, {hi}]")));
                }
                let n = if lo == hi { 0 } else { args.common.grid.unwrap_or(1001) };
                let energies: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * (i as f64 + 0.5) / n as f64).collect();
                let spec = match args.statistics {
                    Some(s) => Some(OccupationSpec::new(
                        match s {
                            StatisticsArg::FermiDirac => Statistics::FermiDirac,
                            StatisticsArg::BoseEinstein => Statistics::BoseEinstein,
                        },
                        args.mu.unwrap_or_default(),
                        args.temperature.unwrap_or_default(),
                    )?),
                    None => None,
                };
                let samples = density_of_states_many(&energies, &comb)?;
                let mut t = if spec.is_some() {
                    Table::new(["epsilon", "g", "occupation"])
                } else {
                    Table::new(["epsilon", "g"])
                };
                for s in samples {
                    let mut row = vec![Value::Float(s.epsilon), Value::Float(s.g)];
                    if let Some(spec) = &spec {
                        row.push(Value::Float(occupation(s, spec)?.occupation.unwrap_or(f64::NAN)));
                    }
                    t.rows.push(row);
                }
                table_output(t, format, name, Some(&comb))
            }
            Command::Discrete(args) => {
                let comb = args.common.comb()?;
                let Comb::One(p) = comb else {
                    return Err(CliError::Param("the discrete spectrum is defined for one-species combs".into()));
                };
                let roots = discrete_spectrum_critical(&p, args.count)?;
                let mut t = Table::new(["n", "epsilon"]);
                for (i, e) in roots.iter().enumerate() {
                    t.rows.push(vec![Value::Int(i as i64), Value::Float(*e)]);
                }
                table_output(t, format, name, Some(&comb))
            }
            Command::Merge(args) => {
                let comb = args.common.comb()?;
                let Comb::Two(p) = comb else {
                    return Err(CliError::Param("merging needs a two-species comb (--v0, --v1, --d)".into()));
                };
                let directions = match args.direction {
                    DirectionArg::ToZero => vec![MergeDirection::ToZero],
                    DirectionArg::ToA => vec![MergeDirection::ToA],
                    DirectionArg::Both => vec![MergeDirection::ToZero, MergeDirection::ToA],
                };
                let mut t = Table::new(["direction", "u0", "u1"]);
                for dir in directions {
                    let m = merge(&p, dir)?;
                    let label = match dir {
                        MergeDirection::ToZero => "to_zero",
                        MergeDirection::ToA => "to_a",
                    };
                    t.rows.push(vec![Value::Text(label.into()), Value::Float(m.u0), Value::Float(m.u1)]);
                }
                table_output(t, format, name, Some(&comb))
            }
            Command::Sweep(args) => table_output(sweep::run(&args)?, format, name, None),
            Command::Units(args) => {
                let spec = PhysicalUnitsSpec { mu: args.mu, lambda: args.lambda, y0: args.y0, mass: args.mass };
                let p = to_dimensionless(&spec)?;
                let mut t = Table::new(["w0", "w1", "a"]);
                t.rows.push(vec![Value::Float(p.w0), Value::Float(p.w1), Value::Float(p.a)]);
                table_output(t, format, name, None)
            }
        }
    })?;
    let info = RunInfo {
        command: name,
        argv: argv.iter().map(|a| a.to_string_lossy().into_owned()).collect(),
        threads: pool.current_num_threads(),
        rows: emitted.rows,
        started,
    };
    emit(&emitted.data, output.as_deref(), info)
}
