//! Parameter sweeps. Cells are evaluated in parallel; rows come out in grid
//! order (first axis outermost).

use rayon::prelude::*;

use super::commands::scan_options;
use super::output::{Table, Value};
use super::{CliError, Common, Quantity, SweepArgs};
use crate::bands::{enumerate_bands, gap_widths};
use crate::error::Error;
use crate::secular::Lattice;

pub const MAX_CELLS: u64 = 10_000_000;

const NAMES: [&str; 7] = ["w0", "w1", "v0", "v1", "d", "a", "eps"];

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Axis {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let bad = || CliError::Param(format!("axis must be NAME:MIN:MAX:STEPS, got {spec:?}"));
        let parts: Vec<&str> = spec.split(':').collect();
        let [name, min, max, steps] = parts[..] else {
            return Err(bad());
        };
        if !NAMES.contains(&name) {
            return Err(CliError::Param(format!("unknown sweep parameter {name:?}, expected one of {NAMES:?}")));
        }
        let min: f64 = min.parse().map_err(|_| bad())?;
        let max: f64 = max.parse().map_err(|_| bad())?;
        let steps: usize = steps.parse().map_err(|_| bad())?;
        if steps == 0 || !min.is_finite() || !max.is_finite() {
            return Err(CliError::Param(format!("axis {name} needs finite limits and at least one step")));
        }
        if steps > 1 && !(min < max) {
            return Err(CliError::Param(format!("axis {name} needs min < max, got {min} and {max}")));
        }
        Ok(Self { name: name.to_string(), min, max, steps })
    }

    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        (0..self.steps).map(|i| self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64).collect()
    }
}

fn with_param(common: &Common, name: &str, value: f64) -> Common {
    let mut c = common.clone();
    let slot = match name {
        "w0" => &mut c.w0,
        "w1" => &mut c.w1,
        "v0" => &mut c.v0,
        "v1" => &mut c.v1,
        "d" => &mut c.d,
        "a" => &mut c.a,
        _ => return c,
    };
    *slot = Some(value);
    c
}

// Errors that mark a single grid point as undefined rather than aborting the sweep.
fn is_local(e: &Error) -> bool {
    matches!(e, Error::OpaqueRegime | Error::InvalidParameter(_))
}

fn cell_rows(args: &SweepArgs, axes: &[Axis], coords: &[f64]) -> Result<Vec<Vec<Value>>, CliError> {
    let mut common = args.common.clone();
    let mut eps = None;
    for (axis, &v) in axes.iter().zip(coords) {
        if axis.name == "eps" {
            eps = Some(v);
        } else {
            common = with_param(&common, &axis.name, v);
        }
    }
    let prefix: Vec<Value> = coords.iter().map(|&v| Value::Float(v)).collect();
    let row = |tail: Vec<Value>| prefix.iter().cloned().chain(tail).collect::<Vec<_>>();
    let comb = match common.comb() {
        Ok(c) => c,
        Err(CliError::Param(_)) => return Ok(undefined(args.quantity, row)),
        Err(e) => return Err(e),
    };
    let result = match args.quantity {
        Quantity::BandMask => {
            let eps = eps.expect("checked before the sweep");
            comb.secular(eps).map(|v| vec![row(vec![Value::Int(v.is_allowed() as i64)])])
        }
        Quantity::GapWidths => enumerate_bands(&comb, &scan_options(&common, &comb), 2).map(|bands| {
            gap_widths(&bands)
                .into_iter()
                .enumerate()
                .map(|(i, w)| row(vec![Value::Int(i as i64), Value::Float(w)]))
                .collect()
        }),
        Quantity::CurvatureSign => enumerate_bands(&comb, &scan_options(&common, &comb), 2).map(|bands| {
            let sign = bands.get(args.band).map_or(Value::Float(f64::NAN), |b| Value::Int(b.curvature_sign as i64));
            vec![row(vec![sign])]
        }),
    };
    match result {
        Ok(rows) => Ok(rows),
        Err(e) if is_local(&e) => Ok(undefined(args.quantity, row)),
        Err(e) => Err(e.into()),
    }
}

fn undefined(quantity: Quantity, row: impl Fn(Vec<Value>) -> Vec<Value>) -> Vec<Vec<Value>> {
    match quantity {
        Quantity::GapWidths => Vec::new(),
        _ => vec![row(vec![Value::Float(f64::NAN)])],
    }
}

pub(crate) fn run(args: &SweepArgs) -> Result<Table, CliError> {
    let mut axes = vec![Axis::parse(&args.x)?];
    if let Some(y) = &args.y {
        axes.push(Axis::parse(y)?);
    }
    let has_eps = axes.iter().any(|a| a.name == "eps");
    match args.quantity {
        Quantity::BandMask if !has_eps => {
            return Err(CliError::Param("band-mask needs an eps axis".into()));
        }
        Quantity::GapWidths | Quantity::CurvatureSign if has_eps => {
            return Err(CliError::Param("eps cannot be swept for gap widths or curvature".into()));
        }
        _ => {}
    }
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(CliError::Param("the two sweep axes must differ".into()));
    }
    let cells = axes.iter().map(|a| a.steps as u64).fold(1u64, u64::saturating_mul);
    if cells > MAX_CELLS {
        return Err(Error::GridTooLarge { cells, limit: MAX_CELLS }.into());
    }

    let xs = axes[0].values();
    let ys = axes.get(1).map(Axis::values);
    let coords: Vec<Vec<f64>> = match &ys {
        Some(ys) => xs.iter().flat_map(|&x| ys.iter().map(move |&y| vec![x, y])).collect(),
        None => xs.iter().map(|&x| vec![x]).collect(),
    };
    let per_cell: Vec<Vec<Vec<Value>>> =
        coords.par_iter().map(|c| cell_rows(args, &axes, c)).collect::<Result<_, _>>()?;

    let mut columns: Vec<String> = axes.iter().map(|a| a.name.clone()).collect();
    match args.quantity {
        Quantity::BandMask => columns.push("allowed".into()),
        Quantity::GapWidths => columns.extend(["gap".into(), "width".into()]),
        Quantity::CurvatureSign => columns.push("curvature_sign".into()),
    }
    Ok(Table { columns, rows: per_cell.into_iter().flatten().collect() })
}
