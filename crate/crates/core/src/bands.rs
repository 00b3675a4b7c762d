//! Band edges, allowed bands and dispersion relations.
//!
//! Edges are the roots of `F(eps) = +1` and `F(eps) = -1`. The energy axis is
//! scanned on a grid uniform in the signed momentum `s = sign(eps) sqrt|eps|`
//! (edges are quasi-periodic in `k` with period `pi/a`), every scan cell is
//! split at its midpoint, and each half cell is resolved with at most one
//! critical point of `F`:
//!
//! * a sign change of `F -+ 1` is one edge, refined by bisection;
//! * otherwise, if `F'` changes sign, the extremum is located and `F -+ 1`
//!   evaluated there. Two edges are reported if it crosses, a coincident pair
//!   if it only touches (a gap or band of zero width).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits;
use crate::params::{is_critical, Comb, OneSpecies, TwoSpecies};
use crate::roots::bisect;
use crate::secular::{h_factor, Lattice, SecularValue};

pub const DEFAULT_POINTS_PER_BAND: usize = 64;
pub const DEFAULT_EDGE_TOL: f64 = 1e-10;
pub const MAX_SCAN_CELLS: f64 = 1e7;

/// `|F -+ 1|` at an extremum below which it counts as a touching.
const TANGENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// `F = +1`, `q = 0`
    Plus,
    /// `F = -1`, `q = pi/a`
    Minus,
}

impl EdgeKind {
    pub(crate) fn target(self) -> f64 {
        match self {
            EdgeKind::Plus => 1.0,
            EdgeKind::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandEdge {
    pub epsilon: f64,
    pub kind: EdgeKind,
    pub bracket: (f64, f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DispersionSample {
    pub q: f64,
    pub epsilon: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub index: usize,
    pub lower: BandEdge,
    pub upper: BandEdge,
    /// `(q, eps)` on `[0, pi/a]`, `q` increasing.
    pub samples: Vec<DispersionSample>,
    /// Sign of `d^2 eps / dq^2` at `q = 0`; zero for a flat band.
    pub curvature_sign: i8,
}

impl Band {
    pub fn width(&self) -> f64 {
        self.upper.epsilon - self.lower.epsilon
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.upper.epsilon + self.lower.epsilon)
    }

    /// The `eps` interval on which `|F| <= 1` is guaranteed by the edge brackets.
    pub fn inner_interval(&self) -> (f64, f64) {
        (self.lower.bracket.1.min(self.upper.epsilon), self.upper.bracket.0.max(self.lower.epsilon))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    pub eps_min: f64,
    pub eps_max: f64,
    pub points_per_band: usize,
    pub tol_edge: f64,
}

impl ScanOptions {
    pub fn new(eps_min: f64, eps_max: f64) -> Self {
        Self { eps_min, eps_max, points_per_band: DEFAULT_POINTS_PER_BAND, tol_edge: DEFAULT_EDGE_TOL }
    }

    /// Window from a heuristic lower bound below every bound-state band up to `eps_max`.
    pub fn below_bound_states(comb: &Comb, eps_max: f64) -> Self {
        Self::new(default_eps_min(comb), eps_max)
    }

    fn validate(&self) -> Result<()> {
        if !(self.eps_min < self.eps_max) || !self.eps_min.is_finite() || !self.eps_max.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "energy window must satisfy emin < emax, got [{}, {}]",
                self.eps_min, self.eps_max
            )));
        }
        if self.points_per_band < 10 {
            return Err(Error::InvalidParameter(format!(
                "need at least 10 scan points per band, got {}",
                self.points_per_band
            )));
        }
        if !(self.tol_edge > 0.0) {
            return Err(Error::InvalidParameter("edge tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// An energy below which `|F| > 1`, so no band lies lower.
///
/// For `eps = -kappa^2` and large `kappa`, `2 F e^{-kappa a} / (f(w1) f(v1))`
/// tends to `(1 + w0 h(w1) / 2 kappa)(1 + v0 h(v1) / 2 kappa)` up to terms of
/// order `e^{-2 kappa min(d, a - d)}`. Past four times the largest node bound
/// state momentum, and once the exponential terms are below 1/4, `|F|`
/// exceeds `e^{kappa a} / 8`. When the nodes nearly touch, the pair acts as
/// the merged node long before that, and its bound state sets the scale.
pub fn default_eps_min(comb: &Comb) -> f64 {
    let kappa = match comb {
        Comb::One(p) => (2.0 * p.w0.abs() * h_factor(p.w1)).max(3.0 / p.a),
        Comb::Two(p) => {
            let (hw, hv) = (h_factor(p.w1), h_factor(p.v1));
            let nodes = 2.0 * (p.w0.abs() * hw).max(p.v0.abs() * hv);
            let skew = ((p.v0 * p.w1 - p.v1 * p.w0) * hw * hv).abs()
                + (4.0 * p.w1 * p.v1 * hw * hv).abs()
                + (p.w0 * p.v0 * hw * hv).abs();
            let decoupled = (4.0 * skew + 1.0).ln() / (2.0 * p.d.min(p.a - p.d));
            let merged = [limits::merge_d_to_zero(p), limits::merge_d_to_a(p)]
                .into_iter()
                .map(|m| m.map_or(f64::INFINITY, |m| 2.0 * m.u0.abs() * h_factor(m.u1)))
                .fold(0.0, f64::max);
            nodes.max(3.0 / p.a).max(decoupled.min(merged))
        }
    };
    let kappa = 2.0 * kappa.max(1.0) + 1.0;
    -kappa * kappa
}

#[derive(Debug, Clone, Copy)]
struct Point {
    eps: f64,
    f: f64,
    df: f64,
}

fn point<L: Lattice + ?Sized>(lattice: &L, eps: f64) -> Result<Point> {
    let SecularValue { value, derivative, .. } = lattice.secular(eps)?;
    if !value.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "band function overflows at eps = {eps}; raise the lower energy limit"
        )));
    }
    Ok(Point { eps, f: value, df: derivative.unwrap_or(f64::NAN) })
}

fn signed_sqrt(eps: f64) -> f64 {
    eps.signum() * eps.abs().sqrt()
}

fn scan_grid(opts: &ScanOptions, a: f64) -> Result<Vec<f64>> {
    let (s0, s1) = (signed_sqrt(opts.eps_min), signed_sqrt(opts.eps_max));
    let step = PI / (a * opts.points_per_band as f64);
    let cells = ((s1 - s0) / step).ceil().max(1.0);
    if cells > MAX_SCAN_CELLS {
        return Err(Error::InvalidParameter(format!(
            "energy window [{}, {}] needs {cells:e} scan cells, limit is {MAX_SCAN_CELLS:e}",
            opts.eps_min, opts.eps_max
        )));
    }
    let cells = cells as usize;
    let mut grid: Vec<f64> = (0..=cells)
        .map(|i| {
            let s = s0 + (s1 - s0) * i as f64 / cells as f64;
            s * s.abs()
        })
        .collect();
    grid[0] = opts.eps_min;
    grid[cells] = opts.eps_max;
    Ok(grid)
}

fn resolve_half_cell<L: Lattice + ?Sized>(
    lattice: &L,
    lo: Point,
    hi: Point,
    tol: f64,
    edges: &mut Vec<BandEdge>,
) -> Result<()> {
    for kind in [EdgeKind::Plus, EdgeKind::Minus] {
        let c = kind.target();
        let g = |eps: f64| -> Result<f64> { Ok(lattice.secular(eps)?.value - c) };
        let (g_lo, g_hi) = (lo.f - c, hi.f - c);
        if (g_lo > 0.0) != (g_hi > 0.0) {
            let bracket = bisect(g, lo.eps, hi.eps, g_lo, tol)?;
            edges.push(edge(kind, bracket));
        } else if (lo.df > 0.0) != (hi.df > 0.0) {
            let slope = |eps: f64| -> Result<f64> { Ok(lattice.secular(eps)?.derivative.unwrap_or(f64::NAN)) };
            let (x_lo, x_hi) = bisect(slope, lo.eps, hi.eps, lo.df, tol)?;
            let x = 0.5 * (x_lo + x_hi);
            let g_x = lattice.secular(x)?.value - c;
            if g_x.abs() <= TANGENCY_TOL {
                edges.push(edge(kind, (x_lo, x_hi)));
                edges.push(edge(kind, (x_lo, x_hi)));
            } else if (g_x > 0.0) != (g_lo > 0.0) {
                edges.push(edge(kind, bisect(g, lo.eps, x, g_lo, tol)?));
                edges.push(edge(kind, bisect(g, x, hi.eps, g_x, tol)?));
            }
        }
    }
    Ok(())
}

fn edge(kind: EdgeKind, bracket: (f64, f64)) -> BandEdge {
    BandEdge { epsilon: 0.5 * (bracket.0 + bracket.1), kind, bracket }
}

/// All solutions of `|F(eps)| = 1` in the scan window, in increasing order.
pub fn find_band_edges<L: Lattice + ?Sized>(lattice: &L, opts: &ScanOptions) -> Result<Vec<BandEdge>> {
    opts.validate()?;
    if lattice.is_opaque() {
        return Err(Error::OpaqueRegime);
    }
    let grid = scan_grid(opts, lattice.lattice_spacing())?;
    let mut edges = Vec::new();
    let mut lo = point(lattice, grid[0])?;
    for &eps_hi in &grid[1..] {
        let hi = point(lattice, eps_hi)?;
        let mid = point(lattice, 0.5 * (lo.eps + hi.eps))?;
        let turns = [(lo, mid), (mid, hi)].iter().filter(|(x, y)| (x.df > 0.0) != (y.df > 0.0)).count();
        if turns == 2 && ((lo.df > 0.0) == (hi.df > 0.0)) && near_unit(&[lo, mid, hi]) {
            return Err(Error::ScanTooCoarse { epsilon: mid.eps });
        }
        resolve_half_cell(lattice, lo, mid, opts.tol_edge, &mut edges)?;
        resolve_half_cell(lattice, mid, hi, opts.tol_edge, &mut edges)?;
        lo = hi;
    }
    edges.sort_by(|a, b| a.epsilon.total_cmp(&b.epsilon));
    Ok(edges)
}

// Two extrema in one cell only matter when F can reach +-1 there.
fn near_unit(points: &[Point]) -> bool {
    points.iter().any(|p| (p.f.abs() - 1.0).abs() < 1.0)
}

/// Allowed intervals in the window, including ones cut by the window limits.
pub fn allowed_intervals<L: Lattice + ?Sized>(lattice: &L, opts: &ScanOptions) -> Result<Vec<(f64, f64)>> {
    let edges = find_band_edges(lattice, opts)?;
    let mut out = Vec::new();
    let mut open = lattice.secular(opts.eps_min)?.is_allowed().then_some(opts.eps_min);
    for e in &edges {
        match open.take() {
            Some(start) => out.push((start, e.epsilon)),
            None => open = Some(e.epsilon),
        }
    }
    if let Some(start) = open {
        out.push((start, opts.eps_max));
    }
    Ok(out)
}

/// Total length of `|F| > 1` inside the window.
pub fn forbidden_measure<L: Lattice + ?Sized>(lattice: &L, opts: &ScanOptions) -> Result<f64> {
    let allowed: f64 = allowed_intervals(lattice, opts)?.iter().map(|(a, b)| b - a).sum();
    Ok((opts.eps_max - opts.eps_min - allowed).max(0.0))
}

/// Complete bands in the window, each sampled at `n_samples` uniformly spaced `q`.
pub fn enumerate_bands<L: Lattice + ?Sized>(lattice: &L, opts: &ScanOptions, n_samples: usize) -> Result<Vec<Band>> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 samples per band, got {n_samples}")));
    }
    let edges = find_band_edges(lattice, opts)?;
    let mut open: Option<Option<BandEdge>> = lattice.secular(opts.eps_min)?.is_allowed().then_some(None);
    let mut bands = Vec::new();
    for e in edges {
        match open.take() {
            Some(Some(lower)) => {
                let index = bands.len();
                bands.push(build_band(lattice, index, lower, e, n_samples, opts.tol_edge)?);
            }
            // band cut off by the lower window limit
            Some(None) => {}
            None => open = Some(Some(e)),
        }
    }
    Ok(bands)
}

fn build_band<L: Lattice + ?Sized>(
    lattice: &L,
    index: usize,
    lower: BandEdge,
    upper: BandEdge,
    n_samples: usize,
    tol: f64,
) -> Result<Band> {
    let a = lattice.lattice_spacing();
    let q_max = PI / a;
    let samples = (0..n_samples)
        .map(|j| {
            let q = q_max * j as f64 / (n_samples - 1) as f64;
            let epsilon = if j == 0 {
                zero_q_edge(&lower, &upper).epsilon
            } else if j == n_samples - 1 {
                zone_edge(&lower, &upper).epsilon
            } else {
                energy_at(lattice, &lower, &upper, q, tol)?
            };
            Ok(DispersionSample { q, epsilon })
        })
        .collect::<Result<Vec<_>>>()?;
    let curvature_sign = curvature_at_zero(lattice, &lower, &upper)?;
    Ok(Band { index, lower, upper, samples, curvature_sign })
}

fn zero_q_edge<'a>(lower: &'a BandEdge, upper: &'a BandEdge) -> &'a BandEdge {
    if lower.kind == EdgeKind::Plus {
        lower
    } else {
        upper
    }
}

fn zone_edge<'a>(lower: &'a BandEdge, upper: &'a BandEdge) -> &'a BandEdge {
    if lower.kind == EdgeKind::Plus {
        upper
    } else {
        lower
    }
}

/// Solves `F(eps) = cos(q a)` inside the band; `F` is monotone there.
fn energy_at<L: Lattice + ?Sized>(lattice: &L, lower: &BandEdge, upper: &BandEdge, q: f64, tol: f64) -> Result<f64> {
    let target = (q * lattice.lattice_spacing()).cos();
    let (lo, hi) = (lower.epsilon, upper.epsilon);
    if hi <= lo {
        return Ok(lo);
    }
    let g = |eps: f64| -> Result<f64> { Ok(lattice.secular(eps)?.value - target) };
    // sign of F - target at the lower edge is fixed by which edge it is
    let g_lo = lower.kind.target() - target;
    let (x, y) = bisect(g, lo, hi, g_lo, tol)?;
    Ok(0.5 * (x + y))
}

/// Second difference of `eps(q)` on `q = 0, h, 2h`.
fn curvature_at_zero<L: Lattice + ?Sized>(lattice: &L, lower: &BandEdge, upper: &BandEdge) -> Result<i8> {
    if upper.epsilon <= lower.epsilon {
        return Ok(0);
    }
    let h = 1e-3 * PI / lattice.lattice_spacing();
    let e0 = zero_q_edge(lower, upper).epsilon;
    let e1 = energy_at(lattice, lower, upper, h, 0.0)?;
    let e2 = energy_at(lattice, lower, upper, 2.0 * h, 0.0)?;
    let second = e2 - 2.0 * e1 + e0;
    Ok(if second > 0.0 {
        1
    } else if second < 0.0 {
        -1
    } else {
        0
    })
}

/// Gaps between consecutive bands, `lower(n+1) - upper(n)`.
pub fn gap_widths(bands: &[Band]) -> Vec<f64> {
    bands.windows(2).map(|w| w[1].lower.epsilon - w[0].upper.epsilon).collect()
}

/// Eigenvalues of the opaque comb (`|w1| = 1`): the lowest `count` roots of
/// `tan(ka)/(ka) = -4/(w0 a)`, returned as energies `k^2` in increasing order.
///
/// For `w0 a < -4` the lowest root is on the imaginary axis,
/// `tanh(kappa a)/(kappa a) = -4/(w0 a)`, a negative energy.
pub fn discrete_spectrum_critical(p: &OneSpecies, count: usize) -> Result<Vec<f64>> {
    if !is_critical(p.w1) {
        return Err(Error::NotCritical { w1: p.w1 });
    }
    let (w0a, a) = (p.w0 * p.a, p.a);
    // w0 a sin(x) + 4 x cos(x) = 0 has the same positive roots and no poles
    let g = |x: f64| -> Result<f64> { Ok(w0a * x.sin() + 4.0 * x * x.cos()) };
    let half = 0.5 * PI;
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return Ok(out);
    }
    if w0a < -4.0 {
        let h = |y: f64| -> Result<f64> { Ok(w0a * y.tanh() + 4.0 * y) };
        let lo = 1e-9;
        let (x, y) = bisect(h, lo, 0.25 * w0a.abs() + 1.0, h(lo)?, 0.0)?;
        let kappa = 0.5 * (x + y) / a;
        out.push(-kappa * kappa);
    }
    let mut roots = Vec::with_capacity(count);
    if w0a == 0.0 {
        roots.extend((0..count - out.len()).map(|n| (n as f64 + 0.5) * PI));
    } else {
        // (0, pi/2) holds a root only when -4 < w0 a < 0
        if w0a > -4.0 && w0a < 0.0 {
            let lo = 1e-9;
            let (x, y) = bisect(g, lo, half, g(lo)?, 0.0)?;
            roots.push(0.5 * (x + y));
        }
        let mut n = 1;
        while out.len() + roots.len() < count {
            let (lo, hi) = (n as f64 * PI - half, n as f64 * PI + half);
            let (x, y) = bisect(g, lo, hi, g(lo)?, 0.0)?;
            roots.push(0.5 * (x + y));
            n += 1;
        }
    }
    out.extend(roots.into_iter().map(|x| (x / a) * (x / a)));
    Ok(out)
}

/// Shape of the lowest band of an attractive pure-delta comb.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "regime")]
pub enum NegativeBandRegime {
    /// The band contains `eps = 0` (`|w0| a < 4`).
    Straddling,
    /// Entirely negative, `F(i kappa)` increasing on `kappa > 0` (`4 < |w0| a < 6`).
    Detached,
    /// Entirely negative; `F(i kappa)` has a maximum at `kappa = 0` and its
    /// minimum at `kappa0 > 0` (`|w0| a > 6`).
    DetachedWithInteriorMax { kappa0: f64 },
}

pub fn classify_negative_band(p: &OneSpecies) -> Result<NegativeBandRegime> {
    if p.w1 != 0.0 {
        return Err(Error::InvalidRegime(format!("classification needs w1 = 0, got {}", p.w1)));
    }
    if p.w0 >= 0.0 {
        return Err(Error::InvalidRegime(format!("classification needs w0 < 0, got {}", p.w0)));
    }
    let comb = Comb::One(*p);
    let top = (PI / p.a).powi(2) + 1.0;
    let opts = ScanOptions::below_bound_states(&comb, top);
    let bands = enumerate_bands(p, &opts, 2)?;
    let lowest =
        bands.first().ok_or_else(|| Error::InvalidRegime("no band found below the first zone boundary".into()))?;
    if lowest.lower.epsilon < 0.0 && lowest.upper.epsilon >= 0.0 {
        return Ok(NegativeBandRegime::Straddling);
    }
    // dF/deps > 0 at eps = 0 means F(i kappa) decreases away from kappa = 0
    if p.secular(0.0)?.slope() <= 0.0 {
        return Ok(NegativeBandRegime::Detached);
    }
    let slope = |eps: f64| -> Result<f64> { Ok(p.secular(eps)?.slope()) };
    let lo = opts.eps_min;
    let (x, y) = bisect(slope, lo, 0.0, p.secular(lo)?.slope(), 0.0)?;
    Ok(NegativeBandRegime::DetachedWithInteriorMax { kappa0: (-0.5 * (x + y)).sqrt() })
}

/// Convenience for two-species combs, which share the one-species scanning.
pub fn enumerate_two_species(p: &TwoSpecies, eps_max: f64, n_samples: usize) -> Result<Vec<Band>> {
    let opts = ScanOptions::below_bound_states(&Comb::Two(*p), eps_max);
    enumerate_bands(p, &opts, n_samples)
}
