//! Limit cycles as sign changes of the displacement on the positive semiaxis.

use num_complex::Complex64;
use serde::Serialize;

use super::{admissible_radius, displacement, integrate, IntegratorOptions, TWO_PI};
use crate::error::PoincareError;
use crate::field::{lambda1_gate, FieldParams, TameRegion};
use crate::parallel::par_map;

pub const DEFAULT_GRID_POINTS: usize = 2048;
pub const DEFAULT_X_MIN: f64 = 1e-6;
const GEOMETRIC_TOP: f64 = 1e-2;
const BISECTION_REL: f64 = 1e-10;
const MERGE_DISTANCE: f64 = 1e-8;
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TameClassification {
    pub tame: bool,
    pub min_singular_distance: f64,
    pub max_radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitCycleRecord {
    pub x_star: f64,
    pub residual: f64,
    /// Sign of the derivative of the displacement at `x_star`; `−1` is an
    /// attracting cycle.
    pub stability: i8,
    pub tame: bool,
    pub min_singular_distance: f64,
    pub max_radius: f64,
}

/// An interval of the grid on which the integration failed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hole {
    pub x_lo: f64,
    pub x_hi: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CycleSearch {
    pub cycles: Vec<LimitCycleRecord>,
    pub holes: Vec<Hole>,
    /// Grid intervals on which the displacement is numerically zero.
    pub degenerate_zero_intervals: Vec<(f64, f64)>,
    /// Largest tame `x_star`, the right end of the segment in `K`.
    pub outermost_tame: Option<f64>,
    pub grid_points: usize,
    /// False when `λ₁ > 4/δ`; the search is then skipped.
    pub gate_open: bool,
}

/// Geometric from `x_min` to `10⁻²`, uniform from there to `x_max`.
fn cycle_grid(x_min: f64, x_max: f64, n: usize) -> Vec<f64> {
    if x_max <= GEOMETRIC_TOP || x_min >= GEOMETRIC_TOP {
        let (lo, hi) = (x_min, x_max);
        return (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64)).collect();
    }
    let n_geo = n / 2;
    let n_uni = n - n_geo;
    let mut out: Vec<f64> = (0..n_geo).map(|i| x_min * (GEOMETRIC_TOP / x_min).powf(i as f64 / n_geo as f64)).collect();
    out.extend((0..n_uni).map(|i| GEOMETRIC_TOP + (x_max - GEOMETRIC_TOP) * i as f64 / (n_uni - 1) as f64));
    out
}

fn real_displacement(field: &FieldParams, x: f64, opts: &IntegratorOptions) -> Result<f64, PoincareError> {
    Ok(displacement(field, Complex64::new(x, 0.0), opts)?.re)
}

/// Numerical zero level of the displacement at `x`.
fn zero_level(x: f64, opts: &IntegratorOptions) -> f64 {
    1e3 * opts.rel_tol * x
}

/// Integrates the real orbit through `(x_star, 0)` and checks it against the
/// tame region.
pub fn classify_tame(field: &FieldParams, delta: f64, x_star: f64, opts: &IntegratorOptions) -> Result<TameClassification, PoincareError> {
    let region = TameRegion::new(field, delta);
    let traj = integrate(field, Complex64::new(x_star, 0.0), &IntegratorOptions { record: true, ..*opts })?;
    let mut min_d = f64::INFINITY;
    let mut max_r: f64 = 0.0;
    for s in &traj.samples {
        let z = s.w * Complex64::from_polar(1.0, s.theta);
        max_r = max_r.max(s.w.norm());
        min_d = min_d.min(region.singular_distance(z));
    }
    Ok(TameClassification { tame: max_r <= 1.0 / delta && min_d >= delta, min_singular_distance: min_d, max_radius: max_r })
}

fn bisect(field: &FieldParams, mut lo: f64, mut hi: f64, mut d_lo: f64, opts: &IntegratorOptions) -> Result<(f64, f64, f64), PoincareError> {
    let d_hi0 = real_displacement(field, hi, opts)?;
    let slope_sign = (d_hi0 - d_lo).signum();
    while hi - lo > BISECTION_REL * hi {
        let mid = 0.5 * (lo + hi);
        let d = real_displacement(field, mid, opts)?;
        if d == 0.0 {
            return Ok((mid, 0.0, slope_sign));
        }
        if d.signum() == d_lo.signum() {
            lo = mid;
            d_lo = d;
        } else {
            hi = mid;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, real_displacement(field, x, opts)?.abs(), slope_sign))
}

/// Samples the displacement on `[x_min, δ⁻¹]`, brackets sign changes and
/// refines them by bisection.
pub fn find_cycles(
    field: &FieldParams,
    delta: f64,
    x_min: f64,
    grid_points: usize,
    opts: &IntegratorOptions,
) -> Result<CycleSearch, PoincareError> {
    if !(delta > 0.0 && delta < 1.0) || !(x_min > 0.0) || x_min >= 1.0 / delta || grid_points < 4 {
        return Err(PoincareError::Precondition("need 0 < delta < 1, 0 < x_min < 1/delta, grid_points >= 4".into()));
    }
    if !lambda1_gate(field, delta) {
        return Ok(CycleSearch {
            cycles: vec![],
            holes: vec![],
            degenerate_zero_intervals: vec![],
            outermost_tame: None,
            grid_points,
            gate_open: false,
        });
    }
    let grid = cycle_grid(x_min, 1.0 / delta, grid_points);
    let values: Vec<Result<f64, PoincareError>> = par_map(&grid, |&x| real_displacement(field, x, opts));

    let mut holes = Vec::new();
    let mut zero_runs = Vec::new();
    // classify every sample: Some(sign) or None for a failed integration; sign 0 is numerically zero
    let signs: Vec<Option<i8>> = grid
        .iter()
        .zip(&values)
        .map(|(&x, v)| match v {
            Ok(d) if d.abs() <= zero_level(x, opts) => Some(0),
            Ok(d) => Some(if *d > 0.0 { 1 } else { -1 }),
            Err(_) => None,
        })
        .collect();

    let mut i = 0;
    while i < grid.len() {
        match signs[i] {
            None => {
                let start = i;
                while i < grid.len() && signs[i].is_none() {
                    i += 1;
                }
                let reason = match &values[start] {
                    Err(e) => e.to_string(),
                    Ok(_) => unreachable!(),
                };
                let lo = if start > 0 { grid[start - 1] } else { grid[start] };
                let hi = if i < grid.len() { grid[i] } else { grid[i - 1] };
                holes.push(Hole { x_lo: lo, x_hi: hi, reason });
            }
            Some(0) => {
                let start = i;
                while i < grid.len() && signs[i] == Some(0) {
                    i += 1;
                }
                if i - start >= 3 {
                    zero_runs.push((grid[start], grid[i - 1]));
                }
            }
            _ => i += 1,
        }
    }

    // brackets between consecutive nonzero samples, not across holes or zero runs
    let mut brackets = Vec::new();
    let mut last: Option<(usize, i8)> = None;
    let mut zeros_since = 0;
    for (k, s) in signs.iter().enumerate() {
        match s {
            None => {
                last = None;
                zeros_since = 0;
            }
            Some(0) => zeros_since += 1,
            Some(sg) => {
                if let Some((j, prev)) = last {
                    if prev != *sg && zeros_since < 3 {
                        brackets.push((j, k));
                    }
                }
                last = Some((k, *sg));
                zeros_since = 0;
            }
        }
    }

    let refined: Vec<Result<(f64, f64, f64), PoincareError>> = par_map(&brackets, |&(j, k)| {
        let d_lo = *values[j].as_ref().expect("bracket end integrated");
        bisect(field, grid[j], grid[k], d_lo, opts)
    });
    let mut cycles: Vec<LimitCycleRecord> = Vec::new();
    for (r, &(j, k)) in refined.into_iter().zip(&brackets) {
        let (x, residual, slope) = match r {
            Ok(v) => v,
            Err(e) => {
                holes.push(Hole { x_lo: grid[j], x_hi: grid[k], reason: e.to_string() });
                continue;
            }
        };
        if residual > RESIDUAL_TOL || cycles.iter().any(|c| (c.x_star - x).abs() < MERGE_DISTANCE) {
            continue;
        }
        let cls = match classify_tame(field, delta, x, opts) {
            Ok(c) => c,
            Err(e) => {
                holes.push(Hole { x_lo: grid[j], x_hi: grid[k], reason: e.to_string() });
                continue;
            }
        };
        cycles.push(LimitCycleRecord {
            x_star: x,
            residual,
            stability: slope as i8,
            tame: cls.tame,
            min_singular_distance: cls.min_singular_distance,
            max_radius: cls.max_radius,
        });
    }
    holes.sort_by(|a, b| a.x_lo.partial_cmp(&b.x_lo).unwrap());
    let outermost_tame = cycles.iter().filter(|c| c.tame).map(|c| c.x_star).fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
    Ok(CycleSearch { cycles, holes, degenerate_zero_intervals: zero_runs, outermost_tame, grid_points, gate_open: true })
}

/// Where [`max_displacement`] samples.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Region {
    /// `K = [0, a] ∪ D_ε`; `a = None` leaves only the disc.
    K { a: Option<f64> },
    /// Boundary of the `gap`-neighbourhood of `K`.
    U { a: Option<f64>, gap: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxDisplacement {
    pub value: f64,
    pub argmax: Complex64,
    pub samples: usize,
    pub failures: usize,
    /// True when no segment was available and `K` is the disc alone.
    pub disc_only: bool,
}

fn circle(radius: f64, n: usize) -> impl Iterator<Item = Complex64> {
    (0..n).map(move |k| Complex64::from_polar(radius, TWO_PI * k as f64 / n as f64))
}

/// Sampled `max |P(w) − w|` over `K` or over the boundary of a neighbourhood
/// of `K`; `n` is the number of samples per piece.
pub fn max_displacement(field: &FieldParams, region: Region, n: usize, opts: &IntegratorOptions) -> Result<MaxDisplacement, PoincareError> {
    let eps = admissible_radius(field.lambda1);
    let n = n.max(4);
    let mut points: Vec<Complex64> = Vec::new();
    let disc_only;
    match region {
        Region::K { a } => {
            disc_only = a.is_none();
            points.extend(circle(eps, n));
            if let Some(a) = a {
                points.extend((0..=n).map(|k| Complex64::new(a * k as f64 / n as f64, 0.0)));
            }
        }
        Region::U { a, gap } => {
            if !(gap > 0.0) {
                return Err(PoincareError::Precondition("gap must be positive".into()));
            }
            disc_only = a.is_none();
            let r = eps + gap;
            let a = a.unwrap_or(0.0);
            // circle of radius ε + gap outside the stadium, stadium outside the circle
            let in_stadium = |z: Complex64| {
                let t = z.re.clamp(0.0, a);
                (z - Complex64::new(t, 0.0)).norm() < gap * (1.0 - 1e-12)
            };
            points.extend(circle(r, n).filter(|z| !in_stadium(*z)));
            if a > 0.0 {
                let mut stadium: Vec<Complex64> = Vec::new();
                stadium.extend((0..=n).map(|k| Complex64::new(a * k as f64 / n as f64, gap)));
                stadium.extend((0..=n).map(|k| Complex64::new(a * k as f64 / n as f64, -gap)));
                stadium.extend((0..=n / 2).map(|k| Complex64::new(a, 0.0) + Complex64::from_polar(gap, -TWO_PI / 4.0 + TWO_PI / 2.0 * k as f64 / (n / 2) as f64)));
                stadium.extend((0..=n / 2).map(|k| Complex64::from_polar(gap, TWO_PI / 4.0 + TWO_PI / 2.0 * k as f64 / (n / 2) as f64)));
                points.extend(stadium.into_iter().filter(|z| z.norm() > r * (1.0 - 1e-12)));
            }
        }
    }
    let vals = par_map(&points, |&w| displacement(field, w, opts).map(|d| d.norm()));
    let mut best = (0.0, Complex64::new(0.0, 0.0));
    let mut failures = 0;
    for (v, w) in vals.into_iter().zip(&points) {
        match v {
            Ok(d) if d > best.0 => best = (d, *w),
            Ok(_) => {}
            Err(_) => failures += 1,
        }
    }
    Ok(MaxDisplacement { value: best.0, argmax: best.1, samples: points.len(), failures, disc_only })
}
