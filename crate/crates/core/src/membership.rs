//! Evidence-grade class membership: minimum real-part margins on disk grids,
//! the Δ-region sufficient condition for generators, and the Berkson–Porta
//! factor of a normalized generator.
//!
//! Every verdict here is numerical evidence, never a proof. The defining
//! conditions are open half-plane conditions whose minima sit near the
//! boundary, so the default rings cluster towards `|z| = 1`.

use std::f64::consts::PI;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operators::{g_operator, ClassParams};
use crate::series::{NormalizedFunction, TaylorSeries, C64};

/// Margins within `±TOL_PASS` are reported as inconclusive.
pub const TOL_PASS: f64 = 1e-7;

pub const MAX_RADIUS: f64 = 0.995;
pub const MIN_ANGLES: usize = 64;

/// Polar sampling grid on the disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
    refinement_depth: usize,
}

impl DiskGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize, refinement_depth: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r <= MAX_RADIUS)) {
            return Err(Error::InvalidGrid(format!(
                "radii must lie in (0, {MAX_RADIUS}]"
            )));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid(
                "radii must be strictly ascending".into(),
            ));
        }
        if angles_per_ring < MIN_ANGLES {
            return Err(Error::InvalidGrid(format!(
                "angles_per_ring must be at least {MIN_ANGLES}"
            )));
        }
        Ok(Self {
            radii,
            angles_per_ring,
            refinement_depth,
        })
    }

    /// Rings `0.1, 0.2, ..., 0.9, 0.95`, 720 angles, refinement depth 2.
    pub fn standard() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.push(0.95);
        Self::new(radii, 720, 2).expect("standard grid is valid")
    }

    /// [`DiskGrid::standard`] plus the ring `0.99` when the truncation tail of
    /// `s` there is negligible.
    pub fn standard_for(s: &TaylorSeries) -> Self {
        let mut grid = Self::standard();
        if s.tail_estimate(0.99) < TOL_PASS / 10.0 {
            grid.radii.push(0.99);
        }
        grid
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn refinement_depth(&self) -> usize {
        self.refinement_depth
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("non-empty")
    }

    pub fn with_refinement_depth(mut self, depth: usize) -> Self {
        self.refinement_depth = depth;
        self
    }

    /// All base grid points, ring by ring.
    pub fn points(&self) -> impl Iterator<Item = C64> + '_ {
        let m = self.angles_per_ring;
        self.radii.iter().flat_map(move |&r| {
            (0..m).map(move |j| C64::from_polar(r, 2.0 * PI * j as f64 / m as f64))
        })
    }
}

impl Default for DiskGrid {
    fn default() -> Self {
        Self::standard()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassId {
    /// `Re g_{α,β} > (α+β)/2`.
    #[serde(rename = "M")]
    MAlphaBeta,
    /// `Re f(z)/z > 0`.
    Generator,
    /// `Re zf'/f > 1/2`.
    StarlikeHalf,
    /// `Re(1 + zf''/f') > 0`.
    Convex,
    /// `Re f(z)/z > 1/2`.
    AHalf,
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassId::MAlphaBeta => "M",
            ClassId::Generator => "generator",
            ClassId::StarlikeHalf => "starlike_half",
            ClassId::Convex => "convex",
            ClassId::AHalf => "a_half",
        };
        f.write_str(s)
    }
}

impl ClassId {
    /// The series whose real part is tested, and the threshold it must exceed.
    pub fn test_function(
        self,
        f: &NormalizedFunction,
        params: &ClassParams,
    ) -> Result<(TaylorSeries, f64)> {
        Ok(match self {
            ClassId::MAlphaBeta => (g_operator(f, params)?, params.threshold()),
            ClassId::Generator => (f.quotient(), 0.0),
            ClassId::StarlikeHalf => (f.starlike_ratio(), 0.5),
            ClassId::Convex => (f.convexity_ratio(), 0.0),
            ClassId::AHalf => (f.quotient(), 0.5),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn from_margin(margin: f64) -> Self {
        if margin > TOL_PASS {
            Verdict::Pass
        } else if margin < -TOL_PASS {
            Verdict::Fail
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingMargin {
    pub radius: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub class: ClassId,
    pub alpha: f64,
    pub beta: f64,
    pub threshold: f64,
    pub margin: f64,
    pub argmin: [f64; 2],
    pub verdict: Verdict,
    /// Set when the truncation tail at the outer ring may exceed `TOL_PASS / 10`.
    pub truncation_warning: bool,
    pub tail_estimate: f64,
    pub rings: Vec<RingMargin>,
    pub grid: DiskGrid,
}

/// Minimum of `Re s(z) - threshold` over the grid, with the location of the minimum.
#[derive(Clone, Debug, PartialEq)]
pub struct GridMinimum {
    pub margin: f64,
    pub argmin: C64,
    pub rings: Vec<RingMargin>,
}

fn ring_minimum(s: &TaylorSeries, r: f64, m: usize) -> (f64, C64) {
    let mut best = (f64::INFINITY, C64::new(r, 0.0));
    for j in 0..m {
        let z = C64::from_polar(r, 2.0 * PI * j as f64 / m as f64);
        let v = s.horner(z).re;
        if v < best.0 {
            best = (v, z);
        }
    }
    best
}

/// Grid minimum of `Re s(z) - threshold`, refined around the argmin.
///
/// Each refinement level samples the argmin's ring at four times the previous
/// angular density over a window one previous spacing wide on either side.
pub fn grid_minimum(s: &TaylorSeries, threshold: f64, grid: &DiskGrid) -> GridMinimum {
    let m = grid.angles_per_ring;
    let per_ring: Vec<(f64, C64)> = grid
        .radii
        .par_iter()
        .map(|&r| ring_minimum(s, r, m))
        .collect();

    let mut rings = Vec::with_capacity(per_ring.len());
    let mut best = (f64::INFINITY, C64::new(0.0, 0.0));
    for (&r, &(v, z)) in grid.radii.iter().zip(&per_ring) {
        rings.push(RingMargin {
            radius: r,
            margin: v - threshold,
        });
        if v < best.0 {
            best = (v, z);
        }
    }

    let mut spacing = 2.0 * PI / m as f64;
    for _ in 0..grid.refinement_depth {
        let (r, center) = (best.1.norm(), best.1.arg());
        let fine = spacing / 4.0;
        for j in -4i32..=4 {
            let z = C64::from_polar(r, center + j as f64 * fine);
            let v = s.horner(z).re;
            if v < best.0 {
                best = (v, z);
            }
        }
        spacing = fine;
    }

    GridMinimum {
        margin: best.0 - threshold,
        argmin: best.1,
        rings,
    }
}

/// Evidence that `f` belongs to `class` (parameters matter only for [`ClassId::MAlphaBeta`]).
pub fn min_margin(
    f: &NormalizedFunction,
    class: ClassId,
    params: &ClassParams,
    grid: &DiskGrid,
) -> Result<MembershipReport> {
    let (s, threshold) = class.test_function(f, params)?;
    Ok(report_for_series(&s, threshold, class, params, grid))
}

pub fn report_for_series(
    s: &TaylorSeries,
    threshold: f64,
    class: ClassId,
    params: &ClassParams,
    grid: &DiskGrid,
) -> MembershipReport {
    let min = grid_minimum(s, threshold, grid);
    let tail = s.tail_estimate(grid.max_radius());
    MembershipReport {
        class,
        alpha: params.alpha(),
        beta: params.beta(),
        threshold,
        margin: min.margin,
        argmin: [min.argmin.re, min.argmin.im],
        verdict: Verdict::from_margin(min.margin),
        truncation_warning: tail >= TOL_PASS / 10.0,
        tail_estimate: tail,
        rings: min.rings,
        grid: grid.clone(),
    }
}

/// Whether `w` lies in the region Δ: the complement of Δ₁ for `α ≥ 0`, of Δ₂ for `α < 0`,
/// where both are cut out by `y² ≤ (x-1-β)² - α²` on either side of `x = 1+β-α`.
pub fn delta_region_contains(p: &ClassParams, w: C64) -> bool {
    let (a, b) = (p.alpha(), p.beta());
    let (x, y) = (w.re, w.im);
    let pivot = 1.0 + b - a;
    let hyperbola = y * y <= (x - 1.0 - b).powi(2) - a * a;
    let excluded = if a >= 0.0 {
        x <= pivot && hyperbola
    } else {
        x >= pivot && hyperbola
    };
    !excluded
}

/// Outcome of checking the Δ-range sufficient condition against the generator margin.
///
/// The condition is sufficient but not necessary: a range leaving Δ says
/// nothing about generator status, so `consistent` can only fail when the
/// whole sampled range is inside Δ and the generator check fails.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DeltaAuditReport {
    pub alpha: f64,
    pub beta: f64,
    pub all_in_delta: bool,
    pub points_outside_delta: usize,
    pub generator_margin: f64,
    pub generator_verdict: Verdict,
    pub consistent: bool,
}

pub fn delta_range_audit(
    f: &NormalizedFunction,
    p: &ClassParams,
    grid: &DiskGrid,
) -> Result<DeltaAuditReport> {
    let g = g_operator(f, p)?;
    let points: Vec<C64> = grid.points().collect();
    let outside = points
        .par_iter()
        .filter(|&&z| !delta_region_contains(p, g.horner(z)))
        .count();
    let generator = min_margin(f, ClassId::Generator, p, grid)?;
    let all_in_delta = outside == 0;
    Ok(DeltaAuditReport {
        alpha: p.alpha(),
        beta: p.beta(),
        all_in_delta,
        points_outside_delta: outside,
        generator_margin: generator.margin,
        generator_verdict: generator.verdict,
        consistent: !all_in_delta || generator.margin >= -TOL_PASS,
    })
}

/// `f(z) = (z - τ)(1 - z τ̄) p(z)`; for normalized `f` the fixed point is `τ = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BerksonPortaDecomposition {
    pub tau: [f64; 2],
    pub p: TaylorSeries,
    pub report: MembershipReport,
}

impl BerksonPortaDecomposition {
    fn tau(&self) -> C64 {
        C64::new(self.tau[0], self.tau[1])
    }

    pub fn reconstruct(&self, z: C64) -> C64 {
        let tau = self.tau();
        (z - tau) * (C64::new(1.0, 0.0) - z * tau.conj()) * self.p.horner(z)
    }

    /// Largest reconstruction error against `f` over the grid.
    pub fn reconstruction_error(&self, f: &NormalizedFunction, grid: &DiskGrid) -> f64 {
        grid.points()
            .map(|z| (self.reconstruct(z) - f.series().horner(z)).norm())
            .fold(0.0, f64::max)
    }
}

pub fn berkson_porta(f: &NormalizedFunction, grid: &DiskGrid) -> BerksonPortaDecomposition {
    let p = f.quotient();
    let params = ClassParams::new(1.0, 0.0).expect("valid");
    let report = report_for_series(&p, 0.0, ClassId::Generator, &params, grid);
    BerksonPortaDecomposition {
        tau: [0.0, 0.0],
        p,
        report,
    }
}

/// Verdicts along convex ⇒ starlike-½ ⇒ `Re f/z > ½` ⇒ generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainReport {
    pub convex: MembershipReport,
    pub starlike_half: MembershipReport,
    pub a_half: MembershipReport,
    pub generator: MembershipReport,
    pub violations: Vec<String>,
}

impl ChainReport {
    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn marx_strohhacker_audit(f: &NormalizedFunction, grid: &DiskGrid) -> Result<ChainReport> {
    let params = ClassParams::new(0.0, 0.0)?;
    let convex = min_margin(f, ClassId::Convex, &params, grid)?;
    let starlike_half = min_margin(f, ClassId::StarlikeHalf, &params, grid)?;
    let a_half = min_margin(f, ClassId::AHalf, &params, grid)?;
    let generator = min_margin(f, ClassId::Generator, &params, grid)?;

    let chain = [&convex, &starlike_half, &a_half, &generator];
    let violations = chain
        .iter()
        .enumerate()
        .flat_map(|(i, a)| chain[i + 1..].iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.verdict == Verdict::Pass && b.verdict == Verdict::Fail)
        .map(|(a, b)| format!("{} passes but {} fails", a.class, b.class))
        .collect();
    Ok(ChainReport {
        convex,
        starlike_half,
        a_half,
        generator,
        violations,
    })
}
