//! The semigroup generated by `f`: solutions of `∂u/∂t + f(u) = 0`, `u(0, z) = z`,
//! integrated with an adaptive Dormand–Prince 5(4) pair.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::membership::{min_margin, ClassId, DiskGrid, Verdict};
use crate::operators::ClassParams;
use crate::series::{NormalizedFunction, C64};

/// `|u|` at or beyond this radius counts as leaving the disk.
pub const ESCAPE_RADIUS: f64 = 1.0 - 1e-12;

const MIN_STEP: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowOptions {
    pub atol: f64,
    pub rtol: f64,
    pub initial_step: f64,
    pub max_step: f64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            atol: 1e-10,
            rtol: 1e-10,
            initial_step: 1e-3,
            max_step: 0.1,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemigroupTrajectory {
    pub z0: [f64; 2],
    pub times: Vec<f64>,
    pub points: Vec<[f64; 2]>,
    pub step_stats: StepStats,
    /// Truncation-tail estimate of `f` at the largest radius the trajectory reached.
    pub tail_estimate: f64,
}

impl SemigroupTrajectory {
    pub fn point(&self, i: usize) -> C64 {
        C64::new(self.points[i][0], self.points[i][1])
    }

    pub fn last(&self) -> C64 {
        self.point(self.points.len() - 1)
    }
}

// Dormand–Prince 5(4) tableau; the field is autonomous so the nodes are not needed.
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// The flow of a fixed normalized function.
#[derive(Clone, Debug)]
pub struct Semigroup {
    f: NormalizedFunction,
    opts: FlowOptions,
}

impl Semigroup {
    /// Refuses `f` whose generator check fails on the standard grid.
    pub fn new(f: NormalizedFunction) -> Result<Self> {
        let params = ClassParams::new(1.0, 0.0)?;
        let report = min_margin(&f, ClassId::Generator, &params, &DiskGrid::standard())?;
        if report.verdict == Verdict::Fail {
            return Err(Error::NotAGenerator(format!(
                "Re f(z)/z reaches {:.3e} at {:?}; pass force to integrate anyway",
                report.margin, report.argmin
            )));
        }
        Ok(Self::forced(f))
    }

    /// Skips the generator check; leaving the disk is then reported as [`Error::DiskEscape`].
    pub fn forced(f: NormalizedFunction) -> Self {
        Self {
            f,
            opts: FlowOptions::default(),
        }
    }

    pub fn with_options(mut self, opts: FlowOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn function(&self) -> &NormalizedFunction {
        &self.f
    }

    pub fn evolve(&self, z0: C64, t_end: f64) -> Result<SemigroupTrajectory> {
        if t_end == 0.0 {
            return self.evolve_at(z0, &[0.0]);
        }
        self.evolve_at(z0, &[0.0, t_end])
    }

    /// `u(t, z0)` at each requested time; times must be ascending and non-negative.
    pub fn evolve_at(&self, z0: C64, times: &[f64]) -> Result<SemigroupTrajectory> {
        self.integrate(z0, times, -1.0)
    }

    /// Integrates the reversed field `u' = +f(u)`.
    pub fn evolve_backward(&self, z0: C64, t: f64) -> Result<SemigroupTrajectory> {
        self.integrate(z0, &[0.0, t], 1.0)
    }

    pub fn value(&self, z0: C64, t: f64) -> Result<C64> {
        Ok(self.evolve(z0, t)?.last())
    }

    fn integrate(&self, z0: C64, times: &[f64], sign: f64) -> Result<SemigroupTrajectory> {
        if !(z0.norm() < 1.0) {
            return Err(Error::OutsideDisk {
                re: z0.re,
                im: z0.im,
            });
        }
        if times.iter().any(|t| !(t.is_finite() && *t >= 0.0))
            || times.windows(2).any(|w| w[0] > w[1])
        {
            return Err(Error::InvalidParams(
                "output times must be finite, non-negative and ascending".into(),
            ));
        }
        let series = self.f.series();
        let field = |u: C64| series.horner(u) * sign;
        let opts = self.opts;

        let mut stats = StepStats::default();
        let mut out_times = Vec::with_capacity(times.len());
        let mut out_points = Vec::with_capacity(times.len());
        let mut t = 0.0;
        let mut y = z0;
        let mut k1 = field(y);
        let mut h = opts.initial_step.min(opts.max_step);
        let mut max_radius = z0.norm();

        for &target in times {
            while t < target {
                let step = h.min(target - t).min(opts.max_step);
                let last = step >= target - t;
                let mut k = [C64::new(0.0, 0.0); 7];
                k[0] = k1;
                let mut escaped = false;
                for s in 1..7 {
                    let mut ys = y;
                    for (j, kj) in k.iter().enumerate().take(s) {
                        ys += kj * (A[s][j] * step);
                    }
                    if ys.norm() >= ESCAPE_RADIUS {
                        escaped = true;
                        break;
                    }
                    k[s] = field(ys);
                }
                if escaped {
                    stats.rejected += 1;
                    h = step / 4.0;
                    if h < MIN_STEP {
                        return Err(Error::DiskEscape {
                            t,
                            modulus: y.norm(),
                        });
                    }
                    continue;
                }
                // the last stage is evaluated at the fifth-order solution
                let mut y_new = y;
                for (j, kj) in k.iter().enumerate().take(6) {
                    y_new += kj * (A[6][j] * step);
                }
                let err_vec: C64 = k.iter().zip(E).map(|(kj, e)| kj * e).sum::<C64>() * step;
                let scale = opts.atol + opts.rtol * y.norm().max(y_new.norm());
                let err = err_vec.norm() / scale;

                if err <= 1.0 {
                    stats.accepted += 1;
                    t = if last { target } else { t + step };
                    y = y_new;
                    k1 = k[6];
                    max_radius = max_radius.max(y.norm());
                    if y.norm() >= ESCAPE_RADIUS {
                        return Err(Error::DiskEscape {
                            t,
                            modulus: y.norm(),
                        });
                    }
                    let factor = if err == 0.0 {
                        5.0
                    } else {
                        (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
                    };
                    // keep the controller's proposal when the step was clipped to hit an output time
                    h = if last && step < h { h } else { step * factor };
                } else {
                    stats.rejected += 1;
                    h = step * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
                }
                if h < MIN_STEP * t.max(1.0) {
                    return Err(Error::StepUnderflow { t, h });
                }
            }
            out_times.push(target);
            out_points.push([y.re, y.im]);
        }

        Ok(SemigroupTrajectory {
            z0: [z0.re, z0.im],
            times: out_times,
            points: out_points,
            step_stats: stats,
            tail_estimate: series.tail_estimate(max_radius),
        })
    }
}

/// Convenience wrapper: checks `f` is a generator, then integrates to `t_end`.
pub fn evolve(f: &NormalizedFunction, z0: C64, t_end: f64) -> Result<SemigroupTrajectory> {
    Semigroup::new(f.clone())?.evolve(z0, t_end)
}

/// `e^{((1-2α)/(2α)) t}`, the growth factor bounding `|F_t(z)|/|z|` on `M_{α,1-α}`.
pub fn alpha_growth_bound(alpha: f64, t: f64) -> f64 {
    ((1.0 - 2.0 * alpha) / (2.0 * alpha) * t).exp()
}

/// Relative slack allowed on the growth bound.
pub const BOUND_RTOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSample {
    pub z0: [f64; 2],
    pub t: f64,
    pub modulus: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundAuditReport {
    pub alpha: f64,
    pub member_verdict: Verdict,
    pub samples: Vec<BoundSample>,
    pub violations: usize,
    /// Largest `|u(t, z0)| / (e^{ct}|z0|)` seen.
    pub max_ratio: f64,
    /// Samples breaking `|u(t, z0)| ≤ |z0| + 1e-8`.
    pub schwarz_violations: usize,
    pub errors: Vec<String>,
}

/// Checks `|u(t, z0)| ≤ e^{((1-2α)/(2α)) t} |z0| (1 + 1e-6)` for each `(z0, t)`.
pub fn bound_audit_alpha(
    f: &NormalizedFunction,
    alpha: f64,
    samples: &[(C64, f64)],
) -> Result<BoundAuditReport> {
    let params = ClassParams::alpha_line(alpha)?;
    let member = min_margin(f, ClassId::MAlphaBeta, &params, &DiskGrid::standard())?;
    let flow = Semigroup::forced(f.clone());

    let outcomes: Vec<std::result::Result<BoundSample, String>> = samples
        .par_iter()
        .map(|&(z0, t)| {
            let u = flow.value(z0, t).map_err(|e| e.to_string())?;
            Ok(BoundSample {
                z0: [z0.re, z0.im],
                t,
                modulus: u.norm(),
                bound: alpha_growth_bound(alpha, t) * z0.norm(),
            })
        })
        .collect();

    let mut report = BoundAuditReport {
        alpha,
        member_verdict: member.verdict,
        samples: Vec::with_capacity(samples.len()),
        violations: 0,
        max_ratio: 0.0,
        schwarz_violations: 0,
        errors: Vec::new(),
    };
    for outcome in outcomes {
        match outcome {
            Ok(s) => {
                if s.modulus > s.bound * (1.0 + BOUND_RTOL) {
                    report.violations += 1;
                }
                let z_abs = C64::new(s.z0[0], s.z0[1]).norm();
                if s.modulus > z_abs + 1e-8 {
                    report.schwarz_violations += 1;
                }
                if s.bound > 0.0 {
                    report.max_ratio = report.max_ratio.max(s.modulus / s.bound);
                }
                report.samples.push(s);
            }
            Err(e) => report.errors.push(e),
        }
    }
    Ok(report)
}

/// `max |u(t+s, z0) - u(t, u(s, z0))|` over the start points.
pub fn semigroup_property_audit(
    f: &NormalizedFunction,
    s: f64,
    t: f64,
    starts: &[C64],
) -> Result<f64> {
    let flow = Semigroup::forced(f.clone());
    let deviations: Result<Vec<f64>> = starts
        .par_iter()
        .map(|&z0| {
            let direct = flow.value(z0, s + t)?;
            let composed = flow.value(flow.value(z0, s)?, t)?;
            Ok((direct - composed).norm())
        })
        .collect();
    Ok(deviations?.into_iter().fold(0.0, f64::max))
}
