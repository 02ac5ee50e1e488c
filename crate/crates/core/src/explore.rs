//! Randomized class members and audits of the coefficient inequalities and
//! class inclusions.
//!
//! Members are built constructively: a Herglotz target with positive real part
//! is pushed through the Briot–Bouquet solver, so every sample belongs to its
//! class by construction rather than by rejection. Each trial draws from its
//! own ChaCha stream keyed by `(seed, trial)`, so parallel and serial runs agree.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::briot_bouquet::{
    alpha_quotient, extremal_alpha, extremal_mocanu, f_from_q, mocanu_quotient,
};
use crate::error::{Error, Result};
use crate::membership::{min_margin, ClassId, DiskGrid, Verdict};
use crate::operators::{fekete_szego, ClassParams};
use crate::series::{NormalizedFunction, TaylorSeries, C64};

pub const MAX_ATOMS: usize = 8;
pub const MAX_BLASCHKE_DEGREE: usize = 6;

/// Slack allowed on `|Φ(f, λ)| ≤ max(μ, |1-λ|)`.
pub const FS_TOL: f64 = 1e-6;
/// Slack allowed on the Schwarz coefficient inequalities.
pub const SCHWARZ_TOL: f64 = 1e-9;

/// Label carried by strictness probes: they are evidence for the open conjecture, not proofs.
pub const CONJECTURE_EVIDENCE: &str = "conjecture-evidence";

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub weight: f64,
    pub angle: f64,
}

/// Convex combination of boundary atoms `h(z) = Σ w_j (1 + e^{-iθ_j} z)/(1 - e^{-iθ_j} z)`;
/// `h(0) = 1` and `Re h > 0` on the disk.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HerglotzSampler {
    pub num_atoms: usize,
    pub seed: u64,
    pub atoms: Vec<Atom>,
}

impl HerglotzSampler {
    /// Draws `num_atoms` atoms with Dirichlet(1) weights and uniform angles.
    pub fn new(num_atoms: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::draw(num_atoms, seed, &mut rng)
    }

    /// Sampler for one trial of a seeded run; the atom count is drawn too.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = trial_rng(seed, trial);
        let num_atoms = rng.gen_range(1..=MAX_ATOMS);
        Self::draw(num_atoms, seed, &mut rng).expect("atom count in range")
    }

    fn draw(num_atoms: usize, seed: u64, rng: &mut impl Rng) -> Result<Self> {
        if !(1..=MAX_ATOMS).contains(&num_atoms) {
            return Err(Error::InvalidParams(format!(
                "num_atoms must lie in [1, {MAX_ATOMS}], got {num_atoms}"
            )));
        }
        let raw: Vec<f64> = (0..num_atoms)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln())
            .collect();
        let total: f64 = raw.iter().sum();
        let atoms = raw
            .into_iter()
            .map(|w| Atom {
                weight: w / total,
                angle: 2.0 * PI * rng.gen::<f64>(),
            })
            .collect();
        Ok(Self {
            num_atoms,
            seed,
            atoms,
        })
    }

    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        if atoms.is_empty() || atoms.len() > MAX_ATOMS {
            return Err(Error::InvalidParams(format!(
                "between 1 and {MAX_ATOMS} atoms required"
            )));
        }
        if atoms
            .iter()
            .any(|a| !(a.weight >= 0.0) || !(0.0..2.0 * PI).contains(&a.angle))
        {
            return Err(Error::InvalidParams(
                "atom weights must be non-negative and angles in [0, 2π)".into(),
            ));
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "atom weights sum to {total}, not 1"
            )));
        }
        Ok(Self {
            num_atoms: atoms.len(),
            seed: 0,
            atoms,
        })
    }

    /// Series of `h` through order `n`: `h_0 = 1`, `h_k = 2 Σ w_j e^{-ikθ_j}`.
    pub fn target(&self, n: usize) -> TaylorSeries {
        TaylorSeries::from_fn(n, |k| {
            if k == 0 {
                return C64::new(1.0, 0.0);
            }
            self.atoms
                .iter()
                .map(|a| C64::from_polar(2.0 * a.weight, -(k as f64) * a.angle))
                .sum()
        })
    }
}

/// Finite Blaschke product `ω(z) = e^{iφ} z Π (a_i - z)/(1 - ā_i z)`, a Schwarz function
/// of total degree `degree`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwarzSampler {
    pub degree: usize,
    pub seed: u64,
    pub zeros: Vec<[f64; 2]>,
    pub rotation: [f64; 2],
}

impl SchwarzSampler {
    pub fn new(degree: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::draw(degree, seed, &mut rng)
    }

    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = trial_rng(seed, trial);
        let degree = rng.gen_range(1..=MAX_BLASCHKE_DEGREE);
        Self::draw(degree, seed, &mut rng).expect("degree in range")
    }

    fn draw(degree: usize, seed: u64, rng: &mut impl Rng) -> Result<Self> {
        if !(1..=MAX_BLASCHKE_DEGREE).contains(&degree) {
            return Err(Error::InvalidParams(format!(
                "degree must lie in [1, {MAX_BLASCHKE_DEGREE}], got {degree}"
            )));
        }
        let zeros = (1..degree)
            .map(|_| {
                let a = C64::from_polar(rng.gen::<f64>().sqrt(), 2.0 * PI * rng.gen::<f64>());
                [a.re, a.im]
            })
            .collect();
        let rot = C64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>());
        Ok(Self {
            degree,
            seed,
            zeros,
            rotation: [rot.re, rot.im],
        })
    }

    pub fn from_parts(zeros: Vec<C64>, rotation: C64) -> Result<Self> {
        if zeros.len() >= MAX_BLASCHKE_DEGREE || zeros.iter().any(|a| !(a.norm() < 1.0)) {
            return Err(Error::InvalidParams(
                "zeros must lie in the disk, at most 5 of them".into(),
            ));
        }
        if (rotation.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams("rotation must be unimodular".into()));
        }
        Ok(Self {
            degree: zeros.len() + 1,
            seed: 0,
            zeros: zeros.iter().map(|a| [a.re, a.im]).collect(),
            rotation: [rotation.re, rotation.im],
        })
    }

    pub fn omega(&self, n: usize) -> TaylorSeries {
        let rot = C64::new(self.rotation[0], self.rotation[1]);
        let mut w = TaylorSeries::identity(n).scale(rot);
        for &[re, im] in &self.zeros {
            let a = C64::new(re, im);
            let num = TaylorSeries::polynomial(&[a, C64::new(-1.0, 0.0)], n).expect("fits");
            let den = TaylorSeries::polynomial(&[C64::new(1.0, 0.0), -a.conj()], n).expect("fits");
            w = &w * &num.div(&den).expect("unit constant term");
        }
        w
    }
}

/// Member of `M_{0,β}` (`β ≤ 1`) whose operator is `β/2 + (1-β/2) h` for the sampler's `h`.
pub fn sample_m0beta(beta: f64, sampler: &HerglotzSampler, n: usize) -> Result<NormalizedFunction> {
    if !(beta <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "beta must be <= 1, got {beta}"
        )));
    }
    let h = sampler
        .target(n)
        .scale_real(1.0 - beta / 2.0)
        .add_constant(C64::new(beta / 2.0, 0.0));
    f_from_q(&mocanu_quotient(h, beta, n)?)
}

/// Member of `M_{α,1-α}` (`0 < α ≤ 1`) whose operator is `1/2 + h/2` for the sampler's `h`.
pub fn sample_malpha(
    alpha: f64,
    sampler: &HerglotzSampler,
    n: usize,
) -> Result<NormalizedFunction> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let target = sampler
        .target(n)
        .scale_real(0.5)
        .add_constant(C64::new(0.5, 0.0));
    NormalizedFunction::from_quotient(&alpha_quotient(&target, alpha, n)?)
}

type MemberBuilder = dyn Fn(&HerglotzSampler) -> Result<NormalizedFunction> + Sync;

/// `count` members of `params`' class, one per trial stream. Only the two lines
/// `α = 0, β ≤ 1` and `β = 1-α, 0 < α ≤ 1` have a construction.
pub fn sample_members(
    params: &ClassParams,
    seed: u64,
    count: usize,
    n: usize,
) -> Result<Vec<NormalizedFunction>> {
    let (a, b) = (params.alpha(), params.beta());
    let build: Box<MemberBuilder> = if a == 0.0 && b <= 1.0 {
        Box::new(move |s| sample_m0beta(b, s, n))
    } else if (a + b - 1.0).abs() < 1e-15 && a > 0.0 && a <= 1.0 {
        Box::new(move |s| sample_malpha(a, s, n))
    } else {
        return Err(Error::InvalidParams(format!(
            "no member construction for (alpha, beta) = ({a}, {b}); \
                 supported: alpha = 0 with beta <= 1, or beta = 1 - alpha with 0 < alpha <= 1"
        )));
    };
    (0..count as u64)
        .into_par_iter()
        .map(|trial| build(&HerglotzSampler::for_trial(seed, trial)))
        .collect()
}

/// A mix of members from both lines with random parameters, for chain audits.
pub fn sample_mixed(seed: u64, count: usize, n: usize) -> Result<Vec<NormalizedFunction>> {
    (0..count as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(seed ^ 0x9e37_79b9_7f4a_7c15, trial);
            let sampler = HerglotzSampler::for_trial(seed, trial);
            if rng.gen::<bool>() {
                sample_m0beta(rng.gen_range(-1.0..=1.0), &sampler, n)
            } else {
                sample_malpha(rng.gen_range(0.25..=1.0), &sampler, n)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FsRow {
    pub lambda_re: f64,
    pub lambda_im: f64,
    pub bound: f64,
    pub attained: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FsBoundReport {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub members: usize,
    /// Largest `|Φ(f, λ)| - max(μ, |1-λ|)` over members and λ.
    pub max_excess: f64,
    pub violations: usize,
    pub rows: Vec<FsRow>,
}

/// Audits `|Φ(f, λ)| ≤ max(μ, |1-λ|)` and records the attained supremum per λ.
pub fn fs_bound_audit(
    members: &[NormalizedFunction],
    params: &ClassParams,
    lambdas: &[C64],
) -> Result<FsBoundReport> {
    let mu = params.mu().ok_or_else(|| {
        Error::InvalidParams("5*alpha+4*beta must be < 6 for the bound to exist".into())
    })?;
    let mut violations = 0;
    let mut max_excess = f64::NEG_INFINITY;
    let mut rows = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let bound = mu.max((C64::new(1.0, 0.0) - lambda).norm());
        let mut attained: f64 = 0.0;
        for f in members {
            let phi = fekete_szego(f, lambda).norm();
            attained = attained.max(phi);
            max_excess = max_excess.max(phi - bound);
            if phi > bound + FS_TOL {
                violations += 1;
            }
        }
        rows.push(FsRow {
            lambda_re: lambda.re,
            lambda_im: lambda.im,
            bound,
            attained,
            ratio: attained / bound,
        });
    }
    Ok(FsBoundReport {
        alpha: params.alpha(),
        beta: params.beta(),
        mu,
        members: members.len(),
        max_excess,
        violations,
        rows,
    })
}

/// The two extremals of a sharp line, `k = 1` and `k = 2`.
pub fn line_extremals(params: &ClassParams, n: usize) -> Result<Vec<NormalizedFunction>> {
    let (a, b) = (params.alpha(), params.beta());
    if a == 0.0 && (0.0..=1.0).contains(&b) {
        Ok(vec![
            extremal_mocanu(b, 1, n)?.f,
            extremal_mocanu(b, 2, n)?.f,
        ])
    } else if (a + b - 1.0).abs() < 1e-15 && a > 0.0 && a <= 1.0 {
        Ok(vec![extremal_alpha(a, 1, n)?.f, extremal_alpha(a, 2, n)?.f])
    } else {
        Err(Error::InvalidParams(format!(
            "no extremals known for (alpha, beta) = ({a}, {b})"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiltrationLine {
    /// `M_{0,β}` indexed by `β`.
    Beta,
    /// `M_{α,1-α}` indexed by `α`.
    Alpha,
}

impl FiltrationLine {
    pub fn params(self, s: f64) -> Result<ClassParams> {
        match self {
            FiltrationLine::Beta => ClassParams::mocanu(s),
            FiltrationLine::Alpha => ClassParams::alpha_line(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InclusionResult {
    pub to: f64,
    pub passes: usize,
    pub fails: usize,
    pub inconclusive: usize,
    pub worst_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrictnessProbe {
    pub label: String,
    pub larger: f64,
    pub probes: usize,
    /// Samples of the larger class that fail membership in the smaller one.
    pub outside_smaller: usize,
    pub most_negative_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub line: FiltrationLine,
    pub from: f64,
    pub samples: usize,
    /// Samples whose own-class verdict is not a pass (construction failures).
    pub unconfirmed_members: usize,
    pub targets: Vec<InclusionResult>,
    pub violations: usize,
    pub strictness: Vec<StrictnessProbe>,
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.violations == 0
            && self.unconfirmed_members == 0
            && self
                .targets
                .iter()
                .all(|t| t.inconclusive == 0 && t.fails == 0)
    }
}

fn sample_on_line(
    line: FiltrationLine,
    s: f64,
    seed: u64,
    count: usize,
    n: usize,
) -> Result<Vec<NormalizedFunction>> {
    sample_members(&line.params(s)?, seed, count, n)
}

/// Forward inclusion audit along a filtration line plus a strictness probe.
///
/// Every sample of the class at `from` is tested against each class in `to`;
/// then `probe_samples` members of each larger class are tested against the
/// class at `from`, counting any that fall outside it.
pub fn filtration_audit(
    line: FiltrationLine,
    from: f64,
    to: &[f64],
    samples: usize,
    probe_samples: usize,
    seed: u64,
    n: usize,
    grid: &DiskGrid,
) -> Result<FiltrationReport> {
    if let Some(bad) = to.iter().find(|&&s| s <= from) {
        return Err(Error::InvalidParams(format!(
            "target {bad} must exceed the starting parameter {from}"
        )));
    }
    let upper_ok = match line {
        FiltrationLine::Beta => to.iter().all(|&s| s <= 1.0),
        FiltrationLine::Alpha => to.iter().all(|&s| s < 2.0),
    };
    if !upper_ok {
        return Err(Error::InvalidParams(
            "targets must satisfy beta <= 1 (beta line) or alpha < 2 (alpha line)".into(),
        ));
    }
    let from_params = line.params(from)?;
    let members = sample_on_line(line, from, seed, samples, n)?;
    let target_params: Vec<ClassParams> =
        to.iter().map(|&s| line.params(s)).collect::<Result<_>>()?;

    let own: Vec<Verdict> = members
        .par_iter()
        .map(|f| Ok(min_margin(f, ClassId::MAlphaBeta, &from_params, grid)?.verdict))
        .collect::<Result<_>>()?;
    let unconfirmed_members = own.iter().filter(|&&v| v != Verdict::Pass).count();

    let mut targets = Vec::with_capacity(to.len());
    let mut violations = 0;
    for (p, &s) in target_params.iter().zip(to) {
        let margins: Vec<f64> = members
            .par_iter()
            .map(|f| Ok(min_margin(f, ClassId::MAlphaBeta, p, grid)?.margin))
            .collect::<Result<_>>()?;
        let mut r = InclusionResult {
            to: s,
            passes: 0,
            fails: 0,
            inconclusive: 0,
            worst_margin: f64::INFINITY,
        };
        for m in margins {
            r.worst_margin = r.worst_margin.min(m);
            match Verdict::from_margin(m) {
                Verdict::Pass => r.passes += 1,
                Verdict::Fail => r.fails += 1,
                Verdict::Inconclusive => r.inconclusive += 1,
            }
        }
        violations += r.fails;
        targets.push(r);
    }

    let mut strictness = Vec::new();
    if probe_samples > 0 {
        for &s in to {
            // larger classes on the alpha line past 1 have no construction; skip them
            let Ok(larger) = sample_on_line(line, s, seed.wrapping_add(1), probe_samples, n) else {
                continue;
            };
            let margins: Vec<f64> = larger
                .par_iter()
                .map(|f| Ok(min_margin(f, ClassId::MAlphaBeta, &from_params, grid)?.margin))
                .collect::<Result<_>>()?;
            strictness.push(StrictnessProbe {
                label: CONJECTURE_EVIDENCE.into(),
                larger: s,
                probes: margins.len(),
                outside_smaller: margins
                    .iter()
                    .filter(|&&m| m < -crate::membership::TOL_PASS)
                    .count(),
                most_negative_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
            });
        }
    }

    Ok(FiltrationReport {
        line,
        from,
        samples,
        unconfirmed_members,
        targets,
        violations,
        strictness,
    })
}

/// The standard `s` values of the constant-`s` Schwarz check.
pub fn schwarz_s_values() -> Vec<C64> {
    vec![
        C64::new(0.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(-1.0, 0.0),
        C64::new(2.0, 0.0),
        C64::new(-2.0, 0.0),
        C64::new(0.0, 1.0),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwarzAuditReport {
    pub trials: usize,
    pub violations: usize,
    /// Largest `|b₂| - (1 - |b₁|²)`; non-positive when the inequality holds.
    pub max_slack_b2: f64,
    /// Largest `|b₂ - s b₁²| - max(1, |s|)` over the tested `s`.
    pub max_slack_fs: f64,
}

/// `(|b₂| - (1 - |b₁|²), max_s |b₂ - s b₁²| - max(1, |s|))` for one Schwarz function.
pub fn schwarz_slacks(omega: &TaylorSeries, s_values: &[C64]) -> (f64, f64) {
    let (b1, b2) = (omega[1], omega[2]);
    let first = b2.norm() - (1.0 - b1.norm_sqr());
    let second = s_values
        .iter()
        .map(|&s| (b2 - s * b1 * b1).norm() - s.norm().max(1.0))
        .fold(f64::NEG_INFINITY, f64::max);
    (first, second)
}

pub fn schwarz_lemma_audit(seed: u64, trials: usize) -> SchwarzAuditReport {
    let s_values = schwarz_s_values();
    let slacks: Vec<(f64, f64)> = (0..trials as u64)
        .into_par_iter()
        .map(|trial| schwarz_slacks(&SchwarzSampler::for_trial(seed, trial).omega(4), &s_values))
        .collect();
    let mut report = SchwarzAuditReport {
        trials,
        violations: 0,
        max_slack_b2: f64::NEG_INFINITY,
        max_slack_fs: f64::NEG_INFINITY,
    };
    for (a, b) in slacks {
        report.max_slack_b2 = report.max_slack_b2.max(a);
        report.max_slack_fs = report.max_slack_fs.max(b);
        if a > SCHWARZ_TOL || b > SCHWARZ_TOL {
            report.violations += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::briot_bouquet::cayley_power;
    use crate::operators::{g_operator, omega_transform};
    use approx::assert_abs_diff_eq;

    fn single_atom() -> HerglotzSampler {
        HerglotzSampler::from_atoms(vec![Atom {
            weight: 1.0,
            angle: 0.0,
        }])
        .unwrap()
    }

    fn antipodal() -> HerglotzSampler {
        HerglotzSampler::from_atoms(vec![
            Atom {
                weight: 0.5,
                angle: 0.0,
            },
            Atom {
                weight: 0.5,
                angle: PI,
            },
        ])
        .unwrap()
    }

    #[test]
    fn herglotz_targets() {
        assert!(single_atom().target(20).max_abs_diff(&cayley_power(1, 20)) < 1e-15);
        assert!(antipodal().target(20).max_abs_diff(&cayley_power(2, 20)) < 1e-14);
        let s = HerglotzSampler::new(5, 7).unwrap();
        assert_abs_diff_eq!(
            s.atoms.iter().map(|a| a.weight).sum::<f64>(),
            1.0,
            epsilon = 1e-14
        );
        assert!(HerglotzSampler::new(9, 1).is_err());
        assert!(HerglotzSampler::from_atoms(vec![Atom {
            weight: 0.5,
            angle: 0.0
        }])
        .is_err());
    }

    #[test]
    fn samplers_are_deterministic() {
        assert_eq!(
            HerglotzSampler::for_trial(11, 3),
            HerglotzSampler::for_trial(11, 3)
        );
        assert_ne!(
            HerglotzSampler::for_trial(11, 3),
            HerglotzSampler::for_trial(11, 4)
        );
        let a = sample_members(&ClassParams::mocanu(0.5).unwrap(), 5, 6, 48).unwrap();
        let b = sample_members(&ClassParams::mocanu(0.5).unwrap(), 5, 6, 48).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn m0beta_sample_reproduces_extremals() {
        let beta = 0.5;
        let f1 = sample_m0beta(beta, &single_atom(), 64).unwrap();
        let e1 = extremal_mocanu(beta, 1, 64).unwrap().f;
        assert!(f1.series().max_abs_diff(e1.series()) < 1e-14);
        let f2 = sample_m0beta(beta, &antipodal(), 64).unwrap();
        assert_abs_diff_eq!(
            f2.a3().re,
            (2.0 - beta) / (6.0 - 4.0 * beta),
            epsilon = 1e-12
        );
    }

    #[test]
    fn malpha_sample_reproduces_extremals() {
        let alpha = 0.75;
        let f1 = sample_malpha(alpha, &single_atom(), 64).unwrap();
        assert_abs_diff_eq!(f1.a2().re, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f1.a3().re, 1.0, epsilon = 1e-12);
        let f2 = sample_malpha(alpha, &antipodal(), 64).unwrap();
        assert_abs_diff_eq!(f2.a3().re, 1.0 / (2.0 - alpha), epsilon = 1e-12);
    }

    #[test]
    fn construction_soundness() {
        for trial in 0..10 {
            let sampler = HerglotzSampler::for_trial(42, trial);
            let h = sampler.target(96);
            let f = sample_m0beta(0.3, &sampler, 96).unwrap();
            let g = g_operator(&f, &ClassParams::mocanu(0.3).unwrap()).unwrap();
            let target = h.scale_real(0.85).add_constant(C64::new(0.15, 0.0));
            assert!(g.max_abs_diff(&target) < 1e-8, "trial {trial}");

            let f = sample_malpha(0.6, &sampler, 96).unwrap();
            let g = g_operator(&f, &ClassParams::alpha_line(0.6).unwrap()).unwrap();
            let target = h.scale_real(0.5).add_constant(C64::new(0.5, 0.0));
            assert!(g.max_abs_diff(&target) < 1e-8, "trial {trial}");
        }
    }

    #[test]
    fn samples_pass_their_class() {
        let grid = DiskGrid::standard();
        for (params, seed) in [
            (ClassParams::mocanu(0.5).unwrap(), 1),
            (ClassParams::alpha_line(0.75).unwrap(), 2),
        ] {
            for f in sample_members(&params, seed, 8, 96).unwrap() {
                let r = min_margin(&f, ClassId::MAlphaBeta, &params, &grid).unwrap();
                assert_eq!(r.verdict, Verdict::Pass, "margin {}", r.margin);
            }
        }
    }

    #[test]
    fn unsupported_lines_are_rejected() {
        assert!(sample_members(&ClassParams::new(0.3, 0.3).unwrap(), 1, 2, 20).is_err());
        assert!(sample_m0beta(1.5, &single_atom(), 10).is_err());
        assert!(sample_malpha(1.5, &single_atom(), 10).is_err());
    }

    #[test]
    fn fs_bound_examples() {
        let p = ClassParams::mocanu(0.25).unwrap();
        let lambdas = crate::operators::default_lambda_grid();
        let r = fs_bound_audit(&[NormalizedFunction::identity(8)], &p, &lambdas).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.rows.iter().all(|row| row.attained == 0.0));

        let r = fs_bound_audit(&line_extremals(&p, 64).unwrap(), &p, &lambdas).unwrap();
        assert_eq!(r.violations, 0);
        for row in &r.rows {
            assert_abs_diff_eq!(row.attained, row.bound, epsilon = 1e-8);
        }
    }

    #[test]
    fn omega_coefficients_encode_fekete_szego() {
        // b₁ = a₂ and μ b₂ = a₃ - a₂² for any f, member or not
        let f = NormalizedFunction::new(
            TaylorSeries::polynomial(
                &[
                    C64::new(0.0, 0.0),
                    C64::new(1.0, 0.0),
                    C64::new(0.3, -0.2),
                    C64::new(-0.7, 0.4),
                ],
                10,
            )
            .unwrap(),
        )
        .unwrap();
        for (a, b) in [(0.0, 0.5), (0.75, 0.25), (-1.0, 0.4)] {
            let p = ClassParams::new(a, b).unwrap();
            let w = omega_transform(&g_operator(&f, &p).unwrap(), p.threshold()).unwrap();
            let mu = p.mu().unwrap();
            assert!((w[1] - f.a2()).norm() < 1e-14);
            assert!((w[2] * mu - (f.a3() - f.a2() * f.a2())).norm() < 1e-14);
        }
    }

    #[test]
    fn schwarz_equality_cases() {
        let s = schwarz_s_values();
        let z = SchwarzSampler::from_parts(vec![], C64::new(1.0, 0.0))
            .unwrap()
            .omega(6);
        let (a, b) = schwarz_slacks(&z, &s);
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-15);
        assert!(b <= 1e-15);

        let z2 = SchwarzSampler::from_parts(vec![C64::new(0.0, 0.0)], C64::new(-1.0, 0.0))
            .unwrap()
            .omega(6);
        assert_abs_diff_eq!(z2[2].re, 1.0, epsilon = 1e-15);
        let (a, _) = schwarz_slacks(&z2, &s);
        assert_abs_diff_eq!(a, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn schwarz_samples_are_self_maps() {
        for trial in 0..20 {
            let s = SchwarzSampler::for_trial(3, trial);
            let w = s.omega(200);
            assert!(w[0].norm() < 1e-15);
            for j in 0..32 {
                let z = C64::from_polar(0.7, j as f64);
                assert!(w.horner(z).norm() < 1.0);
            }
        }
        assert_eq!(schwarz_lemma_audit(9, 500).violations, 0);
    }

    #[test]
    fn small_filtration_audit() {
        let grid = DiskGrid::standard();
        let r =
            filtration_audit(FiltrationLine::Beta, 0.0, &[0.5, 1.0], 6, 6, 17, 96, &grid).unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert!(r.strictness.iter().all(|p| p.label == CONJECTURE_EVIDENCE));
        assert!(filtration_audit(FiltrationLine::Beta, 0.5, &[0.4], 2, 0, 1, 40, &grid).is_err());
        assert!(filtration_audit(FiltrationLine::Beta, 0.5, &[1.2], 2, 0, 1, 40, &grid).is_err());
    }

    #[test]
    fn strictness_probe_finds_starlike_half_outside_convex() {
        // f^(2) of M_{0,1} is z/sqrt(1-z²), whose 1 + zf''/f' = (1+2z²)/(1-z²) goes negative near ±i
        let f = sample_m0beta(1.0, &antipodal(), 96).unwrap();
        let r = min_margin(
            &f,
            ClassId::MAlphaBeta,
            &ClassParams::mocanu(0.0).unwrap(),
            &DiskGrid::standard(),
        )
        .unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }
}
