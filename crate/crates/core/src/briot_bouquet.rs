//! Power-series solutions of `q + zq'/(Bq + Γ) = h` with `q(0) = h(0)`, and the
//! extremal functions they produce on the two sharp parameter lines.

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::operators::{default_lambda_grid, fekete_szego};
use crate::series::{NormalizedFunction, TaylorSeries, C64};

const DENOMINATOR_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct BriotBouquetProblem {
    h: TaylorSeries,
    b: f64,
    gamma: f64,
}

impl BriotBouquetProblem {
    /// Requires `Re(B h(0) + Γ) > 0`.
    pub fn new(h: TaylorSeries, b: f64, gamma: f64) -> Result<Self> {
        let p0 = h[0] * b + gamma;
        if !(p0.re > 0.0) {
            return Err(Error::InvalidParams(format!(
                "Re(B*h(0) + Gamma) must be positive, got {}",
                p0.re
            )));
        }
        Ok(Self { h, b, gamma })
    }

    pub fn h(&self) -> &TaylorSeries {
        &self.h
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Coefficients of `q + zq'/(Bq + Γ) - h` through the common order.
    pub fn residual(&self, q: &TaylorSeries) -> Result<TaylorSeries> {
        let den = q.scale_real(self.b).add_constant(C64::new(self.gamma, 0.0));
        let lhs = q + &q.z_derivative().div(&den)?;
        Ok(&lhs - &self.h)
    }
}

/// Formal solution through order `min(n, order of h)`.
///
/// Clearing the denominator gives `q(Bq + Γ) + zq' = h(Bq + Γ)`; matching `z^n`
/// with `q₀ = h₀` isolates
/// `(n + B h₀ + Γ) q_n = B Σ_{i=1}^{n} h_i q_{n-i} + Γ h_n - B Σ_{i=1}^{n-1} q_i q_{n-i}`.
pub fn solve_bb(prob: &BriotBouquetProblem, n: usize) -> Result<TaylorSeries> {
    let n = n.min(prob.h.order());
    let h = prob.h.coeffs();
    let (b, gamma) = (prob.b, prob.gamma);
    let lead = h[0] * b + gamma;
    let mut q: Vec<C64> = Vec::with_capacity(n + 1);
    q.push(h[0]);
    for m in 1..=n {
        let den = lead + m as f64;
        if den.norm() <= DENOMINATOR_TOL {
            return Err(Error::SmallDenominator {
                index: m,
                value: den.norm(),
            });
        }
        let cross: C64 = (1..=m).map(|i| h[i] * q[m - i]).sum();
        let square: C64 = (1..m).map(|i| q[i] * q[m - i]).sum();
        q.push((cross * b + h[m] * gamma - square * b) / den);
    }
    TaylorSeries::new(q)
}

/// Inverts `q = zf'/f`: `f = z exp ∫₀^z (q(w) - 1)/w dw`. The output has order `N + 1`.
pub fn f_from_q(q: &TaylorSeries) -> Result<NormalizedFunction> {
    if (q[0] - 1.0).norm() > 1e-12 {
        return Err(Error::WrongConstantTerm {
            expected: 1.0,
            found_re: q[0].re,
            found_im: q[0].im,
        });
    }
    if q.order() < 2 {
        return Err(Error::OrderTooLow {
            required: 2,
            found: q.order(),
        });
    }
    let mut c = q.coeffs().to_vec();
    c[0] = C64::new(0.0, 0.0);
    let log_quotient = TaylorSeries::new(c)?.div_z()?.integrate0();
    NormalizedFunction::from_quotient(&log_quotient.exp0()?)
}

/// `(1 + z^k)/(1 - z^k)` through order `n`.
pub fn cayley_power(k: usize, n: usize) -> TaylorSeries {
    TaylorSeries::from_fn(n, |j| {
        let v = if j == 0 {
            1.0
        } else if j % k == 0 {
            2.0
        } else {
            0.0
        };
        C64::new(v, 0.0)
    })
}

/// `z^k/(1 - z^k)` through order `n`.
pub fn geometric_power(k: usize, n: usize) -> TaylorSeries {
    TaylorSeries::from_fn(n, |j| {
        C64::new(if j > 0 && j % k == 0 { 1.0 } else { 0.0 }, 0.0)
    })
}

/// Which sharp line an extremal lives on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Line {
    /// `M_{0,β}`.
    Beta(f64),
    /// `M_{α,1-α}`.
    Alpha(f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhiSample {
    pub lambda: C64,
    pub value: C64,
}

impl Serialize for PhiSample {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("lambda", &[self.lambda.re, self.lambda.im])?;
        map.serialize_entry("value", &[self.value.re, self.value.im])?;
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalResult {
    pub line: Line,
    pub k: usize,
    pub f: NormalizedFunction,
    pub a2: C64,
    pub a3: C64,
    pub phi_at: Vec<PhiSample>,
}

impl ExtremalResult {
    fn new(line: Line, k: usize, f: NormalizedFunction) -> Self {
        let phi_at = default_lambda_grid()
            .into_iter()
            .map(|lambda| PhiSample {
                lambda,
                value: fekete_szego(&f, lambda),
            })
            .collect();
        Self {
            line,
            k,
            a2: f.a2(),
            a3: f.a3(),
            f,
            phi_at,
        }
    }
}

impl Serialize for ExtremalResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(6))?;
        match self.line {
            Line::Beta(b) => map.serialize_entry("beta", &b)?,
            Line::Alpha(a) => map.serialize_entry("alpha", &a)?,
        }
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("a2", &[self.a2.re, self.a2.im])?;
        map.serialize_entry("a3", &[self.a3.re, self.a3.im])?;
        map.serialize_entry("phi", &self.phi_at)?;
        map.serialize_entry("f", self.f.series())?;
        map.end()
    }
}

fn check_k(k: usize) -> Result<()> {
    if k == 1 || k == 2 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("k must be 1 or 2, got {k}")))
    }
}

/// Extremal of `M_{0,β}` whose operator equals `β/2 + (1-β/2)(1+z^k)/(1-z^k)`.
///
/// With `q = zf'/f` the operator is `q + (1-β) zq'/q`, i.e. `B = 1/(1-β)`, `Γ = 0`;
/// `β = 1` is the algebraic case `q = h`.
pub fn extremal_mocanu(beta: f64, k: usize, n: usize) -> Result<ExtremalResult> {
    check_k(k)?;
    if !(0.0..=1.0).contains(&beta) {
        return Err(Error::InvalidParams(format!(
            "beta must lie in [0, 1], got {beta}"
        )));
    }
    let h = cayley_power(k, n)
        .scale_real(1.0 - beta / 2.0)
        .add_constant(C64::new(beta / 2.0, 0.0));
    let q = mocanu_quotient(h, beta, n)?;
    Ok(ExtremalResult::new(Line::Beta(beta), k, f_from_q(&q)?))
}

/// Solves `q + (1-β) zq'/q = h` for `q = zf'/f`.
pub(crate) fn mocanu_quotient(h: TaylorSeries, beta: f64, n: usize) -> Result<TaylorSeries> {
    if beta == 1.0 {
        Ok(h.truncate(n))
    } else {
        solve_bb(&BriotBouquetProblem::new(h, 1.0 / (1.0 - beta), 0.0)?, n)
    }
}

/// Extremal of `M_{α,1-α}` whose operator equals `1/(1-z^k)`.
///
/// With `p = f/z`: `α p + (1-α)(1 + zp'/p) = g` becomes
/// `p + zp'/((α/(1-α)) p) = 1 + (g - 1)/α`; `α = 1` is the algebraic case `p = g`.
pub fn extremal_alpha(alpha: f64, k: usize, n: usize) -> Result<ExtremalResult> {
    check_k(k)?;
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParams(format!(
            "alpha must lie in (0, 1], got {alpha}"
        )));
    }
    let target = geometric_power(k, n).add_constant(C64::new(1.0, 0.0));
    let p = alpha_quotient(&target, alpha, n)?;
    Ok(ExtremalResult::new(
        Line::Alpha(alpha),
        k,
        NormalizedFunction::from_quotient(&p)?,
    ))
}

/// Solves for `p = f/z` given the target `g_{α,1-α}` with `g(0) = 1`.
pub(crate) fn alpha_quotient(target: &TaylorSeries, alpha: f64, n: usize) -> Result<TaylorSeries> {
    if alpha == 1.0 {
        return Ok(target.truncate(n));
    }
    let h = target
        .add_constant(C64::new(-1.0, 0.0))
        .scale_real(1.0 / alpha)
        .add_constant(C64::new(1.0, 0.0));
    solve_bb(&BriotBouquetProblem::new(h, alpha / (1.0 - alpha), 0.0)?, n)
}
