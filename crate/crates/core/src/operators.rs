//! The blended operator `g_{α,β}`, the Fekete–Szegő functional, the
//! half-plane-to-disk transform and the Mocanu transform pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{NormalizedFunction, TaylorSeries, C64};

/// Drift allowed before `mocanu_f` refuses to snap its output to class-A form.
const MOCANU_NORMALIZE_TOL: f64 = 1e-10;

/// The real pair `(α, β)` selecting `g_{α,β} = α f/z + β zf'/f + (1-α-β)(1 + zf''/f')`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassParams {
    alpha: f64,
    beta: f64,
}

impl ClassParams {
    /// Rejects `α + β ≥ 2`, for which the class is empty.
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) {
            return Err(Error::InvalidParams("alpha and beta must be finite".into()));
        }
        if alpha + beta >= 2.0 {
            return Err(Error::InvalidParams(format!(
                "alpha+beta must be < 2 (got {alpha}+{beta}); the class is empty otherwise"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// The Mocanu line `α = 0`.
    pub fn mocanu(beta: f64) -> Result<Self> {
        Self::new(0.0, beta)
    }

    /// The line `β = 1 - α`.
    pub fn alpha_line(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0 - alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Membership threshold `(α+β)/2` on `Re g_{α,β}`.
    pub fn threshold(&self) -> f64 {
        (self.alpha + self.beta) / 2.0
    }

    /// `μ = (2-α-β)/(6-5α-4β)`, defined when `5α + 4β < 6`.
    pub fn mu(&self) -> Option<f64> {
        let den = 6.0 - 5.0 * self.alpha - 4.0 * self.beta;
        (den > 0.0).then(|| (2.0 - self.alpha - self.beta) / den)
    }

    /// The Fekete–Szegő bound `max(μ, |1-λ|)`.
    pub fn fs_bound(&self, lambda: C64) -> Option<f64> {
        self.mu()
            .map(|mu| mu.max((C64::new(1.0, 0.0) - lambda).norm()))
    }
}

/// `λ` together with its reparameterization `λ = 1 + sμ`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FSParams {
    pub lambda: C64,
    pub mu: f64,
    pub s: C64,
}

impl FSParams {
    pub fn from_lambda(params: &ClassParams, lambda: C64) -> Result<Self> {
        let mu = Self::mu_of(params)?;
        Ok(Self {
            lambda,
            mu,
            s: (lambda - 1.0) / mu,
        })
    }

    pub fn from_s(params: &ClassParams, s: C64) -> Result<Self> {
        let mu = Self::mu_of(params)?;
        Ok(Self {
            lambda: s * mu + 1.0,
            mu,
            s,
        })
    }

    fn mu_of(params: &ClassParams) -> Result<f64> {
        params.mu().ok_or_else(|| {
            Error::InvalidParams(format!(
                "5*alpha+4*beta must be < 6 (got alpha={}, beta={})",
                params.alpha, params.beta
            ))
        })
    }
}

/// λ-grid `{x + iy : x ∈ [-1, 3] step 0.1, y ∈ {-1, 0, 1}}` covering both
/// regimes of `max(μ, |1-λ|)`.
pub fn default_lambda_grid() -> Vec<C64> {
    let mut grid = Vec::with_capacity(123);
    for y in [-1.0, 0.0, 1.0] {
        for i in 0..=40 {
            grid.push(C64::new(-1.0 + i as f64 / 10.0, y));
        }
    }
    grid
}

/// Series of `g_{α,β}` for `f`; its order is one below that of `f`.
pub fn g_operator(f: &NormalizedFunction, p: &ClassParams) -> Result<TaylorSeries> {
    if f.order() < 4 {
        return Err(Error::OrderTooLow {
            required: 4,
            found: f.order(),
        });
    }
    let (a, b) = (p.alpha, p.beta);
    let quotient = f.quotient();
    let starlike = f.starlike_ratio();
    let convexity = f.convexity_ratio();
    Ok(&(&quotient.scale_real(a) + &starlike.scale_real(b)) + &convexity.scale_real(1.0 - a - b))
}

/// `Φ(f, λ) = a₃ - λ a₂²`.
pub fn fekete_szego(f: &NormalizedFunction, lambda: C64) -> C64 {
    let a2 = f.a2();
    f.a3() - lambda * a2 * a2
}

/// `ω = (g - g(0)) / (g - 2γ + g(0))`; `Re g > γ` exactly where `|ω| < 1`.
pub fn omega_transform(g: &TaylorSeries, gamma: f64) -> Result<TaylorSeries> {
    let g0 = g[0];
    let num = g.add_constant(-g0);
    let den = g.add_constant(g0 - 2.0 * gamma);
    num.div(&den)
}

fn check_mocanu_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() || beta >= 2.0 || beta == 1.0 {
        return Err(Error::InvalidParams(format!(
            "Mocanu transform needs beta < 2 and beta != 1 (got {beta})"
        )));
    }
    Ok(())
}

/// `g(z) = z (f')^{(2-2β)/(2-β)} (f/z)^{2β/(2-β)}`, starlike exactly when `f ∈ M_{0,β}`.
pub fn mocanu_g(f: &NormalizedFunction, beta: f64) -> Result<TaylorSeries> {
    check_mocanu_beta(beta)?;
    let d = f.derivative().pow_real((2.0 - 2.0 * beta) / (2.0 - beta))?;
    let q = f.quotient().pow_real(2.0 * beta / (2.0 - beta))?;
    Ok((&d * &q).mul_z())
}

/// Inverse of [`mocanu_g`], equivalent to
/// `f = [ (1/(1-β)) ∫₀^z w^{β/(1-β)} (g(w)/w)^{(2-β)/(2-2β)} dw ]^{1-β}`.
///
/// Evaluating that closed form through the power `(2-β)/(2-2β)` cancels
/// catastrophically as `β → 1`. Instead, with `P = f/z`, `a = (2-2β)/(2-β)` and
/// `b = 2β/(2-β)`, the identity `log(g/z) = a log(P + zP') + b log P` is solved
/// one coefficient at a time: `p_n` enters the `z^n` term linearly with weight
/// `a(n+1) + b = 2(1 + (1-β)n)/(2-β)`.
pub fn mocanu_f(g: &TaylorSeries, beta: f64) -> Result<NormalizedFunction> {
    check_mocanu_beta(beta)?;
    if g[0].norm() > 1e-12 || (g[1] - 1.0).norm() > 1e-12 {
        return Err(Error::NotNormalized(format!(
            "mocanu_f needs g(0)=0, g'(0)=1 (got {}, {})",
            g[0], g[1]
        )));
    }
    let mut c = g.coeffs().to_vec();
    c[0] = C64::new(0.0, 0.0);
    c[1] = C64::new(1.0, 0.0);
    let target = TaylorSeries::new(c)?.div_z()?.log1()?;
    let a = (2.0 - 2.0 * beta) / (2.0 - beta);
    let b = 2.0 * beta / (2.0 - beta);
    let n = target.order();

    let one = C64::new(1.0, 0.0);
    let mut p = vec![one];
    let mut log_u = vec![C64::new(0.0, 0.0)];
    let mut log_p = vec![C64::new(0.0, 0.0)];
    for m in 1..=n {
        // log coefficients of u = 1 + Σ u_k z^k: ℓ_m = u_m - (1/m) Σ_{k=1}^{m-1} k ℓ_k u_{m-k}
        let scale = 1.0 / m as f64;
        let rest_u: C64 = (1..m)
            .map(|k| log_u[k] * p[m - k] * ((k * (m - k + 1)) as f64))
            .sum::<C64>()
            * -scale;
        let rest_p: C64 = (1..m).map(|k| log_p[k] * p[m - k] * k as f64).sum::<C64>() * -scale;
        let weight = a * (m + 1) as f64 + b;
        if weight.abs() < 1e-12 {
            return Err(Error::SmallDenominator {
                index: m,
                value: weight,
            });
        }
        let pm = (target[m] - rest_u * a - rest_p * b) / weight;
        p.push(pm);
        log_u.push(pm * (m + 1) as f64 + rest_u);
        log_p.push(pm + rest_p);
    }
    NormalizedFunction::normalize(TaylorSeries::new(p)?.mul_z(), MOCANU_NORMALIZE_TOL)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn params_reject_empty_classes() {
        assert!(ClassParams::new(1.0, 1.0).is_err());
        assert!(ClassParams::new(1.5, 0.7).is_err());
        assert!(ClassParams::new(f64::NAN, 0.0).is_err());
        let p = ClassParams::new(0.5, 0.5).unwrap();
        assert_eq!(p.threshold(), 0.5);
        let err = ClassParams::new(2.0, 0.0).unwrap_err().to_string();
        assert!(err.contains("alpha+beta must be < 2"), "{err}");
    }

    #[test]
    fn mu_values() {
        assert_abs_diff_eq!(ClassParams::new(0.0, 0.0).unwrap().mu().unwrap(), 1.0 / 3.0);
        assert_abs_diff_eq!(ClassParams::new(0.0, 1.0).unwrap().mu().unwrap(), 0.5);
        assert_abs_diff_eq!(ClassParams::new(1.0, 0.0).unwrap().mu().unwrap(), 1.0);
        assert!(ClassParams::new(1.0, 0.5).unwrap().mu().is_none());
    }

    #[test]
    fn fs_params_reparameterize() {
        let p = ClassParams::mocanu(0.5).unwrap();
        let fs = FSParams::from_lambda(&p, C64::new(2.0, -1.0)).unwrap();
        assert!((fs.lambda - (fs.s * fs.mu + 1.0)).norm() < 1e-15);
        let fs = FSParams::from_s(&p, C64::new(0.3, 0.7)).unwrap();
        assert_eq!(fs.lambda, fs.s * fs.mu + 1.0);
        assert!(FSParams::from_lambda(&ClassParams::new(1.0, 0.5).unwrap(), c(1.0)).is_err());
    }

    #[test]
    fn g_of_identity_is_one() {
        let f = NormalizedFunction::identity(20);
        for (a, b) in [(0.0, 0.0), (1.0, 0.0), (0.3, -0.7), (-2.0, 1.5)] {
            let g = g_operator(&f, &ClassParams::new(a, b).unwrap()).unwrap();
            assert!(g.max_abs_diff(&TaylorSeries::one(g.order())) < 1e-15);
        }
    }

    #[test]
    fn g_of_half_plane_and_koebe() {
        let expected = |n| TaylorSeries::from_fn(n, |k| c(if k == 0 { 1.0 } else { 2.0 }));
        let g = g_operator(
            &NormalizedFunction::half_plane(40),
            &ClassParams::new(0.0, 0.0).unwrap(),
        )
        .unwrap();
        assert!(g.max_abs_diff(&expected(g.order())) < 1e-10);
        let g = g_operator(
            &NormalizedFunction::koebe(40),
            &ClassParams::new(0.0, 1.0).unwrap(),
        )
        .unwrap();
        assert!(g.max_abs_diff(&expected(g.order())) < 1e-10);
    }

    #[test]
    fn g_needs_order_four() {
        let f = NormalizedFunction::identity(3);
        assert!(matches!(
            g_operator(&f, &ClassParams::new(0.0, 0.0).unwrap()),
            Err(Error::OrderTooLow { .. })
        ));
    }

    #[test]
    fn fekete_szego_examples() {
        assert_eq!(
            fekete_szego(&NormalizedFunction::identity(5), C64::new(3.0, 2.0)),
            c(0.0)
        );
        assert_eq!(fekete_szego(&NormalizedFunction::koebe(5), c(1.0)), c(-1.0));
        let lam = C64::new(0.4, -1.2);
        assert_eq!(
            fekete_szego(&NormalizedFunction::half_plane(5), lam),
            c(1.0) - lam
        );
    }

    #[test]
    fn omega_examples() {
        let n = 30;
        let cayley = TaylorSeries::from_fn(n, |k| c(if k == 0 { 1.0 } else { 2.0 }));
        let w = omega_transform(&cayley, 0.0).unwrap();
        assert!(w.max_abs_diff(&TaylorSeries::identity(n)) < 1e-13);

        let w = omega_transform(&TaylorSeries::one(n), 0.3).unwrap();
        assert!(w.max_abs_diff(&TaylorSeries::zero(n)) < 1e-15);

        // 1/(1-z) with γ = 1/2: ω = (g-1)/g = 1 - (1-z) = z
        let geo = TaylorSeries::from_fn(n, |_| c(1.0));
        let w = omega_transform(&geo, 0.5).unwrap();
        assert!(w.max_abs_diff(&TaylorSeries::identity(n)) < 1e-13);

        assert!(matches!(
            omega_transform(&geo, 1.0),
            Err(Error::VanishingConstant(_))
        ));
    }

    #[test]
    fn mocanu_examples() {
        let id = NormalizedFunction::identity(12);
        for beta in [-1.0, 0.0, 0.5, 1.5] {
            let g = mocanu_g(&id, beta).unwrap();
            assert!(g.max_abs_diff(&TaylorSeries::identity(g.order())) < 1e-14);
        }
        let f = NormalizedFunction::neg_log(24);
        let g = mocanu_g(&f, 0.0).unwrap();
        let zf = f.derivative().mul_z();
        assert!(g.max_abs_diff(&zf) < 1e-13);

        let f = NormalizedFunction::half_plane(60);
        let back = mocanu_f(&mocanu_g(&f, 0.5).unwrap(), 0.5).unwrap();
        assert!(back.series().max_abs_diff(f.series()) < 1e-10);

        assert!(mocanu_g(&f, 1.0).is_err());
        assert!(mocanu_g(&f, 2.0).is_err());
        assert!(mocanu_f(&TaylorSeries::identity(5), 3.0).is_err());
    }

    #[test]
    fn mocanu_f_rejects_unnormalized_input() {
        let g = TaylorSeries::real_polynomial(&[0.0, 2.0], 8).unwrap();
        assert!(matches!(mocanu_f(&g, 0.5), Err(Error::NotNormalized(_))));
    }
}
