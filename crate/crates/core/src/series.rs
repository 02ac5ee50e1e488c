//! Truncated complex power series on the unit disk.
//!
//! A [`TaylorSeries`] of order `N` stores the coefficients `c_0..c_N` and
//! nothing is known about the terms past `z^N`. Binary operations on series of
//! different orders therefore truncate to the smaller order, and operations
//! that lose information at the top (derivative, division by `z`) lower the
//! order by one, while exact raising operations (integration, multiplication by
//! `z`) raise it.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Default truncation order used throughout the toolkit.
pub const DEFAULT_ORDER: usize = 96;

/// Tolerance on the constant term for operations anchored at `c_0 = 1` or `c_0 = 0`.
const ANCHOR_TOL: f64 = 1e-12;

/// Threshold below which a divisor's constant term counts as vanishing.
pub const VANISHING_TOL: f64 = 1e-14;

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SeriesRepr", into = "SeriesRepr")]
pub struct TaylorSeries {
    coeffs: Vec<C64>,
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    n: usize,
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<SeriesRepr> for TaylorSeries {
    type Error = String;

    fn try_from(repr: SeriesRepr) -> std::result::Result<Self, String> {
        if repr.coeffs.len() != repr.n + 1 {
            return Err(format!(
                "expected {} coefficients for n = {}, found {}",
                repr.n + 1,
                repr.n,
                repr.coeffs.len()
            ));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|&[re, im]| C64::new(re, im))
            .collect();
        TaylorSeries::new(coeffs).map_err(|e| e.to_string())
    }
}

impl From<TaylorSeries> for SeriesRepr {
    fn from(s: TaylorSeries) -> Self {
        SeriesRepr {
            n: s.order(),
            coeffs: s.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl fmt::Debug for TaylorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TaylorSeries(N={}; ", self.order())?;
        for (k, c) in self.coeffs.iter().enumerate().take(6) {
            write!(f, "[{k}] {:.6}{:+.6}i ", c.re, c.im)?;
        }
        if self.coeffs.len() > 6 {
            write!(f, "...")?;
        }
        write!(f, ")")
    }
}

impl TaylorSeries {
    /// Builds a series from `c_0..c_N`; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams(
                "a series needs at least one coefficient".into(),
            ));
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { coeffs })
    }

    /// Polynomial with the given leading coefficients, zero-padded to order `n`.
    pub fn polynomial(coeffs: &[C64], n: usize) -> Result<Self> {
        if coeffs.len() > n + 1 {
            return Err(Error::InvalidParams(format!(
                "polynomial of degree {} does not fit in order {n}",
                coeffs.len() - 1
            )));
        }
        let mut c = coeffs.to_vec();
        c.resize(n + 1, C64::new(0.0, 0.0));
        Self::new(c)
    }

    /// Real-coefficient polynomial, zero-padded to order `n`.
    pub fn real_polynomial(coeffs: &[f64], n: usize) -> Result<Self> {
        let c: Vec<C64> = coeffs.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::polynomial(&c, n)
    }

    pub fn from_fn(n: usize, f: impl FnMut(usize) -> C64) -> Self {
        let coeffs: Vec<C64> = (0..=n).map(f).collect();
        debug_assert!(coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite()));
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(C64::new(0.0, 0.0), n)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(C64::new(1.0, 0.0), n)
    }

    pub fn constant(c: C64, n: usize) -> Self {
        Self::from_fn(n, |k| if k == 0 { c } else { C64::new(0.0, 0.0) })
    }

    /// The series of `z`.
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |k| {
            if k == 1 {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C64> {
        self.coeffs
    }

    /// Drops every coefficient above `z^n`. No-op when `n >= order`.
    pub fn truncate(&self, n: usize) -> Self {
        let n = n.min(self.order());
        Self {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }

    /// Partial sum at a point of the open unit disk.
    pub fn evaluate(&self, z: C64) -> Result<C64> {
        if !(z.norm() < 1.0) {
            return Err(Error::OutsideDisk { re: z.re, im: z.im });
        }
        Ok(self.horner(z))
    }

    /// Horner evaluation with no domain check.
    pub fn horner(&self, z: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative by a single Horner pass.
    pub fn horner_with_derivative(&self, z: C64) -> (C64, C64) {
        let zero = C64::new(0.0, 0.0);
        self.coeffs
            .iter()
            .rev()
            .fold((zero, zero), |(p, dp), &c| (p * z + c, dp * z + p))
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn scale_real(&self, c: f64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn add_constant(&self, c: C64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    fn zip_with(&self, other: &Self, op: impl Fn(C64, C64) -> C64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }

    /// Cauchy product truncated at the smaller of the two orders.
    pub fn mul_series(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let a = &self.coeffs;
        let b = &other.coeffs;
        Self::from_fn(n, |k| (0..=k).map(|i| a[i] * b[k - i]).sum())
    }

    /// Quotient `q` with `q * other = self` through the smaller order.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let b0 = other.coeffs[0];
        if b0.norm() < VANISHING_TOL {
            return Err(Error::VanishingConstant(b0.norm()));
        }
        let n = self.order().min(other.order());
        let inv = b0.inv();
        let b = &other.coeffs;
        let mut q = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let acc: C64 = (1..=k).map(|i| b[i] * q[k - i]).sum();
            q.push((self.coeffs[k] - acc) * inv);
        }
        Self::new(q)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    /// Termwise derivative. The result has order `N - 1` since `c_{N+1}` is unknown.
    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        Self::from_fn(self.order() - 1, |k| self.coeffs[k + 1] * (k as f64 + 1.0))
    }

    /// Primitive vanishing at the origin; exact, so the order grows by one.
    pub fn integrate0(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                C64::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1] / k as f64
            }
        })
    }

    /// Multiplication by `z`; raises the order by one.
    pub fn mul_z(&self) -> Self {
        Self::from_fn(self.order() + 1, |k| {
            if k == 0 {
                C64::new(0.0, 0.0)
            } else {
                self.coeffs[k - 1]
            }
        })
    }

    /// Division by `z`; requires a vanishing constant term and lowers the order by one.
    pub fn div_z(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() >= VANISHING_TOL {
            return Err(Error::WrongConstantTerm {
                expected: 0.0,
                found_re: c0.re,
                found_im: c0.im,
            });
        }
        if self.order() == 0 {
            return Err(Error::OrderTooLow {
                required: 1,
                found: 0,
            });
        }
        Ok(Self {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// `z * s'(z)`, which keeps the order.
    pub fn z_derivative(&self) -> Self {
        Self::from_fn(self.order(), |k| self.coeffs[k] * k as f64)
    }

    /// Substitutes `z^m` for `z`, keeping the order.
    pub fn substitute_power(&self, m: usize) -> Self {
        assert!(m >= 1);
        Self::from_fn(self.order(), |k| {
            if k % m == 0 {
                self.coeffs[k / m]
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    fn check_anchor(&self, expected: f64) -> Result<()> {
        let c0 = self.coeffs[0];
        if (c0 - expected).norm() > ANCHOR_TOL {
            return Err(Error::WrongConstantTerm {
                expected,
                found_re: c0.re,
                found_im: c0.im,
            });
        }
        Ok(())
    }

    /// Principal logarithm of a series with `c_0 = 1`.
    pub fn log1(&self) -> Result<Self> {
        self.check_anchor(1.0)?;
        let s = &self.coeffs;
        let mut l = vec![C64::new(0.0, 0.0); s.len()];
        for n in 1..s.len() {
            let acc: C64 = (1..n).map(|k| l[k] * s[n - k] * k as f64).sum();
            l[n] = s[n] - acc / n as f64;
        }
        Self::new(l)
    }

    /// Exponential of a series with `c_0 = 0`.
    pub fn exp0(&self) -> Result<Self> {
        self.check_anchor(0.0)?;
        let s = &self.coeffs;
        let mut e = vec![C64::new(0.0, 0.0); s.len()];
        e[0] = C64::new(1.0, 0.0);
        for n in 1..s.len() {
            let acc: C64 = (1..=n).map(|k| s[k] * e[n - k] * k as f64).sum();
            e[n] = acc / n as f64;
        }
        Self::new(e)
    }

    /// Principal real power `s^c` of a series with `c_0 = 1`.
    pub fn pow_real(&self, c: f64) -> Result<Self> {
        self.log1()?.scale_real(c).exp0()
    }

    /// Largest coefficientwise modulus difference through the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Heuristic bound on the discarded tail `sum_{k>N} |c_k| r^k`, assuming the
    /// unknown coefficients stay below the largest of the last few stored ones.
    pub fn tail_estimate(&self, r: f64) -> f64 {
        let n = self.order();
        let window = 8.min(n + 1);
        let m = self.coeffs[n + 1 - window..]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        if r >= 1.0 {
            return if m == 0.0 { 0.0 } else { f64::INFINITY };
        }
        m * r.powi(n as i32 + 1) / (1.0 - r)
    }
}

impl Index<usize> for TaylorSeries {
    type Output = C64;

    fn index(&self, k: usize) -> &C64 {
        &self.coeffs[k]
    }
}

impl Add for &TaylorSeries {
    type Output = TaylorSeries;
    fn add(self, rhs: &TaylorSeries) -> TaylorSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TaylorSeries {
    type Output = TaylorSeries;
    fn sub(self, rhs: &TaylorSeries) -> TaylorSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul for &TaylorSeries {
    type Output = TaylorSeries;
    fn mul(self, rhs: &TaylorSeries) -> TaylorSeries {
        self.mul_series(rhs)
    }
}

impl Neg for &TaylorSeries {
    type Output = TaylorSeries;
    fn neg(self) -> TaylorSeries {
        self.scale_real(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for TaylorSeries {
            type Output = TaylorSeries;
            fn $m(self, rhs: TaylorSeries) -> TaylorSeries {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&TaylorSeries> for TaylorSeries {
            type Output = TaylorSeries;
            fn $m(self, rhs: &TaylorSeries) -> TaylorSeries {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// A member of class A: `f(0) = 0`, `f'(0) = 1`, stored to order at least 3.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TaylorSeries", into = "TaylorSeries")]
pub struct NormalizedFunction {
    series: TaylorSeries,
}

impl TryFrom<TaylorSeries> for NormalizedFunction {
    type Error = Error;
    fn try_from(s: TaylorSeries) -> Result<Self> {
        Self::new(s)
    }
}

impl From<NormalizedFunction> for TaylorSeries {
    fn from(f: NormalizedFunction) -> Self {
        f.series
    }
}

impl NormalizedFunction {
    pub const MIN_ORDER: usize = 3;

    /// Requires `c_0 = 0` and `c_1 = 1` exactly.
    pub fn new(series: TaylorSeries) -> Result<Self> {
        if series.order() < Self::MIN_ORDER {
            return Err(Error::OrderTooLow {
                required: Self::MIN_ORDER,
                found: series.order(),
            });
        }
        if series[0] != C64::new(0.0, 0.0) || series[1] != C64::new(1.0, 0.0) {
            return Err(Error::NotNormalized(format!(
                "c0 = {}, c1 = {}",
                series[0], series[1]
            )));
        }
        Ok(Self { series })
    }

    /// Snaps `c_0` to 0 and `c_1` to 1 provided they are already within `tol`.
    pub fn normalize(series: TaylorSeries, tol: f64) -> Result<Self> {
        let drift = series[0].norm().max((series[1] - 1.0).norm());
        if drift > tol {
            return Err(Error::NotNormalized(format!(
                "normalization drift {drift:e} exceeds {tol:e}"
            )));
        }
        let mut coeffs = series.into_coeffs();
        coeffs[0] = C64::new(0.0, 0.0);
        coeffs[1] = C64::new(1.0, 0.0);
        Self::new(TaylorSeries::new(coeffs)?)
    }

    /// Builds `z * p(z)` for `p(0) = 1`.
    pub fn from_quotient(p: &TaylorSeries) -> Result<Self> {
        Self::normalize(p.mul_z(), ANCHOR_TOL)
    }

    pub fn series(&self) -> &TaylorSeries {
        &self.series
    }

    pub fn order(&self) -> usize {
        self.series.order()
    }

    pub fn coeff(&self, k: usize) -> C64 {
        self.series[k]
    }

    pub fn a2(&self) -> C64 {
        self.series[2]
    }

    pub fn a3(&self) -> C64 {
        self.series[3]
    }

    /// `f(z)/z`, of order `N - 1`.
    pub fn quotient(&self) -> TaylorSeries {
        self.series
            .div_z()
            .expect("normalized function vanishes at the origin")
    }

    pub fn derivative(&self) -> TaylorSeries {
        self.series.derivative()
    }

    /// `z f'(z) / f(z)`, of order `N - 1`.
    pub fn starlike_ratio(&self) -> TaylorSeries {
        self.derivative()
            .div(&self.quotient())
            .expect("f(z)/z has unit constant term")
    }

    /// `1 + z f''(z) / f'(z)`, of order `N - 1`.
    pub fn convexity_ratio(&self) -> TaylorSeries {
        let d1 = self.derivative();
        let zd2 = d1.z_derivative();
        zd2.div(&d1)
            .expect("f' has unit constant term")
            .add_constant(C64::new(1.0, 0.0))
    }

    pub fn identity(n: usize) -> Self {
        Self::new(TaylorSeries::identity(n.max(Self::MIN_ORDER))).expect("z is normalized")
    }

    /// Koebe function `z/(1-z)^2`.
    pub fn koebe(n: usize) -> Self {
        let n = n.max(Self::MIN_ORDER);
        Self::new(TaylorSeries::from_fn(n, |k| C64::new(k as f64, 0.0))).expect("normalized")
    }

    /// Half-plane map `z/(1-z)`.
    pub fn half_plane(n: usize) -> Self {
        let n = n.max(Self::MIN_ORDER);
        Self::new(TaylorSeries::from_fn(n, |k| {
            C64::new(if k == 0 { 0.0 } else { 1.0 }, 0.0)
        }))
        .expect("normalized")
    }

    /// `-z - 2 log(1 - z)`.
    pub fn neg_log(n: usize) -> Self {
        let n = n.max(Self::MIN_ORDER);
        Self::new(TaylorSeries::from_fn(n, |k| match k {
            0 => C64::new(0.0, 0.0),
            1 => C64::new(1.0, 0.0),
            _ => C64::new(2.0 / k as f64, 0.0),
        }))
        .expect("normalized")
    }
}
