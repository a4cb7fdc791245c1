//! Coefficient functions `f, g, h, k` and operator functions `H(N), G(N)`.
//!
//! `X = f(N)a⁻ + g(N)a⁺`, `P = i(k(N)a⁺ - h(N)a⁻)`. Every family is a set of
//! power laws in `q` (or `Q = q/p`) scaled by `1/√2`.

use std::fmt;
use std::sync::Arc;

use crate::dsf::{phi_from_gh, DeformationParams, Family, FamilyId};
use crate::error::{Error, Result};

/// Powers of `q` (per unit of `N`) in `f, g, h, k`.
fn exponents(family: Family) -> [i32; 4] {
    match family.untilded() {
        Family::A => [1, 2, 2, 1],
        Family::B => [-2, -1, -1, -2],
        Family::C => [-2, 2, -1, 1],
        _ => [1, -1, 2, -2],
    }
}

/// Closed-form coefficient functions of one family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet {
    pub family: FamilyId,
    pub params: DeformationParams,
}

impl CoefficientSet {
    fn power(&self, slot: usize, n: i64) -> f64 {
        let e = exponents(self.family.family)[slot];
        self.params.big_q().powi(e * n as i32) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn f(&self, n: i64) -> f64 {
        self.power(0, n)
    }

    /// Includes the factor `c(0)`.
    pub fn g(&self, n: i64) -> f64 {
        self.family.c0 * self.power(1, n)
    }

    /// Includes the factor `d(0)`.
    pub fn h(&self, n: i64) -> f64 {
        self.family.d0 * self.power(2, n)
    }

    pub fn k(&self, n: i64) -> f64 {
        self.power(3, n)
    }

    /// `H(n) = p f(n)k(n+1) + q h(n)g(n+1)` (`p = 1` for one parameter).
    pub fn assembled_h(&self, n: i64) -> f64 {
        let (q, p) = (self.params.q(), self.params.p_or_one());
        p * self.f(n) * self.k(n + 1) + q * self.h(n) * self.g(n + 1)
    }

    /// `G(n) = p g(n)h(n-1) + q k(n)f(n-1)`.
    pub fn assembled_g(&self, n: i64) -> f64 {
        let (q, p) = (self.params.q(), self.params.p_or_one());
        p * self.g(n) * self.h(n - 1) + q * self.k(n) * self.f(n - 1)
    }
}

pub fn coefficients(family: FamilyId, params: &DeformationParams) -> Result<CoefficientSet> {
    family.check(params)?;
    if !(family.c0.is_finite() && family.d0.is_finite()) || family.c0 == 0.0 || family.d0 == 0.0 {
        return Err(Error::Domain(format!(
            "c(0) and d(0) must be finite and nonzero, got {} and {}",
            family.c0, family.d0
        )));
    }
    Ok(CoefficientSet {
        family,
        params: *params,
    })
}

type OperatorFn = Arc<dyn Fn(i64) -> f64 + Send + Sync>;

/// Operator functions `H(N)`, `G(N)` of `H(N)a⁻a⁺ - G(N)a⁺a⁻ = 1`.
#[derive(Clone)]
pub struct GhPair {
    h: OperatorFn,
    g: OperatorFn,
    r: Option<OperatorFn>,
}

impl fmt::Debug for GhPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GhPair")
            .field("h(0)", &self.h(0))
            .field("g(0)", &self.g(0))
            .field("has_r", &self.r.is_some())
            .finish()
    }
}

impl GhPair {
    pub fn from_fns<H, G>(h: H, g: G) -> Self
    where
        H: Fn(i64) -> f64 + Send + Sync + 'static,
        G: Fn(i64) -> f64 + Send + Sync + 'static,
    {
        GhPair {
            h: Arc::new(h),
            g: Arc::new(g),
            r: None,
        }
    }

    pub fn h(&self, n: i64) -> f64 {
        (self.h)(n)
    }

    pub fn g(&self, n: i64) -> f64 {
        (self.g)(n)
    }

    /// `ℛ(N) = f(N-1)k(N)` when the pair came from [`general_gh`].
    pub fn r(&self, n: i64) -> Option<f64> {
        self.r.as_ref().map(|r| r(n))
    }

    /// `Φ(n)` by the recipe.
    pub fn phi(&self, n: usize) -> Result<f64> {
        phi_from_gh(|j| self.h(j), |j| self.g(j), n)
    }

    /// Diagnostic for the `q → 1` consistency condition `ℛ(N) = const`:
    /// whether `ℛ` is constant on `0..=n_max` to relative `tol`. `None` when no
    /// `ℛ` is attached.
    pub fn r_is_constant(&self, n_max: usize, tol: f64) -> Option<bool> {
        let r = self.r.as_ref()?;
        let r0 = r(0);
        Some((1..=n_max as i64).all(|n| (r(n) - r0).abs() <= tol * r0.abs()))
    }
}

/// Tabulated `H(N)`, `G(N)` for a family. With `κ = c(0)d(0)` the `1`
/// multiplying `q^(±(2N±2))` in the tabulated forms is replaced by `κ`.
pub fn gh_pair(family: FamilyId, params: &DeformationParams) -> Result<GhPair> {
    coefficients(family, params)?;
    let base = params.big_q();
    let scale = 0.5 * params.p_or_one();
    let kappa = family.kappa();
    let pw = move |e: i64| base.powi(e as i32);
    let pair = match family.family.untilded() {
        Family::A => GhPair::from_fns(
            move |n| scale * pw(2 * n + 1) * (1.0 + kappa * pw(2 * n + 2)),
            move |n| scale * pw(2 * n) * (1.0 + kappa * pw(2 * n - 2)),
        ),
        Family::B => GhPair::from_fns(
            move |n| scale * pw(-2 * n) * (kappa + pw(-2 * n - 2)),
            move |n| scale * pw(-2 * n + 1) * (kappa + pw(-2 * n + 2)),
        ),
        Family::C => GhPair::from_fns(
            move |n| scale * pw(1 - n) * (1.0 + kappa * pw(2 * n + 2)),
            move |n| scale * pw(n + 1) * (kappa + pw(2 - 2 * n)),
        ),
        _ => GhPair::from_fns(
            move |n| scale * pw(n) * (kappa + pw(-2 * n - 2)),
            move |n| scale * pw(-n) * (1.0 + kappa * pw(2 * n - 2)),
        ),
    };
    Ok(pair)
}

/// `G(N) = q ℛ(N)(1 + c0 d0 q^(2N-2))`, `H(N) = ℛ(N+1)(1 + c0 d0 q^(2N+2))`
/// with `ℛ(N) = f(N-1)k(N)`, for user-supplied `f`, `k` (one-parameter
/// algebra only).
pub fn general_gh<F, K>(
    f: F,
    k: K,
    c0: f64,
    d0: f64,
    params: &DeformationParams,
    n_max: usize,
) -> Result<GhPair>
where
    F: Fn(i64) -> f64 + Send + Sync + 'static,
    K: Fn(i64) -> f64 + Send + Sync + 'static,
{
    if params.p().is_some() {
        return Err(Error::Domain(
            "general (G, H) construction is one-parameter only".into(),
        ));
    }
    for n in 0..=n_max as i64 {
        let (fv, kv) = (f(n), k(n));
        if fv == 0.0 || !fv.is_finite() {
            return Err(Error::Domain(format!(
                "f({n}) = {fv} must be finite and nonzero"
            )));
        }
        if kv == 0.0 || !kv.is_finite() {
            return Err(Error::Domain(format!(
                "k({n}) = {kv} must be finite and nonzero"
            )));
        }
    }
    let q = params.q();
    let kappa = c0 * d0;
    let r: OperatorFn = Arc::new(move |n| f(n - 1) * k(n));
    let (rg, rh) = (r.clone(), r.clone());
    Ok(GhPair {
        g: Arc::new(move |n| q * rg(n) * (1.0 + kappa * q.powi(2 * n as i32 - 2))),
        h: Arc::new(move |n| rh(n + 1) * (1.0 + kappa * q.powi(2 * n as i32 + 2))),
        r: Some(r),
    })
}

/// Largest violation over `1 ≤ n ≤ n_max` of
/// `h(n+1)/h(n) = B f(n+1)/f(n)` plus `k(n-1)/k(n) = B g(n-1)/g(n)`,
/// with `B = q` (one parameter) or `B = Q` (two parameters).
pub fn verify_ratio_recursions(cs: &CoefficientSet, n_max: usize) -> f64 {
    let base = cs.params.big_q();
    (1..=n_max as i64)
        .map(|n| {
            let first = cs.h(n + 1) / cs.h(n) - base * cs.f(n + 1) / cs.f(n);
            let second = cs.k(n - 1) / cs.k(n) - base * cs.g(n - 1) / cs.g(n);
            first.abs() + second.abs()
        })
        .fold(0.0, f64::max)
}
