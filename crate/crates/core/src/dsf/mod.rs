//! Deformation structure functions `Φ(n)`.
//!
//! Three independent routes are available:
//!
//! - [`phi_closed`]: the tabulated closed forms
//!   `Φ^(1)(n) = 2q⁻ⁿ[n]_q(1 + q^(1-n)) / ((1 + q^(2n-2))(1 + q^(2n)))` and
//!   their `B`, `C`, `D` and two-parameter (`Q = q/p`, overall `1/p`) cousins.
//! - [`phi_from_gh`]: reconstruction from an operator-function pair
//!   `(G, H)` by the factorial recipe.
//! - symmetrized forms, see [`crate::symmetry`].

mod brackets;
mod params;

pub use brackets::{bracket_pq, bracket_q, bracket_sym};
pub(crate) use brackets::{bracket_q_complex, bracket_q_unchecked, bracket_sym_unchecked};
pub use params::{DeformationParams, Family, FamilyId, Specialization};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families;

/// Largest `n` accepted by the recipe route. Running products of `G/H`
/// scale like `q^(-5n)`, so larger `n` under- or overflows for `q` far from 1.
pub const RECIPE_N_CAP: usize = 200;

/// Exponent `a_j(n)` of the leading power in the numerator of `Φ^(j)`:
/// `q^(-n)`, `q^(5n-3)`, `q^(2n-3)`, `q^(2n)` for `j = 1..4`.
fn numerator_exponent(family: Family, n: i32) -> i32 {
    match family.index() {
        1 => -n,
        2 => 5 * n - 3,
        3 => 2 * n - 3,
        _ => 2 * n,
    }
}

/// Exponent `e_j(n)` in `Φ^(j)(n) = Q^(e_j(n)) Φ^(1)(n)`.
pub fn ratio_exponent(family: Family, n: i32) -> i32 {
    match family.index() {
        1 => 0,
        2 => 3 * (2 * n - 1),
        3 => 3 * (n - 1),
        _ => 3 * n,
    }
}

/// `Q^(e_j(n))`, the expected value of `Φ^(j)(n)/Φ^(1)(n)`.
pub fn expected_ratio(family: Family, params: &DeformationParams, n: usize) -> f64 {
    params.big_q().powi(ratio_exponent(family, n as i32))
}

/// Closed-form `Φ(n)` for a tabulated family (`c(0)·d(0) = 1`).
pub fn phi_closed(family: FamilyId, params: &DeformationParams, n: usize) -> Result<f64> {
    family.check(params)?;
    if !family.is_tabulated() {
        return Err(Error::NoClosedForm {
            product: family.kappa(),
        });
    }
    if n == 0 {
        return Ok(0.0);
    }
    let big_q = params.big_q();
    let p = params.p_or_one();
    let m = n as i32;
    let numerator = 2.0
        * big_q.powi(numerator_exponent(family.family, m))
        * bracket_q_unchecked(m, big_q)
        * (1.0 + big_q.powi(1 - m));
    let denominator = (1.0 + big_q.powi(2 * m - 2)) * (1.0 + big_q.powi(2 * m)) * p;
    let value = numerator / denominator;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow { n })
    }
}

/// Same closed form for complex `Q` and `p`; used by the symmetrized routes.
pub(crate) fn phi_closed_complex(
    family: Family,
    big_q: Complex64,
    p: Complex64,
    n: usize,
) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let m = n as i32;
    let numerator = big_q.powi(numerator_exponent(family, m))
        * bracket_q_complex(m, big_q)
        * (one + big_q.powi(1 - m))
        * 2.0;
    let denominator = (one + big_q.powi(2 * m - 2)) * (one + big_q.powi(2 * m)) * p;
    numerator / denominator
}

/// Reconstructs `Φ(n)` from operator functions `H` and `G`:
///
/// `Φ(n) = G(n-1)!/H(n-1)! · (1/H(0) + Σ_{j=1}^{n-1} H(j-1)!/G(j)!)`
///
/// with `X(k)! = X(k)X(k-1)···X(1)` and `X(0)! = 1`, the convention of
/// `Φ(n)!`. `Φ(0) = 0`. The factorial quotients are accumulated as running
/// products of ratios so that no factorial is ever formed on its own.
pub fn phi_from_gh<H, G>(h: H, g: G, n: usize) -> Result<f64>
where
    H: Fn(i64) -> f64,
    G: Fn(i64) -> f64,
{
    if n == 0 {
        return Ok(0.0);
    }
    if n > RECIPE_N_CAP {
        return Err(Error::RecipeCap {
            n,
            cap: RECIPE_N_CAP,
        });
    }
    let nonzero = |function: &'static str, index: i64, v: f64| {
        if v == 0.0 || !v.is_finite() {
            Err(Error::SingularRecipe { function, index })
        } else {
            Ok(v)
        }
    };

    let h0 = nonzero("H", 0, h(0))?;
    // G(n-1)!/H(n-1)!
    let mut prefactor = 1.0;
    // H(j-1)!/G(j)!
    let mut term = 1.0;
    let mut sum = 1.0 / h0;
    let mut h_prev = h0;
    for j in 1..n as i64 {
        let gj = nonzero("G", j, g(j))?;
        let hj = nonzero("H", j, h(j))?;
        prefactor *= gj / hj;
        term *= if j == 1 { 1.0 / gj } else { h_prev / gj };
        sum += term;
        h_prev = hj;
    }
    let value = prefactor * sum;
    if value.is_finite() && (prefactor != 0.0 || sum == 0.0) {
        Ok(value)
    } else {
        Err(Error::Overflow { n })
    }
}

/// `Φ_X(n) / Φ_ref(n)` by the closed forms. Both families share `params`.
pub fn phi_ratio_check(
    family: FamilyId,
    reference: FamilyId,
    params: &DeformationParams,
    n: usize,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::UndefinedRatio);
    }
    Ok(phi_closed(family, params, n)? / phi_closed(reference, params, n)?)
}

/// How a [`StructureFunction`] is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SfKind {
    ClosedForm,
    Recipe,
    Symmetrized,
}

/// An evaluatable `Φ(n)` bound to a family and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructureFunction {
    pub family: FamilyId,
    pub params: DeformationParams,
    pub kind: SfKind,
}

impl StructureFunction {
    pub fn new(family: FamilyId, params: DeformationParams, kind: SfKind) -> Result<Self> {
        family.check(&params)?;
        if kind != SfKind::Recipe && !family.is_tabulated() {
            return Err(Error::NoClosedForm {
                product: family.kappa(),
            });
        }
        Ok(StructureFunction {
            family,
            params,
            kind,
        })
    }

    /// Closed form when tabulated, the recipe otherwise.
    pub fn preferred(family: FamilyId, params: DeformationParams) -> Result<Self> {
        let kind = if family.is_tabulated() {
            SfKind::ClosedForm
        } else {
            SfKind::Recipe
        };
        Self::new(family, params, kind)
    }

    pub fn eval(&self, n: usize) -> Result<f64> {
        match self.kind {
            SfKind::ClosedForm => phi_closed(self.family, &self.params, n),
            SfKind::Recipe => families::gh_pair(self.family, &self.params)?.phi(n),
            SfKind::Symmetrized => match self.params.p() {
                None => crate::symmetry::phi_symmetrized(
                    self.family.family,
                    Complex64::new(self.params.q(), 0.0),
                    n,
                ),
                Some(p) => {
                    let v = crate::symmetry::phi_symmetrized_pq(
                        self.family.family,
                        Complex64::new(self.params.q(), 0.0),
                        Complex64::new(p, 0.0),
                        n,
                    )?;
                    Ok(v.re)
                }
            },
        }
    }

    /// `Φ(0..=n_max)`.
    pub fn values(&self, n_max: usize) -> Result<Vec<f64>> {
        (0..=n_max).map(|n| self.eval(n)).collect()
    }
}
