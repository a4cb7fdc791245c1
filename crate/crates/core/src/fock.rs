//! Truncated Fock-space matrices and residual checks of the defining relations.
//!
//! In dimension `D` the basis is `|0⟩..|D-1⟩`. Products of two ladder
//! operators lose the `|D⟩` intermediate state, so the quadratic identities
//! hold exactly only on the leading `(D-1)×(D-1)` block (the trusted block);
//! residuals on the last row and column are reported separately.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::dsf::{DeformationParams, FamilyId, StructureFunction};
use crate::error::{Error, Result};
use crate::families::{coefficients, gh_pair, CoefficientSet, GhPair};

/// `ħ`, fixed to 1 throughout.
pub const HBAR: f64 = 1.0;

/// Largest supported truncation (matrices are dense).
pub const MAX_DIM: usize = 10_000;

pub type CMatrix = DMatrix<Complex64>;

#[derive(Debug, Clone)]
pub struct FockRep {
    pub dim: usize,
    pub trusted: usize,
    pub a_plus: CMatrix,
    pub a_minus: CMatrix,
    pub num: CMatrix,
    pub x: CMatrix,
    pub p: CMatrix,
    pub family: FamilyId,
    pub params: DeformationParams,
    /// `Φ(0..=dim)`; `Φ(dim)` is needed by `[a⁻, a⁺] = Φ(N+1) - Φ(N)`.
    pub phi: Vec<f64>,
}

pub fn build_rep(family: FamilyId, params: &DeformationParams, dim: usize) -> Result<FockRep> {
    check_dim(dim)?;
    let phi = StructureFunction::preferred(family, *params)?.values(dim)?;
    build_rep_from_phi(family, params, phi)
}

fn check_dim(dim: usize) -> Result<()> {
    if (3..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "dimension must lie in 3..={MAX_DIM}, got {dim}"
        )))
    }
}

/// Builds the representation from explicit structure-function values
/// `phi[0..=dim]`. The coefficient functions still come from `family`.
pub fn build_rep_from_phi(
    family: FamilyId,
    params: &DeformationParams,
    phi: Vec<f64>,
) -> Result<FockRep> {
    if phi.is_empty() {
        return Err(Error::Domain("empty structure-function table".into()));
    }
    let dim = phi.len() - 1;
    check_dim(dim)?;
    if let Some((n, &value)) = phi
        .iter()
        .enumerate()
        .find(|(_, v)| v.is_nan() || **v < 0.0)
    {
        return Err(Error::NegativePhi { n, value });
    }
    let cs = coefficients(family, params)?;

    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let mut a_plus = CMatrix::from_element(dim, dim, zero);
    let mut a_minus = CMatrix::from_element(dim, dim, zero);
    let mut x = CMatrix::from_element(dim, dim, zero);
    let mut p = CMatrix::from_element(dim, dim, zero);
    let num = CMatrix::from_diagonal(&nalgebra::DVector::from_fn(dim, |n, _| {
        Complex64::new(n as f64, 0.0)
    }));

    for n in 0..dim - 1 {
        let amp = phi[n + 1].sqrt();
        let (lo, hi) = (n as i64, n as i64 + 1);
        // a⁺|n⟩ = √Φ(n+1)|n+1⟩, a⁻|n+1⟩ = √Φ(n+1)|n⟩
        a_plus[(n + 1, n)] = Complex64::new(amp, 0.0);
        a_minus[(n, n + 1)] = Complex64::new(amp, 0.0);
        // ℱ(N) acts after the ladder operator, i.e. on the target state.
        x[(n, n + 1)] = Complex64::new(cs.f(lo) * amp, 0.0);
        x[(n + 1, n)] = Complex64::new(cs.g(hi) * amp, 0.0);
        p[(n + 1, n)] = i * (cs.k(hi) * amp);
        p[(n, n + 1)] = -i * (cs.h(lo) * amp);
    }

    Ok(FockRep {
        dim,
        trusted: dim - 1,
        a_plus,
        a_minus,
        num,
        x,
        p,
        family,
        params: *params,
        phi,
    })
}

impl FockRep {
    pub fn coefficients(&self) -> CoefficientSet {
        CoefficientSet {
            family: self.family,
            params: self.params,
        }
    }

    pub fn gh_pair(&self) -> Result<GhPair> {
        gh_pair(self.family, &self.params)
    }

    /// Diagonal matrix `ℱ(N)` evaluated on the number basis.
    pub fn diag_fn(&self, f: impl Fn(i64) -> f64) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_fn(self.dim, |n, _| {
            Complex64::new(f(n as i64), 0.0)
        }))
    }

    fn identity(&self) -> CMatrix {
        CMatrix::identity(self.dim, self.dim)
    }
}

/// Largest absolute entry, split between the trusted block and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub trusted: f64,
    pub boundary: f64,
}

impl Residual {
    pub fn of(m: &CMatrix, trusted: usize) -> Self {
        let mut res = Residual {
            trusted: 0.0,
            boundary: 0.0,
        };
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let v = m[(i, j)].norm();
                if i < trusted && j < trusted {
                    res.trusted = res.trusted.max(v);
                } else {
                    res.boundary = res.boundary.max(v);
                }
            }
        }
        res
    }

    /// Trusted entries divided by `max(1, |scale|)`; the boundary stays absolute.
    pub fn relative(m: &CMatrix, scale: &CMatrix, trusted: usize) -> Self {
        let scaled = m.zip_map(scale, |v, s| Complex64::from(v.norm() / s.norm().max(1.0)));
        Residual {
            trusted: Self::of(&scaled, trusted).trusted,
            boundary: Self::of(m, trusted).boundary,
        }
    }

    pub fn max(self, other: Residual) -> Residual {
        Residual {
            trusted: self.trusted.max(other.trusted),
            boundary: self.boundary.max(other.boundary),
        }
    }

    pub fn within(&self, tol: f64) -> bool {
        self.trusted <= tol
    }
}

/// `pXP - qPX - iħ` (`p = 1` in the one-parameter algebra).
/// Matrix product that skips zero entries of `a`; cheap for the banded ladder operators.
fn sparse_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), b.ncols());
    for k in 0..a.ncols() {
        for i in 0..a.nrows() {
            let v = a[(i, k)];
            if v != Complex64::new(0.0, 0.0) {
                for j in 0..b.ncols() {
                    out[(i, j)] += v * b[(k, j)];
                }
            }
        }
    }
    out
}

pub fn verify_heisenberg(rep: &FockRep) -> Residual {
    let (q, p) = (rep.params.q(), rep.params.p_or_one());
    let xp = sparse_mul(&rep.x, &rep.p) * Complex64::new(p, 0.0);
    let px = sparse_mul(&rep.p, &rep.x) * Complex64::new(q, 0.0);
    let scale = xp.zip_map(&px, |a, b| Complex64::from(a.norm().max(b.norm())));
    let m = xp - px - rep.identity() * Complex64::new(0.0, HBAR);
    Residual::relative(&m, &scale, rep.trusted)
}

/// `H(N)a⁻a⁺ - G(N)a⁺a⁻ - 1`.
pub fn verify_gh_relation(rep: &FockRep, gh: &GhPair) -> Residual {
    let h = rep.diag_fn(|n| gh.h(n));
    let g = rep.diag_fn(|n| gh.g(n));
    let up = sparse_mul(&h, &sparse_mul(&rep.a_minus, &rep.a_plus));
    let down = sparse_mul(&g, &sparse_mul(&rep.a_plus, &rep.a_minus));
    let scale = up.zip_map(&down, |a, b| Complex64::from(a.norm().max(b.norm())));
    let m = up - down - rep.identity();
    Residual::relative(&m, &scale, rep.trusted)
}

/// `[N, a⁺] - a⁺`, `[N, a⁻] + a⁻` and `[a⁻, a⁺] - (Φ(N+1) - Φ(N))`.
pub fn verify_ladder(rep: &FockRep) -> Residual {
    let commutator = |a: &CMatrix, b: &CMatrix| sparse_mul(a, b) - sparse_mul(b, a);
    let raise = commutator(&rep.num, &rep.a_plus) - &rep.a_plus;
    let lower = commutator(&rep.num, &rep.a_minus) + &rep.a_minus;
    let step = rep.diag_fn(|n| rep.phi[n as usize + 1] - rep.phi[n as usize]);
    let down_up = sparse_mul(&rep.a_minus, &rep.a_plus);
    let up_down = sparse_mul(&rep.a_plus, &rep.a_minus);
    let ladder = &down_up - &up_down - step;
    let scale = down_up.zip_map(&up_down, |a, b| Complex64::from(a.norm().max(b.norm())));
    Residual::relative(&raise, &rep.a_plus, rep.trusted)
        .max(Residual::relative(&lower, &rep.a_minus, rep.trusted))
        .max(Residual::relative(&ladder, &scale, rep.trusted))
}
