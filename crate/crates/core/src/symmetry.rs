//! `q ↔ q⁻¹` symmetrized structure functions and diagonal pseudo-Hermiticity
//! metrics for `X` and `P`.
//!
//! The symmetrized function `½(Φ_q(n) + Φ_{1/q}(n))` is evaluated twice: by
//! the average itself and by the factorized form
//! `(q^m + q^(-m)) · (q^((n-1)/2) + q^((1-n)/2)) [[n]]_{q^(1/2)} / ((qⁿ + q⁻ⁿ)(q^(n-1) + q^(1-n)))`
//! where `m = 1 - 3n` for `Φ^(1)` and `m = e_j(n) + 1 - 3n` for `Φ^(j) = q^(e_j(n)) Φ^(1)`.

use num_complex::Complex64;
use serde::Serialize;

use crate::dsf::{bracket_sym_unchecked, phi_closed_complex, ratio_exponent, Family};
use crate::error::{Error, Result};
use crate::fock::FockRep;

/// Agreement required between the two symmetrized routes, and the largest
/// imaginary part discarded, both relative to `max(1, |Φ|)`.
pub const FORM_TOL: f64 = 1e-10;

/// `|denominator|` below this is treated as a pole.
pub const POLE_TOL: f64 = 1e-8;

fn scale(v: Complex64) -> f64 {
    v.norm().max(1.0)
}

fn check_symmetrizable(q: Complex64) -> Result<()> {
    if !q.is_finite() || q == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain(format!(
            "q must be finite and nonzero, got {q}"
        )));
    }
    let positive_real = q.im == 0.0 && q.re > 0.0;
    let unit = (q.norm() - 1.0).abs() <= 1e-12;
    if positive_real || unit {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "symmetrized q must be real positive or on the unit circle, got {q}"
        )))
    }
}

/// Both evaluations of the symmetrized structure function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetrizedForms {
    pub average: Complex64,
    pub factorized: Complex64,
}

pub fn symmetrized_forms(base: Family, q: Complex64, n: usize) -> Result<SymmetrizedForms> {
    if base.is_two_parameter() {
        return Err(Error::FamilyMismatch {
            family: base.to_string(),
            reason: "use the (q, p) symmetrization for two-parameter families".into(),
        });
    }
    check_symmetrizable(q)?;
    let zero = Complex64::new(0.0, 0.0);
    if n == 0 {
        return Ok(SymmetrizedForms {
            average: zero,
            factorized: zero,
        });
    }
    let m = n as i32;
    let sym_pair = |e: i32| q.powi(e) + q.powi(-e);
    let d_n = sym_pair(m);
    let d_prev = sym_pair(m - 1);
    if d_n.norm() < POLE_TOL || d_prev.norm() < POLE_TOL {
        return Err(Error::Pole { n, theta: q.arg() });
    }

    let one = Complex64::new(1.0, 0.0);
    let average =
        (phi_closed_complex(base, q, one, n) + phi_closed_complex(base, q.inv(), one, n)) * 0.5;

    let root = q.sqrt();
    let core =
        (root.powi(m - 1) + root.powi(1 - m)) * bracket_sym_unchecked(m, root) / (d_n * d_prev);
    let factorized = sym_pair(ratio_exponent(base, m) + 1 - 3 * m) * core;
    Ok(SymmetrizedForms {
        average,
        factorized,
    })
}

/// `½(Φ_q^(j)(n) + Φ_{1/q}^(j)(n))` for real positive `q` or `q = e^{iθ}`.
///
/// Fails if the two routes disagree or the imaginary part is not negligible.
pub fn phi_symmetrized(base: Family, q: Complex64, n: usize) -> Result<f64> {
    let forms = symmetrized_forms(base, q, n)?;
    let SymmetrizedForms {
        average,
        factorized,
    } = forms;
    if (average - factorized).norm() > FORM_TOL * scale(average) {
        return Err(Error::FormMismatch {
            n,
            average: average.to_string(),
            factorized: factorized.to_string(),
        });
    }
    if average.im.abs() > FORM_TOL * scale(average) {
        return Err(Error::NotReal {
            n,
            imag: average.im,
        });
    }
    Ok(average.re)
}

/// `½(Φ_{q,p}^(j)(n) + Φ_{p,q}^(j)(n))` for a two-parameter family, complex
/// `q`, `p` allowed (e.g. `p = q̄`). The imaginary part is returned as is.
pub fn phi_symmetrized_pq(base: Family, q: Complex64, p: Complex64, n: usize) -> Result<Complex64> {
    if !base.is_two_parameter() {
        return Err(Error::FamilyMismatch {
            family: base.to_string(),
            reason: "(q, p) symmetrization needs a two-parameter family".into(),
        });
    }
    let zero = Complex64::new(0.0, 0.0);
    for (name, v) in [("q", q), ("p", p)] {
        if !v.is_finite() || v == zero {
            return Err(Error::Domain(format!(
                "{name} must be finite and nonzero, got {v}"
            )));
        }
    }
    if n == 0 {
        return Ok(zero);
    }
    let m = n as i32;
    let one = Complex64::new(1.0, 0.0);
    for big_q in [q / p, p / q] {
        let d = (one + big_q.powi(2 * m - 2)) * (one + big_q.powi(2 * m));
        if d.norm() < POLE_TOL {
            return Err(Error::Pole {
                n,
                theta: big_q.arg(),
            });
        }
    }
    let forward = phi_closed_complex(base, q / p, p, n);
    let cousin = phi_closed_complex(base, p / q, q, n);
    Ok((forward + cousin) * 0.5)
}

/// Which operator a metric is sought for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Target {
    X,
    P,
}

impl FockRep {
    pub fn operator(&self, target: Target) -> &crate::fock::CMatrix {
        match target {
            Target::X => &self.x,
            Target::P => &self.p,
        }
    }
}

/// Diagonal `η`, normalized `η(0) = 1`, with `η T η⁻¹ = T†`.
///
/// Stored as `ln η`: the entries can span far more than the `f64` range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricDiagonal {
    pub log_eta: Vec<f64>,
    /// `‖η T η⁻¹ - T†‖_max` on the trusted block, entrywise relative to `max(1, |T_ji|)`.
    pub residual: f64,
}

impl MetricDiagonal {
    /// `η` itself; entries outside the `f64` range saturate to `0` or `∞`.
    pub fn eta(&self) -> Vec<f64> {
        self.log_eta.iter().map(|l| l.exp()).collect()
    }

    /// `η(i)/η(j)`.
    pub fn ratio(&self, i: usize, j: usize) -> f64 {
        (self.log_eta[i] - self.log_eta[j]).exp()
    }

    pub fn is_identity(&self) -> bool {
        self.log_eta.iter().all(|&l| l == 0.0)
    }
}

/// Solves `η_i T_ij / η_j = conj(T_ji)` on the two off-diagonals of a
/// tridiagonal operator: `η(n+1)/η(n) = T(n,n+1)/conj(T(n+1,n))`, which must
/// agree with `conj(T(n,n+1))/T(n+1,n)` and be real positive.
pub fn find_metric(rep: &FockRep, target: Target, tol: f64) -> Result<MetricDiagonal> {
    let t = rep.operator(target);
    let dim = rep.dim;
    let mut log_eta = Vec::with_capacity(dim);
    log_eta.push(0.0);
    for n in 0..dim - 1 {
        let (up, down) = (t[(n, n + 1)], t[(n + 1, n)]);
        if up.norm() == 0.0 || down.norm() == 0.0 {
            return Err(Error::DegenerateOperator { index: n });
        }
        let from_upper = up / down.conj();
        let from_lower = up.conj() / down;
        let size = from_upper.norm();
        let mismatch = (from_upper - from_lower).norm().max(from_upper.im.abs());
        if mismatch > tol * size || from_upper.re <= 0.0 {
            return Err(Error::NoMetric { index: n, mismatch });
        }
        log_eta.push(log_eta[n] + from_upper.re.ln());
    }
    let metric = MetricDiagonal {
        log_eta,
        residual: 0.0,
    };

    let mut residual: f64 = 0.0;
    let mut worst = 0;
    for i in 0..rep.trusted {
        for j in 0..rep.trusted {
            let (entry, adjoint) = (t[(i, j)], t[(j, i)].conj());
            let image = if entry == Complex64::new(0.0, 0.0) {
                entry
            } else {
                entry * metric.ratio(i, j)
            };
            let v = (image - adjoint).norm() / adjoint.norm().max(1.0);
            if v.is_nan() || v > residual {
                residual = v;
                worst = i;
            }
        }
    }
    if residual.is_nan() || residual > tol {
        return Err(Error::NoMetric {
            index: worst,
            mismatch: residual,
        });
    }
    Ok(MetricDiagonal { residual, ..metric })
}

/// `‖T - T†‖_max` on the trusted block.
pub fn hermiticity_defect(rep: &FockRep, target: Target) -> f64 {
    let t = rep.operator(target);
    let mut defect: f64 = 0.0;
    for i in 0..rep.trusted {
        for j in 0..rep.trusted {
            defect = defect.max((t[(i, j)] - t[(j, i)].conj()).norm());
        }
    }
    defect
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsf::{DeformationParams, FamilyId};
    use crate::fock::build_rep;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn symmetrized_examples() {
        let q = Complex64::from_polar(1.0, 0.77);
        assert_eq!(phi_symmetrized(Family::A, q, 0).unwrap(), 0.0);
        assert_eq!(phi_symmetrized(Family::A, c(1.0), 6).unwrap(), 6.0);
        let q = Complex64::from_polar(1.0, PI / 7.0);
        let forms = symmetrized_forms(Family::A, q, 3).unwrap();
        assert!((forms.average - forms.factorized).norm() <= 1e-10 * scale(forms.average));
        assert!(phi_symmetrized(Family::A, q, 3).is_ok());
    }

    #[test]
    fn symmetrized_real_q_matches_closed_average() {
        use crate::dsf::phi_closed;
        for family in Family::ONE_PARAMETER {
            for q in [0.9, 1.1, 1.5] {
                for n in 0..30 {
                    let a =
                        phi_closed(family.into(), &DeformationParams::new(q).unwrap(), n).unwrap();
                    let b = phi_closed(family.into(), &DeformationParams::new(1.0 / q).unwrap(), n)
                        .unwrap();
                    let s = phi_symmetrized(family, c(q), n).unwrap();
                    assert!((s - 0.5 * (a + b)).abs() <= 1e-12 * s.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn pole_is_reported() {
        // θ = π/12, n = 6 gives q⁶ + q⁻⁶ = 2cos(π/2) = 0.
        let q = Complex64::from_polar(1.0, PI / 12.0);
        assert!(matches!(
            phi_symmetrized(Family::A, q, 6),
            Err(Error::Pole { n: 6, .. })
        ));
        assert!(matches!(
            phi_symmetrized(Family::A, q, 7),
            Err(Error::Pole { n: 7, .. })
        ));
    }

    #[test]
    fn symmetrized_domain() {
        assert!(phi_symmetrized(Family::A, c(0.0), 3).is_err());
        assert!(phi_symmetrized(Family::A, c(-2.0), 3).is_err());
        assert!(phi_symmetrized(Family::A, Complex64::new(1.0, 1.0), 3).is_err());
        assert!(phi_symmetrized(Family::ATilde, c(1.2), 3).is_err());
        assert!(phi_symmetrized_pq(Family::A, c(1.2), c(1.1), 3).is_err());
        assert!(phi_symmetrized_pq(Family::ATilde, c(0.0), c(1.1), 3).is_err());
    }

    #[test]
    fn pq_symmetrization_with_conjugate_parameters_is_real() {
        let q = Complex64::from_polar(1.3, 0.4);
        for family in Family::TWO_PARAMETER {
            for n in 0..20 {
                let v = phi_symmetrized_pq(family, q, q.conj(), n).unwrap();
                assert!(v.im.abs() <= 1e-10 * v.norm().max(1.0), "{family} {n}: {v}");
            }
        }
    }

    #[test]
    fn metric_examples() {
        let rep = build_rep(Family::A.into(), &DeformationParams::new(1.0).unwrap(), 10).unwrap();
        let metric = find_metric(&rep, Target::X, 1e-10).unwrap();
        assert!(metric.is_identity());

        let q: f64 = 1.1;
        let rep = build_rep(Family::A.into(), &DeformationParams::new(q).unwrap(), 20).unwrap();
        let metric = find_metric(&rep, Target::X, 1e-10).unwrap();
        // hand recursion: f(n)/g(n+1) = qⁿ/q^(2n+2)
        for n in 0..19 {
            let ratio = metric.ratio(n + 1, n);
            assert!((ratio - q.powi(-(n as i32) - 2)).abs() <= 1e-13 * ratio);
        }
        assert!(metric.residual <= 1e-10);

        let rep = build_rep(Family::C.into(), &DeformationParams::new(1.2).unwrap(), 20).unwrap();
        let metric = find_metric(&rep, Target::P, 1e-10).unwrap();
        assert!(metric.eta().iter().all(|&e| e > 0.0));
        assert!(metric.residual <= 1e-10);

        // η spans beyond the f64 range here
        let params = DeformationParams::with_p(0.8, 1.3).unwrap();
        let rep = build_rep(Family::CTilde.into(), &params, 30).unwrap();
        let metric = find_metric(&rep, Target::X, 1e-10).unwrap();
        assert!(metric.log_eta.iter().any(|l| l.abs() > 709.0));
        assert!(metric.residual <= 1e-10);
    }

    #[test]
    fn metric_failures() {
        let params = DeformationParams::new(1.1).unwrap();
        let mut rep = build_rep(FamilyId::new(Family::B), &params, 8).unwrap();
        rep.x[(3, 4)] = Complex64::new(0.0, 0.0);
        assert_eq!(
            find_metric(&rep, Target::X, 1e-10),
            Err(Error::DegenerateOperator { index: 3 })
        );
        let mut rep = build_rep(FamilyId::new(Family::B), &params, 8).unwrap();
        rep.x[(2, 3)] *= Complex64::new(0.0, 1.0);
        assert!(matches!(
            find_metric(&rep, Target::X, 1e-10),
            Err(Error::NoMetric { index: 2, .. })
        ));
    }

    #[test]
    fn defect_examples() {
        let rep = build_rep(Family::A.into(), &DeformationParams::new(1.0).unwrap(), 12).unwrap();
        assert_eq!(hermiticity_defect(&rep, Target::X), 0.0);
        let rep = build_rep(
            Family::A.into(),
            &DeformationParams::new(1.015).unwrap(),
            12,
        )
        .unwrap();
        let dx = hermiticity_defect(&rep, Target::X);
        let dp = hermiticity_defect(&rep, Target::P);
        assert!(dx > 0.0);
        assert!(dx > 0.0 || dp > 0.0);
    }
}
