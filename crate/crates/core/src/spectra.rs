//! Energy spectra `E(n) = (Φ(n+1) + Φ(n))/2`, ground-state energies and
//! accidental degeneracies `E_q(n) = E_q(m)`.

use serde::Serialize;

use crate::dsf::{DeformationParams, FamilyId, StructureFunction};
use crate::error::{Error, Result};

pub fn energy(family: FamilyId, params: &DeformationParams, n: usize) -> Result<f64> {
    let sf = StructureFunction::preferred(family, *params)?;
    Ok(0.5 * (sf.eval(n + 1)? + sf.eval(n)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub family: FamilyId,
    pub params: DeformationParams,
    /// `(n, E(n))` in units of `ħω`.
    pub energies: Vec<(usize, f64)>,
}

pub fn spectrum(
    family: FamilyId,
    params: &DeformationParams,
    n_max: usize,
) -> Result<SpectrumReport> {
    let phi = StructureFunction::preferred(family, *params)?.values(n_max + 1)?;
    let energies = phi
        .windows(2)
        .enumerate()
        .map(|(n, w)| (n, 0.5 * (w[0] + w[1])))
        .collect();
    Ok(SpectrumReport {
        family,
        params: *params,
        energies,
    })
}

/// `E^(j)(0)` for `j = 1..4`: `q⁻¹/(1+q²)`, `q²/(1+q²)`, `q⁻¹/(1+q²)`, `q²/(1+q²)`.
pub fn ground_state_table(q: f64) -> Result<[f64; 4]> {
    if !(q.is_finite() && q > 0.0) {
        return Err(Error::Domain(format!("q must be finite and > 0, got {q}")));
    }
    let lowered = 1.0 / q / (1.0 + q * q);
    let raised = q * q / (1.0 + q * q);
    Ok([lowered, raised, lowered, raised])
}

/// `E_q(n) - E_q(m)` for a one-parameter family.
pub fn degeneracy_equation(family: FamilyId, q: f64, n: usize, m: usize) -> Result<f64> {
    let params = DeformationParams::new(q)?;
    let sf = StructureFunction::preferred(family, params)?;
    let e = |k: usize| -> Result<f64> { Ok(0.5 * (sf.eval(k + 1)? + sf.eval(k)?)) };
    Ok(e(n)? - e(m)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DegeneracyRoot {
    pub n: usize,
    pub m: usize,
    pub q_star: f64,
    /// `|E_{q*}(n) - E_{q*}(m)|`.
    pub residual: f64,
    /// Scan cell that contained the sign change.
    pub bracket: (f64, f64),
}

/// Grid scan for sign changes of `E_q(n) - E_q(m)` followed by bisection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegeneracySearch {
    pub family: FamilyId,
    pub n: usize,
    pub m: usize,
    pub q_lo: f64,
    pub q_hi: f64,
    /// Bisection stops once the bracket is narrower than this.
    pub tol: f64,
    pub grid_points: usize,
    /// Half-width of the excluded band around `q = 1`.
    pub guard: f64,
}

impl DegeneracySearch {
    pub const DEFAULT_GRID: usize = 400;
    pub const DEFAULT_TOL: f64 = 1e-7;
    pub const GUARD_BAND: f64 = 1e-4;

    pub fn new(family: FamilyId, n: usize, m: usize, q_lo: f64, q_hi: f64) -> Self {
        DegeneracySearch {
            family,
            n,
            m,
            q_lo,
            q_hi,
            tol: Self::DEFAULT_TOL,
            grid_points: Self::DEFAULT_GRID,
            guard: Self::GUARD_BAND,
        }
    }

    pub fn tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = (self.q_lo, self.q_hi);
        if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && lo < hi) {
            return Err(Error::Domain(format!(
                "invalid search interval ({lo}, {hi})"
            )));
        }
        if lo == 1.0 || hi == 1.0 {
            return Err(Error::Domain(
                "search interval endpoints must differ from q = 1".into(),
            ));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Domain(format!(
                "tolerance must be > 0, got {}",
                self.tol
            )));
        }
        if self.n == self.m {
            return Err(Error::Domain("degeneracy needs two distinct levels".into()));
        }
        if self.grid_points < 2 {
            return Err(Error::Domain("grid needs at least two points".into()));
        }
        if self.family.family.is_two_parameter() {
            return Err(Error::FamilyMismatch {
                family: self.family.family.to_string(),
                reason: "degeneracy search scans q of a one-parameter family".into(),
            });
        }
        Ok(())
    }

    fn excluded(&self, q: f64) -> bool {
        (q - 1.0).abs() < self.guard
    }

    /// All roots in the interval, ascending. No sign change gives an empty list.
    pub fn solve(&self) -> Result<Vec<DegeneracyRoot>> {
        self.validate()?;
        let f = |q: f64| degeneracy_equation(self.family, q, self.n, self.m);
        let step = (self.q_hi - self.q_lo) / (self.grid_points - 1) as f64;
        let grid: Vec<(f64, f64)> = (0..self.grid_points)
            .map(|i| {
                if i + 1 == self.grid_points {
                    self.q_hi
                } else {
                    self.q_lo + step * i as f64
                }
            })
            .filter(|&q| !self.excluded(q))
            .map(|q| Ok((q, f(q)?)))
            .collect::<Result<_>>()?;

        let mut roots = Vec::new();
        for (i, pair) in grid.windows(2).enumerate() {
            let ((a, fa), (b, fb)) = (pair[0], pair[1]);
            if (a < 1.0) != (b < 1.0) {
                continue;
            }
            if fa == 0.0 {
                let lo = if i > 0 { grid[i - 1].0 } else { a };
                roots.push(self.root_at(a, (lo, b), &f)?);
            } else if fa * fb < 0.0 {
                let q_star = self.bisect(a, fa, b, &f)?;
                roots.push(self.root_at(q_star, (a, b), &f)?);
            }
        }
        if let Some(&(b, fb)) = grid.last() {
            if fb == 0.0 {
                let lo = grid.len().checked_sub(2).map_or(b, |i| grid[i].0);
                roots.push(self.root_at(b, (lo, b), &f)?);
            }
        }
        Ok(roots)
    }

    fn root_at(
        &self,
        q_star: f64,
        bracket: (f64, f64),
        f: &impl Fn(f64) -> Result<f64>,
    ) -> Result<DegeneracyRoot> {
        Ok(DegeneracyRoot {
            n: self.n,
            m: self.m,
            q_star,
            residual: f(q_star)?.abs(),
            bracket,
        })
    }

    fn bisect(
        &self,
        mut a: f64,
        mut fa: f64,
        mut b: f64,
        f: &impl Fn(f64) -> Result<f64>,
    ) -> Result<f64> {
        for _ in 0..200 {
            if b - a <= self.tol {
                break;
            }
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            let fm = f(mid)?;
            if fm == 0.0 {
                return Ok(mid);
            }
            if (fm < 0.0) == (fa < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        Ok(0.5 * (a + b))
    }
}

pub fn find_degeneracy(
    family: FamilyId,
    n: usize,
    m: usize,
    search: (f64, f64),
    tol: f64,
) -> Result<Vec<DegeneracyRoot>> {
    DegeneracySearch::new(family, n, m, search.0, search.1)
        .tol(tol)
        .solve()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsf::Family;
    use approx::assert_relative_eq;

    fn one(q: f64) -> DeformationParams {
        DeformationParams::new(q).unwrap()
    }

    #[test]
    fn energy_examples() {
        assert_eq!(energy(Family::A.into(), &one(1.0), 0).unwrap(), 0.5);
        for q in [0.5, 0.9, 1.015, 2.0] {
            let e = energy(Family::A.into(), &one(q), 0).unwrap();
            assert_relative_eq!(e, 1.0 / q / (1.0 + q * q), max_relative = 1e-14);
        }
        let q: f64 = 1.1;
        let e = energy(Family::B.into(), &one(q), 0).unwrap();
        assert_relative_eq!(e, q * q / (1.0 + q * q), max_relative = 1e-14);
        assert!((e - 0.547511).abs() < 1e-6);
    }

    #[test]
    fn unit_q_spectrum_is_linear() {
        for family in Family::ONE_PARAMETER {
            let report = spectrum(family.into(), &one(1.0), 30).unwrap();
            for &(n, e) in &report.energies {
                assert_eq!(e, n as f64 + 0.5);
            }
        }
    }

    #[test]
    fn ground_state_examples() {
        assert_eq!(ground_state_table(1.0).unwrap(), [0.5; 4]);
        let t = ground_state_table(1.015).unwrap();
        assert!(t[0] == t[2] && t[0] < 0.5 && 0.5 < t[1] && t[1] == t[3]);
        let t = ground_state_table(2.0).unwrap();
        for (a, b) in t.iter().zip([0.1, 0.8, 0.1, 0.8]) {
            assert_relative_eq!(*a, b, max_relative = 1e-15);
        }
        assert!(ground_state_table(0.0).is_err());
        assert!(ground_state_table(-1.0).is_err());
    }

    #[test]
    fn ground_state_table_matches_structure_functions() {
        for q in [0.5, 0.9, 1.3] {
            let t = ground_state_table(q).unwrap();
            for (j, family) in Family::ONE_PARAMETER.into_iter().enumerate() {
                let e = energy(family.into(), &one(q), 0).unwrap();
                assert_relative_eq!(e, t[j], max_relative = 1e-14);
            }
            assert_relative_eq!(t[0], q.powi(-3) * t[1], max_relative = 1e-14);
        }
    }

    #[test]
    fn degeneracy_equation_examples() {
        for family in Family::ONE_PARAMETER {
            assert_eq!(degeneracy_equation(family.into(), 1.0, 3, 5).unwrap(), -2.0);
        }
        assert!(
            degeneracy_equation(Family::A.into(), 1.0913, 10, 0)
                .unwrap()
                .abs()
                < 1e-3
        );
        assert!(
            degeneracy_equation(Family::A.into(), 1.015148, 90, 0)
                .unwrap()
                .abs()
                < 1e-3
        );
    }

    /// The expanded form of `E^(1)_q(n) - E^(1)_q(0) = 0`, kept only as a
    /// cross-check: it vanishes at the same q.
    fn expanded_degeneracy(n: i32, q: f64) -> f64 {
        let qn = |e: i32| q.powi(e);
        qn(4 * n) * (q * q + 1.0 / (q * q)) + qn(3 * n) * (q - 1.0) * (q * q + qn(-3))
            - qn(2 * n) * (qn(3) + qn(-3) - 2.0)
            + qn(n) * (q - 1.0 / q)
            - q
            - 1.0 / q
            - (1.0 - 1.0 / q) / (1.0 + q * q)
                * qn(2 * n)
                * (1.0 + qn(2 * n - 2))
                * (1.0 + qn(2 * n))
                * (1.0 + qn(2 * n + 2))
    }

    #[test]
    fn expanded_form_shares_sign_and_roots() {
        for (n, lo, hi) in [(10usize, 1.01, 1.3), (90, 1.005, 1.05)] {
            for i in 0..=50 {
                let q = lo + (hi - lo) * i as f64 / 50.0;
                let e = degeneracy_equation(Family::A.into(), q, n, 0).unwrap();
                let x = expanded_degeneracy(n as i32, q);
                if e.abs() > 1e-9 {
                    assert_eq!(e > 0.0, x > 0.0, "n={n}, q={q}");
                }
            }
            let root = find_degeneracy(Family::A.into(), n, 0, (lo, hi), 1e-12).unwrap()[0];
            let scale = expanded_degeneracy(n as i32, root.q_star * 1.01).abs();
            assert!(expanded_degeneracy(n as i32, root.q_star).abs() < 1e-9 * scale);
        }
    }

    #[test]
    fn degeneracy_roots() {
        let roots = find_degeneracy(Family::A.into(), 10, 0, (1.001, 1.5), 1e-6).unwrap();
        assert_eq!(roots.len(), 1);
        let r = roots[0];
        assert!((r.q_star - 1.0913).abs() <= 5e-4, "{r:?}");
        assert!(r.bracket.0 < r.q_star && r.q_star < r.bracket.1);
        assert!(r.residual < 1e-5);

        let roots = find_degeneracy(Family::A.into(), 90, 0, (1.001, 1.1), 1e-7).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0].q_star - 1.015148).abs() <= 5e-6, "{:?}", roots[0]);
    }

    #[test]
    fn no_sign_change_is_empty() {
        // Close to q = 1 the levels keep their order, so E(3) - E(4) stays negative.
        let roots = find_degeneracy(Family::A.into(), 3, 4, (1.001, 1.01), 1e-7).unwrap();
        assert!(roots.is_empty());
    }

    #[test]
    fn other_level_pairs() {
        for (n, m) in [(1usize, 7usize), (2, 5), (3, 4)] {
            let roots = find_degeneracy(Family::A.into(), n, m, (1.001, 3.0), 1e-10).unwrap();
            assert!(
                !roots.is_empty(),
                "E(1)=E(7)-style degeneracy ({n},{m}) has a root"
            );
            for r in roots {
                assert!(r.residual < 1e-8, "{r:?}");
            }
        }
    }

    #[test]
    fn guard_band_and_validation() {
        let search = DegeneracySearch::new(Family::A.into(), 10, 0, 0.9, 1.1);
        let roots = search.solve().unwrap();
        for r in &roots {
            assert!((r.q_star - 1.0).abs() > 1e-4);
        }
        assert!(find_degeneracy(Family::A.into(), 10, 0, (1.5, 1.1), 1e-6).is_err());
        assert!(find_degeneracy(Family::A.into(), 10, 0, (1.0, 1.1), 1e-6).is_err());
        assert!(find_degeneracy(Family::A.into(), 10, 0, (-0.5, 1.1), 1e-6).is_err());
        assert!(find_degeneracy(Family::A.into(), 10, 0, (1.01, 1.1), 0.0).is_err());
        assert!(find_degeneracy(Family::A.into(), 3, 3, (1.01, 1.1), 1e-6).is_err());
        assert!(find_degeneracy(Family::ATilde.into(), 3, 0, (1.01, 1.1), 1e-6).is_err());
    }
}
