use dhoa::symmetry::Target;
use dhoa::*;
use num_complex::Complex64;
use std::f64::consts::PI;

const Q_GRID: [f64; 4] = [0.9, 0.99, 1.015, 1.1];

fn params_for(family: Family, q: f64, p: f64) -> DeformationParams {
    if family.is_two_parameter() {
        DeformationParams::with_p(q, p).unwrap()
    } else {
        DeformationParams::new(q).unwrap()
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

#[test]
fn undeformed_limit_is_number_operator() {
    for family in Family::ALL {
        let params = params_for(family, 1.0, 1.0);
        for n in 0..=60 {
            let phi = phi_closed(family.into(), &params, n).unwrap();
            assert!(
                (phi - n as f64).abs() <= 1e-12 * (n as f64).max(1.0),
                "{family} n={n}"
            );
        }
    }
}

#[test]
fn equal_parameters_give_n_over_q() {
    for family in Family::TWO_PARAMETER {
        for q in Q_GRID {
            let params = DeformationParams::specialize(q, Specialization::PEqualsQ).unwrap();
            let gh = gh_pair(family.into(), &params).unwrap();
            for n in 0..=40i64 {
                assert!(rel(gh.h(n), q) <= 1e-12 && rel(gh.g(n), q) <= 1e-12);
                let phi = phi_closed(family.into(), &params, n as usize).unwrap();
                assert!(rel(phi, n as f64 / q) <= 1e-12, "{family} q={q} n={n}");
            }
        }
    }
}

#[test]
fn printed_pairs_match_assembled_coefficients() {
    for family in Family::ALL {
        for q in Q_GRID {
            for p in [0.9, 1.0, 1.2] {
                let params = params_for(family, q, p);
                let cs = coefficients(family.into(), &params).unwrap();
                let gh = gh_pair(family.into(), &params).unwrap();
                assert!(verify_ratio_recursions(&cs, 60) <= 1e-12);
                for n in 0..=60i64 {
                    assert!(rel(gh.h(n), cs.assembled_h(n)) <= 1e-12, "{family} H({n})");
                    assert!(rel(gh.g(n), cs.assembled_g(n)) <= 1e-12, "{family} G({n})");
                }
            }
        }
    }
}

#[test]
fn g_is_a_shifted_h() {
    for family in Family::ALL {
        for q in Q_GRID {
            for p in [0.9, 1.0, 1.2] {
                let params = params_for(family, q, p);
                let big_q = params.big_q();
                let factor = match family.untilded() {
                    Family::A => big_q.powi(3),
                    Family::B => big_q.powi(-3),
                    _ => 1.0,
                };
                let gh = gh_pair(family.into(), &params).unwrap();
                for n in 2..=60i64 {
                    assert!(
                        rel(gh.g(n), factor * gh.h(n - 2)) <= 1e-12,
                        "{family} n={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn fock_invariants_on_grid() {
    for family in Family::ALL {
        for dim in [5, 30, 100] {
            for q in Q_GRID {
                for p in [1.0, 1.1] {
                    let params = params_for(family, q, p);
                    let rep = build_rep(family.into(), &params, dim).unwrap();
                    let heis = verify_heisenberg(&rep);
                    assert!(heis.trusted <= 1e-10, "{family} D={dim} q={q}: {heis:?}");
                    assert!(heis.boundary > 0.0);
                    let gh = rep.gh_pair().unwrap();
                    assert!(verify_gh_relation(&rep, &gh).trusted <= 1e-10);
                    let ladder = fock::verify_ladder(&rep);
                    assert!(
                        ladder.trusted <= 1e-10,
                        "{family} D={dim} q={q} p={p}: {ladder:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn position_is_hermitian_only_without_deformation() {
    for family in Family::ONE_PARAMETER {
        let flat = build_rep(family.into(), &DeformationParams::new(1.0).unwrap(), 20).unwrap();
        assert!(hermiticity_defect(&flat, Target::X) <= 1e-14);
        assert!(hermiticity_defect(&flat, Target::P) <= 1e-14);
        for q in [0.9, 1.1] {
            let rep = build_rep(family.into(), &DeformationParams::new(q).unwrap(), 20).unwrap();
            assert!(hermiticity_defect(&rep, Target::X) > 1e-3);
        }
    }
}

#[test]
fn metric_makes_operators_hermitian() {
    for family in Family::ALL {
        for q in Q_GRID {
            let params = params_for(family, q, 1.1);
            let rep = build_rep(family.into(), &params, 30).unwrap();
            for target in [Target::X, Target::P] {
                let metric = find_metric(&rep, target, 1e-10).unwrap();
                assert!(metric.residual <= 1e-10);
                assert!(metric.log_eta.iter().all(|l| l.is_finite()));
                assert_eq!(
                    metric.is_identity(),
                    hermiticity_defect(&rep, target) <= 1e-12
                );
            }
        }
    }
}

#[test]
fn spectrum_matches_number_diagonal() {
    for family in Family::ALL {
        let params = params_for(family, 1.015, 1.1);
        let rep = build_rep(family.into(), &params, 40).unwrap();
        let report = spectrum(family.into(), &params, 30).unwrap();
        let product = &rep.a_plus * &rep.a_minus;
        let anti = &rep.a_minus * &rep.a_plus;
        for &(n, e) in &report.energies {
            let diag = 0.5 * (product[(n, n)].re + anti[(n, n)].re);
            assert!(rel(e, diag) <= 1e-12, "{family} n={n}");
        }
    }
}

#[test]
fn degeneracy_roots_decrease_with_level() {
    let mut previous = f64::INFINITY;
    for n in [10, 30, 90] {
        let roots = find_degeneracy(Family::A.into(), n, n + 1, (1.001, 3.0), 1e-12).unwrap();
        assert_eq!(roots.len(), 1, "n={n}");
        let q_star = roots[0].q_star;
        assert!(q_star < previous);
        previous = q_star;
    }
}

#[test]
fn symmetrized_forms_on_unit_circle() {
    for family in Family::ONE_PARAMETER {
        for theta in [PI / 12.0, PI / 7.0, PI / 5.0, 2.0 * PI / 5.0] {
            let q = Complex64::from_polar(1.0, theta);
            for n in 0..=30 {
                match phi_symmetrized(family, q, n) {
                    Ok(v) => {
                        let inv = phi_symmetrized(family, q.inv(), n).unwrap();
                        assert!((v - inv).abs() <= 1e-12 * v.abs().max(1.0));
                    }
                    Err(Error::Pole { .. }) => {}
                    Err(e) => panic!("{family} theta={theta} n={n}: {e}"),
                }
            }
        }
    }
}
