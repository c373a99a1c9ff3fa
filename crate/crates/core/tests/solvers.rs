use std::f64::consts::PI;

use composite_pulses::analysis::{certify, fourth_order_coefficients_family5, infidelity_series, Axis};
use composite_pulses::design::*;
use composite_pulses::sequence::{angle_distance, PulseSequence};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn orders(s: &Solution) -> (u32, u32) {
    let c = certify(&s.to_sequence().unwrap()).unwrap();
    (c.order(Axis::Epsilon), c.order(Axis::F))
}

#[test]
fn triangle_variants_share_fidelity() {
    let want = 3.0 * PI.powi(4) / 128.0;
    for sign in [1.0, -1.0] {
        for phi in [0.0, PI] {
            let s = solve_triangle3(sign, phi).unwrap();
            let seq = s.to_sequence().unwrap();
            assert!(angle_distance(seq.net_phase().unwrap(), phi) < 1e-12);
            // a π offset moves the Φ = π variants onto the NOT target
            let seq = if phi == 0.0 {
                seq
            } else {
                seq.transform(composite_pulses::sequence::Transform::PhaseOffset(PI))
                    .unwrap()
            };
            let r = infidelity_series(&seq, Axis::Epsilon).unwrap();
            assert_eq!(r.leading_order, 4, "sign {sign} phi {phi}");
            assert!((r.coefficient - want).abs() < 1e-3 * want);
        }
    }
}

#[test]
fn brute_force_matches_extracted_second_order() {
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..100 {
        let (a, b) = (rng.gen_range(0.0..2.0 * PI), rng.gen_range(0.0..2.0 * PI));
        let predicted = brute_force_fidelity3(a, b);
        if predicted < 1e-3 {
            continue;
        }
        let seq = PulseSequence::from_pi_phases("abc", &[a, b, b - a]).unwrap();
        let r = infidelity_series(&seq, Axis::Epsilon).unwrap();
        assert_eq!(r.leading_order, 2);
        assert!((r.coefficient - predicted).abs() < 1e-6 * predicted.max(1.0), "{a} {b}");
    }
    // zero set lies on β = −α at α = ±2π/3
    for a in [2.0 * PI / 3.0, -2.0 * PI / 3.0] {
        assert!(brute_force_fidelity3(a, -a).abs() < 1e-12);
    }
}

#[test]
fn simultaneous_family_members_certify() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..20 {
        let s = solve_simultaneous5(rng.gen_range(0.0..2.0 * PI)).unwrap();
        let (e, f) = orders(&s);
        assert!(e >= 4 && f >= 4, "{:?}: ({e}, {f})", s.phases_deg());
    }
}

#[test]
fn fourth_order_coefficients_are_non_negative() {
    for k in 0..3600 {
        let (fe, ff) = fourth_order_coefficients_family5(k as f64 * 2.0 * PI / 3600.0);
        assert!(fe > -1e-12 && ff > -1e-12);
    }
}

#[test]
fn strength_and_offset_optima_differ_by_half_turn() {
    let gap = |a: &Solution, b: &Solution| angle_distance(a.parameters[0] + PI, b.parameters[0]);
    let t = (optimize_family5(Family5Target::Pse).unwrap(), optimize_family5(Family5Target::Ore).unwrap());
    let pse_roots = family5_roots(Family5Target::Pse).unwrap();
    let ore_roots = family5_roots(Family5Target::Ore).unwrap();
    assert_eq!(pse_roots.len(), 2);
    for r in &pse_roots {
        assert!(ore_roots.iter().any(|o| angle_distance(r + PI, *o) < 1e-9));
    }
    assert!(angle_distance(t.0.parameters[0], pse_roots[0]) < 1e-12);
    let s = (optimize_sym7(Sym7Target::Pse).unwrap(), optimize_sym7(Sym7Target::Ore).unwrap());
    assert!(gap(&s.0, &s.1) < 1e-9);
    let a = (optimize_asbo9(Asbo9Target::Pse).unwrap(), optimize_asbo9(Asbo9Target::Ore).unwrap());
    assert!(gap(&a.0, &a.1) < 1e-3, "{} {}", a.0.parameters[0].to_degrees(), a.1.parameters[0].to_degrees());
}

#[test]
fn antisymmetric_simultaneous_suppression_is_infeasible() {
    assert!(antisymmetric_first_order_floor(5, 360).unwrap() > 0.1);
    assert!(antisymmetric_first_order_floor(7, 40).unwrap() > 0.1);
}

#[test]
fn solver_outputs_certify() {
    let cases: Vec<(Solution, u32, u32)> = vec![
        (solve_sym5().unwrap(), 6, 2),
        (optimize_family5(Family5Target::Pse).unwrap(), 6, 4),
        (optimize_family5(Family5Target::Ore).unwrap(), 4, 6),
        (optimize_family5(Family5Target::Balanced).unwrap(), 4, 4),
        (optimize_rhombus7().unwrap(), 6, 5),
        (optimize_sym7(Sym7Target::Pse).unwrap(), 6, 4),
        (optimize_sym7(Sym7Target::Ore).unwrap(), 4, 6),
        (optimize_sym9().unwrap(), 6, 6),
        (optimize_asbo9(Asbo9Target::Pse).unwrap(), 6, 6),
        (optimize_asbo9(Asbo9Target::Ore).unwrap(), 6, 6),
        (optimize_asbo9(Asbo9Target::BalancedA).unwrap(), 6, 6),
        (optimize_asbo9(Asbo9Target::BalancedB).unwrap(), 6, 6),
    ];
    for (s, e, f) in cases {
        assert!(s.max_residual() <= RESIDUAL_TOL, "{}", s.name);
        let got = orders(&s);
        assert!(got.0 >= e && got.1 >= f, "{}: {got:?}", s.name);
    }
}

#[test]
fn rhombus_roots_and_tie_break() {
    let minima = rhombus7_minima().unwrap();
    let zeros: Vec<_> = minima.iter().filter(|m| m.2 < 1e-6).collect();
    assert_eq!(zeros.len(), 4, "{minima:?}");
    for (a, b, _) in &zeros {
        assert!(angle_distance(*b, a - 2.0 * PI / 3.0) < 1e-4);
        let seq = PulseSequence::from_pi_phases("r", &composite_pulses::families::rhombus7_phases(*a, *b)).unwrap();
        let c = certify(&seq).unwrap();
        assert!(c.require_orders(6, 5).is_ok());
    }
    let best = optimize_rhombus7().unwrap();
    let cos = best.parameters[0].cos();
    assert!((cos + 0.5 * ((4.0 + 13f64.sqrt()) / 2.0).sqrt()).abs() < 1e-7);
    assert!((best.parameters[0].to_degrees() - 192.83).abs() < 0.01);
}

#[test]
fn generic_solver_respects_constraints() {
    let p = DesignProblem::new(3, SymmetryConstraint::None, vec![Target::Pse1]).unwrap();
    let s = solve_generic(&p, 16).unwrap();
    assert!(s.max_residual() < 1e-9);
    let (e, _) = orders(&s);
    assert!(e >= 4);
    let p = DesignProblem::new(9, SymmetryConstraint::Symmetric, vec![Target::Pse1, Target::Ore1, Target::Pse2, Target::Ore2])
        .unwrap();
    let s = solve_generic(&p, 64).unwrap();
    let (e, f) = orders(&s);
    assert!(e >= 6 && f >= 6);
}
