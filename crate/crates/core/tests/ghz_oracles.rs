//! Closed-form oracles for the GHZ triple and the bipartite Werner state,
//! checked against the numerical measurement pipeline.
//!
//! The closed forms are written in terms of the spinor half-angle
//! `α = θ/2` of each detector's Bloch polar angle θ, the convention under
//! which the textbook GHZ probability table takes its product form.

use core::f64::consts::PI;

use qreact_core::{
    joint_distribution, make_state, mean_geometry, EntropyTable, IntegrationMethod,
    IntegratorConfig, MeasurementSetting, StateFamily,
};

fn h2(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// The eight GHZ joint probabilities for detectors at Bloch angles
/// `(θ_b, θ_c)` with observer A pinned on the z axis, indexed by the
/// outcome string `(a, b, c)` with A as the most significant bit.
fn ghz_joint(theta_b: f64, theta_c: f64) -> [f64; 8] {
    let cb = (theta_b / 2.0).cos().powi(2);
    let sb = 1.0 - cb;
    let cc = (theta_c / 2.0).cos().powi(2);
    let sc = 1.0 - cc;
    let mut p = [0.0f64; 8];
    p[0b111] = 0.5 * cb * cc;
    p[0b011] = 0.5 * sb * sc;
    p[0b110] = 0.5 * cb * sc;
    p[0b010] = 0.5 * sb * cc;
    p[0b101] = 0.5 * sb * cc;
    p[0b001] = 0.5 * cb * sc;
    p[0b100] = 0.5 * sb * sc;
    p[0b000] = 0.5 * cb * cc;
    p
}

struct GhzEntropies {
    h_ab: f64,
    h_ac: f64,
    h_bc: f64,
    h_abc: f64,
}

fn ghz_entropies(theta_b: f64, theta_c: f64) -> GhzEntropies {
    let cb = (theta_b / 2.0).cos().powi(2);
    let sb = 1.0 - cb;
    let cc = (theta_c / 2.0).cos().powi(2);
    let sc = 1.0 - cc;
    let q = cb * cc + sb * sc;
    GhzEntropies {
        h_ab: 1.0 + h2(sb),
        h_ac: 1.0 + h2(sc),
        h_bc: 1.0 + h2(q),
        h_abc: 1.0 - plogp(cb * cc) - plogp(cb * sc) - plogp(sb * cc) - plogp(sb * sc),
    }
}

fn ghz_setting(theta_b: f64, theta_c: f64) -> MeasurementSetting {
    MeasurementSetting::new(vec![(0.0, 0.0), (theta_b, 0.0), (theta_c, 0.0)]).unwrap()
}

#[test]
fn ghz_joint_distribution_matches_closed_forms_on_grid() {
    let ghz = make_state(StateFamily::Ghz3, 1.0).unwrap();
    let n = 20;
    for ib in 0..n {
        for ic in 0..n {
            let tb = (ib as f64 + 0.5) * PI / n as f64;
            let tc = (ic as f64 + 0.5) * PI / n as f64;
            let p = joint_distribution(&ghz, &ghz_setting(tb, tc)).unwrap();
            let oracle = ghz_joint(tb, tc);
            for (o, (got, expect)) in p.probs().iter().zip(oracle.iter()).enumerate() {
                assert!(
                    (got - expect).abs() < 1e-10,
                    "outcome {o:03b} at ({tb}, {tc}): {got} vs {expect}"
                );
            }

            let t = EntropyTable::from_distribution(&p);
            let e = ghz_entropies(tb, tc);
            assert!((t.entropy(&[0, 1]).unwrap() - e.h_ab).abs() < 1e-10);
            assert!((t.entropy(&[0, 2]).unwrap() - e.h_ac).abs() < 1e-10);
            assert!((t.entropy(&[1, 2]).unwrap() - e.h_bc).abs() < 1e-10);
            assert!((t.entropy(&[0, 1, 2]).unwrap() - e.h_abc).abs() < 1e-10);
            for v in 0..3 {
                assert!((t.entropy(&[v]).unwrap() - 1.0).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn ghz_degenerate_setting_is_a_shared_coin() {
    let ghz = make_state(StateFamily::Ghz3, 1.0).unwrap();
    let p = joint_distribution(&ghz, &ghz_setting(0.0, 0.0)).unwrap();
    assert!((p.prob(&[1, 1, 1]).unwrap() - 0.5).abs() < 1e-12);
    assert!((p.prob(&[0, 0, 0]).unwrap() - 0.5).abs() < 1e-12);
    let others: f64 = p.probs().iter().sum::<f64>() - 1.0;
    assert!(others.abs() < 1e-12);
    // perfectly correlated observers: zero distances
    let t = EntropyTable::from_distribution(&p);
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        assert!(t.info_distance(a, b).unwrap() < 1e-12);
    }
}

#[test]
fn ghz_conditional_entropy_two_routes_agree() {
    let ghz = make_state(StateFamily::Ghz3, 1.0).unwrap();
    let (tb, tc) = (PI / 4.0, PI / 4.0);
    let p = joint_distribution(&ghz, &ghz_setting(tb, tc)).unwrap();
    let t = EntropyTable::from_distribution(&p);
    let e = ghz_entropies(tb, tc);
    let via_table = t.conditional_entropy(&[0], &[1, 2]).unwrap();
    let via_formula = e.h_abc - e.h_bc;
    assert!((via_table - via_formula).abs() < 1e-12);
}

#[test]
fn ghz_area_matches_closed_form_entropies() {
    let ghz = make_state(StateFamily::Ghz3, 1.0).unwrap();
    let (tb, tc) = (PI / 3.0, PI / 3.0);
    let p = joint_distribution(&ghz, &ghz_setting(tb, tc)).unwrap();
    let t = EntropyTable::from_distribution(&p);
    let e = ghz_entropies(tb, tc);
    let ha = e.h_abc - e.h_bc;
    let hb = e.h_abc - e.h_ac;
    let hc = e.h_abc - e.h_ab;
    let oracle = ha * hb + hb * hc + hc * ha;
    assert!((t.info_area(0, 1, 2).unwrap() - oracle).abs() < 1e-11);
}

/// The GHZ joint distribution is φ-independent once A is pinned on the z
/// axis, so a grid integration over all four varying angles must equal a
/// two-angle quadrature of the closed-form perimeter and area.
#[test]
fn ghz_mean_geometry_matches_analytic_quadrature() {
    let ghz = make_state(StateFamily::Ghz3, 1.0).unwrap();
    let n = 6;
    let cfg = IntegratorConfig {
        method: IntegrationMethod::Grid,
        grid_points_per_angle: n,
        ..Default::default()
    };
    let mg = mean_geometry(&ghz, &cfg).unwrap();

    let mut perimeter = 0.0f64;
    let mut area = 0.0f64;
    for ib in 0..n {
        for ic in 0..n {
            let tb = (ib as f64 + 0.5) * PI / n as f64;
            let tc = (ic as f64 + 0.5) * PI / n as f64;
            let e = ghz_entropies(tb, tc);
            let d_ab = 2.0 * e.h_ab - 2.0;
            let d_ac = 2.0 * e.h_ac - 2.0;
            let d_bc = 2.0 * e.h_bc - 2.0;
            perimeter += d_ab + d_ac + d_bc;
            let ha = e.h_abc - e.h_bc;
            let hb = e.h_abc - e.h_ac;
            let hc = e.h_abc - e.h_ab;
            area += ha * hb + hb * hc + hc * ha;
        }
    }
    perimeter /= (n * n) as f64;
    area /= (n * n) as f64;

    assert!(
        (mg.boundary_mean - perimeter).abs() < 1e-11,
        "perimeter {} vs {perimeter}",
        mg.boundary_mean
    );
    assert!(
        (mg.bulk_mean - area).abs() < 1e-11,
        "area {} vs {area}",
        mg.bulk_mean
    );
}

/// For the singlet-based Werner state the pair distance depends only on the
/// angle between the detector axes: `D(θ) = 2 h(½(1 − λ cos θ))`. The grid
/// mean must match the one-dimensional quadrature at the same θ nodes.
#[test]
fn werner_mean_distance_matches_analytic_quadrature() {
    let n = 64;
    let cfg = IntegratorConfig {
        method: IntegrationMethod::Grid,
        grid_points_per_angle: n,
        ..Default::default()
    };
    for &lambda in &[0.0, 0.3, 0.7, 1.0] {
        let rho = make_state(StateFamily::Werner2, lambda).unwrap();
        let mg = mean_geometry(&rho, &cfg).unwrap();
        let oracle: f64 = (0..n)
            .map(|i| {
                let theta = (i as f64 + 0.5) * PI / n as f64;
                2.0 * h2(0.5 * (1.0 - lambda * theta.cos()))
            })
            .sum::<f64>()
            / n as f64;
        assert!(
            (mg.bulk_mean - oracle).abs() < 1e-12,
            "λ={lambda}: {} vs {oracle}",
            mg.bulk_mean
        );
    }
}

#[test]
fn singlet_equal_detectors_have_zero_distance() {
    let singlet = make_state(StateFamily::Singlet, 1.0).unwrap();
    let setting = MeasurementSetting::new(vec![(0.0, 0.0), (0.0, 0.0)]).unwrap();
    let p = joint_distribution(&singlet, &setting).unwrap();
    // anti-correlated outcomes
    assert!((p.prob(&[1, 0]).unwrap() - 0.5).abs() < 1e-12);
    assert!((p.prob(&[0, 1]).unwrap() - 0.5).abs() < 1e-12);
    let t = EntropyTable::from_distribution(&p);
    assert!(t.info_distance(0, 1).unwrap() < 1e-12);
}
