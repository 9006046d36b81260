use proptest::prelude::*;

use wetdry_core::evolution::RunOptions;
use wetdry_core::numerics::compute_fluxes;
use wetdry_core::reconstruction::reconstruct;
use wetdry_core::scenarios::init_cell_averages;
use wetdry_core::{
    Bathymetry, Boundary, BoundaryCondition, CellState, Grid, SchemeParams, Solver, Variant,
};

fn boundary_strategy() -> impl Strategy<Value = Boundary> {
    let side = prop_oneof![
        Just(BoundaryCondition::Wall),
        Just(BoundaryCondition::Outflow),
        (-0.5f64..0.5).prop_map(BoundaryCondition::Discharge),
    ];
    prop_oneof![
        Just(Boundary::periodic()),
        (side.clone(), side).prop_map(|(l, r)| Boundary::new(l, r).unwrap()),
    ]
}

fn depth_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![
        3 => 0.0f64..2.0,
        1 => Just(0.0),
        1 => (-14.0f64..-6.0).prop_map(|e| 10f64.powf(e)),
    ]
}

/// Random bottom, depths and discharges on `n` cells; periodic problems get
/// matching bottom values at both ends.
fn problem() -> impl Strategy<Value = (Vec<f64>, Vec<f64>, Vec<f64>, Boundary)> {
    (3usize..40, boundary_strategy()).prop_flat_map(|(n, bc)| {
        (
            prop::collection::vec(-1.0f64..1.0, n + 1),
            prop::collection::vec(depth_strategy(), n),
            prop::collection::vec(-2.0f64..2.0, n),
            Just(bc),
        )
            .prop_map(|(mut b, h, u, bc)| {
                if bc.is_periodic() {
                    let last = b.len() - 1;
                    b[last] = b[0];
                }
                let hu = h.iter().zip(&u).map(|(h, u)| h * u).collect();
                (b, h, hu, bc)
            })
    })
}

fn setup(b: Vec<f64>, bc: Boundary, variant: Variant) -> (Solver, Bathymetry) {
    let n = b.len() - 1;
    let grid = Grid::new(n, 0.0, 1.0).unwrap();
    let bathy = Bathymetry::from_samples(&grid, b).unwrap();
    let solver = Solver::new(grid, bathy.clone(), SchemeParams::default(), bc)
        .unwrap()
        .with_variant(variant);
    (solver, bathy)
}

fn variant_strategy() -> impl Strategy<Value = Variant> {
    prop_oneof![Just(Variant::Bckn), Just(Variant::Kp)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solver_sweep_matches_stepwise_pipeline((b, h, hu, bc) in problem(), variant in variant_strategy()) {
        let (mut solver, bathy) = setup(b, bc, variant);
        let state = CellState::from_depths(&h, &hu, &bathy);
        let params = SchemeParams::default();
        let recon = reconstruct(&state, &bathy, &params, &bc, variant);
        let flux = compute_fluxes(&recon.interfaces, params.g);
        let (fused, wet, stats) = solver.evaluate_fluxes(&state).unwrap();
        prop_assert_eq!(fused, flux);
        prop_assert_eq!(wet, recon.wet);
        prop_assert_eq!(stats, recon.stats);
    }

    #[test]
    fn corrected_faces_are_never_below_the_bottom((b, h, hu, bc) in problem(), variant in variant_strategy()) {
        let (_, bathy) = setup(b, bc, variant);
        let state = CellState::from_depths(&h, &hu, &bathy);
        let recon = reconstruct(&state, &bathy, &SchemeParams::default(), &bc, variant);
        let r = &recon.interfaces;
        for i in 0..r.len() {
            prop_assert!(r.h_minus[i] >= 0.0 && r.h_plus[i] >= 0.0);
            if r.h_minus[i] == 0.0 {
                prop_assert_eq!(r.u_minus[i], 0.0);
            }
        }
        for (j, &d) in recon.wet.dx_star.iter().enumerate() {
            prop_assert!((0.0..=bathy.dx()).contains(&d), "cell {} wet length {}", j, d);
        }
    }

    #[test]
    fn fully_flooded_corrections_conserve_the_average((b, h, hu, bc) in problem()) {
        let (_, bathy) = setup(b, bc, Variant::Kp);
        let state = CellState::from_depths(&h, &hu, &bathy);
        let params = SchemeParams::default();
        let tilde = wetdry_core::reconstruction::base_reconstruct(&state, &bathy, &params, &bc);
        let (faces, _, _) = wetdry_core::reconstruction::wetdry_correct(&tilde, bathy.dx(), Variant::Kp);
        for k in 1..=state.len() {
            let mean = 0.5 * (faces.w_left[k] + faces.w_right[k]);
            let scale = 1.0 + faces.w_bar[k].abs();
            prop_assert!((mean - faces.w_bar[k]).abs() <= 1e-14 * scale);
        }
    }

    #[test]
    fn euler_step_keeps_depths_nonnegative_and_conserves_mass(
        (b, h, hu, bc) in problem(),
        variant in variant_strategy(),
        frac in 0.1f64..1.0,
    ) {
        let (mut solver, bathy) = setup(b, bc, variant);
        let state = CellState::from_depths(&h, &hu, &bathy);
        let dt = frac * solver.stable_dt(&state, 0.1).unwrap();
        let (mut d, mut q) = (h.clone(), hu.clone());
        solver.euler_step_depths(&mut d, &mut q, dt).unwrap();
        prop_assert!(d.iter().all(|&x| x >= 0.0));
        if bc == Boundary::periodic() || bc == Boundary::walls() {
            let before: f64 = h.iter().sum();
            let after: f64 = d.iter().sum();
            prop_assert!((before - after).abs() <= 1e-13 * (1.0 + before));
        }
    }

    #[test]
    fn rk3_keeps_depths_nonnegative((b, h, hu, bc) in problem(), variant in variant_strategy()) {
        let (solver, bathy) = setup(b, bc, variant);
        let mut solver = solver.with_dt_floor(0.0);
        let state = CellState::from_depths(&h, &hu, &bathy);
        let mut ok = true;
        let opts = RunOptions { max_steps: Some(20), ..RunOptions::until(10.0) };
        solver
            .run(&state, &opts, |v| ok &= v.depth.iter().all(|&x| x >= 0.0))
            .unwrap();
        prop_assert!(ok);
    }

    #[test]
    fn still_water_with_dry_shores_stays_still(
        b in prop::collection::vec(0.0f64..1.0, 4..40),
        level in 0.05f64..0.95,
    ) {
        let n = b.len() - 1;
        let grid = Grid::new(n, 0.0, 1.0).unwrap();
        let bathy = Bathymetry::from_samples(&grid, b.clone()).unwrap();
        let h_ifc: Vec<f64> = b.iter().map(|&z| (level - z).max(0.0)).collect();
        let (state, _) = init_cell_averages(&h_ifc, &vec![0.0; n + 1], &bathy).unwrap();
        let mut solver = Solver::new(grid, bathy, SchemeParams::default(), Boundary::walls()).unwrap();
        let dt = solver.stable_dt(&state, 0.01).unwrap();
        let (next, _) = solver.ssp_rk3_step(&state, dt).unwrap();
        for j in 0..n {
            prop_assert!((next.w_bar()[j] - state.w_bar()[j]).abs() <= 1e-13);
            prop_assert!(next.hu_bar()[j].abs() <= 1e-13);
        }
    }

    #[test]
    fn positivity_bound_step_without_draining_cut((b, h, hu, bc) in problem()) {
        let (solver, _) = setup(b, bc, Variant::Bckn);
        let mut solver = solver.with_draining(false);
        let (mut d, mut q) = (h, hu);
        for _ in 0..10 {
            let bound = solver.positivity_bound_depths(&d, &q);
            let dt = if bound.is_finite() { bound } else { 1e-3 };
            solver.euler_step_depths(&mut d, &mut q, dt).unwrap();
            prop_assert!(d.iter().all(|&x| x >= 0.0));
        }
    }
}

#[test]
fn periodic_shift_commutes_with_a_step() {
    let n = 16;
    let grid = Grid::new(n, 0.0, 1.0).unwrap();
    let b: Vec<f64> = (0..=n)
        .map(|i| ((i % n) as f64 * 0.37).sin() * 0.1)
        .collect();
    let h: Vec<f64> = (0..n).map(|j| 1.0 + 0.3 * (j as f64).cos()).collect();
    let hu: Vec<f64> = (0..n).map(|j| 0.2 * (j as f64 * 0.5).sin()).collect();
    let step = |b: &[f64], h: &[f64], hu: &[f64]| {
        let bathy = Bathymetry::from_samples(&grid, b.to_vec()).unwrap();
        let mut s =
            Solver::new(grid, bathy, SchemeParams::default(), Boundary::periodic()).unwrap();
        let (mut d, mut q) = (h.to_vec(), hu.to_vec());
        s.euler_step_depths(&mut d, &mut q, 1e-3).unwrap();
        (d, q)
    };
    let (d0, q0) = step(&b, &h, &hu);
    let k = 5;
    let rot = |v: &[f64]| {
        let mut r = v.to_vec();
        r.rotate_left(k);
        r
    };
    let mut b_rot: Vec<f64> = b[..n].to_vec();
    b_rot.rotate_left(k);
    b_rot.push(b_rot[0]);
    let (d1, q1) = step(&b_rot, &rot(&h), &rot(&hu));
    assert_eq!(d1, rot(&d0));
    assert_eq!(q1, rot(&q0));
}
