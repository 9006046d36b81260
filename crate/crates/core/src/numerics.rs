//! Central-upwind numerical flux with the momentum flux split into an
//! advective and a gravity part, and the well-balanced source quadrature.

use serde::{Deserialize, Serialize};

use crate::grid::Bathymetry;
use crate::reconstruction::InterfaceRecon;

/// Below this speed spread the interface is treated as quiescent and every
/// flux component is zero.
pub const SPEED_FLOOR: f64 = 1e-12;

/// Physical flux split as `(F1, F2a, F2g)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PhysicalFlux {
    pub mass: f64,
    pub advective: f64,
    pub gravity: f64,
}

/// Point state at one side of an interface.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SideState {
    pub h: f64,
    pub u: f64,
    pub hu: f64,
}

/// `F1 = hu`, `F2a = (hu)·u`, `F2g = (g/2)h²`.
///
/// The advective part uses the desingularized velocity, so a dry state
/// (`h = 0`, `hu = 0`) gives zero without dividing by `h`.
#[inline]
pub fn physical_flux(h: f64, hu: f64, u: f64, g: f64) -> PhysicalFlux {
    debug_assert!(h >= 0.0);
    PhysicalFlux {
        mass: hu,
        advective: hu * u,
        gravity: 0.5 * g * h * h,
    }
}

/// Flux of a state given as free surface and bottom; `u = hu/h`.
pub fn physical_flux_wb(w: f64, hu: f64, b: f64, g: f64) -> PhysicalFlux {
    let h = w - b;
    assert!(h >= 0.0, "negative depth {h}");
    assert!(h > 0.0 || hu == 0.0, "discharge {hu} on a dry state");
    let u = if h > 0.0 { hu / h } else { 0.0 };
    physical_flux(h, hu, u, g)
}

/// One-sided local speeds `a⁺ ≥ 0 ≥ a⁻`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct LocalSpeeds {
    pub a_plus: f64,
    pub a_minus: f64,
}

impl LocalSpeeds {
    pub fn max_abs(&self) -> f64 {
        self.a_plus.max(-self.a_minus)
    }
}

#[inline]
pub fn local_speeds(h_minus: f64, u_minus: f64, h_plus: f64, u_plus: f64, g: f64) -> LocalSpeeds {
    let c_minus = (g * h_minus).sqrt();
    let c_plus = (g * h_plus).sqrt();
    LocalSpeeds {
        a_plus: (u_plus + c_plus).max(u_minus + c_minus).max(0.0),
        a_minus: (u_plus - c_plus).min(u_minus - c_minus).min(0.0),
    }
}

/// Numerical flux at one interface.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InterfaceFlux {
    /// Mass flux `H⁽¹⁾`.
    pub mass: f64,
    /// Advective momentum flux `H⁽²⁾ᵃ`, without numerical diffusion.
    pub advective: f64,
    /// Gravity momentum flux `H⁽²⁾ᵍ`, carrying the momentum diffusion.
    pub gravity: f64,
    pub speeds: LocalSpeeds,
}

/// Central-upwind flux between `left` (the `−` side) and `right` (`+`).
#[inline]
pub fn cu_flux(left: SideState, right: SideState, g: f64) -> InterfaceFlux {
    let speeds = local_speeds(left.h, left.u, right.h, right.u, g);
    let (ap, am) = (speeds.a_plus, speeds.a_minus);
    let spread = ap - am;
    if spread < SPEED_FLOOR {
        return InterfaceFlux {
            speeds,
            ..Default::default()
        };
    }
    let fl = physical_flux(left.h, left.hu, left.u, g);
    if left == right {
        // Consistency holds exactly for identical states.
        return InterfaceFlux {
            mass: fl.mass,
            advective: fl.advective,
            gravity: fl.gravity,
            speeds,
        };
    }
    let fr = physical_flux(right.h, right.hu, right.u, g);
    let inv = 1.0 / spread;
    let diffusion = ap * am * inv;
    InterfaceFlux {
        mass: (ap * fl.mass - am * fr.mass) * inv + diffusion * (right.h - left.h),
        advective: (ap * fl.advective - am * fr.advective) * inv,
        gravity: (ap * fl.gravity - am * fr.gravity) * inv + diffusion * (right.hu - left.hu),
        speeds,
    }
}

/// Fluxes at every interface of a reconstruction.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FluxSet {
    pub mass: Vec<f64>,
    pub advective: Vec<f64>,
    pub gravity: Vec<f64>,
    pub a_plus: Vec<f64>,
    pub a_minus: Vec<f64>,
}

impl FluxSet {
    pub fn len(&self) -> usize {
        self.mass.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mass.is_empty()
    }

    pub fn max_speed(&self) -> f64 {
        self.a_plus
            .iter()
            .zip(&self.a_minus)
            .fold(0.0, |m, (&p, &q)| m.max(p).max(-q))
    }
}

pub fn compute_fluxes(recon: &InterfaceRecon, g: f64) -> FluxSet {
    let mut out = FluxSet::default();
    compute_fluxes_into(recon, g, &mut out);
    out
}

pub(crate) fn compute_fluxes_into(recon: &InterfaceRecon, g: f64, out: &mut FluxSet) {
    let m = recon.len();
    for v in [
        &mut out.mass,
        &mut out.advective,
        &mut out.gravity,
        &mut out.a_plus,
        &mut out.a_minus,
    ] {
        v.resize(m, 0.0);
    }
    for i in 0..m {
        let left = SideState {
            h: recon.h_minus[i],
            u: recon.u_minus[i],
            hu: recon.hu_minus[i],
        };
        let right = SideState {
            h: recon.h_plus[i],
            u: recon.u_plus[i],
            hu: recon.hu_plus[i],
        };
        let f = cu_flux(left, right, g);
        out.mass[i] = f.mass;
        out.advective[i] = f.advective;
        out.gravity[i] = f.gravity;
        out.a_plus[i] = f.speeds.a_plus;
        out.a_minus[i] = f.speeds.a_minus;
    }
}

/// Momentum source `S2_j = −g h̄_j (B_{j+1/2} − B_{j−1/2}) / Δx`; the mass
/// source is zero.
pub fn source_quadrature(depth: &[f64], bathy: &Bathymetry, g: f64) -> Vec<f64> {
    let mut out = vec![0.0; depth.len()];
    source_quadrature_into(depth, bathy, g, &mut out);
    out
}

pub(crate) fn source_quadrature_into(depth: &[f64], bathy: &Bathymetry, g: f64, out: &mut [f64]) {
    let b = bathy.interfaces();
    let dx = bathy.dx();
    for (j, s) in out.iter_mut().enumerate() {
        *s = source_term(depth[j], b[j], b[j + 1], dx, g);
    }
}

#[inline(always)]
pub(crate) fn source_term(depth: f64, b_left: f64, b_right: f64, dx: f64, g: f64) -> f64 {
    -g * depth * (b_right - b_left) / dx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;
    use approx::assert_relative_eq;

    fn side(h: f64, u: f64) -> SideState {
        SideState { h, u, hu: h * u }
    }

    #[test]
    fn physical_flux_examples() {
        let f = physical_flux(1.0, 0.0, 0.0, 9.812);
        assert_eq!((f.mass, f.advective), (0.0, 0.0));
        assert_relative_eq!(f.gravity, 4.906, epsilon = 1e-15);
        assert_eq!(physical_flux(0.0, 0.0, 0.0, 9.812), PhysicalFlux::default());
        let f = physical_flux_wb(3.0, 4.0, 1.0, 10.0);
        assert_eq!((f.mass, f.advective, f.gravity), (4.0, 8.0, 20.0));
    }

    #[test]
    #[should_panic]
    fn discharge_on_dry_state_is_rejected() {
        physical_flux_wb(1.0, 0.5, 1.0, 9.812);
    }

    #[test]
    fn local_speed_examples() {
        let s = local_speeds(1.0, 0.0, 1.0, 0.0, 9.812);
        assert_relative_eq!(s.a_plus, 3.132_411_212, epsilon = 1e-8);
        assert_relative_eq!(s.a_minus, -3.132_411_212, epsilon = 1e-8);
        let s = local_speeds(0.0, 0.0, 0.0, 0.0, 9.812);
        assert_eq!((s.a_plus, s.a_minus), (0.0, 0.0));
        let s = local_speeds(1.0, 5.0, 1.0, 5.0, 1.0);
        assert_eq!((s.a_plus, s.a_minus), (6.0, 0.0));
    }

    #[test]
    fn lake_at_rest_flux() {
        let g = 9.812;
        let f = cu_flux(side(0.7, 0.0), side(0.7, 0.0), g);
        assert_eq!(f.mass, 0.0);
        assert_eq!(f.advective, 0.0);
        assert_eq!(f.gravity, 0.5 * g * 0.7 * 0.7);
    }

    #[test]
    fn dry_interface_has_zero_flux() {
        let f = cu_flux(side(0.0, 0.0), side(0.0, 0.0), 9.812);
        assert_eq!((f.mass, f.advective, f.gravity), (0.0, 0.0, 0.0));
    }

    #[test]
    fn depth_jump_mass_flux() {
        // Both speeds are set by the deeper side: a± = ±1, so
        // H1 = a⁺a⁻(h⁺ − h⁻)/(a⁺ − a⁻) = (−1)(−0.5)/2.
        let f = cu_flux(side(1.0, 0.0), side(0.5, 0.0), 1.0);
        assert_eq!((f.speeds.a_plus, f.speeds.a_minus), (1.0, -1.0));
        assert_eq!(f.mass, 0.25);
        // Mirror image.
        let f = cu_flux(side(0.5, 0.0), side(1.0, 0.0), 1.0);
        assert_eq!(f.mass, -0.25);
    }

    #[test]
    fn source_examples() {
        let grid = Grid::new(3, 0.0, 0.03).unwrap();
        let flat = Bathymetry::flat(&grid);
        assert!(source_quadrature(&[1.0, 2.0, 3.0], &flat, 9.812)
            .iter()
            .all(|&s| s == 0.0));
        let b = Bathymetry::from_samples(&grid, vec![0.0, 0.1, 0.1, 0.3]).unwrap();
        let s = source_quadrature(&[0.4, 1.0, 0.0], &b, 9.812);
        assert_relative_eq!(s[0], -39.248, epsilon = 1e-11);
        assert_eq!(s[1], 0.0);
        assert_eq!(s[2], 0.0);
    }
}
