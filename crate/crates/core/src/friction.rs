//! Manning bottom friction, applied as a semi-implicit split step after
//! each full Runge-Kutta step.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrictionParams {
    pub manning_n: f64,
    pub enabled: bool,
}

impl FrictionParams {
    pub fn manning(n: f64) -> Self {
        Self {
            manning_n: n,
            enabled: true,
        }
    }
}

/// `hu ← hu·h^{4/3} / (h^{4/3} + Δt g n² |ū|)` with the desingularized
/// velocity `ū`. Dry cells lose their discharge.
#[inline]
pub fn apply_friction(h: f64, hu: f64, dt: f64, manning_n: f64, g: f64, eps: f64) -> f64 {
    if h < eps {
        return 0.0;
    }
    let u = hu / h;
    if u == 0.0 {
        return hu;
    }
    let h43 = h.powf(4.0 / 3.0);
    hu * h43 / (h43 + dt * g * manning_n * manning_n * u.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        assert_eq!(apply_friction(1.0, 0.0, 1.0, 0.0125, 9.812, 1e-9), 0.0);
        assert_eq!(apply_friction(1.0, 2.0, 1.0, 0.0, 9.812, 1e-9), 2.0);
        assert_eq!(apply_friction(1e-12, 1e-13, 1.0, 0.0125, 9.812, 1e-9), 0.0);
        // h = 1, u = 1: factor 1/(1 + dt g n²)
        let f = apply_friction(1.0, 1.0, 0.1, 0.1, 10.0, 1e-9);
        assert_relative_eq!(f, 1.0 / 1.01, epsilon = 1e-15);
        // h = 8, u = -2: h^{4/3} = 16, factor 16/(16 + 1·10·1·2)
        let f = apply_friction(8.0, -16.0, 1.0, 1.0, 10.0, 1e-9);
        assert_relative_eq!(f, -16.0 * 16.0 / 36.0, epsilon = 1e-13);
    }

    proptest! {
        #[test]
        fn damps_without_reversing(
            h in 1e-8f64..10.0,
            u in -20.0f64..20.0,
            dt in 0.0f64..10.0,
            n in 0.0f64..0.1,
        ) {
            let hu = h * u;
            let q = apply_friction(h, hu, dt, n, 9.812, 1e-9);
            prop_assert!(q.abs() <= hu.abs());
            prop_assert!(q * hu >= 0.0);
        }
    }
}
