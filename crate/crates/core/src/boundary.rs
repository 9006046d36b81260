//! Boundary conditions, realized through ghost cells for the slope
//! stencils and through the outer one-sided value at the two domain ends.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum BoundaryCondition {
    Periodic,
    /// Zero-order extrapolation of the depth and the discharge.
    Outflow,
    /// Mirrored depth and bottom, negated discharge.
    Wall,
    /// Mirrored depth and bottom, prescribed discharge.
    Discharge(f64),
}

impl BoundaryCondition {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "periodic" => Ok(Self::Periodic),
            "outflow" | "free" => Ok(Self::Outflow),
            "wall" | "reflective" => Ok(Self::Wall),
            _ => {
                if let Some(v) = s.strip_prefix("discharge:") {
                    v.trim()
                        .parse()
                        .map(Self::Discharge)
                        .map_err(|_| Error::InvalidInput(format!("bad discharge value in {s:?}")))
                } else {
                    Err(Error::InvalidInput(format!(
                        "unknown boundary condition {s:?}"
                    )))
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Boundary {
    pub left: BoundaryCondition,
    pub right: BoundaryCondition,
}

impl Boundary {
    pub fn new(left: BoundaryCondition, right: BoundaryCondition) -> Result<Self> {
        let b = Self { left, right };
        b.validate()?;
        Ok(b)
    }

    pub fn periodic() -> Self {
        Self {
            left: BoundaryCondition::Periodic,
            right: BoundaryCondition::Periodic,
        }
    }

    pub fn walls() -> Self {
        Self {
            left: BoundaryCondition::Wall,
            right: BoundaryCondition::Wall,
        }
    }

    pub fn is_periodic(&self) -> bool {
        self.left == BoundaryCondition::Periodic
    }

    pub fn validate(&self) -> Result<()> {
        let l = self.left == BoundaryCondition::Periodic;
        let r = self.right == BoundaryCondition::Periodic;
        if l != r {
            return Err(Error::InvalidInput(
                "periodic boundaries must be used on both ends".into(),
            ));
        }
        Ok(())
    }
}

/// Side of the domain a boundary value is requested for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

/// Number of ghost cells per side.
pub(crate) const GHOSTS: usize = 2;

/// Fills ghost-extended depth, discharge and bottom-interface arrays.
///
/// `depth_ext`/`hu_ext` have `n + 2 * GHOSTS` entries, cell `j` at `j + GHOSTS`.
/// `b_ext` has `n + 1 + 2 * GHOSTS` entries, interface `i` at `i + GHOSTS`.
pub(crate) fn fill_ghosts(
    boundary: &Boundary,
    depth: &[f64],
    hu: &[f64],
    b_ifc: &[f64],
    depth_ext: &mut [f64],
    hu_ext: &mut [f64],
    b_ext: &mut [f64],
) {
    let n = depth.len();
    let g = GHOSTS;
    depth_ext[g..g + n].copy_from_slice(depth);
    hu_ext[g..g + n].copy_from_slice(hu);
    b_ext[g..g + n + 1].copy_from_slice(b_ifc);
    for k in 1..=g {
        // Left: ghost cell -k, ghost interface -k.
        let (h, q, b) = ghost(boundary.left, Side::Left, k, depth, hu, b_ifc);
        depth_ext[g - k] = h;
        hu_ext[g - k] = q;
        b_ext[g - k] = b;
        // Right: ghost cell n-1+k, ghost interface n+k.
        let (h, q, b) = ghost(boundary.right, Side::Right, k, depth, hu, b_ifc);
        depth_ext[g + n - 1 + k] = h;
        hu_ext[g + n - 1 + k] = q;
        b_ext[g + n + k] = b;
    }
}

fn ghost(
    bc: BoundaryCondition,
    side: Side,
    k: usize,
    depth: &[f64],
    hu: &[f64],
    b_ifc: &[f64],
) -> (f64, f64, f64) {
    let n = depth.len();
    // Interior cell mirrored onto ghost k, and interior interface mirrored
    // onto ghost interface k.
    let (mirror_cell, mirror_ifc, edge_cell, edge_ifc) = match side {
        Side::Left => (k - 1, k, 0, 0),
        Side::Right => (n - k, n - k, n - 1, n),
    };
    match bc {
        BoundaryCondition::Periodic => match side {
            Side::Left => (depth[n - k], hu[n - k], b_ifc[n - k]),
            Side::Right => (depth[k - 1], hu[k - 1], b_ifc[k]),
        },
        BoundaryCondition::Outflow => (depth[edge_cell], hu[edge_cell], b_ifc[edge_ifc]),
        BoundaryCondition::Wall => (depth[mirror_cell], -hu[mirror_cell], b_ifc[mirror_ifc]),
        BoundaryCondition::Discharge(q) => (depth[mirror_cell], q, b_ifc[mirror_ifc]),
    }
}
