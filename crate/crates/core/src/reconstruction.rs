//! Piecewise-linear reconstruction of the free surface and the velocity,
//! followed by the wet/dry correction of almost dry cells.
//!
//! The correction keeps every reconstructed depth nonnegative, conserves the
//! water in each cell, and reproduces combined lake-at-rest / dry-lake states
//! exactly. Partially flooded cells carry a wet length `Δx*_j < Δx`.

use serde::{Deserialize, Serialize};

use crate::boundary::{fill_ghosts, Boundary, BoundaryCondition, GHOSTS};
use crate::grid::{Bathymetry, CellState, SchemeParams};

/// Which correction is applied to cells with negative reconstructed depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Full wet/dry case tree with free-surface based front cells.
    #[default]
    Bckn,
    /// Redistribution only: raise one edge to the bottom, lower the other.
    Kp,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bckn" => Some(Self::Bckn),
            "kp" => Some(Self::Kp),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Bckn => "bckn",
            Self::Kp => "kp",
        }
    }
}

/// Generalized minmod: the smallest argument if all are positive, the
/// largest if all are negative, zero otherwise.
pub fn minmod(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "minmod of an empty list");
    if values.iter().all(|&z| z > 0.0) {
        values.iter().copied().fold(f64::INFINITY, f64::min)
    } else if values.iter().all(|&z| z < 0.0) {
        values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    } else {
        0.0
    }
}

#[inline]
fn minmod3(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// Limited slope of `q` in the center cell of a three-cell stencil.
#[inline]
pub fn slope(q_left: f64, q_center: f64, q_right: f64, theta: f64, dx: f64) -> f64 {
    minmod3(
        theta * (q_center - q_left) / dx,
        (q_right - q_left) / (2.0 * dx),
        theta * (q_right - q_center) / dx,
    )
}

/// Cell velocity `hu̅/h̄`, or exactly zero below the dry tolerance.
#[inline]
pub fn mean_velocity(depth: f64, hu: f64, eps: f64) -> f64 {
    if depth >= eps {
        hu / depth
    } else {
        0.0
    }
}

/// Free surface of a cell holding `depth·Δx` of water at rest between the
/// interface bottoms `b_left` and `b_right`, together with its wet length.
///
/// A cell is fully flooded when `depth ≥ |b_left − b_right| / 2`; the surface
/// is then the cell average. Otherwise the water fills a triangle against the
/// lower interface.
pub fn free_surface_level(depth: f64, b_left: f64, b_right: f64, dx: f64) -> (f64, f64) {
    let drop = (b_left - b_right).abs();
    if depth >= 0.5 * drop {
        return (depth + 0.5 * (b_left + b_right), dx);
    }
    let lower = b_left.min(b_right);
    let w = lower + (2.0 * depth * drop).sqrt();
    let wet = (2.0 * depth / drop).sqrt() * dx;
    (w, wet)
}

/// Per-cell one-sided values, including one ghost cell on each side.
///
/// Cell `j` is stored at `j + 1`; `b_ifc` holds interface `i` at `i + 1`
/// for `i = -1..=n+1`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FaceValues {
    pub w_left: Vec<f64>,
    pub w_right: Vec<f64>,
    pub u_left: Vec<f64>,
    pub u_right: Vec<f64>,
    pub w_bar: Vec<f64>,
    pub depth: Vec<f64>,
    pub b_ifc: Vec<f64>,
}

impl FaceValues {
    fn resize(&mut self, n: usize) {
        for v in [
            &mut self.w_left,
            &mut self.w_right,
            &mut self.u_left,
            &mut self.u_right,
            &mut self.w_bar,
            &mut self.depth,
        ] {
            v.resize(n + 2, 0.0);
        }
        self.b_ifc.resize(n + 3, 0.0);
    }

    /// Number of interior cells.
    pub fn cells(&self) -> usize {
        self.w_bar.len() - 2
    }

    fn cell(&self, k: usize) -> CellFaces {
        CellFaces {
            w_left: self.w_left[k],
            w_right: self.w_right[k],
            u_left: self.u_left[k],
            u_right: self.u_right[k],
            w_bar: self.w_bar[k],
            depth: self.depth[k],
            b_left: self.b_ifc[k],
            b_right: self.b_ifc[k + 1],
        }
    }

    fn set_cell(&mut self, k: usize, c: &CellFaces) {
        self.w_left[k] = c.w_left;
        self.w_right[k] = c.w_right;
        self.u_left[k] = c.u_left;
        self.u_right[k] = c.u_right;
        self.w_bar[k] = c.w_bar;
        self.depth[k] = c.depth;
    }

    fn copy_from(&mut self, other: &FaceValues) {
        self.w_left.clone_from(&other.w_left);
        self.w_right.clone_from(&other.w_right);
        self.u_left.clone_from(&other.u_left);
        self.u_right.clone_from(&other.u_right);
        self.w_bar.clone_from(&other.w_bar);
        self.depth.clone_from(&other.depth);
        self.b_ifc.clone_from(&other.b_ifc);
    }
}

/// One-sided values at each of the `n + 1` interfaces. Interface `i` is the
/// left edge of cell `i`; `minus` is the value from the left, `plus` from the
/// right.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct InterfaceRecon {
    pub b: Vec<f64>,
    pub w_minus: Vec<f64>,
    pub w_plus: Vec<f64>,
    pub h_minus: Vec<f64>,
    pub h_plus: Vec<f64>,
    pub u_minus: Vec<f64>,
    pub u_plus: Vec<f64>,
    pub hu_minus: Vec<f64>,
    pub hu_plus: Vec<f64>,
}

impl InterfaceRecon {
    fn resize(&mut self, n: usize) {
        for v in [
            &mut self.b,
            &mut self.w_minus,
            &mut self.w_plus,
            &mut self.h_minus,
            &mut self.h_plus,
            &mut self.u_minus,
            &mut self.u_plus,
            &mut self.hu_minus,
            &mut self.hu_plus,
        ] {
            v.resize(n + 1, 0.0);
        }
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }
}

/// Wet length `Δx*_j` of every cell.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WetLengths {
    pub dx_star: Vec<f64>,
}

/// How many cells went through each branch of the correction.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionStats {
    pub fully_flooded: usize,
    pub redistributed: usize,
    pub front_conservative: usize,
    pub front_partial: usize,
    /// Fronts whose lower neighbor is not fully flooded; only expected in
    /// under-resolved computations.
    pub under_resolved: usize,
    /// Dry cells on a slope.
    pub empty: usize,
}

impl CorrectionStats {
    pub fn accumulate(&mut self, other: &CorrectionStats) {
        self.fully_flooded += other.fully_flooded;
        self.redistributed += other.redistributed;
        self.front_conservative += other.front_conservative;
        self.front_partial += other.front_partial;
        self.under_resolved += other.under_resolved;
        self.empty += other.empty;
    }
}

/// Uncorrected piecewise-linear reconstruction of `w` and `u`.
pub fn base_reconstruct(
    state: &CellState,
    bathy: &Bathymetry,
    params: &SchemeParams,
    boundary: &Boundary,
) -> FaceValues {
    let depth = state.depths(bathy);
    let mut scratch = GhostScratch::default();
    let mut out = FaceValues::default();
    base_reconstruct_into(
        &depth,
        state.hu_bar(),
        bathy,
        params,
        boundary,
        &mut scratch,
        &mut out,
    );
    out
}

/// Reusable ghost-extended buffers.
#[derive(Debug, Clone, Default)]
pub struct GhostScratch {
    depth: Vec<f64>,
    hu: Vec<f64>,
    b: Vec<f64>,
    w: Vec<f64>,
    u: Vec<f64>,
    theta: f64,
}

impl GhostScratch {
    /// Fills the ghost-extended surface, velocity and bottom arrays.
    pub(crate) fn prepare(
        &mut self,
        depth: &[f64],
        hu: &[f64],
        bathy: &Bathymetry,
        params: &SchemeParams,
        boundary: &Boundary,
    ) {
        let n = depth.len();
        let g = GHOSTS;
        self.theta = params.theta;
        self.depth.resize(n + 2 * g, 0.0);
        self.hu.resize(n + 2 * g, 0.0);
        self.b.resize(n + 1 + 2 * g, 0.0);
        self.w.resize(n + 2 * g, 0.0);
        self.u.resize(n + 2 * g, 0.0);
        fill_ghosts(
            boundary,
            depth,
            hu,
            bathy.interfaces(),
            &mut self.depth,
            &mut self.hu,
            &mut self.b,
        );
        for e in 0..n + 2 * g {
            let b_cell = 0.5 * (self.b[e] + self.b[e + 1]);
            self.w[e] = self.depth[e] + b_cell;
            self.u[e] = mean_velocity(self.depth[e], self.hu[e], params.eps);
        }
        // Interior cells are bit-identical to the conserved state.
        for j in 0..n {
            self.w[j + g] = depth[j] + bathy.cell(j);
        }
    }

    /// Uncorrected faces of stored cell `k` (cell `j = k − 1`).
    #[inline(always)]
    pub(crate) fn cell(&self, k: usize) -> CellFaces {
        let e = k + GHOSTS - 1;
        let (w, u) = (&self.w[e - 1..e + 2], &self.u[e - 1..e + 2]);
        let dw = half_increment(w[0], w[1], w[2], self.theta);
        let du = half_increment(u[0], u[1], u[2], self.theta);
        CellFaces {
            w_left: w[1] - dw,
            w_right: w[1] + dw,
            u_left: u[1] - du,
            u_right: u[1] + du,
            w_bar: w[1],
            depth: self.depth[e],
            b_left: self.b[e],
            b_right: self.b[e + 1],
        }
    }
}

/// One-sided values of a single cell.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct CellFaces {
    pub w_left: f64,
    pub w_right: f64,
    pub u_left: f64,
    pub u_right: f64,
    pub w_bar: f64,
    pub depth: f64,
    pub b_left: f64,
    pub b_right: f64,
}

impl CellFaces {
    #[inline(always)]
    fn is_flooded(&self) -> bool {
        self.w_left > self.b_left && self.w_right > self.b_right
    }
}

pub(crate) fn base_reconstruct_into(
    depth: &[f64],
    hu: &[f64],
    bathy: &Bathymetry,
    params: &SchemeParams,
    boundary: &Boundary,
    scratch: &mut GhostScratch,
    out: &mut FaceValues,
) {
    let n = depth.len();
    scratch.prepare(depth, hu, bathy, params, boundary);
    out.resize(n);
    out.b_ifc
        .copy_from_slice(&scratch.b[GHOSTS - 1..GHOSTS + n + 2]);
    for k in 0..n + 2 {
        out.set_cell(k, &scratch.cell(k));
    }
}

/// Limited slope times `Δx/2`, without dividing by `Δx`.
#[inline(always)]
fn half_increment(q_left: f64, q_center: f64, q_right: f64, theta: f64) -> f64 {
    0.5 * minmod3(
        theta * (q_center - q_left),
        0.5 * (q_right - q_left),
        theta * (q_right - q_center),
    )
}

/// Applies the wet/dry correction to the interior cells of `tilde`.
pub fn wetdry_correct(
    tilde: &FaceValues,
    dx: f64,
    variant: Variant,
) -> (FaceValues, WetLengths, CorrectionStats) {
    let mut out = FaceValues::default();
    let mut wet = WetLengths::default();
    let stats = wetdry_correct_into(tilde, dx, variant, &mut out, &mut wet);
    (out, wet, stats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Branch {
    FullyFlooded,
    Redistributed,
    FrontConservative,
    FrontPartial,
    UnderResolved,
    Empty,
}

impl CorrectionStats {
    #[inline(always)]
    pub(crate) fn count(&mut self, branch: Branch) {
        match branch {
            Branch::FullyFlooded => self.fully_flooded += 1,
            Branch::Redistributed => self.redistributed += 1,
            Branch::FrontConservative => self.front_conservative += 1,
            Branch::FrontPartial => self.front_partial += 1,
            Branch::UnderResolved => self.under_resolved += 1,
            Branch::Empty => self.empty += 1,
        }
    }
}

/// Corrected cell faces.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Corrected {
    pub w_left: f64,
    pub w_right: f64,
    pub dx_star: f64,
    pub branch: Branch,
}

/// Wet/dry correction of cell `c` given the uncorrected faces of its two
/// neighbors.
#[inline(always)]
pub(crate) fn correct_cell(
    c: &CellFaces,
    left: &CellFaces,
    right: &CellFaces,
    dx: f64,
    variant: Variant,
) -> Corrected {
    let w_bar = c.w_bar;
    let depth = c.depth.max(0.0);
    let (b_l, b_r) = (c.b_left, c.b_right);
    let (wl, wr) = (c.w_left, c.w_right);
    let done = |w_left, w_right, dx_star, branch| Corrected {
        w_left,
        w_right,
        dx_star,
        branch,
    };

    let flooded = w_bar >= b_l && w_bar >= b_r;
    if flooded || variant == Variant::Kp {
        if wl >= b_l && wr >= b_r {
            return done(wl, wr, dx, Branch::FullyFlooded);
        }
        // Both edges below the bottom would need w̄ < B_j.
        return if wr < b_r {
            done(2.0 * w_bar - b_r, b_r, dx, Branch::Redistributed)
        } else {
            done(b_l, 2.0 * w_bar - b_l, dx, Branch::Redistributed)
        };
    }

    let under = if depth > 0.0 {
        Branch::UnderResolved
    } else {
        Branch::Empty
    };
    if b_l > b_r {
        // Water rests against the right edge; the lower neighbor is j + 1.
        if right.is_flooded() {
            let w_edge = right.w_left;
            let h_edge = w_edge - b_r;
            let h_far = 2.0 * depth - h_edge;
            if h_far >= 0.0 {
                done(h_far + b_l, w_edge, dx, Branch::FrontConservative)
            } else {
                let dx_star = dx * (2.0 * depth / h_edge).min(1.0);
                done(b_l, w_edge, dx_star, Branch::FrontPartial)
            }
        } else {
            let (w, dx_w) = free_surface_level(depth, b_l, b_r, dx);
            done(b_l, w, dx_w, under)
        }
    } else {
        // Mirror image: water rests against the left edge.
        if left.is_flooded() {
            let w_edge = left.w_right;
            let h_edge = w_edge - b_l;
            let h_far = 2.0 * depth - h_edge;
            if h_far >= 0.0 {
                done(w_edge, h_far + b_r, dx, Branch::FrontConservative)
            } else {
                let dx_star = dx * (2.0 * depth / h_edge).min(1.0);
                done(w_edge, b_r, dx_star, Branch::FrontPartial)
            }
        } else {
            let (w, dx_w) = free_surface_level(depth, b_l, b_r, dx);
            done(w, b_r, dx_w, under)
        }
    }
}

pub(crate) fn wetdry_correct_into(
    tilde: &FaceValues,
    dx: f64,
    variant: Variant,
    out: &mut FaceValues,
    wet: &mut WetLengths,
) -> CorrectionStats {
    let n = tilde.cells();
    out.copy_from(tilde);
    wet.dx_star.clear();
    wet.dx_star.resize(n, dx);
    let mut stats = CorrectionStats::default();
    for j in 0..n {
        let k = j + 1;
        let c = correct_cell(
            &tilde.cell(k),
            &tilde.cell(k - 1),
            &tilde.cell(k + 1),
            dx,
            variant,
        );
        stats.count(c.branch);
        out.w_left[k] = c.w_left;
        out.w_right[k] = c.w_right;
        wet.dx_star[j] = c.dx_star;
    }
    stats
}

/// Builds interface values from corrected per-cell values. The outer values
/// at the two domain ends come from the boundary conditions. Depths are
/// clipped at zero against round-off, and the velocity vanishes wherever the
/// depth does.
pub fn assemble_interfaces(faces: &FaceValues, boundary: &Boundary, eps: f64) -> InterfaceRecon {
    let mut out = InterfaceRecon::default();
    assemble_interfaces_into(faces, boundary, eps, &mut out);
    out
}

pub(crate) fn assemble_interfaces_into(
    faces: &FaceValues,
    boundary: &Boundary,
    eps: f64,
    out: &mut InterfaceRecon,
) {
    let n = faces.cells();
    out.resize(n);
    for i in 0..=n {
        out.b[i] = faces.b_ifc[i + 1];
    }
    let (b0, bn) = (out.b[0], out.b[n]);
    for i in 1..=n {
        out.put(
            i,
            Minus,
            side_state(faces.w_right[i], faces.u_right[i], out.b[i]),
        );
    }
    for i in 0..n {
        out.put(
            i,
            Plus,
            side_state(faces.w_left[i + 1], faces.u_left[i + 1], out.b[i]),
        );
    }
    if boundary.is_periodic() {
        // Interfaces 0 and n coincide.
        out.put(0, Minus, side_state(faces.w_right[n], faces.u_right[n], b0));
        out.put(n, Plus, side_state(faces.w_left[1], faces.u_left[1], bn));
    } else {
        out.put(
            0,
            Minus,
            boundary_side(boundary.left, out.get(0, Plus), eps),
        );
        out.put(
            n,
            Plus,
            boundary_side(boundary.right, out.get(n, Minus), eps),
        );
    }
}

/// Point values on one side of an interface.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Side {
    pub w: f64,
    pub h: f64,
    pub u: f64,
    pub hu: f64,
}

#[inline(always)]
pub(crate) fn side_state(w: f64, u: f64, b: f64) -> Side {
    let h = (w - b).max(0.0);
    let u = if h > 0.0 { u } else { 0.0 };
    Side { w, h, u, hu: h * u }
}

/// Outer state at a domain end from the inner one. A prescribed discharge
/// is dropped where the inner depth is below `eps`.
#[inline]
pub(crate) fn boundary_side(bc: BoundaryCondition, inner: Side, eps: f64) -> Side {
    match bc {
        BoundaryCondition::Outflow | BoundaryCondition::Periodic => inner,
        BoundaryCondition::Wall => Side {
            u: -inner.u,
            hu: -inner.hu,
            ..inner
        },
        BoundaryCondition::Discharge(q) => {
            if inner.h >= eps {
                Side {
                    u: q / inner.h,
                    hu: q,
                    ..inner
                }
            } else {
                Side {
                    u: 0.0,
                    hu: 0.0,
                    ..inner
                }
            }
        }
    }
}

#[derive(Clone, Copy)]
enum Part {
    Minus,
    Plus,
}
use Part::{Minus, Plus};

impl InterfaceRecon {
    fn put(&mut self, i: usize, part: Part, s: Side) {
        let (w, h, u, q) = match part {
            Minus => (
                &mut self.w_minus,
                &mut self.h_minus,
                &mut self.u_minus,
                &mut self.hu_minus,
            ),
            Plus => (
                &mut self.w_plus,
                &mut self.h_plus,
                &mut self.u_plus,
                &mut self.hu_plus,
            ),
        };
        w[i] = s.w;
        h[i] = s.h;
        u[i] = s.u;
        q[i] = s.hu;
    }

    fn get(&self, i: usize, part: Part) -> Side {
        match part {
            Minus => Side {
                w: self.w_minus[i],
                h: self.h_minus[i],
                u: self.u_minus[i],
                hu: self.hu_minus[i],
            },
            Plus => Side {
                w: self.w_plus[i],
                h: self.h_plus[i],
                u: self.u_plus[i],
                hu: self.hu_plus[i],
            },
        }
    }
}

/// Result of the full reconstruction pipeline.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Reconstruction {
    pub interfaces: InterfaceRecon,
    pub wet: WetLengths,
    pub stats: CorrectionStats,
}

/// Base reconstruction, correction and interface assembly in one call.
pub fn reconstruct(
    state: &CellState,
    bathy: &Bathymetry,
    params: &SchemeParams,
    boundary: &Boundary,
    variant: Variant,
) -> Reconstruction {
    let tilde = base_reconstruct(state, bathy, params, boundary);
    let (faces, wet, stats) = wetdry_correct(&tilde, bathy.dx(), variant);
    Reconstruction {
        interfaces: assemble_interfaces(&faces, boundary, params.eps),
        wet,
        stats,
    }
}
