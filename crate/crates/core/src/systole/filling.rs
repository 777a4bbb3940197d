use rayon::prelude::*;
use serde::Serialize;

use crate::scalar::Scalar;
use crate::surface::{BoundaryParam, MetricSurface, SurfaceError};

use super::paths::shortest_paths_adj;

/// An orientable surface with one boundary circle, viewed as a filling of
/// that circle.
#[derive(Clone, Debug, PartialEq)]
pub struct FillingInstance<T> {
    pub surface: MetricSurface<T>,
    pub boundary: BoundaryParam<T>,
    pub genus: usize,
}

impl<T: Scalar> FillingInstance<T> {
    pub fn new(surface: MetricSurface<T>) -> Result<Self, SurfaceError> {
        let topo = surface.topology();
        if topo.boundary_count != 1 {
            return Err(SurfaceError::WrongBoundaryCount(topo.boundary_count));
        }
        if !topo.orientable {
            return Err(SurfaceError::Format("a filling must be orientable".into()));
        }
        let boundary = surface.boundary_param()?;
        Ok(FillingInstance {
            genus: topo.genus_or_crosscap,
            surface,
            boundary,
        })
    }

    /// Boundary length.
    pub fn length(&self) -> T {
        self.boundary.total
    }

    pub fn area(&self) -> T {
        self.surface.area()
    }
}

/// Outcome of comparing intrinsic distances with circle distances on the
/// boundary.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsometryAudit {
    /// Largest `d_circle(x, y) - d_M(x, y)` over boundary vertex pairs.
    pub max_deficit: f64,
    /// Boundary positions of a pair attaining it.
    pub worst_pair: (f64, f64),
    pub tol: f64,
    pub passes: bool,
    pub boundary_vertices: usize,
}

/// Checks that no path through the surface is shorter than the boundary arc
/// between its endpoints (up to `tol`).
pub fn is_isometric_filling<T: Scalar>(filling: &FillingInstance<T>, tol: T) -> IsometryAudit {
    let s = &filling.surface;
    let bp = &filling.boundary;
    let adjacency = s.vertex_adjacency();
    let n = bp.len();
    let rows: Vec<(T, usize, usize)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let sp = shortest_paths_adj(s, &adjacency, bp.vertices[i], T::infinity());
            let mut worst = (T::neg_infinity(), i, i);
            for j in 0..n {
                let deficit =
                    bp.circle_distance(bp.positions[i], bp.positions[j]) - sp.dist[bp.vertices[j]];
                if deficit > worst.0 {
                    worst = (deficit, i, j);
                }
            }
            worst
        })
        .collect();
    let (deficit, i, j) =
        rows.into_iter().fold(
            (T::neg_infinity(), 0, 0),
            |a, b| if b.0 > a.0 { b } else { a },
        );
    let deficit = deficit.max(T::zero());
    IsometryAudit {
        max_deficit: deficit.as_f64(),
        worst_pair: (bp.positions[i].as_f64(), bp.positions[j].as_f64()),
        tol: tol.as_f64(),
        passes: deficit <= tol,
        boundary_vertices: n,
    }
}
