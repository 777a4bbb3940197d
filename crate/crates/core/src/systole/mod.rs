//! Graph distances, shortest non-contractible loops and the isometric
//! filling audit.

mod filling;
mod paths;
mod search;

pub use filling::{is_isometric_filling, FillingInstance, IsometryAudit};
pub use paths::{shortest_paths, shortest_paths_within, ShortestPaths};
pub use search::{brute_force_systole, systole, systole_with, SystoleResult};

use thiserror::Error;

use crate::pi1::Pi1Error;
use crate::scalar::Scalar;
use crate::surface::{MetricSurface, SurfaceError};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SystoleError {
    #[error("surface is simply connected: every loop is contractible")]
    SimplyConnected,
    #[error("no non-contractible loop of length at most {cap}")]
    CapTooSmall { cap: f64 },
    #[error("brute force refused: {edges} edges exceed the limit of {max}")]
    TooLarge { edges: usize, max: usize },
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// `sys² / area`.
pub fn systolic_ratio<T: Scalar>(surface: &MetricSurface<T>) -> Result<T, SystoleError> {
    let sys = systole(surface)?.length;
    Ok(sys * sys / surface.area())
}
