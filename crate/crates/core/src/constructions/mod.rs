//! Surface surgeries: boundary gluings, hemisphere capping, handles and the
//! reference meshes.

mod gluing;
mod handles;
mod hemisphere;
mod mesh;
pub mod samples;

pub use gluing::{
    glue, glue_nonorientable, glue_orientable, Glued, GluingMode, GluingSpec, MAX_AUTO_FRACTION,
};
pub use handles::{attach_handles, Handled};
pub use hemisphere::{cap_with_hemisphere, cylinder_hemisphere_filling, hemisphere_mesh, Capped};
pub use mesh::{from_indexed, from_points};

use thiserror::Error;

use crate::pi1::Pi1Error;
use crate::surface::SurfaceError;
use crate::systole::SystoleError;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ConstructionError {
    #[error("gluing parameter s = {s} outside (0, {half})")]
    SpecOutOfRange { s: f64, half: f64 },
    #[error("boundary subdivisions do not match: {0}")]
    SubdivisionMismatch(String),
    #[error("bad resolution: {0}")]
    BadResolution(String),
    #[error("no room for {wanted} handles: {reason}")]
    NoRoomForHandles { wanted: usize, reason: String },
    #[error("construction produced an unexpected surface: {0}")]
    Postcondition(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Pi1(#[from] Pi1Error),
    #[error(transparent)]
    Systole(#[from] SystoleError),
}
