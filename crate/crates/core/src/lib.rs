//! Systolic geometry of isometric fillings of the circle, on piecewise-flat
//! triangulated surfaces.
//!
//! Everything is generic over the length type ([`Scalar`], implemented for
//! `f32` and `f64`); the aliases below fix it to `f64`.

pub mod claims;
pub mod constructions;
pub mod pi1;
pub mod scalar;
pub mod surface;
pub mod systole;
mod util;

pub use scalar::Scalar;
pub use surface::{
    build_surface, MetricSurface as GenericSurface, Pairing, Slot, SurfaceError, TopologySummary,
};

pub type Surface = surface::MetricSurface<f64>;
pub type Filling = systole::FillingInstance<f64>;
pub type Loop = pi1::EdgeLoop<f64>;
pub type Systole = systole::SystoleResult<f64>;
pub type Boundary = surface::BoundaryParam<f64>;
pub type Engine = pi1::Pi1Engine<f64>;
pub type Cover = pi1::DoubleCover<f64>;
