//! Fundamental group of a triangulated surface: tree–cotree presentation,
//! exact contractibility of edge loops and the orientable double cover.

mod basis;
mod cover;
mod engine;
mod loops;
mod word;

pub use basis::{tree_cotree, EdgeClass, SchemaPresentation, SurfaceKind, TreeCotree};
pub use cover::{double_cover, DoubleCover, LiftedPath};
pub use engine::{loop_word_with, Certificate, Contractibility, PathState, Pi1Engine};
pub use loops::{step_head, step_tail, EdgeLoop};
pub use word::{DehnReducer, LongPiece, Word};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum Pi1Error {
    #[error("loop is not a closed walk on this surface: {0}")]
    LoopNotOnSurface(String),
    #[error("surface is already orientable")]
    AlreadyOrientable,
    #[error("cover construction failed: {0}")]
    Construction(String),
    #[error("relator fails the small-cancellation condition: {0}")]
    SmallCancellation(String),
}
