use serde::Serialize;

use crate::scalar::{canonical_sum, Scalar};
use crate::surface::MetricSurface;

use super::Pi1Error;

/// Closed walk along edges: `(edge id, forward)` steps, each starting where
/// the previous one ended.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeLoop<T> {
    pub steps: Vec<(usize, bool)>,
    /// Sum of edge lengths, summed in sorted order so that equal multisets
    /// of edges give bit-identical lengths.
    pub length: T,
}

impl<T: Scalar> EdgeLoop<T> {
    /// Validates closedness on `surface`.
    pub fn new(surface: &MetricSurface<T>, steps: Vec<(usize, bool)>) -> Result<Self, Pi1Error> {
        let ne = surface.edge_count();
        for (i, &(e, _)) in steps.iter().enumerate() {
            if e >= ne {
                return Err(Pi1Error::LoopNotOnSurface(format!("edge {e} out of range")));
            }
            let next = steps[(i + 1) % steps.len()];
            if step_head(surface, steps[i]) != step_tail(surface, next) {
                return Err(Pi1Error::LoopNotOnSurface(format!(
                    "step {i} is not followed by an adjacent step"
                )));
            }
        }
        let length = canonical_sum(steps.iter().map(|&(e, _)| surface.edge(e).length));
        Ok(EdgeLoop { steps, length })
    }

    pub fn empty() -> Self {
        EdgeLoop {
            steps: Vec::new(),
            length: T::zero(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> Self {
        EdgeLoop {
            steps: self.steps.iter().rev().map(|&(e, f)| (e, !f)).collect(),
            length: self.length,
        }
    }

    /// Loop followed by `other`; both must be based at the same vertex.
    pub fn then(&self, surface: &MetricSurface<T>, other: &Self) -> Result<Self, Pi1Error> {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        EdgeLoop::new(surface, steps)
    }

    /// Base vertex (tail of the first step).
    pub fn base(&self, surface: &MetricSurface<T>) -> Option<usize> {
        self.steps.first().map(|&s| step_tail(surface, s))
    }

    /// Vertices visited, starting at the base.
    pub fn vertices(&self, surface: &MetricSurface<T>) -> Vec<usize> {
        self.steps.iter().map(|&s| step_tail(surface, s)).collect()
    }
}

pub fn step_tail<T: Scalar>(surface: &MetricSurface<T>, (e, fwd): (usize, bool)) -> usize {
    let edge = surface.edge(e);
    if fwd {
        edge.tail
    } else {
        edge.head
    }
}

pub fn step_head<T: Scalar>(surface: &MetricSurface<T>, (e, fwd): (usize, bool)) -> usize {
    let edge = surface.edge(e);
    if fwd {
        edge.head
    } else {
        edge.tail
    }
}
