use serde::Serialize;

use super::{MetricSurface, Slot, SurfaceError};
use crate::scalar::Scalar;

/// Arc-length parameterization of a single boundary circle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryParam<T> {
    /// Boundary sides in traversal order; `true` when traversed from the
    /// side's start corner to its end corner.
    pub steps: Vec<(Slot, bool)>,
    /// Vertex at the start of each step.
    pub vertices: Vec<usize>,
    /// Arc-length position of each vertex, starting at zero.
    pub positions: Vec<T>,
    /// Total boundary length.
    pub total: T,
}

impl<T: Scalar> BoundaryParam<T> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Position where step `i` ends (`total` for the last step).
    pub fn end_position(&self, i: usize) -> T {
        if i + 1 < self.positions.len() {
            self.positions[i + 1]
        } else {
            self.total
        }
    }

    /// Shorter-arc distance between two positions.
    pub fn circle_distance(&self, x: T, y: T) -> T {
        let d = (x - y).abs();
        d.min(self.total - d)
    }

    fn from_steps(surface: &MetricSurface<T>, steps: Vec<(Slot, bool)>) -> Self {
        let mut vertices = Vec::with_capacity(steps.len());
        let mut positions = Vec::with_capacity(steps.len());
        let mut acc = T::zero();
        for &(slot, fwd) in &steps {
            vertices.push(if fwd {
                surface.slot_start(slot)
            } else {
                surface.slot_end(slot)
            });
            positions.push(acc);
            acc += surface.side_length(slot);
        }
        BoundaryParam {
            steps,
            vertices,
            positions,
            total: acc,
        }
    }
}

impl<T: Scalar> MetricSurface<T> {
    /// Walks the unique boundary circle, starting at the start corner of the
    /// lowest-indexed boundary side and following that side's direction.
    pub fn boundary_param(&self) -> Result<BoundaryParam<T>, SurfaceError> {
        let count = self.topology().boundary_count;
        if count != 1 {
            return Err(SurfaceError::WrongBoundaryCount(count));
        }
        let mut at_vertex: Vec<Vec<Slot>> = vec![Vec::new(); self.vertex_count()];
        for e in self.edges().iter().filter(|e| e.is_boundary()) {
            at_vertex[e.tail].push(e.slot);
            if e.head != e.tail {
                at_vertex[e.head].push(e.slot);
            }
        }
        let first = self
            .edges()
            .iter()
            .find(|e| e.is_boundary())
            .map(|e| e.slot)
            .expect("one boundary component");
        let mut steps = vec![(first, true)];
        let mut current = first;
        let mut vertex = self.slot_end(first);
        loop {
            let next = at_vertex[vertex].iter().copied().find(|&s| s != current);
            let next = match next {
                Some(s) if s != first => s,
                _ => break,
            };
            let fwd = self.slot_start(next) == vertex;
            vertex = if fwd {
                self.slot_end(next)
            } else {
                self.slot_start(next)
            };
            steps.push((next, fwd));
            current = next;
        }
        Ok(BoundaryParam::from_steps(self, steps))
    }

    /// Inserts boundary vertices at the given arc-length positions (measured
    /// along [`MetricSurface::boundary_param`]). Positions within `snap` of an
    /// existing vertex are ignored. Returns the refined surface and its
    /// parameterization, which starts at the same vertex in the same
    /// direction.
    pub fn refine_boundary(
        &self,
        targets: &[T],
        snap: T,
    ) -> Result<(Self, BoundaryParam<T>), SurfaceError> {
        let bp = self.boundary_param()?;
        let total = bp.total;
        let mut wanted: Vec<T> = targets
            .iter()
            .map(|&x| {
                let r = x % total;
                if r < T::zero() {
                    r + total
                } else {
                    r
                }
            })
            .collect();
        wanted.sort_by(|a, b| a.partial_cmp(b).unwrap());

        let mut raw = self.to_raw();
        let mut steps = bp.steps.clone();
        let mut order: Vec<(Slot, bool)> = Vec::with_capacity(steps.len() + wanted.len());
        let min_frac = T::epsilon() * T::cst(16.0);
        let mut cursor = 0;
        for i in 0..steps.len() {
            let lo = bp.positions[i];
            let hi = bp.end_position(i);
            let (mut slot, fwd) = steps[i];
            let mut cur_lo = lo;
            while cursor < wanted.len() && wanted[cursor] <= lo + snap {
                cursor += 1;
            }
            while cursor < wanted.len() && wanted[cursor] < hi - snap {
                let x = wanted[cursor];
                cursor += 1;
                if x <= cur_lo + snap {
                    continue;
                }
                let frac = (x - cur_lo) / (hi - cur_lo);
                let t = if fwd { frac } else { T::one() - frac };
                let pieces = raw.split_boundary(slot, t, min_frac)?;
                for (s, _) in order.iter_mut().chain(steps[i + 1..].iter_mut()) {
                    *s = pieces.remap(*s).expect("boundary slot survives a split");
                }
                // Emit the piece covering [cur_lo, x] and continue on the rest.
                if fwd {
                    order.push((pieces.first, true));
                    slot = pieces.second;
                } else {
                    order.push((pieces.second, false));
                    slot = pieces.first;
                }
                cur_lo = x;
            }
            order.push((slot, fwd));
        }
        let refined = MetricSurface::build(raw)?;
        let param = BoundaryParam::from_steps(&refined, order);
        Ok((refined, param))
    }
}
