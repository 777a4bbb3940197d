//! Orientable double cover of a non-orientable surface.
//!
//! Cover face `f` (sheet 0) is a copy of base face `f`; cover face
//! `F + f` (sheet 1) is its mirror image, with corners listed as `0, 2, 1`.
//! Base side `s` becomes side `2 - s` of the mirror, traversed backwards.

use serde::Serialize;

use crate::scalar::Scalar;
use crate::surface::{MetricSurface, Pairing, RawSurface, Slot};

use super::loops::{step_head, step_tail, EdgeLoop};
use super::Pi1Error;

#[derive(Clone, Debug)]
pub struct DoubleCover<T> {
    pub cover: MetricSurface<T>,
    base_faces: usize,
    /// For each cover edge: base edge and whether the directions agree.
    pub edge_projection: Vec<(usize, bool)>,
    /// For each base edge: its two lifts.
    pub edge_lifts: Vec<[usize; 2]>,
    /// Sheet-0 lift of every base vertex (the cover vertex at the base
    /// vertex's first corner, on sheet 0).
    pub vertex_lift: Vec<usize>,
    /// Base vertex under every cover vertex.
    pub vertex_projection: Vec<usize>,
}

/// A lifted walk in the cover.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiftedPath<T> {
    pub steps: Vec<(usize, bool)>,
    pub closed: bool,
    pub length: T,
    pub start: usize,
    pub end: usize,
}

#[inline]
fn mirror_side(s: usize) -> usize {
    2 - s
}

pub fn double_cover<T: Scalar>(surface: &MetricSurface<T>) -> Result<DoubleCover<T>, Pi1Error> {
    if surface.topology().orientable {
        return Err(Pi1Error::AlreadyOrientable);
    }
    let nf = surface.face_count();
    let mut faces = surface.faces().to_vec();
    for s in surface.faces() {
        faces.push([s[2], s[1], s[0]]);
    }
    let sheet = |f: usize, s: usize, sh: usize| -> Slot {
        if sh == 0 {
            Slot::new(f, s)
        } else {
            Slot::new(nf + f, mirror_side(s))
        }
    };
    let mut pairings = Vec::new();
    for p in surface.pairings() {
        for sh in 0..2 {
            let other = if p.twisted { 1 - sh } else { sh };
            pairings.push(Pairing::new(
                sheet(p.a.face, p.a.side, sh),
                sheet(p.b.face, p.b.side, other),
            ));
        }
    }
    let cover = MetricSurface::build(RawSurface { faces, pairings })
        .map_err(|e| Pi1Error::Construction(e.to_string()))?;
    debug_assert!(cover.topology().orientable);

    let base_slot = |c: Slot| -> (Slot, bool) {
        if c.face < nf {
            (c, true)
        } else {
            (Slot::new(c.face - nf, mirror_side(c.side)), false)
        }
    };
    let mut edge_projection = Vec::with_capacity(cover.edge_count());
    let mut edge_lifts = vec![[usize::MAX; 2]; surface.edge_count()];
    for (ce, edge) in cover.edges().iter().enumerate() {
        let (bs, same_as_slot) = base_slot(edge.slot);
        let be = surface.slot_edge(bs);
        let same = same_as_slot == surface.slot_aligned(bs);
        edge_projection.push((be, same));
        let lifts = &mut edge_lifts[be];
        if lifts[0] == usize::MAX {
            lifts[0] = ce;
        } else {
            lifts[1] = ce;
        }
    }
    let mut vertex_lift = vec![usize::MAX; surface.vertex_count()];
    let mut vertex_projection = vec![usize::MAX; cover.vertex_count()];
    for f in 0..nf {
        for c in 0..3 {
            let v = surface.corner_vertex(f, c);
            if vertex_lift[v] == usize::MAX {
                vertex_lift[v] = cover.corner_vertex(f, c);
            }
            vertex_projection[cover.corner_vertex(f, c)] = v;
        }
    }
    for f in 0..nf {
        // mirror corner order: 0, 2, 1
        for (mc, bc) in [(0, 0), (1, 2), (2, 1)] {
            vertex_projection[cover.corner_vertex(nf + f, mc)] = surface.corner_vertex(f, bc);
        }
    }
    Ok(DoubleCover {
        cover,
        base_faces: nf,
        edge_projection,
        edge_lifts,
        vertex_lift,
        vertex_projection,
    })
}

impl<T: Scalar> DoubleCover<T> {
    pub fn base_face_count(&self) -> usize {
        self.base_faces
    }

    /// Base slot under a cover slot.
    pub fn project_slot(&self, slot: Slot) -> Slot {
        if slot.face < self.base_faces {
            slot
        } else {
            Slot::new(slot.face - self.base_faces, mirror_side(slot.side))
        }
    }

    /// Lift of one base step starting at cover vertex `at`.
    pub fn lift_step(&self, at: usize, (e, fwd): (usize, bool)) -> (usize, bool) {
        for &ce in &self.edge_lifts[e] {
            let (_, same) = self.edge_projection[ce];
            let cfwd = fwd == same;
            if step_tail(&self.cover, (ce, cfwd)) == at {
                return (ce, cfwd);
            }
        }
        panic!("no lift of edge {e} at cover vertex {at}");
    }

    /// Lifts a base loop starting on sheet 0 over its base vertex.
    pub fn lift_loop(
        &self,
        base: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<LiftedPath<T>, Pi1Error> {
        let Some(v) = lp.base(base) else {
            return Ok(LiftedPath {
                steps: Vec::new(),
                closed: true,
                length: T::zero(),
                start: 0,
                end: 0,
            });
        };
        if lp.steps.iter().any(|&(e, _)| e >= self.edge_lifts.len()) {
            return Err(Pi1Error::LoopNotOnSurface("edge out of range".into()));
        }
        let start = self.vertex_lift[v];
        let mut at = start;
        let mut steps = Vec::with_capacity(lp.steps.len());
        for &st in &lp.steps {
            let c = self.lift_step(at, st);
            at = step_head(&self.cover, c);
            steps.push(c);
        }
        Ok(LiftedPath {
            steps,
            closed: at == start,
            length: lp.length,
            start,
            end: at,
        })
    }

    /// Projects a cover loop to the base.
    pub fn project_loop(
        &self,
        base: &MetricSurface<T>,
        lp: &EdgeLoop<T>,
    ) -> Result<EdgeLoop<T>, Pi1Error> {
        let steps = lp
            .steps
            .iter()
            .map(|&(ce, fwd)| {
                let (be, same) = self.edge_projection[ce];
                (be, fwd == same)
            })
            .collect();
        EdgeLoop::new(base, steps)
    }
}
