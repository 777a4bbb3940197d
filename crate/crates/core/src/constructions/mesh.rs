use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::surface::{MetricSurface, Pairing, RawSurface, Slot, SurfaceError};

/// Builds a surface from vertex-indexed triangles. Two sides with the same
/// pair of vertex ids are glued: untwisted when they run in opposite
/// directions, twisted otherwise. Side lengths come from `length(a, b)`.
///
/// Vertex-indexed input cannot express parallel edges; use slot pairings for
/// those.
pub fn from_indexed<T: Scalar>(
    triangles: &[[usize; 3]],
    mut length: impl FnMut(usize, usize) -> T,
) -> Result<MetricSurface<T>, SurfaceError> {
    let mut by_pair: BTreeMap<(usize, usize), Vec<Slot>> = BTreeMap::new();
    let mut faces = Vec::with_capacity(triangles.len());
    for (f, t) in triangles.iter().enumerate() {
        let mut sides = [T::zero(); 3];
        for s in 0..3 {
            let (a, b) = (t[s], t[(s + 1) % 3]);
            if a == b {
                return Err(SurfaceError::BadPairing(format!(
                    "face {f} repeats vertex {a}"
                )));
            }
            sides[s] = length(a, b);
            by_pair
                .entry((a.min(b), a.max(b)))
                .or_default()
                .push(Slot::new(f, s));
        }
        faces.push(sides);
    }
    let forward = |slot: Slot| {
        let t = triangles[slot.face];
        t[slot.side] < t[(slot.side + 1) % 3]
    };
    let mut pairings = Vec::new();
    for (key, slots) in by_pair {
        match slots.as_slice() {
            [_] => {}
            [a, b] => {
                if forward(*a) == forward(*b) {
                    pairings.push(Pairing::twisted(*a, *b));
                } else {
                    pairings.push(Pairing::new(*a, *b));
                }
            }
            _ => {
                return Err(SurfaceError::BadPairing(format!(
                    "edge {key:?} is shared by {} triangles",
                    slots.len()
                )))
            }
        }
    }
    MetricSurface::build(RawSurface { faces, pairings })
}

/// [`from_indexed`] with Euclidean distances between points in space.
pub fn from_points<T: Scalar>(
    points: &[[T; 3]],
    triangles: &[[usize; 3]],
) -> Result<MetricSurface<T>, SurfaceError> {
    from_indexed(triangles, |a, b| distance(points[a], points[b]))
}

pub(crate) fn distance<T: Scalar>(p: [T; 3], q: [T; 3]) -> T {
    let d = [p[0] - q[0], p[1] - q[1], p[2] - q[2]];
    (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt()
}
