use super::{MetricSurface, Pairing, RawSurface, Slot, SurfaceError};
use crate::scalar::Scalar;

/// Smallest admissible split fraction (and distance of `t` from 1).
pub const SPLIT_MIN_FRACTION: f64 = 1e-8;

/// Result of splitting one boundary side.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SplitPieces {
    /// Piece from the original start corner to the new vertex.
    pub first: Slot,
    /// Piece from the new vertex to the original end corner.
    pub second: Slot,
    face: usize,
    side: usize,
    new_face: usize,
}

impl SplitPieces {
    /// Where a slot of the pre-split surface lives afterwards. The split side
    /// itself has no image.
    pub fn remap(&self, slot: Slot) -> Option<Slot> {
        if slot.face != self.face {
            return Some(slot);
        }
        let s = self.side;
        if slot.side == s {
            None
        } else if slot.side == (s + 1) % 3 {
            Some(Slot::new(self.new_face, 1))
        } else {
            Some(Slot::new(self.face, 2))
        }
    }
}

impl<T: Scalar> RawSurface<T> {
    fn is_paired(&self, slot: Slot) -> bool {
        self.pairings.iter().any(|p| p.a == slot || p.b == slot)
    }

    /// Cuts the face of a boundary side by a cevian from the opposite corner.
    ///
    /// The face keeps its index and holds the first piece as side 0; the
    /// second piece is a new face appended at the end, also as side 0. The
    /// cevian length follows from Stewart's theorem on the flat triangle.
    pub(crate) fn split_boundary(
        &mut self,
        slot: Slot,
        t: T,
        min_fraction: T,
    ) -> Result<SplitPieces, SurfaceError> {
        if slot.face >= self.faces.len() || slot.side > 2 || self.is_paired(slot) {
            return Err(SurfaceError::NotBoundary(slot));
        }
        if !(t >= min_fraction && t <= T::one() - min_fraction) {
            return Err(SurfaceError::DegenerateSplit { t: t.as_f64() });
        }
        let (f, s) = (slot.face, slot.side);
        let sides = self.faces[f];
        let a = sides[s];
        let b = sides[(s + 1) % 3];
        let c = sides[(s + 2) % 3];
        let m = t * a;
        let n = a - m;
        let d2 = (b * b * m + c * c * n) / a - m * n;
        if !(d2 > T::zero()) {
            return Err(SurfaceError::DegenerateSplit { t: t.as_f64() });
        }
        let d = d2.sqrt();
        let g = self.faces.len();
        let pieces = SplitPieces {
            first: Slot::new(f, 0),
            second: Slot::new(g, 0),
            face: f,
            side: s,
            new_face: g,
        };
        for p in &mut self.pairings {
            p.a = pieces
                .remap(p.a)
                .expect("paired slot is not the split side");
            p.b = pieces
                .remap(p.b)
                .expect("paired slot is not the split side");
        }
        // start B, end C, opposite A: face f = (B, D, A), face g = (D, C, A).
        self.faces[f] = [m, d, c];
        self.faces.push([n, b, d]);
        self.pairings
            .push(Pairing::new(Slot::new(f, 1), Slot::new(g, 2)));
        Ok(pieces)
    }
}

impl<T: Scalar> MetricSurface<T> {
    /// Splits boundary side `slot` at fraction `t` of its length, measured
    /// from the side's start corner.
    pub fn split_boundary_side(&self, slot: Slot, t: T) -> Result<Self, SurfaceError> {
        if !self.is_boundary_slot(slot) {
            return Err(SurfaceError::NotBoundary(slot));
        }
        let mut raw = self.to_raw();
        raw.split_boundary(slot, t, T::cst(SPLIT_MIN_FRACTION))?;
        MetricSurface::build(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::build_surface;

    fn right_triangle() -> MetricSurface<f64> {
        build_surface(vec![[1.0, 1.0, 2f64.sqrt()]], vec![]).unwrap()
    }

    #[test]
    fn splitting_hypotenuse_at_midpoint() {
        let s = right_triangle();
        let out = s.split_boundary_side(Slot::new(0, 2), 0.5).unwrap();
        assert_eq!(out.face_count(), 2);
        // Cevian from the right angle to the hypotenuse midpoint: 1/sqrt(2).
        let cevian = out.side_length(Slot::new(0, 1));
        assert!((cevian - 0.5f64.sqrt()).abs() < 1e-15);
        assert!((out.area() - 0.5).abs() < 1e-15);
        assert_eq!(out.topology().euler_char, s.topology().euler_char);
        assert!((out.boundary_length() - s.boundary_length()).abs() < 1e-15);
    }

    #[test]
    fn near_endpoint_is_degenerate() {
        let s = right_triangle();
        let e = s
            .split_boundary_side(Slot::new(0, 2), 0.999999999)
            .unwrap_err();
        assert!(matches!(e, SurfaceError::DegenerateSplit { .. }));
    }

    #[test]
    fn interior_side_is_rejected() {
        let s = build_surface(
            vec![[1.0; 3], [1.0; 3]],
            vec![Pairing::new(Slot::new(0, 0), Slot::new(1, 0))],
        )
        .unwrap();
        assert_eq!(
            s.split_boundary_side(Slot::new(0, 0), 0.5).unwrap_err(),
            SurfaceError::NotBoundary(Slot::new(0, 0))
        );
    }
}
