//! Metric surfaces built from triangles whose sides are glued in pairs.
//!
//! A face is a triangle with corners `0, 1, 2`; side `s` runs from corner `s`
//! to corner `(s + 1) % 3`. A [`Pairing`] identifies two sides. An untwisted
//! pairing glues the start of one side to the end of the other (the gluing of
//! two coherently oriented triangles); a twisted pairing glues start to start.
//! Unpaired sides form the boundary. Vertices are never stored: they are the
//! orbits of corners under the identifications.

mod boundary;
mod io;
mod split;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{rel_eq, Scalar};
use crate::util::UnionFind;

pub use boundary::BoundaryParam;
pub use io::{read_surface, write_surface, SurfaceFile};
pub use split::SPLIT_MIN_FRACTION;

/// One side of one face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Slot {
    pub face: usize,
    pub side: usize,
}

impl Slot {
    pub fn new(face: usize, side: usize) -> Self {
        debug_assert!(side < 3);
        Slot { face, side }
    }

    #[inline]
    pub fn index(self) -> usize {
        self.face * 3 + self.side
    }

    #[inline]
    pub fn from_index(i: usize) -> Self {
        Slot {
            face: i / 3,
            side: i % 3,
        }
    }

    /// Corner index (`3 * face + corner`) where the side starts.
    #[inline]
    pub fn start_corner(self) -> usize {
        self.face * 3 + self.side
    }

    #[inline]
    pub fn end_corner(self) -> usize {
        self.face * 3 + (self.side + 1) % 3
    }
}

/// Identification of two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pairing {
    pub a: Slot,
    pub b: Slot,
    /// `true` when start is glued to start (orientation-reversing for
    /// coherently oriented faces).
    pub twisted: bool,
}

impl Pairing {
    pub fn new(a: Slot, b: Slot) -> Self {
        Pairing {
            a,
            b,
            twisted: false,
        }
    }

    pub fn twisted(a: Slot, b: Slot) -> Self {
        Pairing {
            a,
            b,
            twisted: true,
        }
    }

    /// Same pairing with the smaller slot first.
    pub fn canonical(self) -> Self {
        if self.b < self.a {
            Pairing {
                a: self.b,
                b: self.a,
                twisted: self.twisted,
            }
        } else {
            self
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SurfaceError {
    #[error("side {slot:?} has non-positive or non-finite length")]
    InvalidLength { slot: Slot },
    #[error("malformed pairing: {0}")]
    BadPairing(String),
    #[error("paired sides {a:?} and {b:?} have different lengths ({la} vs {lb})")]
    LengthMismatch { a: Slot, b: Slot, la: f64, lb: f64 },
    #[error("face {face} violates the strict triangle inequality")]
    TriangleInequality { face: usize },
    #[error("vertex {vertex} does not have a disk or half-disk neighbourhood")]
    NonManifold { vertex: usize },
    #[error("surface is not connected")]
    Disconnected,
    #[error("surface has no faces")]
    Empty,
    #[error("side {0:?} is not a boundary side")]
    NotBoundary(Slot),
    #[error("split fraction {t} too close to an endpoint")]
    DegenerateSplit { t: f64 },
    #[error("expected exactly one boundary component, found {0}")]
    WrongBoundaryCount(usize),
    #[error("surface file: {0}")]
    Format(String),
}

/// An edge of the derived cell structure: a glued pair of sides, or a single
/// boundary side.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge<T> {
    /// Canonical (smallest) slot; the edge is directed like this slot.
    pub slot: Slot,
    pub partner: Option<Slot>,
    pub twisted: bool,
    pub length: T,
    pub tail: usize,
    pub head: usize,
}

impl<T> Edge<T> {
    pub fn is_boundary(&self) -> bool {
        self.partner.is_none()
    }
}

/// Unvalidated face list plus pairings; the editing form of a surface.
#[derive(Clone, Debug, PartialEq)]
pub struct RawSurface<T> {
    pub faces: Vec<[T; 3]>,
    pub pairings: Vec<Pairing>,
}

/// Euler characteristic, orientability and the derived classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologySummary {
    pub euler_char: i64,
    pub orientable: bool,
    pub boundary_count: usize,
    /// Orientable genus, or the number of crosscaps when non-orientable.
    pub genus_or_crosscap: usize,
}

impl TopologySummary {
    pub fn is_closed(&self) -> bool {
        self.boundary_count == 0
    }
}

/// A validated, immutable triangulated surface with positive side lengths.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricSurface<T> {
    faces: Vec<[T; 3]>,
    partner: Vec<Option<(usize, bool)>>,
    corner_vertex: Vec<usize>,
    vertex_count: usize,
    edges: Vec<Edge<T>>,
    slot_edge: Vec<usize>,
    slot_aligned: Vec<bool>,
}

/// Validates faces and pairings and derives vertices and edges.
///
/// Paired lengths must agree to [`Scalar::pair_tol`] (relative); both sides
/// then store the length of the smaller slot.
pub fn build_surface<T: Scalar>(
    faces: Vec<[T; 3]>,
    pairings: Vec<Pairing>,
) -> Result<MetricSurface<T>, SurfaceError> {
    MetricSurface::build(RawSurface { faces, pairings })
}

impl<T: Scalar> MetricSurface<T> {
    pub fn build(raw: RawSurface<T>) -> Result<Self, SurfaceError> {
        let RawSurface {
            mut faces,
            pairings,
        } = raw;
        let nf = faces.len();
        if nf == 0 {
            return Err(SurfaceError::Empty);
        }
        for (f, sides) in faces.iter().enumerate() {
            for (s, &l) in sides.iter().enumerate() {
                if !(l.is_finite() && l > T::zero()) {
                    return Err(SurfaceError::InvalidLength {
                        slot: Slot::new(f, s),
                    });
                }
            }
        }

        let mut partner: Vec<Option<(usize, bool)>> = vec![None; 3 * nf];
        for p in &pairings {
            let (a, b) = (p.a, p.b);
            if a.face >= nf || b.face >= nf || a.side > 2 || b.side > 2 {
                return Err(SurfaceError::BadPairing(format!(
                    "{a:?}-{b:?} out of range"
                )));
            }
            if a == b {
                return Err(SurfaceError::BadPairing(format!(
                    "{a:?} paired with itself"
                )));
            }
            for s in [a, b] {
                if partner[s.index()].is_some() {
                    return Err(SurfaceError::BadPairing(format!("{s:?} paired twice")));
                }
            }
            partner[a.index()] = Some((b.index(), p.twisted));
            partner[b.index()] = Some((a.index(), p.twisted));
        }

        let tol = T::pair_tol();
        for i in 0..3 * nf {
            if let Some((j, _)) = partner[i] {
                if j < i {
                    continue;
                }
                let (a, b) = (Slot::from_index(i), Slot::from_index(j));
                let la = faces[a.face][a.side];
                let lb = faces[b.face][b.side];
                if !rel_eq(la, lb, tol) {
                    return Err(SurfaceError::LengthMismatch {
                        a,
                        b,
                        la: la.as_f64(),
                        lb: lb.as_f64(),
                    });
                }
                faces[b.face][b.side] = la;
            }
        }

        for (f, s) in faces.iter().enumerate() {
            let [x, y, z] = *s;
            if !(x < y + z && y < z + x && z < x + y) {
                return Err(SurfaceError::TriangleInequality { face: f });
            }
        }

        let mut face_uf = UnionFind::new(nf);
        for (i, p) in partner.iter().enumerate() {
            if let Some((j, _)) = *p {
                face_uf.union(i / 3, j / 3);
            }
        }
        let root = face_uf.find(0);
        if (1..nf).any(|f| face_uf.find(f) != root) {
            return Err(SurfaceError::Disconnected);
        }

        // Corner identifications.
        let mut corner_uf = UnionFind::new(3 * nf);
        for i in 0..3 * nf {
            if let Some((j, tw)) = partner[i] {
                if j < i {
                    continue;
                }
                let (a, b) = (Slot::from_index(i), Slot::from_index(j));
                if tw {
                    corner_uf.union(a.start_corner(), b.start_corner());
                    corner_uf.union(a.end_corner(), b.end_corner());
                } else {
                    corner_uf.union(a.start_corner(), b.end_corner());
                    corner_uf.union(a.end_corner(), b.start_corner());
                }
            }
        }
        let mut root_id = vec![usize::MAX; 3 * nf];
        let mut corner_vertex = vec![0; 3 * nf];
        let mut vertex_count = 0;
        for c in 0..3 * nf {
            let r = corner_uf.find(c);
            if root_id[r] == usize::MAX {
                root_id[r] = vertex_count;
                vertex_count += 1;
            }
            corner_vertex[c] = root_id[r];
        }

        // Link of every vertex must be one arc or one cycle.
        let mut corners = vec![0usize; vertex_count];
        let mut links = vec![0usize; vertex_count];
        let mut ends = vec![0usize; vertex_count];
        for c in 0..3 * nf {
            corners[corner_vertex[c]] += 1;
        }
        for i in 0..3 * nf {
            let s = Slot::from_index(i);
            match partner[i] {
                Some((j, _)) if j > i => {
                    links[corner_vertex[s.start_corner()]] += 1;
                    links[corner_vertex[s.end_corner()]] += 1;
                }
                Some(_) => {}
                None => {
                    ends[corner_vertex[s.start_corner()]] += 1;
                    ends[corner_vertex[s.end_corner()]] += 1;
                }
            }
        }
        for v in 0..vertex_count {
            let ok = (ends[v] == 0 && links[v] == corners[v])
                || (ends[v] == 2 && links[v] + 1 == corners[v]);
            if !ok {
                return Err(SurfaceError::NonManifold { vertex: v });
            }
        }

        let mut edges = Vec::new();
        let mut slot_edge = vec![usize::MAX; 3 * nf];
        let mut slot_aligned = vec![true; 3 * nf];
        for i in 0..3 * nf {
            let s = Slot::from_index(i);
            let (partner_slot, twisted) = match partner[i] {
                Some((j, _)) if j < i => continue,
                Some((j, tw)) => (Some(Slot::from_index(j)), tw),
                None => (None, false),
            };
            let id = edges.len();
            slot_edge[i] = id;
            if let Some(p) = partner_slot {
                slot_edge[p.index()] = id;
                slot_aligned[p.index()] = twisted;
            }
            edges.push(Edge {
                slot: s,
                partner: partner_slot,
                twisted,
                length: faces[s.face][s.side],
                tail: corner_vertex[s.start_corner()],
                head: corner_vertex[s.end_corner()],
            });
        }

        Ok(MetricSurface {
            faces,
            partner,
            corner_vertex,
            vertex_count,
            edges,
            slot_edge,
            slot_aligned,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn faces(&self) -> &[[T; 3]] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge<T>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge<T> {
        &self.edges[e]
    }

    pub fn side_length(&self, slot: Slot) -> T {
        self.faces[slot.face][slot.side]
    }

    /// Partner slot and twist flag, or `None` on the boundary.
    pub fn partner(&self, slot: Slot) -> Option<(Slot, bool)> {
        self.partner[slot.index()].map(|(j, tw)| (Slot::from_index(j), tw))
    }

    pub fn is_boundary_slot(&self, slot: Slot) -> bool {
        slot.face < self.faces.len() && self.partner[slot.index()].is_none()
    }

    pub fn slot_edge(&self, slot: Slot) -> usize {
        self.slot_edge[slot.index()]
    }

    /// Whether the slot runs in the direction of its edge.
    pub fn slot_aligned(&self, slot: Slot) -> bool {
        self.slot_aligned[slot.index()]
    }

    /// Vertex at corner `corner` of `face`.
    pub fn corner_vertex(&self, face: usize, corner: usize) -> usize {
        self.corner_vertex[face * 3 + corner]
    }

    /// Vertex where a side starts.
    pub fn slot_start(&self, slot: Slot) -> usize {
        self.corner_vertex[slot.start_corner()]
    }

    pub fn slot_end(&self, slot: Slot) -> usize {
        self.corner_vertex[slot.end_corner()]
    }

    pub fn pairings(&self) -> Vec<Pairing> {
        self.edges
            .iter()
            .filter_map(|e| {
                e.partner.map(|p| Pairing {
                    a: e.slot,
                    b: p,
                    twisted: e.twisted,
                })
            })
            .collect()
    }

    pub fn to_raw(&self) -> RawSurface<T> {
        RawSurface {
            faces: self.faces.clone(),
            pairings: self.pairings(),
        }
    }

    /// Oriented incidences per vertex: `(edge, forward)` such that traversing
    /// the edge in that direction leaves the vertex. Loops appear twice.
    pub fn vertex_adjacency(&self) -> Vec<Vec<(usize, bool)>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for (id, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((id, true));
            adj[e.head].push((id, false));
        }
        adj
    }

    /// Euler characteristic, orientability, boundary count and genus.
    pub fn topology(&self) -> TopologySummary {
        let euler_char =
            self.vertex_count as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        let orientable = self.face_orientation().is_some();
        let mut uf = UnionFind::new(self.vertex_count);
        for e in self.edges.iter().filter(|e| e.is_boundary()) {
            uf.union(e.tail, e.head);
        }
        let mut roots: Vec<usize> = self
            .edges
            .iter()
            .filter(|e| e.is_boundary())
            .map(|e| uf.find(e.tail))
            .collect();
        roots.sort_unstable();
        roots.dedup();
        let boundary_count = roots.len();
        let deficit = 2 - euler_char - boundary_count as i64;
        let genus_or_crosscap = if orientable { deficit / 2 } else { deficit };
        TopologySummary {
            euler_char,
            orientable,
            boundary_count,
            genus_or_crosscap: genus_or_crosscap.max(0) as usize,
        }
    }

    /// A coherent orientation (`true` = as stored) if one exists.
    ///
    /// Face 0 keeps its stored orientation; the rest follow by propagation
    /// across pairings.
    pub fn face_orientation(&self) -> Option<Vec<bool>> {
        let nf = self.faces.len();
        let mut sign: Vec<Option<bool>> = vec![None; nf];
        let mut stack = vec![0usize];
        sign[0] = Some(true);
        while let Some(f) = stack.pop() {
            let sf = sign[f].unwrap();
            for s in 0..3 {
                if let Some((j, tw)) = self.partner[f * 3 + s] {
                    let g = j / 3;
                    let want = sf ^ tw;
                    match sign[g] {
                        None => {
                            sign[g] = Some(want);
                            stack.push(g);
                        }
                        Some(x) if x != want => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(sign.into_iter().map(|s| s.unwrap_or(true)).collect())
    }

    /// Total area: Heron's formula per face, summed in face order.
    pub fn area(&self) -> T {
        self.faces
            .iter()
            .map(|s| heron(*s))
            .fold(T::zero(), |a, b| a + b)
    }

    /// Total boundary length.
    pub fn boundary_length(&self) -> T {
        self.edges
            .iter()
            .filter(|e| e.is_boundary())
            .map(|e| e.length)
            .fold(T::zero(), |a, b| a + b)
    }

    /// Multiplies every length by `factor`.
    pub fn scaled(&self, factor: T) -> Self {
        let mut out = self.clone();
        for f in &mut out.faces {
            for l in f.iter_mut() {
                *l *= factor;
            }
        }
        for e in &mut out.edges {
            e.length *= factor;
        }
        out
    }
}

/// Area of a triangle from its side lengths (numerically stable form).
pub fn heron<T: Scalar>(sides: [T; 3]) -> T {
    let mut s = sides;
    s.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    T::cst(0.25) * p.max(T::zero()).sqrt()
}
