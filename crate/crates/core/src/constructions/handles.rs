use std::collections::VecDeque;

use serde::Serialize;

use crate::scalar::Scalar;
use crate::surface::{MetricSurface, Pairing, RawSurface, Slot};
use crate::systole::{shortest_paths, FillingInstance};

use super::mesh::distance;
use super::ConstructionError;

/// Largest shrink factor of a face around its incentre when cutting a hole.
const MAX_SHRINK: f64 = 0.8;

/// A filling with extra handles and the measured area cost.
#[derive(Clone, Debug, PartialEq)]
pub struct Handled<T> {
    pub filling: FillingInstance<T>,
    /// Pairs of original faces joined by a tube.
    pub joined: Vec<(usize, usize)>,
    /// `area(out) - area(in)`.
    pub excess: T,
    /// `excess / (g_add · handle_scale²)`.
    pub constant: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
struct Layout<T> {
    corners: [[T; 2]; 3],
    incentre: [T; 2],
    inradius: T,
}

fn layout<T: Scalar>(sides: [T; 3]) -> Layout<T> {
    let [l0, l1, l2] = sides;
    let two = T::cst(2.0);
    let x = (l0 * l0 + l2 * l2 - l1 * l1) / (two * l0);
    let y = (l2 * l2 - x * x).max(T::zero()).sqrt();
    let corners = [[T::zero(), T::zero()], [l0, T::zero()], [x, y]];
    let per = l0 + l1 + l2;
    // corner c is weighted by the length of the opposite side
    let w = [l1, l2, l0];
    let mut incentre = [T::zero(); 2];
    for c in 0..3 {
        incentre[0] += w[c] * corners[c][0] / per;
        incentre[1] += w[c] * corners[c][1] / per;
    }
    let inradius = two * crate::surface::heron(sides) / per;
    Layout {
        corners,
        incentre,
        inradius,
    }
}

fn dist2<T: Scalar>(p: [T; 2], q: [T; 2]) -> T {
    ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt()
}

/// Adds `g_add` handles to the interior of a filling.
///
/// Each handle removes a small triangle from the middle of two faces that
/// stay clear of the boundary and of each other, and joins the two holes by
/// a six-triangle tube of height `handle_scale`. The holes are shrunken
/// copies of their faces with inradius about `handle_scale / 2√3` (the
/// inradius of an equilateral triangle of side `handle_scale`). The second
/// face of a pair is the closest admissible one, so the tube adds no long
/// shortcut.
pub fn attach_handles<T: Scalar>(
    filling: &FillingInstance<T>,
    g_add: usize,
    handle_scale: T,
) -> Result<Handled<T>, ConstructionError> {
    if !(handle_scale > T::zero()) || !handle_scale.is_finite() {
        return Err(ConstructionError::BadResolution(format!(
            "handle scale {handle_scale} must be positive"
        )));
    }
    let s = &filling.surface;
    if g_add == 0 {
        return Ok(Handled {
            filling: filling.clone(),
            joined: Vec::new(),
            excess: T::zero(),
            constant: T::zero(),
        });
    }
    let orientation = s
        .face_orientation()
        .ok_or_else(|| ConstructionError::Postcondition("filling is not orientable".into()))?;
    let pairs = choose_faces(s, g_add)?;

    let mut raw = s.to_raw();
    let target_in = handle_scale / (T::cst(2.0) * T::cst(3.0).sqrt());
    for &(a, b) in &pairs {
        let ha = cut_hole(&mut raw, s, a, target_in);
        let hb = cut_hole(&mut raw, s, b, target_in);
        let flip = orientation[a] != orientation[b];
        add_tube(&mut raw, &ha, &hb, flip, handle_scale);
    }
    let out = MetricSurface::build(raw)?;
    let filling_out = FillingInstance::new(out)?;
    if filling_out.genus != filling.genus + g_add {
        return Err(ConstructionError::Postcondition(format!(
            "genus {} after adding {g_add} handles to genus {}",
            filling_out.genus, filling.genus
        )));
    }
    let excess = filling_out.area() - filling.area();
    let constant = excess / (T::from_usize(g_add) * handle_scale * handle_scale);
    Ok(Handled {
        filling: filling_out,
        joined: pairs,
        excess,
        constant,
    })
}

fn choose_faces<T: Scalar>(
    s: &MetricSurface<T>,
    g_add: usize,
) -> Result<Vec<(usize, usize)>, ConstructionError> {
    let nv = s.vertex_count();
    let mut on_boundary = vec![false; nv];
    for e in s.edges().iter().filter(|e| e.is_boundary()) {
        on_boundary[e.tail] = true;
        on_boundary[e.head] = true;
    }
    // hop depth from the boundary
    let adjacency = s.vertex_adjacency();
    let mut depth = vec![usize::MAX; nv];
    let mut queue: VecDeque<usize> = (0..nv).filter(|&v| on_boundary[v]).collect();
    for &v in &queue {
        depth[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for &(e, fwd) in &adjacency[v] {
            let edge = s.edge(e);
            let w = if fwd { edge.head } else { edge.tail };
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let verts = |f: usize| [0, 1, 2].map(|c| s.corner_vertex(f, c));
    let mut eligible: Vec<usize> = (0..s.face_count())
        .filter(|&f| {
            let v = verts(f);
            v[0] != v[1] && v[1] != v[2] && v[0] != v[2] && v.iter().all(|&x| !on_boundary[x])
        })
        .collect();
    eligible.sort_by_key(|&f| {
        (
            std::cmp::Reverse(verts(f).iter().map(|&x| depth[x]).min()),
            f,
        )
    });

    let mut used = vec![false; nv];
    let mut pairs = Vec::with_capacity(g_add);
    let free = |f: usize, used: &[bool]| verts(f).iter().all(|&x| !used[x]);
    for k in 0..g_add {
        let no_room = |reason: &str| ConstructionError::NoRoomForHandles {
            wanted: g_add,
            reason: format!("handle {k}: {reason}"),
        };
        // First handle at the deepest face; later ones deep but as far as
        // possible from earlier handles, so their shortcuts do not chain.
        let deep = |f: usize| verts(f).iter().map(|&x| depth[x]).min().unwrap_or(0);
        let min_depth = eligible.first().map_or(0, |&f| deep(f) / 2);
        let spread = far_from(s, &used);
        let a = eligible
            .iter()
            .copied()
            .filter(|&f| free(f, &used) && deep(f) >= min_depth)
            .max_by(|&f, &g| {
                let d = |h: usize| {
                    verts(h)
                        .iter()
                        .map(|&x| spread[x])
                        .fold(T::infinity(), T::min)
                };
                (d(f), std::cmp::Reverse(f))
                    .partial_cmp(&(d(g), std::cmp::Reverse(g)))
                    .expect("comparable")
            })
            .ok_or_else(|| no_room("no free interior face"))?;
        // The partner may touch `a` at a corner but not along a side, and
        // must keep clear of earlier handles.
        let va = verts(a);
        let shares_side = |f: usize| verts(f).iter().filter(|x| va.contains(x)).count() >= 2;
        let sp = shortest_paths(s, va[0]);
        let b = eligible
            .iter()
            .copied()
            .filter(|&f| f != a && free(f, &used) && !shares_side(f))
            .min_by(|&f, &g| {
                let d = |h: usize| {
                    verts(h)
                        .iter()
                        .map(|&x| sp.dist[x])
                        .fold(T::infinity(), T::min)
                };
                (d(f), f).partial_cmp(&(d(g), g)).expect("finite distances")
            })
            .ok_or_else(|| no_room("no partner face"))?;
        for x in va.into_iter().chain(verts(b)) {
            used[x] = true;
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// Distance from the nearest marked vertex (infinite when none is marked).
fn far_from<T: Scalar>(s: &MetricSurface<T>, marked: &[bool]) -> Vec<T> {
    let mut out = vec![T::infinity(); s.vertex_count()];
    for v in (0..marked.len()).filter(|&v| marked[v]) {
        let sp = shortest_paths(s, v);
        for (o, d) in out.iter_mut().zip(sp.dist) {
            *o = o.min(d);
        }
    }
    out
}

/// Hole left in a face: the slot of each inner side (running from inner
/// corner `c + 1` to inner corner `c`) and its length.
struct Hole<T> {
    inner: [Slot; 3],
    lengths: [T; 3],
}

/// Replaces face `f` by six triangles around a shrunken copy of itself.
///
/// For side `c` (corners `P_c → P_{c+1}`) the outer triangle
/// `(P_c, P_{c+1}, Q_{c+1})` keeps the side and its pairing; the inner
/// triangle `(P_c, Q_{c+1}, Q_c)` carries the hole side `Q_{c+1} → Q_c`.
fn cut_hole<T: Scalar>(
    raw: &mut RawSurface<T>,
    s: &MetricSurface<T>,
    f: usize,
    target_in: T,
) -> Hole<T> {
    let sides = s.faces()[f];
    let lay = layout(sides);
    let lambda = (target_in / lay.inradius).min(T::cst(MAX_SHRINK));
    let p = lay.corners;
    let q = p.map(|c| {
        [
            lay.incentre[0] + lambda * (c[0] - lay.incentre[0]),
            lay.incentre[1] + lambda * (c[1] - lay.incentre[1]),
        ]
    });
    let base = raw.faces.len();
    // outer triangle of side 0 keeps index f; the other five are appended
    let outer = |c: usize| if c == 0 { f } else { base + c - 1 };
    let inner = |c: usize| base + 2 + c;
    let mut new_faces = vec![[T::zero(); 3]; 5];
    let mut put = |raw: &mut RawSurface<T>, idx: usize, v: [T; 3]| {
        if idx == f {
            raw.faces[f] = v;
        } else {
            new_faces[idx - base] = v;
        }
    };
    let mut lengths = [T::zero(); 3];
    for c in 0..3 {
        let d = (c + 1) % 3;
        put(
            raw,
            outer(c),
            [sides[c], dist2(p[d], q[d]), dist2(q[d], p[c])],
        );
        lengths[c] = lambda * sides[c];
        put(
            raw,
            inner(c),
            [dist2(p[c], q[d]), lengths[c], dist2(q[c], p[c])],
        );
    }
    raw.faces.extend(new_faces);
    for p in raw.pairings.iter_mut() {
        for slot in [&mut p.a, &mut p.b] {
            if slot.face == f {
                *slot = Slot::new(outer(slot.side), 0);
            }
        }
    }
    for c in 0..3 {
        raw.pairings
            .push(Pairing::new(Slot::new(outer(c), 2), Slot::new(inner(c), 0)));
        raw.pairings.push(Pairing::new(
            Slot::new(inner(c), 2),
            Slot::new(outer((c + 2) % 3), 1),
        ));
    }
    Hole {
        inner: [0, 1, 2].map(|c| Slot::new(inner(c), 1)),
        lengths,
    }
}

/// Places a triangle with the given side lengths in the plane `z`, corners
/// counter-clockwise, incentre at the origin.
fn place<T: Scalar>(sides: [T; 3], z: T) -> [[T; 3]; 3] {
    let lay = layout(sides);
    lay.corners
        .map(|c| [c[0] - lay.incentre[0], c[1] - lay.incentre[1], z])
}

/// Joins two holes by a triangular tube.
///
/// The tube has bottom corners `Q_c` (the first hole, in its own order) and
/// top corners `R_c`. Its triangles are `(Q_c, Q_{c+1}, R_{c+1})` and
/// `(Q_c, R_{c+1}, R_c)`. Without `flip`, `R_c` is corner `-c` of the second
/// hole, which reverses that hole's order as gluing two like-oriented holes
/// requires; with `flip` the second face is stored with the opposite
/// orientation, so `R_c` is its corner `c` and the top sides are glued
/// twisted.
fn add_tube<T: Scalar>(raw: &mut RawSurface<T>, qa: &Hole<T>, qb: &Hole<T>, flip: bool, height: T) {
    // side of the second hole under the top side R_c -> R_{c+1}
    let top_side = |c: usize| if flip { c } else { (5 - c) % 3 };
    let q_len = qa.lengths;
    let r_len = [0, 1, 2].map(|c| qb.lengths[top_side(c)]);
    let qp = place(q_len, T::zero());
    let rp = place(r_len, height);
    let base = raw.faces.len();
    let t1 = |c: usize| base + 2 * c;
    let t2 = |c: usize| base + 2 * c + 1;
    for c in 0..3 {
        let d = (c + 1) % 3;
        raw.faces
            .push([q_len[c], distance(qp[d], rp[d]), distance(rp[d], qp[c])]);
        raw.faces
            .push([distance(qp[c], rp[d]), r_len[c], distance(rp[c], qp[c])]);
    }
    for c in 0..3 {
        let d = (c + 1) % 3;
        raw.pairings
            .push(Pairing::new(Slot::new(t1(c), 0), qa.inner[c]));
        raw.pairings.push(Pairing {
            a: Slot::new(t2(c), 1),
            b: qb.inner[top_side(c)],
            twisted: flip,
        });
        raw.pairings
            .push(Pairing::new(Slot::new(t1(c), 1), Slot::new(t2(d), 2)));
        raw.pairings
            .push(Pairing::new(Slot::new(t1(c), 2), Slot::new(t2(c), 0)));
    }
}
