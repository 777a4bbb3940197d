//! Small reference surfaces: flat tori, polygon schemata, a cylinder and a
//! disk.

use std::collections::BTreeMap;

use crate::scalar::Scalar;
use crate::surface::{MetricSurface, Pairing, RawSurface, Slot, SurfaceError};

use super::mesh::{from_indexed, from_points};

/// Flat torus `R² / (u Z + v Z)` cut into an `n × n` grid of parallelograms,
/// each split along the `u - v` diagonal. Requires `n >= 3`.
pub fn lattice_torus<T: Scalar>(
    n: usize,
    u: [T; 2],
    v: [T; 2],
) -> Result<MetricSurface<T>, SurfaceError> {
    if n < 3 {
        return Err(SurfaceError::Format(format!(
            "lattice torus needs n >= 3, got {n}"
        )));
    }
    let id = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut tris = Vec::with_capacity(2 * n * n);
    for i in 0..n {
        for j in 0..n {
            tris.push([id(i, j), id(i + 1, j), id(i, j + 1)]);
            tris.push([id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    let nn = T::from_usize(n);
    let wrap = |d: isize| -> isize {
        let d = d.rem_euclid(n as isize);
        if d > n as isize / 2 {
            d - n as isize
        } else {
            d
        }
    };
    from_indexed(&tris, |a, b| {
        let di = wrap((b / n) as isize - (a / n) as isize) as f64;
        let dj = wrap((b % n) as isize - (a % n) as isize) as f64;
        let x = (u[0] * T::cst(di) + v[0] * T::cst(dj)) / nn;
        let y = (u[1] * T::cst(di) + v[1] * T::cst(dj)) / nn;
        (x * x + y * y).sqrt()
    })
}

/// Unit-square flat torus on an `n × n` grid.
pub fn flat_torus<T: Scalar>(n: usize) -> Result<MetricSurface<T>, SurfaceError> {
    lattice_torus(n, [T::one(), T::zero()], [T::zero(), T::one()])
}

/// Flat torus of the hexagonal lattice with unit generators; every triangle
/// is equilateral with side `1 / n`.
pub fn hexagonal_torus<T: Scalar>(n: usize) -> Result<MetricSurface<T>, SurfaceError> {
    let h = T::cst(3.0).sqrt() / T::cst(2.0);
    lattice_torus(n, [T::one(), T::zero()], [T::cst(0.5), h])
}

/// Polygon schema such as `"abAB"`: lower case letters are generators read
/// forwards, upper case backwards. A letter used once is a boundary side.
///
/// The polygon `P_0 … P_{n-1}` is fanned from `P_0`; triangle `t` has corners
/// `P_{t+1}, P_{t+2}, P_0`. `letter_lengths` is indexed by letters in order of
/// first appearance, `diagonal_lengths` by `t` for the diagonal `P_0 P_{t+2}`.
pub fn polygon_schema<T: Scalar>(
    word: &str,
    letter_lengths: &[T],
    diagonal_lengths: &[T],
) -> Result<MetricSurface<T>, SurfaceError> {
    let sides: Vec<char> = word.chars().collect();
    let n = sides.len();
    if n < 3 {
        return Err(SurfaceError::Format(format!(
            "schema {word:?} has fewer than three sides"
        )));
    }
    if diagonal_lengths.len() != n - 3 {
        return Err(SurfaceError::Format(format!(
            "schema {word:?} needs {} diagonals",
            n - 3
        )));
    }
    let mut letter_of: BTreeMap<char, usize> = BTreeMap::new();
    let mut order = Vec::new();
    for &c in &sides {
        if !c.is_ascii_alphabetic() {
            return Err(SurfaceError::Format(format!("bad schema letter {c:?}")));
        }
        let k = c.to_ascii_lowercase();
        if let std::collections::btree_map::Entry::Vacant(e) = letter_of.entry(k) {
            e.insert(order.len());
            order.push(k);
        }
    }
    if letter_lengths.len() != order.len() {
        return Err(SurfaceError::Format(format!(
            "schema {word:?} needs {} letter lengths",
            order.len()
        )));
    }
    let polygon_slot = |k: usize| -> Slot {
        if k == 0 {
            Slot::new(0, 2)
        } else if k == n - 1 {
            Slot::new(n - 3, 1)
        } else {
            Slot::new(k - 1, 0)
        }
    };
    let side_len = |k: usize| letter_lengths[letter_of[&sides[k].to_ascii_lowercase()]];
    let mut faces = Vec::with_capacity(n - 2);
    for t in 0..n - 2 {
        let s0 = side_len(t + 1);
        let s1 = if t == n - 3 {
            side_len(n - 1)
        } else {
            diagonal_lengths[t]
        };
        let s2 = if t == 0 {
            side_len(0)
        } else {
            diagonal_lengths[t - 1]
        };
        faces.push([s0, s1, s2]);
    }
    let mut pairings = Vec::new();
    for t in 0..n - 3 {
        pairings.push(Pairing::new(Slot::new(t, 1), Slot::new(t + 1, 2)));
    }
    let mut seen: BTreeMap<char, usize> = BTreeMap::new();
    for (k, &c) in sides.iter().enumerate() {
        let key = c.to_ascii_lowercase();
        match seen.get(&key) {
            None => {
                seen.insert(key, k);
            }
            Some(&j) => {
                let (a, b) = (polygon_slot(j), polygon_slot(k));
                if sides[j].is_ascii_lowercase() == c.is_ascii_lowercase() {
                    pairings.push(Pairing::twisted(a, b));
                } else {
                    pairings.push(Pairing::new(a, b));
                }
            }
        }
    }
    MetricSurface::build(RawSurface { faces, pairings })
}

/// Polygon schema with every side and diagonal of length one.
pub fn unit_schema<T: Scalar>(word: &str) -> Result<MetricSurface<T>, SurfaceError> {
    let letters = word
        .to_ascii_lowercase()
        .chars()
        .collect::<std::collections::BTreeSet<_>>()
        .len();
    let n = word.chars().count();
    polygon_schema(
        word,
        &vec![T::one(); letters],
        &vec![T::one(); n.saturating_sub(3)],
    )
}

/// Unit square with opposite sides identified: one vertex, three edges.
pub fn torus_schema<T: Scalar>() -> MetricSurface<T> {
    polygon_schema("abAB", &[T::one(), T::one()], &[T::cst(2.0).sqrt()]).expect("valid schema")
}

/// Two copies of a triangle glued along their boundaries.
pub fn doubled_triangle<T: Scalar>(sides: [T; 3]) -> Result<MetricSurface<T>, SurfaceError> {
    let faces = vec![sides, [sides[0], sides[2], sides[1]]];
    let pairings = vec![
        Pairing::new(Slot::new(0, 0), Slot::new(1, 0)),
        Pairing::new(Slot::new(0, 1), Slot::new(1, 2)),
        Pairing::new(Slot::new(0, 2), Slot::new(1, 1)),
    ];
    MetricSurface::build(RawSurface { faces, pairings })
}

/// Strip of `2k` unit equilateral triangles closed into a cylinder of
/// circumference `k`. Requires `k >= 3`.
pub fn equilateral_cylinder<T: Scalar>(k: usize) -> Result<MetricSurface<T>, SurfaceError> {
    if k < 3 {
        return Err(SurfaceError::Format(format!(
            "cylinder needs k >= 3, got {k}"
        )));
    }
    let mut tris = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (b0, b1) = (i, (i + 1) % k);
        let (t0, t1) = (k + i, k + (i + 1) % k);
        tris.push([b0, b1, t0]);
        tris.push([b1, t1, t0]);
    }
    from_indexed(&tris, |_, _| T::one())
}

/// Regular `k`-gon with perimeter `boundary_length`, fanned from its centre.
pub fn disk_fan<T: Scalar>(k: usize, boundary_length: T) -> Result<MetricSurface<T>, SurfaceError> {
    if k < 3 {
        return Err(SurfaceError::Format(format!(
            "disk fan needs k >= 3, got {k}"
        )));
    }
    let kk = T::from_usize(k);
    let r = boundary_length / (T::cst(2.0) * kk * (T::PI() / kk).sin());
    let mut points = vec![[T::zero(); 3]];
    for i in 0..k {
        let a = T::cst(2.0) * T::PI() * T::from_usize(i) / kk;
        points.push([r * a.cos(), r * a.sin(), T::zero()]);
    }
    let tris: Vec<[usize; 3]> = (0..k).map(|i| [0, 1 + i, 1 + (i + 1) % k]).collect();
    from_points(&points, &tris)
}
