use crate::scalar::Scalar;
use crate::surface::{MetricSurface, Pairing, RawSurface, Slot};
use crate::systole::FillingInstance;

use super::mesh::from_points;
use super::ConstructionError;

/// Smallest vertex count of a latitude ring away from the boundary.
const MIN_RING: usize = 6;

/// Polar triangulation of the round hemisphere whose equator has length `L`
/// (radius `L / 2π`).
///
/// The pole is joined to `⌈n/4⌉` latitude rings at equally spaced polar
/// angles; ring `k` carries about `n sin φ_k` vertices and the equator
/// exactly `n`. Side lengths are chords, so the boundary is the inscribed
/// regular `n`-gon and the area approaches `L² / 2π` from below.
pub fn hemisphere_mesh<T: Scalar>(
    length: T,
    n: usize,
) -> Result<FillingInstance<T>, ConstructionError> {
    let (points, tris) = hemisphere_points(length, n, 0, T::zero())?;
    Ok(FillingInstance::new(from_points(&points, &tris)?)?)
}

/// Flat cylinder of circumference `L` (as an `n`-gon prism) and the given
/// height, with [`hemisphere_mesh`] on top. The free end is the boundary.
pub fn cylinder_hemisphere_filling<T: Scalar>(
    length: T,
    height: T,
    n: usize,
) -> Result<FillingInstance<T>, ConstructionError> {
    if !(height >= T::zero()) || !height.is_finite() {
        return Err(ConstructionError::BadResolution(format!(
            "height {height} must be >= 0"
        )));
    }
    let rows = if height > T::zero() {
        let chord = chord_of(length, n);
        (height / chord).ceil().to_usize().unwrap_or(1).max(1)
    } else {
        0
    };
    let (points, tris) = hemisphere_points(length, n, rows, height)?;
    Ok(FillingInstance::new(from_points(&points, &tris)?)?)
}

fn chord_of<T: Scalar>(length: T, n: usize) -> T {
    let nn = T::from_usize(n);
    let r = length / (T::cst(2.0) * T::PI());
    T::cst(2.0) * r * (T::PI() / nn).sin()
}

type Mesh<T> = (Vec<[T; 3]>, Vec<[usize; 3]>);

fn hemisphere_points<T: Scalar>(
    length: T,
    n: usize,
    rows: usize,
    height: T,
) -> Result<Mesh<T>, ConstructionError> {
    if n < 8 {
        return Err(ConstructionError::BadResolution(format!(
            "need n >= 8 boundary segments, got {n}"
        )));
    }
    if !(length > T::zero()) || !length.is_finite() {
        return Err(ConstructionError::BadResolution(format!(
            "boundary length {length} must be positive"
        )));
    }
    let two_pi = T::cst(2.0) * T::PI();
    let radius = length / two_pi;
    let rings = n.div_ceil(4);
    let mut points = vec![[T::zero(), T::zero(), radius]];
    let mut ring_ids: Vec<Vec<usize>> = Vec::with_capacity(rings + rows);
    let push_ring = |points: &mut Vec<[T; 3]>, count: usize, phi: T, z: T| {
        let ids: Vec<usize> = (0..count).map(|i| points.len() + i).collect();
        for i in 0..count {
            let th = two_pi * T::from_usize(i) / T::from_usize(count);
            points.push([
                radius * phi.sin() * th.cos(),
                radius * phi.sin() * th.sin(),
                z,
            ]);
        }
        ids
    };
    for k in 1..=rings {
        let phi = T::FRAC_PI_2() * T::from_usize(k) / T::from_usize(rings);
        let count = if k == rings {
            n
        } else {
            let c = (T::from_usize(n) * phi.sin())
                .round()
                .to_usize()
                .unwrap_or(n);
            c.clamp(MIN_RING.min(n), n)
        };
        let z = radius * phi.cos();
        ring_ids.push(push_ring(&mut points, count, phi, z));
    }
    for r in 1..=rows {
        let z = -height * T::from_usize(r) / T::from_usize(rows);
        ring_ids.push(push_ring(&mut points, n, T::FRAC_PI_2(), z));
    }

    let mut tris = Vec::new();
    let first = &ring_ids[0];
    for i in 0..first.len() {
        tris.push([0, first[i], first[(i + 1) % first.len()]]);
    }
    for w in ring_ids.windows(2) {
        zipper(&w[0], &w[1], &mut tris);
    }
    Ok((points, tris))
}

/// Triangulates the band between two rings of equally spaced vertices,
/// `inner` nearer the pole, by advancing along whichever ring has the next
/// smaller angle.
fn zipper(inner: &[usize], outer: &[usize], tris: &mut Vec<[usize; 3]>) {
    let (m1, m2) = (inner.len(), outer.len());
    let (mut i, mut j) = (0, 0);
    while i < m1 || j < m2 {
        // compare (i + 1) / m1 with (j + 1) / m2
        let advance_inner = j == m2 || (i < m1 && (i + 1) * m2 <= (j + 1) * m1);
        if advance_inner {
            tris.push([inner[i % m1], outer[j % m2], inner[(i + 1) % m1]]);
            i += 1;
        } else {
            tris.push([outer[j % m2], outer[(j + 1) % m2], inner[i % m1]]);
            j += 1;
        }
    }
}

/// A filling closed off by a hemisphere.
#[derive(Clone, Debug, PartialEq)]
pub struct Capped<T> {
    pub surface: MetricSurface<T>,
    /// Area of the hemisphere mesh that was glued on.
    pub cap_area: T,
}

/// Closes a filling by gluing a hemisphere mesh with `n` boundary segments
/// along the boundary.
///
/// The hemisphere is scaled to the filling's boundary length, both
/// boundaries are refined to the union of their vertex positions, and the
/// hemisphere's boundary is read backwards so the result stays orientable.
pub fn cap_with_hemisphere<T: Scalar>(
    filling: &FillingInstance<T>,
    n: usize,
) -> Result<Capped<T>, ConstructionError> {
    let cap = hemisphere_mesh(filling.length(), n)?;
    let cap_surface = cap.surface.scaled(filling.length() / cap.length());
    let cap_area = cap_surface.area();
    let surface = cap_surfaces(&filling.surface, &cap_surface)?;
    let want = filling.surface.topology().euler_char + 1;
    if surface.topology().euler_char != want || !surface.topology().is_closed() {
        return Err(ConstructionError::Postcondition(format!(
            "capping gave {:?}",
            surface.topology()
        )));
    }
    Ok(Capped { surface, cap_area })
}

pub(crate) fn cap_surfaces<T: Scalar>(
    base: &MetricSurface<T>,
    cap: &MetricSurface<T>,
) -> Result<MetricSurface<T>, ConstructionError> {
    let out = glue_boundaries(base, cap, true)?;
    if out.topology().orientable || !base.topology().orientable || !cap.topology().orientable {
        return Ok(out);
    }
    // The two boundary walks ran the same way round; match them directly.
    glue_boundaries(base, cap, false)
}

/// Identifies the boundary circle of `base` with that of `cap`, position `x`
/// with `L - x` when `reversed`, else with `x`.
fn glue_boundaries<T: Scalar>(
    base: &MetricSurface<T>,
    cap: &MetricSurface<T>,
    reversed: bool,
) -> Result<MetricSurface<T>, ConstructionError> {
    let bp = base.boundary_param()?;
    let cp = cap.boundary_param()?;
    let total = bp.total;
    let snap = total * T::cst(1e-11);
    let image = |x: T| {
        if !reversed || x == T::zero() {
            x
        } else {
            total - x
        }
    };
    let mut targets: Vec<T> = bp.positions.clone();
    targets.extend(cp.positions.iter().map(|&x| image(x)));
    let (base_r, base_p) = base.refine_boundary(&targets, snap)?;
    let cap_targets: Vec<T> = base_p.positions.iter().map(|&x| image(x)).collect();
    let (cap_r, cap_p) = cap.refine_boundary(&cap_targets, snap)?;
    if base_p.len() != cap_p.len() {
        return Err(ConstructionError::SubdivisionMismatch(format!(
            "{} boundary sides against {}",
            base_p.len(),
            cap_p.len()
        )));
    }
    let m = base_p.len();
    let offset = base_r.face_count();
    let mut raw = base_r.to_raw();
    let cap_raw = cap_r.to_raw();
    raw.faces.extend(cap_raw.faces);
    for p in cap_raw.pairings {
        raw.pairings.push(Pairing {
            a: Slot::new(p.a.face + offset, p.a.side),
            b: Slot::new(p.b.face + offset, p.b.side),
            twisted: p.twisted,
        });
    }
    for i in 0..m {
        let (bs, bf) = base_p.steps[i];
        // Base step i covers [x_i, x_{i+1}]; its image is cap step m - 1 - i
        // (reversed) or i.
        let (cs, cf) = if reversed {
            cap_p.steps[m - 1 - i]
        } else {
            cap_p.steps[i]
        };
        let cs = Slot::new(cs.face + offset, cs.side);
        // Untwisted glues the start of one slot to the end of the other.
        let twisted = if reversed { bf != cf } else { bf == cf };
        raw.pairings.push(Pairing {
            a: bs,
            b: cs,
            twisted,
        });
    }
    Ok(MetricSurface::build(RawSurface {
        faces: raw.faces,
        pairings: raw.pairings,
    })?)
}
