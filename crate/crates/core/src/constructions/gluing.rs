use serde::Serialize;

use crate::pi1::EdgeLoop;
use crate::scalar::Scalar;
use crate::surface::{BoundaryParam, MetricSurface, Pairing, RawSurface};
use crate::systole::{systole, FillingInstance};

use super::ConstructionError;

/// Position of `q` on the boundary, measured from `p` at position zero.
/// `p'` sits at `L/2` and `q'` at `L/2 + s`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GluingSpec<T> {
    pub s: T,
    /// `true` when the requested value had to be pulled below `L/2`.
    pub clamped: bool,
}

/// Largest `s` used by [`GluingSpec::auto`], as a fraction of `L`.
pub const MAX_AUTO_FRACTION: f64 = 0.49;

impl<T: Scalar> GluingSpec<T> {
    pub fn new(s: T, length: T) -> Result<Self, ConstructionError> {
        let half = length / T::cst(2.0);
        if !(s > T::zero() && s < half) {
            return Err(ConstructionError::SpecOutOfRange {
                s: s.as_f64(),
                half: half.as_f64(),
            });
        }
        Ok(GluingSpec { s, clamped: false })
    }

    /// `s = sys(M)`, pulled down to `0.49 L` when the systole is longer.
    pub fn auto(filling: &FillingInstance<T>) -> Result<Self, ConstructionError> {
        let sys = systole(&filling.surface)?.length;
        Ok(Self::from_systole(sys, filling.length()))
    }

    pub fn from_systole(sys: T, length: T) -> Self {
        let cap = length * T::cst(MAX_AUTO_FRACTION);
        if sys > cap {
            GluingSpec {
                s: cap,
                clamped: true,
            }
        } else {
            GluingSpec {
                s: sys,
                clamped: false,
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GluingMode {
    Orientable,
    NonOrientable,
}

/// Closed surface obtained from a filling by identifying boundary arcs.
#[derive(Clone, Debug, PartialEq)]
pub struct Glued<T> {
    pub surface: MetricSurface<T>,
    /// Image of the arc `pq`, a closed loop of length `s`.
    pub pq_loop: EdgeLoop<T>,
    pub spec: GluingSpec<T>,
}

/// Glues `pq` to `q'p'` and `qp'` to `pq'`, both reversing the boundary
/// direction, which keeps the surface orientable.
pub fn glue_orientable<T: Scalar>(
    filling: &FillingInstance<T>,
    spec: GluingSpec<T>,
) -> Result<Glued<T>, ConstructionError> {
    glue(filling, spec, GluingMode::Orientable)
}

/// Glues `pq` to `q'p'` reversing direction and `pq'` to `p'q` preserving
/// it, which makes the surface non-orientable.
pub fn glue_nonorientable<T: Scalar>(
    filling: &FillingInstance<T>,
    spec: GluingSpec<T>,
) -> Result<Glued<T>, ConstructionError> {
    glue(filling, spec, GluingMode::NonOrientable)
}

pub fn glue<T: Scalar>(
    filling: &FillingInstance<T>,
    spec: GluingSpec<T>,
    mode: GluingMode,
) -> Result<Glued<T>, ConstructionError> {
    let total = filling.length();
    let half = total / T::cst(2.0);
    let s = spec.s;
    GluingSpec::new(s, total)?;
    let arcs = Arcs {
        total,
        half,
        s,
        mode,
    };

    let mut targets = vec![T::zero(), s, half, half + s];
    for &x in &filling.boundary.positions {
        targets.push(x);
        targets.push(arcs.image(x));
    }
    let snap = total * T::cst(1e-11);
    let (refined, bp) = filling.surface.refine_boundary(&targets, snap)?;
    let tol = total * T::cst(1e-9);
    for marked in [s, half, half + s] {
        locate(&bp, marked, tol).ok_or_else(|| {
            ConstructionError::SubdivisionMismatch(format!("no boundary vertex at {marked}"))
        })?;
    }

    let mut raw: RawSurface<T> = refined.to_raw();
    let mut pq_steps = Vec::new();
    for i in 0..bp.len() {
        let a = bp.positions[i];
        let b = bp.end_position(i);
        let mid = (a + b) / T::cst(2.0);
        if mid > half {
            continue;
        }
        let reversing = mid < s || mode == GluingMode::Orientable;
        let (img_start, img_end) = if reversing {
            (arcs.image_in(b, mid), arcs.image_in(a, mid))
        } else {
            (arcs.image_in(a, mid), arcs.image_in(b, mid))
        };
        let j = locate(&bp, img_start, tol).ok_or_else(|| {
            ConstructionError::SubdivisionMismatch(format!("no boundary vertex at {img_start}"))
        })?;
        if bp.circle_distance(bp.end_position(j), img_end) > tol {
            return Err(ConstructionError::SubdivisionMismatch(format!(
                "arc [{a}, {b}] has no matching side at {img_start}"
            )));
        }
        let (si, fi) = bp.steps[i];
        let (sj, fj) = bp.steps[j];
        let twisted = if reversing { fi != fj } else { fi == fj };
        raw.pairings.push(Pairing {
            a: si,
            b: sj,
            twisted,
        });
        if mid < s {
            pq_steps.push((si, fi));
        }
    }
    let surface = MetricSurface::build(raw)?;
    let steps = pq_steps
        .into_iter()
        .map(|(slot, fwd)| (surface.slot_edge(slot), fwd == surface.slot_aligned(slot)))
        .collect();
    let pq_loop = EdgeLoop::new(&surface, steps)?;

    let before = filling.surface.topology();
    let after = surface.topology();
    let want_orientable = mode == GluingMode::Orientable;
    if !after.is_closed()
        || after.orientable != want_orientable
        || after.euler_char != before.euler_char - 1
    {
        return Err(ConstructionError::Postcondition(format!(
            "{mode:?} gluing gave {after:?} from {before:?}"
        )));
    }
    Ok(Glued {
        surface,
        pq_loop,
        spec,
    })
}

struct Arcs<T> {
    total: T,
    half: T,
    s: T,
    mode: GluingMode,
}

impl<T: Scalar> Arcs<T> {
    /// Partner of boundary position `x` under the identification of the arc
    /// containing it.
    fn image(&self, x: T) -> T {
        self.image_in(x, x)
    }

    /// Partner of `x` under the map of the arc containing `at`.
    fn image_in(&self, x: T, at: T) -> T {
        let Arcs {
            total,
            half,
            s,
            mode,
        } = *self;
        let first = at < s || (at >= half && at < half + s);
        let y = if first {
            half + s - x
        } else {
            match mode {
                GluingMode::Orientable => total + s - x,
                GluingMode::NonOrientable => {
                    if at < half {
                        x + half
                    } else {
                        x - half
                    }
                }
            }
        };
        if y >= total {
            y - total
        } else if y < T::zero() {
            y + total
        } else {
            y
        }
    }
}

/// Index of the boundary step starting at position `x` (within `tol`).
fn locate<T: Scalar>(bp: &BoundaryParam<T>, x: T, tol: T) -> Option<usize> {
    let x = if x >= bp.total { x - bp.total } else { x };
    let k = bp.positions.partition_point(|&p| p < x);
    [k.wrapping_sub(1), k, 0]
        .into_iter()
        .filter(|&i| i < bp.len())
        .find(|&i| bp.circle_distance(bp.positions[i], x) <= tol)
}
