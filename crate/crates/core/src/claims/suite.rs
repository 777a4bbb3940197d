use serde::{Deserialize, Serialize};

use crate::constructions::{cap_with_hemisphere, glue_nonorientable, glue_orientable, GluingSpec};
use crate::pi1::double_cover;
use crate::scalar::Scalar;
use crate::systole::{is_isometric_filling, systole, FillingInstance};

use super::{Claim, ClaimReport, ClaimsError, Relation, SRBoundFunction, Status};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    /// Gluing parameter; `None` uses the systole (clamped below `L/2`).
    pub s: Option<f64>,
    /// Boundary segments of the capping hemisphere.
    pub cap_segments: usize,
    pub bound: SRBoundFunction,
    /// Relative tolerance for exact area identities.
    pub area_tol: f64,
    /// Relative tolerance for comparing measured systoles.
    pub systole_tol: f64,
    /// Relative tolerance for inequalities between mesh quantities and
    /// their smooth counterparts.
    pub mesh_tol: f64,
    /// Isometry audit tolerance as a fraction of the boundary length.
    pub audit_tol: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            s: None,
            cap_segments: 64,
            bound: SRBoundFunction::default(),
            area_tol: 1e-12,
            systole_tol: 1e-9,
            mesh_tol: 0.01,
            audit_tol: 0.02,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceMeta {
    pub genus: usize,
    pub length: f64,
    pub area: f64,
    pub sys: f64,
    pub sr: f64,
    pub faces: usize,
    pub edges: usize,
    pub boundary_vertices: usize,
    /// `area < L² / 2π`.
    pub in_class: bool,
    pub isometry_deficit: f64,
    pub isometric: bool,
    pub s: f64,
    pub s_clamped: bool,
}

/// `area(F) < L² / 2π`.
pub fn check_membership<T: Scalar>(filling: &FillingInstance<T>) -> bool {
    let l = filling.length();
    filling.area() < l * l / (T::cst(2.0) * T::PI())
}

struct Builder {
    claims: Vec<Claim>,
}

impl Builder {
    #[allow(clippy::too_many_arguments)]
    fn compare(
        &mut self,
        id: &str,
        description: &str,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: f64,
        required: bool,
    ) {
        let holds = relation.holds(lhs, rhs, tol);
        let status = match (holds, required) {
            (true, true) => Status::Pass,
            (false, true) => Status::Fail,
            _ => Status::Info,
        };
        let note = if holds { "holds" } else { "does not hold" };
        self.push(
            id,
            description,
            Some(lhs),
            Some(rhs),
            relation,
            status,
            tol,
            required,
            note.into(),
        );
    }

    /// Measured equality that passes when it holds and is reported otherwise.
    fn audit(
        &mut self,
        id: &str,
        description: &str,
        lhs: f64,
        relation: Relation,
        rhs: f64,
        tol: f64,
    ) {
        let holds = relation.holds(lhs, rhs, tol);
        let (status, note) = if holds {
            (Status::Pass, "holds".to_string())
        } else {
            (Status::Info, format!("measured {lhs} against {rhs}"))
        };
        self.push(
            id,
            description,
            Some(lhs),
            Some(rhs),
            relation,
            status,
            tol,
            false,
            note,
        );
    }

    fn failed(&mut self, id: &str, description: &str, relation: Relation, cause: String) {
        self.push(
            id,
            description,
            None,
            None,
            relation,
            Status::Fail,
            0.0,
            true,
            cause,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn push(
        &mut self,
        id: &str,
        description: &str,
        lhs: Option<f64>,
        rhs: Option<f64>,
        relation: Relation,
        status: Status,
        tolerance: f64,
        required: bool,
        note: String,
    ) {
        self.claims.push(Claim {
            id: id.into(),
            description: description.into(),
            lhs,
            rhs,
            relation,
            status,
            tolerance,
            required,
            note,
        });
    }
}

const C1: &str = "area of the orientable gluing equals the area of the filling";
const C2: &str = "systolic ratio of the orientable gluing equals that of the filling";
const C3: &str = "systolic ratio of the non-orientable gluing equals that of the filling";
const C4: &str =
    "systole of the orientable double cover is at least twice that of the non-orientable gluing";
const C4_LIFT: &str = "systole of the orientable double cover is at least that of its base";
const C5: &str = "systolic ratio of the filling is at most half the bound for genus g+1";
const C6_ADD: &str = "area of the capped surface is the filling area plus the hemisphere area";
const C6_LOWER: &str = "twice the filling area is at most the capped area";
const C6_UPPER: &str = "capped area is at most L^2/pi";
const C7: &str = "the boundary is not a systole: sys(M) < L";
const C8: &str = "systole against the threshold log(g) L / (2 pi sqrt(g))";
const C9: &str = "genus of the orientable double cover of the non-orientable gluing against g+1";

/// Evaluates every claim on one filling of genus at least one.
pub fn run_claim_suite<T: Scalar>(
    filling: &FillingInstance<T>,
    opts: &SuiteOptions,
) -> Result<ClaimReport, ClaimsError> {
    if filling.genus == 0 {
        return Err(ClaimsError::SimplyConnected);
    }
    let g = filling.genus;
    let m = &filling.surface;
    let length = filling.length().as_f64();
    let area = filling.area().as_f64();
    let sys_t = systole(m)?.length;
    let sys = sys_t.as_f64();
    let sr = sys * sys / area;
    let in_class = check_membership(filling);
    let audit = is_isometric_filling(filling, filling.length() * T::cst(opts.audit_tol));
    let spec = match opts.s {
        Some(s) => GluingSpec::new(T::cst(s), filling.length())?,
        None => GluingSpec::from_systole(sys_t, filling.length()),
    };
    let mut b = Builder { claims: Vec::new() };

    match glue_orientable(filling, spec) {
        Ok(plus) => {
            let a_plus = plus.surface.area().as_f64();
            b.compare("C1", C1, a_plus, Relation::Eq, area, opts.area_tol, true);
            match systole(&plus.surface) {
                Ok(r) => {
                    let sr_plus = r.length.as_f64().powi(2) / a_plus;
                    b.audit("C2", C2, sr_plus, Relation::Eq, sr, opts.systole_tol);
                }
                Err(e) => b.failed("C2", C2, Relation::Eq, e.to_string()),
            }
        }
        Err(e) => {
            b.failed("C1", C1, Relation::Eq, e.to_string());
            b.failed("C2", C2, Relation::Eq, e.to_string());
        }
    }

    match glue_nonorientable(filling, spec) {
        Ok(minus) => {
            let a_minus = minus.surface.area().as_f64();
            let sys_minus = systole(&minus.surface).map(|r| r.length.as_f64());
            match &sys_minus {
                Ok(sm) => b.audit(
                    "C3",
                    C3,
                    sm * sm / a_minus,
                    Relation::Eq,
                    sr,
                    opts.systole_tol,
                ),
                Err(e) => b.failed("C3", C3, Relation::Eq, e.to_string()),
            }
            let cover = double_cover(&minus.surface).map_err(|e| e.to_string());
            let cover_sys = cover.as_ref().map_err(Clone::clone).and_then(|c| {
                systole(&c.cover)
                    .map(|r| r.length.as_f64())
                    .map_err(|e| e.to_string())
            });
            match (&sys_minus, &cover_sys) {
                (Ok(sm), Ok(sc)) => {
                    b.compare(
                        "C4",
                        C4,
                        *sc,
                        Relation::Ge,
                        2.0 * sm,
                        opts.systole_tol,
                        false,
                    );
                    b.compare(
                        "C4-lift",
                        C4_LIFT,
                        *sc,
                        Relation::Ge,
                        *sm,
                        opts.area_tol,
                        true,
                    );
                }
                (Err(e), _) => {
                    b.failed("C4", C4, Relation::Ge, e.to_string());
                    b.failed("C4-lift", C4_LIFT, Relation::Ge, e.to_string());
                }
                (_, Err(e)) => {
                    b.failed("C4", C4, Relation::Ge, e.clone());
                    b.failed("C4-lift", C4_LIFT, Relation::Ge, e.clone());
                }
            }
            match &cover {
                Ok(c) => {
                    let cg = c.cover.topology().genus_or_crosscap as f64;
                    b.compare("C9", C9, cg, Relation::Eq, (g + 1) as f64, 0.0, false);
                }
                Err(e) => b.failed("C9", C9, Relation::Eq, e.clone()),
            }
        }
        Err(e) => {
            for (id, d, r) in [
                ("C3", C3, Relation::Eq),
                ("C4", C4, Relation::Ge),
                ("C4-lift", C4_LIFT, Relation::Ge),
            ] {
                b.failed(id, d, r, e.to_string());
            }
        }
    }

    let bound = opts.bound.eval(g as u64 + 1) / 2.0;
    b.compare("C5", C5, sr, Relation::Le, bound, 0.0, false);

    match cap_with_hemisphere(filling, opts.cap_segments) {
        Ok(capped) => {
            let a0 = capped.surface.area().as_f64();
            let cap_area = capped.cap_area.as_f64();
            b.compare(
                "C6.add",
                C6_ADD,
                a0,
                Relation::Eq,
                area + cap_area,
                opts.area_tol,
                true,
            );
            let upper = length * length / std::f64::consts::PI;
            b.compare(
                "C6.lower",
                C6_LOWER,
                2.0 * area,
                Relation::Le,
                a0,
                opts.mesh_tol,
                in_class,
            );
            b.compare(
                "C6.upper",
                C6_UPPER,
                a0,
                Relation::Le,
                upper,
                opts.mesh_tol,
                in_class,
            );
        }
        Err(e) => {
            b.failed("C6.add", C6_ADD, Relation::Eq, e.to_string());
            b.failed("C6.lower", C6_LOWER, Relation::Le, e.to_string());
            b.failed("C6.upper", C6_UPPER, Relation::Le, e.to_string());
        }
    }

    b.compare("C7", C7, sys, Relation::Lt, length, 0.0, false);
    b.compare(
        "C8",
        C8,
        sys,
        Relation::Gt,
        cor_threshold(g, length),
        0.0,
        false,
    );

    let order = [
        "C1", "C2", "C3", "C4", "C4-lift", "C5", "C6.add", "C6.lower", "C6.upper", "C7", "C8", "C9",
    ];
    let mut claims = b.claims;
    if !claims.iter().any(|c| c.id == "C9") {
        claims.push(Claim {
            id: "C9".into(),
            description: C9.into(),
            lhs: None,
            rhs: Some((g + 1) as f64),
            relation: Relation::Eq,
            status: Status::Fail,
            tolerance: 0.0,
            required: true,
            note: "non-orientable gluing failed".into(),
        });
    }
    claims.sort_by_key(|c| order.iter().position(|&o| o == c.id));

    let meta = InstanceMeta {
        genus: g,
        length,
        area,
        sys,
        sr,
        faces: m.face_count(),
        edges: m.edge_count(),
        boundary_vertices: filling.boundary.len(),
        in_class,
        isometry_deficit: audit.max_deficit,
        isometric: audit.passes,
        s: spec.s.as_f64(),
        s_clamped: spec.clamped,
    };
    Ok(ClaimReport {
        instance: meta,
        claims,
    })
}

/// `log(g) L / (2π √g)`.
pub fn cor_threshold(genus: usize, length: f64) -> f64 {
    let g = genus as f64;
    g.ln() / (2.0 * std::f64::consts::PI * g.sqrt()) * length
}
