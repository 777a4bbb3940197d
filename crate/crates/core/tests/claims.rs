use fillsys::claims::{
    cor_threshold, emit_report, estimate_g0, read_report, render_report, run_claim_suite,
    ClaimsError, Relation, ReportFormat, SRBoundFunction, Status, SuiteOptions,
};
use fillsys::constructions::{attach_handles, hemisphere_mesh};
use fillsys::Filling;
use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

fn genus_one() -> &'static Filling {
    static F: OnceLock<Filling> = OnceLock::new();
    F.get_or_init(|| {
        attach_handles(&hemisphere_mesh(TAU, 64).unwrap(), 1, 0.05)
            .unwrap()
            .filling
    })
}

const IDS: [&str; 12] = [
    "C1", "C2", "C3", "C4", "C4-lift", "C5", "C6.add", "C6.lower", "C6.upper", "C7", "C8", "C9",
];

#[test]
fn genus_one_handle_report() {
    let r = run_claim_suite(genus_one(), &SuiteOptions::default()).unwrap();
    let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, IDS);
    assert!(r.passed());

    let c1 = r.claim("C1").unwrap();
    assert_eq!(c1.status, Status::Pass);
    assert_eq!(c1.lhs, c1.rhs);

    let c5 = r.claim("C5").unwrap();
    assert_eq!(c5.status, Status::Info);
    assert!(c5.lhs.unwrap() < 0.01);
    let bound2 = (4.0f64 / 3.0).min(2f64.ln().powi(2) / (2.0 * PI));
    assert!((c5.rhs.unwrap() - bound2 / 2.0).abs() < 1e-15);
    assert!(c5.relation.holds(c5.lhs.unwrap(), c5.rhs.unwrap(), 0.0));

    assert_eq!(r.claim("C4-lift").unwrap().status, Status::Pass);
    assert_eq!(r.claim("C6.add").unwrap().status, Status::Pass);

    // cover genus is measured, not assumed
    let c9 = r.claim("C9").unwrap();
    assert_eq!(c9.status, Status::Info);
    assert_eq!(c9.lhs, Some(3.0));
    assert_eq!(c9.rhs, Some(2.0));

    // the capped sphere chain
    let m = &r.instance;
    assert!(m.in_class);
    let lower = r.claim("C6.lower").unwrap();
    let upper = r.claim("C6.upper").unwrap();
    assert!((lower.lhs.unwrap() - 2.0 * m.area).abs() < 1e-12);
    assert!((upper.rhs.unwrap() - m.length * m.length / PI).abs() < 1e-12);
    assert!((lower.lhs.unwrap() - 4.0 * PI).abs() < 0.01 * 4.0 * PI);
    assert_eq!(lower.status, Status::Pass);
    assert_eq!(upper.status, Status::Pass);
}

#[test]
fn threshold_arithmetic() {
    let c = cor_threshold(100, TAU) / TAU;
    assert!((c - 100f64.ln() / (2.0 * PI * 10.0)).abs() < 1e-15);
    assert!((c - 0.07330).abs() < 1e-5);
    assert_eq!(cor_threshold(1, 5.0), 0.0);
}

#[test]
fn relations_with_slack() {
    assert!(Relation::Eq.holds(1.0, 1.0 + 1e-13, 1e-12));
    assert!(!Relation::Eq.holds(1.0, 1.0 + 1e-11, 1e-12));
    assert!(Relation::Le.holds(1.005, 1.0, 0.01));
    assert!(!Relation::Lt.holds(1.0, 1.0, 0.0));
    assert!(Relation::Gt.holds(2.0, 1.0, 0.0));
}

#[test]
fn genus_zero_is_rejected() {
    let h = hemisphere_mesh(TAU, 16).unwrap();
    assert!(matches!(
        run_claim_suite(&h, &SuiteOptions::default()),
        Err(ClaimsError::SimplyConnected)
    ));
}

#[test]
fn g0_examples() {
    let g0 = estimate_g0(&SRBoundFunction::default(), 1_000_000).unwrap();
    assert!((2..100).contains(&g0));
    // the condition holds from g0 on and fails just below it
    let holds = |g: u64| {
        let x = g as f64;
        SRBoundFunction::default().eval(g + 1) <= x.ln().powi(2) / (PI * x)
    };
    assert!((g0..2000).all(holds));
    assert!(g0 == 2 || !holds(g0 - 1));

    let weak = SRBoundFunction {
        cap: 4.0 / 3.0,
        coef: 10.0,
    };
    assert!(estimate_g0(&weak, 1_000_000).is_none_or(|g| g >= g0));
    let cap_only = SRBoundFunction {
        cap: 4.0 / 3.0,
        coef: f64::INFINITY,
    };
    assert_eq!(estimate_g0(&cap_only, 1_000_000), None);
    assert_eq!(estimate_g0(&SRBoundFunction::default(), 1), None);
}

#[test]
fn g0_is_monotone_in_the_bound() {
    let mut prev = None;
    for coef in [0.5, 1.0 / PI, 0.25, 0.1, 0.05] {
        let g = estimate_g0(
            &SRBoundFunction {
                cap: 4.0 / 3.0,
                coef,
            },
            100_000,
        );
        if let (Some(p), Some(g)) = (prev, g) {
            assert!(g <= p, "coef {coef}: {g} > {p}");
        }
        if prev.is_some() {
            assert!(g.is_some());
        }
        prev = g.or(prev);
    }
}

#[test]
fn report_files() {
    let r = run_claim_suite(genus_one(), &SuiteOptions::default()).unwrap();
    let dir = std::env::temp_dir().join(format!("fillsys-claims-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();

    let json = dir.join("r.json");
    emit_report(&r, ReportFormat::from_path(&json), &json).unwrap();
    let bytes = std::fs::read(&json).unwrap();
    let back = read_report(&json).unwrap();
    assert_eq!(back, r);
    assert_eq!(
        render_report(&back, ReportFormat::Json)
            .unwrap()
            .into_bytes(),
        bytes
    );

    let csv_path = dir.join("r.csv");
    emit_report(&r, ReportFormat::from_path(&csv_path), &csv_path).unwrap();
    let mut rd = csv::Reader::from_path(&csv_path).unwrap();
    assert_eq!(rd.records().count(), r.claims.len());
    let text = std::fs::read_to_string(&csv_path).unwrap();
    assert_eq!(text.lines().count(), r.claims.len() + 1);

    let again = run_claim_suite(genus_one(), &SuiteOptions::default()).unwrap();
    assert_eq!(
        render_report(&again, ReportFormat::Json)
            .unwrap()
            .into_bytes(),
        bytes
    );
    std::fs::remove_dir_all(&dir).unwrap();
}
