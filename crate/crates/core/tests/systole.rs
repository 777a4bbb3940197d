mod common;

use common::*;
use fillsys::constructions::samples::{
    disk_fan, doubled_triangle, equilateral_cylinder, flat_torus, hexagonal_torus, torus_schema,
};
use fillsys::constructions::{cylinder_hemisphere_filling, hemisphere_mesh};
use fillsys::pi1::Pi1Engine;
use fillsys::systole::{
    brute_force_systole, is_isometric_filling, shortest_paths, systole, systolic_ratio,
    FillingInstance, SystoleError,
};
use fillsys::Filling;
use proptest::prelude::*;
use std::f64::consts::{PI, TAU};

#[test]
fn shortest_paths_on_grid_torus() {
    let s = flat_torus::<f64>(4).unwrap();
    // grid point (i, j) is corner 0 of face 2 (4 i + j)
    let id = |i: usize, j: usize| s.corner_vertex(2 * (i * 4 + j), 0);
    let sp = shortest_paths(&s, id(0, 0));
    assert!((sp.dist[id(2, 0)] - 0.5).abs() < 1e-15);
    assert!((sp.dist[id(0, 2)] - 0.5).abs() < 1e-15);
    // (2, 2) = (2, -2): two diagonals of length sqrt(2)/4
    assert!((sp.dist[id(2, 2)] - 0.5f64.sqrt()).abs() < 1e-15);
    let path = sp.path_to(&s, id(2, 0));
    let total: f64 = path.iter().map(|&(e, _)| s.edge(e).length).sum();
    assert!((total - 0.5).abs() < 1e-15);
}

#[test]
fn shortest_paths_on_one_triangle_and_symmetry() {
    let t = fillsys::build_surface(vec![[3.0, 4.0, 5.0]], vec![]).unwrap();
    let v0 = t.corner_vertex(0, 0);
    let v1 = t.corner_vertex(0, 1);
    assert_eq!(shortest_paths(&t, v0).dist[v1], 3.0);

    let s = random_torus(&mut rng(9), 3);
    let all: Vec<Vec<f64>> = (0..s.vertex_count())
        .map(|v| shortest_paths(&s, v).dist)
        .collect();
    for u in 0..s.vertex_count() {
        for v in 0..s.vertex_count() {
            assert_eq!(all[u][v], all[v][u]);
        }
    }
}

#[test]
fn flat_torus_golden_value() {
    let s = flat_torus::<f64>(8).unwrap();
    let r = systole(&s).unwrap();
    assert!((r.length - 1.0).abs() < 1e-9);
    assert!((systolic_ratio(&s).unwrap() - 1.0).abs() < 1e-9);
    let small = flat_torus::<f64>(3).unwrap();
    let fast = systole(&small).unwrap();
    let slow = brute_force_systole(&small, 1.5).unwrap();
    assert_eq!(fast.length, slow.length);
    assert!((fast.length - 1.0).abs() < 1e-12);
}

#[test]
fn simply_connected_surfaces_have_no_systole() {
    let d = doubled_triangle([1.0, 1.0, 1.0]).unwrap();
    assert!(matches!(systole(&d), Err(SystoleError::SimplyConnected)));
}

#[test]
fn cylinder_core_cycle() {
    let c = equilateral_cylinder::<f64>(3).unwrap();
    let r = systole(&c).unwrap();
    assert!((r.length - 3.0).abs() < 1e-12);
    assert_eq!(brute_force_systole(&c, 4.0).unwrap().length, r.length);
}

#[test]
fn brute_force_examples() {
    let t = torus_schema::<f64>();
    let fast = systole(&t).unwrap();
    assert_eq!(brute_force_systole(&t, 2.0).unwrap().length, fast.length);
    assert!(matches!(
        brute_force_systole(&t, 0.1),
        Err(SystoleError::CapTooSmall { .. })
    ));
    let big = flat_torus::<f64>(8).unwrap();
    assert!(matches!(
        brute_force_systole(&big, 1.0),
        Err(SystoleError::TooLarge { .. })
    ));
}

#[test]
fn hexagonal_torus_ratio() {
    // equilateral lattice: sys = 1, area = sqrt(3)/2
    let target = 2.0 / 3f64.sqrt();
    for n in [3, 6] {
        let sr = systolic_ratio(&hexagonal_torus::<f64>(n).unwrap()).unwrap();
        assert!((sr - target).abs() < 0.02 * target, "n = {n}: {sr}");
    }
}

#[test]
fn systole_loop_is_certified() {
    for (name, s) in corpus(55, 30) {
        let eng = Pi1Engine::new(&s).unwrap();
        if eng.simply_connected() {
            continue;
        }
        let r = systole(&s).unwrap();
        let c = eng.is_contractible(&s, &r.edge_loop).unwrap();
        assert!(!c.contractible, "{name}");
        let sum: f64 = r
            .edge_loop
            .steps
            .iter()
            .map(|&(e, _)| s.edge(e).length)
            .sum();
        assert!((sum - r.length).abs() <= 1e-12 * r.length);
    }
}

#[test]
fn randomized_equivalence_with_brute_force() {
    let mut checked = 0;
    for (name, s) in corpus(1234, 120) {
        assert!(s.edge_count() <= 40, "{name}");
        let fast = match systole(&s) {
            Ok(r) => r,
            Err(SystoleError::SimplyConnected) => continue,
            Err(e) => panic!("{name}: {e}"),
        };
        let slow = brute_force_systole(&s, fast.length * (1.0 + 1e-9)).unwrap();
        assert_eq!(fast.length, slow.length, "{name}");
        checked += 1;
    }
    assert!(checked >= 100);
}

#[test]
fn filling_systole_is_at_most_boundary_length() {
    let mut r = rng(17);
    for _ in 0..20 {
        let f: Filling = FillingInstance::new(random_schema(&mut r, "abABc")).unwrap();
        assert_eq!(f.genus, 1);
        let sys = systole(&f.surface).unwrap().length;
        assert!(sys > 0.0 && sys <= f.length());
    }
}

#[test]
fn audit_examples() {
    let h = hemisphere_mesh::<f64>(TAU, 64).unwrap();
    let a = is_isometric_filling(&h, 0.02 * h.length());
    assert!(a.passes, "{a:?}");

    let fan = FillingInstance::new(disk_fan::<f64>(64, TAU).unwrap()).unwrap();
    let a = is_isometric_filling(&fan, 0.02 * fan.length());
    assert!(!a.passes);
    assert!((a.max_deficit - (PI - 2.0)).abs() < 0.01, "{a:?}");
    assert!((a.worst_pair.0 - a.worst_pair.1).abs() - PI < 0.1);

    let c = cylinder_hemisphere_filling::<f64>(TAU, 0.5, 64).unwrap();
    assert!(is_isometric_filling(&c, 0.02 * c.length()).passes);
}

#[test]
fn single_precision() {
    let s = flat_torus::<f32>(4).unwrap();
    let r = systole(&s).unwrap();
    assert!((r.length - 1.0).abs() < 1e-5);
    assert!((systolic_ratio(&s).unwrap() - 1.0).abs() < 1e-5);
}

proptest! {
    #![proptest_config(proptest_config(24))]

    #[test]
    fn scaling_laws(seed in 0u64..10_000, word in 0usize..WORDS.len(), lambda in prop::sample::select(vec![0.5, 2.0])) {
        let s = random_schema(&mut rng(seed), WORDS[word]);
        let t = s.scaled(lambda);
        match (systole(&s), systole(&t)) {
            (Ok(a), Ok(b)) => {
                prop_assert_eq!(b.length, lambda * a.length);
                let (ra, rb) = (a.length * a.length / s.area(), b.length * b.length / t.area());
                prop_assert!((ra - rb).abs() <= 1e-12 * ra);
            }
            (Err(SystoleError::SimplyConnected), Err(SystoleError::SimplyConnected)) => {}
            other => prop_assert!(false, "{:?}", other),
        }
        prop_assert!((t.area() - lambda * lambda * s.area()).abs() <= 1e-12 * t.area());
    }

    #[test]
    fn cover_systole_dominates(seed in 0u64..10_000, word in prop::sample::select(vec!["aabb", "abaB", "aabbcc"])) {
        let s = random_schema(&mut rng(seed), word);
        let eng = Pi1Engine::new(&s).unwrap();
        let dc = eng.double_cover().unwrap();
        let base = systole(&s).unwrap().length;
        let up = systole(&dc.cover).unwrap().length;
        prop_assert!(up >= base);
    }
}
