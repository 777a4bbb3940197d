mod common;

use common::*;
use fillsys::constructions::samples::{doubled_triangle, torus_schema, unit_schema};
use fillsys::pi1::{double_cover, tree_cotree, Certificate, DehnReducer, SurfaceKind, Word};
use fillsys::{Engine, Loop, Slot, Surface};
use proptest::prelude::*;

/// Sides of a fanned polygon schema in boundary order, as loop steps.
fn polygon_steps(s: &Surface, n: usize) -> Vec<(usize, bool)> {
    (0..n)
        .map(|k| {
            let slot = if k == 0 {
                Slot::new(0, 2)
            } else if k == n - 1 {
                Slot::new(n - 3, 1)
            } else {
                Slot::new(k - 1, 0)
            };
            (s.slot_edge(slot), s.slot_aligned(slot))
        })
        .collect()
}

#[test]
fn tree_cotree_counts() {
    let t = tree_cotree(&torus_schema::<f64>());
    assert_eq!(
        (t.tree.len(), t.cotree.len(), t.generators.len()),
        (0, 1, 2)
    );
    assert_eq!(t.presentation.relator.as_ref().unwrap().len(), 4);
    assert_eq!(t.presentation.kind, SurfaceKind::Torus);

    let t = tree_cotree(&doubled_triangle([1.0, 1.0, 1.0]).unwrap());
    assert_eq!(t.generators.len(), 0);
    assert_eq!(t.presentation.kind, SurfaceKind::Sphere);

    let g2 = unit_schema::<f64>("abABcdCD").unwrap();
    let t = tree_cotree(&g2);
    assert_eq!(t.generators.len(), 4);
    let r = t.presentation.relator.unwrap();
    assert_eq!(r.len(), 8);
    // every generator appears exactly twice
    for k in 0..4 {
        assert_eq!(
            r.0.iter()
                .filter(|l| l.unsigned_abs() as usize == k + 1)
                .count(),
            2
        );
    }
}

#[test]
fn relator_length_is_twice_generator_count() {
    for (name, s) in corpus(21, 60) {
        let t = tree_cotree(&s);
        match &t.presentation.relator {
            Some(r) if !t.generators.is_empty() => {
                assert_eq!(r.len(), 2 * t.generators.len(), "{name}")
            }
            Some(r) => assert!(r.is_empty()),
            None => assert!(s.topology().boundary_count > 0),
        }
        let expected = (2
            - s.topology().euler_char
            - if s.topology().boundary_count > 0 {
                1
            } else {
                0
            }) as usize;
        assert_eq!(t.generators.len(), expected, "{name}");
    }
}

#[test]
fn loop_word_examples() {
    let s = torus_schema::<f64>();
    let eng = Engine::new(&s).unwrap();
    let a = s.slot_edge(Slot::new(0, 2));
    let lp = Loop::new(&s, vec![(a, true)]).unwrap();
    let w = eng.loop_word(&s, &lp).unwrap();
    assert_eq!(w.len(), 1);
    let both = lp.then(&s, &lp.reversed()).unwrap();
    assert!(eng.loop_word(&s, &both).unwrap().is_empty());

    // a loop along tree edges only has the empty word
    let t = random_torus(&mut rng(1), 3);
    let eng = Engine::new(&t).unwrap();
    let basis = eng.basis();
    let e = basis.tree[0];
    let lp = Loop::new(&t, vec![(e, true), (e, false)]).unwrap();
    assert!(eng.loop_word(&t, &lp).unwrap().is_empty());
}

#[test]
fn contractibility_examples() {
    let s = torus_schema::<f64>();
    let eng = Engine::new(&s).unwrap();
    assert!(
        eng.is_contractible(&s, &Loop::empty())
            .unwrap()
            .contractible
    );
    let a = s.slot_edge(Slot::new(0, 2));
    let c = eng
        .is_contractible(&s, &Loop::new(&s, vec![(a, true)]).unwrap())
        .unwrap();
    assert!(!c.contractible);
    match c.certificate {
        Certificate::HomologyClass(h) => {
            let mut h: Vec<i64> = h.iter().map(|x| x.abs()).collect();
            h.sort();
            assert_eq!(h, vec![0, 1]);
        }
        other => panic!("unexpected certificate {other:?}"),
    }

    let g2 = unit_schema::<f64>("abABcdCD").unwrap();
    let eng = Engine::new(&g2).unwrap();
    let rel = Loop::new(&g2, polygon_steps(&g2, 8)).unwrap();
    let c = eng.is_contractible(&g2, &rel).unwrap();
    assert!(c.contractible);
    assert_eq!(c.certificate, Certificate::ReducedWord(Word::empty()));
    // a commutator [a, b] is half the relator and not trivial
    let half = Loop::new(&g2, polygon_steps(&g2, 8)[..4].to_vec()).unwrap();
    assert!(!eng.is_contractible(&g2, &half).unwrap().contractible);
    assert!(eng.null_homologous(&g2, &half).unwrap());
}

#[test]
fn dehn_reduces_genus_two_relator() {
    let g2 = unit_schema::<f64>("abABcdCD").unwrap();
    let r = tree_cotree(&g2).presentation.relator.unwrap();
    let d = DehnReducer::new(&r).unwrap();
    assert!(d.reduce_cyclic(&r).is_empty());
    assert!(d.reduce_cyclic(&r.inverse()).is_empty());
}

#[test]
fn bounded_loops_use_free_reduction() {
    let mut r = rng(8);
    for word in ["abABc", "abAcB", "aab", "abcAd"] {
        let s = random_schema(&mut r, word);
        let eng = Engine::new(&s).unwrap();
        assert_eq!(eng.kind(), SurfaceKind::Free);
        for _ in 0..20 {
            let lp = random_loop(&mut r, &s, 0, 6);
            let mut w = eng.loop_word(&s, &lp).unwrap();
            w.cyclic_reduce();
            assert_eq!(
                eng.is_contractible(&s, &lp).unwrap().contractible,
                w.is_empty()
            );
        }
    }
}

#[test]
fn agrees_with_slow_oracle() {
    let mut r = rng(2024);
    let (mut decided, mut yes, mut no) = (0, 0, 0);
    for (name, s) in corpus(77, 60) {
        if s.face_count() > 12 {
            continue;
        }
        let eng = Engine::new(&s).unwrap();
        let basis = eng.basis();
        let n = basis.generators.len();
        for _ in 0..8 {
            let v = rand::Rng::gen_range(&mut r, 0..s.vertex_count());
            let len = rand::Rng::gen_range(&mut r, 0..7);
            let lp = random_loop(&mut r, &s, v, len);
            let w = eng.loop_word(&s, &lp).unwrap();
            let verdict = eng.is_contractible(&s, &lp).unwrap().contractible;
            if let Some(truth) = word_oracle(basis.presentation.relator.as_ref(), &w, n, 4) {
                assert_eq!(verdict, truth, "{name}: word {w}");
                decided += 1;
                if truth {
                    yes += 1;
                } else {
                    no += 1;
                }
            }
        }
    }
    // handmade words: conjugated relators are trivial
    let g2 = unit_schema::<f64>("abABcdCD").unwrap();
    let eng = Engine::new(&g2).unwrap();
    let steps = polygon_steps(&g2, 8);
    for k in 0..8 {
        let mut rot: Vec<_> = steps[k..].to_vec();
        rot.extend_from_slice(&steps[..k]);
        let lp = Loop::new(&g2, rot).unwrap();
        let w = eng.loop_word(&g2, &lp).unwrap();
        assert_eq!(
            word_oracle(eng.basis().presentation.relator.as_ref(), &w, 4, 4),
            Some(true)
        );
        assert!(eng.is_contractible(&g2, &lp).unwrap().contractible);
        decided += 1;
    }
    println!("oracle decided {decided} loops ({yes} trivial, {no} not)");
    assert!(decided >= 200);
    assert!(yes >= 20 && no >= 20);
}

#[test]
fn double_cover_examples() {
    let rp2 = unit_schema::<f64>("abab").unwrap();
    let dc = double_cover(&rp2).unwrap();
    let t = dc.cover.topology();
    assert_eq!((t.euler_char, t.orientable), (2, true));
    assert!((dc.cover.area() - 2.0 * rp2.area()).abs() < 1e-12);

    let mut r = rng(4);
    for word in ["aabb", "abaB", "aabbcc", "abcabc"] {
        let s = random_schema(&mut r, word);
        let dc = double_cover(&s).unwrap();
        let t = dc.cover.topology();
        assert!(t.orientable);
        assert_eq!(t.euler_char, 2 * s.topology().euler_char);
        assert!((dc.cover.area() - 2.0 * s.area()).abs() < 1e-12 * s.area());
    }
    assert!(double_cover(&torus_schema::<f64>()).is_err());
}

#[test]
fn lifts_close_iff_orientation_preserving() {
    let mut r = rng(31);
    let (mut open, mut closed) = (0, 0);
    for word in ["aabb", "abab", "abaB", "aabbcc"] {
        let s = random_schema(&mut r, word);
        let eng = Engine::new(&s).unwrap();
        let dc = eng.double_cover().unwrap();
        for _ in 0..25 {
            let lp = random_loop(&mut r, &s, 0, 5);
            if lp.is_empty() {
                continue;
            }
            let lift = dc.lift_loop(&s, &lp).unwrap();
            assert_eq!(lift.length, lp.length);
            if lift.closed {
                closed += 1;
                let cl = Loop::new(&dc.cover, lift.steps.clone()).unwrap();
                assert_eq!(cl.length, lp.length);
                let back = dc.project_loop(&s, &cl).unwrap();
                assert_eq!(back, lp);
            } else {
                open += 1;
                assert!(!eng.is_contractible(&s, &lp).unwrap().contractible);
                let twice = lp.then(&s, &lp).unwrap();
                let l2 = dc.lift_loop(&s, &twice).unwrap();
                assert!(l2.closed);
                assert_eq!(l2.length, twice.length);
                assert!((twice.length - 2.0 * lp.length).abs() <= 1e-12 * twice.length);
            }
        }
    }
    assert!(open > 0 && closed > 0);
}

fn arb_word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::sample::select(vec![1, -1, 2, -2, 3, -3]), 0..30).prop_map(Word)
}

proptest! {
    #![proptest_config(proptest_config(64))]

    #[test]
    fn free_reduce_is_idempotent(w in arb_word()) {
        let mut a = w.clone();
        a.free_reduce();
        let mut b = a.clone();
        b.free_reduce();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.0.windows(2).all(|p| p[0] != -p[1]));
        prop_assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn dehn_never_lengthens(w in arb_word()) {
        let d = DehnReducer::new(&Word(vec![1, 2, -1, -2, 3, 4, -3, -4])).unwrap();
        let mut a = w.clone();
        a.free_reduce();
        let n = a.len();
        d.reduce(&mut a);
        prop_assert!(a.len() <= n);
        prop_assert!(d.reduce_cyclic(&w).len() <= n);
    }

    #[test]
    fn null_homotopic_implies_null_homologous(seed in 0u64..10_000, word in 0usize..WORDS.len(), len in 0usize..10) {
        let mut r = rng(seed);
        let s = random_schema(&mut r, WORDS[word]);
        let eng = Engine::new(&s).unwrap();
        let lp = random_loop(&mut r, &s, 0, len);
        if eng.is_contractible(&s, &lp).unwrap().contractible {
            prop_assert!(eng.null_homologous(&s, &lp).unwrap());
            prop_assert!(eng.null_homologous_mod2(&s, &lp).unwrap());
        }
    }

    #[test]
    fn cover_is_pi1_injective(seed in 0u64..10_000, word in prop::sample::select(vec!["aabb", "abab", "abaB", "aabbcc", "abcabc"]), len in 1usize..10) {
        let mut r = rng(seed);
        let s = random_schema(&mut r, word);
        let base = Engine::new(&s).unwrap();
        let dc = base.double_cover().unwrap();
        let up = Engine::new(&dc.cover).unwrap();
        let v = rand::Rng::gen_range(&mut r, 0..dc.cover.vertex_count());
        let cl = random_loop(&mut r, &dc.cover, v, len);
        let down = dc.project_loop(&s, &cl).unwrap();
        prop_assert_eq!(
            up.is_contractible(&dc.cover, &cl).unwrap().contractible,
            base.is_contractible(&s, &down).unwrap().contractible
        );
    }
}
