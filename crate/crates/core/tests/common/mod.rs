//! Shared fixtures and slow oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use fillsys::constructions::{from_indexed, samples::polygon_schema};
use fillsys::pi1::{step_head, Word};
use fillsys::{Loop, Surface};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Schemata used by the randomized suites: closed orientable, closed
/// non-orientable and bounded.
pub const WORDS: &[&str] = &[
    "abAB", "abABcdCD", "abcABC", "aabb", "abab", "abaB", "aabbcc", "abcabc", "abABc", "abAcB",
    "aab", "abcAd",
];

/// Lengths in `[1, 1.5]` always satisfy the strict triangle inequality.
pub fn random_len(rng: &mut TestRng) -> f64 {
    rng.gen_range(1.0..1.5)
}

pub fn random_schema(rng: &mut TestRng, word: &str) -> Surface {
    let letters: std::collections::BTreeSet<char> =
        word.chars().map(|c| c.to_ascii_lowercase()).collect();
    let ls: Vec<f64> = (0..letters.len()).map(|_| random_len(rng)).collect();
    let ds: Vec<f64> = (0..word.len() - 3).map(|_| random_len(rng)).collect();
    polygon_schema(word, &ls, &ds).unwrap()
}

/// `n × n` torus grid with independent random edge lengths.
pub fn random_torus(rng: &mut TestRng, n: usize) -> Surface {
    let id = |i: usize, j: usize| (i % n) * n + (j % n);
    let mut tris = Vec::new();
    for i in 0..n {
        for j in 0..n {
            tris.push([id(i, j), id(i + 1, j), id(i, j + 1)]);
            tris.push([id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    indexed_random(rng, &tris)
}

/// Annulus of `2k` triangles with random lengths.
pub fn random_cylinder(rng: &mut TestRng, k: usize) -> Surface {
    let mut tris = Vec::new();
    for i in 0..k {
        let (b0, b1) = (i, (i + 1) % k);
        let (t0, t1) = (k + i, k + (i + 1) % k);
        tris.push([b0, b1, t0]);
        tris.push([b1, t1, t0]);
    }
    indexed_random(rng, &tris)
}

/// Five-vertex Möbius band with random lengths.
pub fn random_moebius(rng: &mut TestRng) -> Surface {
    let tris = [[0, 1, 2], [1, 2, 3], [2, 3, 4], [3, 4, 0], [4, 0, 1]];
    indexed_random(rng, &tris)
}

fn indexed_random(rng: &mut TestRng, tris: &[[usize; 3]]) -> Surface {
    let mut lens: BTreeMap<(usize, usize), f64> = BTreeMap::new();
    from_indexed(tris, |a, b| {
        *lens
            .entry((a.min(b), a.max(b)))
            .or_insert_with(|| random_len(rng))
    })
    .unwrap()
}

/// The randomized corpus: every surface has at most 40 edges.
pub fn corpus(seed: u64, count: usize) -> Vec<(String, Surface)> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| match i % 5 {
            0 => ("torus3".to_string(), random_torus(&mut r, 3)),
            1 | 2 => {
                let w = WORDS[r.gen_range(0..WORDS.len())];
                (w.to_string(), random_schema(&mut r, w))
            }
            3 => {
                let k = r.gen_range(3..6);
                (format!("cylinder{k}"), random_cylinder(&mut r, k))
            }
            _ => ("moebius".to_string(), random_moebius(&mut r)),
        })
        .collect()
}

/// Random closed walk from `start`: a random walk of `len` steps closed up
/// by a shortest-hop path back.
pub fn random_loop(rng: &mut TestRng, s: &Surface, start: usize, len: usize) -> Loop {
    let adj = s.vertex_adjacency();
    let mut steps = Vec::new();
    let mut at = start;
    for _ in 0..len {
        let st = adj[at][rng.gen_range(0..adj[at].len())];
        steps.push(st);
        at = step_head(s, st);
    }
    steps.extend(hop_path(s, &adj, at, start));
    if steps.is_empty() {
        return Loop::empty();
    }
    Loop::new(s, steps).unwrap()
}

fn hop_path(s: &Surface, adj: &[Vec<(usize, bool)>], from: usize, to: usize) -> Vec<(usize, bool)> {
    let mut prev: Vec<Option<(usize, (usize, bool))>> = vec![None; s.vertex_count()];
    let mut seen = vec![false; s.vertex_count()];
    seen[from] = true;
    let mut q = VecDeque::from([from]);
    while let Some(v) = q.pop_front() {
        for &st in &adj[v] {
            let w = step_head(s, st);
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, st));
                q.push_back(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut v = to;
    while v != from {
        let (p, st) = prev[v].expect("connected surface");
        path.push(st);
        v = p;
    }
    path.reverse();
    path
}

fn free_reduce(w: &[i32]) -> Vec<i32> {
    let mut out: Vec<i32> = Vec::new();
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Slow word-problem oracle for a one-relator presentation.
///
/// `Some(true)`: a breadth-first search over relator substitutions (any
/// subword of a cyclic rotation of `r^{±1}` replaced by the inverse of the
/// rest), bounded by `extra` letters of growth, reaches the empty word.
/// `Some(false)`: the abelianised class is not an integer multiple of the
/// relator's, so the word is not even null-homologous.
/// `None`: undecided within the budget.
pub fn word_oracle(
    relator: Option<&Word>,
    word: &Word,
    generators: usize,
    extra: usize,
) -> Option<bool> {
    let start = free_reduce(&word.0);
    if start.is_empty() {
        return Some(true);
    }
    let Some(r) = relator else {
        return Some(false);
    };
    let mut h = vec![0i64; generators];
    let mut rel = vec![0i64; generators];
    for &l in &start {
        h[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    for &l in &r.0 {
        rel[l.unsigned_abs() as usize - 1] += l.signum() as i64;
    }
    let multiple = match rel.iter().position(|&x| x != 0) {
        None => h.iter().all(|&x| x == 0),
        Some(p) => {
            h[p] % rel[p] == 0 && h.iter().zip(&rel).all(|(&a, &b)| a == (h[p] / rel[p]) * b)
        }
    };
    if !multiple {
        return Some(false);
    }
    let n = r.0.len();
    let mut rotations = Vec::new();
    for base in [
        r.0.clone(),
        r.0.iter().rev().map(|&l| -l).collect::<Vec<_>>(),
    ] {
        for i in 0..n {
            rotations.push((0..n).map(|j| base[(i + j) % n]).collect::<Vec<i32>>());
        }
    }
    let cap = start.len() + extra;
    let mut seen: HashSet<Vec<i32>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        if seen.len() > 200_000 {
            return None;
        }
        for i in 0..=w.len() {
            for rot in &rotations {
                for k in 0..=n {
                    if i + k > w.len() || w[i..i + k] != rot[..k] {
                        break;
                    }
                    let mut next = w[..i].to_vec();
                    next.extend(rot[k..].iter().rev().map(|&l| -l));
                    next.extend_from_slice(&w[i + k..]);
                    let next = free_reduce(&next);
                    if next.is_empty() {
                        return Some(true);
                    }
                    if next.len() <= cap && seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
    }
    None
}

/// Orientability by explicit sign propagation over the face pairings.
pub fn orientable_by_propagation(s: &Surface) -> bool {
    let nf = s.face_count();
    let mut sign: Vec<Option<bool>> = vec![None; nf];
    for root in 0..nf {
        if sign[root].is_some() {
            continue;
        }
        sign[root] = Some(true);
        let mut stack = vec![root];
        while let Some(f) = stack.pop() {
            for side in 0..3 {
                if let Some((q, twisted)) = s.partner(fillsys::Slot::new(f, side)) {
                    // untwisted gluing: neighbours agree; twisted: they disagree
                    let want = sign[f].unwrap() != twisted;
                    match sign[q.face] {
                        None => {
                            sign[q.face] = Some(want);
                            stack.push(q.face);
                        }
                        Some(x) if x != want => return false,
                        _ => {}
                    }
                }
            }
        }
    }
    true
}

pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
