use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::pi1::{Contractibility, EdgeLoop, PathState, Pi1Engine};
use crate::scalar::{canonical_sum, Scalar};
use crate::surface::MetricSurface;

use super::paths::{shortest_paths_adj, ShortestPaths};
use super::SystoleError;

/// A shortest non-contractible edge loop.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SystoleResult<T> {
    #[serde(rename = "loop")]
    pub edge_loop: EdgeLoop<T>,
    pub length: T,
    pub base_vertex: usize,
    pub certificate: Contractibility,
}

/// Relative slack used when comparing approximate candidate lengths, so that
/// candidates equal up to rounding are never pruned.
const SLACK: f64 = 1e-9;

struct Best {
    bits: AtomicU64,
}

impl Best {
    fn new() -> Self {
        Best {
            bits: AtomicU64::new(f64::INFINITY.to_bits()),
        }
    }
    fn get(&self) -> f64 {
        f64::from_bits(self.bits.load(Ordering::Relaxed))
    }
    fn offer(&self, x: f64) {
        let mut cur = self.bits.load(Ordering::Relaxed);
        while x < f64::from_bits(cur) {
            match self.bits.compare_exchange_weak(
                cur,
                x.to_bits(),
                Ordering::Relaxed,
                Ordering::Relaxed,
            ) {
                Ok(_) => break,
                Err(c) => cur = c,
            }
        }
    }
}

/// Shortest non-contractible edge loop.
///
/// For every base vertex `v` the candidates are the loops
/// `path(v, u) · e · path(w, v)` along a shortest-path tree of `v`, over the
/// edges `e = (u, w)` outside the tree; some candidate at the base vertex of
/// a systole is non-contractible and no longer than it. Base vertices are
/// searched in parallel; the shared bound only prunes candidates that are
/// strictly too long, and the winner is the minimum of (length, base vertex,
/// edge id), so the result does not depend on scheduling.
pub fn systole<T: Scalar>(surface: &MetricSurface<T>) -> Result<SystoleResult<T>, SystoleError> {
    let engine = Pi1Engine::new(surface)?;
    systole_with(surface, &engine)
}

pub fn systole_with<T: Scalar>(
    surface: &MetricSurface<T>,
    engine: &Pi1Engine<T>,
) -> Result<SystoleResult<T>, SystoleError> {
    if engine.simply_connected() {
        return Err(SystoleError::SimplyConnected);
    }
    let adjacency = surface.vertex_adjacency();
    let best = Best::new();
    let nv = surface.vertex_count();
    let first = search_from(surface, engine, &adjacency, 0, &best);
    let rest: Vec<Option<Candidate<T>>> = (1..nv)
        .into_par_iter()
        .map(|v| search_from(surface, engine, &adjacency, v, &best))
        .collect();
    let winner = std::iter::once(first)
        .chain(rest)
        .flatten()
        .min_by(|a, b| a.key().partial_cmp(&b.key()).expect("finite lengths"))
        .ok_or(SystoleError::SimplyConnected)?;
    let edge_loop = EdgeLoop::new(surface, winner.steps)?;
    Ok(SystoleResult {
        length: edge_loop.length,
        edge_loop,
        base_vertex: winner.base,
        certificate: winner.certificate,
    })
}

struct Candidate<T> {
    length: T,
    base: usize,
    edge: usize,
    steps: Vec<(usize, bool)>,
    certificate: Contractibility,
}

impl<T: Scalar> Candidate<T> {
    fn key(&self) -> (T, usize, usize) {
        (self.length, self.base, self.edge)
    }
}

fn search_from<T: Scalar>(
    surface: &MetricSurface<T>,
    engine: &Pi1Engine<T>,
    adjacency: &[Vec<(usize, bool)>],
    v: usize,
    best: &Best,
) -> Option<Candidate<T>> {
    let bound = best.get() * (1.0 + SLACK);
    let limit = if bound.is_finite() {
        T::cst(bound)
    } else {
        T::infinity()
    };
    let sp = shortest_paths_adj(surface, adjacency, v, limit);
    let mut states: Vec<Option<PathState>> = vec![None; surface.vertex_count()];
    states[v] = Some(engine.start(v));
    for &x in sp.order.iter().skip(1) {
        let (e, fwd) = sp.parent[x].expect("settled vertex has a parent");
        let edge = surface.edge(e);
        let from = if fwd { edge.tail } else { edge.head };
        let st = engine.step(
            states[from].as_ref().expect("parent settled first"),
            (e, fwd),
        );
        states[x] = Some(st);
    }

    let mut in_tree = vec![false; surface.edge_count()];
    for p in sp.parent.iter().flatten() {
        in_tree[p.0] = true;
    }
    let mut candidates: Vec<(T, usize)> = surface
        .edges()
        .iter()
        .enumerate()
        .filter(|&(e, _)| !in_tree[e])
        .filter_map(|(e, edge)| {
            let approx = sp.dist[edge.tail] + edge.length + sp.dist[edge.head];
            (approx.is_finite() && approx.as_f64() <= bound).then_some((approx, e))
        })
        .collect();
    candidates.sort_by(|a, b| a.partial_cmp(b).expect("finite lengths"));

    let mut found: Option<Candidate<T>> = None;
    for (approx, e) in candidates {
        if let Some(f) = &found {
            if approx.as_f64() > f.length.as_f64() * (1.0 + SLACK) {
                break;
            }
        }
        if approx.as_f64() > best.get() * (1.0 + SLACK) {
            break;
        }
        let edge = surface.edge(e);
        let su = states[edge.tail].as_ref().expect("reached");
        let sw = states[edge.head].as_ref().expect("reached");
        let verdict = engine.decide_pair(&engine.step(su, (e, true)), sw);
        if verdict.contractible {
            continue;
        }
        let steps = candidate_steps(surface, &sp, e);
        let length = canonical_sum(steps.iter().map(|&(x, _)| surface.edge(x).length));
        let better = found
            .as_ref()
            .is_none_or(|f| (length, e) < (f.length, f.edge));
        if better {
            best.offer(length.as_f64());
            found = Some(Candidate {
                length,
                base: v,
                edge: e,
                steps,
                certificate: verdict,
            });
        }
    }
    found
}

fn candidate_steps<T: Scalar>(
    surface: &MetricSurface<T>,
    sp: &ShortestPaths<T>,
    e: usize,
) -> Vec<(usize, bool)> {
    let edge = surface.edge(e);
    let mut steps = sp.path_to(surface, edge.tail);
    steps.push((e, true));
    let back = sp.path_to(surface, edge.head);
    steps.extend(back.iter().rev().map(|&(x, f)| (x, !f)));
    steps
}

/// Exhaustive oracle: every closed walk without immediate backtracking and
/// of length at most `cap`, started at its smallest vertex.
pub fn brute_force_systole<T: Scalar>(
    surface: &MetricSurface<T>,
    cap: T,
) -> Result<SystoleResult<T>, SystoleError> {
    const MAX_EDGES: usize = 60;
    if surface.edge_count() > MAX_EDGES {
        return Err(SystoleError::TooLarge {
            edges: surface.edge_count(),
            max: MAX_EDGES,
        });
    }
    let engine = Pi1Engine::new(surface)?;
    let adjacency = surface.vertex_adjacency();
    let mut best: Option<(T, usize, Vec<(usize, bool)>, Contractibility)> = None;
    for v in 0..surface.vertex_count() {
        let sp = shortest_paths_adj(surface, &adjacency, v, T::infinity());
        let mut walk = Walk {
            surface,
            engine: &engine,
            adjacency: &adjacency,
            dist: &sp.dist,
            base: v,
            cap,
            steps: Vec::new(),
            lengths: Vec::new(),
            best: &mut best,
        };
        walk.extend(v, T::zero(), engine.start(v));
    }
    let (_, base, steps, certificate) =
        best.ok_or(SystoleError::CapTooSmall { cap: cap.as_f64() })?;
    let edge_loop = EdgeLoop::new(surface, steps)?;
    Ok(SystoleResult {
        length: edge_loop.length,
        edge_loop,
        base_vertex: base,
        certificate,
    })
}

type BruteBest<T> = Option<(T, usize, Vec<(usize, bool)>, Contractibility)>;

struct Walk<'a, T> {
    surface: &'a MetricSurface<T>,
    engine: &'a Pi1Engine<T>,
    adjacency: &'a [Vec<(usize, bool)>],
    dist: &'a [T],
    base: usize,
    cap: T,
    steps: Vec<(usize, bool)>,
    lengths: Vec<T>,
    best: &'a mut BruteBest<T>,
}

impl<T: Scalar> Walk<'_, T> {
    fn extend(&mut self, at: usize, len: T, state: PathState) {
        let start = self.engine.start(self.base);
        for &(e, fwd) in &self.adjacency[at] {
            if let Some(&(le, lf)) = self.steps.last() {
                if le == e && lf != fwd {
                    continue;
                }
            }
            let edge = self.surface.edge(e);
            let w = if fwd { edge.head } else { edge.tail };
            if w < self.base {
                continue;
            }
            let nl = len + edge.length;
            if nl + self.dist[w] > self.cap {
                continue;
            }
            let next = self.engine.step(&state, (e, fwd));
            self.steps.push((e, fwd));
            self.lengths.push(edge.length);
            if w == self.base {
                let verdict = self.engine.decide_pair(&next, &start);
                if !verdict.contractible {
                    let exact = canonical_sum(self.lengths.iter().copied());
                    let better = self.best.as_ref().is_none_or(|b| exact < b.0);
                    if better {
                        *self.best = Some((exact, self.base, self.steps.clone(), verdict));
                    }
                }
            }
            self.extend(w, nl, next);
            self.steps.pop();
            self.lengths.pop();
        }
    }
}
