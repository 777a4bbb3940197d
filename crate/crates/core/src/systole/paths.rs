use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::scalar::{Ordered, Scalar};
use crate::surface::MetricSurface;

/// Single-source shortest paths on the vertex–edge graph.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortestPaths<T> {
    pub source: usize,
    /// Graph distance, or infinity when unreached (or beyond the limit).
    pub dist: Vec<T>,
    /// Step `(edge, forward)` by which the tree reaches each vertex.
    pub parent: Vec<Option<(usize, bool)>>,
    /// Reached vertices in order of settlement; parents come first.
    pub order: Vec<usize>,
}

impl<T: Scalar> ShortestPaths<T> {
    /// Steps of the tree path from the source to `v`.
    pub fn path_to(&self, surface: &MetricSurface<T>, mut v: usize) -> Vec<(usize, bool)> {
        let mut steps = Vec::new();
        while let Some((e, fwd)) = self.parent[v] {
            steps.push((e, fwd));
            let edge = surface.edge(e);
            v = if fwd { edge.tail } else { edge.head };
        }
        steps.reverse();
        steps
    }
}

/// Dijkstra from `source`. Ties are broken by (distance, vertex id) for the
/// settling order and by the smaller edge id for the parent.
pub fn shortest_paths<T: Scalar>(surface: &MetricSurface<T>, source: usize) -> ShortestPaths<T> {
    shortest_paths_within(surface, source, T::infinity())
}

/// Dijkstra that does not settle vertices farther than `limit`.
pub fn shortest_paths_within<T: Scalar>(
    surface: &MetricSurface<T>,
    source: usize,
    limit: T,
) -> ShortestPaths<T> {
    let adjacency = surface.vertex_adjacency();
    shortest_paths_adj(surface, &adjacency, source, limit)
}

pub(crate) fn shortest_paths_adj<T: Scalar>(
    surface: &MetricSurface<T>,
    adjacency: &[Vec<(usize, bool)>],
    source: usize,
    limit: T,
) -> ShortestPaths<T> {
    let nv = surface.vertex_count();
    let mut dist = vec![T::infinity(); nv];
    let mut parent: Vec<Option<(usize, bool)>> = vec![None; nv];
    let mut done = vec![false; nv];
    let mut order = Vec::new();
    let mut heap = BinaryHeap::new();
    dist[source] = T::zero();
    heap.push(Reverse((Ordered(T::zero()), source)));
    while let Some(Reverse((Ordered(d), v))) = heap.pop() {
        if done[v] || d > dist[v] {
            continue;
        }
        if d > limit {
            break;
        }
        done[v] = true;
        order.push(v);
        for &(e, fwd) in &adjacency[v] {
            let edge = surface.edge(e);
            let w = if fwd { edge.head } else { edge.tail };
            if done[w] {
                continue;
            }
            let nd = d + edge.length;
            let better = nd < dist[w] || (nd == dist[w] && parent[w].is_none_or(|(pe, _)| e < pe));
            if better {
                if nd < dist[w] {
                    heap.push(Reverse((Ordered(nd), w)));
                }
                dist[w] = nd;
                parent[w] = Some((e, fwd));
            }
        }
    }
    for v in 0..nv {
        if !done[v] {
            dist[v] = T::infinity();
            parent[v] = None;
        }
    }
    ShortestPaths {
        source,
        dist,
        parent,
        order,
    }
}
