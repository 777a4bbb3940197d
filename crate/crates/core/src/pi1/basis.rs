//! Tree–cotree decomposition and the one-vertex presentation it induces.

use std::collections::VecDeque;

use serde::Serialize;

use crate::scalar::{Ordered, Scalar};
use crate::surface::{MetricSurface, Slot};
use crate::util::UnionFind;

use super::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SurfaceKind {
    /// Surface with boundary: the fundamental group is free.
    Free,
    /// Closed and simply connected.
    Sphere,
    Torus,
    /// Closed orientable of genus at least two.
    HyperbolicOrientable,
    NonOrientable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EdgeClass {
    Tree,
    Cotree,
    Generator(usize),
}

/// Generators, relator and surface class of the one-vertex schema.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchemaPresentation {
    /// Edge carrying each generator.
    pub generator_edges: Vec<usize>,
    /// Face-fusion relator; `None` for surfaces with boundary.
    pub relator: Option<Word>,
    pub kind: SurfaceKind,
}

impl SchemaPresentation {
    pub fn generator_count(&self) -> usize {
        self.generator_edges.len()
    }
}

/// Partition of the edges into spanning tree, dual spanning cotree and
/// generators, with the word of every edge in the generators.
#[derive(Clone, Debug, Serialize)]
pub struct TreeCotree {
    pub tree: Vec<usize>,
    pub cotree: Vec<usize>,
    pub generators: Vec<usize>,
    pub edge_class: Vec<EdgeClass>,
    /// Word of each edge traversed forward, freely reduced.
    pub edge_words: Vec<Word>,
    pub presentation: SchemaPresentation,
}

/// Primal spanning tree by breadth-first search from vertex 0 (edges in id
/// order); dual spanning tree of maximum total length among the remaining
/// edges (ties by edge id), rooted at an extra outer node when the surface
/// has boundary.
pub fn tree_cotree<T: Scalar>(surface: &MetricSurface<T>) -> TreeCotree {
    let nv = surface.vertex_count();
    let nf = surface.face_count();
    let ne = surface.edge_count();
    let edges = surface.edges();
    let adjacency = surface.vertex_adjacency();

    let mut class = vec![EdgeClass::Generator(usize::MAX); ne];
    let mut seen = vec![false; nv];
    let mut tree = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        let mut inc = adjacency[v].clone();
        inc.sort_unstable();
        for (e, fwd) in inc {
            let w = if fwd { edges[e].head } else { edges[e].tail };
            if !seen[w] {
                seen[w] = true;
                class[e] = EdgeClass::Tree;
                tree.push(e);
                queue.push_back(w);
            }
        }
    }

    let bounded = edges.iter().any(|e| e.is_boundary());
    let outer = nf;
    let node_count = if bounded { nf + 1 } else { nf };
    let dual_ends = |e: usize| -> (usize, usize) {
        let edge = &edges[e];
        match edge.partner {
            Some(p) => (edge.slot.face, p.face),
            None => (edge.slot.face, outer),
        }
    };
    let mut candidates: Vec<usize> = (0..ne).filter(|&e| class[e] != EdgeClass::Tree).collect();
    candidates.sort_by_key(|&e| (std::cmp::Reverse(Ordered(edges[e].length)), e));
    let mut uf = UnionFind::new(node_count);
    let mut dual_adj: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for e in candidates {
        let (a, b) = dual_ends(e);
        if uf.union(a, b) {
            class[e] = EdgeClass::Cotree;
            dual_adj[a].push(e);
            dual_adj[b].push(e);
        }
    }

    let mut generators = Vec::new();
    let mut cotree = Vec::new();
    for e in 0..ne {
        match class[e] {
            EdgeClass::Generator(_) => {
                class[e] = EdgeClass::Generator(generators.len());
                generators.push(e);
            }
            EdgeClass::Cotree => cotree.push(e),
            EdgeClass::Tree => {}
        }
    }

    // Root the cotree and record each face's parent edge.
    let root = if bounded { outer } else { 0 };
    let mut parent_edge = vec![usize::MAX; node_count];
    let mut order = Vec::with_capacity(node_count);
    let mut visited = vec![false; node_count];
    visited[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let mut inc = dual_adj[x].clone();
        inc.sort_unstable();
        for e in inc {
            let (a, b) = dual_ends(e);
            let y = if a == x { b } else { a };
            if !visited[y] {
                visited[y] = true;
                parent_edge[y] = e;
                queue.push_back(y);
            }
        }
    }

    let mut edge_words = vec![Word::empty(); ne];
    for (k, &e) in generators.iter().enumerate() {
        edge_words[e] = Word::generator(k, true);
    }
    let slot_word = |words: &Vec<Word>, slot: Slot| -> Word {
        let w = &words[surface.slot_edge(slot)];
        if surface.slot_aligned(slot) {
            w.clone()
        } else {
            w.inverse()
        }
    };
    for &f in order.iter().rev() {
        if f == root {
            continue;
        }
        let e = parent_edge[f];
        let edge = &edges[e];
        let pslot = if edge.slot.face == f {
            edge.slot
        } else {
            edge.partner.expect("cotree edge to a face")
        };
        // Around the face: w(k) w(k+1) w(k+2) = 1.
        let k = pslot.side;
        let mut rest = slot_word(&edge_words, Slot::new(f, (k + 1) % 3));
        rest.push_word(&slot_word(&edge_words, Slot::new(f, (k + 2) % 3)));
        let wk = rest.inverse();
        edge_words[e] = if surface.slot_aligned(pslot) {
            wk
        } else {
            wk.inverse()
        };
    }

    let topo = surface.topology();
    let relator = if bounded {
        None
    } else {
        let mut r = slot_word(&edge_words, Slot::new(root, 0));
        r.push_word(&slot_word(&edge_words, Slot::new(root, 1)));
        r.push_word(&slot_word(&edge_words, Slot::new(root, 2)));
        r.cyclic_reduce();
        Some(r)
    };
    let kind = if bounded {
        SurfaceKind::Free
    } else if !topo.orientable {
        SurfaceKind::NonOrientable
    } else {
        match generators.len() {
            0 => SurfaceKind::Sphere,
            2 => SurfaceKind::Torus,
            _ => SurfaceKind::HyperbolicOrientable,
        }
    };

    TreeCotree {
        tree,
        cotree,
        generators: generators.clone(),
        edge_class: class,
        edge_words,
        presentation: SchemaPresentation {
            generator_edges: generators,
            relator,
            kind,
        },
    }
}
