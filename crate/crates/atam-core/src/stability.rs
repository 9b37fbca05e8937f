use petgraph::algo::ford_fulkerson;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::geom::{Dir, Pos};
use crate::model::{Assembly, Tas, TileId};

/// Above this many tiles the minimum cut is found by max-flow instead of
/// enumerating bipartitions.
const EXHAUSTIVE_LIMIT: usize = 20;

/// Total strength with which tile `t` placed at `p` binds to `a`.
pub fn binding_strength(sys: &Tas, a: &Assembly, p: Pos, t: TileId) -> u32 {
    let tile = sys.tile(t);
    p.neighbors()
        .filter_map(|(d, q)| {
            a.get(q)
                .map(|u| sys.interaction(tile.glue(d), sys.tile(u).glue(d.opposite())))
        })
        .sum()
}

fn binding_edges(sys: &Tas, a: &Assembly) -> (Vec<Pos>, Vec<(usize, usize, u32)>) {
    let nodes: Vec<Pos> = a.positions().collect();
    let mut edges = Vec::new();
    for (i, &p) in nodes.iter().enumerate() {
        let t = sys.tile(a.get(p).expect("node in assembly"));
        for d in [Dir::E, Dir::N] {
            let q = p.step(d);
            if let Some(u) = a.get(q) {
                let w = sys.interaction(t.glue(d), sys.tile(u).glue(d.opposite()));
                if w > 0 {
                    let j = nodes.binary_search(&q).expect("neighbor is a node");
                    edges.push((i, j, w));
                }
            }
        }
    }
    (nodes, edges)
}

/// Weight of the lightest cut of the binding graph, or `None` when the
/// assembly has fewer than two tiles and no cut exists.
pub fn min_cut(sys: &Tas, a: &Assembly) -> Option<u32> {
    let (nodes, edges) = binding_edges(sys, a);
    let n = nodes.len();
    if n < 2 {
        return None;
    }
    if n <= EXHAUSTIVE_LIMIT {
        // The last node always sits on the far side, so each bipartition is
        // visited once.
        let mut best = u32::MAX;
        for mask in 1u32..(1u32 << (n - 1)) {
            let side = |i: usize| i < n - 1 && mask & (1 << i) != 0;
            let w: u32 = edges
                .iter()
                .filter(|(i, j, _)| side(*i) != side(*j))
                .map(|(_, _, w)| *w)
                .sum();
            best = best.min(w);
            if best == 0 {
                break;
            }
        }
        Some(best)
    } else {
        flow_cut(n, &edges)
    }
}

/// Minimum cut by max-flow from one node to every other, regardless of size.
pub fn min_cut_by_flow(sys: &Tas, a: &Assembly) -> Option<u32> {
    let (nodes, edges) = binding_edges(sys, a);
    if nodes.len() < 2 {
        return None;
    }
    flow_cut(nodes.len(), &edges)
}

fn flow_cut(n: usize, edges: &[(usize, usize, u32)]) -> Option<u32> {
    let mut g = DiGraph::<(), u32>::new();
    let idx: Vec<NodeIndex> = (0..n).map(|_| g.add_node(())).collect();
    for &(i, j, w) in edges {
        g.add_edge(idx[i], idx[j], w);
        g.add_edge(idx[j], idx[i], w);
    }
    (1..n).map(|t| ford_fulkerson(&g, idx[0], idx[t]).0).min()
}

/// Every cut of the binding graph weighs at least τ. A single tile is stable.
pub fn is_tau_stable(sys: &Tas, a: &Assembly) -> bool {
    match min_cut(sys, a) {
        None => !a.is_empty(),
        Some(w) => w >= sys.temperature,
    }
}
