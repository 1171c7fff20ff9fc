//! Breadth-first distances on the complex itself, independent of any PIP.

use std::collections::VecDeque;

use super::{GeodesicError, Metric};
use crate::complex::{CubeComplex, VertexId};

/// Precomputed adjacency for both metrics: the 1-skeleton for ℓ1, and for
/// ℓ∞ the graph joining any two distinct vertices of a common cube.
#[derive(Clone, Debug)]
pub struct Oracle {
    skeleton: Vec<Vec<VertexId>>,
    diagonal: Vec<Vec<VertexId>>,
    names: Vec<String>,
}

impl Oracle {
    pub fn new(x: &CubeComplex) -> Self {
        let n = x.vertex_count();
        let skeleton: Vec<Vec<VertexId>> = (0..n).map(|v| x.neighbours(v).collect()).collect();
        let mut diagonal: Vec<Vec<VertexId>> = skeleton.clone();
        for cube in x.maximal_cubes() {
            let corners = x.cube_corners(cube);
            for (i, &a) in corners.iter().enumerate() {
                for &b in &corners[i + 1..] {
                    diagonal[a].push(b);
                    diagonal[b].push(a);
                }
            }
        }
        for adj in &mut diagonal {
            adj.sort_unstable();
            adj.dedup();
        }
        Oracle {
            skeleton,
            diagonal,
            names: x.vertex_names().to_vec(),
        }
    }

    /// Distances from `source` to every vertex, `None` where unreachable.
    pub fn distances_from(&self, source: VertexId, metric: Metric) -> Vec<Option<u32>> {
        let adj = match metric {
            Metric::L1 => &self.skeleton,
            Metric::Linf => &self.diagonal,
        };
        let mut dist = vec![None; adj.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued");
            for &w in &adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: VertexId, w: VertexId, metric: Metric) -> Result<u32, GeodesicError> {
        self.distances_from(u, metric)[w]
            .ok_or_else(|| GeodesicError::Disconnected(self.names[u].clone(), self.names[w].clone()))
    }
}

pub fn oracle_l1(x: &CubeComplex, u: VertexId, w: VertexId) -> Result<u32, GeodesicError> {
    Oracle::new(x).distance(u, w, Metric::L1)
}

pub fn oracle_linf(x: &CubeComplex, u: VertexId, w: VertexId) -> Result<u32, GeodesicError> {
    Oracle::new(x).distance(u, w, Metric::Linf)
}
