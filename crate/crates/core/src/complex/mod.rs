//! Finite cubical complexes with labelled edges.
//!
//! Edges carry labels, distinct among the edges at any one vertex, so that a
//! vertex and a set of labels name at most one cube: the cube `(v, S)` has as
//! corners the vertices reached from `v` by following the labels of each
//! subset of `S`. Opposite edges of every cube carry the same label.
//!
//! Only maximal cubes of dimension at least two are stored; faces are
//! computed on demand through a per-vertex corner index.

mod build;
mod certify;
mod hyperplane;
mod link;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use build::{from_pip, realize, Realization};
pub use certify::{extract_pip, is_cat0, Certificate, Extraction, Refutation, Verdict};
pub use hyperplane::{hyperplanes, Hyperplane, HyperplaneSystem};
pub use link::{link, LinkComplex};

use crate::pip::PipError;

pub type VertexId = usize;
pub type LabelId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has no vertices")]
    Empty,
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge `{0}`–`{1}` is a loop or a repeated edge")]
    NotSimple(String, String),
    #[error("vertex `{vertex}` has two edges labelled `{label}`")]
    AmbiguousLabel { vertex: String, label: String },
    #[error("vertex `{0}` is not reachable from `{1}`")]
    Disconnected(String, String),
    #[error("cube at `{base}` with labels {labels:?} is not present in the 1-skeleton")]
    InvalidCube { base: String, labels: Vec<String> },
    #[error(transparent)]
    Pip(#[from] PipError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub ends: (VertexId, VertexId),
    pub label: LabelId,
}

/// A maximal cube: corners reachable from `base` along subsets of `labels`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cube {
    /// Smallest corner index.
    pub base: VertexId,
    /// Sorted label ids.
    pub labels: Vec<LabelId>,
}

impl Cube {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

#[derive(Clone, Debug)]
pub struct CubeComplex {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    label_names: Vec<String>,
    label_index: HashMap<String, LabelId>,
    edges: Vec<Edge>,
    /// Per vertex: `(label, edge, neighbour)` sorted by label.
    incident: Vec<Vec<(LabelId, EdgeId, VertexId)>>,
    cubes: Vec<Cube>,
    /// Per vertex: ids of the maximal cubes having it as a corner.
    corner_cubes: Vec<Vec<usize>>,
    root: Option<VertexId>,
}

impl CubeComplex {
    /// Assembles a complex, checking that the 1-skeleton is simple and
    /// connected, labels are unambiguous at every vertex, and every listed
    /// cube is present. Listed cubes may be faces of one another; only the
    /// maximal ones are kept.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<(VertexId, VertexId, String)>,
        cubes: Vec<(VertexId, Vec<String>)>,
        root: Option<VertexId>,
    ) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(ComplexError::DuplicateVertex(v.clone()));
            }
        }
        let n = vertices.len();
        if let Some(r) = root {
            assert!(r < n, "root index out of range");
        }
        let mut label_names = Vec::new();
        let mut label_index = HashMap::new();
        let mut intern = |label: String| -> LabelId {
            *label_index.entry(label.clone()).or_insert_with(|| {
                label_names.push(label);
                label_names.len() - 1
            })
        };

        let mut seen_pairs = HashSet::with_capacity(edges.len());
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut incident = vec![Vec::new(); n];
        for (a, b, label) in edges {
            assert!(a < n && b < n, "edge endpoint out of range");
            if a == b || !seen_pairs.insert((a.min(b), a.max(b))) {
                return Err(ComplexError::NotSimple(vertices[a].clone(), vertices[b].clone()));
            }
            let label = intern(label);
            let id = edge_list.len();
            edge_list.push(Edge { ends: (a, b), label });
            incident[a].push((label, id, b));
            incident[b].push((label, id, a));
        }
        for (v, inc) in incident.iter_mut().enumerate() {
            inc.sort_unstable();
            if let Some(w) = inc.windows(2).find(|w| w[0].0 == w[1].0) {
                return Err(ComplexError::AmbiguousLabel {
                    vertex: vertices[v].clone(),
                    label: label_names[w[0].0].clone(),
                });
            }
        }

        let mut complex = CubeComplex {
            vertex_names: vertices,
            vertex_index,
            label_names,
            label_index,
            edges: edge_list,
            incident,
            cubes: Vec::new(),
            corner_cubes: vec![Vec::new(); n],
            root,
        };

        let start = root.unwrap_or(0);
        let dist = complex.bfs_distances(start);
        if let Some(v) = dist.iter().position(|d| d.is_none()) {
            return Err(ComplexError::Disconnected(
                complex.vertex_names[v].clone(),
                complex.vertex_names[start].clone(),
            ));
        }

        let mut checked = Vec::with_capacity(cubes.len());
        for (base, labels) in cubes {
            if labels.len() < 2 {
                continue;
            }
            let invalid = || ComplexError::InvalidCube {
                base: complex.vertex_names[base].clone(),
                labels: labels.clone(),
            };
            let mut ids = Vec::with_capacity(labels.len());
            for l in &labels {
                ids.push(*complex.label_index.get(l).ok_or_else(invalid)?);
            }
            ids.sort_unstable();
            ids.dedup();
            if ids.len() != labels.len() {
                return Err(invalid());
            }
            let corners = complex.corner_table(base, &ids).ok_or_else(invalid)?;
            let min = *corners.iter().min().expect("non-empty");
            checked.push((
                Cube {
                    base: min,
                    labels: ids,
                },
                corners,
            ));
        }
        complex.install_cubes(checked);
        Ok(complex)
    }

    /// Keeps the maximal cubes among `cubes` and indexes their corners.
    fn install_cubes(&mut self, mut cubes: Vec<(Cube, Vec<VertexId>)>) {
        cubes.sort_by(|a, b| b.0.dim().cmp(&a.0.dim()).then_with(|| a.0.base.cmp(&b.0.base)));
        let mut seen = HashSet::new();
        for (cube, corners) in cubes {
            if !seen.insert(cube.clone()) {
                continue;
            }
            // Larger cubes come first, so any cube containing this one is installed.
            let covered = self.corner_cubes[cube.base]
                .iter()
                .any(|&c| is_sorted_subset(&cube.labels, &self.cubes[c].labels));
            if covered {
                continue;
            }
            let id = self.cubes.len();
            for &v in &corners {
                self.corner_cubes[v].push(id);
            }
            self.cubes.push(cube);
        }
    }

    /// Corners of `(base, labels)` indexed by bit mask over `labels`, or
    /// `None` when some induced edge is missing or corners coincide.
    pub(crate) fn corner_table(&self, base: VertexId, labels: &[LabelId]) -> Option<Vec<VertexId>> {
        let k = labels.len();
        if k > 24 {
            return None;
        }
        let mut corners = vec![usize::MAX; 1 << k];
        corners[0] = base;
        for mask in 1usize..(1 << k) {
            let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
            let from = corners[mask ^ (1 << top)];
            let to = self.step(from, labels[top])?;
            // Every other incoming direction must land on the same corner.
            for bit in (0..top).filter(|b| mask & (1 << b) != 0) {
                if self.step(corners[mask ^ (1 << bit)], labels[bit]) != Some(to) {
                    return None;
                }
            }
            corners[mask] = to;
        }
        let distinct: HashSet<_> = corners.iter().collect();
        (distinct.len() == corners.len()).then_some(corners)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn label_name(&self, label: LabelId) -> &str {
        &self.label_names[label]
    }

    pub fn label_id(&self, name: &str) -> Option<LabelId> {
        self.label_index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Maximal cubes of dimension ≥ 2.
    pub fn maximal_cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn root(&self) -> Option<VertexId> {
        self.root
    }

    pub fn with_root(mut self, root: VertexId) -> Self {
        assert!(root < self.vertex_count());
        self.root = Some(root);
        self
    }

    /// `(label, edge, neighbour)` for every edge at `v`, sorted by label.
    pub fn incident(&self, v: VertexId) -> &[(LabelId, EdgeId, VertexId)] {
        &self.incident[v]
    }

    pub fn neighbours(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident[v].iter().map(|&(_, _, w)| w)
    }

    /// The neighbour of `v` across the edge labelled `label`.
    pub fn step(&self, v: VertexId, label: LabelId) -> Option<VertexId> {
        let inc = &self.incident[v];
        inc.binary_search_by_key(&label, |&(l, _, _)| l)
            .ok()
            .map(|i| inc[i].2)
    }

    pub fn edge_at(&self, v: VertexId, label: LabelId) -> Option<EdgeId> {
        let inc = &self.incident[v];
        inc.binary_search_by_key(&label, |&(l, _, _)| l)
            .ok()
            .map(|i| inc[i].1)
    }

    /// Whether the cube at `v` spanned by `labels` (sorted) is present,
    /// including lower-dimensional faces of stored cubes.
    pub fn has_cube(&self, v: VertexId, labels: &[LabelId]) -> bool {
        match labels {
            [] => true,
            [l] => self.step(v, *l).is_some(),
            _ => self.corner_cubes[v]
                .iter()
                .any(|&c| is_sorted_subset(labels, &self.cubes[c].labels)),
        }
    }

    /// Labels of the maximal cubes having `v` as a corner.
    pub fn cubes_at(&self, v: VertexId) -> impl Iterator<Item = &Cube> + '_ {
        self.corner_cubes[v].iter().map(|&c| &self.cubes[c])
    }

    /// Corners of a stored cube, indexed by mask over its labels.
    pub fn cube_corners(&self, cube: &Cube) -> Vec<VertexId> {
        self.corner_table(cube.base, &cube.labels)
            .expect("stored cubes are valid")
    }

    pub fn max_cube_dim(&self) -> usize {
        let top = self.cubes.iter().map(Cube::dim).max().unwrap_or(0);
        if top > 0 {
            top
        } else if self.edges.is_empty() {
            0
        } else {
            1
        }
    }

    pub fn bfs_distances(&self, source: VertexId) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.vertex_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            let d = dist[v].expect("queued vertices have distances");
            for w in self.neighbours(v) {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Number of cubes of each dimension, counting every face once.
    pub fn face_counts(&self) -> Vec<u64> {
        let mut counts = vec![self.vertex_count() as u64];
        if !self.edges.is_empty() {
            counts.push(self.edges.len() as u64);
        }
        let mut faces: HashSet<(VertexId, Vec<LabelId>)> = HashSet::new();
        for cube in &self.cubes {
            let corners = self.cube_corners(cube);
            let d = cube.dim();
            let full = (1usize << d) - 1;
            for dirs in 1usize..=full {
                if dirs.count_ones() < 2 {
                    continue;
                }
                let labels: Vec<LabelId> = (0..d)
                    .filter(|b| dirs & (1 << b) != 0)
                    .map(|b| cube.labels[b])
                    .collect();
                let rest = full & !dirs;
                // Iterate the fixed coordinates outside `dirs`.
                let mut fixed = rest;
                loop {
                    let mut min = usize::MAX;
                    let mut sub = dirs;
                    loop {
                        min = min.min(corners[fixed | sub]);
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & dirs;
                    }
                    faces.insert((min, labels.clone()));
                    if fixed == 0 {
                        break;
                    }
                    fixed = (fixed - 1) & rest;
                }
            }
        }
        for (_, labels) in faces {
            let k = labels.len();
            if counts.len() <= k {
                counts.resize(k + 1, 0);
            }
            counts[k] += 1;
        }
        counts
    }

    /// `Σ_k (−1)^k · #k-cubes`.
    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeJson {
                    ends: [
                        self.vertex_names[e.ends.0].clone(),
                        self.vertex_names[e.ends.1].clone(),
                    ],
                    label: self.label_names[e.label].clone(),
                })
                .collect(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeJson {
                    base: self.vertex_names[c.base].clone(),
                    labels: c.labels.iter().map(|&l| self.label_names[l].clone()).collect(),
                })
                .collect(),
            root: self.root.map(|r| self.vertex_names[r].clone()),
        }
    }

    /// Graphviz rendering of the 1-skeleton with edges coloured by hyperplane.
    pub fn to_dot(&self) -> String {
        let system = hyperplanes(self);
        let mut s = String::from("graph complex {\n  node [shape=point];\n");
        for (v, name) in self.vertex_names.iter().enumerate() {
            let shape = if Some(v) == self.root {
                ", shape=doublecircle"
            } else {
                ""
            };
            let _ = writeln!(s, "  {name:?} [xlabel={name:?}{shape}];");
        }
        for (id, e) in self.edges.iter().enumerate() {
            let h = system.of_edge[id];
            let _ = writeln!(
                s,
                "  {:?} -- {:?} [label={:?}, colorscheme=set312, color={}];",
                self.vertex_names[e.ends.0],
                self.vertex_names[e.ends.1],
                format!("h{h}"),
                h % 12 + 1
            );
        }
        s.push_str("}\n");
        s
    }
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Interchange form of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub cubes: Vec<CubeJson>,
    #[serde(default)]
    pub root: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub ends: [String; 2],
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeJson {
    pub base: String,
    pub labels: Vec<String>,
}

impl ComplexJson {
    pub fn into_complex(self) -> Result<CubeComplex, ComplexError> {
        let index: HashMap<&str, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| ComplexError::UnknownVertex(name.to_owned()))
        };
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            edges.push((lookup(&e.ends[0])?, lookup(&e.ends[1])?, e.label.clone()));
        }
        let mut cubes = Vec::with_capacity(self.cubes.len());
        for c in &self.cubes {
            cubes.push((lookup(&c.base)?, c.labels.clone()));
        }
        let root = self.root.as_deref().map(lookup).transpose()?;
        drop(index);
        CubeComplex::new(self.vertices, edges, cubes, root)
    }
}

/// Small hand-built complexes used as positive and negative controls.
pub mod fixtures {
    use super::*;

    /// One filled square on vertices 0..4 with labels `x`, `y`.
    pub fn square() -> CubeComplex {
        CubeComplex::new(
            vec!["00".into(), "10".into(), "01".into(), "11".into()],
            vec![
                (0, 1, "x".into()),
                (2, 3, "x".into()),
                (0, 2, "y".into()),
                (1, 3, "y".into()),
            ],
            vec![(0, vec!["x".into(), "y".into()])],
            Some(0),
        )
        .unwrap()
    }

    /// `k` filled squares arranged cyclically around a centre vertex.
    pub fn squares_around_vertex(k: usize) -> CubeComplex {
        let mut names = vec!["c".to_string()];
        names.extend((0..k).map(|i| format!("a{i}")));
        names.extend((0..k).map(|i| format!("x{i}")));
        let a = |i: usize| 1 + i % k;
        let x = |i: usize| 1 + k + i % k;
        let mut edges = Vec::new();
        let mut cubes = Vec::new();
        for i in 0..k {
            let (li, lj) = (format!("L{i}"), format!("L{}", (i + 1) % k));
            edges.push((0, a(i), li.clone()));
            edges.push((a(i), x(i), lj.clone()));
            edges.push((a(i + 1), x(i), li.clone()));
            cubes.push((0, vec![li, lj]));
        }
        CubeComplex::new(names, edges, cubes, Some(0)).unwrap()
    }

    /// Three vertices on a path, rooted in the middle.
    pub fn path3() -> CubeComplex {
        CubeComplex::new(
            vec!["l".into(), "m".into(), "r".into()],
            vec![(0, 1, "a".into()), (1, 2, "b".into())],
            vec![],
            Some(1),
        )
        .unwrap()
    }
}
