use super::{CubeComplex, EdgeId, VertexId};

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}

/// An equivalence class of edges under "opposite sides of a square".
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperplaneSystem {
    pub classes: Vec<Hyperplane>,
    /// `of_edge[e]` is the id of the hyperplane dual to edge `e`.
    pub of_edge: Vec<usize>,
}

impl HyperplaneSystem {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// The shared label of every edge of each hyperplane, when each class is
    /// label-homogeneous and no two classes share a label.
    pub fn uniform_labels(&self, x: &CubeComplex) -> Option<Vec<String>> {
        let mut names = Vec::with_capacity(self.len());
        let mut used = std::collections::HashSet::new();
        for h in &self.classes {
            let label = x.edges[h.edges[0]].label;
            if h.edges.iter().any(|&e| x.edges[e].label != label) || !used.insert(label) {
                return None;
            }
            names.push(x.label_name(label).to_owned());
        }
        Some(names)
    }
}

/// Partitions the edges into hyperplanes by gluing opposite edges of every
/// square. Ids are ordered by smallest incident vertex, then smallest edge.
pub fn hyperplanes(x: &CubeComplex) -> HyperplaneSystem {
    let mut uf = UnionFind::new(x.edge_count());
    for cube in x.maximal_cubes() {
        let corners = x.cube_corners(cube);
        for (bit, &label) in cube.labels.iter().enumerate() {
            let first = x.edge_at(corners[0], label).expect("cube edge");
            for mask in (0..corners.len()).filter(|m| m & (1 << bit) == 0) {
                let e = x.edge_at(corners[mask], label).expect("cube edge");
                uf.union(first, e);
            }
        }
    }

    let mut members: std::collections::HashMap<usize, Vec<EdgeId>> = Default::default();
    for e in 0..x.edge_count() {
        members.entry(uf.find(e)).or_default().push(e);
    }
    let mut classes: Vec<(VertexId, EdgeId, Vec<EdgeId>)> = members
        .into_values()
        .map(|edges| {
            let min_vertex = edges
                .iter()
                .map(|&e| x.edges[e].ends.0.min(x.edges[e].ends.1))
                .min()
                .expect("non-empty class");
            (min_vertex, edges[0], edges)
        })
        .collect();
    classes.sort_unstable_by_key(|c| (c.0, c.1));

    let mut of_edge = vec![0; x.edge_count()];
    let classes = classes
        .into_iter()
        .enumerate()
        .map(|(id, (_, _, edges))| {
            for &e in &edges {
                of_edge[e] = id;
            }
            Hyperplane { id, edges }
        })
        .collect();
    HyperplaneSystem { classes, of_edge }
}
