//! Reading a PIP off a rooted complex, and certifying CAT(0) by round trip.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use super::{hyperplanes, link, realize, CubeComplex, HyperplaneSystem, VertexId};
use crate::pip::{Ideal, Pip, ValidateOptions, ValidationReport};
use crate::Guard;

/// Why a complex is not CAT(0), with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// The edges `clique` at `vertex` pairwise span squares but no cube.
    NonFlagLink {
        vertex: String,
        clique: Vec<String>,
    },
    /// Two shortest paths from the root to `vertex` cross different
    /// hyperplanes; the edge from `neighbour` is the first disagreement.
    PathDependent {
        vertex: String,
        neighbour: String,
        hyperplane: String,
    },
    /// Two vertices are separated from the root by the same hyperplanes.
    NonInjective {
        first: String,
        second: String,
    },
    InvalidPip {
        report: ValidationReport,
    },
    /// The complex rebuilt from the extracted PIP differs from the input.
    Mismatch {
        reason: String,
    },
}

impl fmt::Display for Refutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refutation::NonFlagLink { vertex, clique } => write!(
                f,
                "link of {vertex} is not flag: {{{}}} is a clique without a simplex",
                clique.join(",")
            ),
            Refutation::PathDependent { vertex, neighbour, hyperplane } => write!(
                f,
                "separating hyperplanes of {vertex} depend on the path (edge from {neighbour}, hyperplane {hyperplane})"
            ),
            Refutation::NonInjective { first, second } => {
                write!(f, "{first} and {second} are separated from the root by the same hyperplanes")
            }
            Refutation::InvalidPip { report } => write!(f, "extracted relation is not a PIP: {report}"),
            Refutation::Mismatch { reason } => write!(f, "round trip mismatch: {reason}"),
        }
    }
}

/// The PIP of a rooted complex, with the ideal of every vertex.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub pip: Pip,
    /// `ideals[v]`: hyperplanes separating `v` from the root, as PIP elements.
    pub ideals: Vec<Ideal>,
    pub hyperplanes: HyperplaneSystem,
    /// `element_of[h]`: PIP element of hyperplane `h`.
    pub element_of: Vec<usize>,
    pub root: VertexId,
}

impl Extraction {
    pub fn vertex_index(&self) -> HashMap<Ideal, VertexId> {
        self.ideals
            .iter()
            .cloned()
            .enumerate()
            .map(|(v, i)| (i, v))
            .collect()
    }
}

/// Hyperplane names: edge labels when they identify hyperplanes one to one,
/// otherwise `h0`, `h1`, ... zero-padded so name order is id order.
fn hyperplane_names(x: &CubeComplex, sys: &HyperplaneSystem) -> Vec<String> {
    sys.uniform_labels(x).unwrap_or_else(|| {
        let width = sys.len().saturating_sub(1).to_string().len();
        (0..sys.len()).map(|h| format!("h{h:0width$}")).collect()
    })
}

/// Extracts the PIP of `x` rooted at `root`.
///
/// `I(w)` is accumulated along a breadth-first tree and then checked on every
/// edge between consecutive layers, which covers every shortest path. Then
/// `H < K` when every `I(w)` holding `K` holds `H`, and `H ↮ K` when no
/// `I(w)` holds both.
pub fn extract_pip(x: &CubeComplex, root: VertexId) -> Result<Extraction, Refutation> {
    let sys = hyperplanes(x);
    let names = hyperplane_names(x, &sys);
    let h_count = sys.len();
    let n = x.vertex_count();
    let vname = |v: VertexId| x.vertex_name(v).to_owned();

    let mut dist = vec![u32::MAX; n];
    let mut sep: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(h_count); n];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &(_, e, w) in x.incident(u) {
            if dist[w] != u32::MAX {
                continue;
            }
            let h = sys.of_edge[e];
            if sep[u].contains(h) {
                return Err(Refutation::PathDependent {
                    vertex: vname(w),
                    neighbour: vname(u),
                    hyperplane: names[h].clone(),
                });
            }
            dist[w] = dist[u] + 1;
            let mut s = sep[u].clone();
            s.insert(h);
            sep[w] = s;
            queue.push_back(w);
        }
    }

    for (e, edge) in x.edges().iter().enumerate() {
        let (a, b) = edge.ends;
        let h = sys.of_edge[e];
        let (lo, hi) = if dist[a] < dist[b] { (a, b) } else { (b, a) };
        let mut expected = sep[lo].clone();
        expected.insert(h);
        if dist[lo] == dist[hi] || sep[lo].contains(h) || expected != sep[hi] {
            return Err(Refutation::PathDependent {
                vertex: vname(hi),
                neighbour: vname(lo),
                hyperplane: names[h].clone(),
            });
        }
    }

    let mut owner: HashMap<&FixedBitSet, VertexId> = HashMap::with_capacity(n);
    for (v, s) in sep.iter().enumerate() {
        if let Some(&first) = owner.get(s) {
            return Err(Refutation::NonInjective {
                first: vname(first),
                second: vname(v),
            });
        }
        owner.insert(s, v);
    }
    drop(owner);

    let mut common = vec![
        {
            let mut all = FixedBitSet::with_capacity(h_count);
            all.insert_range(..);
            all
        };
        h_count
    ];
    let mut together = vec![FixedBitSet::with_capacity(h_count); h_count];
    for s in &sep {
        for k in s.ones() {
            common[k].intersect_with(s);
            together[k].union_with(s);
        }
    }

    let mut order: Vec<usize> = (0..h_count).collect();
    order.sort_by(|&a, &b| names[a].cmp(&names[b]));
    let mut element_of = vec![0; h_count];
    for (el, &h) in order.iter().enumerate() {
        element_of[h] = el;
    }
    let sorted_names: Vec<String> = order.iter().map(|&h| names[h].clone()).collect();

    let mut covers = Vec::new();
    let mut conflicts = Vec::new();
    for k in 0..h_count {
        for h in common[k].ones().filter(|&h| h != k) {
            covers.push((element_of[h], element_of[k]));
        }
        for h in (k + 1..h_count).filter(|&h| !together[k].contains(h)) {
            conflicts.push((element_of[h], element_of[k]));
        }
    }
    let pip = Pip::from_indexed(sorted_names, covers, conflicts);
    let report = pip.validate(ValidateOptions::default());
    if !report.is_valid() || !pip.is_closed() {
        return Err(Refutation::InvalidPip { report });
    }

    let ideals = sep
        .iter()
        .map(|s| {
            let mut bits = FixedBitSet::with_capacity(h_count);
            for h in s.ones() {
                bits.insert(element_of[h]);
            }
            Ideal::from_bits(bits)
        })
        .collect();
    Ok(Extraction {
        pip,
        ideals,
        hyperplanes: sys,
        element_of,
        root,
    })
}

/// A proof that a rooted complex is CAT(0): its PIP rebuilds it exactly.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub extraction: Extraction,
    pub hyperplane_count: usize,
    pub max_cube_dim: usize,
    pub face_counts: Vec<u64>,
    pub euler_characteristic: i64,
}

impl Certificate {
    pub fn pip(&self) -> &Pip {
        &self.extraction.pip
    }
}

pub type Verdict = Result<Certificate, Refutation>;

/// Certifies `x` as CAT(0) or returns a witness against it.
///
/// Every vertex link is first checked for flagness, a fast local necessary
/// condition. Then the PIP is extracted at `root`, `X(P)` is rebuilt, and
/// the map `w ↦ I(w)` must be a bijection on vertices that preserves edges
/// (with hyperplane labels) and cubes.
pub fn is_cat0(x: &CubeComplex, root: VertexId) -> Verdict {
    for v in 0..x.vertex_count() {
        if let Some(clique) = link(x, v).flag_witness() {
            return Err(Refutation::NonFlagLink {
                vertex: x.vertex_name(v).to_owned(),
                clique: clique.iter().map(|&l| x.label_name(l).to_owned()).collect(),
            });
        }
    }

    let ext = extract_pip(x, root)?;
    let mismatch = |reason: String| Err(Refutation::Mismatch { reason });
    let n = x.vertex_count();
    let pip = &ext.pip;

    let limit = Guard::new(n as u64);
    let rebuilt = match realize(pip, limit) {
        Ok(r) => r,
        Err(_) => {
            return mismatch(format!("the PIP has more than {n} consistent ideals"));
        }
    };
    let y = &rebuilt.complex;
    if y.vertex_count() != n {
        return mismatch(format!("{n} vertices but {} consistent ideals", y.vertex_count()));
    }
    let mut image = Vec::with_capacity(n);
    for (v, ideal) in ext.ideals.iter().enumerate() {
        match rebuilt.vertex_of(ideal) {
            Some(w) => image.push(w),
            None => {
                return mismatch(format!("{} maps to an inconsistent set", x.vertex_name(v)));
            }
        }
    }

    let element_label = |e: usize| {
        let el = ext.element_of[ext.hyperplanes.of_edge[e]];
        y.label_id(pip.name(el))
            .expect("every element labels an edge of X(P)")
    };
    if y.edge_count() != x.edge_count() {
        return mismatch(format!(
            "{} edges but X(P) has {}",
            x.edge_count(),
            y.edge_count()
        ));
    }
    for (e, edge) in x.edges().iter().enumerate() {
        let (a, b) = edge.ends;
        if y.step(image[a], element_label(e)) != Some(image[b]) {
            return mismatch(format!(
                "edge {}–{} has no counterpart",
                x.vertex_name(a),
                x.vertex_name(b)
            ));
        }
    }
    for cube in x.maximal_cubes() {
        let mut labels: Vec<usize> = cube
            .labels
            .iter()
            .map(|&l| element_label(x.edge_at(cube.base, l).expect("cube edge")))
            .collect();
        labels.sort_unstable();
        if !y.has_cube(image[cube.base], &labels) {
            return mismatch(format!("cube at {} has no counterpart", x.vertex_name(cube.base)));
        }
    }
    let face_counts = x.face_counts();
    if face_counts != y.face_counts() {
        return mismatch(format!(
            "face counts {:?} differ from X(P)'s {:?}",
            face_counts,
            y.face_counts()
        ));
    }

    let euler_characteristic = face_counts
        .iter()
        .enumerate()
        .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
        .sum();
    Ok(Certificate {
        hyperplane_count: ext.hyperplanes.len(),
        max_cube_dim: x.max_cube_dim(),
        face_counts,
        euler_characteristic,
        extraction: ext,
    })
}
