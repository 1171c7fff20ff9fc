use std::collections::{HashMap, HashSet};

use super::{ComplexError, Cube, CubeComplex, LabelId, VertexId};
use crate::pip::{Ideal, Pip};
use crate::Guard;

impl CubeComplex {
    /// Fills every cube whose 1-skeleton is present and which `accept`
    /// admits, replacing any stored cubes.
    ///
    /// Candidates at each vertex grow one label at a time; a label set is
    /// tried only once all its one-smaller subsets are cubes there, so only
    /// the far corner needs checking. `accept` must be closed under subsets.
    pub fn fill_cubes<F>(mut self, mut accept: F) -> Self
    where
        F: FnMut(&CubeComplex, VertexId, &[LabelId]) -> bool,
    {
        let mut found: Vec<(Cube, Vec<VertexId>)> = Vec::new();
        let mut seen: HashSet<Cube> = HashSet::new();
        for v in 0..self.vertex_count() {
            let labels: Vec<LabelId> = self.incident[v].iter().map(|&(l, _, _)| l).collect();
            let mut level: Vec<Vec<LabelId>> = labels.iter().map(|&l| vec![l]).collect();
            while !level.is_empty() {
                let present: HashSet<&[LabelId]> = level.iter().map(Vec::as_slice).collect();
                let mut next: Vec<Vec<LabelId>> = Vec::new();
                let mut extended = vec![false; level.len()];
                for set in &level {
                    let last = *set.last().expect("non-empty");
                    for &l in labels.iter().filter(|&&l| l > last) {
                        let mut cand = set.clone();
                        cand.push(l);
                        let faces_ok = (0..cand.len() - 1).all(|skip| {
                            let face: Vec<LabelId> = cand
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| i != skip)
                                .map(|(_, &x)| x)
                                .collect();
                            present.contains(face.as_slice())
                        });
                        if faces_ok && self.corner_table(v, &cand).is_some() && accept(&self, v, &cand) {
                            next.push(cand);
                        }
                    }
                }
                // A set is maximal at `v` when no one-larger set contains it.
                for cand in &next {
                    for (i, set) in level.iter().enumerate() {
                        if !extended[i] && super::is_sorted_subset(set, cand) {
                            extended[i] = true;
                        }
                    }
                }
                for (set, ext) in level.iter().zip(&extended) {
                    if *ext || set.len() < 2 {
                        continue;
                    }
                    let corners = self.corner_table(v, set).expect("checked on insertion");
                    let base = *corners.iter().min().expect("non-empty");
                    let cube = Cube {
                        base,
                        labels: set.clone(),
                    };
                    if seen.insert(cube.clone()) {
                        found.push((cube, corners));
                    }
                }
                level = next;
            }
        }
        self.cubes.clear();
        self.corner_cubes.iter_mut().for_each(Vec::clear);
        self.install_cubes(found);
        self
    }
}

/// The rooted complex `X(P)` of a PIP together with each vertex's ideal.
#[derive(Clone, Debug)]
pub struct Realization {
    pub complex: CubeComplex,
    /// `ideals[v]` is the consistent ideal of vertex `v`.
    pub ideals: Vec<Ideal>,
    pub index: HashMap<Ideal, VertexId>,
}

impl Realization {
    pub fn vertex_of(&self, ideal: &Ideal) -> Option<VertexId> {
        self.index.get(ideal).copied()
    }
}

/// Builds `X(P)`: one vertex per consistent ideal, an edge labelled `p`
/// between ideals differing by `p`, and every cube whose edges are present.
/// The root is the empty ideal.
pub fn realize(pip: &Pip, guard: Guard) -> Result<Realization, ComplexError> {
    let ideals = pip.consistent_ideals(guard)?;
    let index: HashMap<Ideal, VertexId> = ideals
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, ideal)| (ideal, i))
        .collect();
    let names: Vec<String> = ideals.iter().map(|i| pip.format_ideal(i)).collect();
    let mut edges = Vec::new();
    for (v, ideal) in ideals.iter().enumerate() {
        for p in 0..pip.len() {
            if pip.can_add(ideal, p) {
                let w = index[&ideal.with(p)];
                edges.push((v, w, pip.name(p).to_owned()));
            }
        }
    }
    let root = index[&pip.empty_ideal()];
    let complex = CubeComplex::new(names, edges, Vec::new(), Some(root))?.fill_cubes(|_, _, _| true);
    Ok(Realization {
        complex,
        ideals,
        index,
    })
}

pub fn from_pip(pip: &Pip, guard: Guard) -> Result<CubeComplex, ComplexError> {
    realize(pip, guard).map(|r| r.complex)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_of_two_is_a_square() {
        let pip = Pip::new(&["a", "b"], &[], &[]).unwrap();
        let x = from_pip(&pip, Guard::default()).unwrap();
        assert_eq!(x.face_counts(), vec![4, 4, 1]);
        assert_eq!(x.vertex_name(x.root().unwrap()), "{}");
    }

    #[test]
    fn chain_is_a_path() {
        let pip = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let x = from_pip(&pip, Guard::default()).unwrap();
        assert_eq!(x.face_counts(), vec![3, 2]);
    }

    #[test]
    fn conflict_is_a_path_rooted_in_the_middle() {
        let pip = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let x = from_pip(&pip, Guard::default()).unwrap();
        assert_eq!(x.face_counts(), vec![3, 2]);
        assert_eq!(x.incident(x.root().unwrap()).len(), 2);
    }

    #[test]
    fn antichain_fills_the_full_cube() {
        let pip = Pip::new(&["a", "b", "c", "d"], &[], &[]).unwrap();
        let x = from_pip(&pip, Guard::default()).unwrap();
        assert_eq!(x.maximal_cubes().len(), 1);
        assert_eq!(x.max_cube_dim(), 4);
        assert_eq!(x.face_counts(), vec![16, 32, 24, 8, 1]);
    }

    #[test]
    fn guard_propagates() {
        let pip = Pip::new(&["a", "b", "c"], &[], &[]).unwrap();
        assert!(matches!(
            from_pip(&pip, Guard::new(4)),
            Err(ComplexError::Pip(crate::pip::PipError::GuardExceeded { .. }))
        ));
    }

    #[test]
    fn unfilled_square_is_filled() {
        let x = CubeComplex::new(
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec![
                (0, 1, "x".into()),
                (2, 3, "x".into()),
                (0, 2, "y".into()),
                (1, 3, "y".into()),
            ],
            vec![],
            None,
        )
        .unwrap();
        assert_eq!(x.face_counts(), vec![4, 4]);
        assert_eq!(x.fill_cubes(|_, _, _| true).face_counts(), vec![4, 4, 1]);
    }
}
