use std::collections::HashSet;

use super::{is_sorted_subset, CubeComplex, LabelId, VertexId};

/// The link of a vertex: one point per incident edge (named by its label),
/// and one simplex per set of edges spanning a cube at the vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkComplex {
    pub vertex: VertexId,
    /// Link points, i.e. labels of edges at the vertex, sorted.
    pub points: Vec<LabelId>,
    /// Maximal simplices of dimension ≥ 1, each sorted.
    pub facets: Vec<Vec<LabelId>>,
}

pub fn link(x: &CubeComplex, v: VertexId) -> LinkComplex {
    let points = x.incident(v).iter().map(|&(l, _, _)| l).collect();
    let mut facets: Vec<Vec<LabelId>> = x.cubes_at(v).map(|c| c.labels.clone()).collect();
    facets.sort();
    facets.dedup();
    LinkComplex {
        vertex: v,
        points,
        facets,
    }
}

impl LinkComplex {
    pub fn is_simplex(&self, set: &[LabelId]) -> bool {
        match set {
            [] => true,
            [p] => self.points.binary_search(p).is_ok(),
            _ => self.facets.iter().any(|f| is_sorted_subset(set, f)),
        }
    }

    pub fn adjacent(&self, a: LabelId, b: LabelId) -> bool {
        let pair = if a < b { [a, b] } else { [b, a] };
        self.is_simplex(&pair)
    }

    /// A smallest clique of the link graph that spans no simplex, if any.
    ///
    /// Works level by level: every clique one larger than a known simplex is
    /// generated from it; the first clique that is not a simplex has all
    /// proper subsets simplices, so it is a minimal witness.
    pub fn flag_witness(&self) -> Option<Vec<LabelId>> {
        let mut level: Vec<Vec<LabelId>> = Vec::new();
        for (i, &a) in self.points.iter().enumerate() {
            for &b in &self.points[i + 1..] {
                if self.adjacent(a, b) {
                    level.push(vec![a, b]);
                }
            }
        }
        while !level.is_empty() {
            let mut next = Vec::new();
            let mut seen = HashSet::new();
            for simplex in &level {
                let last = *simplex.last().expect("non-empty");
                for &c in self.points.iter().filter(|&&c| c > last) {
                    if simplex.iter().all(|&s| self.adjacent(s, c)) {
                        let mut clique = simplex.clone();
                        clique.push(c);
                        if !self.is_simplex(&clique) {
                            return Some(clique);
                        }
                        if seen.insert(clique.clone()) {
                            next.push(clique);
                        }
                    }
                }
            }
            level = next;
        }
        None
    }

    pub fn is_flag(&self) -> bool {
        self.flag_witness().is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn square_corner_link_is_an_edge() {
        let sq = square();
        let l = link(&sq, 0);
        assert_eq!(l.points.len(), 2);
        assert_eq!(l.facets.len(), 1);
        assert!(l.is_flag());
    }

    #[test]
    fn three_squares_make_an_empty_triangle() {
        let x = squares_around_vertex(3);
        let l = link(&x, 0);
        assert_eq!(l.points.len(), 3);
        let witness = l.flag_witness().expect("not flag");
        let names: Vec<&str> = witness.iter().map(|&w| x.label_name(w)).collect();
        assert_eq!(names, vec!["L0", "L1", "L2"]);
    }

    #[test]
    fn five_squares_make_a_pentagon() {
        let x = squares_around_vertex(5);
        let l = link(&x, 0);
        assert_eq!(l.points.len(), 5);
        assert_eq!(l.facets.len(), 5);
        assert!(l.is_flag());
    }

    #[test]
    fn leaf_link_is_a_point() {
        let p = path3();
        assert!(link(&p, 0).is_flag());
        assert_eq!(link(&p, 1).points.len(), 2);
        assert!(link(&p, 1).facets.is_empty());
    }
}
