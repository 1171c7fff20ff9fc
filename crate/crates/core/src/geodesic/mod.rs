//! Exact geodesics between vertices of a CAT(0) cube complex, computed on
//! its PIP, in the cost (ℓ1) and time (ℓ∞) metrics.
//!
//! Going from ideal `I` to ideal `J` means removing `I∖J` and adding `J∖I`.
//! The [`CrossingDag`] records which crossings must precede which so that
//! every intermediate set stays a consistent ideal. Any topological order is
//! an ℓ1 geodesic; crossing each DAG level at once is the normal cube path,
//! an ℓ∞ geodesic.

mod oracle;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use oracle::{oracle_l1, oracle_linf, Oracle};

use crate::pip::{Ideal, Pip, PipError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeodesicError {
    #[error(transparent)]
    Pip(#[from] PipError),
    #[error("{0} is not a consistent ideal")]
    NotConsistentIdeal(String),
    #[error("batch {step} {batch} does not span a cube at its source vertex")]
    CubeAssertion { step: usize, batch: String },
    #[error("vertices {0} and {1} are not connected")]
    Disconnected(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    L1,
    Linf,
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::L1 => "l1",
            Metric::Linf => "linf",
        })
    }
}

impl std::str::FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "l1" => Ok(Metric::L1),
            "linf" => Ok(Metric::Linf),
            other => Err(format!("unknown metric `{other}` (expected l1 or linf)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Crossing {
    Remove(usize),
    Add(usize),
}

impl Crossing {
    pub fn element(&self) -> usize {
        match *self {
            Crossing::Remove(p) | Crossing::Add(p) => p,
        }
    }

    fn apply(&self, ideal: &mut Ideal) {
        *ideal = match *self {
            Crossing::Remove(p) => ideal.without(p),
            Crossing::Add(p) => ideal.with(p),
        };
    }
}

/// Precedence constraints between the crossings of a move from `I` to `J`.
///
/// Arcs: `remove(q) → remove(p)` for `p < q`; `add(p) → add(q)` for `p < q`;
/// `remove(p) → add(a)` for `p ↮ a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingDag {
    /// Sorted by element (and so by name).
    pub nodes: Vec<Crossing>,
    /// `preds[i]`: indices of nodes that must come before node `i`.
    pub preds: Vec<Vec<usize>>,
    pub succs: Vec<Vec<usize>>,
}

impl CrossingDag {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Crossing, Crossing)> + '_ {
        self.succs
            .iter()
            .enumerate()
            .flat_map(move |(i, s)| s.iter().map(move |&j| (self.nodes[i], self.nodes[j])))
    }

    /// `levels()[i]` is the number of nodes on the longest chain ending at
    /// node `i`, minus one.
    pub fn levels(&self) -> Vec<usize> {
        let mut level = vec![0usize; self.len()];
        for i in self.topological_order() {
            for &j in &self.succs[i] {
                level[j] = level[j].max(level[i] + 1);
            }
        }
        level
    }

    /// Kahn's algorithm, smallest ready element first.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indegree: Vec<usize> = self.preds.iter().map(Vec::len).collect();
        let mut ready: BTreeSet<(usize, usize)> = (0..self.len())
            .filter(|&i| indegree[i] == 0)
            .map(|i| (self.nodes[i].element(), i))
            .collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some((_, i)) = ready.pop_first() {
            order.push(i);
            for &j in &self.succs[i] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.insert((self.nodes[j].element(), j));
                }
            }
        }
        debug_assert_eq!(order.len(), self.len(), "crossing relation is acyclic");
        order
    }
}

fn check_ideal(pip: &Pip, ideal: &Ideal) -> Result<(), GeodesicError> {
    if ideal.bits().len() != pip.len() || !pip.is_consistent_ideal(ideal) {
        return Err(GeodesicError::NotConsistentIdeal(pip.format_ideal(ideal)));
    }
    Ok(())
}

pub fn crossing_dag(pip: &Pip, from: &Ideal, to: &Ideal) -> Result<CrossingDag, GeodesicError> {
    pip.ensure_ready()?;
    check_ideal(pip, from)?;
    check_ideal(pip, to)?;
    let mut nodes: Vec<Crossing> = from
        .difference(to)
        .into_iter()
        .map(Crossing::Remove)
        .chain(to.difference(from).into_iter().map(Crossing::Add))
        .collect();
    nodes.sort_by_key(Crossing::element);

    let mut preds = vec![Vec::new(); nodes.len()];
    let mut succs = vec![Vec::new(); nodes.len()];
    for (i, &a) in nodes.iter().enumerate() {
        for (j, &b) in nodes.iter().enumerate() {
            let arc = match (a, b) {
                (Crossing::Remove(q), Crossing::Remove(p)) => pip.less(p, q),
                (Crossing::Add(p), Crossing::Add(q)) => pip.less(p, q),
                (Crossing::Remove(p), Crossing::Add(q)) => pip.inconsistent(p, q),
                (Crossing::Add(_), Crossing::Remove(_)) => false,
            };
            if arc {
                succs[i].push(j);
                preds[j].push(i);
            }
        }
    }
    Ok(CrossingDag { nodes, preds, succs })
}

/// A geodesic as a sequence of simultaneous crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeodesicPlan {
    pub metric: Metric,
    pub batches: Vec<Vec<Crossing>>,
    /// Ideals visited, starting at the source; one more than the batches.
    pub vertex_trace: Vec<Ideal>,
    pub distance: usize,
}

impl GeodesicPlan {
    fn execute(metric: Metric, from: &Ideal, batches: Vec<Vec<Crossing>>) -> Self {
        let mut trace = Vec::with_capacity(batches.len() + 1);
        let mut current = from.clone();
        trace.push(current.clone());
        for batch in &batches {
            for c in batch {
                c.apply(&mut current);
            }
            trace.push(current.clone());
        }
        GeodesicPlan {
            metric,
            distance: batches.len(),
            batches,
            vertex_trace: trace,
        }
    }

    /// Serializable form; `vertex_label` names each visited ideal.
    pub fn to_json(&self, pip: &Pip, mut vertex_label: impl FnMut(&Ideal) -> String) -> PlanJson {
        PlanJson {
            metric: self.metric,
            distance: self.distance,
            batches: self
                .batches
                .iter()
                .map(|b| b.iter().map(|c| pip.name(c.element()).to_owned()).collect())
                .collect(),
            vertices: self.vertex_trace.iter().map(&mut vertex_label).collect(),
        }
    }
}

/// `{"metric":"linf","distance":3,"batches":[["h1","h4"],...],"vertices":[...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanJson {
    pub metric: Metric,
    pub distance: usize,
    pub batches: Vec<Vec<String>>,
    pub vertices: Vec<String>,
}

/// Cost-optimal path: one crossing per step in DAG order, smallest name
/// first among the ready crossings.
pub fn l1_geodesic(pip: &Pip, from: &Ideal, to: &Ideal) -> Result<GeodesicPlan, GeodesicError> {
    let dag = crossing_dag(pip, from, to)?;
    let batches = dag
        .topological_order()
        .into_iter()
        .map(|i| vec![dag.nodes[i]])
        .collect();
    Ok(GeodesicPlan::execute(Metric::L1, from, batches))
}

/// Time-optimal path: the normal cube path that crosses every ready
/// hyperplane at once. Each batch is checked to span a cube at its source.
pub fn linf_geodesic(pip: &Pip, from: &Ideal, to: &Ideal) -> Result<GeodesicPlan, GeodesicError> {
    let dag = crossing_dag(pip, from, to)?;
    let levels = dag.levels();
    let depth = levels.iter().map(|&l| l + 1).max().unwrap_or(0);
    let mut batches = vec![Vec::new(); depth];
    for (i, &l) in levels.iter().enumerate() {
        batches[l].push(dag.nodes[i]);
    }
    let plan = GeodesicPlan::execute(Metric::Linf, from, batches);
    for (step, batch) in plan.batches.iter().enumerate() {
        if !spans_cube(pip, &plan.vertex_trace[step], batch) {
            let names: Vec<&str> = batch.iter().map(|c| pip.name(c.element())).collect();
            return Err(GeodesicError::CubeAssertion {
                step,
                batch: format!("{{{}}}", names.join(",")),
            });
        }
    }
    Ok(plan)
}

pub fn geodesic(pip: &Pip, from: &Ideal, to: &Ideal, metric: Metric) -> Result<GeodesicPlan, GeodesicError> {
    match metric {
        Metric::L1 => l1_geodesic(pip, from, to),
        Metric::Linf => linf_geodesic(pip, from, to),
    }
}

/// Whether all `2^k` subsets of `batch` applied at `at` give consistent ideals.
pub fn spans_cube(pip: &Pip, at: &Ideal, batch: &[Crossing]) -> bool {
    let k = batch.len();
    if k >= usize::BITS as usize - 1 {
        return false;
    }
    // Gray-code walk: each step toggles one crossing.
    let mut corner = at.clone();
    for g in 1usize..(1 << k) {
        let bit = g.trailing_zeros() as usize;
        corner = corner.toggled(batch[bit].element());
        if !pip.is_consistent_ideal(&corner) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(pip: &Pip, names: &[&str]) -> Ideal {
        pip.ideal(names).unwrap()
    }

    #[test]
    fn rooted_dag_is_the_order_on_the_target() {
        let pip = Pip::new(&["a", "b", "c"], &[("a", "b")], &[]).unwrap();
        let dag = crossing_dag(&pip, &pip.empty_ideal(), &id(&pip, &["a", "b", "c"])).unwrap();
        assert_eq!(
            dag.nodes,
            vec![Crossing::Add(0), Crossing::Add(1), Crossing::Add(2)]
        );
        assert_eq!(
            dag.arcs().collect::<Vec<_>>(),
            vec![(Crossing::Add(0), Crossing::Add(1))]
        );
    }

    #[test]
    fn equal_endpoints_give_empty_dag() {
        let pip = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let i = id(&pip, &["a"]);
        assert!(crossing_dag(&pip, &i, &i).unwrap().is_empty());
        let plan = l1_geodesic(&pip, &i, &i).unwrap();
        assert_eq!(plan.distance, 0);
        assert_eq!(plan.vertex_trace, vec![i]);
    }

    #[test]
    fn conflict_forces_removal_first() {
        let pip = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let dag = crossing_dag(&pip, &id(&pip, &["a"]), &id(&pip, &["b"])).unwrap();
        assert_eq!(dag.nodes, vec![Crossing::Remove(0), Crossing::Add(1)]);
        assert_eq!(
            dag.arcs().collect::<Vec<_>>(),
            vec![(Crossing::Remove(0), Crossing::Add(1))]
        );
        let plan = linf_geodesic(&pip, &id(&pip, &["a"]), &id(&pip, &["b"])).unwrap();
        assert_eq!(plan.distance, 2);
    }

    #[test]
    fn chain_plans() {
        let pip = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let to = id(&pip, &["a", "b"]);
        let plan = l1_geodesic(&pip, &pip.empty_ideal(), &to).unwrap();
        assert_eq!(plan.batches, vec![vec![Crossing::Add(0)], vec![Crossing::Add(1)]]);
        assert_eq!(plan.distance, 2);
        let plan = linf_geodesic(&pip, &pip.empty_ideal(), &to).unwrap();
        assert_eq!(plan.distance, 2);
    }

    #[test]
    fn antichain_crossed_in_one_batch() {
        let pip = Pip::new(&["a", "b", "c", "d"], &[], &[]).unwrap();
        let to = id(&pip, &["a", "b", "c", "d"]);
        let plan = linf_geodesic(&pip, &pip.empty_ideal(), &to).unwrap();
        assert_eq!(plan.distance, 1);
        assert_eq!(plan.batches[0].len(), 4);
        assert_eq!(l1_geodesic(&pip, &pip.empty_ideal(), &to).unwrap().distance, 4);
    }

    #[test]
    fn rejects_non_ideals() {
        let pip = Pip::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let bad = id(&pip, &["b"]);
        assert!(matches!(
            l1_geodesic(&pip, &pip.empty_ideal(), &bad),
            Err(GeodesicError::NotConsistentIdeal(_))
        ));
    }

    #[test]
    fn cube_assertion_detects_non_cube() {
        let pip = Pip::new(&["a", "b"], &[], &[("a", "b")]).unwrap();
        let batch = [Crossing::Add(0), Crossing::Add(1)];
        assert!(!spans_cube(&pip, &pip.empty_ideal(), &batch));
        assert!(spans_cube(&pip, &pip.empty_ideal(), &batch[..1]));
    }

    #[test]
    fn plan_json_shape() {
        let pip = Pip::new(&["h1", "h2"], &[], &[]).unwrap();
        let plan = linf_geodesic(&pip, &pip.empty_ideal(), &id(&pip, &["h1", "h2"])).unwrap();
        let json = serde_json::to_string(&plan.to_json(&pip, |i| pip.format_ideal(i))).unwrap();
        assert_eq!(
            json,
            r#"{"metric":"linf","distance":1,"batches":[["h1","h2"]],"vertices":["{}","{h1,h2}"]}"#
        );
    }
}
