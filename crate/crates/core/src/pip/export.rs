use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Pip, PipError};

/// Interchange form: `{"elements":[..],"covers":[[lower,upper],..],"inconsistent":[[p,q],..]}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
    #[serde(default)]
    pub inconsistent: Vec<[String; 2]>,
}

impl PipJson {
    pub fn into_pip(self) -> Result<Pip, PipError> {
        let covers: Vec<(String, String)> = self.covers.into_iter().map(|[a, b]| (a, b)).collect();
        let pairs: Vec<(String, String)> = self.inconsistent.into_iter().map(|[a, b]| (a, b)).collect();
        Pip::new(&self.elements, &covers, &pairs)
    }
}

impl Pip {
    pub fn from_json_str(s: &str) -> Result<Pip, serde_json::Error> {
        let json: PipJson = serde_json::from_str(s)?;
        json.into_pip().map_err(serde::de::Error::custom)
    }

    /// Cover relations of the transitive reduction.
    pub fn hasse_covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in self.above[p].ones() {
                if self.above[p].is_disjoint(&self.below[q]) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Minimal pairs of the upward-closed inconsistency relation: `p ↮ q`
    /// with no other inconsistent `r ≤ p`, `s ≤ q`.
    pub fn minimal_conflicts(&self) -> Vec<(usize, usize)> {
        let closure = if self.closed {
            self.conflicts.clone()
        } else {
            self.upward_closure()
        };
        let mut out = Vec::new();
        for p in 0..self.len() {
            for q in closure[p].ones().filter(|&q| p <= q) {
                let mut down_q = self.below[q].clone();
                down_q.insert(q);
                let below_p_hits = self.below[p].ones().any(|r| !closure[r].is_disjoint(&down_q));
                let p_hits_below_q = !closure[p].is_disjoint(&self.below[q]);
                if !below_p_hits && !p_hits_below_q {
                    out.push((p, q));
                }
            }
        }
        out
    }

    /// Hasse-diagram form: cover relations and minimal inconsistent pairs.
    pub fn to_json(&self) -> PipJson {
        let name = |i: usize| self.names[i].clone();
        PipJson {
            elements: self.names.clone(),
            covers: self
                .hasse_covers()
                .into_iter()
                .map(|(a, b)| [name(a), name(b)])
                .collect(),
            inconsistent: self
                .minimal_conflicts()
                .into_iter()
                .map(|(a, b)| [name(a), name(b)])
                .collect(),
        }
    }

    /// Graphviz rendering of the Hasse diagram: solid covers drawn upward,
    /// dotted minimal inconsistencies.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph pip {\n  rankdir=BT;\n  node [shape=circle];\n");
        for n in &self.names {
            let _ = writeln!(s, "  {n:?};");
        }
        for (a, b) in self.hasse_covers() {
            let _ = writeln!(s, "  {:?} -> {:?};", self.names[a], self.names[b]);
        }
        for (a, b) in self.minimal_conflicts() {
            let _ = writeln!(
                s,
                "  {:?} -> {:?} [style=dotted, dir=none, constraint=false];",
                self.names[a], self.names[b]
            );
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_reminimizes() {
        let pip = Pip::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("a", "c")],
            &[("a", "d"), ("b", "d"), ("c", "d")],
        )
        .unwrap();
        let json = pip.to_json();
        assert_eq!(
            json.covers,
            vec![["a".to_string(), "b".into()], ["b".into(), "c".into()]]
        );
        assert_eq!(json.inconsistent, vec![["a".to_string(), "d".into()]]);
        let back = json.into_pip().unwrap().close().unwrap();
        assert_eq!(back.to_json(), pip.to_json());
    }

    #[test]
    fn parses_interchange_json() {
        let pip = Pip::from_json_str(
            r#"{"elements":["c","f","e"],"covers":[["c","e"]],"inconsistent":[["c","f"]]}"#,
        )
        .unwrap();
        assert_eq!(pip.len(), 3);
        assert!(!pip.is_closed());
        assert!(Pip::from_json_str(r#"{"elements":["a"],"covers":[["a","b"]]}"#).is_err());
    }

    #[test]
    fn dot_lists_relations() {
        let pip = Pip::new(&["a", "b", "c"], &[("a", "b")], &[("a", "c")]).unwrap();
        let dot = pip.close().unwrap().to_dot();
        assert!(dot.contains("\"a\" -> \"b\";"));
        assert!(dot.contains("\"a\" -> \"c\" [style=dotted"));
        assert!(!dot.contains("\"b\" -> \"c\""));
    }
}
