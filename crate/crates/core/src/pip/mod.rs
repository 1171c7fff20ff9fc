//! Posets with inconsistent pairs (PIPs).
//!
//! A [`Pip`] is a finite poset `(P, ≤)` plus a symmetric inconsistency
//! relation `↮` that is closed upward: `p ↮ q`, `p ≤ p'`, `q ≤ q'` imply
//! `p' ↮ q'`. The downward-closed, inconsistency-free subsets ([`Ideal`]s)
//! are the vertices of the rooted CAT(0) cube complex the poset encodes.
//!
//! Elements are stored sorted by name and addressed by index, so index order
//! is lexicographic name order. Every tie-break in this crate uses it.

mod export;
mod ideals;
mod validate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use export::PipJson;
pub use ideals::AvailableMoves;
pub use validate::{ValidateOptions, ValidationReport, Violation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipError {
    #[error("element names must be non-empty")]
    EmptyName,
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("cover relation has a cycle through `{0}` and `{1}`")]
    Cyclic(String, String),
    #[error("poset is not a closed, valid PIP: {0}")]
    NotReady(String),
    #[error("set is not a consistent order ideal")]
    NotConsistentIdeal,
    #[error("more than {limit} consistent ideals")]
    GuardExceeded { limit: u64 },
}

/// A poset with inconsistent pairs.
///
/// Construction only rejects malformed input (unknown or duplicate names).
/// Order cycles, reflexive conflicts and missing upward closure are
/// representable so that [`Pip::validate`] can report them; the ideal
/// operations refuse to run until the poset is valid and closed.
#[derive(Clone)]
pub struct Pip {
    names: Vec<String>,
    index: HashMap<String, usize>,
    covers: BTreeSet<(usize, usize)>,
    /// Stored inconsistent pairs, normalized as `(min, max)`.
    inconsistent: BTreeSet<(usize, usize)>,
    /// `above[p]`: elements reachable from `p` by one or more cover steps.
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    /// Symmetric adjacency of the stored inconsistency relation.
    conflicts: Vec<FixedBitSet>,
    closed: bool,
    ready: bool,
}

impl Pip {
    /// Builds a PIP from element names, `(lower, upper)` cover pairs and
    /// unordered inconsistent pairs.
    pub fn new<S: AsRef<str>>(
        elements: &[S],
        covers: &[(S, S)],
        inconsistent: &[(S, S)],
    ) -> Result<Self, PipError> {
        let mut names: Vec<String> = Vec::with_capacity(elements.len());
        for e in elements {
            let e = e.as_ref();
            if e.is_empty() {
                return Err(PipError::EmptyName);
            }
            names.push(e.to_owned());
        }
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(PipError::DuplicateElement(w[0].clone()));
            }
        }
        let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| PipError::UnknownElement(name.to_owned()))
        };
        let mut cover_idx = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            cover_idx.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        let mut pair_idx = Vec::with_capacity(inconsistent.len());
        for (a, b) in inconsistent {
            pair_idx.push((lookup(a.as_ref())?, lookup(b.as_ref())?));
        }
        Ok(Self::from_indexed(names, cover_idx, pair_idx))
    }

    /// Builds from names already sorted and deduplicated, with index pairs.
    pub(crate) fn from_indexed(
        names: Vec<String>,
        covers: impl IntoIterator<Item = (usize, usize)>,
        inconsistent: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let n = names.len();
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let covers: BTreeSet<(usize, usize)> = covers.into_iter().collect();
        let inconsistent: BTreeSet<(usize, usize)> = inconsistent
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();

        let mut up_adj = vec![Vec::new(); n];
        for &(lo, hi) in &covers {
            up_adj[lo].push(hi);
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (start, reach) in above.iter_mut().enumerate() {
            let mut stack: Vec<usize> = up_adj[start].clone();
            while let Some(v) = stack.pop() {
                if !reach.put(v) {
                    stack.extend(up_adj[v].iter().copied());
                }
            }
        }
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        for (p, ups) in above.iter().enumerate() {
            for q in ups.ones() {
                below[q].insert(p);
            }
        }
        let mut conflicts = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in &inconsistent {
            conflicts[a].insert(b);
            conflicts[b].insert(a);
        }

        let mut pip = Pip {
            names,
            index,
            covers,
            inconsistent,
            above,
            below,
            conflicts,
            closed: false,
            ready: false,
        };
        pip.closed = pip.upward_closure() == pip.conflicts;
        pip.ready = pip.closed && pip.validate(ValidateOptions::default()).is_valid();
        pip
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, element: usize) -> &str {
        &self.names[element]
    }

    pub fn element(&self, name: &str) -> Result<usize, PipError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| PipError::UnknownElement(name.to_owned()))
    }

    /// Cover pairs exactly as given at construction.
    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers.iter().copied()
    }

    /// Stored inconsistent pairs as `(min, max)` index pairs.
    pub fn inconsistent_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.inconsistent.iter().copied()
    }

    pub fn is_acyclic(&self) -> bool {
        (0..self.len()).all(|p| !self.above[p].contains(p))
    }

    /// Whether the stored inconsistency relation equals its upward closure.
    pub fn is_closed(&self) -> bool {
        self.closed
    }

    /// Closed and free of every validation violation.
    pub fn is_ready(&self) -> bool {
        self.ready
    }

    /// Strict order: `p < q`.
    #[inline]
    pub fn less(&self, p: usize, q: usize) -> bool {
        self.above[p].contains(q)
    }

    #[inline]
    pub fn leq(&self, p: usize, q: usize) -> bool {
        p == q || self.less(p, q)
    }

    #[inline]
    pub fn inconsistent(&self, p: usize, q: usize) -> bool {
        self.conflicts[p].contains(q)
    }

    /// Strict lower set of `p`.
    pub fn strictly_below(&self, p: usize) -> &FixedBitSet {
        &self.below[p]
    }

    pub fn strictly_above(&self, p: usize) -> &FixedBitSet {
        &self.above[p]
    }

    /// Elements inconsistent with `p`.
    pub fn conflicts_of(&self, p: usize) -> &FixedBitSet {
        &self.conflicts[p]
    }

    /// Upward closure of the stored inconsistency relation, as adjacency sets.
    fn upward_closure(&self) -> Vec<FixedBitSet> {
        let n = self.len();
        let up_closed = |p: usize| {
            let mut s = self.above[p].clone();
            s.insert(p);
            s
        };
        let mut closure = vec![FixedBitSet::with_capacity(n); n];
        for &(p, q) in &self.inconsistent {
            let up_p = up_closed(p);
            let up_q = up_closed(q);
            for a in up_p.ones() {
                closure[a].union_with(&up_q);
            }
            for b in up_q.ones() {
                closure[b].union_with(&up_p);
            }
        }
        closure
    }

    /// Returns the PIP whose inconsistency set is the upward closure of this
    /// one's. Idempotent; fails only when the cover relation has a cycle.
    pub fn close(&self) -> Result<Pip, PipError> {
        if let Some((a, b)) = self.cycle_witnesses().first() {
            return Err(PipError::Cyclic(self.names[*a].clone(), self.names[*b].clone()));
        }
        if self.closed {
            return Ok(self.clone());
        }
        let closure = self.upward_closure();
        let pairs = closure
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.ones().filter(move |&b| a <= b).map(move |b| (a, b)))
            .collect::<Vec<_>>();
        Ok(Pip::from_indexed(
            self.names.clone(),
            self.covers.iter().copied(),
            pairs,
        ))
    }

    /// Errors unless the PIP is closed and valid.
    pub fn ensure_ready(&self) -> Result<(), PipError> {
        if self.ready {
            return Ok(());
        }
        if !self.closed {
            return Err(PipError::NotReady(
                "inconsistency relation is not upward closed".into(),
            ));
        }
        let report = self.validate(ValidateOptions::default());
        Err(PipError::NotReady(report.to_string()))
    }

    /// Builds the set of the named elements. The result is not checked for
    /// being an ideal.
    pub fn ideal<S: AsRef<str>>(&self, members: &[S]) -> Result<Ideal, PipError> {
        let mut set = FixedBitSet::with_capacity(self.len());
        for m in members {
            set.insert(self.element(m.as_ref())?);
        }
        Ok(Ideal(set))
    }

    pub fn empty_ideal(&self) -> Ideal {
        Ideal(FixedBitSet::with_capacity(self.len()))
    }

    /// `{a,b,c}` listing of the members by name.
    pub fn format_ideal(&self, ideal: &Ideal) -> String {
        let members: Vec<&str> = ideal.members().map(|e| self.name(e)).collect();
        format!("{{{}}}", members.join(","))
    }

    /// Element names of an ideal, in index (lexicographic) order.
    pub fn member_names(&self, ideal: &Ideal) -> Vec<String> {
        ideal.members().map(|e| self.names[e].clone()).collect()
    }

    /// A linear extension of the order, ties broken by index.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut indegree: Vec<usize> = (0..n).map(|p| self.below[p].count_ones(..)).collect();
        let mut ready: BTreeSet<usize> = (0..n).filter(|&p| indegree[p] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(p) = ready.pop_first() {
            order.push(p);
            for q in self.above[p].ones() {
                indegree[q] -= 1;
                if indegree[q] == 0 {
                    ready.insert(q);
                }
            }
        }
        order
    }
}

/// Structural equality: same names, same order, same stored inconsistency.
impl PartialEq for Pip {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.above == other.above && self.conflicts == other.conflicts
    }
}

impl Eq for Pip {}

impl fmt::Debug for Pip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = self.to_json();
        f.debug_struct("Pip")
            .field("elements", &json.elements)
            .field("covers", &json.covers)
            .field("inconsistent", &json.inconsistent)
            .finish()
    }
}

/// A set of elements of a fixed [`Pip`], usually a consistent order ideal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Ideal(FixedBitSet);

impl Ideal {
    pub fn from_bits(bits: FixedBitSet) -> Self {
        Ideal(bits)
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn contains(&self, element: usize) -> bool {
        self.0.contains(element)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn with(&self, element: usize) -> Ideal {
        let mut bits = self.0.clone();
        bits.insert(element);
        Ideal(bits)
    }

    pub fn without(&self, element: usize) -> Ideal {
        let mut bits = self.0.clone();
        bits.set(element, false);
        Ideal(bits)
    }

    pub fn toggled(&self, element: usize) -> Ideal {
        let mut bits = self.0.clone();
        bits.toggle(element);
        Ideal(bits)
    }

    /// `|self Δ other|`.
    pub fn symmetric_difference_len(&self, other: &Ideal) -> usize {
        self.0.symmetric_difference(&other.0).count()
    }

    pub fn difference(&self, other: &Ideal) -> Vec<usize> {
        self.0.difference(&other.0).collect()
    }

    pub fn union(&self, other: &Ideal) -> Ideal {
        let mut bits = self.0.clone();
        bits.union_with(&other.0);
        Ideal(bits)
    }

    pub fn intersection(&self, other: &Ideal) -> Ideal {
        let mut bits = self.0.clone();
        bits.intersect_with(&other.0);
        Ideal(bits)
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.is_subset(&other.0)
    }
}
